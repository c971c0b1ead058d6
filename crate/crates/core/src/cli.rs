//! The `lefschetz` command line.
//!
//! Exit codes: 0 on success, 1 for malformed input or usage, 2 when a
//! closed-form prediction or internal cross-check disagrees with direct
//! computation.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::census::{census, default_jobs, summarize, write_csv, CensusOptions, CensusSummary};
use crate::engine::{mult_matrix, wlp_report, Characteristic, WlpReport};
use crate::error::Error;
use crate::flag::Graph;
use crate::io::{GraphFile, Input};
use crate::monomial::Algebra;
use crate::ses::{ses_infer, Removal, Rule};
use crate::tensor::{critical_failure_degree, quadric_tensor_has_wlp, TensorSpec};
use crate::topology::{bockstein_verdict, mod2_verdict, SkeletonComplex};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Weak Lefschetz checks for Artinian monomial algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON ideal or graph; read from stdin when absent
    #[arg(long)]
    input: Option<PathBuf>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide WLP degree by degree
    Wlp {
        #[command(flatten)]
        io: InputArgs,
        /// 0 or a prime
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Include the multiplication matrices
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Print the Hilbert function
    Hilbert {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Top mod-2 homology of the degree-i skeleton of the flag complex
    Homology {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Injectivity of the Bockstein map on the degree-i skeleton
    Bockstein {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Failure certificates from removing a vertex or an edge
    #[command(group(ArgGroup::new("removal").required(true).args(["vertex", "edge"])))]
    Ses {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        vertex: Option<usize>,
        /// Two endpoints, e.g. `4,5`
        #[arg(long, value_parser = parse_pair)]
        edge: Option<(usize, usize)>,
    },
    /// Tensor products of truncated symmetric algebras
    Tensor {
        /// Factors as dim:order, e.g. `2:2,2:2,2:2`
        #[arg(long)]
        spec: TensorSpec,
        /// Print the closed-form prediction
        #[arg(long)]
        predict: bool,
        /// Compare the prediction with direct computation
        #[arg(long)]
        verify: bool,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        json: bool,
    },
    /// Emit a named graph as JSON
    #[command(group(ArgGroup::new("family").required(true).args(["cycle", "complete", "empty", "multipartite", "mmr"])))]
    Family {
        #[arg(long)]
        cycle: Option<usize>,
        #[arg(long)]
        complete: Option<usize>,
        #[arg(long)]
        empty: Option<usize>,
        /// Part sizes, e.g. `2,2,1,1`
        #[arg(long, value_delimiter = ',')]
        multipartite: Option<Vec<usize>>,
        /// `r,i` for K_{i+1, r-i}
        #[arg(long, value_parser = parse_pair)]
        mmr: Option<(usize, usize)>,
        /// Cone this many times over the result
        #[arg(long, default_value_t = 0)]
        cone: usize,
    },
    /// Sweep all labeled graphs on a vertex set
    Search {
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// One graph per isomorphism class
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        max_edges: Option<usize>,
        /// Worker threads; defaults to LEFSCHETZ_JOBS or the core count
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Write per-graph rows to this file; `-` for stdout instead of the summary
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two numbers like `4,5`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

enum Exit {
    Usage(String),
    Input(Error),
    Mismatch(String),
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit::Input(e)
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Exit::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Exit>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Search { vertices, dedup, max_edges, jobs, characteristic, csv, json } => {
            search(vertices, dedup, max_edges, jobs, characteristic, csv, json, stdout)
        }
        other => dispatch(other, stdin),
    };
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(Exit::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Exit::Input(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(Exit::Mismatch(msg)) => {
            let _ = writeln!(stderr, "mismatch: {msg}");
            2
        }
    }
}

fn read_input(io: &InputArgs, stdin: &mut dyn Read) -> Result<Input, Exit> {
    let text = match &io.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Exit::Usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Ok(Input::parse(&text)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Outcome {
    match cmd {
        Command::Wlp { io, characteristic, dump_matrices } => {
            let ch = Characteristic::new(characteristic)?;
            let alg = Algebra::new(read_input(&io, stdin)?.ideal())?;
            let report = wlp_report(&alg, ch);
            Ok(render_wlp(&alg, &report, io.json, dump_matrices))
        }
        Command::Hilbert { io } => {
            let alg = Algebra::new(read_input(&io, stdin)?.ideal())?;
            let mut s = serde_json::to_string(&alg.hilbert_function()).expect("integers serialize");
            s.push('\n');
            Ok(s)
        }
        Command::Homology { io, degree } => {
            let g = read_input(&io, stdin)?.graph()?;
            homology(&g, degree, io.json)
        }
        Command::Bockstein { io, degree } => {
            let g = read_input(&io, stdin)?.graph()?;
            bockstein(&g, degree, io.json)
        }
        Command::Ses { io, characteristic, vertex, edge } => {
            let ch = Characteristic::new(characteristic)?;
            let g = read_input(&io, stdin)?.graph()?;
            let removal = match (vertex, edge) {
                (Some(v), _) => Removal::Vertex(v),
                (None, Some((u, v))) => Removal::Edge(u, v),
                (None, None) => return Err(Exit::Usage("give --vertex or --edge".into())),
            };
            ses(&g, removal, ch, io.json)
        }
        Command::Tensor { spec, predict, verify, characteristic, json } => {
            tensor(&spec, predict, verify, Characteristic::new(characteristic)?, json)
        }
        Command::Family { cycle, complete, empty, multipartite, mmr, cone } => {
            let base = match (cycle, complete, empty, multipartite, mmr) {
                (Some(n), ..) => Graph::cycle(n)?,
                (_, Some(n), ..) => Graph::complete(n),
                (_, _, Some(n), ..) => Graph::empty(n),
                (_, _, _, Some(parts), _) => Graph::complete_multipartite(&parts)?,
                (.., Some((r, i))) => Graph::mmr_family(r, i)?,
                _ => return Err(Exit::Usage("choose a family".into())),
            };
            let g = base.cone(cone)?;
            let mut s = serde_json::to_string(&GraphFile::from(&g)).expect("graphs serialize");
            s.push('\n');
            Ok(s)
        }
        Command::Search { .. } => unreachable!("handled by run"),
    }
}

fn render_wlp(alg: &Algebra, report: &WlpReport, json: bool, dump: bool) -> String {
    let matrices = || (0..report.degrees.len()).map(|i| mult_matrix(alg, i, 1));
    if json {
        let mut v = serde_json::to_value(report).expect("reports serialize");
        if dump {
            v["matrices"] = Value::Array(matrices().map(|m| serde_json::to_value(&m).expect("matrices serialize")).collect());
        }
        return pretty(&v);
    }
    let mut s = format!("{}\n", report.summary());
    if dump {
        for (rec, m) in report.degrees.iter().zip(matrices()) {
            let _ = writeln!(s, "degree {} ({} x {}, rank {}):", rec.i, m.rows(), m.cols(), rec.rank);
            s.push_str(&m.to_string());
        }
    }
    s
}

fn homology(g: &Graph, degree: usize, json: bool) -> Outcome {
    let cx = SkeletonComplex::new(g, degree);
    let h = cx.homology_dim();
    let verdict = if degree >= 1 { Some(mod2_verdict(g, degree)?) } else { None };
    if json {
        return Ok(pretty(&json!({ "degree": degree, "homology": h, "mod2": verdict })));
    }
    let mut s = format!("dim H_{degree} = {h}\n");
    if let Some(v) = verdict {
        let what = match (v.surjectivity_fails, v.injectivity_fails) {
            (true, true) => "injectivity and surjectivity fail".to_string(),
            (true, false) => "surjectivity fails".to_string(),
            (false, true) => "injectivity fails".to_string(),
            (false, false) => "maximal rank".to_string(),
        };
        let _ = writeln!(s, "char 2, degree {degree}: {what} (f = {} -> {}, rank {})", v.f_lower, v.f_upper, v.rank_mod2);
    }
    Ok(s)
}

fn bockstein(g: &Graph, degree: usize, json: bool) -> Outcome {
    let v = bockstein_verdict(g, degree)?;
    if !v.consistent() {
        return Err(Exit::Mismatch(format!(
            "degree {degree}: lift says injective = {}, rank test says {}",
            v.delta_injective, v.lift_full_column_rank
        )));
    }
    if json {
        return Ok(pretty(&v));
    }
    let next = degree + 1;
    let mut s = format!("dim H_{degree} = {}\n", v.homology);
    if v.delta_injective {
        let _ = writeln!(s, "delta injective: l maps onto A_{next} in char 0");
    } else {
        let _ = writeln!(s, "delta not injective: l does not map onto A_{next} in char 0");
    }
    if let Some(w) = &v.witness {
        let faces: Vec<String> =
            w.cycle.iter().map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>().join("")).collect();
        let _ = writeln!(s, "witness cycle: {}", faces.join(" "));
    }
    Ok(s)
}

fn ses(g: &Graph, removal: Removal, ch: Characteristic, json: bool) -> Outcome {
    let inference = ses_infer(g, removal, ch)?;
    let direct = wlp_report(&Algebra::new(g.to_ideal())?, ch);
    let bad = inference.unsound(&direct);
    if let Some(c) = bad.first() {
        return Err(Exit::Mismatch(format!("certificate {:?} at degree {} contradicts the direct report", c.rule, c.degree)));
    }
    if json {
        return Ok(pretty(&inference));
    }
    if inference.certificates.is_empty() {
        return Ok("no conclusion\n".into());
    }
    let mut s = String::new();
    for c in &inference.certificates {
        let (what, from) = match c.rule {
            Rule::LinkInjectivity => ("injectivity", "link"),
            Rule::DeletionSurjectivity => ("surjectivity", "deletion"),
        };
        let _ = writeln!(
            s,
            "fails {what} in degree {}: {from} map in degree {} has rank {} ({} -> {}); dims {} -> {}",
            c.degree, c.factor_degree, c.factor_rank, c.factor_dim_i, c.factor_dim_j, c.dim_i, c.dim_j
        );
    }
    Ok(s)
}

fn tensor(spec: &TensorSpec, predict: bool, verify: bool, ch: Characteristic, json: bool) -> Outcome {
    let alg = Algebra::new(spec.realize())?;
    let report = wlp_report(&alg, ch);
    let classified = quadric_tensor_has_wlp(spec, ch).ok();
    let critical = critical_failure_degree(spec).ok();
    if verify {
        if let Some(p) = classified.filter(|&p| p != report.has_wlp) {
            return Err(Exit::Mismatch(format!("{spec}: predicted WLP = {p}, direct = {}", report.has_wlp)));
        }
        if let Some(d) = critical.filter(|&d| report.failure_at(d).is_none()) {
            return Err(Exit::Mismatch(format!("{spec}: predicted a failure at degree {d}, direct: {}", report.summary())));
        }
    }
    let show_prediction = predict || verify;
    if json {
        let mut v = json!({ "spec": spec.to_string(), "report": report });
        if show_prediction {
            v["prediction"] = json!({ "wlp": classified, "failure_degree": critical });
        }
        if verify {
            v["verified"] = json!(true);
        }
        return Ok(pretty(&v));
    }
    let mut s = format!("{spec}: hilbert {}\n{}\n", report.hilbert, report.summary());
    if show_prediction {
        match classified {
            Some(true) => s.push_str("predicted: has WLP\n"),
            Some(false) => s.push_str("predicted: fails WLP\n"),
            None => {}
        }
        if let Some(d) = critical {
            let _ = writeln!(s, "predicted: failure in degree {d}");
        }
        if classified.is_none() && critical.is_none() {
            s.push_str("predicted: no closed form applies\n");
        }
    }
    if verify {
        s.push_str("verified\n");
    }
    Ok(s)
}

#[allow(clippy::too_many_arguments)]
fn search(
    vertices: usize,
    dedup: bool,
    max_edges: Option<usize>,
    jobs: Option<usize>,
    characteristic: u64,
    csv: Option<PathBuf>,
    json: bool,
    stdout: &mut dyn Write,
) -> Outcome {
    let opts = CensusOptions {
        num_vertices: vertices,
        dedup,
        max_edges,
        jobs: jobs.unwrap_or_else(default_jobs),
        characteristic: Characteristic::new(characteristic)?,
    };
    let records = census(&opts)?;
    let summary = summarize(vertices, &records);
    match csv.as_deref() {
        Some(p) if p.as_os_str() == "-" => {
            write_csv(&records, &mut *stdout)?;
            return finish_search(&summary, String::new());
        }
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| Exit::Usage(format!("{}: {e}", p.display())))?;
            write_csv(&records, std::io::BufWriter::new(file))?;
        }
        None => {}
    }
    let text = if json { pretty(&summary) } else { render_summary(&summary) };
    finish_search(&summary, text)
}

fn finish_search(summary: &CensusSummary, text: String) -> Outcome {
    if summary.propagation_violations > 0 {
        return Err(Exit::Mismatch(format!(
            "{} reports lose surjectivity after reaching it",
            summary.propagation_violations
        )));
    }
    Ok(text)
}

fn render_summary(s: &CensusSummary) -> String {
    let mut out = format!("{} vertices, {} graphs\n", s.num_vertices, s.records);
    for (b, n) in &s.buckets {
        let _ = writeln!(out, "  {:<20} {n}", b.as_str());
    }
    let _ = writeln!(out, "propagation violations: {}", s.propagation_violations);
    let _ = writeln!(out, "exceptional classes: {}", s.exceptional_classes.len());
    for c in &s.exceptional_classes {
        let fails: Vec<String> = c.failures.iter().map(|f| format!("{} in degree {}", f.mode, f.degree)).collect();
        let g = Graph::from_code(s.num_vertices, c.canonical_code);
        let _ = writeln!(
            out,
            "  code {} ({}): {} edges, hilbert {}, seen {} of {}, {}",
            c.canonical_code,
            g,
            c.edges,
            c.hilbert,
            c.seen,
            c.orbit_size,
            fails.join(", ")
        );
    }
    out.push_str("edges  hilbert  graphs  wlp\n");
    for sh in &s.shapes {
        let _ = writeln!(out, "  {:>3}  {}  {}  {}", sh.edges, sh.hilbert, sh.graphs, sh.wlp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lefschetz").chain(args.iter().copied());
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const OCTAHEDRON: &str = r#"{"graph": {"vars": 6, "edges": [[0,2],[0,3],[0,4],[0,5],[1,2],[1,3],[1,4],[1,5],[2,4],[2,5],[3,4],[3,5]]}}"#;

    #[test]
    fn wlp_text_and_json() {
        let (code, out, _) = call(&["wlp"], OCTAHEDRON);
        assert_eq!((code, out.as_str()), (0, "fails WLP: surjectivity in degree 2\n"));
        let (_, out, _) = call(&["wlp", "--json", "--dump-matrices"], OCTAHEDRON);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["matrices"].as_array().unwrap().len(), 4);
        assert_eq!(v["failures"][0]["mode"], "surjectivity");
    }

    #[test]
    fn family_feeds_wlp() {
        let (_, graph, _) = call(&["family", "--cycle", "5"], "");
        assert_eq!(call(&["wlp"], &graph).1, "has WLP\n");
        let (_, graph, _) = call(&["family", "--multipartite", "2,2,1,1"], "");
        assert_eq!(call(&["hilbert"], &graph).1, "[1,6,13,12,4]\n");
    }

    #[test]
    fn usage_and_input_errors() {
        assert_eq!(call(&["wlp"], "not json").0, 1);
        assert_eq!(call(&["wlp", "--char", "4"], OCTAHEDRON).0, 1);
        assert_eq!(call(&["frobnicate"], "").0, 1);
        assert_eq!(call(&["ses"], OCTAHEDRON).0, 1);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn topology_commands() {
        let (code, out, _) = call(&["bockstein", "--degree", "1"], &call(&["family", "--cycle", "4"], "").1);
        assert_eq!(code, 0);
        assert!(out.contains("delta not injective"));
        let (_, out, _) = call(&["homology", "--degree", "2"], OCTAHEDRON);
        assert!(out.starts_with("dim H_2 = 1\n"));
    }

    #[test]
    fn ses_and_tensor() {
        let (_, g, _) = call(&["family", "--multipartite", "2,2,1,1"], "");
        let (code, out, _) = call(&["ses", "--edge", "4,5"], &g);
        assert_eq!(code, 0);
        assert!(out.contains("fails surjectivity in degree 2"));
        let (code, out, _) = call(&["tensor", "--spec", "2:2,2:2,1:2", "--verify"], "");
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("predicted: has WLP"));
    }

    #[test]
    fn small_search() {
        let (code, out, _) = call(&["search", "--vertices", "3", "--jobs", "2"], "");
        assert_eq!(code, 0);
        assert!(out.starts_with("3 vertices, 8 graphs\n"));
        let (_, csv, _) = call(&["search", "--vertices", "2", "--csv", "-"], "");
        assert!(csv.starts_with("code,edges,hilbert,wlp,bucket\n"));
    }
}
