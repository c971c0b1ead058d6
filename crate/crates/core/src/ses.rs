//! Failure certificates from the star/link exact sequences.
//!
//! Removing a vertex `v` gives `0 -> A''(-1) -> A -> A' -> 0` with
//! `A' = S/(I + x_v)` and `A'' = S/(I : x_v)`; removing an edge `uv` gives the
//! same shape with a shift of 2. A kernel of `l` on `A''` injects into `A`,
//! and a cokernel of `l` on `A'` is a quotient of one on `A`, so either one
//! transfers a failure to `A` when the dimensions of `A` point the same way.
//! Nothing here ever concludes that `A` has the WLP.

use serde::Serialize;

use crate::engine::{wlp_report, Characteristic, FailureMode, WlpReport};
use crate::error::Result;
use crate::flag::Graph;
use crate::monomial::Algebra;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Removal {
    Vertex(usize),
    Edge(usize, usize),
}

impl Removal {
    /// Degree shift of the link algebra inside `A`.
    pub fn shift(self) -> usize {
        match self {
            Removal::Vertex(_) => 1,
            Removal::Edge(..) => 2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `l` has a kernel on the link algebra and `dim A_{i+1} >= dim A_i`.
    LinkInjectivity,
    /// `l` has a cokernel on the deletion algebra and `dim A_{i+1} <= dim A_i`.
    DeletionSurjectivity,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Certificate {
    pub rule: Rule,
    /// Degree of `A` at which the failure is concluded.
    pub degree: usize,
    /// Source degree of the witnessing map in the factor algebra.
    pub factor_degree: usize,
    pub factor_dim_i: usize,
    pub factor_dim_j: usize,
    pub factor_rank: usize,
    /// `dim A_i = f_{i-1}` and `dim A_{i+1} = f_i`.
    pub dim_i: usize,
    pub dim_j: usize,
}

impl Certificate {
    /// Whether a direct report of `A` agrees with this certificate.
    pub fn confirmed_by(&self, direct: &WlpReport) -> bool {
        let wanted = match self.rule {
            Rule::LinkInjectivity => FailureMode::Injectivity,
            Rule::DeletionSurjectivity => FailureMode::Surjectivity,
        };
        matches!(direct.failure_at(self.degree), Some(m) if m == wanted || m == FailureMode::Both)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SesInference {
    pub removal: Removal,
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    /// Original labels of the vertices kept by the deletion and the link.
    pub deletion_vertices: Vec<usize>,
    pub link_vertices: Vec<usize>,
    pub deletion: WlpReport,
    pub link: WlpReport,
    pub certificates: Vec<Certificate>,
}

impl SesInference {
    pub fn at(&self, degree: usize) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(move |c| c.degree == degree)
    }

    pub fn concludes_injectivity_failure(&self, degree: usize) -> bool {
        self.at(degree).any(|c| c.rule == Rule::LinkInjectivity)
    }

    pub fn concludes_surjectivity_failure(&self, degree: usize) -> bool {
        self.at(degree).any(|c| c.rule == Rule::DeletionSurjectivity)
    }

    /// Certificates that a direct report of `A` contradicts; always empty
    /// unless something is broken.
    pub fn unsound(&self, direct: &WlpReport) -> Vec<Certificate> {
        self.certificates.iter().filter(|c| !c.confirmed_by(direct)).copied().collect()
    }
}

fn report_of(g: &Graph, ch: Characteristic) -> WlpReport {
    wlp_report(&Algebra::new(g.to_ideal()).expect("flag ideals are Artinian"), ch)
}

pub fn ses_infer(g: &Graph, removal: Removal, ch: Characteristic) -> Result<SesInference> {
    let (deletion_graph, deletion_vertices, link) = match removal {
        Removal::Vertex(v) => {
            let d = g.delete_star_vertex(v)?;
            (d.graph, d.vertices, g.link_vertex(v)?)
        }
        Removal::Edge(u, v) => {
            let d = g.delete_star_edge(u, v)?;
            (d, (0..g.num_vertices()).collect(), g.link_edge(u, v)?)
        }
    };
    let deletion = report_of(&deletion_graph, ch);
    let link_report = report_of(&link.graph, ch);
    let f = g.f_vector();
    let shift = removal.shift();
    let mut certificates = Vec::new();
    for degree in 0..f.values().len() {
        let dim_i = f.values()[degree];
        let dim_j = f.values().get(degree + 1).copied().unwrap_or(0);
        if dim_j >= dim_i && degree >= shift {
            if let Some(r) = link_report.record(degree - shift).filter(|r| !r.injective()) {
                certificates.push(Certificate {
                    rule: Rule::LinkInjectivity,
                    degree,
                    factor_degree: r.i,
                    factor_dim_i: r.dim_i,
                    factor_dim_j: r.dim_j,
                    factor_rank: r.rank,
                    dim_i,
                    dim_j,
                });
            }
        }
        if dim_j <= dim_i {
            if let Some(r) = deletion.record(degree).filter(|r| !r.surjective()) {
                certificates.push(Certificate {
                    rule: Rule::DeletionSurjectivity,
                    degree,
                    factor_degree: r.i,
                    factor_dim_i: r.dim_i,
                    factor_dim_j: r.dim_j,
                    factor_rank: r.rank,
                    dim_i,
                    dim_j,
                });
            }
        }
    }
    Ok(SesInference {
        removal,
        characteristic: ch,
        deletion_vertices,
        link_vertices: link.vertices,
        deletion,
        link: link_report,
        certificates,
    })
}

/// Every single-vertex and single-edge removal of `g`.
pub fn all_removals(g: &Graph) -> Vec<Removal> {
    (0..g.num_vertices())
        .map(Removal::Vertex)
        .chain(g.edges().iter().map(|&(u, v)| Removal::Edge(u, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const Q: Characteristic = Characteristic::Zero;

    #[test]
    fn removing_the_extra_edge_of_k2211() {
        let g = Graph::complete_multipartite(&[2, 2, 1, 1]).unwrap();
        let s = ses_infer(&g, Removal::Edge(4, 5), Q).unwrap();
        assert_eq!(s.deletion.hilbert.values(), &[1, 6, 12, 8]);
        assert_eq!(s.link.hilbert.values(), &[1, 4, 4]);
        assert_eq!(s.link_vertices, vec![0, 1, 2, 3]);
        assert!(s.concludes_surjectivity_failure(2));
        let c = s.at(2).find(|c| c.rule == Rule::DeletionSurjectivity).unwrap();
        assert_eq!((c.dim_i, c.dim_j, c.factor_dim_i, c.factor_dim_j), (13, 12, 12, 8));
        assert!(c.factor_rank < 8);
    }

    #[test]
    fn triangle_vertex_gives_nothing() {
        let s = ses_infer(&Graph::complete(3), Removal::Vertex(0), Q).unwrap();
        assert!(s.certificates.is_empty());
        assert!(s.deletion.has_wlp && s.link.has_wlp);
    }

    #[test]
    fn isolated_vertex_kills_degree_one() {
        // K_{2,2} plus two isolated points: x_4 is annihilated by l
        let g = Graph::new(6, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let s = ses_infer(&g, Removal::Vertex(4), Q).unwrap();
        assert!(s.link_vertices.is_empty());
        assert_eq!(s.link.hilbert.values(), &[1]);
        // dim A_2 = 4 < dim A_1 = 6, so the kernel is not a WLP failure
        assert!(!s.concludes_injectivity_failure(1));
        let direct = report_of(&g, Q);
        assert!(s.unsound(&direct).is_empty());
    }

    #[test]
    fn octahedron_removals_are_sound() {
        let g = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        let direct = report_of(&g, Q);
        for r in all_removals(&g) {
            let s = ses_infer(&g, r, Q).unwrap();
            assert!(s.unsound(&direct).is_empty(), "{r:?}");
        }
    }

    #[test]
    fn bad_targets() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(ses_infer(&g, Removal::Edge(0, 2), Q).unwrap_err(), Error::NotAnEdge(0, 2));
        assert!(matches!(ses_infer(&g, Removal::Vertex(9), Q), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn json_tags() {
        let s = ses_infer(&Graph::complete_multipartite(&[2, 2, 1, 1]).unwrap(), Removal::Edge(4, 5), Q).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["removal"], serde_json::json!({"edge": [4, 5]}));
        assert!(v["certificates"].as_array().unwrap().iter().any(|c| c["rule"] == "deletion_surjectivity"));
    }

    #[test]
    fn exhaustive_soundness_on_four_vertices() {
        for code in 0..1u64 << 6 {
            let g = Graph::from_code(4, code);
            for ch in [Q, Characteristic::Prime(2)] {
                let direct = report_of(&g, ch);
                for r in all_removals(&g) {
                    assert!(ses_infer(&g, r, ch).unwrap().unsound(&direct).is_empty());
                }
            }
        }
    }
}
