//! Graphs as codes for flag complexes.
//!
//! A quadratic Artinian monomial ideal is the ideal of squares plus the
//! squarefree quadrics `x_u x_v` for every non-edge `{u, v}` of a graph; the
//! faces of the associated flag complex are the cliques of that graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub const MAX_VERTICES: usize = 64;

/// A labeled simple graph. Edges are kept as a sorted list of `(u, v)` with
/// `u < v`, alongside per-vertex adjacency bitmasks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

/// A graph obtained from another by keeping a subset of its vertices;
/// `vertices[k]` is the original label of new vertex `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relabeled {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

/// `f_{-1} = 1, f_0, f_1, ...`: `values()[k]` counts the `k`-cliques.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `f_dim`, the number of faces of dimension `dim` (`dim >= -1`).
    pub fn faces(&self, dim: isize) -> usize {
        usize::try_from(dim + 1).ok().and_then(|k| self.0.get(k).copied()).unwrap_or(0)
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { got: n, max: MAX_VERTICES });
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![0u64; n];
        for &(u, v) in &list {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Squares of all variables plus `x_u x_v` for every non-edge.
    pub fn to_ideal(&self) -> MonomialIdeal {
        if self.n == 0 {
            return MonomialIdeal::ground_field();
        }
        let n = self.n;
        let squares = (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = 2;
            Monomial::new(e)
        });
        let non_edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .map(|(u, v)| Monomial::squarefree(n, &[u, v]));
        MonomialIdeal::new(n, squares.chain(non_edges)).expect("quadrics in n > 0 variables")
    }

    /// Inverse of [`Graph::to_ideal`].
    pub fn from_quadratic_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        let n = ideal.num_vars();
        let mut squares = vec![false; n];
        let mut non_edge = vec![vec![false; n]; n];
        for g in ideal.generators() {
            if g.degree() != 2 {
                return Err(Error::NotQuadratic(g.to_string()));
            }
            match g.support().as_slice() {
                [i] => squares[*i] = true,
                [u, v] => {
                    non_edge[*u][*v] = true;
                }
                _ => unreachable!("degree-2 monomials have support of size 1 or 2"),
            }
        }
        if let Some(i) = squares.iter().position(|s| !s) {
            return Err(Error::MissingSquare(i));
        }
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !non_edge[u][v]);
        Graph::new(n, edges.collect::<Vec<_>>())
    }

    /// All `k`-cliques as sorted vertex lists, in lexicographic order.
    pub fn cliques(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.extend_cliques(k, self.all_mask(), &mut cur, &mut out);
        out
    }

    fn extend_cliques(&self, k: usize, cand: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in bits(cand) {
            // only larger vertices may follow v
            let above = if v == 63 { 0 } else { !((1u64 << (v + 1)) - 1) };
            cur.push(v);
            self.extend_cliques(k, cand & self.adj[v] & above, cur, out);
            cur.pop();
        }
    }

    /// Clique counts `f_{-1}, f_0, ...` up to the clique number.
    pub fn f_vector(&self) -> FVector {
        let mut f = vec![1];
        let mut layer: Vec<(u64, u64)> = vec![(0, self.all_mask())];
        loop {
            let mut next = Vec::new();
            for &(members, cand) in &layer {
                for v in bits(cand) {
                    let above = if v == 63 { 0 } else { !((1u64 << (v + 1)) - 1) };
                    next.push((members | 1 << v, cand & self.adj[v] & above));
                }
            }
            if next.is_empty() {
                break;
            }
            f.push(next.len());
            layer = next;
        }
        FVector(f)
    }

    pub fn clique_number(&self) -> usize {
        self.f_vector().0.len() - 1
    }

    /// Inclusion-maximal cliques, in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        (0..=self.clique_number())
            .flat_map(|k| self.cliques(k))
            .filter(|c| {
                let common = c.iter().fold(self.all_mask(), |acc, &v| acc & self.adj[v]);
                common == 0
            })
            .collect()
    }

    /// Whether every maximal face of the flag complex has the same dimension.
    pub fn is_pure(&self) -> bool {
        let mut sizes = self.maximal_cliques().into_iter().map(|c| c.len());
        match sizes.next() {
            Some(first) => sizes.all(|s| s == first),
            None => true,
        }
    }

    pub fn induced_subgraph(&self, keep: &[usize]) -> Relabeled {
        let mut vertices = keep.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut new_label = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            new_label[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_label[u] != usize::MAX && new_label[v] != usize::MAX)
            .map(|&(u, v)| (new_label[u], new_label[v]));
        let graph = Graph::new(vertices.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph of a valid graph");
        Relabeled { graph, vertices }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        Ok(())
    }

    /// The flag complex minus the star of `v`: the subgraph induced on the
    /// other vertices.
    pub fn delete_star_vertex(&self, v: usize) -> Result<Relabeled> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// The link of `v`: the subgraph induced on its neighbors.
    pub fn link_vertex(&self, v: usize) -> Result<Relabeled> {
        self.check_vertex(v)?;
        Ok(self.induced_subgraph(&self.neighbors(v)))
    }

    /// The flag complex minus the star of the edge: the same vertex set with
    /// the edge removed.
    pub fn delete_star_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_edge(u, v)?;
        let (a, b) = (u.min(v), u.max(v));
        Graph::new(self.n, self.edges.iter().copied().filter(|&e| e != (a, b)).collect::<Vec<_>>())
    }

    /// The link of the edge: the subgraph induced on the common neighbors.
    pub fn link_edge(&self, u: usize, v: usize) -> Result<Relabeled> {
        self.check_edge(u, v)?;
        Ok(self.induced_subgraph(&bits(self.adj[u] & self.adj[v]).collect::<Vec<_>>()))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle length {n} < 3")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    /// Complete multipartite graph; parts are consecutive blocks of labels.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter("part sizes must be >= 1".into()));
        }
        let mut part_of = Vec::new();
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
        let n = part_of.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| part_of[u] != part_of[v])
            .collect();
        Graph::new(n, edges)
    }

    /// Adds `t` new vertices, each adjacent to every other vertex.
    pub fn cone(&self, t: usize) -> Result<Self> {
        let n = self.n + t;
        let apexes = (self.n..n).flat_map(|a| (0..a).map(move |w| (w, a)));
        Graph::new(n, self.edges.iter().copied().chain(apexes).collect::<Vec<_>>())
    }

    /// The graph of `<x_0..x_i>^2 + <x_{i+1}..x_r>^2`, i.e. `K_{i+1, r-i}`.
    pub fn mmr_family(r: usize, i: usize) -> Result<Self> {
        if i < 1 || i + 2 > r {
            return Err(Error::InvalidParameter(format!("need 1 <= i <= r-2, got r={r}, i={i}")));
        }
        Graph::complete_multipartite(&[i + 1, r - i])
    }

    /// Adjacency code: bit `k` is set when the `k`-th pair in the order
    /// `(0,1), (0,2), ..., (0,n-1), (1,2), ...` is an edge.
    pub fn code(&self) -> u64 {
        assert!(self.n <= 11, "pair codes fit in 64 bits only for n <= 11");
        self.edges.iter().fold(0, |acc, &(u, v)| acc | 1 << pair_index(self.n, u, v))
    }

    pub fn from_code(n: usize, code: u64) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Graph::new(n, edges).expect("codes only name valid pairs")
    }

    /// Applies `perm` (old label -> new label).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect::<Vec<_>>())
            .expect("permutation of a valid graph")
    }

    /// Minimal adjacency code over all relabelings, by brute force over the
    /// `n!` permutations.
    pub fn canonical_code(&self) -> u64 {
        canonical_code(self.n, self.code())
    }
}

pub(crate) fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Precomputed pair-index images for every permutation of `0..n`, so a
/// relabeled code costs one pass over the set bits.
pub struct Relabeler {
    n: usize,
    tables: Vec<Vec<u8>>,
}

impl Relabeler {
    pub fn new(n: usize) -> Self {
        assert!(n <= 11, "pair codes fit in 64 bits only for n <= 11");
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let tables = permutations(n)
            .into_iter()
            .map(|p| {
                pairs
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                        pair_index(n, a, b) as u8
                    })
                    .collect()
            })
            .collect();
        Relabeler { n, tables }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Codes of every relabeling of `code`, in permutation order.
    pub fn images(&self, code: u64) -> impl Iterator<Item = u64> + '_ {
        self.tables.iter().map(move |t| bits(code).fold(0, |acc, k| acc | 1 << t[k]))
    }

    pub fn canonical(&self, code: u64) -> u64 {
        self.images(code).min().expect("at least the identity permutation")
    }

    /// Number of distinct labeled graphs isomorphic to `code`.
    pub fn orbit_size(&self, code: u64) -> usize {
        let mut seen: Vec<u64> = self.images(code).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

pub fn canonical_code(n: usize, code: u64) -> u64 {
    Relabeler::new(n).canonical(code)
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, edges [", self.n)?;
        for (k, (u, v)) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}{v}")?;
        }
        write!(f, "]")
    }
}

/// `{"vars": n, "edges": [[u, v], ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub vars: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { vars: g.n, edges: g.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::new(j.vars, j.edges.into_iter().map(|[u, v]| (u, v)).collect::<Vec<_>>())
    }
}
