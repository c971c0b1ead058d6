//! Tensor products of truncated symmetric algebras and closed-form WLP
//! predictions for them.
//!
//! The predicates below never call the rank engine; tests compare them with
//! direct computation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::engine::{mult_matrix, Characteristic, WlpReport};
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Algebra, MonomialIdeal};

/// `Sym(V)/V^order` with `dim V = dim`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Factor {
    pub dim: usize,
    pub order: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct TensorSpec {
    factors: Vec<Factor>,
}

impl TensorSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("a tensor spec needs at least one factor".into()));
        }
        if let Some(f) = factors.iter().find(|f| f.dim == 0 || f.order < 2) {
            return Err(Error::InvalidParameter(format!(
                "factor {}:{} needs dim >= 1 and order >= 2",
                f.dim, f.order
            )));
        }
        Ok(TensorSpec { factors })
    }

    /// All factors truncated at order 2.
    pub fn quadric(dims: &[usize]) -> Result<Self> {
        Self::new(dims.iter().map(|&dim| Factor { dim, order: 2 }).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_vars(&self) -> usize {
        self.factors.iter().map(|f| f.dim).sum()
    }

    /// Sum of the factor socle degrees, `sum (order - 1)`.
    pub fn socle_degree(&self) -> usize {
        self.factors.iter().map(|f| f.order - 1).sum()
    }

    pub fn is_quadric(&self) -> bool {
        self.factors.iter().all(|f| f.order == 2)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    /// Each factor contributes every monomial of degree `order` in its block.
    pub fn realize(&self) -> MonomialIdeal {
        let total = self.num_vars();
        let mut offset = 0;
        let mut gens = Vec::new();
        for f in &self.factors {
            gens.extend(monomials_of_degree(f.dim, f.order).iter().map(|m| m.shifted(offset, total)));
            offset += f.dim;
        }
        MonomialIdeal::new(total, gens).expect("positive-degree generators on a nonempty block")
    }
}

impl FromStr for TensorSpec {
    type Err = Error;

    /// `"2:2,2:2,1:3"`, each entry `dim:order`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(',')
            .map(|part| {
                let (d, k) = part
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("factor `{part}` is not dim:order")))?;
                let num = |t: &str| {
                    t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("`{t}` in `{part}`: {e}")))
                };
                Ok(Factor { dim: num(d)?, order: num(k)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }
}

impl fmt::Display for TensorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| format!("{}:{}", x.dim, x.order)).collect();
        f.write_str(&parts.join(","))
    }
}

/// `K[z]/z^j`.
pub fn truncated_line(j: usize) -> Result<MonomialIdeal> {
    if j == 0 {
        return Err(Error::UnitIdeal);
    }
    MonomialIdeal::from_exponents(1, vec![vec![j as u16]])
}

fn refuse_char_two(ch: Characteristic) -> Result<()> {
    match ch {
        Characteristic::Prime(2) => Err(Error::UnsupportedCharacteristic(2)),
        _ => Ok(()),
    }
}

/// Classification for tensor products of `Sym(V_i)/V_i^2`: WLP holds iff at
/// most one `dim V_i >= 2`, or exactly two and the number of factors is odd.
pub fn quadric_tensor_has_wlp(spec: &TensorSpec, ch: Characteristic) -> Result<bool> {
    refuse_char_two(ch)?;
    if !spec.is_quadric() {
        return Err(Error::InvalidParameter(format!("{spec}: every order must be 2")));
    }
    let mut dims = spec.dims();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let big = dims.iter().take_while(|&&d| d >= 2).count();
    Ok(big <= 1 || (big == 2 && dims.len() % 2 == 1))
}

/// For factors of dimension at least 2 a failure sits on the map into the
/// sum of the factor socle degrees; returns its source degree.
pub fn critical_failure_degree(spec: &TensorSpec) -> Result<usize> {
    if spec.factors.len() < 2 || spec.factors.iter().any(|f| f.dim < 2) {
        return Err(Error::InvalidParameter(format!("{spec}: need two or more factors, each of dim >= 2")));
    }
    Ok(spec.socle_degree() - 1)
}

/// `Sym(V)/V^2` tensored with any number of copies of `K[z]/z^2` has WLP.
pub fn one_block_with_lines_has_wlp(dim: usize, _lines: usize, ch: Characteristic) -> Result<bool> {
    refuse_char_two(ch)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("dim must be positive".into()));
    }
    Ok(true)
}

/// `Sym(V_1)/V_1^2 x Sym(V_2)/V_2^2` with `lines` copies of `K[z]/z^2`,
/// both dims at least 2: WLP iff `lines` is odd.
pub fn two_blocks_with_lines_has_wlp(a: usize, b: usize, lines: usize, ch: Characteristic) -> Result<bool> {
    refuse_char_two(ch)?;
    if a < 2 || b < 2 {
        return Err(Error::InvalidParameter(format!("block dims {a}, {b} must both be >= 2")));
    }
    Ok(lines % 2 == 1)
}

/// The `r`-fold cone over `K_{a,b}`; the same algebra as
/// [`two_blocks_with_lines_has_wlp`] with `r` lines.
pub fn cone_over_bipartite_has_wlp(a: usize, b: usize, r: usize, ch: Characteristic) -> Result<bool> {
    two_blocks_with_lines_has_wlp(a, b, r, ch)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    GuaranteedWlp,
    NoGuarantee,
}

/// `A x K[z]/z^j` has WLP once `j` exceeds the socle degree of `A`.
pub fn truncated_line_guarantee(alg: &Algebra, j: usize) -> Guarantee {
    if j > alg.socle_degree() {
        Guarantee::GuaranteedWlp
    } else {
        Guarantee::NoGuarantee
    }
}

/// In characteristic 2, `l^2 = 0` on a quadratic algebra with all squares,
/// so `A x K[z]/z^2` fails WLP as soon as `A_2 != 0`.
pub fn char2_square_line_fails(alg: &Algebra) -> bool {
    alg.dim(2) != 0
}

/// Whether `l^2 : A_{i-1} -> A_{i+1}` has full rank; for quadratic `A` with
/// `A_{i+1} != 0` this decides the degree-`i` map of `A x K[z]/z^2`.
pub fn square_map_full(alg: &Algebra, i: usize, ch: Characteristic) -> bool {
    if i == 0 {
        return true;
    }
    let m = mult_matrix(alg, i - 1, 2);
    ch.rank(&m) == m.rows().min(m.cols())
}

/// Degrees at which `l` has a kernel (by source) or a cokernel (by target).
#[derive(Clone, Default, PartialEq, Eq, Debug, Serialize)]
pub struct FailureWindow {
    pub not_injective: BTreeSet<usize>,
    pub not_surjective: BTreeSet<usize>,
}

impl FailureWindow {
    pub fn from_report(r: &WlpReport) -> Self {
        let mut w = FailureWindow::default();
        for rec in &r.degrees {
            if !rec.injective() {
                w.not_injective.insert(rec.i);
            }
            if !rec.surjective() {
                w.not_surjective.insert(rec.i + 1);
            }
        }
        w
    }

    pub fn is_empty(&self) -> bool {
        self.not_injective.is_empty() && self.not_surjective.is_empty()
    }

    /// The entries licensed for `A' x A''`: cokernels into `i` and `j` give
    /// one into `i + j`, kernels from `i` and `j` give one from `i + j`.
    pub fn combine(&self, other: &FailureWindow) -> FailureWindow {
        let sums = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| -> BTreeSet<usize> {
            a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
        };
        FailureWindow {
            not_injective: sums(&self.not_injective, &other.not_injective),
            not_surjective: sums(&self.not_surjective, &other.not_surjective),
        }
    }

    /// Whether every entry here also appears in `other`.
    pub fn is_subset(&self, other: &FailureWindow) -> bool {
        self.not_injective.is_subset(&other.not_injective) && self.not_surjective.is_subset(&other.not_surjective)
    }
}
