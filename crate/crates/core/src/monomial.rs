//! Monomials, monomial ideals and their Artinian quotients.
//!
//! Monomials are ordered by degree first; monomials of equal degree are
//! compared lexicographically with `x0` largest, so the degree-2 squarefree
//! monomials in three variables come out as `x0x1, x0x2, x1x2`. Every basis
//! and every matrix in the crate uses this order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A monomial `x^a` stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars] }
    }

    pub fn variable(num_vars: usize, i: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.exps[i] = 1;
        m
    }

    /// The squarefree monomial with support `vars`.
    pub fn squarefree(num_vars: usize, vars: &[usize]) -> Self {
        let mut m = Self::one(num_vars);
        for &v in vars {
            m.exps[v] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m
    }

    /// `self / gcd(self, other)`, the generator of `<self> : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// The index `i` when this monomial is `x_i^k` with `k >= 1`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut support = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Embeds the monomial into `total` variables starting at `offset`.
    pub fn shifted(&self, offset: usize, total: usize) -> Monomial {
        let mut exps = vec![0; total];
        exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `deg` in `num_vars` variables, in canonical order.
pub fn monomials_of_degree(num_vars: usize, deg: usize) -> Vec<Monomial> {
    fn rec(var: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var + 1 == cur.len() {
            cur[var] = left as u16;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e as u16;
            rec(var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, deg, &mut vec![0; num_vars], &mut out);
    out
}

/// A monomial ideal held by its minimal generators, sorted canonically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, dropping every non-minimal generator.
    pub fn new(num_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::NoVariables);
        }
        Self::minimalize(num_vars, gens)
    }

    pub fn from_exponents(num_vars: usize, gens: Vec<Vec<u16>>) -> Result<Self> {
        Self::new(num_vars, gens.into_iter().map(Monomial::new))
    }

    /// The zero ideal in no variables; its quotient is the ground field.
    pub fn ground_field() -> Self {
        MonomialIdeal { num_vars: 0, gens: Vec::new() }
    }

    fn minimalize(num_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        for g in &all {
            if g.num_vars() != num_vars {
                return Err(Error::ExponentLength { expected: num_vars, found: g.num_vars() });
            }
            if g.degree() == 0 {
                return Err(Error::UnitIdeal);
            }
        }
        all.sort();
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for g in all {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        Ok(MonomialIdeal { num_vars, gens: kept })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_artinian(&self) -> bool {
        let mut seen = vec![false; self.num_vars];
        for g in &self.gens {
            if let Some(i) = g.pure_power_variable() {
                seen[i] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The first variable without a pure power among the generators.
    fn first_free_variable(&self) -> Option<usize> {
        (0..self.num_vars).find(|&i| {
            !self.gens.iter().any(|g| g.pure_power_variable() == Some(i))
        })
    }

    pub fn is_quadratic(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 2)
    }

    /// Degree-`deg` monomials outside the ideal, found by testing every
    /// monomial of that degree.
    pub fn standard_monomials(&self, deg: usize) -> Vec<Monomial> {
        monomials_of_degree(self.num_vars, deg)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// The ideal of the tensor product: `other` moves onto a fresh block of
    /// variables after this one.
    pub fn tensor(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let total = self.num_vars + other.num_vars;
        let gens = self
            .gens
            .iter()
            .map(|g| g.shifted(0, total))
            .chain(other.gens.iter().map(|g| g.shifted(self.num_vars, total)));
        Self::minimalize(total, gens).expect("generators of valid ideals stay valid")
    }

    /// `I + S_{i+2}`: the quotient keeps degrees up to `i + 1`.
    pub fn truncate(&self, i: usize) -> MonomialIdeal {
        let extra = self.standard_monomials(i + 2);
        Self::minimalize(self.num_vars, self.gens.iter().cloned().chain(extra))
            .expect("truncation adds positive-degree monomials only")
    }

    /// The colon ideal `I : m`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        Self::minimalize(self.num_vars, self.gens.iter().map(|g| g.colon(m)))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// `h_0, h_1, ..., h_d` with `h_i = dim A_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Coefficientwise product of the two generating polynomials.
    pub fn product(&self, other: &HilbertFunction) -> HilbertFunction {
        if self.0.is_empty() || other.0.is_empty() {
            return HilbertFunction(Vec::new());
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HilbertFunction(out)
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An Artinian quotient `A = S/I` together with its standard-monomial basis
/// in every degree.
#[derive(Clone, Debug)]
pub struct Algebra {
    ideal: MonomialIdeal,
    basis: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl Algebra {
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        if let Some(i) = ideal.first_free_variable() {
            return Err(Error::NotArtinian(i));
        }
        let n = ideal.num_vars();
        let mut basis = vec![vec![Monomial::one(n)]];
        loop {
            let prev = basis.last().expect("degree 0 is always present");
            let mut next: Vec<Monomial> = prev
                .iter()
                .flat_map(|m| (0..n).map(move |j| m.mul_var(j)))
                .filter(|m| !ideal.contains(m))
                .collect();
            if next.is_empty() {
                break;
            }
            next.sort();
            next.dedup();
            basis.push(next);
        }
        let index = basis
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect())
            .collect();
        Ok(Algebra { ideal, basis, index })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn num_vars(&self) -> usize {
        self.ideal.num_vars()
    }

    /// Standard monomials of degree `deg`; empty above the socle degree.
    pub fn basis(&self, deg: usize) -> &[Monomial] {
        self.basis.get(deg).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, deg: usize) -> usize {
        self.basis(deg).len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.degree()).and_then(|idx| idx.get(m).copied())
    }

    pub fn socle_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        HilbertFunction(self.basis.iter().map(Vec::len).collect())
    }

    /// Standard monomials killed by every variable.
    pub fn socle(&self) -> Vec<Monomial> {
        let n = self.num_vars();
        self.basis
            .iter()
            .flatten()
            .filter(|m| (0..n).all(|j| self.index_of(&m.mul_var(j)).is_none()))
            .cloned()
            .collect()
    }

    pub fn is_level(&self) -> bool {
        let d = self.socle_degree();
        self.socle().iter().all(|m| m.degree() == d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u16]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn squares(n: usize) -> Vec<Vec<u16>> {
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 2;
                e
            })
            .collect()
    }

    fn octahedron() -> MonomialIdeal {
        let mut g = squares(6);
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            let mut e = vec![0; 6];
            e[a] = 1;
            e[b] = 1;
            g.push(e);
        }
        MonomialIdeal::from_exponents(6, g).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        assert_eq!(ideal(2, &[&[2, 0], &[2, 1]]).generators(), &[Monomial::new(vec![2, 0])]);
        assert_eq!(ideal(2, &[&[2, 0], &[0, 2]]).generators().len(), 2);
        let i = ideal(2, &[&[1, 1], &[2, 1], &[0, 3]]);
        assert_eq!(i.generators(), &[Monomial::new(vec![1, 1]), Monomial::new(vec![0, 3])]);
    }

    #[test]
    fn minimalize_rejects_bad_input() {
        assert_eq!(MonomialIdeal::new(0, []), Err(Error::NoVariables));
        assert_eq!(
            MonomialIdeal::from_exponents(2, vec![vec![0, 0]]),
            Err(Error::UnitIdeal)
        );
        assert!(matches!(
            MonomialIdeal::from_exponents(2, vec![vec![1, 0, 0]]),
            Err(Error::ExponentLength { .. })
        ));
    }

    #[test]
    fn artinian_detection() {
        assert!(ideal(2, &[&[2, 0], &[0, 2]]).is_artinian());
        assert!(!ideal(2, &[&[1, 1]]).is_artinian());
        let mut g = squares(6);
        g.push(vec![1, 1, 0, 0, 0, 0]);
        assert!(MonomialIdeal::from_exponents(6, g).unwrap().is_artinian());
        assert_eq!(Algebra::new(ideal(2, &[&[1, 1], &[2, 0]])).unwrap_err(), Error::NotArtinian(1));
    }

    #[test]
    fn canonical_order_matches_clique_order() {
        let got = MonomialIdeal::from_exponents(3, squares(3)).unwrap().standard_monomials(2);
        let want: Vec<_> = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|e| Monomial::new(e.to_vec()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn standard_monomials_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert_eq!(i.standard_monomials(2), vec![Monomial::new(vec![0, 2])]);
        assert_eq!(octahedron().standard_monomials(3).len(), 8);
        assert!(octahedron().standard_monomials(4).is_empty());
    }

    #[test]
    fn hilbert_examples() {
        let a = Algebra::new(octahedron()).unwrap();
        assert_eq!(a.hilbert_function().values(), &[1, 6, 12, 8]);

        let mut g = squares(6);
        g.push(vec![1, 1, 0, 0, 0, 0]);
        g.push(vec![0, 0, 1, 1, 0, 0]);
        let a = Algebra::new(MonomialIdeal::from_exponents(6, g).unwrap()).unwrap();
        assert_eq!(a.hilbert_function().values(), &[1, 6, 13, 12, 4]);

        for n in 1..=7 {
            let a = Algebra::new(MonomialIdeal::from_exponents(n, squares(n)).unwrap()).unwrap();
            let binom: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
            assert_eq!(a.hilbert_function().values(), binom.as_slice());
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn socle_and_level() {
        let a = Algebra::new(ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(a.socle(), vec![Monomial::new(vec![1, 1])]);
        assert!(a.is_level());

        let a = Algebra::new(octahedron()).unwrap();
        let socle = a.socle();
        assert_eq!(socle.len(), 8);
        assert!(socle.iter().all(|m| m.degree() == 3));
        assert!(a.is_level());

        let a = Algebra::new(ideal(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(a.socle(), vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 2])]);
        assert!(!a.is_level());
    }

    #[test]
    fn ground_field_algebra() {
        let k = Algebra::new(MonomialIdeal::ground_field()).unwrap();
        assert_eq!(k.hilbert_function().values(), &[1]);
        assert_eq!(k.socle(), vec![Monomial::one(0)]);
        assert!(k.is_level());
    }

    #[test]
    fn tensor_examples() {
        let x2 = ideal(1, &[&[2]]);
        let t = x2.tensor(&x2);
        assert_eq!(t, ideal(2, &[&[2, 0], &[0, 2]]));
        assert_eq!(Algebra::new(t).unwrap().hilbert_function().values(), &[1, 2, 1]);

        let v2 = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let t = v2.tensor(&v2).tensor(&v2);
        let a = Algebra::new(t.clone()).unwrap();
        assert_eq!(a.hilbert_function().values(), &[1, 6, 12, 8]);
        assert_eq!(t, octahedron());
    }

    #[test]
    fn truncation_examples() {
        let t = octahedron().truncate(1);
        assert_eq!(Algebra::new(t).unwrap().hilbert_function().values(), &[1, 6, 12]);
        let t = octahedron().truncate(5);
        assert_eq!(Algebra::new(t).unwrap().hilbert_function().values(), &[1, 6, 12, 8]);
        let t = ideal(2, &[&[2, 0], &[0, 2]]).truncate(0);
        assert_eq!(t, ideal(2, &[&[2, 0], &[0, 2], &[1, 1]]));
    }

    #[test]
    fn colon_by_squarefree() {
        // (x0^2, x1^2, x2^2, x0x2) : x0x1 = (x0, x1, x2)
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 0, 1]]);
        let c = i.colon(&Monomial::new(vec![1, 1, 0])).unwrap();
        assert_eq!(c, ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(
            i.colon(&Monomial::new(vec![1, 0, 1])),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(vec![2, 0, 1]).to_string(), "x0^2*x2");
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(ideal(2, &[&[2, 0], &[0, 2]]).to_string(), "<x0^2, x1^2>");
    }
}
