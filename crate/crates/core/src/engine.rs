//! Multiplication by `l = x_0 + ... + x_r` and the degree-by-degree WLP test.
//!
//! For monomial ideals the sum of the variables is a generic linear form,
//! so a single exact rank computation per degree decides the property.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, rank_mod_p, rank_rational, IntMatrix};
use crate::monomial::{monomials_of_degree, Algebra, HilbertFunction, MonomialIdeal};

/// Characteristic of the ground field: 0 for the rationals, or a prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Characteristic {
    #[default]
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn new(c: u64) -> Result<Self> {
        match c {
            0 => Ok(Characteristic::Zero),
            p if is_prime(p) => Ok(Characteristic::Prime(p)),
            other => Err(Error::NotPrime(other)),
        }
    }

    pub fn value(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }

    pub fn rank(self, m: &IntMatrix) -> usize {
        match self {
            Characteristic::Zero => rank_rational(m),
            Characteristic::Prime(p) => rank_mod_p(m, p).expect("modulus checked at construction"),
        }
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value())
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

fn multinomial(k: usize, parts: &[u16]) -> BigInt {
    let mut num = BigInt::one();
    let mut used = 0usize;
    for &p in parts {
        for t in 1..=p as usize {
            used += 1;
            num = num * BigInt::from(used) / BigInt::from(t);
        }
    }
    debug_assert_eq!(used, k);
    num
}

/// Matrix of `l^k : A_i -> A_{i+k}`; rows follow the basis of `A_{i+k}` and
/// columns the basis of `A_i`.
pub fn mult_matrix(alg: &Algebra, i: usize, k: usize) -> IntMatrix {
    let src = alg.basis(i);
    let rows = alg.dim(i + k);
    let mut m = IntMatrix::zeros(rows, src.len());
    if rows == 0 {
        return m;
    }
    if k == 1 {
        for (c, sigma) in src.iter().enumerate() {
            for j in 0..alg.num_vars() {
                if let Some(r) = alg.index_of(&sigma.mul_var(j)) {
                    m[(r, c)] += 1;
                }
            }
        }
        return m;
    }
    let terms: Vec<_> = monomials_of_degree(alg.num_vars(), k)
        .into_iter()
        .map(|beta| {
            let coeff = multinomial(k, beta.exponents());
            (beta, coeff)
        })
        .collect();
    for (c, sigma) in src.iter().enumerate() {
        for (beta, coeff) in &terms {
            if let Some(r) = alg.index_of(&sigma.mul(beta)) {
                m[(r, c)] += coeff;
            }
        }
    }
    m
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureMode {
    Injectivity,
    Surjectivity,
    Both,
}

impl fmt::Display for FailureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureMode::Injectivity => "injectivity",
            FailureMode::Surjectivity => "surjectivity",
            FailureMode::Both => "both",
        })
    }
}

/// The map `A_i -> A_{i+1}`; `dim_j` is `dim A_{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeRecord {
    pub i: usize,
    pub dim_i: usize,
    pub dim_j: usize,
    pub rank: usize,
    pub full: bool,
}

impl DegreeRecord {
    pub fn injective(&self) -> bool {
        self.rank == self.dim_i
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.dim_j
    }

    pub fn failure_mode(&self) -> Option<FailureMode> {
        if self.full {
            return None;
        }
        Some(match self.dim_i.cmp(&self.dim_j) {
            std::cmp::Ordering::Less => FailureMode::Injectivity,
            std::cmp::Ordering::Greater => FailureMode::Surjectivity,
            std::cmp::Ordering::Equal => FailureMode::Both,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub degree: usize,
    pub mode: FailureMode,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WlpReport {
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    pub hilbert: HilbertFunction,
    /// Degrees `0..=d`; the last map lands in the zero space.
    pub degrees: Vec<DegreeRecord>,
    #[serde(rename = "wlp")]
    pub has_wlp: bool,
    pub failures: Vec<Failure>,
}

impl WlpReport {
    pub fn record(&self, i: usize) -> Option<&DegreeRecord> {
        self.degrees.get(i)
    }

    /// Whether `A_i -> A_{i+1}` has a kernel. Degrees past the socle have none.
    pub fn fails_injectivity(&self, i: usize) -> bool {
        self.record(i).is_some_and(|r| !r.injective())
    }

    /// Whether `A_i -> A_{i+1}` has a cokernel.
    pub fn fails_surjectivity(&self, i: usize) -> bool {
        self.record(i).is_some_and(|r| !r.surjective())
    }

    pub fn failure_at(&self, i: usize) -> Option<FailureMode> {
        self.failures.iter().find(|f| f.degree == i).map(|f| f.mode)
    }

    /// Once `l` is onto `A_{i+1}` it stays onto in every later degree, since
    /// `A` is generated in degree one.
    pub fn surjectivity_persists(&self) -> bool {
        self.degrees.iter().skip_while(|r| !r.surjective()).all(DegreeRecord::surjective)
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        if self.has_wlp {
            return "has WLP".to_string();
        }
        let parts: Vec<String> =
            self.failures.iter().map(|f| format!("{} in degree {}", f.mode, f.degree)).collect();
        format!("fails WLP: {}", parts.join(", "))
    }
}

pub fn wlp_report(alg: &Algebra, ch: Characteristic) -> WlpReport {
    let hilbert = alg.hilbert_function();
    let degrees: Vec<DegreeRecord> = (0..=alg.socle_degree())
        .map(|i| {
            let (dim_i, dim_j) = (alg.dim(i), alg.dim(i + 1));
            let rank = if dim_j == 0 { 0 } else { ch.rank(&mult_matrix(alg, i, 1)) };
            DegreeRecord { i, dim_i, dim_j, rank, full: rank == dim_i.min(dim_j) }
        })
        .collect();
    let failures: Vec<Failure> = degrees
        .iter()
        .filter_map(|r| r.failure_mode().map(|mode| Failure { degree: r.i, mode }))
        .collect();
    WlpReport { characteristic: ch, hilbert, has_wlp: failures.is_empty(), degrees, failures }
}

pub fn wlp_report_for_ideal(ideal: &MonomialIdeal, ch: Characteristic) -> Result<WlpReport> {
    Ok(wlp_report(&Algebra::new(ideal.clone())?, ch))
}

/// Checks that `l * l` vanishes mod 2 in every degree, which holds whenever
/// the ideal contains all squares.
pub fn char2_differential_check(alg: &Algebra) -> bool {
    (0..alg.socle_degree()).all(|i| {
        let sq = mult_matrix(alg, i + 1, 1).mul(&mult_matrix(alg, i, 1));
        sq.entries().iter().all(|x| (x % 2u32).is_zero())
    })
}
