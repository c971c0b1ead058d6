//! Mod-2 chains on skeleta of flag complexes and the Bockstein map.
//!
//! In degree `i` the boundary `C_i -> C_{i-1}` of the `i`-skeleton, taken with
//! all signs positive, is the transpose of multiplication by `l` on
//! `A_i -> A_{i+1}`. Over GF(2) this is the honest simplicial boundary, so the
//! top homology of the skeleton is its kernel. Over the integers the same
//! matrix `M` sits in `0 -> C --2--> C -> C/2 -> 0`, and the snake lemma gives
//! `ker(M mod 2) -> coker(M)`; that map is injective exactly when `M` has full
//! column rank, i.e. when `l` is onto `A_{i+1}` in characteristic zero.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flag::Graph;
use crate::linalg::{rank_rational, serialize_ints, smith_normal_form, solve_with, Gf2Matrix, IntMatrix};

/// The boundary from `i`-faces (cliques of size `i+1`) to `(i-1)`-faces.
#[derive(Clone, Debug)]
pub struct SkeletonComplex {
    degree: usize,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    lift: IntMatrix,
}

impl SkeletonComplex {
    pub fn new(g: &Graph, i: usize) -> Self {
        let lower = g.cliques(i);
        let upper = g.cliques(i + 1);
        let row_of: HashMap<&[usize], usize> =
            lower.iter().enumerate().map(|(r, f)| (f.as_slice(), r)).collect();
        let mut lift = IntMatrix::zeros(lower.len(), upper.len());
        for (c, face) in upper.iter().enumerate() {
            for skip in 0..face.len() {
                let facet: Vec<usize> =
                    face.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                lift[(row_of[facet.as_slice()], c)] = BigInt::from(1);
            }
        }
        SkeletonComplex { degree: i, lower, upper, lift }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Faces of dimension `i-1`, indexing rows.
    pub fn lower_faces(&self) -> &[Vec<usize>] {
        &self.lower
    }

    /// Faces of dimension `i`, indexing columns.
    pub fn upper_faces(&self) -> &[Vec<usize>] {
        &self.upper
    }

    /// Integer boundary with every sign positive.
    pub fn lift(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn boundary_mod2(&self) -> Gf2Matrix {
        Gf2Matrix::from_int(&self.lift)
    }

    pub fn rank_mod2(&self) -> usize {
        self.boundary_mod2().rank()
    }

    /// Basis of the top cycles, read off the reduced echelon form.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        self.boundary_mod2().kernel_basis()
    }

    pub fn homology_dim(&self) -> usize {
        self.upper.len() - self.rank_mod2()
    }

    fn faces_of(&self, chain: &[u8]) -> Vec<Vec<usize>> {
        chain.iter().zip(&self.upper).filter(|&(&b, _)| b == 1).map(|(_, f)| f.clone()).collect()
    }
}

/// `dim H_i(Delta(i); Z/2)`.
pub fn homology_gf2(g: &Graph, i: usize) -> usize {
    SkeletonComplex::new(g, i).homology_dim()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Mod2Verdict {
    pub degree: usize,
    /// `f_{i-1}` and `f_i`.
    pub f_lower: usize,
    pub f_upper: usize,
    pub homology: usize,
    pub rank_mod2: usize,
    pub surjectivity_fails: bool,
    pub injectivity_fails: bool,
}

impl Mod2Verdict {
    pub fn holds(&self) -> bool {
        !self.surjectivity_fails && !self.injectivity_fails
    }
}

/// Degree-`i` behaviour of `l` over GF(2), read off the skeleton: top
/// homology blocks surjectivity, a cokernel of the boundary blocks injectivity.
pub fn mod2_verdict(g: &Graph, i: usize) -> Result<Mod2Verdict> {
    if i == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let cx = SkeletonComplex::new(g, i);
    let (f_lower, f_upper) = (cx.lower.len(), cx.upper.len());
    let rank_mod2 = cx.rank_mod2();
    let homology = f_upper - rank_mod2;
    Ok(Mod2Verdict {
        degree: i,
        f_lower,
        f_upper,
        homology,
        rank_mod2,
        surjectivity_fails: homology != 0 && f_upper <= f_lower,
        injectivity_fails: rank_mod2 < f_lower && f_lower <= f_upper,
    })
}

/// A top cycle whose Bockstein image vanishes: `lift * preimage = half_boundary`
/// where `half_boundary = lift * cycle / 2`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BocksteinWitness {
    pub cycle: Vec<Vec<usize>>,
    #[serde(serialize_with = "serialize_ints")]
    pub half_boundary: Vec<BigInt>,
    #[serde(serialize_with = "serialize_ints")]
    pub preimage: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BocksteinVerdict {
    pub degree: usize,
    pub homology: usize,
    pub delta_injective: bool,
    /// The rank shortcut: `rank_Q(lift) = f_i`. Must agree with `delta_injective`.
    pub lift_full_column_rank: bool,
    /// Coordinates of each basis cycle's image in the 2-torsion of `coker(lift)`.
    pub classes: Vec<Vec<u8>>,
    pub witness: Option<BocksteinWitness>,
}

impl BocksteinVerdict {
    pub fn consistent(&self) -> bool {
        self.delta_injective == self.lift_full_column_rank
    }
}

fn lift_chain(chain: &[u8]) -> Vec<BigInt> {
    chain.iter().map(|&b| BigInt::from(b)).collect()
}

fn half(v: Vec<BigInt>) -> Vec<BigInt> {
    v.into_iter()
        .map(|x| {
            let (q, r) = x.div_rem(&BigInt::from(2));
            assert!(r.is_zero(), "boundary of a mod-2 cycle is even");
            q
        })
        .collect()
}

pub fn bockstein_verdict(g: &Graph, i: usize) -> Result<BocksteinVerdict> {
    if i == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let cx = SkeletonComplex::new(g, i);
    let m = cx.lift();
    let snf = smith_normal_form(m);
    let cycles = cx.cycles();

    // In diagonal coordinates y = U w, the class of w lives in
    // sum Z/d_j; its 2-torsion part is y_j / (d_j / 2) mod 2 for even d_j.
    let class_of = |w: &[BigInt]| -> Vec<u8> {
        let y = snf.u.mul_vec(w);
        let mut bits = Vec::new();
        for (j, yj) in y.iter().enumerate() {
            match snf.factors.get(j) {
                Some(d) if d.is_even() => {
                    let (q, r) = yj.div_rem(&(d / 2u32));
                    assert!(r.is_zero(), "image of delta is 2-torsion");
                    bits.push(u8::from(q.is_odd()));
                }
                Some(d) => assert!(yj.is_multiple_of(d), "odd torsion cannot receive delta"),
                None => assert!(yj.is_zero(), "free part cannot receive delta"),
            }
        }
        bits
    };
    let halves: Vec<Vec<BigInt>> = cycles.iter().map(|z| half(m.mul_vec(&lift_chain(z)))).collect();
    let classes: Vec<Vec<u8>> = halves.iter().map(|w| class_of(w)).collect();

    let torsion_bits = snf.factors.iter().filter(|d| d.is_even()).count();
    let mut class_matrix = Gf2Matrix::zeros(torsion_bits, cycles.len());
    for (c, bits) in classes.iter().enumerate() {
        for (r, &b) in bits.iter().enumerate() {
            class_matrix.set(r, c, b == 1);
        }
    }
    let delta_injective = class_matrix.rank() == cycles.len();
    let lift_full_column_rank = rank_rational(m) == m.cols();

    let witness = class_matrix.kernel_basis().first().map(|combo| {
        let mut z = vec![0u8; cx.upper.len()];
        for (k, &c) in combo.iter().enumerate() {
            if c == 1 {
                for (zj, &b) in z.iter_mut().zip(&cycles[k]) {
                    *zj ^= b;
                }
            }
        }
        let w = half(m.mul_vec(&lift_chain(&z)));
        let preimage = solve_with(&snf, &w).expect("a cycle with zero class has a preimage");
        BocksteinWitness { cycle: cx.faces_of(&z), half_boundary: w, preimage }
    });

    Ok(BocksteinVerdict { degree: i, homology: cycles.len(), delta_injective, lift_full_column_rank, classes, witness })
}
