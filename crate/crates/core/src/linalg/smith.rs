//! Smith normal form over the integers, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U * M * V = diag(d_1, ..., d_k, 0, ...)` with `d_1 | d_2 | ... | d_k`, all positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The diagonal matrix `U * M * V`, with the shape of `M`.
    pub fn diagonal(&self) -> IntMatrix {
        let (rows, cols) = (self.u.rows(), self.v.cols());
        IntMatrix::from_fn(rows, cols, |i, j| {
            if i == j && i < self.factors.len() {
                self.factors[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    // stored transposed so column operations on V become row operations
    vt: Vec<Vec<BigInt>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn add_multiple(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s) {
        *x += q * y;
    }
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.vt.len()
    }

    /// row_dst += q * row_src
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        add_multiple(&mut self.a, dst, src, q);
        add_multiple(&mut self.u, dst, src, q);
    }

    /// col_dst += q * col_src
    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            let y = row[src].clone();
            row[dst] += q * y;
        }
        add_multiple(&mut self.vt, dst, src, q);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        self.vt.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -std::mem::take(x);
        }
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Reduces row and column `t` against the pivot; true when both are clear.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clear = true;
        for i in t + 1..self.rows() {
            if self.a[i][t].is_zero() {
                continue;
            }
            let q = -self.a[i][t].div_floor(&self.a[t][t]);
            self.row_add(i, t, &q);
            clear &= self.a[i][t].is_zero();
        }
        for j in t + 1..self.cols() {
            if self.a[t][j].is_zero() {
                continue;
            }
            let q = -self.a[t][j].div_floor(&self.a[t][t]);
            self.col_add(j, t, &q);
            clear &= self.a[t][j].is_zero();
        }
        clear
    }

    fn divisibility_violation(&self, t: usize) -> Option<usize> {
        let p = &self.a[t][t];
        (t + 1..self.rows()).find(|&i| (t + 1..self.cols()).any(|j| !self.a[i][j].is_multiple_of(p)))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: (0..rows).map(|i| m.row(i).to_vec()).collect(),
        u: identity_rows(rows),
        vt: identity_rows(cols),
    };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some(_) = w.smallest_from(t) else { break };
        loop {
            let (i, j) = w.smallest_from(t).expect("submatrix stays nonzero");
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            if !w.eliminate(t) {
                continue;
            }
            match w.divisibility_violation(t) {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        factors.push(w.a[t][t].clone());
    }
    let u = IntMatrix::from_fn(rows, rows, |i, j| w.u[i][j].clone());
    let v = IntMatrix::from_fn(cols, cols, |i, j| w.vt[j][i].clone());
    SmithForm { factors, u, v }
}

/// An integer solution of `M x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(m), b)
}

pub(crate) fn solve_with(snf: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(snf.u.cols(), b.len(), "right-hand side has the wrong length");
    let y = snf.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); snf.v.rows()];
    for (k, yk) in y.iter().enumerate() {
        match snf.factors.get(k) {
            Some(d) => {
                let (q, r) = yk.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                z[k] = q;
            }
            None if !yk.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Whether `b` lies in the integer column span of `M`.
pub fn in_image(m: &IntMatrix, b: &[BigInt]) -> bool {
    solve_integer(m, b).is_some()
}
