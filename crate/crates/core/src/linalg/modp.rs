//! Gaussian elimination over GF(p), with a bit-packed path for p = 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue is below p")
}

/// Dense matrix over GF(p), entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn from_int(m: &IntMatrix, p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeFieldMatrix {
            p,
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| reduce(x, p)).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// Brings the matrix to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (p, rows, cols) = (self.p, self.rows, self.cols);
        let a = &mut self.data;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(r * cols + j, piv * cols + j);
            }
            let inv = pow_mod(a[r * cols + c], p - 2, p);
            for j in c..cols {
                a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
            }
            for i in 0..rows {
                let f = a[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = mul_mod(f, a[r * cols + j], p);
                    a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Right-kernel basis read off the reduced echelon form: one vector per
    /// free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    let x = m.get(r, f);
                    v[pc] = (self.p - x) % self.p;
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| (acc + mul_mod(self.get(i, j), v[j], self.p)) % self.p)
            })
            .collect()
    }
}

/// Matrix over GF(2) with each row packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Gf2Matrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, x) in m.row(i).iter().enumerate() {
                if x.is_odd() {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        for k in 0..w {
            let s = self.data[src * w + k];
            self.data[dst * w + k] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, piv);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0u8; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = u8::from(m.get(r, f));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| acc ^ (u8::from(self.get(i, j)) & v[j])))
            .collect()
    }
}

pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if p == 2 {
        return Ok(Gf2Matrix::from_int(m).rank());
    }
    Ok(PrimeFieldMatrix::from_int(m, p)?.rank())
}

pub fn kernel_basis_mod_p(m: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>> {
    if p == 2 {
        return Ok(Gf2Matrix::from_int(m)
            .kernel_basis()
            .into_iter()
            .map(|v| v.into_iter().map(u64::from).collect())
            .collect());
    }
    Ok(PrimeFieldMatrix::from_int(m, p)?.kernel_basis())
}
