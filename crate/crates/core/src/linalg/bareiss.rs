//! Fraction-free Gaussian elimination.
//!
//! Every intermediate entry is a minor of the input, so each update
//! `(p * a - b * c) / prev` divides exactly. Elimination first runs in
//! checked `i128` and restarts in `BigInt` on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntMatrix;

struct Outcome<T> {
    rank: usize,
    // last pivot, the determinant up to sign when the matrix is square and regular
    last_pivot: T,
    swaps: usize,
}

fn eliminate_i128(a: &mut [i128], rows: usize, cols: usize) -> Option<Outcome<i128>> {
    let mut prev: i128 = 1;
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[r * cols + c];
        for i in r + 1..rows {
            let lead = a[i * cols + c];
            for j in c + 1..cols {
                let t = pivot
                    .checked_mul(a[i * cols + j])?
                    .checked_sub(lead.checked_mul(a[r * cols + j])?)?;
                debug_assert_eq!(t % prev, 0);
                a[i * cols + j] = t / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(Outcome { rank: r, last_pivot: prev, swaps })
}

fn eliminate_big(a: &mut [BigInt], rows: usize, cols: usize) -> Outcome<BigInt> {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let t = &pivot * &a[i * cols + j] - &lead * &a[r * cols + j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i * cols + j] = q;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    Outcome { rank: r, last_pivot: prev, swaps }
}

fn run(m: &IntMatrix) -> Outcome<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let small: Option<Vec<i128>> = m.entries().iter().map(ToPrimitive::to_i128).collect();
    if let Some(mut a) = small {
        if let Some(out) = eliminate_i128(&mut a, rows, cols) {
            return Outcome {
                rank: out.rank,
                last_pivot: BigInt::from(out.last_pivot),
                swaps: out.swaps,
            };
        }
    }
    let mut a = m.entries().to_vec();
    eliminate_big(&mut a, rows, cols)
}

/// Rank over the rationals.
pub fn rank_rational(m: &IntMatrix) -> usize {
    run(m).rank
}

/// Determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    if m.rows() == 0 {
        return BigInt::one();
    }
    let out = run(m);
    if out.rank < m.rows() {
        return BigInt::zero();
    }
    if out.swaps % 2 == 1 {
        -out.last_pivot
    } else {
        out.last_pivot
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cofactor expansion; independent of elimination.
    fn cofactor_det(rows: &[Vec<i64>]) -> i128 {
        let n = rows.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return rows[0][0] as i128;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * rows[0][j] as i128 * cofactor_det(&minor)
            })
            .sum()
    }

    fn circulant(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(j == i || j == (i + 1) % n)))
    }

    #[test]
    fn rank_examples() {
        let k3 = IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(cofactor_det(&k3.to_i64_rows().unwrap()), -2);
        assert_eq!(determinant(&k3), BigInt::from(-2));
        assert_eq!(rank_rational(&k3), 3);
        assert_eq!(rank_rational(&circulant(4)), 3);
        assert_eq!(rank_rational(&IntMatrix::zeros(3, 5)), 0);
        assert_eq!(rank_rational(&IntMatrix::zeros(0, 5)), 0);
        assert_eq!(rank_rational(&IntMatrix::zeros(4, 0)), 0);
    }

    #[test]
    fn circulant_determinants() {
        for n in 3..10 {
            let c = circulant(n);
            let expect = cofactor_det(&c.to_i64_rows().unwrap());
            assert_eq!(determinant(&c), BigInt::from(expect));
            assert_eq!(expect.abs(), if n % 2 == 1 { 2 } else { 0 });
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // L * U with unit lower L and a huge diagonal in U: det = product of that diagonal
        let big = BigInt::from(1u64 << 62);
        let n = 4;
        let l = IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => BigInt::one(),
            std::cmp::Ordering::Greater => &big + BigInt::from(i * 7 + j),
            std::cmp::Ordering::Less => BigInt::zero(),
        });
        let u = IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => &big + BigInt::from(i + 1),
            std::cmp::Ordering::Less => BigInt::from(3 * i + j),
            std::cmp::Ordering::Greater => BigInt::zero(),
        });
        let m = l.mul(&u);
        let expect: BigInt = (0..n).map(|i| &big + BigInt::from(i + 1)).product();
        let mut small: Vec<i128> = Vec::new();
        if let Some(v) = m.entries().iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>() {
            small = v;
        }
        if !small.is_empty() {
            assert!(eliminate_i128(&mut small, n, n).is_none());
        }
        assert_eq!(determinant(&m), expect);
        assert_eq!(rank_rational(&m), n);
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        let m = IntMatrix::from_rows(&[
            vec![0, 2, 4, 1],
            vec![0, 1, 2, 0],
            vec![0, 3, 6, 1],
        ]);
        assert_eq!(rank_rational(&m), 2);
    }
}
