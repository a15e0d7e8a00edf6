//! Integer matrix normal forms over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonal of the Smith normal form of `m` (square or rectangular), with
/// non-negative entries each dividing the next. Zero diagonal entries trail.
///
/// Pivots are chosen by minimal absolute value over the remaining block.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rank_bound = rows.min(cols);
    let mut diag = Vec::with_capacity(rank_bound);

    for t in 0..rank_bound {
        loop {
            let Some((pr, pc)) = min_abs_nonzero(&a, t) else {
                // remaining block is zero
                diag.extend(std::iter::repeat_n(BigInt::zero(), rank_bound - t));
                return diag;
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }

            let pivot = a[t][t].clone();
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&pivot);
                for c in t..cols {
                    let delta = &q * &a[t][c];
                    a[r][c] -= delta;
                }
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&pivot);
                for r in t..rows {
                    let delta = &q * &a[r][t];
                    a[r][c] -= delta;
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&a[r][c] % &pivot).is_zero());
            match offender {
                Some((r, _)) => {
                    for c in t..cols {
                        let v = a[r][c].clone();
                        a[t][c] += v;
                    }
                }
                None => {
                    diag.push(pivot.abs());
                    break;
                }
            }
        }
    }
    diag
}

fn min_abs_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                best = Some((r, c, av));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Prime-power decomposition of the finite abelian group `⊕ Z/n_i`, as a
/// sorted list of `(p, p^e)` pairs. Zero entries (free summands) are skipped.
pub fn primary_decomposition(orders: &[BigInt]) -> Vec<(u64, BigInt)> {
    let mut out = Vec::new();
    for n in orders {
        if n.is_zero() {
            continue;
        }
        let mut n = n.abs();
        let mut q = 2u64;
        while BigInt::from(q) * q <= n {
            let bq = BigInt::from(q);
            if (&n % &bq).is_zero() {
                let mut pe = BigInt::one();
                while (&n % &bq).is_zero() {
                    n /= &bq;
                    pe *= &bq;
                }
                out.push((q, pe));
            }
            q += 1;
        }
        if n > BigInt::one() {
            let p = u64::try_from(&n).unwrap_or(u64::MAX);
            out.push((p, n));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(
            smith_diagonal(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            ints(&[2, 6, 12])
        );
        assert_eq!(
            smith_diagonal(&mat(&[&[1, 0, 0], &[1, 2, 0], &[1, 6, 6]])),
            ints(&[1, 2, 6])
        );
        assert_eq!(smith_diagonal(&mat(&[&[0, 0], &[0, 0]])), ints(&[0, 0]));
        assert_eq!(smith_diagonal(&mat(&[&[4, 0], &[0, 6]])), ints(&[2, 12]));
        assert_eq!(smith_diagonal(&mat(&[&[2, 3, 5]])), ints(&[1]));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(
            determinant(&mat(&[&[1, 0, 0], &[1, 2, 0], &[1, 6, 6]])),
            BigInt::from(12)
        );
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(
            determinant(&mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            BigInt::from(4)
        );
    }

    #[test]
    fn primary_parts() {
        let parts = primary_decomposition(&ints(&[12, 1, 0, 2]));
        let expect: Vec<(u64, BigInt)> = vec![
            (2, BigInt::from(2)),
            (2, BigInt::from(4)),
            (3, BigInt::from(3)),
        ];
        assert_eq!(parts, expect);
    }
}
