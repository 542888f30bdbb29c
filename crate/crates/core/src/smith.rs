//! Invariant factors of a square rational matrix.
//!
//! The characteristic matrix `xI - M` is diagonalized over `Q[x]` by
//! unimodular row and column operations (Smith normal form). Pivots are
//! chosen by minimal degree and reduced with Euclidean division, so every
//! pass either clears the pivot's row and column or strictly lowers the
//! pivot degree.

use crate::error::Result;
use crate::mat::Mat;
use crate::poly::Poly;

/// Monic nontrivial invariant factors of `xI - m`, each dividing the next.
/// Their product is the characteristic polynomial.
pub fn invariant_factors(m: &Mat) -> Result<Vec<Poly>> {
    if !m.is_square() {
        return Err(crate::Error::NotSquare {
            op: "invariant_factors",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-m[(i, j)].clone());
                    if i == j {
                        &c + &Poly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    Ok(smith_diagonal(&mut a)
        .into_iter()
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect())
}

/// Diagonal of the Smith normal form of a square polynomial matrix, monic,
/// zeros included for rank-deficient input.
// Row operations read one row while writing another, so index loops are clearer here.
#[allow(clippy::needless_range_loop)]
fn smith_diagonal(a: &mut [Vec<Poly>]) -> Vec<Poly> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(a, k) else {
                // Remaining block is zero.
                diag.extend(std::iter::repeat_n(Poly::zero(), n - k));
                return diag;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }

            let mut cleared = true;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&a[k][k]);
                for j in k..n {
                    let d = &q * &a[k][j];
                    a[i][j] = &a[i][j] - &d;
                }
                cleared &= r.is_zero();
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for row in a[k..].iter_mut() {
                    let d = &q * &row[k];
                    row[j] = &row[j] - &d;
                }
                cleared &= r.is_zero();
            }
            if !cleared {
                continue;
            }

            // Pivot must divide the whole trailing block.
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].divisible_by(&a[k][k]));
            match offender {
                Some((i, _)) => {
                    for j in k..n {
                        let s = &a[k][j] + &a[i][j];
                        a[k][j] = s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[k][k].monic());
    }
    diag
}

fn min_degree_entry(a: &[Vec<Poly>], k: usize) -> Option<(usize, usize)> {
    let n = a.len();
    (k..n)
        .flat_map(|i| (k..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| a[i][j].degree().map(|d| (d, i, j)))
        .min()
        .map(|(_, i, j)| (i, j))
}
