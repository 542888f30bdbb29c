//! Exact similarity decisions and explicit conjugating witnesses.
//!
//! Two independent routes: [`is_similar`] compares invariant factors (a
//! complete invariant), while [`sylvester_search`] constructs an invertible
//! `T` with `X T = T Y` from the kernel of the Sylvester operator
//! `T -> X T - T Y`. [`similarity_witness`] gates the constructive route
//! on the decision so that budget exhaustion is never confused with
//! non-similarity.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::rational::{int, Rational};

/// Limits for the invertible-combination search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Seeded random combinations tried after the deterministic tiers.
    pub random_draws: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            random_draws: 1000,
            seed: 0,
        }
    }
}

/// Kernels up to this dimension get the exhaustive `{-2,-1,1,2}` tier.
const SMALL_COMBO_DIM: usize = 4;
const SMALL_COEFFS: [i64; 4] = [-2, -1, 1, 2];
const RANDOM_COEFF_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

/// Invertible `T` with `X T = T Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityWitness {
    #[serde(rename = "T")]
    pub t: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(SimilarityWitness),
    /// Invariant factors differ; no witness exists.
    NotSimilar,
    /// Similar, but no invertible kernel combination was hit within budget.
    BudgetExhausted,
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&SimilarityWitness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

fn same_square(x: &Mat, y: &Mat, op: &'static str) -> Result<()> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if !y.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: y.rows(),
            cols: y.cols(),
        });
    }
    if x.rows() != y.rows() {
        return Err(Error::DimensionMismatch {
            op,
            expected: x.rows(),
            found: y.rows(),
        });
    }
    Ok(())
}

/// Complete similarity test over the rationals.
pub fn is_similar(x: &Mat, y: &Mat) -> Result<bool> {
    same_square(x, y, "is_similar")?;
    Ok(x.invariant_factors()? == y.invariant_factors()?)
}

/// Basis of `{T : X_p T = T Y_p for every pair p}`, all matrices `k x k`.
pub fn intertwiner_kernel(pairs: &[(Mat, Mat)]) -> Result<Vec<Mat>> {
    let Some((x0, _)) = pairs.first() else {
        return Err(Error::Domain(
            "intertwiner_kernel needs at least one pair".into(),
        ));
    };
    let k = x0.rows();
    for (x, y) in pairs {
        same_square(x, y, "intertwiner_kernel")?;
        if x.rows() != k {
            return Err(Error::DimensionMismatch {
                op: "intertwiner_kernel",
                expected: k,
                found: x.rows(),
            });
        }
    }
    let kk = k * k;
    let mut sys = Mat::zeros(kk * pairs.len(), kk);
    for (p, (x, y)) in pairs.iter().enumerate() {
        let base = p * kk;
        // (X T - T Y)_{ij} = sum_l X_il T_lj - sum_l T_il Y_lj
        for i in 0..k {
            for j in 0..k {
                let row = base + i * k + j;
                for l in 0..k {
                    if !x[(i, l)].is_zero() {
                        sys[(row, l * k + j)] += &x[(i, l)];
                    }
                    if !y[(l, j)].is_zero() {
                        sys[(row, i * k + l)] -= &y[(l, j)];
                    }
                }
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| Mat::from_vec(k, k, v))
        .collect()
}

/// Basis of the Sylvester kernel `{T : X T = T Y}`.
pub fn sylvester_kernel(x: &Mat, y: &Mat) -> Result<Vec<Mat>> {
    intertwiner_kernel(&[(x.clone(), y.clone())])
}

fn combine(vectors: &[Mat], coeffs: &[Rational]) -> Mat {
    let mut acc = Mat::zeros(vectors[0].rows(), vectors[0].cols());
    for (v, c) in vectors.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &v.scale(c);
        }
    }
    acc
}

fn is_invertible(m: &Mat) -> bool {
    m.det().is_ok_and(|d| !d.is_zero())
}

/// Searches the span of `vectors` for an invertible matrix.
///
/// Order: each vector alone, then every `{-2,-1,1,2}` coefficient tuple when
/// there are at most four vectors, then `budget.random_draws` seeded draws
/// with coefficients in `[-9, 9]`. `None` means the budget ran out, not that
/// the span is singular.
pub fn invertible_in_span(vectors: &[Mat], budget: &SearchBudget) -> Option<Mat> {
    let first = vectors.first()?;
    if !first.is_square()
        || vectors
            .iter()
            .any(|v| v.rows() != first.rows() || v.cols() != first.cols())
    {
        return None;
    }
    if let Some(v) = vectors.iter().find(|v| is_invertible(v)) {
        return Some(v.clone());
    }
    let k = vectors.len();
    if (2..=SMALL_COMBO_DIM).contains(&k) {
        let mut idx = vec![0usize; k];
        loop {
            let coeffs: Vec<Rational> = idx.iter().map(|&i| int(SMALL_COEFFS[i])).collect();
            let m = combine(vectors, &coeffs);
            if is_invertible(&m) {
                return Some(m);
            }
            // odometer increment
            let mut pos = 0;
            while pos < k {
                idx[pos] += 1;
                if idx[pos] < SMALL_COEFFS.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_draws {
        let coeffs: Vec<Rational> = (0..k)
            .map(|_| int(rng.gen_range(RANDOM_COEFF_RANGE)))
            .collect();
        let m = combine(vectors, &coeffs);
        if is_invertible(&m) {
            return Some(m);
        }
    }
    None
}

/// Constructive route alone: an invertible element of the Sylvester kernel,
/// without consulting the invariant-factor decision.
pub fn sylvester_search(
    x: &Mat,
    y: &Mat,
    budget: &SearchBudget,
) -> Result<Option<SimilarityWitness>> {
    same_square(x, y, "sylvester_search")?;
    if x == y {
        return Ok(Some(SimilarityWitness {
            t: Mat::identity(x.rows()),
        }));
    }
    let kernel = sylvester_kernel(x, y)?;
    Ok(invertible_in_span(&kernel, budget).map(|t| SimilarityWitness { t }))
}

/// Decides similarity, then builds a witness `T` with `X T = T Y`
/// (equivalently `Y = T^-1 X T`).
pub fn similarity_witness(x: &Mat, y: &Mat, budget: &SearchBudget) -> Result<WitnessOutcome> {
    if !is_similar(x, y)? {
        return Ok(WitnessOutcome::NotSimilar);
    }
    Ok(match sylvester_search(x, y, budget)? {
        Some(w) => WitnessOutcome::Found(w),
        None => WitnessOutcome::BudgetExhausted,
    })
}

/// Independent check of a witness: `det T != 0` and `X T = T Y` exactly.
pub fn verify_witness(x: &Mat, y: &Mat, w: &SimilarityWitness) -> bool {
    if same_square(x, y, "verify_witness").is_err()
        || w.t.rows() != x.rows()
        || w.t.cols() != x.cols()
    {
        return false;
    }
    is_invertible(&w.t) && x * &w.t == &w.t * y
}
