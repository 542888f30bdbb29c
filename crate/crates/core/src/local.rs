//! Pointwise local-automorphism certificates and refutations.
//!
//! A linear map `D` on sl_n is a local automorphism when every `x` has some
//! automorphism `phi_x` with `D(x) = phi_x(x)`. At a single point this is a
//! similarity question: `D(x) ~ x` (inner form) or, for `n >= 3`,
//! `D(x) ~ -x^T` (outer form). A certificate carries an explicit `phi_x`; a
//! refutation carries the invariant factors showing neither form can match.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::auto::{LinMap, MorphismKind, SignedAuto};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly::Poly;
use crate::rational::int;
use crate::simwit::{is_similar, similarity_witness, SearchBudget, WitnessOutcome};
use crate::sl::{self, SlElement};

/// `apply(witness, point) = D(point)`, witness in automorphism form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCertificate {
    pub point: SlElement,
    pub witness: SignedAuto,
}

impl PointCertificate {
    /// Recomputes `witness(point)` and compares with `map(point)`.
    pub fn recheck(&self, map: &LinMap) -> bool {
        self.witness.is_automorphism()
            && match (self.witness.apply(&self.point), map.apply(&self.point)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoForm {
    /// `X -> A^-1 X A`
    Inner,
    /// `X -> -A^-1 X^T A`
    Outer,
}

/// Invariant factors of the candidate source (`x` or `-x^T`) against those of `D(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormMismatch {
    pub form: AutoForm,
    pub source_factors: Vec<Poly>,
    pub image_factors: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub point: SlElement,
    pub image: SlElement,
    pub evidence: Vec<FormMismatch>,
}

impl Refutation {
    /// Re-derives the mismatch from scratch with [`is_similar`].
    pub fn recheck(&self, map: &LinMap) -> bool {
        let Ok(image) = map.apply(&self.point) else {
            return false;
        };
        if image != self.image {
            return false;
        }
        let y = image.to_matrix();
        candidate_sources(&self.point)
            .iter()
            .all(|(_, src)| is_similar(src, &y).is_ok_and(|s| !s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointOutcome {
    Certified(PointCertificate),
    Refuted(Refutation),
    /// Similar to a candidate form, but no invertible witness within budget.
    BudgetExhausted(SlElement),
}

/// Source matrices whose similarity class `D(x)` must hit: `x`, and `-x^T` for `n >= 3`.
fn candidate_sources(x: &SlElement) -> Vec<(AutoForm, Mat)> {
    let xm = x.to_matrix();
    let mut out = vec![(AutoForm::Inner, xm.clone())];
    if x.n() >= 3 {
        out.push((AutoForm::Outer, -&xm.transpose()));
    }
    out
}

fn check_sizes(map: &LinMap, x: &SlElement) -> Result<()> {
    if map.n() != x.n() {
        return Err(Error::DimensionMismatch {
            op: "point_witness",
            expected: map.n(),
            found: x.n(),
        });
    }
    Ok(())
}

/// Refutation at `x` if `D(x)` matches no automorphism form, decided by invariant factors only.
pub fn point_refutation(map: &LinMap, x: &SlElement) -> Result<Option<Refutation>> {
    check_sizes(map, x)?;
    let image = map.apply(x)?;
    let y = image.to_matrix();
    let y_factors = y.invariant_factors()?;
    let mut evidence = Vec::new();
    for (form, src) in candidate_sources(x) {
        let src_factors = src.invariant_factors()?;
        if src_factors == y_factors {
            return Ok(None);
        }
        evidence.push(FormMismatch {
            form,
            source_factors: src_factors,
            image_factors: y_factors.clone(),
        });
    }
    Ok(Some(Refutation {
        point: x.clone(),
        image,
        evidence,
    }))
}

/// Certifies or refutes `D` at one point. The inner form is tried first;
/// for `n = 2` it is the only form.
pub fn point_witness(map: &LinMap, x: &SlElement, budget: &SearchBudget) -> Result<PointOutcome> {
    check_sizes(map, x)?;
    let image = map.apply(x)?;
    let y = image.to_matrix();
    let mut exhausted = false;
    for (form, src) in candidate_sources(x) {
        // src T = T Y  gives  Y = T^-1 src T; for the outer form src = -x^T,
        // so Y = -T^-1 x^T T.
        match similarity_witness(&src, &y, budget)? {
            WitnessOutcome::Found(w) => {
                let witness = match form {
                    AutoForm::Inner => SignedAuto::inner(w.t)?,
                    AutoForm::Outer => SignedAuto::outer(w.t)?,
                };
                return Ok(PointOutcome::Certified(PointCertificate {
                    point: x.clone(),
                    witness,
                }));
            }
            WitnessOutcome::BudgetExhausted => exhausted = true,
            WitnessOutcome::NotSimilar => {}
        }
    }
    if exhausted {
        return Ok(PointOutcome::BudgetExhausted(x.clone()));
    }
    Ok(PointOutcome::Refuted(
        point_refutation(map, x)?.expect("no form is similar"),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "certified-on-set")]
    CertifiedOnSet,
    #[serde(rename = "not a local automorphism")]
    NotLocal,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Verdict {
    pub fn is_definitive(self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedOnSet => "certified-on-set",
            Verdict::NotLocal => "not a local automorphism",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Result of [`certify_on_points`]; entries keep the input point order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub verdict: Verdict,
    pub certificates: Vec<PointCertificate>,
    pub refutations: Vec<Refutation>,
    pub budget_exhausted: Vec<SlElement>,
    pub seed: u64,
}

pub fn certify_on_points(
    map: &LinMap,
    points: &[SlElement],
    budget: &SearchBudget,
) -> Result<CertificationReport> {
    let mut report = CertificationReport {
        verdict: Verdict::CertifiedOnSet,
        certificates: Vec::new(),
        refutations: Vec::new(),
        budget_exhausted: Vec::new(),
        seed: budget.seed,
    };
    for x in points {
        match point_witness(map, x, budget)? {
            PointOutcome::Certified(c) => report.certificates.push(c),
            PointOutcome::Refuted(r) => report.refutations.push(r),
            PointOutcome::BudgetExhausted(p) => report.budget_exhausted.push(p),
        }
    }
    report.verdict = if !report.refutations.is_empty() {
        Verdict::NotLocal
    } else if !report.budget_exhausted.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::CertifiedOnSet
    };
    Ok(report)
}

/// Canonical basis of sl_n as elements.
pub fn basis_points(n: usize) -> Vec<SlElement> {
    (0..sl::dim(n))
        .map(|k| SlElement::basis_element(n, k))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanTier {
    Basis,
    Pairs,
    Triples,
    Random,
}

/// Limits for [`refute_search`]: the deterministic tiers always run in full,
/// followed by `random_points` seeded draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefuteBudget {
    pub random_points: usize,
    pub seed: u64,
}

impl Default for RefuteBudget {
    fn default() -> Self {
        RefuteBudget {
            random_points: 200,
            seed: 0,
        }
    }
}

const RANDOM_POINT_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

/// Points in scan order: basis elements; `b_i + b_j` then `b_i - b_j` for
/// `i < j`; `b_i ± b_j ± b_k` for `i < j < k`; then seeded random points.
///
/// Triples keep the first coefficient at +1, since `D(-x) = -D(x)` makes
/// `x` and `-x` refute together.
pub fn scan_points(n: usize, budget: RefuteBudget) -> impl Iterator<Item = (ScanTier, SlElement)> {
    let d = sl::dim(n);
    let b = move |k: usize| SlElement::basis_element(n, k);
    let basis = (0..d).map(move |k| (ScanTier::Basis, b(k)));
    let pairs = (0..d).flat_map(move |i| {
        (i + 1..d).flat_map(move |j| {
            [
                (ScanTier::Pairs, &b(i) + &b(j)),
                (ScanTier::Pairs, &b(i) - &b(j)),
            ]
        })
    });
    let triples = (0..d).flat_map(move |i| {
        (i + 1..d).flat_map(move |j| {
            (j + 1..d).flat_map(move |k| {
                [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                    .into_iter()
                    .map(move |(sj, sk)| {
                        let mut c = vec![0i64; d];
                        c[i] = 1;
                        c[j] = sj;
                        c[k] = sk;
                        (
                            ScanTier::Triples,
                            SlElement::from_int_coords(n, &c).expect("dimension"),
                        )
                    })
            })
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let random = (0..budget.random_points).map(move |_| {
        let coords = (0..d)
            .map(|_| int(rng.gen_range(RANDOM_POINT_RANGE)))
            .collect();
        (
            ScanTier::Random,
            SlElement::new(n, coords).expect("dimension"),
        )
    });
    basis.chain(pairs).chain(triples).chain(random)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefuteOutcome {
    pub refutation: Option<(ScanTier, Refutation)>,
    pub points_scanned: usize,
}

/// First point in scan order at which `D` provably is not a local
/// automorphism. `None` is inconclusive, never a certification.
pub fn refute_search(map: &LinMap, budget: RefuteBudget) -> Result<RefuteOutcome> {
    let mut scanned = 0;
    for (tier, x) in scan_points(map.n(), budget) {
        scanned += 1;
        if let Some(r) = point_refutation(map, &x)? {
            return Ok(RefuteOutcome {
                refutation: Some((tier, r)),
                points_scanned: scanned,
            });
        }
    }
    Ok(RefuteOutcome {
        refutation: None,
        points_scanned: scanned,
    })
}

/// Local-automorphism verdict for a map on sl_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sl2Verdict {
    #[serde(rename = "automorphism")]
    Automorphism,
    #[serde(rename = "anti-automorphism")]
    AntiAutomorphism,
    #[serde(rename = "not a local automorphism")]
    NotLocal,
}

impl Sl2Verdict {
    pub fn is_local(self) -> bool {
        self != Sl2Verdict::NotLocal
    }
}

impl fmt::Display for Sl2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Verdict::Automorphism => "automorphism",
            Sl2Verdict::AntiAutomorphism => "anti-automorphism",
            Sl2Verdict::NotLocal => "not a local automorphism",
        })
    }
}

fn require_sl2(map: &LinMap, op: &str) -> Result<()> {
    if map.n() == 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{op} needs a map on sl_2, got n = {}",
            map.n()
        )))
    }
}

/// On sl_2 the local automorphisms are exactly the automorphisms and
/// anti-automorphisms, so the bracket check decides membership.
pub fn sl2_classify(map: &LinMap) -> Result<Sl2Verdict> {
    require_sl2(map, "sl2_classify")?;
    Ok(match map.check_bracket_morphism() {
        MorphismKind::Automorphism => Sl2Verdict::Automorphism,
        MorphismKind::AntiAutomorphism => Sl2Verdict::AntiAutomorphism,
        MorphismKind::Neither => Sl2Verdict::NotLocal,
    })
}

/// Whether `D` preserves the trace form on all basis pairs. For trace-zero
/// 2x2 matrices `p_X(t) = t^2 - Tr(X^2)/2`, so this is exactly pointwise
/// preservation of the characteristic polynomial.
pub fn det_preserving_sl2(map: &LinMap) -> Result<bool> {
    require_sl2(map, "det_preserving_sl2")?;
    let basis = basis_points(2);
    let images: Vec<SlElement> = (0..3).map(|k| map.image_of_basis(k)).collect();
    for i in 0..3 {
        for j in i..3 {
            if images[i].trace_form(&images[j])? != basis[i].trace_form(&basis[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::{scalar_map, transpose_map};
    use crate::rational::frac;

    fn sl2(k: usize) -> SlElement {
        SlElement::basis_element(2, k)
    }

    fn delta1(l: i64) -> LinMap {
        let l = int(l);
        LinMap::from_images(2, &[sl2(0).scale(&l), sl2(1).scale(&l.recip()), sl2(2)]).unwrap()
    }

    fn delta2(m: i64) -> LinMap {
        let m = int(m);
        LinMap::from_images(2, &[sl2(1).scale(&m), sl2(0).scale(&m.recip()), sl2(2)]).unwrap()
    }

    #[test]
    fn refutes_scaled_identity_at_h() {
        let map = scalar_map(2, &int(2));
        let out = point_witness(&map, &sl2(2), &SearchBudget::default()).unwrap();
        let PointOutcome::Refuted(r) = out else {
            panic!("expected refutation, got {out:?}");
        };
        assert_eq!(r.evidence.len(), 1);
        assert_eq!(
            r.evidence[0].source_factors,
            vec![Poly::from_ints(&[-1, 0, 1])]
        );
        assert_eq!(
            r.evidence[0].image_factors,
            vec![Poly::from_ints(&[-4, 0, 1])]
        );
        assert!(r.recheck(&map));
    }

    #[test]
    fn transpose_is_pointwise_inner() {
        let map = transpose_map(3);
        let x = SlElement::from_int_coords(3, &[1, 2, -1, 0, 3, 1, 2, -2]).unwrap();
        let PointOutcome::Certified(c) = point_witness(&map, &x, &SearchBudget::default()).unwrap()
        else {
            panic!("transpose must certify");
        };
        assert!(c.recheck(&map));
    }

    #[test]
    fn sl2_verdicts() {
        assert_eq!(sl2_classify(&delta1(5)).unwrap(), Sl2Verdict::Automorphism);
        assert_eq!(
            sl2_classify(&delta2(3)).unwrap(),
            Sl2Verdict::AntiAutomorphism
        );
        assert_eq!(
            sl2_classify(&scalar_map(2, &int(2))).unwrap(),
            Sl2Verdict::NotLocal
        );
        assert!(sl2_classify(&LinMap::identity(3)).is_err());
    }

    #[test]
    fn determinant_preservation() {
        assert!(det_preserving_sl2(&delta2(3)).unwrap());
        assert!(det_preserving_sl2(&scalar_map(2, &int(-1))).unwrap());
        assert!(!det_preserving_sl2(&scalar_map(2, &int(2))).unwrap());
        assert!(!det_preserving_sl2(&scalar_map(2, &frac(1, 2))).unwrap());
        assert!(det_preserving_sl2(&LinMap::identity(3)).is_err());
    }

    #[test]
    fn scan_order_and_counts() {
        let pts: Vec<_> = scan_points(
            2,
            RefuteBudget {
                random_points: 5,
                seed: 1,
            },
        )
        .collect();
        // 3 basis + 3 pairs * 2 + 1 triple * 4 + 5 random
        assert_eq!(pts.len(), 3 + 6 + 4 + 5);
        assert_eq!(pts[3].1, &sl2(0) + &sl2(1));
        assert_eq!(pts[4].1, &sl2(0) - &sl2(1));
        assert_eq!(pts[9].0, ScanTier::Triples);
        let again: Vec<_> = scan_points(
            2,
            RefuteBudget {
                random_points: 5,
                seed: 1,
            },
        )
        .collect();
        assert_eq!(pts, again);
    }

    #[test]
    fn members_are_never_refuted() {
        let phi = SignedAuto::inner(Mat::from_ints(&[&[2, 1], &[1, 1]])).unwrap();
        let out = refute_search(
            &phi.induced_matrix(),
            RefuteBudget {
                random_points: 10,
                seed: 0,
            },
        )
        .unwrap();
        assert!(out.refutation.is_none());
        assert_eq!(out.points_scanned, 3 + 6 + 4 + 10);
    }

    #[test]
    fn report_verdicts() {
        let b = SearchBudget::default();
        let phi = SignedAuto::inner(Mat::from_ints(&[&[1, 1], &[0, 1]]))
            .unwrap()
            .induced_matrix();
        let rep = certify_on_points(&phi, &basis_points(2), &b).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedOnSet);
        assert_eq!(rep.certificates.len(), 3);
        let rep = certify_on_points(&scalar_map(2, &int(3)), &basis_points(2), &b).unwrap();
        assert_eq!(rep.verdict, Verdict::NotLocal);
    }
}
