//! A map on sl_n (n >= 3) that agrees with an automorphism on every basis
//! element but is not a local automorphism.
//!
//! `D_alpha` moves four matrix units and fixes the rest of the basis:
//!
//! ```text
//! E_{1,n-1} -> E_{n1} + alpha E_{n,n-1}
//! E_{1n}    -> E_{1,n-1}
//! E_{n1}    -> E_{n,n-1}
//! E_{n,n-1} -> E_{1n}
//! ```
//!
//! Each moved unit is conjugate to its image by an explicit `T_1..T_4`, yet
//! `D_alpha^2(E_{1,n-1}) = E_{n,n-1} + alpha E_{1n}` has rank 2 while
//! automorphisms preserve rank.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::auto::LinMap;
use crate::error::{Error, Result};
use crate::local::{self, refute_search, Refutation, RefuteBudget, ScanTier, Verdict};
use crate::mat::Mat;
use crate::rational::{QStr, Rational};
use crate::simwit::{verify_witness, SearchBudget, SimilarityWitness};
use crate::sl::{self, BasisIndex, SlElement};

/// Parameters of `D_alpha`: `n >= 3`, `alpha != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaAlpha {
    n: usize,
    alpha: Rational,
}

impl DeltaAlpha {
    pub fn new(n: usize, alpha: Rational) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("D_alpha needs n >= 3, got {n}")));
        }
        if alpha.is_zero() {
            return Err(Error::Domain("D_alpha needs alpha != 0".into()));
        }
        Ok(DeltaAlpha { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    fn unit(&self, i: usize, j: usize) -> Mat {
        Mat::unit(self.n, i, j)
    }

    fn elem(&self, i: usize, j: usize) -> SlElement {
        SlElement::from_basis(self.n, BasisIndex::OffDiag(i, j))
    }

    /// The four moved basis elements with their images, as matrices.
    pub fn moved_pairs(&self) -> [(Mat, Mat); 4] {
        let n = self.n;
        [
            (
                self.unit(1, n - 1),
                &self.unit(n, 1) + &self.unit(n, n - 1).scale(&self.alpha),
            ),
            (self.unit(1, n), self.unit(1, n - 1)),
            (self.unit(n, 1), self.unit(n, n - 1)),
            (self.unit(n, n - 1), self.unit(1, n)),
        ]
    }

    pub fn build(&self) -> LinMap {
        let n = self.n;
        let mut images = local::basis_points(n);
        for (src, dst) in self.moved_pairs() {
            let k = sl::position(n, basis_index_of(&src));
            images[k] = SlElement::from_matrix(&dst).expect("off-diagonal image");
        }
        LinMap::from_images(n, &images).expect("consistent sizes")
    }

    /// `T_1..T_4`, each satisfying `src * T = T * dst` for its moved pair.
    pub fn witnesses(&self) -> [Mat; 4] {
        let n = self.n;
        let i = Mat::identity(n);
        let e = |a, b| self.unit(a, b);
        let t1 = sum(&[
            &i,
            &e(1, n),
            &e(n - 1, 1),
            &e(n - 1, n - 1).scale(&(&self.alpha - Rational::one())),
            &e(n, n - 1),
            &-&e(n, n),
        ]);
        let t2 = sum(&[
            &i,
            &-&e(n - 1, n - 1),
            &-&e(n, n),
            &e(n - 1, n),
            &e(n, n - 1),
        ]);
        let t3 = sum(&[
            &i,
            &-&e(1, 1),
            &e(1, n - 1),
            &e(n - 1, 1),
            &-&e(n - 1, n - 1),
        ]);
        let t4 = sum(&[
            &i,
            &-&e(1, 1),
            &e(1, n - 1),
            &-&e(n - 1, n - 1),
            &e(n - 1, n),
            &e(n, 1),
            &-&e(n, n),
        ]);
        [t1, t2, t3, t4]
    }

    /// Checks the four intertwining identities and that each moved basis
    /// element is sent to `T_i^-1 b T_i` by the map; every other basis element
    /// must be fixed.
    pub fn verify_identities(&self) -> bool {
        let map = self.build();
        let pairs = self.moved_pairs();
        let ts = self.witnesses();
        for ((src, dst), t) in pairs.iter().zip(&ts) {
            if src * t != t * dst {
                return false;
            }
            let Ok(t_inv) = t.inverse() else {
                return false;
            };
            let conj = &(&t_inv * src) * t;
            let Ok(x) = SlElement::from_matrix(src) else {
                return false;
            };
            match map.apply(&x) {
                Ok(img) if img.to_matrix() == conj => {}
                _ => return false,
            }
        }
        let moved: Vec<usize> = pairs
            .iter()
            .map(|(src, _)| sl::position(self.n, basis_index_of(src)))
            .collect();
        (0..sl::dim(self.n))
            .filter(|k| !moved.contains(k))
            .all(|k| map.image_of_basis(k) == SlElement::basis_element(self.n, k))
    }

    /// `E_{1,n-1}`, the element whose square-image has rank 2.
    pub fn probe(&self) -> SlElement {
        self.elem(1, self.n - 1)
    }

    /// Both refutation routes: the rank argument through `D_alpha^2`, and a
    /// direct scan for a point where `D_alpha` itself fails.
    pub fn refute(&self, budget: RefuteBudget) -> Result<RefutationBundle> {
        let map = self.build();
        let probe = self.probe();
        let squared = map.apply(&map.apply(&probe)?)?.to_matrix();
        let outcome = refute_search(&map, budget)?;
        Ok(RefutationBundle {
            probe_rank: probe.to_matrix().rank(),
            delta_squared_rank: squared.rank(),
            delta_squared_image: squared,
            direct: outcome.refutation,
            points_scanned: outcome.points_scanned,
        })
    }

    /// Full demo: identities, basis certification, and both refutations.
    pub fn demo(&self, search: &SearchBudget, refute: RefuteBudget) -> Result<DemoReport> {
        let map = self.build();
        let report = local::certify_on_points(&map, &local::basis_points(self.n), search)?;
        let basis_certified = report.verdict == Verdict::CertifiedOnSet
            && report.certificates.iter().all(|c| c.recheck(&map));
        let bundle = self.refute(refute)?;
        let rank_argument = bundle.probe_rank == 1 && bundle.delta_squared_rank == 2;
        let verdict = if bundle.direct.is_some() || rank_argument {
            Verdict::NotLocal
        } else {
            Verdict::Inconclusive
        };
        Ok(DemoReport {
            n: self.n,
            alpha: QStr(self.alpha.clone()),
            identities_verified: self.verify_identities(),
            basis_certified,
            rank_of_delta_squared_image: bundle.delta_squared_rank,
            direct_refutation_point: bundle.direct.as_ref().map(|(_, r)| r.point.clone()),
            direct_refutation_tier: bundle.direct.as_ref().map(|(t, _)| *t),
            verdict,
        })
    }

    /// Each explicit `T_i` passes [`verify_witness`] for its moved pair.
    pub fn witnesses_verify(&self) -> bool {
        self.moved_pairs()
            .iter()
            .zip(self.witnesses())
            .all(|((src, dst), t)| verify_witness(src, dst, &SimilarityWitness { t }))
    }
}

fn sum(terms: &[&Mat]) -> Mat {
    terms[1..].iter().fold(terms[0].clone(), |acc, t| &acc + t)
}

/// The basis index of a single matrix unit `E_ij`, `i != j`.
fn basis_index_of(m: &Mat) -> BasisIndex {
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            if i != j && !m[(i, j)].is_zero() {
                return BasisIndex::OffDiag(i + 1, j + 1);
            }
        }
    }
    panic!("not an off-diagonal matrix unit")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationBundle {
    pub delta_squared_image: Mat,
    pub delta_squared_rank: usize,
    pub probe_rank: usize,
    pub direct: Option<(ScanTier, Refutation)>,
    pub points_scanned: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoReport {
    pub n: usize,
    pub alpha: QStr,
    pub identities_verified: bool,
    pub basis_certified: bool,
    pub rank_of_delta_squared_image: usize,
    pub direct_refutation_point: Option<SlElement>,
    pub direct_refutation_tier: Option<ScanTier>,
    pub verdict: Verdict,
}

/// `E_{1,n-1} + E_{n,n-1}`.
pub fn reference_refutation_point(n: usize) -> SlElement {
    let a = SlElement::from_basis(n, BasisIndex::OffDiag(1, n - 1));
    let b = SlElement::from_basis(n, BasisIndex::OffDiag(n, n - 1));
    &a + &b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn delta(n: usize, a: Rational) -> DeltaAlpha {
        DeltaAlpha::new(n, a).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DeltaAlpha::new(2, int(1)).is_err());
        assert!(DeltaAlpha::new(3, int(0)).is_err());
    }

    #[test]
    fn images_n3() {
        let d = delta(3, int(1));
        let map = d.build();
        let e12 = SlElement::from_basis(3, BasisIndex::OffDiag(1, 2));
        let e31 = SlElement::from_basis(3, BasisIndex::OffDiag(3, 1));
        let e32 = SlElement::from_basis(3, BasisIndex::OffDiag(3, 2));
        let e21 = SlElement::from_basis(3, BasisIndex::OffDiag(2, 1));
        assert_eq!(map.apply(&e12).unwrap(), &e31 + &e32);
        assert_eq!(map.apply(&e21).unwrap(), e21);
    }

    #[test]
    fn witness_matrices_n3() {
        let [t1, t2, _, _] = delta(3, int(2)).witnesses();
        assert_eq!(t1, Mat::from_ints(&[&[1, 0, 1], &[1, 2, 0], &[0, 1, 0]]));
        assert_eq!(t1.det().unwrap(), int(1));
        assert_eq!(t2, Mat::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
    }

    #[test]
    fn witnesses_invertible_on_grid() {
        for n in 3..=5 {
            for a in [int(1), int(2), int(-3)] {
                for t in delta(n, a).witnesses() {
                    assert!(!t.det().unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn identities_hold() {
        assert!(delta(3, int(2)).verify_identities());
        assert!(delta(4, int(1)).verify_identities());
        assert!(delta(5, int(-3)).verify_identities());
        assert!(delta(4, frac(1, 2)).witnesses_verify());
    }

    #[test]
    fn squared_image_has_rank_two() {
        let d = delta(3, int(1));
        let b = d
            .refute(RefuteBudget {
                random_points: 0,
                seed: 0,
            })
            .unwrap();
        let expected = &Mat::unit(3, 3, 2) + &Mat::unit(3, 1, 3);
        assert_eq!(b.delta_squared_image, expected);
        assert_eq!(b.delta_squared_rank, 2);
        assert_eq!(b.probe_rank, 1);
        let (tier, _) = b.direct.unwrap();
        assert_eq!(tier, ScanTier::Pairs);

        let b = delta(4, int(2))
            .refute(RefuteBudget {
                random_points: 0,
                seed: 0,
            })
            .unwrap();
        assert_eq!(b.delta_squared_rank, 2);
    }
}
