//! Browser bindings for the static demo page in `www/`.
//!
//! Each export takes and returns JSON strings so the page stays plain
//! JavaScript. Failures come back as `{"error": "..."}` rather than thrown
//! exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sl_local::counterexample::DeltaAlpha;
use sl_local::local::{det_preserving_sl2, refute_search, sl2_classify, RefuteBudget};
use sl_local::rational::parse_rational;
use sl_local::simwit::{similarity_witness, SearchBudget, WitnessOutcome};
use sl_local::{LinMap, Mat};

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn parse_mat(text: &str) -> Result<Mat, String> {
    serde_json::from_str(text).map_err(|e| format!("matrix: {e}"))
}

/// Classifies a map on sl_2 given as its 3x3 matrix in the basis (e, f, h).
/// Non-members also get a concrete refutation point.
#[wasm_bindgen]
pub fn classify_sl2(matrix_json: &str) -> String {
    respond((|| {
        let m = parse_mat(matrix_json)?;
        let map = LinMap::new(2, m).map_err(|e| e.to_string())?;
        let verdict = sl2_classify(&map).map_err(|e| e.to_string())?;
        let refutation = if verdict.is_local() {
            None
        } else {
            refute_search(
                &map,
                RefuteBudget {
                    random_points: 50,
                    seed: 0,
                },
            )
            .map_err(|e| e.to_string())?
            .refutation
            .map(|(_, r)| r)
        };
        Ok(json!({
            "verdict": verdict,
            "det_preserving": det_preserving_sl2(&map).map_err(|e| e.to_string())?,
            "witness": if verdict.is_local() { map.recognize() } else { None },
            "refutation": refutation,
        }))
    })())
}

/// Builds `D_alpha` on sl_n and reports identities, basis certification and
/// refutation, together with the witness matrices and the map itself.
#[wasm_bindgen]
pub fn delta_alpha(n: u32, alpha: &str) -> String {
    respond((|| {
        let alpha = parse_rational(alpha).map_err(|e| e.to_string())?;
        let d = DeltaAlpha::new(n as usize, alpha).map_err(|e| e.to_string())?;
        let report = d
            .demo(
                &SearchBudget::default(),
                RefuteBudget {
                    random_points: 0,
                    seed: 0,
                },
            )
            .map_err(|e| e.to_string())?;
        let bundle = d
            .refute(RefuteBudget {
                random_points: 0,
                seed: 0,
            })
            .map_err(|e| e.to_string())?;
        Ok(json!({
            "report": report,
            "witnesses": d.witnesses(),
            "map": d.build(),
            "delta_squared_image": bundle.delta_squared_image,
            "refutation": bundle.direct.map(|(_, r)| r),
        }))
    })())
}

/// Decides whether `X` and `Y` are similar and returns `T` with `X T = T Y`.
#[wasm_bindgen]
pub fn similarity(x_json: &str, y_json: &str, seed: u32) -> String {
    respond((|| {
        let x = parse_mat(x_json)?;
        let y = parse_mat(y_json)?;
        let budget = SearchBudget {
            random_draws: 1000,
            seed: u64::from(seed),
        };
        let out = similarity_witness(&x, &y, &budget).map_err(|e| e.to_string())?;
        let label = match &out {
            WitnessOutcome::Found(_) => "found",
            WitnessOutcome::NotSimilar => "not-similar",
            WitnessOutcome::BudgetExhausted => "budget-exhausted",
        };
        Ok(json!({
            "outcome": label,
            "witness": out.witness(),
            "x_invariant_factors": x.invariant_factors().map_err(|e| e.to_string())?
                .iter().map(ToString::to_string).collect::<Vec<_>>(),
            "y_invariant_factors": y.invariant_factors().map_err(|e| e.to_string())?
                .iter().map(ToString::to_string).collect::<Vec<_>>(),
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn classify_delta2() {
        let v = parse(&classify_sl2(
            r#"[["0","1/2","0"],["2","0","0"],["0","0","1"]]"#,
        ));
        assert_eq!(v["verdict"], "anti-automorphism");
        assert_eq!(v["det_preserving"], true);
        assert!(v["refutation"].is_null());
    }

    #[test]
    fn classify_non_member_gets_refutation() {
        let v = parse(&classify_sl2(
            r#"[["2","0","0"],["0","2","0"],["0","0","2"]]"#,
        ));
        assert_eq!(v["verdict"], "not a local automorphism");
        assert!(v["refutation"]["point"].is_object());
    }

    #[test]
    fn delta_alpha_demo() {
        let v = parse(&delta_alpha(3, "1"));
        assert_eq!(v["report"]["identities_verified"], true);
        assert_eq!(v["report"]["basis_certified"], true);
        assert_eq!(v["report"]["rank_of_delta_squared_image"], 2);
        assert_eq!(v["witnesses"].as_array().unwrap().len(), 4);
        assert!(parse(&delta_alpha(2, "1"))["error"].is_string());
        assert!(parse(&delta_alpha(3, "0"))["error"].is_string());
    }

    #[test]
    fn similarity_witness_and_errors() {
        let v = parse(&similarity(
            r#"[["0","1"],["0","0"]]"#,
            r#"[["0","0"],["1","0"]]"#,
            0,
        ));
        assert_eq!(v["outcome"], "found");
        assert_eq!(v["x_invariant_factors"][0], "x^2");
        let v = parse(&similarity(
            r#"[["1","0"],["0","-1"]]"#,
            r#"[["0","1"],["0","0"]]"#,
            0,
        ));
        assert_eq!(v["outcome"], "not-similar");
        assert!(parse(&similarity("[[", "[]", 0))["error"].is_string());
    }
}
