//! Shared JSON reports for the CLI and the C interface. Schemas carry a
//! version field; rationals print as "p/q" (bare "p" for integers) and
//! field elements of degree above one as coefficient-string arrays.

use crate::abelian::MaxAbelianResult;
use crate::completeness::{
    check_essential_conditions, essential_set, is_inversion_complete,
    is_minimal_inversion_complete, is_weak_antichain, ConditionsReport, Family, Verdict,
    DEFAULT_PATH_BUDGET,
};
use crate::coxeter::canonical_word;
use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::search::{SearchResult, SearchStatus};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn scalar_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(q) => json!(q.to_string()),
        None => Value::Array(s.coeffs().iter().map(|c| json!(c.to_string())).collect()),
    }
}

pub fn coords_json(rs: &RootSystem, i: u32) -> Value {
    Value::Array(rs.root(i).coords.iter().map(scalar_json).collect())
}

pub fn roots_json(rs: &RootSystem) -> Value {
    let roots: Vec<Value> = (0..rs.n_positive() as u32)
        .map(|i| {
            json!({
                "index": i,
                "coords": coords_json(rs, i),
                "eps": rs.root(i).eps.as_ref().map(|e| {
                    Value::Array(e.iter().map(|q| json!(q.to_string())).collect())
                }),
                "height": scalar_json(rs.height(i)),
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "type": rs.type_id().to_string(),
        "rank": rs.rank(),
        "positive_count": rs.n_positive(),
        "field_degree": rs.field().degree(),
        "roots": roots,
    })
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Undecided => "undecided",
    }
}

/// Everything `verify` decides about a family.
pub struct VerifyOutcome {
    pub size: usize,
    pub complete: bool,
    pub minimal: bool,
    pub antichain: bool,
    pub conditions: Option<ConditionsReport>,
    pub essential_set_size: Option<usize>,
    pub non_reduced: Vec<usize>,
}

impl VerifyOutcome {
    pub fn failed(&self) -> bool {
        !self.complete
            || !self.minimal
            || !self.antichain
            || self.conditions.as_ref().is_some_and(|r| r.any_fail())
    }

    pub fn undecided(&self) -> bool {
        !self.failed()
            && self
                .conditions
                .as_ref()
                .is_some_and(|r| r.cond1 == Verdict::Undecided)
    }
}

pub fn verify_family(rs: &RootSystem, family: &Family, non_reduced: Vec<usize>) -> VerifyOutcome {
    let complete = is_inversion_complete(rs, family);
    let minimal = is_minimal_inversion_complete(rs, family);
    let antichain = is_weak_antichain(family);
    let (conditions, essential_set_size) = if minimal {
        let ess = essential_set(rs, family).expect("minimal family has an essential set");
        (
            Some(check_essential_conditions(rs, &ess, DEFAULT_PATH_BUDGET)),
            Some(ess.count()),
        )
    } else {
        (None, None)
    };
    VerifyOutcome {
        size: family.len(),
        complete,
        minimal,
        antichain,
        conditions,
        essential_set_size,
        non_reduced,
    }
}

pub fn verify_json(rs: &RootSystem, label: &str, outcome: &VerifyOutcome) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "type": rs.type_id().to_string(),
        "family": label,
        "size": outcome.size,
        "complete": outcome.complete,
        "minimal": outcome.minimal,
        "antichain": outcome.antichain,
        "non_reduced_words": outcome.non_reduced,
        "essential_set_size": outcome.essential_set_size,
        "conditions": outcome.conditions.as_ref().map(|rep| json!({
            "cond1": verdict_str(rep.cond1),
            "cond2": verdict_str(rep.cond2),
            "cond3": verdict_str(rep.cond3),
        })),
        "ok": !outcome.failed(),
    })
}

pub fn search_json(rs: &RootSystem, res: &SearchResult) -> Value {
    let words: Vec<Value> = res
        .witness
        .members()
        .iter()
        .map(|g| {
            Value::Array(
                canonical_word(rs, g)
                    .letters()
                    .iter()
                    .map(|&l| json!(l))
                    .collect(),
            )
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "type": res.type_id.to_string(),
        "rank": rs.rank(),
        "value": res.value,
        "status": res.status.as_str(),
        "witness_words": words,
        "essential_set_indices": res.essential_set.indices(),
        "essential_set_coords": res
            .essential_set
            .iter()
            .map(|i| coords_json(rs, i))
            .collect::<Vec<_>>(),
        "nodes": res.nodes,
        "elapsed_ms": res.elapsed.as_millis() as u64,
    })
}

pub fn max_abelian_json(rs: &RootSystem, res: &MaxAbelianResult) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "type": rs.type_id().to_string(),
        "mode": "max-strong",
        "value": res.value,
        "status": res.status.as_str(),
        "witness_indices": res.witness.indices(),
        "witness_coords": res
            .witness
            .iter()
            .map(|i| coords_json(rs, i))
            .collect::<Vec<_>>(),
        "elapsed_ms": res.elapsed.as_millis() as u64,
    })
}

pub fn status_exit_code(status: SearchStatus) -> u8 {
    match status {
        SearchStatus::Exact | SearchStatus::LowerBound => 0,
        SearchStatus::BudgetExhausted => 2,
    }
}
