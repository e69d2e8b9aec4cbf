//! Instance-level verification checks, each behind the [`Check`] trait and looked up by
//! id in a [`CheckRegistry`].
//!
//! Every check is deterministic given its [`CheckParams`]: sampling uses a seeded ChaCha
//! stream, enumeration is lexicographic, and timing is only recorded on request.

mod divisibility;
mod eightfold;
mod optimality;
mod report;
mod slot_trace;
mod stability;
mod torsion_free;
mod trace;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::brauer::{documented_lambda_prime, lambda_prime_by_symbol_enumeration, lambda_prime_exhaustive};
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::witt_ideal::DEFAULT_BUDGET;

pub use divisibility::DoubleToQuadrupleCheck;
pub use eightfold::EightfoldMultipleCheck;
pub use optimality::OptimalityCheck;
pub use report::{CheckReport, Verdict};
pub use slot_trace::SlotTraceHyperbolicityCheck;
pub use stability::StabilityIndexCheck;
pub use torsion_free::TorsionFreeCheck;
pub use trace::TraceIdentityCheck;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckParams {
    /// Field to run over; each check has its own default.
    pub field: Option<FieldTower>,
    /// Size parameter `n`; each check has its own default.
    pub n: Option<u32>,
    pub samples: usize,
    pub seed: u64,
    /// Maximum number of candidates in any single exhaustive enumeration.
    pub budget: u128,
    pub timing: bool,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { field: None, n: None, samples: 100, seed: 0, budget: DEFAULT_BUDGET, timing: false }
    }
}

pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn default_n(&self) -> u32;
    fn default_field(&self, n: u32) -> FieldTower;
    /// Runs the instances into `report`. Precondition failures are errors; failing
    /// instances are recorded in the report.
    fn execute(&self, field: &FieldTower, n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()>;
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut registry = CheckRegistry::empty();
        registry.register(Box::new(TraceIdentityCheck));
        registry.register(Box::new(SlotTraceHyperbolicityCheck));
        registry.register(Box::new(TorsionFreeCheck));
        registry.register(Box::new(DoubleToQuadrupleCheck));
        registry.register(Box::new(EightfoldMultipleCheck));
        registry.register(Box::new(OptimalityCheck));
        registry.register(Box::new(StabilityIndexCheck));
        registry
    }
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { checks: Vec::new() }
    }

    /// Adds a check, replacing any previous check with the same id.
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.retain(|c| c.id() != check.id());
        self.checks.push(check);
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.id()).collect()
    }

    pub fn get(&self, id: &str) -> Result<&dyn Check> {
        self.checks.iter().find(|c| c.id() == id).map(|c| c.as_ref()).ok_or_else(|| Error::UnknownName(id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.iter().map(|c| c.as_ref())
    }

    pub fn run(&self, id: &str, params: &CheckParams) -> Result<CheckReport> {
        run_check(self.get(id)?, params)
    }
}

pub fn run_check(check: &dyn Check, params: &CheckParams) -> Result<CheckReport> {
    let n = params.n.unwrap_or_else(|| check.default_n());
    let field = params.field.clone().unwrap_or_else(|| check.default_field(n));
    let mut param_map = BTreeMap::new();
    param_map.insert("n".to_string(), json!(n));
    param_map.insert("samples".to_string(), json!(params.samples));
    param_map.insert("seed".to_string(), json!(params.seed));
    param_map.insert("budget".to_string(), json!(params.budget.to_string()));
    let mut report = CheckReport::new(check.id(), field.to_string(), param_map);
    let start = Instant::now();
    check.execute(&field, n, params, &mut report)?;
    if params.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    if report.run == 0 {
        return Err(Error::EmptySample(check.id().to_string()));
    }
    report.finish();
    Ok(report)
}

pub(crate) fn random_class(rng: &mut ChaCha8Rng, field: &FieldTower) -> SquareClass {
    SquareClass::from_bits(rng.gen_range(0..field.square_class_count()))
}

pub(crate) fn random_classes(rng: &mut ChaCha8Rng, field: &FieldTower, count: usize) -> Vec<SquareClass> {
    (0..count).map(|_| random_class(rng, field)).collect()
}

/// Attempts allowed per requested sample when rejection sampling a hypothesis.
pub(crate) const ATTEMPTS_PER_SAMPLE: usize = 1000;

pub(crate) fn render_slots(field: &FieldTower, slots: &[SquareClass]) -> Vec<String> {
    slots.iter().map(|&s| field.render_class(s)).collect()
}

pub(crate) fn render_pfister(field: &FieldTower, slots: &[SquareClass]) -> String {
    format!("<<{}>>", render_slots(field, slots).join(","))
}

/// `λ'(F)` when it can be obtained: exhaustively for a quadratically closed base, from
/// the known value for real towers of odd depth, otherwise by enumerating symbol sums.
pub fn lambda_prime(field: &FieldTower, budget: u128) -> Result<u32> {
    if field.base() == BaseField::QuadClosed {
        return lambda_prime_exhaustive(field);
    }
    if let Some(known) = documented_lambda_prime(field) {
        return Ok(known);
    }
    lambda_prime_by_symbol_enumeration(field, budget)
}

pub(crate) fn require_lambda_prime_at_most(field: &FieldTower, n: u32, budget: u128) -> Result<u32> {
    let lp = lambda_prime(field, budget)?;
    if lp > n {
        return Err(Error::HypothesisViolated(format!("λ'({field}) = {lp} exceeds n = {n}")));
    }
    Ok(lp)
}

pub(crate) fn skipped_note(part: &str, reason: String) -> Value {
    json!({ "kind": "skipped", "part": part, "reason": reason })
}

#[cfg(test)]
mod tests;
