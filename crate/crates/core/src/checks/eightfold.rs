use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{random_classes, render_pfister, require_lambda_prime_at_most, Check, CheckParams, CheckReport};
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;
use crate::witt_ideal::{two_power_pfister_divisibility_check, PfisterWitness};

/// With `λ'(F) ≤ n`, every `2n`-fold Pfister form `ψ` has `4 × ψ ≅ 8 × ϑ` for a
/// `(2n-1)`-fold Pfister form `ϑ`, and `⟨⟨-1,-1,-1⟩⟩ ⊗ ϑ` is the `(2n+2)`-fold form `8 × ϑ`.
pub struct EightfoldMultipleCheck;

pub(crate) enum EightfoldOutcome {
    Found { theta: PfisterWitness, eightfold: bool },
    NotFound(String),
}

/// Searches `ϑ` for the `2n`-fold Pfister form `⟨⟨slots⟩⟩`.
pub(crate) fn eightfold_witness(field: &FieldTower, slots: &[SquareClass], budget: u128) -> Result<EightfoldOutcome> {
    let psi = QuadForm::pfister(field, slots)?;
    match two_power_pfister_divisibility_check(&psi, 3, slots.len() - 1, budget) {
        Ok(theta) => {
            let m1 = field.minus_one();
            let mut big = vec![m1, m1, m1];
            big.extend_from_slice(&theta.slots);
            let eightfold = theta.validates(&psi.multiple(4)?)
                && QuadForm::pfister(field, &big)?.is_isometric(&theta.pfister().multiple(8)?)?;
            Ok(EightfoldOutcome::Found { theta, eightfold })
        }
        Err(Error::WitnessNotFound(reason)) => Ok(EightfoldOutcome::NotFound(reason)),
        Err(e) => Err(e),
    }
}

impl Check for EightfoldMultipleCheck {
    fn id(&self) -> &'static str {
        "thm2"
    }

    fn summary(&self) -> &'static str {
        "index at most 2^n gives 4 x psi = 8 x theta for 2n-fold psi and (2n-1)-fold theta"
    }

    fn default_n(&self) -> u32 {
        2
    }

    fn default_field(&self, n: u32) -> FieldTower {
        FieldTower::standard(BaseField::RealClosed, (2 * n as usize).saturating_sub(1).max(1))
    }

    fn execute(&self, field: &FieldTower, n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()> {
        if n == 0 {
            return Err(Error::HypothesisViolated("n must be at least 1".into()));
        }
        require_lambda_prime_at_most(field, n, params.budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.samples {
            let slots = random_classes(&mut rng, field, 2 * n as usize);
            match eightfold_witness(field, &slots, params.budget)? {
                EightfoldOutcome::Found { theta, eightfold } => {
                    report
                        .record(eightfold, || json!({ "psi": render_pfister(field, &slots), "theta": theta.render() }));
                    if eightfold {
                        let mut w = theta.to_json();
                        w["psi"] = json!(render_pfister(field, &slots));
                        report.witness(w);
                    }
                }
                EightfoldOutcome::NotFound(reason) => {
                    report.record(false, || json!({ "psi": render_pfister(field, &slots), "reason": reason }))
                }
            }
        }
        Ok(())
    }
}
