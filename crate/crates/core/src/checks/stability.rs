use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::eightfold::{eightfold_witness, EightfoldOutcome};
use super::{random_classes, render_pfister, require_lambda_prime_at_most, Check, CheckParams, CheckReport};
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;

/// For `α` in `I^{2n}F` with `λ'(F) ≤ n`: writing `4α = 8α'` termwise, `α ≡ 2α'`
/// modulo torsion, so `st(F) ≤ 2n-1`.
pub struct StabilityIndexCheck;

impl Check for StabilityIndexCheck {
    fn id(&self) -> &'static str {
        "st"
    }

    fn summary(&self) -> &'static str {
        "alpha in I^{2n} is 2 x alpha' modulo torsion, so st(F) <= 2 lambda'(F) - 1"
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
        let m1 = field.minus_one();
        for _ in 0..params.samples {
            let terms = rng.gen_range(1..=2);
            let mut alpha = QuadForm::zero(field);
            let mut alpha_prime = QuadForm::zero(field);
            let mut rendered = Vec::new();
            let mut missing = None;
            for _ in 0..terms {
                let slots = random_classes(&mut rng, field, 2 * n as usize);
                let negative = rng.gen_bool(0.5);
                let sign = if negative { m1 } else { SquareClass::ONE };
                rendered.push(format!("{}{}", if negative { "-" } else { "" }, render_pfister(field, &slots)));
                match eightfold_witness(field, &slots, params.budget)? {
                    EightfoldOutcome::Found { theta, .. } => {
                        alpha = alpha.orth_sum(&QuadForm::pfister(field, &slots)?.scale(sign)?)?;
                        alpha_prime = alpha_prime.orth_sum(&theta.pfister().scale(sign)?)?;
                    }
                    EightfoldOutcome::NotFound(reason) => missing = Some(reason),
                }
            }
            if let Some(reason) = missing {
                report.record(false, || json!({ "alpha": rendered.join(" + "), "reason": reason }));
                continue;
            }
            let scaled = alpha.multiple(4)?.is_isometric(&alpha_prime.multiple(8)?)?;
            let torsion = alpha.orth_sum(&alpha_prime.multiple(2)?.negate())?.is_torsion();
            report.record(scaled && torsion, || {
                json!({
                    "alpha": rendered.join(" + "),
                    "alpha_prime": alpha_prime.render(),
                    "four_alpha_is_eight_alpha_prime": scaled,
                    "difference_is_torsion": torsion,
                })
            });
        }
        Ok(())
    }
}
