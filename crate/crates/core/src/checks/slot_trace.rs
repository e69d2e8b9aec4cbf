use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{random_classes, render_pfister, Check, CheckParams, CheckReport, ATTEMPTS_PER_SAMPLE};
use crate::brauer::{is_division_tensor, QuaternionSymbol};
use crate::error::Result;
use crate::field_tower::{BaseField, FieldTower};
use crate::quadform::QuadForm;

/// If `a0` is a sum of two squares and `⊗(a_i, b_i)` is not a division algebra, the
/// `(2n+2)`-fold Pfister form `⟨⟨a0,b0,...,an,bn⟩⟩` is hyperbolic.
pub struct SlotTraceHyperbolicityCheck;

impl Check for SlotTraceHyperbolicityCheck {
    fn id(&self) -> &'static str {
        "so2s"
    }

    fn summary(&self) -> &'static str {
        "sum-of-two-squares slot and non-division tensor product force a hyperbolic Pfister form"
    }

    fn default_n(&self) -> u32 {
        1
    }

    fn default_field(&self, _n: u32) -> FieldTower {
        FieldTower::standard(BaseField::QuadClosed, 3)
    }

    fn execute(&self, field: &FieldTower, n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let slots_len = 2 * n as usize + 2;
        let mut attempts = 0;
        while report.run < params.samples && attempts < params.samples * ATTEMPTS_PER_SAMPLE {
            attempts += 1;
            let slots = random_classes(&mut rng, field, slots_len);
            let algebra: Vec<QuaternionSymbol> =
                slots.chunks(2).map(|p| QuaternionSymbol::new(field, p[0], p[1])).collect::<Result<_>>()?;
            if !field.is_sum_of_two_squares(slots[0]) || is_division_tensor(field, &algebra)? {
                report.skip(1);
                continue;
            }
            let rho = QuadForm::pfister(field, &slots)?;
            report.record(
                rho.is_hyperbolic(),
                || json!({ "pfister": render_pfister(field, &slots), "witt_index": rho.witt_index() }),
            );
        }
        Ok(())
    }
}
