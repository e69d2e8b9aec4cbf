use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{random_classes, render_pfister, Check, CheckParams, CheckReport, ATTEMPTS_PER_SAMPLE};
use crate::brauer::{is_division_tensor, QuaternionSymbol};
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;
use crate::witt_ideal::two_power_pfister_divisibility_check;

/// If `(-1,a1) ⊗ (a2,a3) ⊗ ... ⊗ (a_{2n},a_{2n+1})` is not a division algebra, then
/// `2 × ⟨⟨a1,...,a_{2n+1}⟩⟩ ≅ 4 × ψ` for some `2n`-fold Pfister form `ψ`.
pub struct DoubleToQuadrupleCheck;

pub(crate) fn hypothesis_algebra(field: &FieldTower, slots: &[SquareClass]) -> Result<Vec<QuaternionSymbol>> {
    let mut algebra = vec![QuaternionSymbol::new(field, field.minus_one(), slots[0])?];
    for pair in slots[1..].chunks(2) {
        algebra.push(QuaternionSymbol::new(field, pair[0], pair[1])?);
    }
    Ok(algebra)
}

impl Check for DoubleToQuadrupleCheck {
    fn id(&self) -> &'static str {
        "propL"
    }

    fn summary(&self) -> &'static str {
        "non-division (-1,a1)(x)(a2,a3)... gives 2 x <<a1,...,a_{2n+1}>> = 4 x psi"
    }

    fn default_n(&self) -> u32 {
        1
    }

    fn default_field(&self, n: u32) -> FieldTower {
        FieldTower::standard(BaseField::RealClosed, 2 * n as usize + 1)
    }

    fn execute(&self, field: &FieldTower, n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()> {
        if n == 0 {
            return Err(Error::HypothesisViolated("n must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let len = 2 * n as usize + 1;
        let mut attempts = 0;
        while report.run < params.samples && attempts < params.samples * ATTEMPTS_PER_SAMPLE {
            attempts += 1;
            let slots = random_classes(&mut rng, field, len);
            if is_division_tensor(field, &hypothesis_algebra(field, &slots)?)? {
                report.skip(1);
                continue;
            }
            let rho = QuadForm::pfister(field, &slots)?;
            match two_power_pfister_divisibility_check(&rho, 2, 2 * n as usize, params.budget) {
                Ok(psi) => {
                    let ok = psi.validates(&rho.multiple(2)?);
                    report.record(ok, || json!({ "rho": render_pfister(field, &slots), "psi": psi.render() }));
                    if ok {
                        let mut w = psi.to_json();
                        w["rho"] = json!(render_pfister(field, &slots));
                        report.witness(w);
                    }
                }
                Err(Error::WitnessNotFound(reason)) => {
                    report.record(false, || json!({ "rho": render_pfister(field, &slots), "reason": reason }))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }
}
