use serde_json::json;

use super::torsion_free::{hyperbolicity_sweep, record_generic_anisotropic};
use super::{render_pfister, skipped_note, Check, CheckParams, CheckReport};
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;
use crate::witt_ideal::{decompose_as_power_multiple, multiset_count, Decomposition};

/// The bounds are sharp. Over `R((t1))...((t_{2n-1}))`, `⟨⟨-1,-1,-1,t1,...⟩⟩ ≅ 8 × ⟨⟨t1,...⟩⟩`
/// but that form is not `16 × π` for any single `(2n-2)`-fold Pfister `π` (the full
/// non-membership in `16 × I^{2n-2}` is not decided, so the verdict is partial). Over
/// `C((t1))...((t_{2n+1}))`, `I^{2n+1} ≠ 0 = I^{2n+2}`.
pub struct OptimalityCheck;

impl Check for OptimalityCheck {
    fn id(&self) -> &'static str {
        "optimality"
    }

    fn summary(&self) -> &'static str {
        "sharpness examples over real and complex Laurent towers (weak refutation, partial)"
    }

    fn default_n(&self) -> u32 {
        2
    }

    fn default_field(&self, n: u32) -> FieldTower {
        FieldTower::standard(BaseField::RealClosed, (2 * n as usize).saturating_sub(1).max(1))
    }

    fn execute(&self, field: &FieldTower, n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()> {
        let k = (2 * n as usize).saturating_sub(1);
        if n == 0 || field.base() != BaseField::RealClosed || field.depth() < k {
            return Err(Error::HypothesisViolated(format!(
                "needs n >= 1 and a real closed base with at least {k} variables, got n = {n} over {field}"
            )));
        }
        let m1 = field.minus_one();
        let ts: Vec<SquareClass> = (0..k).map(|j| field.variable_class(j)).collect();
        let mut big = vec![m1, m1, m1];
        big.extend_from_slice(&ts);
        let form = QuadForm::pfister(field, &big)?;
        let small = QuadForm::pfister(field, &ts)?;

        // (i) exact isometry with 8 x <<t1,...>>
        let eightfold = form.is_isometric(&small.multiple(8)?)?;
        report.record(eightfold, || json!({ "part": "i", "form": render_pfister(field, &big) }));
        report.witness(json!({
            "kind": "eightfold_multiple",
            "part": "i",
            "form": render_pfister(field, &big),
            "theta": format!("8 x {}", render_pfister(field, &ts)),
            "holds": eightfold,
        }));

        // (ii) weak refutation: no single Pfister form pi with form = 16 x pi
        let fold = 2 * n as usize - 2;
        match decompose_as_power_multiple(&form, 4, fold, params.budget)? {
            Decomposition::ExhaustedNone { candidates } => {
                report.record(true, || json!({}));
                report.witness(json!({
                    "kind": "weak_refutation",
                    "part": "ii",
                    "form": render_pfister(field, &big),
                    "claim": format!("not 16 x pi for any {fold}-fold Pfister pi over square-class slots"),
                    "candidates": candidates.to_string(),
                    "note": "does not exclude sums of several 16 x pi",
                }));
            }
            Decomposition::Found(w) => report
                .record(false, || json!({ "part": "ii", "form": render_pfister(field, &big), "found": w.render() })),
        }
        report.mark_weak();

        // (iii) complex tower of depth 2n+1
        let complex = FieldTower::standard(BaseField::QuadClosed, 2 * n as usize + 1);
        record_generic_anisotropic(&complex, 2 * n as usize + 1, report)?;
        let top = 2 * n as usize + 2;
        let needed = multiset_count(complex.square_class_count(), top);
        if needed > params.budget {
            report.skip(1);
            report.witness(skipped_note(
                "iii",
                format!("{top}-fold sweep over {complex} needs {needed} candidates, budget is {}", params.budget),
            ));
        } else {
            hyperbolicity_sweep(&complex, top, params.budget, report)?;
        }
        Ok(())
    }
}
