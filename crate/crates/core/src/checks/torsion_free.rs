use serde_json::json;

use super::{
    lambda_prime, render_pfister, require_lambda_prime_at_most, skipped_note, Check, CheckParams, CheckReport,
};
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;
use crate::witt_ideal::{enumerate_pfister, slot_multisets};

/// With `λ'(F) ≤ n`, `I^{2n+2}F` is torsion-free: every `(2n+2)`-fold Pfister form is
/// hyperbolic over a nonreal field, and every torsion one is hyperbolic over a real field.
pub struct TorsionFreeCheck;

/// Records one instance per `fold`-fold Pfister form: torsion forms must be hyperbolic,
/// forms with a nonzero signature are skipped.
pub(crate) fn hyperbolicity_sweep(
    field: &FieldTower,
    fold: usize,
    budget: u128,
    report: &mut CheckReport,
) -> Result<()> {
    for (slots, rho) in enumerate_pfister(field, fold, budget)? {
        if !rho.is_torsion() {
            report.skip(1);
            continue;
        }
        report.record(
            rho.is_hyperbolic(),
            || json!({ "pfister": render_pfister(field, &slots), "witt_index": rho.witt_index() }),
        );
    }
    Ok(())
}

/// Lexicographically first anisotropic `fold`-fold Pfister form, if any.
pub(crate) fn first_anisotropic_pfister(
    field: &FieldTower,
    fold: usize,
    budget: u128,
) -> Result<Option<Vec<SquareClass>>> {
    Ok(enumerate_pfister(field, fold, budget)?.find(|(_, rho)| rho.is_anisotropic()).map(|(slots, _)| slots))
}

/// `⟨⟨t1,...,tk⟩⟩` is anisotropic over any tower of depth at least `k`.
pub(crate) fn record_generic_anisotropic(field: &FieldTower, k: usize, report: &mut CheckReport) -> Result<()> {
    let slots: Vec<SquareClass> = (0..k).map(|j| field.variable_class(j)).collect();
    let rho = QuadForm::pfister(field, &slots)?;
    let ok = rho.is_anisotropic();
    report.record(ok, || json!({ "pfister": render_pfister(field, &slots), "expected": "anisotropic" }));
    if ok {
        report.witness(json!({ "kind": "anisotropic_pfister", "field": field.to_string(), "pfister": render_pfister(field, &slots) }));
    }
    Ok(())
}

impl Check for TorsionFreeCheck {
    fn id(&self) -> &'static str {
        "thm1"
    }

    fn summary(&self) -> &'static str {
        "index at most 2^n makes (2n+2)-fold Pfister forms torsion-free (hyperbolic when torsion)"
    }

    fn default_n(&self) -> u32 {
        1
    }

    fn default_field(&self, n: u32) -> FieldTower {
        FieldTower::standard(BaseField::QuadClosed, 2 * n as usize + 1)
    }

    fn execute(&self, field: &FieldTower, n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()> {
        require_lambda_prime_at_most(field, n, params.budget)?;
        let fold = 2 * n as usize + 2;
        hyperbolicity_sweep(field, fold, params.budget, report)?;

        // Over F(√-1) every slot is a sum of two squares.
        let minus_one = field.minus_one();
        if minus_one.is_trivial() {
            report.witness(skipped_note("adjoin_sqrt(-1)", format!("-1 is already a square in {field}")));
        } else {
            let (ext, map) = field.adjoin_sqrt(minus_one);
            match lambda_prime(&ext, params.budget) {
                Ok(lp) if lp <= n => {
                    for (slots, _) in enumerate_pfister(field, fold, params.budget)? {
                        let image: Vec<SquareClass> = slots.iter().map(|&s| map.apply(s)).collect();
                        let rho = QuadForm::pfister(&ext, &image)?;
                        report.record(
                            rho.is_hyperbolic(),
                            || json!({ "extension": ext.to_string(), "pfister": render_pfister(&ext, &image) }),
                        );
                    }
                }
                Ok(lp) => report.witness(skipped_note("adjoin_sqrt(-1)", format!("λ'({ext}) = {lp} exceeds n = {n}"))),
                Err(e) => report.witness(skipped_note("adjoin_sqrt(-1)", e.to_string())),
            }
        }

        let below = fold - 1;
        match slot_multisets(field, below, params.budget) {
            Ok(_) => match first_anisotropic_pfister(field, below, params.budget)? {
                Some(slots) => report.witness(json!({
                    "kind": "anisotropic_pfister",
                    "field": field.to_string(),
                    "pfister": render_pfister(field, &slots),
                })),
                None => report.witness(
                    json!({ "kind": "note", "reason": format!("every {below}-fold Pfister form is isotropic") }),
                ),
            },
            Err(e @ Error::BudgetExceeded { .. }) => report.witness(skipped_note("anisotropic witness", e.to_string())),
            Err(e) => return Err(e),
        }
        if field.depth() >= below {
            record_generic_anisotropic(field, below, report)?;
        }
        Ok(())
    }
}
