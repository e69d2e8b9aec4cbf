use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{random_class, Check, CheckParams, CheckReport};
use crate::brauer::{matrix_double_trace, trace_form_tensor, QuaternionSymbol};
use crate::error::Result;
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;

/// Trace-form calculus of quaternion algebras and their tensor products:
/// `⟨-1⟩ ⊥ 2T_Q ≅ ⟨1⟩ ⊥ -N_Q`, `T_Q ≡ ⟨1,1⟩ ⊥ -2N_Q`, `T_{A⊗B} ≅ T_A ⊗ T_B` and
/// `T_{M₂(A)} ≡ 2 × T_A`.
pub struct TraceIdentityCheck;

/// Result of the four identities for one sampled symbol and pair of symbol lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TraceOutcome {
    pub norm_isometry: bool,
    pub witt_identity: bool,
    pub multiplicative: bool,
    pub matrix_doubling: bool,
}

impl TraceOutcome {
    pub fn all(&self) -> bool {
        self.norm_isometry && self.witt_identity && self.multiplicative && self.matrix_doubling
    }
}

pub(crate) fn trace_identities(
    field: &FieldTower,
    q: &QuaternionSymbol,
    left: &[QuaternionSymbol],
    right: &[QuaternionSymbol],
) -> Result<TraceOutcome> {
    let m1 = field.minus_one();
    let two = field.class_of_constant(2)?;
    let one = QuadForm::diag(field, vec![SquareClass::ONE])?;
    let ones = QuadForm::diag(field, vec![SquareClass::ONE; 2])?;
    let t = q.trace_form();
    let n = q.norm_form();

    let norm_isometry = one.negate().orth_sum(&t.scale(two)?)?.is_isometric(&one.orth_sum(&n.negate())?)?;
    let witt_identity = t.witt_equivalent(&ones.orth_sum(&n.scale(two * m1)?)?)?;

    let mut both = left.to_vec();
    both.extend_from_slice(right);
    let t_left = trace_form_tensor(field, left)?;
    let multiplicative =
        trace_form_tensor(field, &both)?.is_isometric(&t_left.tensor(&trace_form_tensor(field, right)?)?)?;

    let split = QuaternionSymbol::new(field, SquareClass::ONE, SquareClass::ONE)?;
    let mut with_matrix = vec![split.clone()];
    with_matrix.extend_from_slice(left);
    let doubled = matrix_double_trace(&t_left);
    let matrix_doubling = split.trace_form().witt_equivalent(&ones)?
        && trace_form_tensor(field, &with_matrix)?.witt_equivalent(&doubled)?
        && split.trace_form().tensor(&t_left)?.witt_equivalent(&doubled)?;

    Ok(TraceOutcome { norm_isometry, witt_identity, multiplicative, matrix_doubling })
}

fn random_symbol(rng: &mut ChaCha8Rng, field: &FieldTower) -> QuaternionSymbol {
    let a = random_class(rng, field);
    let b = random_class(rng, field);
    QuaternionSymbol::new(field, a, b).expect("sampled classes are valid")
}

impl Check for TraceIdentityCheck {
    fn id(&self) -> &'static str {
        "trace"
    }

    fn summary(&self) -> &'static str {
        "trace forms of quaternion algebras: norm-form isometry, Witt identity, multiplicativity, matrix doubling"
    }

    fn default_n(&self) -> u32 {
        0
    }

    fn default_field(&self, _n: u32) -> FieldTower {
        FieldTower::standard(BaseField::RealClosed, 2)
    }

    fn execute(&self, field: &FieldTower, _n: u32, params: &CheckParams, report: &mut CheckReport) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.samples {
            let q = random_symbol(&mut rng, field);
            let left: Vec<_> = (0..rng.gen_range(0..=2)).map(|_| random_symbol(&mut rng, field)).collect();
            let right: Vec<_> = (0..rng.gen_range(0..=2)).map(|_| random_symbol(&mut rng, field)).collect();
            let outcome = trace_identities(field, &q, &left, &right)?;
            report.record(outcome.all(), || {
                let render =
                    |qs: &[QuaternionSymbol]| qs.iter().map(QuaternionSymbol::render).collect::<Vec<_>>().join("(x)");
                json!({
                    "symbol": q.render(),
                    "left": render(&left),
                    "right": render(&right),
                    "norm_isometry": outcome.norm_isometry,
                    "witt_identity": outcome.witt_identity,
                    "multiplicative": outcome.multiplicative,
                    "matrix_doubling": outcome.matrix_doubling,
                })
            });
        }
        Ok(())
    }
}
