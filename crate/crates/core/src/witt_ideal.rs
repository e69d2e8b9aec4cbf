//! Pfister enumeration and search for decompositions `φ ≅ 2^r × ⟨⟨a1,...,an⟩⟩`.
//!
//! Candidates are slot multisets in lexicographic order of their (sorted) bit vectors,
//! so the first witness returned is deterministic. Isometric Pfister forms with
//! different slots are tested separately.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field_tower::{FieldTower, SquareClass};
use crate::quadform::{pfister_entries, QuadForm};

/// Default number of candidate isometry tests.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// Certificate for `φ ≅ 2^scale_power × ⟨⟨slots⟩⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterWitness {
    pub field: FieldTower,
    pub fold: usize,
    pub slots: Vec<SquareClass>,
    pub scale_power: u32,
}

impl PfisterWitness {
    pub fn pfister(&self) -> QuadForm {
        QuadForm::pfister(&self.field, &self.slots).expect("witness slots are valid")
    }

    /// `2^scale_power × ⟨⟨slots⟩⟩`.
    pub fn expanded(&self) -> QuadForm {
        self.pfister().multiple(1 << self.scale_power).expect("positive multiple")
    }

    pub fn validates(&self, form: &QuadForm) -> bool {
        form.is_isometric(&self.expanded()).unwrap_or(false)
    }

    pub fn render(&self) -> String {
        let slots: Vec<String> = self.slots.iter().map(|&s| self.field.render_class(s)).collect();
        format!("{} x <<{}>>", 1u64 << self.scale_power, slots.join(","))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            kind: &'a str,
            fold: usize,
            scale_power: u32,
            slots: Vec<String>,
            form: String,
        }
        serde_json::to_value(Out {
            kind: "pfister_witness",
            fold: self.fold,
            scale_power: self.scale_power,
            slots: self.slots.iter().map(|&s| self.field.render_class(s)).collect(),
            form: self.render(),
        })
        .expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Found(PfisterWitness),
    /// No `n`-fold Pfister form over the square classes works; `candidates` were tested.
    ExhaustedNone {
        candidates: u128,
    },
}

/// Number of slot multisets of size `n` from `classes` square classes.
pub fn multiset_count(classes: u64, n: usize) -> u128 {
    // C(classes + n - 1, n)
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        acc = acc.saturating_mul(classes as u128 + i) / (i + 1);
    }
    acc
}

/// Sorted slot tuples of an `n`-fold Pfister form, in lexicographic order.
#[derive(Clone, Debug)]
pub struct SlotMultisets {
    classes: u64,
    current: Option<Vec<u64>>,
}

impl Iterator for SlotMultisets {
    type Item = Vec<SquareClass>;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.current.as_mut()?;
        let out = cur.iter().map(|&b| SquareClass::from_bits(b)).collect();
        // advance: bump the rightmost position that can grow, reset its tail to the same value
        match (0..cur.len()).rev().find(|&i| cur[i] + 1 < self.classes) {
            Some(i) => {
                let v = cur[i] + 1;
                for slot in &mut cur[i..] {
                    *slot = v;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

pub fn slot_multisets(field: &FieldTower, n: usize, budget: u128) -> Result<SlotMultisets> {
    let classes = field.square_class_count();
    let needed = multiset_count(classes, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(SlotMultisets { classes, current: Some(vec![0; n]) })
}

/// All `n`-fold Pfister forms `⟨⟨a1,...,an⟩⟩`, one per slot multiset.
pub fn enumerate_pfister(
    field: &FieldTower,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = (Vec<SquareClass>, QuadForm)>> {
    let f = field.clone();
    Ok(slot_multisets(field, n, budget)?.map(move |slots| {
        let form = QuadForm::pfister(&f, &slots).expect("enumerated classes are valid");
        (slots, form)
    }))
}

/// Searches for an `n`-fold Pfister `π` with `φ ≅ 2^r × π`.
pub fn decompose_as_power_multiple(form: &QuadForm, r: u32, n: usize, budget: u128) -> Result<Decomposition> {
    let expected = 1usize << (r as usize + n);
    if form.dim() != expected {
        return Err(Error::DimensionMismatch { expected, actual: form.dim() });
    }
    let field = form.field();
    let minus_one = field.minus_one();
    let mut tested = 0u128;
    // φ ⊥ -(2^r × π): the first half is fixed, the second is rewritten per candidate.
    let mut probe: Vec<SquareClass> = form.entries().to_vec();
    let negated_len = expected;
    probe.extend(std::iter::repeat_n(SquareClass::ONE, negated_len));
    for slots in slot_multisets(field, n, budget)? {
        tested += 1;
        let pi = pfister_entries(minus_one, &slots);
        for (k, slot) in probe[expected..].iter_mut().enumerate() {
            *slot = pi[k % pi.len()] * minus_one;
        }
        let candidate = QuadForm::diag(field, probe.clone())?;
        if candidate.is_hyperbolic() {
            return Ok(Decomposition::Found(PfisterWitness { field: field.clone(), fold: n, slots, scale_power: r }));
        }
    }
    Ok(Decomposition::ExhaustedNone { candidates: tested })
}

/// Given an `(n+1)`-fold Pfister `ρ`, finds an `n`-fold `π` with
/// `2^(r-1) × ρ ≅ 2^r × π` (`r = 2` for `2×ρ = 4×ψ`, `r = 3` for `4×ψ = 8×ϑ`).
pub fn two_power_pfister_divisibility_check(rho: &QuadForm, r: u32, n: usize, budget: u128) -> Result<PfisterWitness> {
    if r == 0 {
        return Err(Error::HypothesisViolated("scale power must be at least 1".into()));
    }
    let expected = 1usize << (n + 1);
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch { expected, actual: rho.dim() });
    }
    let form = rho.multiple(1 << (r - 1))?;
    match decompose_as_power_multiple(&form, r, n, budget)? {
        Decomposition::Found(w) => Ok(w),
        Decomposition::ExhaustedNone { candidates } => Err(Error::WitnessNotFound(format!(
            "{} x {} is not {} x any {n}-fold Pfister form ({candidates} candidates)",
            1u64 << (r - 1),
            rho.render(),
            1u64 << r
        ))),
    }
}
