//! Randomized search for explicit isotropic vectors.
//!
//! This is a one-sided oracle, independent of the residue recursion: entries are
//! realized as concrete monomials (`u`, `-1` and the tower variables), candidate vectors
//! are truncated Laurent polynomials, and `φ(v)` is evaluated exactly. A witness proves
//! isotropy; failing to find one proves nothing.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QuadForm;
use crate::error::{Error, Result};
use crate::field_tower::{smallest_nonresidue, BaseField, FieldTower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Exponents of each variable range over `0..truncation_depth`.
    pub truncation_depth: u32,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { truncation_depth: 4, trials: 10_000, seed: 0 }
    }
}

/// `coeff · t1^e1 ··· tn^en`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

/// A nonzero vector of truncated Laurent polynomials with `φ(v) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub coordinates: Vec<Vec<LaurentTerm>>,
}

/// Arithmetic of the coefficient ring used to realize the base field.
#[derive(Clone, Copy)]
enum Coefficients {
    Integers { minus_one_class: bool },
    Prime { p: i128, nonresidue: i128 },
}

impl Coefficients {
    fn for_base(base: BaseField) -> Result<Self> {
        match base {
            BaseField::QuadClosed => Ok(Coefficients::Integers { minus_one_class: false }),
            BaseField::RealClosed => Ok(Coefficients::Integers { minus_one_class: true }),
            BaseField::FiniteOdd { p, k: 1 } => {
                Ok(Coefficients::Prime { p: p as i128, nonresidue: smallest_nonresidue(p) as i128 })
            }
            BaseField::FiniteOdd { .. } => {
                Err(Error::UnsupportedBase(format!("{base}: witness search needs a prime base field")))
            }
        }
    }

    /// Constant realizing the base generator bit.
    fn base_constant(self, bit: bool) -> i128 {
        match (self, bit) {
            (_, false) => 1,
            (Coefficients::Integers { minus_one_class: true }, true) => -1,
            (Coefficients::Integers { minus_one_class: false }, true) => unreachable!("no base generator"),
            (Coefficients::Prime { nonresidue, .. }, true) => nonresidue,
        }
    }

    fn is_zero(self, x: i128) -> bool {
        match self {
            Coefficients::Integers { .. } => x == 0,
            Coefficients::Prime { p, .. } => x.rem_euclid(p) == 0,
        }
    }

    fn candidates(self) -> Vec<i64> {
        match self {
            Coefficients::Integers { .. } => vec![1, -1, 2, -2, 3, -3],
            Coefficients::Prime { p, .. } => (1..p as i64).collect(),
        }
    }
}

impl Witness {
    /// `(p1, p2, ...)` with each coordinate written as a polynomial in the tower variables.
    pub fn render(&self, field: &FieldTower) -> String {
        let coords: Vec<String> = self
            .coordinates
            .iter()
            .map(|poly| {
                if poly.is_empty() {
                    return "0".to_string();
                }
                let mut out = String::new();
                for (i, term) in poly.iter().enumerate() {
                    let mono: Vec<String> = field
                        .variables()
                        .iter()
                        .zip(&term.exponents)
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                        .collect();
                    let mag = term.coeff.unsigned_abs();
                    let body = match (mag, mono.is_empty()) {
                        (_, true) => mag.to_string(),
                        (1, false) => mono.join("*"),
                        (_, false) => format!("{mag}*{}", mono.join("*")),
                    };
                    match (i, term.coeff < 0) {
                        (0, true) => out.push_str(&format!("-{body}")),
                        (0, false) => out.push_str(&body),
                        (_, true) => out.push_str(&format!(" - {body}")),
                        (_, false) => out.push_str(&format!(" + {body}")),
                    }
                }
                out
            })
            .collect();
        format!("({})", coords.join(", "))
    }

    /// Exact evaluation of `φ(v)`; true iff `v ≠ 0` and `φ(v) = 0`.
    pub fn verifies(&self, form: &QuadForm) -> bool {
        let Ok(coeffs) = Coefficients::for_base(form.field().base()) else { return false };
        if self.coordinates.len() != form.dim() {
            return false;
        }
        let base_gens = form.field().base().generator_count();
        let depth = form.field().depth();
        let mut total: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        let mut nonzero = false;
        for (entry, poly) in form.entries().iter().zip(&self.coordinates) {
            let mut square: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
            for x in poly {
                for y in poly {
                    let exps: Vec<u32> = x.exponents.iter().zip(&y.exponents).map(|(a, b)| a + b).collect();
                    *square.entry(exps).or_default() += x.coeff as i128 * y.coeff as i128;
                }
            }
            if square.values().any(|&c| !coeffs.is_zero(c)) {
                nonzero = true;
            }
            let c = coeffs.base_constant(base_gens == 1 && entry.has_generator(0));
            for (mut exps, v) in square {
                if exps.len() != depth {
                    return false;
                }
                for (j, e) in exps.iter_mut().enumerate() {
                    *e += entry.has_generator(base_gens + j) as u32;
                }
                *total.entry(exps).or_default() += c * v;
            }
        }
        nonzero && total.values().all(|&c| coeffs.is_zero(c))
    }
}

/// Searches for an isotropic vector whose coordinates are sparse truncated Laurent
/// polynomials. Each trial draws a support and exponent pattern at random, then
/// enumerates the coefficients on that support (the first normalized to 1).
pub fn isotropy_witness_search(form: &QuadForm, config: &SearchConfig) -> Result<Option<Witness>> {
    let coeffs = Coefficients::for_base(form.field().base())?;
    let dim = form.dim();
    if dim < 2 {
        return Ok(None);
    }
    let base_gens = form.field().base().generator_count();
    let depth = form.field().depth();
    let truncation = config.truncation_depth.max(1);
    let values = coeffs.candidates();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for _ in 0..config.trials {
        let size = rng.gen_range(2..=dim.min(4));
        let support = sample(&mut rng, dim, size).into_vec();
        let exponents: Vec<Vec<u32>> =
            (0..size).map(|_| (0..depth).map(|_| rng.gen_range(0..truncation)).collect()).collect();

        // Terms a_i·v_i² with the same total monomial must cancel among themselves.
        let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for (slot, &i) in support.iter().enumerate() {
            let entry = form.entries()[i];
            let key = (0..depth).map(|j| 2 * exponents[slot][j] + entry.has_generator(base_gens + j) as u32).collect();
            groups.entry(key).or_default().push(slot);
        }
        if groups.values().any(|g| g.len() < 2) {
            continue;
        }
        let constants: Vec<i128> = support
            .iter()
            .map(|&i| coeffs.base_constant(base_gens == 1 && form.entries()[i].has_generator(0)))
            .collect();

        let mut choice = vec![0usize; size];
        loop {
            let value = |slot: usize| if slot == 0 { 1 } else { values[choice[slot]] };
            let cancels = groups.values().all(|g| {
                let sum: i128 = g.iter().map(|&s| constants[s] * (value(s) as i128).pow(2)).sum();
                coeffs.is_zero(sum)
            });
            if cancels {
                let mut coordinates = vec![Vec::new(); dim];
                for (slot, &i) in support.iter().enumerate() {
                    coordinates[i] = vec![LaurentTerm { coeff: value(slot), exponents: exponents[slot].clone() }];
                }
                let witness = Witness { coordinates };
                if witness.verifies(form) {
                    return Ok(Some(witness));
                }
            }
            // odometer over slots 1..size
            let mut k = 1;
            while k < size {
                choice[k] += 1;
                if choice[k] < values.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == size {
                break;
            }
        }
    }
    Ok(None)
}
