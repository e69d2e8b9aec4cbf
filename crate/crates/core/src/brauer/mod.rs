//! Quaternion symbols and 2-torsion Brauer classes.
//!
//! A [`BrauerClass`] is an unreduced sum of symbols `(a, b)` in `Br₂(F)`; no normal form
//! is kept. The index is computed by peeling off the top variable: writing the class as
//! `α₀ + (β, t)` with `α₀` unramified, `ind = ind(α₀)` when `β` is a square and
//! `2·ind(α₀ ⊗ K(√β))` otherwise, where `K` is the residue field.

mod index;

use std::fmt;

use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;

pub use index::{
    index_oracle_quadclosed, index_strategies, index_strategy, AlternatingRankIndex, IndexStrategy, RamificationIndex,
};

/// The quaternion algebra `(a, b)_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionSymbol {
    field: FieldTower,
    pub a: SquareClass,
    pub b: SquareClass,
}

impl QuaternionSymbol {
    pub fn new(field: &FieldTower, a: SquareClass, b: SquareClass) -> Result<Self> {
        field.check(a)?;
        field.check(b)?;
        Ok(QuaternionSymbol { field: field.clone(), a, b })
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    /// `N_Q = ⟨⟨a, b⟩⟩ = ⟨1, -a, -b, ab⟩`.
    pub fn norm_form(&self) -> QuadForm {
        QuadForm::pfister(&self.field, &[self.a, self.b]).expect("slots are valid")
    }

    /// `T_Q = ⟨2, 2a, 2b, -2ab⟩`.
    pub fn trace_form(&self) -> QuadForm {
        let two = self.field.class_of_constant(2).expect("2 is a unit in odd characteristic");
        let m1 = self.field.minus_one();
        let (a, b) = (self.a, self.b);
        QuadForm::diag(&self.field, vec![two, two * a, two * b, two * m1 * a * b]).expect("valid classes")
    }

    pub fn render(&self) -> String {
        format!("({},{})", self.field.render_class(self.a), self.field.render_class(self.b))
    }
}

/// A 2-torsion Brauer class, as a formal sum of quaternion symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrauerClass {
    field: FieldTower,
    symbols: Vec<(SquareClass, SquareClass)>,
}

impl BrauerClass {
    pub fn zero(field: &FieldTower) -> Self {
        BrauerClass { field: field.clone(), symbols: Vec::new() }
    }

    pub fn new(field: &FieldTower, symbols: Vec<(SquareClass, SquareClass)>) -> Result<Self> {
        for &(a, b) in &symbols {
            field.check(a)?;
            field.check(b)?;
        }
        Ok(BrauerClass { field: field.clone(), symbols })
    }

    /// Class of the tensor product of the given quaternion algebras.
    pub fn of_tensor(field: &FieldTower, factors: &[QuaternionSymbol]) -> Result<Self> {
        if factors.iter().any(|q| &q.field != field) {
            return Err(Error::MixedFields);
        }
        Ok(BrauerClass { field: field.clone(), symbols: factors.iter().map(|q| (q.a, q.b)).collect() })
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn symbols(&self) -> &[(SquareClass, SquareClass)] {
        &self.symbols
    }

    pub fn factors(&self) -> Vec<QuaternionSymbol> {
        self.symbols.iter().map(|&(a, b)| QuaternionSymbol { field: self.field.clone(), a, b }).collect()
    }

    pub fn add(&self, other: &BrauerClass) -> Result<BrauerClass> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(BrauerClass { field: self.field.clone(), symbols })
    }

    /// Drops symbols with a trivial slot; `(1, b) = 0`.
    pub fn normalized(&self) -> BrauerClass {
        let symbols = self.symbols.iter().copied().filter(|(a, b)| !a.is_trivial() && !b.is_trivial()).collect();
        BrauerClass { field: self.field.clone(), symbols }
    }

    /// Writes the class as `α₀ + (β, t)` for the top variable `t`. Both `α₀` and `β` are
    /// returned over the residue field.
    pub fn ramified_decompose(&self) -> Result<(BrauerClass, SquareClass)> {
        let residue = self.field.residue_field()?;
        let top = self.field.generator_count() - 1;
        let minus_one = residue.minus_one();
        let mut beta = SquareClass::ONE;
        let mut unramified = Vec::with_capacity(self.symbols.len());
        for &(a, b) in &self.symbols {
            let (ea, eb) = (a.has_generator(top), b.has_generator(top));
            let (a0, b0) = (a.without_generator(top), b.without_generator(top));
            // {a0 t^ea, b0 t^eb} = {a0,b0} + ea{t,b0} + eb{a0,t} + ea·eb{t,t}, {t,t} = {t,-1}
            if ea {
                beta = beta * b0;
            }
            if eb {
                beta = beta * a0;
            }
            if ea && eb {
                beta = beta * minus_one;
            }
            unramified.push((a0, b0));
        }
        Ok((BrauerClass { field: residue, symbols: unramified }, beta))
    }

    /// `log₂ ind(α)` by ramification recursion.
    pub fn index_log2(&self) -> u32 {
        index_log2_recursive(&self.field, self.symbols.clone())
    }

    pub fn index(&self) -> u64 {
        1 << self.index_log2()
    }

    pub fn render(&self) -> String {
        if self.symbols.is_empty() {
            return "(1,1)".to_string();
        }
        self.factors().iter().map(QuaternionSymbol::render).collect::<Vec<_>>().join("(x)")
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn index_log2_recursive(field: &FieldTower, symbols: Vec<(SquareClass, SquareClass)>) -> u32 {
    if symbols.iter().all(|(a, b)| a.is_trivial() || b.is_trivial()) {
        return 0;
    }
    if field.depth() == 0 {
        return match field.base() {
            BaseField::QuadClosed | BaseField::FiniteOdd { .. } => 0,
            // Br₂(R) = {0, (-1,-1)}; at the base every slot is ±1.
            BaseField::RealClosed => {
                let quaternions = symbols.iter().filter(|(a, b)| a.has_generator(0) && b.has_generator(0)).count();
                (quaternions % 2) as u32
            }
        };
    }
    let class = BrauerClass { field: field.clone(), symbols };
    let (unramified, beta) = class.ramified_decompose().expect("depth >= 1");
    if beta.is_trivial() {
        return index_log2_recursive(&unramified.field, unramified.symbols);
    }
    let (extended, map) = unramified.field.adjoin_sqrt(beta);
    let pulled = unramified.symbols.iter().map(|&(a, b)| (map.apply(a), map.apply(b))).collect();
    1 + index_log2_recursive(&extended, pulled)
}

/// Trace form of `⊗ Q_i`, the tensor product of the individual trace forms.
pub fn trace_form_tensor(field: &FieldTower, factors: &[QuaternionSymbol]) -> Result<QuadForm> {
    let mut t = QuadForm::diag(field, vec![SquareClass::ONE])?;
    for q in factors {
        t = t.tensor(&q.trace_form())?;
    }
    Ok(t)
}

/// `T_{M₂(A)} ≡ 2 × T_A`.
pub fn matrix_double_trace(trace: &QuadForm) -> QuadForm {
    trace.multiple(2).expect("2 > 0")
}

/// Whether `⊗ Q_i` (degree `2^m`) is a division algebra, i.e. has index `2^m`.
pub fn is_division_tensor(field: &FieldTower, factors: &[QuaternionSymbol]) -> Result<bool> {
    let class = BrauerClass::of_tensor(field, factors)?;
    Ok(class.index_log2() as usize == factors.len())
}

/// `λ'(F)` for a quadratically closed base, by enumerating every class of `Br₂(F)`
/// through its alternating-matrix representation (depth ≤ 6).
pub fn lambda_prime_exhaustive(field: &FieldTower) -> Result<u32> {
    if field.base() != BaseField::QuadClosed {
        return Err(Error::UnsupportedBase(format!(
            "{}: exhaustive λ' needs a quadratically closed base",
            field.base()
        )));
    }
    let n = field.depth();
    if n > 6 {
        return Err(Error::BudgetExceeded { needed: 1u128 << (n * (n - 1) / 2), budget: 1 << 15 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut best = 0;
    for mask in 0u64..1 << pairs.len() {
        let symbols = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j))| (field.variable_class(i), field.variable_class(j)))
            .collect();
        best = best.max(BrauerClass { field: field.clone(), symbols }.index_log2());
    }
    Ok(best)
}

/// `λ'(F)` for any base by enumerating all sums of symbols `(g_i, g_j)` on generators.
/// These span `Br₂(F)` by bilinearity.
pub fn lambda_prime_by_symbol_enumeration(field: &FieldTower, budget: u128) -> Result<u32> {
    let g = field.generator_count();
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let needed = 1u128.checked_shl(pairs.len() as u32).unwrap_or(u128::MAX);
    if needed > budget || pairs.len() > 40 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut best = 0;
    for mask in 0u64..1 << pairs.len() {
        let symbols = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j))| (SquareClass::ONE.with_generator(i), SquareClass::ONE.with_generator(j)))
            .collect();
        best = best.max(BrauerClass { field: field.clone(), symbols }.index_log2());
    }
    Ok(best)
}

/// Known values of `λ'`: `n` for `C((t1))...((t_{2n+1}))` and for `R((t1))...((t_{2n-1}))`.
pub fn documented_lambda_prime(field: &FieldTower) -> Option<u32> {
    let d = field.depth() as u32;
    match field.base() {
        BaseField::QuadClosed if d % 2 == 1 => Some((d - 1) / 2),
        BaseField::RealClosed if d % 2 == 1 => Some(d.div_ceil(2)),
        _ => None,
    }
}

#[cfg(test)]
mod tests;
