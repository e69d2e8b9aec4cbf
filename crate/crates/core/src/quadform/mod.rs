//! Diagonal quadratic forms over a [`FieldTower`].
//!
//! Forms are raw lists of square classes. Witt decomposition runs Springer's
//! residue recursion: split the entries by the parity of the top variable, decompose
//! both residue forms one level down, and reassemble. At the base the Witt groups of
//! quadratically closed, real closed and finite fields are known explicitly.

mod search;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, Ordering, SquareClass};

pub use search::{isotropy_witness_search, LaurentTerm, SearchConfig, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    field: FieldTower,
    entries: Vec<SquareClass>,
}

/// `dim = 2·witt_index + dim(anisotropic_part)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub anisotropic_part: QuadForm,
}

impl QuadForm {
    pub fn diag(field: &FieldTower, entries: Vec<SquareClass>) -> Result<Self> {
        for &e in &entries {
            field.check(e)?;
        }
        Ok(QuadForm { field: field.clone(), entries })
    }

    /// The zero-dimensional form.
    pub fn zero(field: &FieldTower) -> Self {
        QuadForm { field: field.clone(), entries: Vec::new() }
    }

    /// `⟨⟨a1,...,an⟩⟩ = ⟨1,-a1⟩ ⊗ ... ⊗ ⟨1,-an⟩`.
    pub fn pfister(field: &FieldTower, slots: &[SquareClass]) -> Result<Self> {
        for &s in slots {
            field.check(s)?;
        }
        Ok(QuadForm { field: field.clone(), entries: pfister_entries(field.minus_one(), slots) })
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn same_field(&self, other: &QuadForm) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn orth_sum(&self, other: &QuadForm) -> Result<QuadForm> {
        self.same_field(other)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(QuadForm { field: self.field.clone(), entries })
    }

    pub fn scale(&self, a: SquareClass) -> Result<QuadForm> {
        self.field.check(a)?;
        Ok(QuadForm { field: self.field.clone(), entries: self.entries.iter().map(|&e| e * a).collect() })
    }

    /// `-φ`, i.e. `φ` scaled by the class of `-1`.
    pub fn negate(&self) -> QuadForm {
        self.scale(self.field.minus_one()).expect("-1 is a valid class")
    }

    pub fn tensor(&self, other: &QuadForm) -> Result<QuadForm> {
        self.same_field(other)?;
        let entries = self.entries.iter().flat_map(|&a| other.entries.iter().map(move |&b| a * b)).collect();
        Ok(QuadForm { field: self.field.clone(), entries })
    }

    /// `m × φ`, the m-fold orthogonal sum.
    pub fn multiple(&self, m: usize) -> Result<QuadForm> {
        if m == 0 {
            return Err(Error::ZeroMultiple);
        }
        Ok(QuadForm { field: self.field.clone(), entries: self.entries.repeat(m) })
    }

    /// Splits by the parity of the top variable: `φ ≅ φ_unit ⊥ t·φ_ram`.
    pub fn residue_split(&self) -> Result<(QuadForm, QuadForm)> {
        let residue = self.field.residue_field()?;
        let top = self.field.generator_count() - 1;
        let (ram, unit): (Vec<SquareClass>, Vec<SquareClass>) = self.entries.iter().partition(|e| e.has_generator(top));
        let ram = ram.into_iter().map(|e| e.without_generator(top)).collect();
        Ok((QuadForm { field: residue.clone(), entries: unit }, QuadForm { field: residue, entries: ram }))
    }

    pub fn witt_decompose(&self) -> WittDecomposition {
        let raw: Vec<u64> = self.entries.iter().map(|e| e.bits()).collect();
        let an = anisotropic_bits(self.field.base(), self.field.depth(), raw, self.field.base().generator_count());
        let witt_index = (self.dim() - an.len()) / 2;
        WittDecomposition {
            witt_index,
            anisotropic_part: QuadForm {
                field: self.field.clone(),
                entries: an.into_iter().map(SquareClass::from_bits).collect(),
            },
        }
    }

    pub fn witt_index(&self) -> usize {
        self.witt_decompose().witt_index
    }

    pub fn is_isotropic(&self) -> bool {
        self.witt_index() >= 1
    }

    pub fn is_anisotropic(&self) -> bool {
        !self.is_isotropic()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.anisotropic_dim() == 0
    }

    /// Dimension of the anisotropic part, without materializing it.
    pub fn anisotropic_dim(&self) -> usize {
        let raw: Vec<u64> = self.entries.iter().map(|e| e.bits()).collect();
        anisotropic_bits(self.field.base(), self.field.depth(), raw, self.field.base().generator_count()).len()
    }

    /// Whether `φ` represents `a`: `φ` is isotropic (hence universal), or its
    /// anisotropic part becomes isotropic after adding `⟨-a⟩`.
    pub fn represents(&self, a: SquareClass) -> Result<bool> {
        self.field.check(a)?;
        let dec = self.witt_decompose();
        if dec.witt_index > 0 {
            return Ok(true);
        }
        let mut probe = dec.anisotropic_part;
        probe.entries.push(a * self.field.minus_one());
        Ok(probe.is_isotropic())
    }

    pub fn witt_equivalent(&self, other: &QuadForm) -> Result<bool> {
        self.same_field(other)?;
        Ok(self.orth_sum(&other.negate())?.is_hyperbolic())
    }

    pub fn is_isometric(&self, other: &QuadForm) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.witt_equivalent(other)?)
    }

    pub fn signature(&self, ordering: &Ordering) -> Result<i64> {
        if !self.field.is_real() {
            return Err(Error::NoOrderings);
        }
        Ok(self.entries.iter().map(|&e| ordering.sign(e)).sum())
    }

    pub fn total_signature(&self) -> Result<BTreeMap<Ordering, i64>> {
        if !self.field.is_real() {
            return Err(Error::NoOrderings);
        }
        Ok(self.field.orderings().into_iter().map(|o| (o, self.signature(&o).unwrap())).collect())
    }

    /// Torsion in the Witt ring: every signature vanishes (vacuous over nonreal towers).
    pub fn is_torsion(&self) -> bool {
        self.field.orderings().iter().all(|o| self.entries.iter().map(|&e| o.sign(e)).sum::<i64>() == 0)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|&e| self.field.render_class(e)).collect();
        format!("<{}>", parts.join(","))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FieldTower {
    /// Whether `a` is a sum of two squares, i.e. `⟨1,1,-a⟩` is isotropic.
    pub fn is_sum_of_two_squares(&self, a: SquareClass) -> bool {
        let form =
            QuadForm { field: self.clone(), entries: vec![SquareClass::ONE, SquareClass::ONE, a * self.minus_one()] };
        form.is_isotropic()
    }
}

pub(crate) fn pfister_entries(minus_one: SquareClass, slots: &[SquareClass]) -> Vec<SquareClass> {
    let mut entries = vec![SquareClass::ONE];
    for &a in slots {
        let neg_a = a * minus_one;
        let mut next = Vec::with_capacity(entries.len() * 2);
        next.extend_from_slice(&entries);
        next.extend(entries.iter().map(|&e| e * neg_a));
        entries = next;
    }
    entries
}

/// Anisotropic part of `⟨entries⟩` over `base((t1))...((t_level))`.
fn anisotropic_bits(base: BaseField, level: usize, entries: Vec<u64>, base_gens: usize) -> Vec<u64> {
    if entries.len() <= 1 {
        return entries;
    }
    if level == 0 {
        return anisotropic_at_base(base, &entries);
    }
    let top = 1u64 << (base_gens + level - 1);
    let (ram, unit): (Vec<u64>, Vec<u64>) = entries.into_iter().partition(|e| e & top != 0);
    let mut an = anisotropic_bits(base, level - 1, unit, base_gens);
    let ram = ram.into_iter().map(|e| e & !top).collect();
    an.extend(anisotropic_bits(base, level - 1, ram, base_gens).into_iter().map(|e| e | top));
    an
}

fn anisotropic_at_base(base: BaseField, entries: &[u64]) -> Vec<u64> {
    match base {
        BaseField::QuadClosed => vec![0; entries.len() % 2],
        BaseField::RealClosed => {
            let neg = entries.iter().filter(|&&e| e & 1 == 1).count();
            let pos = entries.len() - neg;
            if pos >= neg {
                vec![0; pos - neg]
            } else {
                vec![1; neg - pos]
            }
        }
        BaseField::FiniteOdd { p, k } => {
            let nu = entries.iter().filter(|&&e| e & 1 == 1).count();
            let n1 = entries.len() - nu;
            if p % 4 == 3 && k % 2 == 1 {
                // W(F_q) ≅ Z/4 generated by ⟨1⟩, with ⟨u⟩ = ⟨-1⟩.
                match (n1 as i64 - nu as i64).rem_euclid(4) {
                    0 => vec![],
                    1 => vec![0],
                    2 => vec![0, 0],
                    _ => vec![1],
                }
            } else {
                // W(F_q) ≅ Z/2[F*/F*²].
                let mut an = vec![0; n1 % 2];
                an.extend(vec![1; nu % 2]);
                an
            }
        }
    }
}
