//! Iterated Laurent series towers `k((t1))...((tn))` and their square-class groups.
//!
//! The base `k` is quadratically closed, real closed, or a finite field of odd order.
//! `F*/F*²` is an elementary abelian 2-group with an explicit basis: the base
//! generator (the class of `-1` over a real closed base, a fixed nonsquare `u` over a
//! finite base, nothing over a quadratically closed base) followed by `t1, ..., tn`.
//! A [`SquareClass`] is a bit vector over that basis and multiplication is XOR.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest number of square-class generators a tower may carry.
pub const MAX_GENERATORS: usize = 63;

/// An element of `F*/F*²`, stored as a bit vector over the tower's generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(u64);

impl SquareClass {
    pub const ONE: SquareClass = SquareClass(0);

    pub const fn from_bits(bits: u64) -> Self {
        SquareClass(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_trivial(self) -> bool {
        self.0 == 0
    }

    pub const fn has_generator(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub const fn with_generator(self, index: usize) -> Self {
        SquareClass(self.0 ^ (1 << index))
    }

    pub const fn without_generator(self, index: usize) -> Self {
        SquareClass(self.0 & !(1 << index))
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;

    // exponent vectors mod 2 add by XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: SquareClass) -> SquareClass {
        SquareClass(self.0 ^ rhs.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    /// Every element is a square (e.g. the complex numbers).
    QuadClosed,
    /// Uniquely ordered, squares are exactly the positive elements (e.g. the reals).
    RealClosed,
    /// The finite field with `p^k` elements, `p` an odd prime.
    FiniteOdd { p: u64, k: u32 },
}

impl BaseField {
    pub fn finite(q: u64) -> Result<Self> {
        if q < 3 || q.is_multiple_of(2) {
            return Err(Error::UnsupportedBase(format!("F{q}: order must be odd and at least 3")));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::UnsupportedBase(format!("F{q}: {q} is not a prime power")));
        }
        Ok(BaseField::FiniteOdd { p, k })
    }

    /// Number of square-class generators contributed by the base.
    pub fn generator_count(self) -> usize {
        match self {
            BaseField::QuadClosed => 0,
            BaseField::RealClosed | BaseField::FiniteOdd { .. } => 1,
        }
    }

    /// Field order for a finite base, saturating at `u128::MAX`.
    pub fn order(self) -> Option<u128> {
        match self {
            BaseField::FiniteOdd { p, k } => Some((0..k).fold(1u128, |acc, _| acc.saturating_mul(p as u128))),
            _ => None,
        }
    }

    /// For a finite base, whether `-1` is a nonsquare (`q ≡ 3 mod 4`).
    fn minus_one_is_nonsquare(self) -> bool {
        match self {
            BaseField::QuadClosed => false,
            BaseField::RealClosed => true,
            BaseField::FiniteOdd { p, k } => p % 4 == 3 && k % 2 == 1,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::QuadClosed => write!(f, "C"),
            BaseField::RealClosed => write!(f, "R"),
            BaseField::FiniteOdd { p, k } => match self.order() {
                Some(q) if q < u128::MAX => write!(f, "F{q}"),
                _ => write!(f, "F{p}^{k}"),
            },
        }
    }
}

/// A field `k((t1))...((tn))` in the computable family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldTower {
    base: BaseField,
    variables: Arc<[String]>,
}

impl FieldTower {
    pub fn new(base: BaseField, variables: Vec<String>) -> Result<Self> {
        for (i, name) in variables.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Parse { pos: 0, msg: format!("invalid variable name `{name}`") });
            }
            if variables[..i].contains(name) {
                return Err(Error::Parse { pos: 0, msg: format!("duplicate variable `{name}`") });
            }
        }
        if base.generator_count() + variables.len() > MAX_GENERATORS {
            return Err(Error::UnsupportedBase(format!(
                "at most {MAX_GENERATORS} square-class generators are supported"
            )));
        }
        Ok(FieldTower { base, variables: variables.into() })
    }

    /// Parses `base ( "((" ident "))" )*` with `base ::= "C" | "R" | "F"<digits>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let bytes = s.as_bytes();
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        if bytes.is_empty() {
            return Err(err(0, "empty field spec"));
        }
        let (base, mut pos) = match bytes[0] {
            b'C' => (BaseField::QuadClosed, 1),
            b'R' => (BaseField::RealClosed, 1),
            b'F' => {
                let end = 1 + bytes[1..].iter().take_while(|b| b.is_ascii_digit()).count();
                if end == 1 {
                    return Err(err(1, "expected the order of the finite field after `F`"));
                }
                let q: u64 = s[1..end].parse().map_err(|_| err(1, "field order out of range"))?;
                (BaseField::finite(q)?, end)
            }
            _ => return Err(err(0, "expected base field `C`, `R` or `F<q>`")),
        };
        let mut variables = Vec::new();
        while pos < bytes.len() {
            if !s[pos..].starts_with("((") {
                return Err(err(pos, "expected `((`"));
            }
            pos += 2;
            let start = pos;
            if pos >= bytes.len() || !bytes[pos].is_ascii_alphabetic() {
                return Err(err(pos, "expected a variable name"));
            }
            while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let name = &s[start..pos];
            if !s[pos..].starts_with("))") {
                return Err(err(pos, "expected `))`"));
            }
            pos += 2;
            if variables.iter().any(|v: &String| v == name) {
                return Err(err(start, &format!("duplicate variable `{name}`")));
            }
            variables.push(name.to_string());
        }
        FieldTower::new(base, variables)
    }

    /// `C((t1))...((tn))`, `R((t1))...`, with the default variable names.
    pub fn standard(base: BaseField, depth: usize) -> Self {
        let vars = (1..=depth).map(|i| format!("t{i}")).collect();
        FieldTower::new(base, vars).expect("standard tower is well formed")
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn depth(&self) -> usize {
        self.variables.len()
    }

    pub fn generator_count(&self) -> usize {
        self.base.generator_count() + self.variables.len()
    }

    pub fn square_class_count(&self) -> u64 {
        1 << self.generator_count()
    }

    /// All square classes in increasing bit order.
    pub fn square_classes(&self) -> impl Iterator<Item = SquareClass> + Clone {
        (0..self.square_class_count()).map(SquareClass)
    }

    pub fn contains(&self, class: SquareClass) -> bool {
        class.0 >> self.generator_count() == 0
    }

    pub fn check(&self, class: SquareClass) -> Result<SquareClass> {
        if self.contains(class) {
            Ok(class)
        } else {
            Err(Error::InvalidClass(class.0))
        }
    }

    /// Bit index of variable `j` (0-based position in the tower).
    pub fn variable_index(&self, j: usize) -> usize {
        self.base.generator_count() + j
    }

    pub fn variable_class(&self, j: usize) -> SquareClass {
        SquareClass(1 << self.variable_index(j))
    }

    pub fn variable_by_name(&self, name: &str) -> Option<SquareClass> {
        self.variables.iter().position(|v| v == name).map(|j| self.variable_class(j))
    }

    /// The base generator (class of `-1` over R, of `u` over a finite field).
    pub fn base_generator(&self) -> Option<SquareClass> {
        (self.base.generator_count() == 1).then_some(SquareClass(1))
    }

    pub fn minus_one(&self) -> SquareClass {
        if self.base.minus_one_is_nonsquare() {
            SquareClass(1)
        } else {
            SquareClass::ONE
        }
    }

    pub fn is_real(&self) -> bool {
        self.base == BaseField::RealClosed
    }

    /// Square class of a nonzero integer constant of the base field.
    pub fn class_of_constant(&self, c: i64) -> Result<SquareClass> {
        if c == 0 {
            return Err(Error::ZeroElement);
        }
        match self.base {
            BaseField::QuadClosed => Ok(SquareClass::ONE),
            BaseField::RealClosed => Ok(if c > 0 { SquareClass::ONE } else { SquareClass(1) }),
            BaseField::FiniteOdd { p, k } => {
                let r = c.rem_euclid(p as i64) as u64;
                if r == 0 {
                    return Err(Error::NotAUnit(c));
                }
                // Every element of the prime field is a square in an even-degree extension.
                if k % 2 == 0 || legendre(r, p) == 1 {
                    Ok(SquareClass::ONE)
                } else {
                    Ok(SquareClass(1))
                }
            }
        }
    }

    /// The tower with its top variable removed (the residue field of the top level).
    pub fn residue_field(&self) -> Result<FieldTower> {
        if self.variables.is_empty() {
            return Err(Error::BaseFieldHasNoVariables);
        }
        Ok(FieldTower { base: self.base, variables: self.variables[..self.variables.len() - 1].into() })
    }

    /// All orderings; empty unless the base is real closed.
    pub fn orderings(&self) -> Vec<Ordering> {
        if !self.is_real() {
            return Vec::new();
        }
        let n = self.depth();
        (0..1u64 << n).map(|mask| Ordering { negative: 1 | mask << 1, generators: self.generator_count() }).collect()
    }

    /// `F(√b)` re-expressed as a member of the family, with the induced map on square classes.
    pub fn adjoin_sqrt(&self, b: SquareClass) -> (FieldTower, ClassMap) {
        debug_assert!(self.contains(b));
        if b.is_trivial() {
            return (self.clone(), ClassMap::Identity);
        }
        let top = 63 - b.0.leading_zeros() as usize;
        let base_gens = self.base.generator_count();
        if top >= base_gens {
            // s² = cofactor·t_j: t_j becomes cofactor modulo squares, s is a fresh uniformizer.
            let j = top - base_gens;
            let cofactor = b.without_generator(top);
            let mut variables = self.variables.to_vec();
            variables[j] = self.fresh_name();
            let tower = FieldTower { base: self.base, variables: variables.into() };
            return (tower, ClassMap::Substitute { index: top, cofactor });
        }
        match self.base {
            BaseField::RealClosed => (
                FieldTower { base: BaseField::QuadClosed, variables: self.variables.clone() },
                ClassMap::DropBaseGenerator,
            ),
            BaseField::FiniteOdd { p, k } => (
                FieldTower { base: BaseField::FiniteOdd { p, k: 2 * k }, variables: self.variables.clone() },
                ClassMap::KillBaseGenerator,
            ),
            BaseField::QuadClosed => unreachable!("quadratically closed base has no generator"),
        }
    }

    fn fresh_name(&self) -> String {
        (1..).map(|i| format!("s{i}")).find(|name| !self.variables.contains(name)).expect("unbounded name supply")
    }

    /// Renders a class as a signed monomial such as `-t1*t2`, `2*t1` or `1`.
    pub fn render_class(&self, class: SquareClass) -> String {
        let mut sign = "";
        let mut factors: Vec<String> = Vec::new();
        if class.has_generator(0) {
            match self.base {
                BaseField::RealClosed => sign = "-",
                BaseField::FiniteOdd { p, k } => {
                    if self.base.minus_one_is_nonsquare() {
                        sign = "-";
                    } else if k % 2 == 1 {
                        factors.push(smallest_nonresidue(p).to_string());
                    } else {
                        factors.push("u".to_string());
                    }
                }
                BaseField::QuadClosed => {}
            }
        }
        for (j, name) in self.variables.iter().enumerate() {
            if class.has_generator(self.variable_index(j)) {
                factors.push(name.clone());
            }
        }
        match (sign, factors.is_empty()) {
            ("-", true) => "-1".to_string(),
            (_, true) => "1".to_string(),
            (sign, false) => format!("{sign}{}", factors.join("*")),
        }
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for v in self.variables.iter() {
            write!(f, "(({v}))")?;
        }
        Ok(())
    }
}

/// Map on square classes induced by [`FieldTower::adjoin_sqrt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassMap {
    Identity,
    /// Generator `index` is replaced by `cofactor`; the slot now holds the fresh variable.
    Substitute {
        index: usize,
        cofactor: SquareClass,
    },
    /// Real closed base became quadratically closed: the `-1` bit disappears.
    DropBaseGenerator,
    /// Finite base of order `q` became order `q²`: `u` is now a square.
    KillBaseGenerator,
}

impl ClassMap {
    pub fn apply(self, c: SquareClass) -> SquareClass {
        match self {
            ClassMap::Identity => c,
            ClassMap::Substitute { index, cofactor } => {
                if c.has_generator(index) {
                    c.without_generator(index) * cofactor
                } else {
                    c
                }
            }
            ClassMap::DropBaseGenerator => SquareClass(c.0 >> 1),
            ClassMap::KillBaseGenerator => c.without_generator(0),
        }
    }
}

/// An ordering of a real-based tower, given by the set of negative generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering {
    negative: u64,
    generators: usize,
}

impl Ordering {
    /// `+1`/`-1` for each generator, base generator (`-1`) first.
    pub fn signs(&self) -> Vec<i8> {
        (0..self.generators).map(|i| if self.negative >> i & 1 == 1 { -1 } else { 1 }).collect()
    }

    pub fn sign(&self, c: SquareClass) -> i64 {
        if (c.bits() & self.negative).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn render(&self, field: &FieldTower) -> String {
        let parts: Vec<String> = field
            .variables()
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let s = if self.negative >> field.variable_index(j) & 1 == 1 { '-' } else { '+' };
                format!("{v}{s}")
            })
            .collect();
        if parts.is_empty() {
            "unique".to_string()
        } else {
            parts.join(",")
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a|p)` for an odd prime `p` and `a` not divisible by `p`.
pub(crate) fn legendre(a: u64, p: u64) -> i8 {
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a, p) == -1).expect("odd primes have nonresidues")
}
