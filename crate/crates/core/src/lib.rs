//! Exact quadratic form theory over iterated Laurent series towers.
//!
//! Square classes, diagonal forms with Witt decomposition, quaternion symbols and
//! 2-torsion Brauer classes with index computation, Pfister witness search, and a
//! registry of instance-level verification checks for the Witt-ideal identities
//! relating `I^{2λ'+2}F`, `8 × I^{2λ'-1}F` and trace forms of quaternion algebras.

pub mod brauer;
pub mod checks;
pub mod error;
pub mod expr;
pub mod field_tower;
pub mod quadform;
pub mod witt_ideal;

pub use brauer::{BrauerClass, QuaternionSymbol};
pub use checks::{run_check, Check, CheckParams, CheckRegistry, CheckReport, Verdict};
pub use error::{Error, Result};
pub use expr::{parse_expression, Expr};
pub use field_tower::{BaseField, ClassMap, FieldTower, Ordering, SquareClass};
pub use quadform::{QuadForm, WittDecomposition};
