//! Interchangeable index algorithms, selectable by name.

use super::BrauerClass;
use crate::error::{Error, Result};
use crate::field_tower::BaseField;

pub trait IndexStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// `log₂ ind(α)`.
    fn index_log2(&self, class: &BrauerClass) -> Result<u32>;
}

/// Residue recursion over the tower; works for every base.
pub struct RamificationIndex;

impl IndexStrategy for RamificationIndex {
    fn name(&self) -> &'static str {
        "ramification"
    }

    fn description(&self) -> &'static str {
        "peel off the top variable and recurse on the residue class"
    }

    fn index_log2(&self, class: &BrauerClass) -> Result<u32> {
        Ok(class.index_log2())
    }
}

/// Rank of the alternating matrix of `{t_i, t_j}` coefficients; quadratically closed bases only.
pub struct AlternatingRankIndex;

impl IndexStrategy for AlternatingRankIndex {
    fn name(&self) -> &'static str {
        "alternating"
    }

    fn description(&self) -> &'static str {
        "half the GF(2) rank of the alternating symbol matrix (quadratically closed base)"
    }

    fn index_log2(&self, class: &BrauerClass) -> Result<u32> {
        alternating_rank(class).map(|r| r / 2)
    }
}

pub fn index_strategies() -> Vec<Box<dyn IndexStrategy>> {
    vec![Box::new(RamificationIndex), Box::new(AlternatingRankIndex)]
}

pub fn index_strategy(name: &str) -> Result<Box<dyn IndexStrategy>> {
    index_strategies().into_iter().find(|s| s.name() == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Over `C((t1))...((tn))`, `Br₂` is the space of alternating `n × n` matrices over
/// GF(2) and `ind = 2^(rank/2)`.
pub fn index_oracle_quadclosed(class: &BrauerClass) -> Result<u64> {
    alternating_rank(class).map(|r| 1 << (r / 2))
}

fn alternating_rank(class: &BrauerClass) -> Result<u32> {
    let field = class.field();
    if field.base() != BaseField::QuadClosed {
        return Err(Error::UnsupportedBase(format!(
            "{}: alternating oracle needs a quadratically closed base",
            field.base()
        )));
    }
    let n = field.depth();
    let mut rows = vec![0u64; n];
    for &(a, b) in class.symbols() {
        for i in 0..n {
            for j in 0..n {
                // {t_i, t_i} = {t_i, -1} = 0 since -1 is a square
                if i != j && a.has_generator(i) && b.has_generator(j) {
                    rows[i] ^= 1 << j;
                    rows[j] ^= 1 << i;
                }
            }
        }
    }
    Ok(gf2_rank(rows))
}

fn gf2_rank(mut rows: Vec<u64>) -> u32 {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else { continue };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank as u32
}
