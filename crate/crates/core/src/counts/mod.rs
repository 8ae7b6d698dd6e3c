//! Counting formulas for planar tight maps and for general maps (slicings).
//!
//! Inputs are boundary lengths `d_i = 2 m_i`; a zero length is a marked vertex.

mod index;
mod slices;
mod slicings;
mod symmetric;
mod tight;
mod volume;

pub use index::{fixed_pair_choices, index_family, index_set, IndexVariant, QuasiIndexTuple};
pub use slices::{decorated_tree_count, slice_identities_check};
pub use slicings::{
    four_odd_slicings, slicings, slicings_from_tight, subst_a, subst_b,
    substitution_identities_check, tight_from_slicings,
};
pub use symmetric::{gennonbip, pifin, piinter, transmutation_check};
pub use tight::{
    count_tight, count_tight_bipartite, count_tight_general, count_tight_method,
    count_tight_quasibipartite, pointed_rooted_count, tight_lines, Method,
};
pub use volume::volume_poly;

use crate::error::Error;
use crate::numeric::HalfInt;

/// Boundary lengths, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySpec {
    lengths: Vec<u32>,
}

impl BoundarySpec {
    pub fn new(lengths: Vec<u32>) -> Result<Self, Error> {
        if lengths.iter().all(|&d| d == 0) {
            return Err(Error::AllZero);
        }
        Ok(BoundarySpec { lengths })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn odd_count(&self) -> usize {
        self.lengths.iter().filter(|&&d| d % 2 == 1).count()
    }

    /// The half-integers `m_i = d_i / 2`.
    pub fn ms(&self) -> Vec<HalfInt> {
        self.lengths
            .iter()
            .map(|&d| HalfInt::from_length(d))
            .collect()
    }

    fn require_n(&self, min: usize) -> Result<(), Error> {
        if self.n() < min {
            return Err(Error::TooFewBoundaries { min, got: self.n() });
        }
        Ok(())
    }
}

/// Lengths `2 m_i` for a list of half-integers.
pub fn lengths_of(ms: &[HalfInt]) -> Vec<u32> {
    ms.iter()
        .map(|m| u32::try_from(m.twice()).expect("nonnegative half-integer"))
        .collect()
}
