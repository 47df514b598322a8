use num_rational::BigRational;
use num_traits::Zero;

use super::BaseDomain;
use crate::lattice::{QSpan, ZLattice};

/// A `D`-submodule of `k`: finitely generated (lattice or line), or one of
/// the sentinels `{0}` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtDModule {
    Zero,
    Full,
    /// Nonzero f.g. module over an integer-kind `D`.
    Lattice(ZLattice),
    /// Proper nonzero subspace when `D` is a field.
    Span(QSpan),
}

impl ExtDModule {
    pub fn is_zero(&self) -> bool {
        matches!(self, ExtDModule::Zero)
    }

    pub fn is_full(&self) -> bool {
        matches!(self, ExtDModule::Full)
    }

    /// Neither sentinel.
    pub fn is_proper(&self) -> bool {
        !self.is_zero() && !self.is_full()
    }

    pub(crate) fn contains_in(&self, dom: &BaseDomain, coords: &[BigRational]) -> bool {
        match self {
            ExtDModule::Zero => coords.iter().all(Zero::is_zero),
            ExtDModule::Full => true,
            ExtDModule::Lattice(l) => l.dim() == dom.dim() && l.contains(coords),
            ExtDModule::Span(s) => s.dim() == dom.dim() && s.contains(coords),
        }
    }

    /// Whether the representation is compatible with `dom`.
    pub fn fits(&self, dom: &BaseDomain) -> bool {
        match self {
            ExtDModule::Zero | ExtDModule::Full => true,
            ExtDModule::Lattice(l) => !dom.is_field() && l.dim() == dom.dim(),
            ExtDModule::Span(s) => dom.is_field() && s.dim() == dom.dim(),
        }
    }
}
