//! Access to quadratic-field data. Every higher layer asks an oracle for
//! fundamental units and 2-class groups so that a caller can put a cache in
//! front of the exact computations.

use alloc::sync::Arc;

use crate::formclass::{h2_wide, ClassGroup2, FormError, DEFAULT_DISC_CAP};
use crate::genus2rank::{self, BaseUnits, PrimeColumns, RankError};
use crate::quadunits::{fundamental_unit, FundamentalUnit, UnitError};

pub trait Oracle: Sync {
    fn unit(&self, d: u64) -> Result<Arc<FundamentalUnit>, UnitError>;

    fn class_group(&self, d: u64) -> Result<Arc<ClassGroup2>, FormError>;

    fn h2(&self, d: u64) -> Result<u64, FormError> {
        Ok(self.class_group(d)?.h2())
    }

    /// Unit generators of a base field given by its radicands.
    fn base_units(&self, base: &[u64]) -> Result<Arc<BaseUnits>, RankError> {
        genus2rank::compute_base_units(self, base).map(Arc::new)
    }

    /// Symbols of the base units at the primes above p.
    fn prime_columns(&self, base: &[u64], p: u64) -> Result<Arc<PrimeColumns>, RankError> {
        let units = self.base_units(base)?;
        genus2rank::compute_prime_columns(&units, p).map(Arc::new)
    }
}

/// Recomputes everything on each call.
#[derive(Debug, Clone, Copy)]
pub struct Direct {
    pub disc_cap: u64,
}

impl Default for Direct {
    fn default() -> Self {
        Direct { disc_cap: DEFAULT_DISC_CAP }
    }
}

impl Oracle for Direct {
    fn unit(&self, d: u64) -> Result<Arc<FundamentalUnit>, UnitError> {
        fundamental_unit(d).map(Arc::new)
    }

    fn class_group(&self, d: u64) -> Result<Arc<ClassGroup2>, FormError> {
        h2_wide(d, self.disc_cap).map(Arc::new)
    }
}
