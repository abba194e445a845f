//! A caching oracle shared by campaign workers.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use biquad2_core::formclass::{h2_wide, ClassGroup2, FormError, DEFAULT_DISC_CAP};
use biquad2_core::genus2rank::{compute_base_units, compute_prime_columns, BaseUnits, PrimeColumns, RankError};
use biquad2_core::oracle::Oracle;
use biquad2_core::quadunits::{fundamental_unit, FundamentalUnit, UnitError};

struct Table<K, V>(RwLock<HashMap<K, Arc<V>>>);

impl<K: Eq + Hash + Clone, V> Table<K, V> {
    fn new() -> Self {
        Table(RwLock::new(HashMap::new()))
    }

    fn get_or<E>(&self, key: &K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.0.read().expect("memo lock").get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        Ok(self.0.write().expect("memo lock").entry(key.clone()).or_insert(v).clone())
    }

    fn len(&self) -> usize {
        self.0.read().expect("memo lock").len()
    }
}

/// Memoizes units, class groups and the rank-formula inputs. Errors are not
/// cached.
pub struct MemoOracle {
    pub disc_cap: u64,
    units: Table<u64, FundamentalUnit>,
    groups: Table<u64, ClassGroup2>,
    bases: Table<Vec<u64>, BaseUnits>,
    columns: Table<(Vec<u64>, u64), PrimeColumns>,
}

impl MemoOracle {
    pub fn new(disc_cap: u64) -> Self {
        MemoOracle { disc_cap, units: Table::new(), groups: Table::new(), bases: Table::new(), columns: Table::new() }
    }

    /// Entries held in the unit and class group tables.
    pub fn sizes(&self) -> (usize, usize) {
        (self.units.len(), self.groups.len())
    }
}

impl Default for MemoOracle {
    fn default() -> Self {
        MemoOracle::new(DEFAULT_DISC_CAP)
    }
}

impl Oracle for MemoOracle {
    fn unit(&self, d: u64) -> Result<Arc<FundamentalUnit>, UnitError> {
        self.units.get_or(&d, || fundamental_unit(d))
    }

    fn class_group(&self, d: u64) -> Result<Arc<ClassGroup2>, FormError> {
        self.groups.get_or(&d, || h2_wide(d, self.disc_cap))
    }

    fn base_units(&self, base: &[u64]) -> Result<Arc<BaseUnits>, RankError> {
        self.bases.get_or(&base.to_vec(), || compute_base_units(self, base))
    }

    fn prime_columns(&self, base: &[u64], p: u64) -> Result<Arc<PrimeColumns>, RankError> {
        let units = self.base_units(base)?;
        self.columns.get_or(&(base.to_vec(), p), || compute_prime_columns(&units, p))
    }
}
