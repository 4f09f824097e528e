//! Quasi-pullback of the Borcherds form to moduli of polarized K3 surfaces.
//!
//! A primitive vector `v ∈ E8` of norm `2 − 2g` gives `K = v⊥ ∩ E8`, and the
//! quasi-pullback along `Λ_g ⊕ K = II_{2,26}` has weight `k = 12 + r/2` where
//! `r` counts the roots of `K`.

mod fixture;
mod ledger;
mod orbits;
mod report;
mod search;

pub use fixture::{tabulated_vector, tabulated_vectors, TabulatedVector, VectorSource};
pub use ledger::{heegner_ledger, Convention, FDivisorEntry, HeegnerLedger, LedgerEntry, Representative};
pub use orbits::{divisibility_two_witness, eichler_minus2_orbits, is_divisibility_two_root, OrbitCount};
pub use report::{paper_table, quasi_pullback, Crosscheck, QuasiPullbackReport};
pub use search::{search_v, Objective, SearchCandidate, SearchResult, DEFAULT_SEARCH_BUDGET};

use std::sync::Arc;

use num_rational::BigRational;

use crate::enumerate::{Enumerator, ShellCache};
use crate::error::{Error, Result};
use crate::lattice::{direct_sum, e8_chart, is_primitive, LatticeVector, NamedLattice, Lattice};
use crate::qseries::DEFAULT_PRECISION;

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(())
}

/// `Λ_g = 2U ⊕ 2E8 ⊕ ⟨2 − 2g⟩`.
pub fn polarized_k3_lattice(g: i64) -> Result<Lattice> {
    check_genus(g)?;
    let parts = [
        NamedLattice::U.build()?,
        NamedLattice::U.build()?,
        NamedLattice::E8.build()?,
        NamedLattice::E8.build()?,
        NamedLattice::Rank1(2 - 2 * g).build()?,
    ];
    Ok(direct_sum(&parts).with_label(format!("Lambda_{g}")))
}

/// `Λ_K3 = 3U ⊕ 2E8`.
pub fn k3_lattice() -> Result<Lattice> {
    let u = NamedLattice::U.build()?;
    let e8 = NamedLattice::E8.build()?;
    Ok(direct_sum(&[u.clone(), u.clone(), u, e8.clone(), e8]))
}

/// `II_{2,26} = 2U ⊕ 3E8`.
pub fn ii_2_26() -> Result<Lattice> {
    let u = NamedLattice::U.build()?;
    let e8 = NamedLattice::E8.build()?;
    Ok(direct_sum(&[u.clone(), u, e8.clone(), e8.clone(), e8]))
}

/// Validates chart coordinates of `v_g` and returns them in the E8 basis.
pub fn validate_v(g: i64, v: &[BigRational]) -> Result<LatticeVector> {
    check_genus(g)?;
    let chart = e8_chart();
    chart.check_membership(v)?;
    let basis = chart.to_basis(v)?;
    if basis.is_zero() {
        return Err(Error::ZeroVector);
    }
    let norm = crate::lattice::chart_norm(v);
    if norm != BigRational::from_integer((2 * g - 2).into()) {
        return Err(Error::WrongNorm {
            got: (-norm).to_string(),
            expected: 2 - 2 * g,
        });
    }
    let e8 = NamedLattice::E8.build()?;
    if !is_primitive(&e8, &basis)? {
        return Err(Error::NotPrimitive);
    }
    Ok(basis)
}

/// Shared settings for the pipeline operations.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub enumerator: Enumerator,
    pub precision: usize,
    pub search_budget: u64,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            enumerator: Enumerator::new(),
            precision: DEFAULT_PRECISION,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Pipeline {
    pub fn new() -> Self {
        Self::default()
    }

    /// Caps enumeration nodes per shell and the E8 shell size for `search_v`.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.enumerator = self.enumerator.with_budget(budget);
        self.search_budget = budget;
        self
    }

    pub fn with_cache(mut self, cache: Arc<ShellCache>) -> Self {
        self.enumerator = self.enumerator.with_cache(cache);
        self
    }

    pub fn with_precision(mut self, precision: usize) -> Self {
        self.precision = precision;
        self
    }
}
