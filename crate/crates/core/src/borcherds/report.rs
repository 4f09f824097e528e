use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fixture, validate_v, Pipeline};
use crate::error::{Error, Result};
use crate::lattice::{discriminant, e8_chart, orthogonal_complement, render_rationals, EmbeddedSublattice, NamedLattice};
use crate::qseries::theta_over_delta;
use crate::rootsys::{classify, expected_root_count, RootSystemType};

/// Constant term of `Θ_{K(−1)}/Δ` against `2k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub q0: i64,
    pub two_k: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPullbackReport {
    pub g: i64,
    pub v_chart: Vec<String>,
    pub v_basis: Vec<i64>,
    #[serde(rename = "gram_K")]
    pub gram_k: Vec<Vec<i64>>,
    pub r: u64,
    pub k: u64,
    pub n: i64,
    pub root_type: RootSystemType,
    pub is_cusp: bool,
    pub disc_order: u64,
    pub crosscheck: Crosscheck,
    /// Dimension of the representation `V_g`, for the tabulated `v_g` with `3 <= g <= 10`.
    #[serde(skip)]
    pub dim_vg: Option<u64>,
}

impl QuasiPullbackReport {
    /// Per-component root counts in the order of `root_type`.
    pub fn component_root_counts(&self) -> Vec<u64> {
        self.root_type.components().iter().map(|c| c.root_count()).collect()
    }
}

impl Pipeline {
    /// The complement `K = v⊥ ∩ E8` of a validated `v_g`.
    pub fn complement(&self, g: i64, v: &[BigRational]) -> Result<EmbeddedSublattice> {
        let basis = validate_v(g, v)?;
        orthogonal_complement(&NamedLattice::E8.build()?, &[basis])
    }

    pub fn quasi_pullback(&self, g: i64, v: &[BigRational]) -> Result<QuasiPullbackReport> {
        let basis = validate_v(g, v)?;
        let e8 = NamedLattice::E8.build()?;
        let k_sub = orthogonal_complement(&e8, std::slice::from_ref(&basis))?;
        let k_lat = k_sub.lattice();

        let minus_two = BigRational::from_integer((-2).into());
        let shell = self.enumerator.vectors_of_norm(k_lat, &minus_two, None)?;
        let roots = shell
            .lattice_vectors()
            .ok_or_else(|| Error::Consistency("root shell of K is not integral".into()))?;
        let r = roots.len() as u64;
        let root_type = classify(k_lat, &roots)?;
        if expected_root_count(&root_type) != r {
            return Err(Error::Consistency(format!("type {root_type} does not account for {r} roots")));
        }

        let disc_order = discriminant(k_lat)?.order();
        if disc_order != (2 * g - 2) as u64 {
            return Err(Error::Consistency(format!(
                "discriminant of K has order {disc_order}, expected {}",
                2 * g - 2
            )));
        }

        let k = 12 + r / 2;
        let series = theta_over_delta(&self.enumerator, k_lat, self.precision)?;
        let q0 = series
            .coefficient(0)
            .and_then(|c| c.to_i64())
            .ok_or(Error::Overflow("constant term"))?;
        let crosscheck = Crosscheck {
            q0,
            two_k: 2 * k,
            passed: BigInt::from(q0) == BigInt::from(2 * k),
        };

        let chart = e8_chart().to_chart(&basis);
        let dim_vg = fixture::tabulated_vector(g)
            .filter(|p| p.chart() == chart)
            .and_then(|p| p.dim_vg);
        Ok(QuasiPullbackReport {
            g,
            v_chart: render_rationals(&chart),
            v_basis: basis.0,
            gram_k: k_lat.gram().to_vec(),
            r,
            k,
            n: k as i64 - 19,
            root_type,
            is_cusp: r > 0,
            disc_order,
            crosscheck,
            dim_vg,
        })
    }

    /// Reports for the stored `v_g`, `g = 2..22`, in order of `g`.
    pub fn paper_table(&self) -> Result<Vec<QuasiPullbackReport>> {
        fixture::tabulated_vectors()
            .par_iter()
            .map(|p| self.quasi_pullback(p.g, &p.chart()))
            .collect()
    }
}

pub fn quasi_pullback(g: i64, v: &[BigRational]) -> Result<QuasiPullbackReport> {
    Pipeline::default().quasi_pullback(g, v)
}

pub fn paper_table() -> Result<Vec<QuasiPullbackReport>> {
    Pipeline::default().paper_table()
}
