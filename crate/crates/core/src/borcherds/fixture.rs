//! The published choices of `v_g` for `g = 2..22`, stored as data.

use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::lattice::parse_rationals;

const TABULATED_VECTORS_JSON: &str = include_str!("../../data/tabulated_vectors.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorSource {
    /// Coordinates printed with the computation.
    Explicit,
    /// Given only as the complement of a Dynkin sub-diagram; the stored
    /// vector is the fundamental weight of the removed node.
    Reconstructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabulatedVector {
    pub g: i64,
    pub v: Vec<String>,
    pub source: VectorSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed_node: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_vg: Option<u64>,
}

impl TabulatedVector {
    pub fn chart(&self) -> Vec<BigRational> {
        parse_rationals(&self.v.join(",")).expect("fixture coordinates parse")
    }
}

pub fn tabulated_vectors() -> &'static [TabulatedVector] {
    static DATA: OnceLock<Vec<TabulatedVector>> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(TABULATED_VECTORS_JSON).expect("fixture is valid JSON"))
}

pub fn tabulated_vector(g: i64) -> Option<&'static TabulatedVector> {
    tabulated_vectors().iter().find(|p| p.g == g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::chart_norm;

    #[test]
    fn fixture_covers_range_with_right_norms() {
        let all = tabulated_vectors();
        assert_eq!(all.len(), 21);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.g, i as i64 + 2);
            assert_eq!(chart_norm(&p.chart()), BigRational::from_integer((2 * p.g - 2).into()));
            assert_eq!(p.source == VectorSource::Reconstructed, p.removed_node.is_some());
        }
        let dims: Vec<_> = all.iter().filter_map(|p| p.dim_vg.map(|d| (p.g, d))).collect();
        assert_eq!(dims, vec![(3, 35), (4, 30), (5, 21), (6, 23), (7, 16), (8, 15), (9, 14), (10, 14)]);
        assert!(tabulated_vector(23).is_none());
    }
}
