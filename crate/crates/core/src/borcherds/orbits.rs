//! Classes of (−2)-vectors in `Λ_g` under the stable orthogonal group.
//!
//! By the Eichler criterion a primitive vector is determined up to the
//! group by its norm, its divisibility `d` and the class of `δ/d` in the
//! discriminant group. For roots `d ∈ {1, 2}`, and a root of divisibility 2
//! gives an element `δ/2` of order 2 with `q = −1/4 mod 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{check_genus, polarized_k3_lattice};
use crate::enumerate::divisibility;
use crate::error::Result;
use crate::lattice::{discriminant, is_primitive, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCount {
    pub g: i64,
    pub divisibilities: Vec<i64>,
    pub count: usize,
}

pub fn eichler_minus2_orbits(g: i64) -> Result<OrbitCount> {
    check_genus(g)?;
    let disc = discriminant(&polarized_k3_lattice(g)?)?;
    let minus_quarter = BigRational::new(BigInt::from(3), BigInt::from(4));
    let has_two = disc
        .elements()
        .any(|a| disc.element_order(&a) == 2 && disc.q(&a) == minus_quarter);
    let divisibilities = if has_two { vec![1, 2] } else { vec![1] };
    Ok(OrbitCount {
        g,
        count: divisibilities.len(),
        divisibilities,
    })
}

/// An explicit root of divisibility 2 in `Λ_g`, when one exists.
///
/// With `e, f` spanning the first `U` and `h` generating `⟨2 − 2g⟩`, the
/// vector `2e + 2m f + h` has norm `8m + 2 − 2g`, which is −2 for
/// `m = (g − 2)/4`, and pairs evenly with everything.
pub fn divisibility_two_witness(g: i64) -> Result<Option<LatticeVector>> {
    check_genus(g)?;
    if (g - 2) % 4 != 0 {
        return Ok(None);
    }
    let l = polarized_k3_lattice(g)?;
    let mut v = LatticeVector::zero(l.rank());
    v.0[0] = 2;
    v.0[1] = (g - 2) / 2;
    v.0[l.rank() - 1] = 1;
    debug_assert_eq!(l.norm(&v)?, -2);
    Ok(Some(v))
}

/// Checks a witness against the lattice directly: primitive, norm −2, divisibility 2.
pub fn is_divisibility_two_root(g: i64, v: &LatticeVector) -> Result<bool> {
    let l = polarized_k3_lattice(g)?;
    Ok(is_primitive(&l, v)? && l.norm(v)? == -2 && divisibility(&l, v)? == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_genera() {
        let o = eichler_minus2_orbits(2).unwrap();
        assert_eq!((o.count, o.divisibilities.clone()), (2, vec![1, 2]));
        assert_eq!(eichler_minus2_orbits(3).unwrap().count, 1);
        assert_eq!(eichler_minus2_orbits(17).unwrap().count, 1);
        assert!(eichler_minus2_orbits(1).is_err());
    }

    #[test]
    fn witnesses_match_the_discriminant_test() {
        for g in 2..=30 {
            let w = divisibility_two_witness(g).unwrap();
            let count = eichler_minus2_orbits(g).unwrap().count;
            match w {
                Some(v) => {
                    assert!(is_divisibility_two_root(g, &v).unwrap(), "g={g}");
                    assert_eq!(count, 2, "g={g}");
                }
                None => assert_eq!(count, 1, "g={g}"),
            }
        }
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&eichler_minus2_orbits(3).unwrap()).unwrap();
        assert_eq!(j, r#"{"g":3,"divisibilities":[1],"count":1}"#);
    }
}
