//! Divisibility-2 roots in `Λ_g`, checked by direct pairing with the basis.

use bll_core::borcherds::{divisibility_two_witness, eichler_minus2_orbits, polarized_k3_lattice};
use bll_core::lattice::LatticeVector;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

#[test]
fn witness_pairs_evenly_with_every_basis_vector() {
    for g in (2..=62).filter(|g| g % 4 == 2) {
        let l = polarized_k3_lattice(g).unwrap();
        let w = divisibility_two_witness(g).unwrap().expect("witness for g = 2 mod 4");
        assert_eq!(l.norm(&w).unwrap(), -2, "g={g}");
        let div = (0..l.rank())
            .map(|i| l.inner_int(&w, &LatticeVector::unit(l.rank(), i)).unwrap())
            .fold(0, gcd);
        assert_eq!(div, 2, "g={g}");
        assert_eq!(eichler_minus2_orbits(g).unwrap().count, 2, "g={g}");
    }
}

#[test]
fn no_witness_off_the_residue_class() {
    for g in (3..=62).filter(|g| g % 4 != 2) {
        assert!(divisibility_two_witness(g).unwrap().is_none(), "g={g}");
        let c = eichler_minus2_orbits(g).unwrap();
        assert_eq!((c.count, c.divisibilities.as_slice()), (1, &[1][..]), "g={g}");
    }
}
