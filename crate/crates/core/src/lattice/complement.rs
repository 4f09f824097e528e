use num_bigint::BigInt;

use super::{Lattice, LatticeVector};
use crate::error::{Error, Result};
use crate::linalg;

/// A sublattice given by basis vectors in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSublattice {
    ambient: Lattice,
    basis: Vec<LatticeVector>,
    induced: Lattice,
}

impl EmbeddedSublattice {
    /// `basis` vectors must be linearly independent in the ambient lattice.
    pub fn new(ambient: Lattice, basis: Vec<LatticeVector>) -> Result<Self> {
        for b in &basis {
            ambient.check_dim(b.len())?;
        }
        let cols: linalg::IntMatrix = (0..ambient.rank())
            .map(|r| basis.iter().map(|b| BigInt::from(b.0[r])).collect())
            .collect();
        if !basis.is_empty() && linalg::rank(&cols) != basis.len() {
            return Err(Error::InvalidInput("sublattice basis is not independent".into()));
        }
        let gram = basis
            .iter()
            .map(|u| basis.iter().map(|v| ambient.inner_int(u, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let induced = Lattice::from_gram_lenient(gram)?;
        Ok(EmbeddedSublattice {
            ambient,
            basis,
            induced,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    /// The sublattice with its induced Gram matrix `Bᵀ G B`.
    pub fn lattice(&self) -> &Lattice {
        &self.induced
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Ambient coordinates of a vector given in sublattice coordinates.
    pub fn to_ambient(&self, coords: &LatticeVector) -> Result<LatticeVector> {
        self.induced.check_dim(coords.len())?;
        let mut out = vec![0i64; self.ambient.rank()];
        for (c, b) in coords.0.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(&b.0) {
                *o = o
                    .checked_add(c.checked_mul(*x).ok_or(Error::Overflow("to_ambient"))?)
                    .ok_or(Error::Overflow("to_ambient"))?;
            }
        }
        Ok(LatticeVector(out))
    }
}

/// `{x ∈ L : (x, v) = 0 for all v in vs}` with a Hermite-normal-form basis.
///
/// Kernels of integer maps are saturated, so the result is primitive in `L`.
pub fn orthogonal_complement(l: &Lattice, vs: &[LatticeVector]) -> Result<EmbeddedSublattice> {
    let n = l.rank();
    let rows: linalg::IntMatrix = vs
        .iter()
        .map(|v| Ok(l.pairing_row(v)?.into_iter().map(BigInt::from).collect()))
        .collect::<Result<_>>()?;
    let basis = if rows.is_empty() {
        (0..n).map(|i| LatticeVector::unit(n, i)).collect()
    } else {
        let k = linalg::integer_kernel(&rows, n);
        let cols = k.first().map_or(0, Vec::len);
        (0..cols)
            .map(|c| {
                k.iter()
                    .map(|row| i64::try_from(&row[c]).map_err(|_| Error::Overflow("complement basis")))
                    .collect::<Result<Vec<_>>>()
                    .map(LatticeVector)
            })
            .collect::<Result<Vec<_>>>()?
    };
    EmbeddedSublattice::new(l.clone(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::NamedLattice;

    fn e8() -> Lattice {
        NamedLattice::E8.build().unwrap()
    }

    #[test]
    fn complement_of_zero_is_everything() {
        let c = orthogonal_complement(&e8(), &[LatticeVector::zero(8)]).unwrap();
        assert_eq!(c.rank(), 8);
        assert_eq!(c.lattice().determinant(), BigInt::from(1));
        let c = orthogonal_complement(&e8(), &[]).unwrap();
        assert_eq!(c.rank(), 8);
    }

    #[test]
    fn complement_of_a7_chain_is_minus_8() {
        let chain: Vec<_> = (0..7).map(|i| LatticeVector::unit(8, i)).collect();
        let c = orthogonal_complement(&e8(), &chain).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.lattice().gram(), &[vec![-8]]);
    }

    #[test]
    fn complement_is_orthogonal_and_has_expected_rank() {
        let l = e8();
        let v = LatticeVector(vec![1, -2, 0, 3, 1, 0, 2, -1]);
        let c = orthogonal_complement(&l, std::slice::from_ref(&v)).unwrap();
        assert_eq!(c.rank(), 7);
        for b in c.basis() {
            assert_eq!(l.inner_int(b, &v).unwrap(), 0);
        }
    }

    #[test]
    fn isotropic_complement_in_u_is_degenerate() {
        let u = NamedLattice::U.build().unwrap();
        let c = orthogonal_complement(&u, &[LatticeVector(vec![1, 0])]).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.lattice().gram(), &[vec![0]]);
    }
}
