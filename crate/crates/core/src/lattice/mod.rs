//! Integral lattices given by a basis and an integer Gram matrix.
//!
//! Root lattices are built negative definite, so roots have norm −2.

mod complement;
mod discriminant;
mod e8;

pub use complement::{orthogonal_complement, EmbeddedSublattice};
pub use discriminant::{discriminant, DiscriminantData, GroupElement};
pub use e8::{chart_norm, e8_chart, parse_rationals, render_rationals, E8Chart};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// A finite-rank lattice: basis plus symmetric integer Gram matrix.
///
/// Lattices built with [`Lattice::from_gram`] and the named constructors are
/// nondegenerate. [`Lattice::from_gram_lenient`] also admits degenerate forms,
/// which arise as complements of isotropic vectors in indefinite lattices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    label: Option<String>,
    even: bool,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    rank: usize,
    gram: Vec<Vec<i64>>,
    label: Option<String>,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = Error;

    fn try_from(r: LatticeRepr) -> Result<Self> {
        if r.gram.len() != r.rank {
            return Err(Error::DimensionMismatch {
                expected: r.rank,
                got: r.gram.len(),
            });
        }
        let l = Lattice::from_gram_lenient(r.gram)?;
        Ok(match r.label {
            Some(s) => l.with_label(s),
            None => l,
        })
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr {
            rank: l.rank(),
            gram: l.gram,
            label: l.label,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
}

impl Definiteness {
    pub fn name(self) -> &'static str {
        match self {
            Definiteness::Positive => "positive",
            Definiteness::Negative => "negative",
        }
    }
}

impl Lattice {
    /// Checks symmetry and nondegeneracy.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self> {
        let l = Self::from_gram_lenient(gram)?;
        if l.rank() > 0 && l.determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(l)
    }

    /// Checks symmetry only.
    pub fn from_gram_lenient(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let even = (0..n).all(|i| gram[i][i] % 2 == 0);
        Ok(Lattice {
            gram,
            label: None,
            even,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&linalg::to_big(&self.gram))
    }

    /// `(p, q)`: numbers of positive and negative eigenvalues, computed by
    /// exact rational diagonalization.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let (p, q, z) = linalg::inertia(&linalg::to_big(&self.gram));
        if z > 0 {
            return Err(Error::Degenerate);
        }
        Ok((p, q))
    }

    pub fn definiteness(&self) -> Result<Option<Definiteness>> {
        let (p, q) = self.signature()?;
        let n = self.rank();
        Ok(if n > 0 && p == n {
            Some(Definiteness::Positive)
        } else if n > 0 && q == n {
            Some(Definiteness::Negative)
        } else {
            None
        })
    }

    /// Same lattice with the form multiplied by `-1`.
    pub fn negated(&self) -> Lattice {
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        Lattice {
            gram,
            label: self.label.as_ref().map(|l| format!("{l}(-1)")),
            even: self.even,
        }
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<i64> {
        self.inner_int(v, v)
    }

    /// Integer pairing of two lattice vectors.
    pub fn inner_int(&self, u: &LatticeVector, v: &LatticeVector) -> Result<i64> {
        self.check_dim(u.len())?;
        self.check_dim(v.len())?;
        let mut acc: i128 = 0;
        for (i, row) in self.gram.iter().enumerate() {
            if u.0[i] == 0 {
                continue;
            }
            let gv: i128 = row
                .iter()
                .zip(&v.0)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum();
            acc += u.0[i] as i128 * gv;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("inner product"))
    }

    /// `G v` for a lattice vector; the functional `x ↦ (x, v)`.
    pub fn pairing_row(&self, v: &LatticeVector) -> Result<Vec<i64>> {
        self.check_dim(v.len())?;
        self.gram
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(&v.0).map(|(&a, &b)| a as i128 * b as i128).sum();
                i64::try_from(s).map_err(|_| Error::Overflow("pairing"))
            })
            .collect()
    }

    /// Whether a rational vector lies in the dual lattice, i.e. `G σ` is integral.
    pub fn contains_dual(&self, s: &RationalVector) -> Result<bool> {
        self.check_dim(s.len())?;
        Ok(self.gram.iter().all(|row| {
            let x: BigRational = row
                .iter()
                .zip(&s.0)
                .map(|(&a, b)| b * BigInt::from(a))
                .sum();
            x.is_integer()
        }))
    }

    pub(crate) fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }
}

/// Integer coordinates in a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1)
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }
}

/// Exact rational coordinates, used for dual-lattice and coset elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zero(rank: usize) -> Self {
        RationalVector(vec![BigRational::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::from(1), |l, x| l.lcm(x.denom()))
    }

    /// Representative of `self + Z^n` with every coordinate in `[0, 1)`.
    pub fn reduced_mod_lattice(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x - x.floor()).collect())
    }

    pub fn neg(&self) -> Self {
        RationalVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// Integer coordinates if integral and small enough.
    pub fn to_lattice_vector(&self) -> Option<LatticeVector> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    i64::try_from(x.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `uᵀ G v` over the rationals.
pub fn inner(l: &Lattice, u: &RationalVector, v: &RationalVector) -> Result<BigRational> {
    l.check_dim(u.len())?;
    l.check_dim(v.len())?;
    let mut acc = BigRational::zero();
    for (i, row) in l.gram.iter().enumerate() {
        if u.0[i].is_zero() {
            continue;
        }
        let gv: BigRational = row
            .iter()
            .zip(&v.0)
            .filter(|(_, b)| !b.is_zero())
            .map(|(&a, b)| b * BigInt::from(a))
            .sum();
        acc += &u.0[i] * gv;
    }
    Ok(acc)
}

/// Primitive means the coordinate gcd is 1.
pub fn is_primitive(l: &Lattice, v: &LatticeVector) -> Result<bool> {
    l.check_dim(v.len())?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.content().abs() == 1)
}

/// Block-diagonal sum. The empty sum is the rank-0 lattice.
pub fn direct_sum(parts: &[Lattice]) -> Lattice {
    let n: usize = parts.iter().map(Lattice::rank).sum();
    let mut gram = vec![vec![0i64; n]; n];
    let mut off = 0;
    for p in parts {
        for (i, row) in p.gram.iter().enumerate() {
            gram[off + i][off..off + p.rank()].copy_from_slice(row);
        }
        off += p.rank();
    }
    let label = if parts.is_empty() || parts.iter().any(|p| p.label.is_none()) {
        None
    } else {
        Some(
            parts
                .iter()
                .filter_map(|p| p.label.as_deref())
                .collect::<Vec<_>>()
                .join("+"),
        )
    };
    Lattice {
        even: parts.iter().all(|p| p.even),
        gram,
        label,
    }
}

/// Standard lattices. ADE types are negative definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedLattice {
    U,
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Rank1(i64),
}

impl FromStr for NamedLattice {
    type Err = Error;

    /// Accepts `U`, `A7`, `D5`, `E6`..`E8`, `<m>` and `rank1(m)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnknownLattice(s.to_string());
        if t == "U" {
            return Ok(NamedLattice::U);
        }
        let rank1 = t
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .or_else(|| t.strip_prefix("rank1(").and_then(|r| r.strip_suffix(')')));
        if let Some(m) = rank1 {
            return m.trim().parse().map(NamedLattice::Rank1).map_err(|_| bad());
        }
        let (head, tail) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match (head, n) {
            ("A", n) => Ok(NamedLattice::A(n)),
            ("D", n) => Ok(NamedLattice::D(n)),
            ("E", 6) => Ok(NamedLattice::E6),
            ("E", 7) => Ok(NamedLattice::E7),
            ("E", 8) => Ok(NamedLattice::E8),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedLattice::U => write!(f, "U"),
            NamedLattice::A(n) => write!(f, "A{n}"),
            NamedLattice::D(n) => write!(f, "D{n}"),
            NamedLattice::E6 => write!(f, "E6"),
            NamedLattice::E7 => write!(f, "E7"),
            NamedLattice::E8 => write!(f, "E8"),
            NamedLattice::Rank1(m) => write!(f, "<{m}>"),
        }
    }
}

/// Negative Cartan matrix of a simply-laced Dynkin diagram.
fn from_dynkin(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(a, b) in edges {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    g
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

impl NamedLattice {
    pub fn build(self) -> Result<Lattice> {
        let gram = match self {
            NamedLattice::U => vec![vec![0, 1], vec![1, 0]],
            NamedLattice::A(n) if n >= 1 => from_dynkin(n, &chain(n)),
            NamedLattice::D(2) => from_dynkin(2, &[]),
            NamedLattice::D(n) if n >= 3 => {
                // chain 0..n-2 with node n-1 attached to node n-3
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                from_dynkin(n, &e)
            }
            NamedLattice::E6 | NamedLattice::E7 | NamedLattice::E8 => {
                let n = match self {
                    NamedLattice::E6 => 6,
                    NamedLattice::E7 => 7,
                    _ => 8,
                };
                // chain of n-1 nodes, node n attached to node n-3 (1-based);
                // for E8 this is δ1..δ7 with δ8 on δ5.
                let mut e = chain(n - 1);
                e.push((n - 4, n - 1));
                from_dynkin(n, &e)
            }
            NamedLattice::Rank1(m) if m != 0 => vec![vec![m]],
            NamedLattice::Rank1(_) => {
                return Err(Error::InvalidParameter("rank-1 lattice needs m != 0".into()))
            }
            NamedLattice::A(n) | NamedLattice::D(n) => {
                return Err(Error::InvalidParameter(format!("{self} needs a larger rank (got {n})")))
            }
        };
        Ok(Lattice::from_gram(gram)?.with_label(self.to_string()))
    }
}

/// Build a standard lattice from its name and an optional integer parameter,
/// e.g. `("A", Some(7))`, `("E8", None)`, `("rank1", Some(-2))`.
pub fn make_named(name: &str, param: Option<i64>) -> Result<Lattice> {
    let named = match (name, param) {
        ("rank1", Some(m)) => NamedLattice::Rank1(m),
        ("A", Some(n)) | ("D", Some(n)) => {
            let n = usize::try_from(n)
                .map_err(|_| Error::InvalidParameter(format!("rank {n} is negative")))?;
            if name == "A" {
                NamedLattice::A(n)
            } else {
                NamedLattice::D(n)
            }
        }
        (other, None) => other.parse()?,
        (other, Some(_)) => return Err(Error::UnknownLattice(other.to_string())),
    };
    named.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn named(s: &str) -> Lattice {
        s.parse::<NamedLattice>().unwrap().build().unwrap()
    }

    #[test]
    fn ade_determinants() {
        // |det| of A_n is n+1, D_n is 4, E6 3, E7 2, E8 1
        for n in 1..=8 {
            assert_eq!(named(&format!("A{n}")).determinant().abs(), BigInt::from(n + 1));
        }
        for n in 2..=8 {
            assert_eq!(named(&format!("D{n}")).determinant().abs(), BigInt::from(4));
        }
        assert_eq!(named("E6").determinant().abs(), BigInt::from(3));
        assert_eq!(named("E7").determinant().abs(), BigInt::from(2));
        assert_eq!(named("E8").determinant(), BigInt::from(1));
        assert!(named("E8").is_even());
        assert_eq!(named("E8").rank(), 8);
    }

    #[test]
    fn make_named_forms() {
        let l = make_named("rank1", Some(-2)).unwrap();
        assert_eq!(l.gram(), &[vec![-2]]);
        assert_eq!(make_named("A", Some(7)).unwrap().determinant().abs(), BigInt::from(8));
        assert!(matches!(make_named("rank1", Some(0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_named("F4", None), Err(Error::UnknownLattice(_))));
        assert!(matches!("A0".parse::<NamedLattice>().unwrap().build(), Err(Error::InvalidParameter(_))));
        assert_eq!("<-8>".parse::<NamedLattice>().unwrap(), NamedLattice::Rank1(-8));
    }

    #[test]
    fn direct_sums() {
        let empty = direct_sum(&[]);
        assert_eq!(empty.rank(), 0);
        let g = 5;
        let parts = [named("U"), named("U"), named("E8"), named("E8"), NamedLattice::Rank1(2 - 2 * g).build().unwrap()];
        let l = direct_sum(&parts);
        assert_eq!(l.rank(), 21);
        assert_eq!(l.signature().unwrap(), (2, 19));
        assert_eq!(l.determinant().abs(), BigInt::from(8));
        let ii = direct_sum(&[named("U"), named("U"), named("E8"), named("E8"), named("E8")]);
        assert_eq!(ii.rank(), 28);
        assert_eq!(ii.determinant().abs(), BigInt::from(1));
        assert_eq!(ii.signature().unwrap(), (2, 26));
    }

    #[test]
    fn signatures() {
        assert_eq!(named("U").signature().unwrap(), (1, 1));
        assert_eq!(named("E8").signature().unwrap(), (0, 8));
        let degenerate = Lattice::from_gram_lenient(vec![vec![0]]).unwrap();
        assert_eq!(degenerate.signature(), Err(Error::Degenerate));
        assert_eq!(Lattice::from_gram(vec![vec![1, 1], vec![1, 1]]), Err(Error::Degenerate));
        assert_eq!(Lattice::from_gram(vec![vec![1, 2], vec![1, 1]]), Err(Error::NotSymmetric));
    }

    #[test]
    fn inner_products() {
        let e8 = named("E8");
        for i in 0..8 {
            let d = LatticeVector::unit(8, i).to_rational();
            assert_eq!(inner(&e8, &d, &d).unwrap(), BigRational::from_integer((-2).into()));
        }
        let zero = RationalVector::zero(8);
        let v = LatticeVector(vec![1, 2, 3, 4, 5, 6, 7, 8]).to_rational();
        assert!(inner(&e8, &zero, &v).unwrap().is_zero());
        let r = NamedLattice::Rank1(-8).build().unwrap();
        let e = LatticeVector::unit(1, 0).to_rational();
        assert_eq!(inner(&r, &e, &e).unwrap(), BigRational::from_integer((-8).into()));
        assert!(matches!(inner(&r, &zero, &e), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn primitivity() {
        let e8 = named("E8");
        let root = LatticeVector::unit(8, 3);
        assert!(is_primitive(&e8, &root).unwrap());
        assert!(!is_primitive(&e8, &root.scaled(2)).unwrap());
        assert_eq!(is_primitive(&e8, &LatticeVector::zero(8)), Err(Error::ZeroVector));
    }

    #[test]
    fn json_roundtrip() {
        let l = named("A2");
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"rank":2,"gram":[[-2,1],[1,-2]],"label":"A2"}"#);
        let back: Lattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Lattice>(r#"{"rank":2,"gram":[[1,2],[3,4]],"label":null}"#).is_err());
    }
}
