//! ADE classification of finite sets of (−2)-vectors.
//!
//! Components are the classes of the "not orthogonal" relation. Each
//! component is identified by its rank and root count, which separate all
//! irreducible ADE systems up to rank 8 apart from D3 = A3.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// One irreducible component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidInput(format!("no root system {family:?}{rank}")));
        }
        Ok(Component { family, rank })
    }

    pub fn root_count(&self) -> u64 {
        let n = self.rank as u64;
        match (self.family, self.rank) {
            (Family::A, _) => n * (n + 1),
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
        }
    }

    /// The irreducible type with this rank and root count, if any.
    pub fn identify(rank: usize, count: u64) -> Option<Self> {
        let candidates = [
            Component::new(Family::A, rank),
            Component::new(Family::D, rank),
            Component::new(Family::E, rank),
        ];
        // A is tried first, so 12 roots in rank 3 come out as A3
        candidates
            .into_iter()
            .flatten()
            .find(|c| c.root_count() == count)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad root system component {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Component::new(family, rank)
    }
}

/// Orthogonal sum of irreducible ADE systems, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    components: Vec<Component>,
}

impl RootSystemType {
    pub fn new(mut components: Vec<Component>) -> Self {
        components.sort();
        RootSystemType { components }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_roots(&self) -> u64 {
        self.components.iter().map(Component::root_count).sum()
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

pub fn expected_root_count(t: &RootSystemType) -> u64 {
    t.total_roots()
}

/// `"A1+A2+D5"`; the empty system renders as `""`.
impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split('+')
            .map(|p| p.trim().parse())
            .collect::<Result<Vec<Component>>>()?;
        Ok(Self::new(parts))
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootSystemType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A classified component together with the indices of its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedComponent {
    pub component: Component,
    pub roots: Vec<usize>,
}

/// Splits `roots` into irreducible components, ordered like the sorted type.
pub fn decompose(l: &Lattice, roots: &[LatticeVector]) -> Result<Vec<ClassifiedComponent>> {
    for v in roots {
        let n = l.norm(v)?;
        if n != -2 {
            return Err(Error::WrongNorm {
                got: n.to_string(),
                expected: -2,
            });
        }
    }
    let rows: Vec<Vec<i64>> = roots.iter().map(|v| l.pairing_row(v)).collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..roots.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let ip: i64 = rows[i].iter().zip(&roots[j].0).map(|(a, b)| a * b).sum();
            if ip != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..roots.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::with_capacity(groups.len());
    for idx in groups.into_values() {
        let matrix: linalg::IntMatrix = (0..l.rank())
            .map(|k| idx.iter().map(|&i| roots[i].0[k].into()).collect())
            .collect();
        let rank = linalg::rank(&matrix);
        let count = idx.len() as u64;
        let component = Component::identify(rank, count).ok_or_else(|| {
            Error::Consistency(format!("{count} roots of rank {rank} form no ADE system"))
        })?;
        out.push(ClassifiedComponent { component, roots: idx });
    }
    out.sort_by(|a, b| a.component.cmp(&b.component).then(a.roots.cmp(&b.roots)));
    Ok(out)
}

/// ADE type of a complete set of roots (closed under negation).
pub fn classify(l: &Lattice, roots: &[LatticeVector]) -> Result<RootSystemType> {
    Ok(RootSystemType::new(
        decompose(l, roots)?.into_iter().map(|c| c.component).collect(),
    ))
}
