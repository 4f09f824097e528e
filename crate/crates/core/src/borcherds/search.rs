//! Search over choices of `v_g` in the E8 shell of norm `2 − 2g`.
//!
//! The root count and root type of `v⊥` only depend on the `W(E8)`-orbit of
//! `v`, so it suffices to visit one vector per `W(D8)`-orbit (signed
//! permutations with an even number of sign changes) and weight it by the
//! orbit size. Candidates are deduplicated by `(r, root_type)`; distinct
//! orbits can share that invariant.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_genus, Pipeline};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::lattice::{e8_chart, render_rationals, LatticeVector, NamedLattice};
use crate::rootsys::{classify, RootSystemType};

/// Supports `2g − 2 <= 50`, where the shell has 3 780 240 vectors.
pub const DEFAULT_SEARCH_BUDGET: u64 = 4_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Minimize,
    #[default]
    Maximize,
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimize" => Ok(Objective::Minimize),
            "maximize" => Ok(Objective::Maximize),
            _ => Err(Error::InvalidInput(format!("unknown objective `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCandidate {
    pub r: u64,
    pub k: u64,
    pub n: i64,
    pub root_type: RootSystemType,
    pub v_chart: Vec<String>,
    /// Primitive shell vectors with this invariant.
    pub vectors: u64,
    /// `W(D8)`-orbits with this invariant.
    pub orbits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub g: i64,
    pub objective: Objective,
    pub shell_size: u64,
    pub primitive_vectors: u64,
    pub candidates: Vec<SearchCandidate>,
}

/// One `W(D8)`-orbit: a representative in doubled chart coordinates and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Orbit {
    pub doubled: [i64; 8],
    pub size: u64,
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// All `W(D8)`-orbits of E8 vectors with chart norm `m`.
pub(crate) fn d8_orbits(m: i64) -> Vec<Orbit> {
    let mut out = Vec::new();
    let target = 4 * m;
    // non-increasing absolute values in doubled coordinates
    let mut abs = [0i64; 8];
    fn rec(i: usize, max: i64, rem: i64, abs: &mut [i64; 8], out: &mut Vec<[i64; 8]>) {
        if i == 8 {
            if rem == 0 {
                out.push(*abs);
            }
            return;
        }
        let slots = (8 - i) as i64;
        let mut d = max.min(rem.isqrt());
        while d >= 0 {
            if d * d * slots < rem {
                break;
            }
            abs[i] = d;
            rec(i + 1, d, rem - d * d, abs, out);
            d -= 1;
        }
        abs[i] = 0;
    }
    let mut shapes = Vec::new();
    rec(0, target.isqrt(), target, &mut abs, &mut shapes);

    for a in shapes {
        let all_even = a.iter().all(|d| d % 2 == 0);
        let all_odd = a.iter().all(|d| d % 2 != 0);
        if !(all_even || all_odd) {
            continue;
        }
        let mut perms = factorial(8);
        let mut run = 1u64;
        for w in a.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                perms /= factorial(run);
                run = 1;
            }
        }
        perms /= factorial(run);
        let sum: i64 = a.iter().sum();
        if all_even {
            if (sum / 2) % 2 != 0 {
                continue;
            }
            let nonzero = a.iter().filter(|&&d| d != 0).count() as u32;
            if nonzero < 8 {
                out.push(Orbit {
                    doubled: a,
                    size: perms << nonzero,
                });
            } else {
                let mut b = a;
                b[7] = -b[7];
                out.push(Orbit { doubled: a, size: perms << 7 });
                out.push(Orbit { doubled: b, size: perms << 7 });
            }
        } else {
            // exactly one sign class has coordinate sum in 2Z
            let mut b = a;
            if sum % 4 != 0 {
                b[7] = -b[7];
            }
            out.push(Orbit { doubled: b, size: perms << 7 });
        }
    }
    out
}

/// `(r, type, representative, orbit size)` for one primitive orbit.
type Evaluated = (u64, RootSystemType, [i64; 8], u64);

fn chart_of(doubled: &[i64; 8]) -> Vec<BigRational> {
    doubled
        .iter()
        .map(|&d| BigRational::new(BigInt::from(d), BigInt::from(2)))
        .collect()
}

impl Pipeline {
    pub fn search_v(&self, g: i64, objective: Objective) -> Result<SearchResult> {
        check_genus(g)?;
        let orbits = d8_orbits(2 * g - 2);
        let shell_size: u64 = orbits.iter().map(|o| o.size).sum();
        if shell_size > self.search_budget {
            return Err(Error::BudgetExceeded(self.search_budget));
        }

        let e8 = NamedLattice::E8.build()?;
        let chart = e8_chart();
        let roots = Enumerator::new()
            .vectors_of_norm(&e8, &BigRational::from_integer((-2).into()), None)?
            .lattice_vectors()
            .expect("E8 roots are integral");
        let root_charts: Vec<[i64; 8]> = roots.iter().map(|r| chart.to_chart_doubled(r)).collect();

        let evaluated: Vec<Option<Evaluated>> = orbits
            .par_iter()
            .map(|o| {
                let basis = chart.to_basis(&chart_of(&o.doubled))?;
                if basis.content() != 1 {
                    return Ok(None);
                }
                let orth: Vec<LatticeVector> = roots
                    .iter()
                    .zip(&root_charts)
                    .filter(|(_, c)| c.iter().zip(&o.doubled).map(|(a, b)| a * b).sum::<i64>() == 0)
                    .map(|(r, _)| r.clone())
                    .collect();
                let t = classify(&e8, &orth)?;
                Ok(Some((orth.len() as u64, t, o.doubled, o.size)))
            })
            .collect::<Result<_>>()?;

        let mut classes: BTreeMap<(u64, String), SearchCandidate> = BTreeMap::new();
        let mut best_rep: BTreeMap<(u64, String), [i64; 8]> = BTreeMap::new();
        let mut primitive_vectors = 0;
        for (r, t, doubled, size) in evaluated.into_iter().flatten() {
            primitive_vectors += size;
            let key = (r, t.to_string());
            let k = 12 + r / 2;
            let entry = classes.entry(key.clone()).or_insert_with(|| SearchCandidate {
                r,
                k,
                n: k as i64 - 19,
                root_type: t,
                v_chart: Vec::new(),
                vectors: 0,
                orbits: 0,
            });
            entry.vectors += size;
            entry.orbits += 1;
            let rep = best_rep.entry(key).or_insert(doubled);
            if doubled < *rep {
                *rep = doubled;
            }
        }
        let mut candidates: Vec<SearchCandidate> = classes
            .into_iter()
            .map(|(key, mut c)| {
                c.v_chart = render_rationals(&chart_of(&best_rep[&key]));
                c
            })
            .collect();
        candidates.sort_by(|a, b| {
            let by_r = match objective {
                Objective::Minimize => a.r.cmp(&b.r),
                Objective::Maximize => b.r.cmp(&a.r),
            };
            by_r.then_with(|| a.root_type.to_string().cmp(&b.root_type.to_string()))
        });
        Ok(SearchResult {
            g,
            objective,
            shell_size,
            primitive_vectors,
            candidates,
        })
    }
}

pub fn search_v(g: i64, objective: Objective) -> Result<SearchResult> {
    Pipeline::default().search_v(g, objective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_of_int_norm;

    #[test]
    fn orbit_sizes_fill_the_shell() {
        let e8 = NamedLattice::E8.build().unwrap();
        for m in 1..=5 {
            let total: u64 = d8_orbits(2 * m).iter().map(|o| o.size).sum();
            assert_eq!(total, count_of_int_norm(&e8, -2 * m).unwrap(), "norm {}", 2 * m);
        }
    }

    #[test]
    fn g2_collapses_to_e7() {
        let s = search_v(2, Objective::Maximize).unwrap();
        assert_eq!(s.shell_size, 240);
        assert_eq!(s.candidates.len(), 1);
        assert_eq!((s.candidates[0].r, s.candidates[0].root_type.to_string()), (126, "E7".into()));
        assert_eq!(s.candidates[0].vectors, 240);
    }

    #[test]
    fn g5_and_g10_contain_published_choices() {
        let s = search_v(5, Objective::Maximize).unwrap();
        assert!(s.candidates.iter().any(|c| c.r == 56 && c.root_type.to_string() == "A7"));
        let s = search_v(10, Objective::Minimize).unwrap();
        assert!(s.candidates.iter().any(|c| c.r == 42 && c.root_type.to_string() == "A1+D5"));
        assert!(s.candidates.windows(2).all(|w| w[0].r <= w[1].r));
    }

    #[test]
    fn imprimitive_vectors_are_skipped() {
        // norm 8 contains 2·(roots), which are not primitive
        let s = search_v(5, Objective::Maximize).unwrap();
        assert_eq!(s.shell_size, 240 * 73);
        assert_eq!(s.primitive_vectors, 240 * 73 - 240);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Pipeline::default().with_budget(1000);
        assert!(matches!(p.search_v(5, Objective::Maximize), Err(Error::BudgetExceeded(1000))));
    }
}
