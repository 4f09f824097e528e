//! Randomized kernel-versus-oracle agreement and the golden table check.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::borcherds::Pipeline;
use crate::enumerate::{brute_force_oracle_capped, Enumerator};
use crate::error::{Error, Result};
use crate::lattice::{discriminant, Definiteness, Lattice, RationalVector};

pub const EXPECTED_R: [u64; 21] = [
    126, 84, 74, 56, 60, 46, 44, 42, 42, 32, 42, 32, 32, 30, 28, 26, 30, 24, 26, 24, 26,
];
pub const EXPECTED_N: [i64; 21] = [56, 35, 30, 21, 23, 16, 15, 14, 14, 9, 14, 9, 9, 8, 7, 6, 8, 5, 6, 5, 6];

pub const DEFAULT_CASES: usize = 200;
pub const DEFAULT_SEED: u64 = 0x5eed_2026;
const ORACLE_BOX_CAP: u128 = 2_000_000;

/// One shell compared between the kernel and the box scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCase {
    pub gram: Vec<Vec<i64>>,
    pub norm: String,
    pub shift: Option<Vec<String>>,
    pub kernel: u64,
    pub oracle: u64,
}

impl OracleCase {
    pub fn agrees(&self) -> bool {
        self.kernel == self.oracle
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestSummary {
    pub lattices: usize,
    pub shells: usize,
    pub shells_agreeing: usize,
    pub golden_rows: usize,
    pub golden_passed: usize,
    pub failures: Vec<String>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random definite Gram matrix with entries in `[−6, 6]` and rank `1..=5`.
pub fn random_definite_gram(rng: &mut impl Rng) -> Lattice {
    loop {
        let n = rng.gen_range(1..=5);
        let bound = rng.gen_range(0..=6);
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -rng.gen_range(1..=6);
            for j in 0..i {
                let x = rng.gen_range(-bound..=bound);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let Ok(l) = Lattice::from_gram(g) else { continue };
        if let Ok(Some(Definiteness::Negative)) = l.definiteness() {
            return l;
        }
    }
}

/// Shells checked for one lattice: norms −2, −4, −6 on `L`, and two norms on
/// a random nonzero coset of `L∨/L` when there is one.
fn shells_for(l: &Lattice, rng: &mut impl Rng) -> Result<Vec<(BigRational, Option<RationalVector>)>> {
    let mut out: Vec<(BigRational, Option<RationalVector>)> = [-2, -4, -6]
        .into_iter()
        .map(|n| (BigRational::from_integer(n.into()), None))
        .collect();
    let d = discriminant(l)?;
    if d.order() > 1 {
        let idx = rng.gen_range(1..d.order());
        let a: Vec<i64> = d.elements().nth(idx as usize).expect("index below order");
        let q = d.q(&a);
        let s = d.element_vector(&a);
        for j in 0..2 {
            // coset norms are ≡ 2q mod 2
            let n = BigRational::from_integer(BigInt::from(-2 * (j + 1))) + &q * BigInt::from(2);
            out.push((n, Some(s.clone())));
        }
    }
    Ok(out)
}

/// Runs `cases` distinct random lattices through both counters. Repeats and
/// lattices whose box scan would be too large are redrawn.
pub fn oracle_cases(cases: usize, seed: u64) -> Result<Vec<OracleCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let en = Enumerator::new();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    while seen.len() < cases {
        let l = random_definite_gram(&mut rng);
        if seen.contains(l.gram()) {
            continue;
        }
        let shells = shells_for(&l, &mut rng)?;
        let mut batch = Vec::new();
        let mut too_large = false;
        for (n, s) in &shells {
            let oracle = match brute_force_oracle_capped(&l, n, s.as_ref(), None, ORACLE_BOX_CAP) {
                Ok(c) => c,
                Err(Error::BoxTooLarge(_)) => {
                    too_large = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            let kernel = en.count_of_norm(&l, n, s.as_ref())?;
            batch.push(OracleCase {
                gram: l.gram().to_vec(),
                norm: n.to_string(),
                shift: s.as_ref().map(RationalVector::to_strings),
                kernel,
                oracle,
            });
        }
        if too_large {
            continue;
        }
        out.extend(batch);
        seen.insert(l.gram().to_vec());
    }
    Ok(out)
}

pub fn run_selftest(pipeline: &Pipeline, cases: usize, seed: u64) -> Result<SelftestSummary> {
    let mut summary = SelftestSummary {
        lattices: cases,
        ..Default::default()
    };
    for c in oracle_cases(cases, seed)? {
        summary.shells += 1;
        if c.agrees() {
            summary.shells_agreeing += 1;
        } else {
            summary.failures.push(format!(
                "oracle mismatch: gram {:?} norm {} shift {:?}: kernel {} oracle {}",
                c.gram, c.norm, c.shift, c.kernel, c.oracle
            ));
        }
    }
    for (i, rep) in pipeline.paper_table()?.iter().enumerate() {
        summary.golden_rows += 1;
        let ok = rep.r == EXPECTED_R[i] && rep.n == EXPECTED_N[i] && rep.crosscheck.passed;
        if ok {
            summary.golden_passed += 1;
        } else {
            summary.failures.push(format!(
                "golden row g={}: r={} n={} crosscheck={}",
                rep.g, rep.r, rep.n, rep.crosscheck.passed
            ));
        }
    }
    Ok(summary)
}
