//! Heegner multiplicity ledgers `{(λ, x) ↦ c_λ(−1 − x)}` on the discriminant
//! group of `K_g`.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{validate_v, Pipeline};
use crate::error::{Error, Result};
use crate::lattice::{discriminant, e8_chart, orthogonal_complement, render_rationals, DiscriminantData, GroupElement, NamedLattice};

/// Sign convention for `q(λ)` when reading `λ ∈ K∨/K`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `q` is the discriminant form of `K` itself.
    #[default]
    Complement,
    /// `q` is the discriminant form of `Λ_g`, which is `−q_K` under the
    /// gluing anti-isometry `K∨/K ≅ Λ_g∨/Λ_g`.
    Polarized,
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complement" => Ok(Convention::Complement),
            "polarized" => Ok(Convention::Polarized),
            _ => Err(Error::InvalidInput(format!(
                "unknown convention `{s}` (expected complement or polarized)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub lambda: GroupElement,
    pub q_lambda: String,
    pub x: String,
    pub multiplicity: u64,
}

/// Component `c_λ(−x) H(λ, x − 1)` of the divisor of `F(g)`; the first entry
/// is `H = H(0, −1)` with multiplicity 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FDivisorEntry {
    pub lambda: GroupElement,
    pub x: String,
    pub heegner_x: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegnerLedger {
    pub g: i64,
    pub v_chart: Vec<String>,
    pub entries: Vec<LedgerEntry>,
    pub f_divisor_entries: Vec<FDivisorEntry>,
}

/// Which member of `{λ, −λ}` is used to count the coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representative {
    Canonical,
    Negated,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl Pipeline {
    pub fn heegner_ledger(&self, g: i64, v: &[BigRational], convention: Convention) -> Result<HeegnerLedger> {
        self.heegner_ledger_with(g, v, convention, Representative::Canonical)
    }

    /// Same ledger, counting each coset through the chosen representative.
    pub fn heegner_ledger_with(
        &self,
        g: i64,
        v: &[BigRational],
        convention: Convention,
        rep: Representative,
    ) -> Result<HeegnerLedger> {
        let basis = validate_v(g, v)?;
        let e8 = NamedLattice::E8.build()?;
        let k_sub = orthogonal_complement(&e8, std::slice::from_ref(&basis))?;
        let k_lat = k_sub.lattice();
        let disc = discriminant(k_lat)?;

        // c_0(−1) is the root count of K
        let minus_two = BigRational::from_integer((-2).into());
        let c0 = self.coset_count(&disc, &disc.zero(), &-BigRational::one(), rep)?;
        let roots = self.enumerator.vectors_of_norm(k_lat, &minus_two, None)?.count();
        if c0 != roots {
            return Err(Error::Consistency(format!("c_0(-1) = {c0} but K has {roots} roots")));
        }

        let mut entries = Vec::new();
        let mut f_entries = vec![FDivisorEntry {
            lambda: disc.zero(),
            x: "0".into(),
            heegner_x: "-1".into(),
            multiplicity: 1,
        }];
        for lambda in canonical_nonzero(&disc) {
            let q_k = disc.q(&lambda);
            let q = match convention {
                Convention::Complement => q_k.clone(),
                Convention::Polarized => frac(&-q_k),
            };
            if q.is_zero() {
                // no x with x ≡ 0 lies strictly inside (−1, 0)
                continue;
            }
            let x = &q - BigRational::one();
            let y = -BigRational::one() - &x;
            let count = self.coset_count(&disc, &lambda, &y, rep)?;
            if count == 0 {
                continue;
            }
            entries.push(LedgerEntry {
                lambda: lambda.clone(),
                q_lambda: q.to_string(),
                x: x.to_string(),
                multiplicity: count,
            });
            // x_f = x + 1 ∈ (0, 1) and c_λ(−x_f) = c_λ(−1 − x)
            f_entries.push(FDivisorEntry {
                lambda,
                x: q.to_string(),
                heegner_x: x.to_string(),
                multiplicity: count,
            });
        }
        Ok(HeegnerLedger {
            g,
            v_chart: render_rationals(&e8_chart().to_chart(&basis)),
            entries,
            f_divisor_entries: f_entries,
        })
    }

    /// `c_λ(y)` for `K = v⊥ ∩ E8`, with `λ` in invariant-factor coordinates.
    pub fn c_lambda(&self, g: i64, v: &[BigRational], lambda: &[i64], y: &BigRational) -> Result<u64> {
        let basis = validate_v(g, v)?;
        let k_sub = orthogonal_complement(&NamedLattice::E8.build()?, &[basis])?;
        let disc = discriminant(k_sub.lattice())?;
        if lambda.len() != disc.invariant_factors().len() {
            return Err(Error::DimensionMismatch {
                expected: disc.invariant_factors().len(),
                got: lambda.len(),
            });
        }
        self.coset_count(&disc, lambda, y, Representative::Canonical)
    }

    /// `c_λ(y)`: vectors of `K + λ` with `(v, v) = 2y`.
    fn coset_count(&self, disc: &DiscriminantData, lambda: &[i64], y: &BigRational, rep: Representative) -> Result<u64> {
        let elem = match rep {
            Representative::Canonical => lambda.to_vec(),
            Representative::Negated => disc.neg(lambda),
        };
        let shift = disc.element_vector(&elem);
        let two = BigRational::from_integer(2.into());
        self.enumerator.count_of_norm(disc.lattice(), &(y * two), Some(&shift))
    }
}

/// Nonzero elements of `A/±1`, each as its canonical representative.
fn canonical_nonzero(d: &DiscriminantData) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = d
        .elements()
        .filter(|a| a.iter().any(|&x| x != 0))
        .filter(|a| d.canonical_pm(a) == *a)
        .collect();
    out.sort();
    out
}

pub fn heegner_ledger(g: i64, v: &[BigRational], convention: Convention) -> Result<HeegnerLedger> {
    Pipeline::default().heegner_ledger(g, v, convention)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse_rationals;

    fn v(s: &str) -> Vec<BigRational> {
        parse_rationals(s).unwrap()
    }

    #[test]
    fn g2_complement_ledger_is_empty() {
        let l = heegner_ledger(2, &v("1,1,0,0,0,0,0,0"), Convention::Complement).unwrap();
        assert!(l.entries.is_empty());
        assert_eq!(l.f_divisor_entries.len(), 1);
        assert_eq!(l.f_divisor_entries[0].heegner_x, "-1");
        assert_eq!(l.f_divisor_entries[0].multiplicity, 1);
    }

    #[test]
    fn g2_polarized_ledger() {
        let l = heegner_ledger(2, &v("1,1,0,0,0,0,0,0"), Convention::Polarized).unwrap();
        assert_eq!(l.entries.len(), 1);
        let e = &l.entries[0];
        assert_eq!((e.q_lambda.as_str(), e.x.as_str(), e.multiplicity), ("3/4", "-1/4", 56));
    }

    #[test]
    fn well_formed_and_sign_invariant() {
        let p = Pipeline::default();
        for (g, s) in [(6, "3,1,0,0,0,0,0,0"), (9, "3,1,1,1,1,1,1,1"), (10, "4,1,1,0,0,0,0,0")] {
            for conv in [Convention::Complement, Convention::Polarized] {
                let a = p.heegner_ledger_with(g, &v(s), conv, Representative::Canonical).unwrap();
                let b = p.heegner_ledger_with(g, &v(s), conv, Representative::Negated).unwrap();
                assert_eq!(a, b);
                for e in &a.entries {
                    assert!(e.multiplicity > 0);
                    assert!(e.lambda.iter().any(|&c| c != 0));
                    let x: BigRational = e.x.parse().unwrap();
                    let q: BigRational = e.q_lambda.parse().unwrap();
                    assert!(x > -BigRational::one() && x < BigRational::zero());
                    assert!((x - q).is_integer());
                }
                assert_eq!(a.f_divisor_entries.len(), a.entries.len() + 1);
            }
        }
    }

    #[test]
    fn convention_parse() {
        assert_eq!("polarized".parse::<Convention>().unwrap(), Convention::Polarized);
        assert!("other".parse::<Convention>().is_err());
    }
}
