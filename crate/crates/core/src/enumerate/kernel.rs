//! Fincke–Pohst enumeration with all arithmetic in integers.
//!
//! The positive definite form is written as
//! `Q(y) = Σ_i d_i (y_i + Σ_{j>i} m_ij y_j)²` with exact rational `d_i, m_ij`.
//! Clearing denominators per level, `t_i = M_i (y_i + Σ m_ij y_j)` is an
//! integer and `S·Q(y) = Σ W_i t_i²` with integer weights `W_i`, so pruning
//! bounds and the final norm test are exact integer comparisons.
//!
//! Level 0 is the innermost coordinate. Elimination picks the smallest
//! remaining Schur-complement diagonal first, so the outer levels carry the
//! larger diagonal factors.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact integer data for one positive definite Gram matrix.
#[derive(Clone, Debug)]
pub(crate) struct IntegerForm {
    n: usize,
    /// `order[level]` is the original coordinate enumerated at that level.
    order: Vec<usize>,
    mult: Vec<i128>,
    /// `coef[i][j]` = `M_i m_ij` for levels `j > i`.
    coef: Vec<Vec<i128>>,
    weight: Vec<i128>,
    scale: i128,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    i128::try_from(x).map_err(|_| Error::Overflow("enumeration setup"))
}

impl IntegerForm {
    /// Fails with [`Error::Indefinite`] unless `gram` is positive definite.
    pub(crate) fn new(gram: &[Vec<i64>]) -> Result<Self> {
        let n = gram.len();
        let mut a: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut order = Vec::with_capacity(n);
        let mut d = Vec::with_capacity(n);
        // mu[level][original index]
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for level in 0..n {
            let (pos, &p) = remaining
                .iter()
                .enumerate()
                .min_by(|(_, &x), (_, &y)| a[x][x].cmp(&a[y][y]).then(x.cmp(&y)))
                .expect("nonempty");
            let pivot = a[p][p].clone();
            if !pivot.is_positive() {
                return Err(Error::Indefinite);
            }
            remaining.remove(pos);
            for &j in &remaining {
                mu[level][j] = &a[p][j] / &pivot;
            }
            for &j in &remaining {
                for &k in &remaining {
                    let t = &a[j][p] * &a[p][k] / &pivot;
                    a[j][k] -= t;
                }
            }
            order.push(p);
            d.push(pivot);
        }

        let mut mult = Vec::with_capacity(n);
        let mut coef = vec![vec![0i128; n]; n];
        let mut w = Vec::with_capacity(n);
        for i in 0..n {
            let m_i = (i + 1..n).fold(BigInt::one(), |l, j| l.lcm(mu[i][order[j]].denom()));
            for j in i + 1..n {
                let c = &mu[i][order[j]] * BigRational::from_integer(m_i.clone());
                coef[i][j] = to_i128(&c.to_integer())?;
            }
            let m2 = BigRational::from_integer(&m_i * &m_i);
            w.push(&d[i] / m2);
            mult.push(to_i128(&m_i)?);
        }
        let scale = w.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let weight = w
            .iter()
            .map(|x| to_i128(&(x * BigRational::from_integer(scale.clone())).to_integer()))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegerForm {
            n,
            order,
            mult,
            coef,
            weight,
            scale: to_i128(&scale)?,
        })
    }
}

/// What to collect from the walk.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Mode {
    /// Only vectors with `Q(y)` equal to the target.
    Exact,
    /// Every nonzero vector with `Q(y) <= target`.
    UpTo,
}

pub(crate) struct Walk<'a> {
    form: &'a IntegerForm,
    modulus: i64,
    /// residues in level order
    residues: Vec<i64>,
    mode: Mode,
    budget: Option<u64>,
    pub(crate) nodes: u64,
}

impl<'a> Walk<'a> {
    /// `residues` are in original coordinate order; enumerated vectors satisfy
    /// `y ≡ residues (mod modulus)` componentwise.
    pub(crate) fn new(
        form: &'a IntegerForm,
        modulus: i64,
        residues: &[i64],
        mode: Mode,
        budget: Option<u64>,
    ) -> Self {
        let residues = form.order.iter().map(|&o| residues[o]).collect();
        Walk {
            form,
            modulus,
            residues,
            mode,
            budget,
            nodes: 0,
        }
    }

    /// Calls `visit(y, Q(y))` with `y` in original coordinate order.
    pub(crate) fn run(&mut self, target: i128, visit: &mut dyn FnMut(&[i64], i128)) -> Result<()> {
        let n = self.form.n;
        if n == 0 || target < 0 {
            return Ok(());
        }
        let bound = target
            .checked_mul(self.form.scale)
            .filter(|b| *b < (1i128 << 100))
            .ok_or(Error::Overflow("enumeration bound"))?;
        let form = self.form;
        let mut y = vec![0i64; n];
        let mut out = vec![0i64; n];
        let mut emit = |y: &[i64], scaled: i128| {
            for (level, &o) in form.order.iter().enumerate() {
                out[o] = y[level];
            }
            visit(&out, scaled / form.scale);
        };
        let ctx = Ctx {
            form,
            modulus: self.modulus,
            residues: &self.residues,
            mode: self.mode,
            bound,
            budget: self.budget,
        };
        let mut nodes = self.nodes;
        let r = ctx.level(n - 1, &mut y, bound, &mut nodes, &mut emit);
        self.nodes = nodes;
        r
    }
}

struct Ctx<'a> {
    form: &'a IntegerForm,
    modulus: i64,
    residues: &'a [i64],
    mode: Mode,
    bound: i128,
    budget: Option<u64>,
}

impl Ctx<'_> {
    fn range(&self, i: usize, rem: i128, base: i128) -> Option<(i64, i64)> {
        let w = self.form.weight[i];
        let m = self.form.mult[i];
        let s = (rem / w).sqrt();
        let lo = Integer::div_ceil(&(-s - base), &m);
        let hi = Integer::div_floor(&(s - base), &m);
        if lo > hi {
            return None;
        }
        let lo = i64::try_from(lo).ok()?;
        let hi = i64::try_from(hi).ok()?;
        let first = lo + (self.residues[i] - lo).mod_floor(&self.modulus);
        (first <= hi).then_some((first, hi))
    }

    fn base(&self, i: usize, y: &[i64]) -> i128 {
        let row = &self.form.coef[i];
        (i + 1..self.form.n).map(|j| row[j] * y[j] as i128).sum()
    }

    fn level(
        &self,
        i: usize,
        y: &mut [i64],
        rem: i128,
        nodes: &mut u64,
        emit: &mut dyn FnMut(&[i64], i128),
    ) -> Result<()> {
        *nodes += 1;
        if let Some(b) = self.budget {
            if *nodes > b {
                return Err(Error::BudgetExceeded(b));
            }
        }
        let base = self.base(i, y);
        let w = self.form.weight[i];
        let m = self.form.mult[i];
        if i == 0 {
            if let Mode::Exact = self.mode {
                return {
                    self.exact_leaf(y, rem, base, emit);
                    Ok(())
                };
            }
        }
        let Some((first, hi)) = self.range(i, rem, base) else {
            return Ok(());
        };
        let mut yi = first;
        while yi <= hi {
            let t = m * yi as i128 + base;
            let next = rem - w * t * t;
            y[i] = yi;
            if i == 0 {
                let q = self.bound - next;
                if q > 0 {
                    emit(y, q);
                }
            } else {
                self.level(i - 1, y, next, nodes, emit)?;
            }
            yi += self.modulus;
        }
        y[i] = 0;
        Ok(())
    }

    /// Innermost level when the norm must hit the target exactly: solve
    /// `W_0 t² = rem` directly instead of scanning.
    fn exact_leaf(&self, y: &mut [i64], rem: i128, base: i128, emit: &mut dyn FnMut(&[i64], i128)) {
        let w = self.form.weight[0];
        let m = self.form.mult[0];
        if rem % w != 0 {
            return;
        }
        let sq = rem / w;
        let s = sq.sqrt();
        if s * s != sq {
            return;
        }
        let candidates: &[i128] = if s == 0 { &[0] } else { &[-s, s] };
        for &t in candidates {
            let num = t - base;
            if num % m != 0 {
                continue;
            }
            let Ok(yi) = i64::try_from(num / m) else { continue };
            if (yi - self.residues[0]).mod_floor(&self.modulus) != 0 {
                continue;
            }
            y[0] = yi;
            if y.iter().any(|&c| c != 0) {
                emit(y, self.bound);
            }
        }
        y[0] = 0;
    }
}
