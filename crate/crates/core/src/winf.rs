//! The central extension of the Lie algebra of differential operators on the
//! circle, `t^r f(D)` with `D = t d/dt`, and the central-charge and
//! labelling bookkeeping for its `c = -1` vacuum algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{binomial, int, rat, Rational};
use crate::zhu::weight_from_alpha_rat;

/// A polynomial in `D` with rational coefficients, lowest degree first and
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DPoly(Vec<Rational>);

impl DPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DPoly(coeffs)
    }

    pub fn zero() -> Self {
        DPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `D^k`.
    pub fn power(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        DPoly(c)
    }

    /// `D(D-1)...(D-l+1)`.
    pub fn falling(l: usize) -> Self {
        (0..l).fold(DPoly::constant(int(1)), |acc, i| {
            acc.mul(&DPoly::new(vec![int(-(i as i64)), int(1)]))
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &DPoly) -> DPoly {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        DPoly::new((0..n).map(|i| get(&self.0, i) + get(&other.0, i)).collect())
    }

    pub fn scale(&self, s: &Rational) -> DPoly {
        DPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &DPoly) -> DPoly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &DPoly) -> DPoly {
        if self.is_zero() || other.is_zero() {
            return DPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DPoly::new(out)
    }

    /// `f(D + s)`.
    pub fn shift(&self, s: i64) -> DPoly {
        let mut out = vec![Rational::zero(); self.0.len()];
        let s = int(s);
        for (i, c) in self.0.iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += c * binomial(i as i64, k as i64) * s.pow((i - k) as i32);
            }
        }
        DPoly::new(out)
    }

    /// Coefficients in the falling factorial basis `D(D-1)...(D-l+1)`,
    /// from forward differences at 0.
    pub fn falling_coeffs(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut diffs: Vec<Rational> = (0..=deg).map(|x| self.eval(&int(x as i64))).collect();
        let mut out = Vec::with_capacity(deg + 1);
        let mut fact = Rational::one();
        for l in 0..=deg {
            if l > 0 {
                fact *= int(l as i64);
            }
            out.push(&diffs[0] / &fact);
            for i in 0..diffs.len() - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
            diffs.pop();
        }
        out
    }

    pub fn from_falling_coeffs(coeffs: &[Rational]) -> DPoly {
        coeffs
            .iter()
            .enumerate()
            .fold(DPoly::zero(), |acc, (l, c)| {
                acc.add(&DPoly::falling(l).scale(c))
            })
    }
}

impl fmt::Display for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{}", i),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", mag)?,
                (false, true) => f.write_str(&var)?,
                (false, false) => write!(f, "{}*{}", mag, var)?,
            }
        }
        Ok(())
    }
}

/// `sum_r t^r p_r(D) + central * C`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOp {
    pub terms: BTreeMap<i64, DPoly>,
    pub central: Rational,
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `t^r f(D)`.
    pub fn graded(r: i64, f: DPoly) -> Self {
        let mut op = Self::zero();
        op.add_graded(r, &f);
        op
    }

    pub fn central(c: Rational) -> Self {
        DiffOp {
            terms: BTreeMap::new(),
            central: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    fn add_graded(&mut self, r: i64, f: &DPoly) {
        let sum = self.terms.get(&r).map_or_else(|| f.clone(), |g| g.add(f));
        if sum.is_zero() {
            self.terms.remove(&r);
        } else {
            self.terms.insert(r, sum);
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (r, f) in &other.terms {
            out.add_graded(*r, f);
        }
        out.central += &other.central;
        out
    }

    pub fn scale(&self, s: &Rational) -> DiffOp {
        let mut out = DiffOp::central(&self.central * s);
        for (r, f) in &self.terms {
            out.add_graded(*r, &f.scale(s));
        }
        out
    }

    pub fn grades(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, p)| format!("t^{}*({})", r, p))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("{}*C", self.central));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `Psi(t^r f, t^s g)`: for `r = -s >= 0` the sum of `f(j) g(j+r)` over
/// `-r <= j <= -1`; for `r = -s < 0` fixed by antisymmetry; otherwise 0.
fn cocycle_graded(r: i64, f: &DPoly, s: i64, g: &DPoly) -> Rational {
    if r + s != 0 {
        return Rational::zero();
    }
    if r < 0 {
        return -cocycle_graded(s, g, r, f);
    }
    (-r..=-1)
        .map(|j| f.eval(&int(j)) * g.eval(&int(j + r)))
        .fold(Rational::zero(), |a, b| a + b)
}

pub fn cocycle(x: &DiffOp, y: &DiffOp) -> Rational {
    let mut out = Rational::zero();
    for (r, f) in &x.terms {
        if let Some(g) = y.terms.get(&-r) {
            out += cocycle_graded(*r, f, -r, g);
        }
    }
    out
}

/// `[t^r f(D), t^s g(D)] = t^{r+s} (f(D+s) g(D) - f(D) g(D+r)) + Psi C`,
/// extended bilinearly; `C` is central.
pub fn bracket(x: &DiffOp, y: &DiffOp) -> DiffOp {
    let mut out = DiffOp::central(cocycle(x, y));
    for (r, f) in &x.terms {
        for (s, g) in &y.terms {
            let p = f.shift(*s).mul(g).sub(&f.mul(&g.shift(*r)));
            out.add_graded(r + s, &p);
        }
    }
    out
}

/// `J^l_k = -t^k D(D-1)...(D-l+1)`.
pub fn basis_j(l: usize, k: i64) -> DiffOp {
    DiffOp::graded(k, DPoly::falling(l).scale(&int(-1)))
}

/// `L^l_k = -t^k D^l`.
pub fn basis_l(l: usize, k: i64) -> DiffOp {
    DiffOp::graded(k, DPoly::power(l).scale(&int(-1)))
}

/// Coordinates `(l, k) -> coefficient` of the non-central part in the
/// `L^l_k` basis.
pub fn l_coords(x: &DiffOp) -> BTreeMap<(usize, i64), Rational> {
    let mut out = BTreeMap::new();
    for (k, p) in &x.terms {
        for (l, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert((l, *k), -c.clone());
            }
        }
    }
    out
}

/// Coordinates of the non-central part in the `J^l_k` basis.
pub fn j_coords(x: &DiffOp) -> BTreeMap<(usize, i64), Rational> {
    let mut out = BTreeMap::new();
    for (k, p) in &x.terms {
        for (l, c) in p.falling_coeffs().into_iter().enumerate() {
            if !c.is_zero() {
                out.insert((l, *k), -c);
            }
        }
    }
    out
}

pub fn from_l_coords(coords: &BTreeMap<(usize, i64), Rational>) -> DiffOp {
    coords.iter().fold(DiffOp::zero(), |acc, (&(l, k), c)| {
        acc.add(&basis_l(l, k).scale(c))
    })
}

pub fn from_j_coords(coords: &BTreeMap<(usize, i64), Rational>) -> DiffOp {
    coords.iter().fold(DiffOp::zero(), |acc, (&(l, k), c)| {
        acc.add(&basis_j(l, k).scale(c))
    })
}

/// Drinfeld-Sokolov central charge of `W_n` from `sl_n` at level `k`:
/// `2n^3 - n - 1 - n(n^2-1)(1/(k+n) + k + n)`.
pub fn dsr_central_charge(n: i64, k: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let x = k + int(n);
    if x.is_zero() {
        return Err(Error::Pole(n));
    }
    Ok(int(2 * n * n * n - n - 1) - int(n * (n * n - 1)) * (x.recip() + &x))
}

/// Label of an irreducible module of the `c = -1` vacuum algebra: `alpha`
/// for the W3 factor (normalized so `alpha != 1`) and the Heisenberg charge
/// `s`, together with the W3 highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleLabel {
    pub alpha: Rational,
    pub s: Rational,
    pub t: Rational,
    pub w: Rational,
}

pub fn classify(alpha: &Rational, s: &Rational) -> Result<ModuleLabel> {
    if alpha.is_one() {
        return Err(Error::ExcludedLabel);
    }
    let (t, w) = weight_from_alpha_rat(alpha);
    Ok(ModuleLabel {
        alpha: alpha.clone(),
        s: s.clone(),
        t,
        w,
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// A random element with up to three graded pieces of grade `|r| <=
/// max_grade` and degree `<= max_deg`, plus a random central part.
pub fn random_diffop(rng: &mut ChaCha8Rng, max_grade: i64, max_deg: usize) -> DiffOp {
    let mut op = DiffOp::central(random_rational(rng));
    for _ in 0..rng.gen_range(1..=3) {
        let r = rng.gen_range(-max_grade..=max_grade);
        let deg = rng.gen_range(0..=max_deg);
        let coeffs = (0..=deg).map(|_| random_rational(rng)).collect();
        op.add_graded(r, &DPoly::new(coeffs));
    }
    op
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub samples: usize,
    pub seed: u64,
    pub antisymmetry_failures: usize,
    pub jacobi_failures: usize,
    pub grading_failures: usize,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.antisymmetry_failures == 0 && self.jacobi_failures == 0 && self.grading_failures == 0
    }
}

fn homogeneous_pieces(x: &DiffOp) -> Vec<(i64, DiffOp)> {
    x.terms
        .iter()
        .map(|(r, f)| (*r, DiffOp::graded(*r, f.clone())))
        .collect()
}

/// Checks antisymmetry, the Jacobi identity (with the cocycle) and the
/// grading on `samples` seeded random triples.
pub fn check_jacobi(samples: usize, seed: u64, max_grade: i64, max_deg: usize) -> JacobiReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = JacobiReport {
        samples,
        seed,
        antisymmetry_failures: 0,
        jacobi_failures: 0,
        grading_failures: 0,
    };
    for _ in 0..samples {
        let x = random_diffop(&mut rng, max_grade, max_deg);
        let y = random_diffop(&mut rng, max_grade, max_deg);
        let z = random_diffop(&mut rng, max_grade, max_deg);
        if !bracket(&x, &y).add(&bracket(&y, &x)).is_zero() {
            report.antisymmetry_failures += 1;
        }
        let cyclic = bracket(&bracket(&x, &y), &z)
            .add(&bracket(&bracket(&y, &z), &x))
            .add(&bracket(&bracket(&z, &x), &y));
        if !cyclic.is_zero() {
            report.jacobi_failures += 1;
        }
        for (r, a) in homogeneous_pieces(&x) {
            for (s, b) in homogeneous_pieces(&y) {
                let c = bracket(&a, &b);
                let graded_ok = c.terms.keys().all(|&g| g == r + s);
                let central_ok = r + s == 0 || c.central.is_zero();
                if !(graded_ok && central_ok) {
                    report.grading_failures += 1;
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> DPoly {
        DPoly::constant(int(1))
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(&DiffOp::graded(1, one()), &DiffOp::graded(-1, one()));
        assert_eq!(b, DiffOp::central(int(1)));
        let x = DiffOp::graded(0, DPoly::power(1));
        let y = DiffOp::graded(0, DPoly::power(2));
        assert!(bracket(&x, &y).is_zero());
        assert!(bracket(&x, &x).is_zero());
    }

    #[test]
    fn cocycle_examples() {
        assert_eq!(
            cocycle(&DiffOp::graded(2, one()), &DiffOp::graded(-2, one())),
            int(2)
        );
        assert_eq!(
            cocycle(&DiffOp::graded(-2, one()), &DiffOp::graded(2, one())),
            int(-2)
        );
        let d = DPoly::power(1);
        assert_eq!(
            cocycle(
                &DiffOp::graded(1, d.clone()),
                &DiffOp::graded(-1, d.clone())
            ),
            int(0)
        );
        assert_eq!(
            cocycle(&DiffOp::graded(1, d.clone()), &DiffOp::graded(2, d)),
            int(0)
        );
    }

    #[test]
    fn j_and_l_bases() {
        assert_eq!(basis_j(0, 3), basis_l(0, 3));
        assert_eq!(basis_j(1, 0), basis_l(1, 0));
        let expected = basis_l(2, 0)
            .scale(&int(1))
            .add(&basis_l(1, 0).scale(&int(-1)));
        assert_eq!(basis_j(2, 0), expected);
    }

    #[test]
    fn shift_matches_evaluation() {
        let f = DPoly::new(vec![int(1), int(-2), rat(1, 2), int(3)]);
        for s in -3..=3 {
            for x in -3..=3 {
                assert_eq!(f.shift(s).eval(&int(x)), f.eval(&int(x + s)));
            }
        }
    }

    #[test]
    fn central_charges() {
        assert_eq!(dsr_central_charge(3, &rat(-3, 2)).unwrap(), int(-2));
        assert_eq!(dsr_central_charge(3, &rat(-7, 3)).unwrap(), int(-2));
        assert_eq!(dsr_central_charge(3, &rat(-7, 2)).unwrap(), int(110));
        assert_eq!(dsr_central_charge(3, &int(-3)), Err(Error::Pole(3)));
        assert_eq!(dsr_central_charge(1, &int(0)), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn display() {
        let f = DPoly::new(vec![int(3), int(0), rat(-1, 2)]);
        assert_eq!(f.to_string(), "-1/2*D^2 + 3");
        assert_eq!(basis_l(1, 2).to_string(), "t^2*(-D)");
    }

    #[test]
    fn labels() {
        assert_eq!(classify(&int(1), &int(0)), Err(Error::ExcludedLabel));
        let l = classify(&int(2), &rat(1, 3)).unwrap();
        assert_eq!((l.t, l.w, l.s), (int(1), int(1), rat(1, 3)));
    }

    #[test]
    fn small_jacobi_run() {
        let r = check_jacobi(20, 7, 4, 4);
        assert!(r.ok(), "{:?}", r);
    }
}
