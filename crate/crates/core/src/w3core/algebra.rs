use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::mode::{Family, Mode};
use crate::error::{Error, Result};
use crate::exact::{int, rat, LinComb, Poly, Rational};

/// Central charge `c` together with the derived `beta = 16/(22+5c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    c: Rational,
    beta: Rational,
}

impl AlgebraParams {
    pub fn new(c: Rational) -> Result<Self> {
        let denom = int(22) + int(5) * &c;
        if denom.is_zero() {
            return Err(Error::DegenerateCentralCharge);
        }
        let beta = int(16) / denom;
        Ok(Self { c, beta })
    }

    /// The main case of the engine, `c = -2`, where `beta = 4/3`.
    pub fn c_minus_two() -> Self {
        Self::new(int(-2)).expect("c = -2 is nondegenerate")
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }
}

/// A linear combination of single modes, `Lambda_m` operators and a central
/// scalar: the shape of every W3 commutator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpExpr {
    pub modes: BTreeMap<Mode, Rational>,
    pub lambdas: BTreeMap<i64, Rational>,
    pub central: Rational,
}

impl OpExpr {
    pub fn is_zero(&self) -> bool {
        self.modes.is_empty() && self.lambdas.is_empty() && self.central.is_zero()
    }

    fn push_mode(&mut self, m: Mode, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.modes.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.modes.remove(&m);
        }
    }

    fn push_lambda(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.lambdas.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.lambdas.remove(&k);
        }
    }

    pub fn scale(&self, s: &Rational) -> OpExpr {
        let mut out = OpExpr {
            central: &self.central * s,
            ..Default::default()
        };
        for (m, c) in &self.modes {
            out.push_mode(*m, c * s);
        }
        for (k, c) in &self.lambdas {
            out.push_lambda(*k, c * s);
        }
        out
    }

    pub fn add(&self, other: &OpExpr) -> OpExpr {
        let mut out = self.clone();
        out.central += &other.central;
        for (m, c) in &other.modes {
            out.push_mode(*m, c.clone());
        }
        for (k, c) in &other.lambdas {
            out.push_lambda(*k, c.clone());
        }
        out
    }

    /// Applies the expression in any representation of the mode algebra.
    pub fn apply<A: ModeAction>(&self, rep: &A, v: &LinComb<A::Basis>) -> LinComb<A::Basis> {
        let mut out = LinComb::zero();
        if !self.central.is_zero() {
            out.add_scaled_rat(v, &self.central);
        }
        for (m, c) in &self.modes {
            out.add_scaled_rat(&rep.act(*m, v), c);
        }
        for (k, c) in &self.lambdas {
            out.add_scaled_rat(&lambda_apply(rep, *k, v), c);
        }
        out
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, String)> = Vec::new();
        for (m, c) in &self.modes {
            parts.push((c.clone(), m.to_string()));
        }
        for (k, c) in &self.lambdas {
            parts.push((c.clone(), format!("Lambda({})", k)));
        }
        if !self.central.is_zero() {
            parts.push((self.central.clone(), String::new()));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, name)) in parts.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let mag = c.abs();
            if name.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                f.write_str(name)?;
            } else {
                write!(f, "{}*{}", mag, name)?;
            }
        }
        Ok(())
    }
}

/// `[a, b]` in the W3 mode algebra with the rescaled generator `Wt`:
///
/// * `[L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3-m) delta_{m,-n}`
/// * `[L_m, Wt_n] = (2m-n) Wt_{m+n}`
/// * `[Wt_m, Wt_n]` is `3/2` times the unrescaled `[W_m, W_n]`, including
///   `beta (m-n) Lambda_{m+n}` and the central term `c/360 m(m^2-1)(m^2-4)`.
pub fn commutator(a: Mode, b: Mode, p: &AlgebraParams) -> OpExpr {
    let (m, n) = (a.index, b.index);
    let mut out = OpExpr::default();
    match (a.family, b.family) {
        (Family::L, Family::L) => {
            out.push_mode(Mode::l(m + n), int(m - n));
            if m == -n {
                out.central = p.c() * rat(m * m * m - m, 12);
            }
        }
        (Family::L, Family::Wt) => out.push_mode(Mode::wt(m + n), int(2 * m - n)),
        (Family::Wt, Family::L) => out.push_mode(Mode::wt(m + n), int(-(2 * n - m))),
        (Family::Wt, Family::Wt) => {
            let three_halves = rat(3, 2);
            let l_coeff =
                int(m - n) * (rat((m + n + 3) * (m + n + 2), 15) - rat((m + 2) * (n + 2), 6));
            out.push_mode(Mode::l(m + n), &l_coeff * &three_halves);
            out.push_lambda(m + n, p.beta() * int(m - n) * &three_halves);
            if m == -n {
                let k = m * (m * m - 1) * (m * m - 4);
                out.central = p.c() * rat(k, 360) * three_halves;
            }
        }
    }
    out
}

/// A representation of the W3 mode algebra on a graded space with basis
/// `Basis`. Levels are bounded below by 0 and a mode `X_n` lowers the level
/// by `n`, which is what lets infinite sums such as `Lambda_m` truncate.
pub trait ModeAction {
    type Basis: Ord + Clone;

    fn act(&self, mode: Mode, v: &LinComb<Self::Basis>) -> LinComb<Self::Basis>;

    fn level_of(&self, b: &Self::Basis) -> i64;
}

/// `Lambda_m = sum_{n<=-2} L_n L_{m-n} + sum_{n>-2} L_{m-n} L_n
///            - 3/10 (m+2)(m+3) L_m`, applied level component by level
/// component. On a level-`N` vector only `n >= m-N` (first sum) and
/// `n <= N` (second sum) contribute.
pub fn lambda_apply<A: ModeAction>(rep: &A, m: i64, v: &LinComb<A::Basis>) -> LinComb<A::Basis> {
    let mut by_level: BTreeMap<i64, LinComb<A::Basis>> = BTreeMap::new();
    for (b, c) in v.iter() {
        by_level
            .entry(rep.level_of(b))
            .or_default()
            .add_term(b.clone(), c.clone());
    }
    let mut out = LinComb::zero();
    for (level, comp) in by_level {
        for n in (m - level)..=-2 {
            let inner = rep.act(Mode::l(m - n), &comp);
            if !inner.is_zero() {
                out.add_assign(&rep.act(Mode::l(n), &inner));
            }
        }
        for n in -1..=level {
            let inner = rep.act(Mode::l(n), &comp);
            if !inner.is_zero() {
                out.add_assign(&rep.act(Mode::l(m - n), &inner));
            }
        }
        let corr = rat(-3 * (m + 2) * (m + 3), 10);
        if !corr.is_zero() {
            out.add_scaled(&rep.act(Mode::l(m), &comp), &Poly::constant(corr));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_at_minus_two() {
        assert_eq!(AlgebraParams::c_minus_two().beta(), &rat(4, 3));
        assert_eq!(
            AlgebraParams::new(rat(-22, 5)),
            Err(Error::DegenerateCentralCharge)
        );
    }

    #[test]
    fn virasoro_examples() {
        let p = AlgebraParams::c_minus_two();
        let e = commutator(Mode::l(1), Mode::l(-1), &p);
        assert_eq!(e.to_string(), "2*L(0)");
        let e = commutator(Mode::l(2), Mode::l(-2), &p);
        assert_eq!(e.to_string(), "4*L(0) - 1");
    }

    #[test]
    fn wt_wt_central_term() {
        let p = AlgebraParams::c_minus_two();
        let e = commutator(Mode::wt(3), Mode::wt(-3), &p);
        // (3/2)(c/360) * 3*8*5 at c = -2
        assert_eq!(e.central, int(-1));
        let e = commutator(Mode::wt(2), Mode::wt(-2), &p);
        assert_eq!(e.lambdas.get(&0), Some(&(int(4) * int(2))));
    }

    #[test]
    fn l_w_mixed_is_antisymmetric() {
        let p = AlgebraParams::c_minus_two();
        for m in -3..=3 {
            for n in -3..=3 {
                let a = commutator(Mode::l(m), Mode::wt(n), &p);
                let b = commutator(Mode::wt(n), Mode::l(m), &p);
                assert!(a.add(&b).is_zero());
                let a = commutator(Mode::wt(m), Mode::wt(n), &p);
                let b = commutator(Mode::wt(n), Mode::wt(m), &p);
                assert!(a.add(&b).is_zero());
            }
        }
    }
}
