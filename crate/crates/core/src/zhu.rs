//! Zhu's products on the vacuum module and the reduction of vacuum vectors
//! to polynomials in `t = [L_{-2}|0>]` and `w = [Wt_{-3}|0>]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{binomial, int, rat, LinComb, Poly, Rational, Var};
use crate::w3core::{Family, Mode, Monomial, StateVector, W3Module};

/// A class in the Zhu algebra, as a polynomial in `t` and `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhuElement {
    pub value: Poly,
}

impl ZhuElement {
    pub fn new(value: Poly) -> Self {
        Self { value }
    }
}

impl fmt::Display for ZhuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// The principal ideal generated by `f(t, w) = w^2 - 1/9 t^2 (8t + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveIdeal {
    pub generator: Poly,
}

/// `8/9 t^3 + 1/9 t^2`, the value of `w^2` modulo the curve.
fn w_squared_rule() -> Poly {
    let t = Poly::var(Var::T);
    t.pow(3).scale(&rat(8, 9)) + t.pow(2).scale(&rat(1, 9))
}

pub fn curve_poly() -> CurveIdeal {
    CurveIdeal {
        generator: Poly::var(Var::W).pow(2) - w_squared_rule(),
    }
}

/// Reduces `p` modulo the curve ideal: every `w^2` is replaced by
/// `8/9 t^3 + 1/9 t^2`, leaving `w`-degree at most 1.
pub fn quotient_normal_form(p: &ZhuElement) -> ZhuElement {
    let rule = w_squared_rule();
    let mut out = Poly::zero();
    for (exps, c) in p.value.terms() {
        let mut rest = *exps;
        let w_exp = rest[Var::W.index()];
        rest[Var::W.index()] = w_exp % 2;
        out += &(Poly::monomial(rest, c.clone()) * rule.pow(w_exp / 2));
    }
    ZhuElement::new(out)
}

/// `(t, w) = (1/2 alpha(alpha-1), 1/6 alpha(alpha-1)(2 alpha-1))`.
pub fn weight_from_alpha(alpha: &Poly) -> (Poly, Poly) {
    let one = Poly::one();
    let a1 = alpha.clone() - one.clone();
    let base = alpha.clone() * a1;
    let t = base.scale(&rat(1, 2));
    let w = (base * (alpha.scale(&int(2)) - one)).scale(&rat(1, 6));
    (t, w)
}

pub fn weight_from_alpha_rat(alpha: &Rational) -> (Rational, Rational) {
    let (t, w) = weight_from_alpha(&Poly::constant(alpha.clone()));
    let value = |p: Poly| {
        p.as_constant()
            .expect("constant input gives constant weight")
    };
    (value(t), value(w))
}

/// `1 - alpha`: the other parameter with the same `t`.
pub fn iso_partner(alpha: &Rational) -> Rational {
    Rational::one() - alpha
}

/// Rewriting order used by the reduction. Both must give the same class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Peel the leftmost mode with operator equivalences modulo `O(V)`.
    LeftmostPeel,
    /// Split `g y` as `x * y` minus lower modes of `x = g|0>`.
    StarExpansion,
}

pub struct Zhu {
    module: W3Module,
    cache: RwLock<HashMap<(Strategy, Monomial), Poly>>,
}

impl Zhu {
    pub fn new(module: W3Module) -> Result<Self> {
        if !module.is_vacuum() {
            return Err(Error::InvalidArgument(
                "the Zhu map is defined on the vacuum module".into(),
            ));
        }
        Ok(Self {
            module,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn module(&self) -> &W3Module {
        &self.module
    }

    fn check(&self, v: &StateVector) -> Result<()> {
        if v.tag() != self.module.tag() {
            return Err(Error::ModuleMismatch);
        }
        Ok(())
    }

    pub fn reduce(&self, v: &StateVector) -> Result<ZhuElement> {
        self.reduce_with(v, Strategy::LeftmostPeel)
    }

    pub fn reduce_with(&self, v: &StateVector, strategy: Strategy) -> Result<ZhuElement> {
        self.check(v)?;
        Ok(ZhuElement::new(self.reduce_lc(v.terms(), strategy)))
    }

    fn reduce_lc(&self, v: &LinComb<Monomial>, s: Strategy) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in v.iter() {
            out += &(c.clone() * self.reduce_monomial(m, s));
        }
        out
    }

    fn reduce_monomial(&self, m: &Monomial, s: Strategy) -> Poly {
        let key = (s, m.clone());
        if let Some(p) = self.cache.read().expect("cache lock").get(&key) {
            return p.clone();
        }
        let p = match s {
            Strategy::LeftmostPeel => self.peel(m),
            Strategy::StarExpansion => self.star_expand(m),
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, p.clone());
        p
    }

    fn apply(&self, g: Mode, y: &Monomial) -> LinComb<Monomial> {
        self.module.apply_lc(g, &LinComb::single(y.clone()))
    }

    fn peel(&self, m: &Monomial) -> Poly {
        let Some((&g, rest)) = m.modes().split_first() else {
            return Poly::one();
        };
        let y = Monomial(rest.to_vec());
        let wy = Poly::from_int(y.level());
        let t = Poly::var(Var::T);
        let s = Strategy::LeftmostPeel;
        let wt_y = |k: i64| self.reduce_lc(&self.apply(Mode::wt(k), &y), s);
        match (g.family, -g.index) {
            (Family::L, 1) => -wy * self.reduce_monomial(&y, s),
            (Family::L, 2) => (t + wy) * self.reduce_monomial(&y, s),
            (Family::L, n) if n >= 3 => {
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                (t.scale(&int(n - 1)) + wy).scale(&sign) * self.reduce_monomial(&y, s)
            }
            (Family::Wt, 3) => {
                Poly::var(Var::W) * self.reduce_monomial(&y, s) - wt_y(-2).scale(&int(2)) - wt_y(-1)
            }
            (Family::Wt, n) if n >= 4 => {
                -(wt_y(-n + 1).scale(&int(3)) + wt_y(-n + 2).scale(&int(3)) + wt_y(-n + 3))
            }
            _ => self.reduce_lc(&self.apply(g, &y), s),
        }
    }

    fn star_expand(&self, m: &Monomial) -> Poly {
        let Some((&g, rest)) = m.modes().split_first() else {
            return Poly::one();
        };
        let s = Strategy::StarExpansion;
        if !self.module.is_creation(g) {
            let y = Monomial(rest.to_vec());
            return self.reduce_lc(&self.apply(g, &y), s);
        }
        let x = Monomial(vec![g]);
        if rest.is_empty() {
            return self.generator_class(g);
        }
        let y = LinComb::single(Monomial(rest.to_vec()));
        let wt_x = x.level();
        let mut out = self.reduce_monomial(&x, s) * self.reduce_lc(&y, s);
        for j in 1..=wt_x {
            let lower = self.module.field_mode(&x, j - 1, &y);
            out -= &self.reduce_lc(&lower, s).scale(&binomial(wt_x, j));
        }
        out
    }

    /// `[L_{-n}|0>]` and `[Wt_{-n}|0>]` from `(L_{-1} + L_0) a ~ 0`.
    fn generator_class(&self, g: Mode) -> Poly {
        let n = -g.index;
        match g.family {
            Family::L if n == 2 => Poly::var(Var::T),
            Family::L => self
                .generator_class(Mode::l(-(n - 1)))
                .scale(&rat(-(n - 1), n - 2)),
            Family::Wt if n == 3 => Poly::var(Var::W),
            Family::Wt => self
                .generator_class(Mode::wt(-(n - 1)))
                .scale(&rat(-(n - 1), n - 3)),
        }
    }

    /// `a_(n) b` for an arbitrary vacuum vector `a`.
    pub fn vector_mode(&self, a: &StateVector, n: i64, b: &StateVector) -> Result<StateVector> {
        self.check(a)?;
        self.check(b)?;
        let mut out = LinComb::zero();
        for (m, c) in a.terms().iter() {
            out.add_scaled(&self.module.field_mode(m, n, b.terms()), c);
        }
        Ok(b.with_terms(out))
    }

    fn binomial_product(
        &self,
        a: &StateVector,
        b: &StateVector,
        shift: i64,
    ) -> Result<StateVector> {
        self.check(a)?;
        self.check(b)?;
        let wt = a.homogeneous_level().ok_or(Error::NotHomogeneous)?;
        let mut out = LinComb::zero();
        for j in 0..=wt {
            let term = self.vector_mode(a, j - shift, b)?;
            out.add_scaled_rat(term.terms(), &binomial(wt, j));
        }
        Ok(b.with_terms(out))
    }

    /// `a * b = sum_j C(wt a, j) a_(j-1) b`.
    pub fn star(&self, a: &StateVector, b: &StateVector) -> Result<StateVector> {
        self.binomial_product(a, b, 1)
    }

    /// `a o b = sum_j C(wt a, j) a_(j-2) b`, an element of `O(V)`.
    pub fn circ(&self, a: &StateVector, b: &StateVector) -> Result<StateVector> {
        self.binomial_product(a, b, 2)
    }
}

/// Shared reducer for the `c = -2` vacuum module.
pub fn c_minus_two() -> &'static Zhu {
    static ZHU: OnceLock<Zhu> = OnceLock::new();
    ZHU.get_or_init(|| Zhu::new(W3Module::vacuum_c_minus_two()).expect("vacuum module"))
}

/// The class of `v` in the `c = -2` Zhu algebra.
pub fn reduce_to_poly(v: &StateVector) -> Result<ZhuElement> {
    c_minus_two().reduce(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vm() -> W3Module {
        c_minus_two().module().clone()
    }

    fn class(text: &str) -> String {
        reduce_to_poly(&vm().parse_vector(text).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn generators() {
        assert_eq!(class("L(-2)vac"), "t");
        assert_eq!(class("Wt(-3)vac"), "w");
        assert_eq!(class("L(-3)vac"), "-2*t");
        assert_eq!(class("L(-2)L(-2)vac"), "t^2 + 2*t");
        assert_eq!(class("vac"), "1");
    }

    #[test]
    fn star_of_stress_tensor_with_itself() {
        let z = c_minus_two();
        let a = vm().parse_vector("L(-2)vac").unwrap();
        let p = z.star(&a, &a).unwrap();
        let expected = vm()
            .parse_vector("L(-2)L(-2)vac + 2*L(-3)vac + 2*L(-2)vac")
            .unwrap();
        assert_eq!(p, expected);
        assert_eq!(z.reduce(&p).unwrap().to_string(), "t^2");
    }

    #[test]
    fn circ_with_vacuum() {
        let z = c_minus_two();
        let a = vm().parse_vector("L(-2)vac").unwrap();
        let b = vm().highest_weight_vector();
        let expected = vm().parse_vector("L(-3)vac + 2*L(-2)vac").unwrap();
        assert_eq!(z.circ(&a, &b).unwrap(), expected);
        assert!(z.circ(&a, &vm().zero_vector()).unwrap().is_zero());
    }

    #[test]
    fn vacuum_is_the_unit() {
        let z = c_minus_two();
        let b = vm().parse_vector("L(-3)Wt(-3)vac").unwrap();
        assert_eq!(z.star(&vm().highest_weight_vector(), &b).unwrap(), b);
    }

    #[test]
    fn star_requires_homogeneous_left_factor() {
        let z = c_minus_two();
        let a = vm().parse_vector("L(-2)vac + Wt(-3)vac").unwrap();
        assert_eq!(z.star(&a, &a), Err(Error::NotHomogeneous));
    }

    #[test]
    fn normal_form() {
        let nf = |s: &str| quotient_normal_form(&ZhuElement::new(s.parse().unwrap())).to_string();
        assert_eq!(nf("w^2"), "8/9*t^3 + 1/9*t^2");
        assert_eq!(nf("t*w + 3"), "t*w + 3");
        assert_eq!(nf("w^3"), nf("w*(8/9*t^3 + 1/9*t^2)"));
    }

    #[test]
    fn weights_and_partners() {
        assert_eq!(weight_from_alpha_rat(&int(0)), (int(0), int(0)));
        assert_eq!(weight_from_alpha_rat(&int(2)), (int(1), int(1)));
        assert_eq!(weight_from_alpha_rat(&int(-1)), (int(1), int(-1)));
        assert_eq!(iso_partner(&int(0)), int(1));
        assert_eq!(iso_partner(&rat(1, 2)), rat(1, 2));
        let f = curve_poly().generator;
        let (t, w) = weight_from_alpha(&Poly::var(Var::Alpha));
        assert!(f.substitute(Var::W, &w).substitute(Var::T, &t).is_zero());
    }
}
