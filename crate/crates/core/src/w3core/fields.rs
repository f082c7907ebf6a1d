use std::collections::BTreeMap;

use num_traits::Zero;

use super::mode::{level_of_word, Mode, Monomial};
use super::module::W3Module;
use crate::exact::{binomial, LinComb, Rational};

impl W3Module {
    /// `a_(n) v`: the `n`-th Fourier mode of the field `Y(a, z)` of the
    /// state `a` (a PBW word in the vacuum module), applied to `v`.
    ///
    /// For `a = X_(m) b` with `X` a generating field the iterate formula
    ///
    /// `(X_(m) b)_(n) = sum_{i>=0} (-1)^i C(m,i) [X_(m-i) b_(n+i) - (-1)^m b_(m+n-i) X_(i)]`
    ///
    /// reduces everything to generator modes; both sums truncate on a
    /// vector of bounded level.
    pub fn field_mode(&self, a: &Monomial, n: i64, v: &LinComb<Monomial>) -> LinComb<Monomial> {
        self.field_mode_word(a.modes(), n, v)
    }

    fn field_mode_word(&self, a: &[Mode], n: i64, v: &LinComb<Monomial>) -> LinComb<Monomial> {
        if v.is_zero() {
            return LinComb::zero();
        }
        let Some((&x, rest)) = a.split_first() else {
            return if n == -1 { v.clone() } else { LinComb::zero() };
        };
        // Split by level so every truncation bound is tight.
        let mut by_level: BTreeMap<i64, LinComb<Monomial>> = BTreeMap::new();
        for (b, c) in v.iter() {
            by_level
                .entry(b.level())
                .or_default()
                .add_term(b.clone(), c.clone());
        }
        let delta = x.family.weight();
        // X_k = X_(k + delta - 1) as a field mode.
        let m = x.index + delta - 1;
        let generator = |q: i64| Mode {
            family: x.family,
            index: q - delta + 1,
        };
        let rest_weight = level_of_word(rest);
        let sign_m = if m.rem_euclid(2) == 0 { 1 } else { -1 };

        let mut out = LinComb::zero();
        for (level, comp) in by_level {
            // b_(p) is nonzero only for p <= level + wt(b) - 1.
            let first_max = level + rest_weight - 1 - n;
            for i in 0..=first_max.max(-1) {
                let c = alternating(i) * binomial(m, i);
                if c.is_zero() {
                    continue;
                }
                let bv = self.field_mode_word(rest, n + i, &comp);
                if bv.is_zero() {
                    continue;
                }
                out.add_scaled_rat(&self.apply_lc(generator(m - i), &bv), &c);
            }
            // X_(i) is nonzero only for i <= level + delta - 1.
            for i in 0..=(level + delta - 1) {
                let c = -(alternating(i) * binomial(m, i)) * Rational::from_integer(sign_m.into());
                if c.is_zero() {
                    continue;
                }
                let xv = self.apply_lc(generator(i), &comp);
                if xv.is_zero() {
                    continue;
                }
                out.add_scaled_rat(&self.field_mode_word(rest, m + n - i, &xv), &c);
            }
        }
        out
    }
}

fn alternating(i: i64) -> Rational {
    Rational::from_integer(if i % 2 == 0 { 1.into() } else { (-1).into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_fields_reproduce_modes() {
        let vm = W3Module::vacuum_c_minus_two();
        let omega = Monomial(vec![Mode::l(-2)]);
        let wt3 = Monomial(vec![Mode::wt(-3)]);
        for level in 0..=4 {
            for b in vm.graded_basis(level) {
                let v = LinComb::single(b);
                for n in -3..=4 {
                    assert_eq!(
                        vm.field_mode(&omega, n, &v),
                        vm.apply_lc(Mode::l(n - 1), &v)
                    );
                    assert_eq!(vm.field_mode(&wt3, n, &v), vm.apply_lc(Mode::wt(n - 2), &v));
                }
            }
        }
    }

    #[test]
    fn vacuum_field_is_identity() {
        let vm = W3Module::vacuum_c_minus_two();
        let v = LinComb::single(Monomial(vec![Mode::l(-3)]));
        assert_eq!(vm.field_mode(&Monomial::vacuum(), -1, &v), v);
        assert!(vm.field_mode(&Monomial::vacuum(), 0, &v).is_zero());
    }

    #[test]
    fn creation_property() {
        // a_(-1)|0> = a for every basis state.
        let vm = W3Module::vacuum_c_minus_two();
        let vac = LinComb::single(Monomial::vacuum());
        for level in 0..=6 {
            for a in vm.graded_basis(level) {
                assert_eq!(vm.field_mode(&a, -1, &vac), LinComb::single(a.clone()));
                // a_(n)|0> = 0 for n >= 0
                for n in 0..3 {
                    assert!(vm.field_mode(&a, n, &vac).is_zero());
                }
            }
        }
    }
}
