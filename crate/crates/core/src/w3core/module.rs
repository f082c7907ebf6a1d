use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use num_traits::Zero;

use super::algebra::{commutator, lambda_apply, AlgebraParams, ModeAction};
use super::mode::{level_of_word, partitions, Family, Mode, Monomial};
use crate::error::{Error, Result};
use crate::exact::{LinComb, Poly, Rational, Var};

/// Which highest-weight module a state lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    /// `M(0,0)` modulo the submodule generated by `L_{-1}|0>`, `W_{-1}|0>`
    /// and `W_{-2}|0>`.
    Vacuum,
    /// Verma module with `L_0`, `Wt_0` acting on the highest weight vector
    /// by the (possibly symbolic) scalars `t`, `w`.
    Verma { t: Poly, w: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleTag {
    pub c: Rational,
    pub kind: ModuleKind,
}

/// A vector in a tagged module, in PBW form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    tag: ModuleTag,
    terms: LinComb<Monomial>,
}

impl StateVector {
    pub fn tag(&self) -> &ModuleTag {
        &self.tag
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Monomial> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Poly {
        self.terms.coeff(m)
    }

    pub fn levels(&self) -> BTreeSet<i64> {
        self.terms.basis().map(Monomial::level).collect()
    }

    /// The level if the vector is homogeneous; the zero vector counts as
    /// homogeneous of level 0.
    pub fn homogeneous_level(&self) -> Option<i64> {
        let levels = self.levels();
        match levels.len() {
            0 => Some(0),
            1 => levels.into_iter().next(),
            _ => None,
        }
    }

    pub fn component(&self, level: i64) -> StateVector {
        StateVector {
            tag: self.tag.clone(),
            terms: self.terms.filter(|m| m.level() == level),
        }
    }

    pub fn with_terms(&self, terms: LinComb<Monomial>) -> StateVector {
        StateVector {
            tag: self.tag.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        if self.tag != other.tag {
            return Err(Error::ModuleMismatch);
        }
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(self.with_terms(terms))
    }

    pub fn sub(&self, other: &StateVector) -> Result<StateVector> {
        if self.tag != other.tag {
            return Err(Error::ModuleMismatch);
        }
        Ok(self.with_terms(self.terms.sub(&other.terms)))
    }

    pub fn scale(&self, s: &Rational) -> StateVector {
        self.with_terms(self.terms.scale_rat(s))
    }

    pub fn scale_poly(&self, s: &Poly) -> StateVector {
        self.with_terms(self.terms.scale(s))
    }

    /// Coordinates against an ordered list of monomials. Fails if a
    /// coefficient is not a rational constant or a monomial is missing.
    pub fn coordinates(&self, basis: &[Monomial]) -> Option<Vec<Rational>> {
        let coeffs = self.terms.rational_coeffs()?;
        if coeffs.iter().any(|(m, _)| !basis.contains(m)) {
            return None;
        }
        let mut out = vec![Rational::zero(); basis.len()];
        for (m, c) in coeffs {
            let i = basis.iter().position(|b| *b == m)?;
            out[i] = c;
        }
        Some(out)
    }
}

type ApplyCache = RwLock<HashMap<(Mode, Monomial), LinComb<Monomial>>>;

/// A highest-weight module of the W3 algebra, acting on PBW-form vectors.
///
/// Modes are applied by commuting them rightward through the canonical
/// word (`X Y rest = Y (X rest) + [X, Y] rest`), expanding `Lambda` terms
/// recursively, until they either join the word in canonical position or
/// reach the highest weight vector. Results per (mode, monomial) are
/// memoized; the cache only ever stores recomputable values.
#[derive(Debug)]
pub struct W3Module {
    params: AlgebraParams,
    tag: ModuleTag,
    cache: ApplyCache,
}

impl Clone for W3Module {
    fn clone(&self) -> Self {
        Self::new(self.params.clone(), self.tag.kind.clone())
    }
}

impl W3Module {
    pub fn new(params: AlgebraParams, kind: ModuleKind) -> Self {
        let tag = ModuleTag {
            c: params.c().clone(),
            kind,
        };
        Self {
            params,
            tag,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn vacuum(params: AlgebraParams) -> Self {
        Self::new(params, ModuleKind::Vacuum)
    }

    /// The vacuum module at `c = -2`.
    pub fn vacuum_c_minus_two() -> Self {
        Self::vacuum(AlgebraParams::c_minus_two())
    }

    pub fn verma(params: AlgebraParams, t: Poly, w: Poly) -> Self {
        Self::new(params, ModuleKind::Verma { t, w })
    }

    /// Verma module with symbolic highest weight `(t, w)`.
    pub fn verma_symbolic(params: AlgebraParams) -> Self {
        Self::verma(params, Poly::var(Var::T), Poly::var(Var::W))
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn tag(&self) -> &ModuleTag {
        &self.tag
    }

    pub fn is_vacuum(&self) -> bool {
        self.tag.kind == ModuleKind::Vacuum
    }

    /// Whether `m` may appear in a PBW word of this module.
    pub fn is_creation(&self, m: Mode) -> bool {
        match self.tag.kind {
            ModuleKind::Vacuum => m.index <= -m.family.weight(),
            ModuleKind::Verma { .. } => m.index <= -1,
        }
    }

    pub fn highest_weight_vector(&self) -> StateVector {
        self.state(LinComb::single(Monomial::vacuum()))
    }

    pub fn zero_vector(&self) -> StateVector {
        self.state(LinComb::zero())
    }

    pub fn state(&self, terms: LinComb<Monomial>) -> StateVector {
        StateVector {
            tag: self.tag.clone(),
            terms,
        }
    }

    /// The basis vector for a canonical monomial.
    pub fn basis_vector(&self, m: &Monomial) -> StateVector {
        self.state(LinComb::single(m.clone()))
    }

    pub fn apply_mode(&self, s: Mode, v: &StateVector) -> Result<StateVector> {
        if v.tag != self.tag {
            return Err(Error::ModuleMismatch);
        }
        Ok(self.state(self.apply_lc(s, &v.terms)))
    }

    /// Applies `word[0] word[1] ... word[k-1]` to `v` (rightmost first).
    pub fn apply_word(&self, word: &[Mode], v: &StateVector) -> Result<StateVector> {
        if v.tag != self.tag {
            return Err(Error::ModuleMismatch);
        }
        let mut acc = v.terms.clone();
        for m in word.iter().rev() {
            acc = self.apply_lc(*m, &acc);
        }
        Ok(self.state(acc))
    }

    /// `Lambda_m v`.
    pub fn lambda_apply(&self, m: i64, v: &StateVector) -> Result<StateVector> {
        if v.tag != self.tag {
            return Err(Error::ModuleMismatch);
        }
        Ok(self.state(lambda_apply(self, m, &v.terms)))
    }

    pub(crate) fn apply_lc(&self, s: Mode, v: &LinComb<Monomial>) -> LinComb<Monomial> {
        let mut out = LinComb::zero();
        for (m, c) in v.iter() {
            out.add_scaled(&self.apply_monomial(s, m), c);
        }
        out
    }

    fn apply_monomial(&self, x: Mode, word: &Monomial) -> LinComb<Monomial> {
        let key = (x, word.clone());
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let result = self.apply_uncached(x, word.modes());
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(key, result.clone());
        result
    }

    fn apply_uncached(&self, x: Mode, word: &[Mode]) -> LinComb<Monomial> {
        let Some((&y, rest)) = word.split_first() else {
            return self.act_on_highest(x);
        };
        if self.is_creation(x) && x <= y {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(x);
            w.extend_from_slice(word);
            return LinComb::single(Monomial(w));
        }
        let rest = Monomial(rest.to_vec());
        let moved = self.apply_monomial(x, &rest);
        let mut out = self.apply_lc(y, &moved);
        let comm = commutator(x, y, &self.params);
        if !comm.is_zero() {
            out.add_assign(&comm.apply(self, &LinComb::single(rest)));
        }
        out
    }

    fn act_on_highest(&self, x: Mode) -> LinComb<Monomial> {
        if self.is_creation(x) {
            return LinComb::single(Monomial(vec![x]));
        }
        if x.index != 0 {
            return LinComb::zero();
        }
        match &self.tag.kind {
            ModuleKind::Vacuum => LinComb::zero(),
            ModuleKind::Verma { t, w } => {
                let eigen = match x.family {
                    Family::L => t,
                    Family::Wt => w,
                };
                LinComb::term(Monomial::vacuum(), eigen.clone())
            }
        }
    }

    /// All PBW monomials of the given level, deterministically ordered:
    /// by decreasing total `L` weight, then reverse lexicographic
    /// partitions within each block.
    pub fn graded_basis(&self, level: i64) -> Vec<Monomial> {
        let (min_l, min_w) = match self.tag.kind {
            ModuleKind::Vacuum => (2, 3),
            ModuleKind::Verma { .. } => (1, 1),
        };
        let mut out = Vec::new();
        if level < 0 {
            return out;
        }
        for l_sum in (0..=level).rev() {
            for lp in partitions(l_sum, min_l) {
                for wp in partitions(level - l_sum, min_w) {
                    let word: Vec<Mode> = lp
                        .iter()
                        .map(|&k| Mode::l(-k))
                        .chain(wp.iter().map(|&k| Mode::wt(-k)))
                        .collect();
                    out.push(Monomial(word));
                }
            }
        }
        out
    }
}

impl ModeAction for W3Module {
    type Basis = Monomial;

    fn act(&self, mode: Mode, v: &LinComb<Monomial>) -> LinComb<Monomial> {
        self.apply_lc(mode, v)
    }

    fn level_of(&self, b: &Monomial) -> i64 {
        level_of_word(b.modes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn vm() -> W3Module {
        W3Module::vacuum_c_minus_two()
    }

    fn mono(word: &[Mode]) -> Monomial {
        Monomial(word.to_vec())
    }

    #[test]
    fn graded_dimensions() {
        let m = vm();
        let dims: Vec<usize> = (0..=6).map(|n| m.graded_basis(n).len()).collect();
        assert_eq!(dims, vec![1, 0, 1, 2, 3, 4, 8]);
        assert_eq!(m.graded_basis(2), vec![mono(&[Mode::l(-2)])]);
        for n in 0..=6 {
            assert!(m
                .graded_basis(n)
                .iter()
                .all(|b| b.is_canonical() && b.level() == n));
        }
    }

    #[test]
    fn l1_kills_l_minus_two_vacuum() {
        let m = vm();
        let v = m.basis_vector(&mono(&[Mode::l(-2)]));
        assert!(m.apply_mode(Mode::l(1), &v).unwrap().is_zero());
    }

    #[test]
    fn l2_on_l_minus_two_vacuum() {
        let m = vm();
        let v = m.basis_vector(&mono(&[Mode::l(-2)]));
        let out = m.apply_mode(Mode::l(2), &v).unwrap();
        assert_eq!(out, m.highest_weight_vector().scale(&int(-1)));
    }

    #[test]
    fn verma_zero_modes_act_by_weights() {
        let m = W3Module::verma_symbolic(AlgebraParams::c_minus_two());
        let hw = m.highest_weight_vector();
        let out = m.apply_mode(Mode::wt(0), &hw).unwrap();
        assert_eq!(out, hw.scale_poly(&Poly::var(Var::W)));
        let out = m.apply_mode(Mode::l(0), &hw).unwrap();
        assert_eq!(out, hw.scale_poly(&Poly::var(Var::T)));
    }

    #[test]
    fn non_creation_modes_vanish_on_vacuum() {
        let m = vm();
        let hw = m.highest_weight_vector();
        for x in [
            Mode::l(-1),
            Mode::wt(-1),
            Mode::wt(-2),
            Mode::l(0),
            Mode::wt(0),
            Mode::l(3),
        ] {
            assert!(m.apply_mode(x, &hw).unwrap().is_zero(), "{x}");
        }
    }

    #[test]
    fn lambda_examples() {
        let m = vm();
        let hw = m.highest_weight_vector();
        assert!(m.lambda_apply(0, &hw).unwrap().is_zero());
        assert!(m.lambda_apply(3, &m.zero_vector()).unwrap().is_zero());
        // Only n = -2 survives in the first sum; the correction adds
        // -3/10 * (-2)(-1) L_{-4}.
        let out = m.lambda_apply(-4, &hw).unwrap();
        assert_eq!(out.coeff(&mono(&[Mode::l(-2), Mode::l(-2)])), Poly::one());
        assert_eq!(out.coeff(&mono(&[Mode::l(-4)])), Poly::constant(rat(-3, 5)));
        assert_eq!(out.terms().len(), 2);
    }

    #[test]
    fn l_minus_one_moves_past_w_block() {
        let m = vm();
        let v = m.basis_vector(&mono(&[Mode::wt(-3)]));
        let out = m.apply_mode(Mode::l(-1), &v).unwrap();
        assert_eq!(out, m.basis_vector(&mono(&[Mode::wt(-4)])));
    }

    #[test]
    fn mismatched_module_is_rejected() {
        let a = vm();
        let b = W3Module::verma_symbolic(AlgebraParams::c_minus_two());
        let v = b.highest_weight_vector();
        assert_eq!(a.apply_mode(Mode::l(1), &v), Err(Error::ModuleMismatch));
    }

    #[test]
    fn apply_preserves_homogeneity() {
        let m = vm();
        for level in 0..=5 {
            for b in m.graded_basis(level) {
                let v = m.basis_vector(&b);
                for k in -3..=3 {
                    for x in [Mode::l(k), Mode::wt(k)] {
                        let out = m.apply_mode(x, &v).unwrap();
                        if !out.is_zero() {
                            assert_eq!(out.homogeneous_level(), Some(level - k));
                        }
                    }
                }
            }
        }
    }
}
