use std::fmt;

use crate::exact::{int, rat, LinComb, Poly, Rational};
use crate::w3core::{Family, Mode, ModeAction};

/// A PBW monomial `j_{-n_1} ... j_{-n_k}|alpha>` of the Heisenberg Fock
/// space, stored as the creation indices `n_i >= 1` in descending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<i64>);

impl Partition {
    pub fn vacuum() -> Self {
        Partition(Vec::new())
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.0 {
            write!(f, "j({})", -n)?;
        }
        f.write_str("vac")
    }
}

pub type BosonState = LinComb<Partition>;

/// The Fock module `H^alpha`, where `j_0` acts by `alpha` (a constant or the
/// symbolic variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonFock {
    alpha: Poly,
}

impl BosonFock {
    pub fn new(alpha: Poly) -> Self {
        Self { alpha }
    }

    pub fn alpha(&self) -> &Poly {
        &self.alpha
    }

    pub fn vacuum(&self) -> BosonState {
        LinComb::single(Partition::vacuum())
    }

    pub fn graded_basis(&self, level: i64) -> Vec<Partition> {
        crate::w3core::partitions(level, 1)
            .into_iter()
            .map(Partition)
            .collect()
    }

    fn j_monomial(&self, n: i64, p: &Partition) -> BosonState {
        match n {
            n if n < 0 => {
                let mut parts = p.0.clone();
                let at = parts.partition_point(|&x| x > -n);
                parts.insert(at, -n);
                LinComb::single(Partition(parts))
            }
            0 => LinComb::term(p.clone(), self.alpha.clone()),
            n => {
                let count = p.0.iter().filter(|&&x| x == n).count() as i64;
                if count == 0 {
                    return LinComb::zero();
                }
                let mut parts = p.0.clone();
                let at = parts.iter().position(|&x| x == n).expect("part present");
                parts.remove(at);
                LinComb::term(Partition(parts), Poly::from_int(n * count))
            }
        }
    }

    pub fn j(&self, n: i64, v: &BosonState) -> BosonState {
        let mut out = LinComb::zero();
        for (p, c) in v.iter() {
            out.add_scaled(&self.j_monomial(n, p), c);
        }
        out
    }

    /// Normally ordered product of `j` modes: creation modes left, so the
    /// largest index acts first.
    fn normal_product(&self, indices: &mut [i64], v: &BosonState) -> BosonState {
        indices.sort_unstable();
        let mut cur = v.clone();
        for &k in indices.iter().rev() {
            cur = self.j(k, &cur);
            if cur.is_zero() {
                break;
            }
        }
        cur
    }

    /// `sum_{a+b=n} :j_a j_b:` on a single monomial of level `level`.
    fn quadratic(&self, n: i64, level: i64, v: &BosonState) -> BosonState {
        // The index acting first is at most max(level, 0); the other is then
        // bounded below by n minus that.
        let top = level.max(0);
        let mut out = LinComb::zero();
        for b in n - top..=top {
            let a = n - b;
            if a > b {
                continue;
            }
            let mult = if a == b { 1 } else { 2 };
            out.add_scaled_rat(&self.normal_product(&mut [a, b], v), &int(mult));
        }
        out
    }

    /// `sum_{a+b+c=n} :j_a j_b j_c:` on a single monomial of level `level`.
    fn cubic(&self, n: i64, level: i64, v: &BosonState) -> BosonState {
        let top = level.max(0);
        let mut out = LinComb::zero();
        for a in n - 2 * top..=top {
            for b in a..=top {
                let c = n - a - b;
                if c < b || c > top {
                    continue;
                }
                let mult = if a == c {
                    1
                } else if a == b || b == c {
                    3
                } else {
                    6
                };
                out.add_scaled_rat(&self.normal_product(&mut [a, b, c], v), &int(mult));
            }
        }
        out
    }

    /// `sum_{a+b=n} -(b+1) :j_a j_b:`, the modes of `:j dj:`.
    fn j_dj(&self, n: i64, level: i64, v: &BosonState) -> BosonState {
        let top = level.max(0);
        let mut out = LinComb::zero();
        for b in n - top..=top {
            let a = n - b;
            out.add_scaled_rat(&self.normal_product(&mut [a, b], v), &int(-(b + 1)));
        }
        out
    }

    fn per_monomial(
        &self,
        v: &BosonState,
        f: impl Fn(i64, &BosonState) -> BosonState,
    ) -> BosonState {
        let mut out = LinComb::zero();
        for (p, c) in v.iter() {
            let single = LinComb::single(p.clone());
            out.add_scaled(&f(p.level(), &single), c);
        }
        out
    }

    /// `L_n = 1/2 sum :j_{n-k} j_k: - 1/2 (n+1) j_n`.
    pub fn l(&self, n: i64, v: &BosonState) -> BosonState {
        self.per_monomial(v, |level, s| {
            let mut out = self.quadratic(n, level, s).scale_rat(&rat(1, 2));
            out.add_scaled_rat(&self.j(n, s), &rat(-(n + 1), 2));
            out
        })
    }

    /// `Wt_n = 1/12 (4 :j^3:_n + 6 :j dj:_n + (n+1)(n+2) j_n)`.
    pub fn wt(&self, n: i64, v: &BosonState) -> BosonState {
        self.per_monomial(v, |level, s| {
            let mut out = self.cubic(n, level, s).scale_rat(&int(4));
            out.add_scaled_rat(&self.j_dj(n, level, s), &int(6));
            out.add_scaled_rat(&self.j(n, s), &int((n + 1) * (n + 2)));
            out.scale_rat(&rat(1, 12))
        })
    }

    /// Coordinates of a state with constant coefficients.
    pub fn coordinates(&self, v: &BosonState, basis: &[Partition]) -> Option<Vec<Rational>> {
        if v.basis().any(|p| !basis.contains(p)) {
            return None;
        }
        basis.iter().map(|p| v.coeff(p).as_constant()).collect()
    }
}

impl ModeAction for BosonFock {
    type Basis = Partition;

    fn act(&self, mode: Mode, v: &BosonState) -> BosonState {
        match mode.family {
            Family::L => self.l(mode.index, v),
            Family::Wt => self.wt(mode.index, v),
        }
    }

    fn level_of(&self, p: &Partition) -> i64 {
        p.level()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Var;

    fn h0() -> BosonFock {
        BosonFock::new(Poly::zero())
    }

    #[test]
    fn heisenberg_relation() {
        let h = BosonFock::new(Poly::var(Var::Alpha));
        let v = h.j(1, &h.j(-1, &h.vacuum()));
        assert_eq!(v, h.vacuum());
    }

    #[test]
    fn creation_keeps_parts_sorted() {
        let h = h0();
        let v = h.j(-1, &h.j(-3, &h.j(-2, &h.vacuum())));
        assert_eq!(v, LinComb::single(Partition(vec![3, 2, 1])));
    }

    #[test]
    fn virasoro_vacuum_relations() {
        let h = h0();
        let vac = h.vacuum();
        assert!(h.l(-1, &vac).is_zero());
        assert!(h.wt(-1, &vac).is_zero());
        assert!(h.wt(-2, &vac).is_zero());
        // L_{-2}|0> = 1/2 j_{-1}^2 - 1/2 j_{-2} on H^0
        let l2 = h.l(-2, &vac);
        assert_eq!(l2.coeff(&Partition(vec![1, 1])), Poly::constant(rat(1, 2)));
        assert_eq!(l2.coeff(&Partition(vec![2])), Poly::constant(rat(1, 2)));
    }
}
