use std::fmt;

use crate::exact::{int, rat, LinComb, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fermion {
    B,
    C,
}

/// An ordered product of creation operators applied to `|0>_bc`. Factors are
/// kept in canonical order: all `b`s, then all `c`s, each by mode index
/// ascending. Creation operators are `b(k)`, `k <= 0`, and `c(k)`, `k <= -1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FermionMonomial(pub Vec<(Fermion, i64)>);

impl FermionMonomial {
    pub fn vacuum() -> Self {
        FermionMonomial(Vec::new())
    }

    /// Sum of `-k` over all factors.
    pub fn level(&self) -> i64 {
        self.0.iter().map(|&(_, k)| -k).sum()
    }

    /// Number of `b`s minus number of `c`s.
    pub fn charge(&self) -> i64 {
        self.0
            .iter()
            .map(|&(f, _)| if f == Fermion::B { 1 } else { -1 })
            .sum()
    }
}

impl fmt::Display for FermionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(kind, k) in &self.0 {
            let name = if kind == Fermion::B { "b" } else { "c" };
            write!(f, "{}({})", name, k)?;
        }
        f.write_str("vac")
    }
}

pub type FermionState = LinComb<FermionMonomial>;

fn is_creation(kind: Fermion, k: i64) -> bool {
    match kind {
        Fermion::B => k <= 0,
        Fermion::C => k <= -1,
    }
}

fn sign(pos: usize) -> Rational {
    if pos.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// The `bc` system with `{b(m), c(n)} = delta_{m,-n}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BcSystem;

impl BcSystem {
    pub fn vacuum(&self) -> FermionState {
        LinComb::single(FermionMonomial::vacuum())
    }

    /// Applies `b(k)` or `c(k)`. A creation operator anticommutes into its
    /// canonical slot; an annihilator anticommutes up to its partner
    /// `c(-k)` or `b(-k)` and removes it.
    pub fn op(&self, kind: Fermion, k: i64, v: &FermionState) -> FermionState {
        let mut out = LinComb::zero();
        let creation = is_creation(kind, k);
        for (m, c) in v.iter() {
            let mut ops = m.0.clone();
            if creation {
                if ops.contains(&(kind, k)) {
                    continue;
                }
                let pos = ops.partition_point(|&x| x < (kind, k));
                ops.insert(pos, (kind, k));
                out.add_scaled_rat(&LinComb::term(FermionMonomial(ops), c.clone()), &sign(pos));
            } else {
                let partner = match kind {
                    Fermion::B => (Fermion::C, -k),
                    Fermion::C => (Fermion::B, -k),
                };
                if let Some(pos) = ops.iter().position(|&x| x == partner) {
                    ops.remove(pos);
                    out.add_scaled_rat(&LinComb::term(FermionMonomial(ops), c.clone()), &sign(pos));
                }
            }
        }
        out
    }

    /// `:b(a) c(d):`, which puts the annihilator on the right.
    fn normal_bc(&self, a: i64, d: i64, v: &FermionState) -> FermionState {
        if a >= 1 && d <= -1 {
            self.op(Fermion::C, d, &self.op(Fermion::B, a, v))
                .scale_rat(&int(-1))
        } else {
            self.op(Fermion::B, a, &self.op(Fermion::C, d, v))
        }
    }

    /// `sum_a weight(a, n-a) :b(a) c(n-a):`, summed per monomial over the
    /// range of `a` that can act nontrivially.
    fn bilinear(
        &self,
        n: i64,
        v: &FermionState,
        weight: impl Fn(i64, i64) -> Rational,
    ) -> FermionState {
        let mut out = LinComb::zero();
        for (m, c) in v.iter() {
            let single = LinComb::single(m.clone());
            let bound = m.level() + n.abs() + 1;
            for a in -bound..=bound {
                let w = weight(a, n - a);
                if w == int(0) {
                    continue;
                }
                let term = self.normal_bc(a, n - a, &single);
                out.add_scaled(&term, &(Poly::constant(w) * c.clone()));
            }
        }
        out
    }

    /// `j_n = sum :b(a) c(n-a):`.
    pub fn j(&self, n: i64, v: &FermionState) -> FermionState {
        self.bilinear(n, v, |_, _| int(1))
    }

    /// Modes of `:db c:`, namely `L_n = sum -a :b(a) c(n-a):`.
    pub fn l(&self, n: i64, v: &FermionState) -> FermionState {
        self.bilinear(n, v, |a, _| int(-a))
    }

    /// Modes of `1/2 (:d^2b c: - :db dc:)`, namely
    /// `Wt_n = sum 1/2 a(a-d) :b(a) c(d):` with `d = n - a`.
    pub fn wt(&self, n: i64, v: &FermionState) -> FermionState {
        self.bilinear(n, v, |a, d| rat(a * (a - d), 2))
    }

    /// Charge-zero basis at `level`: equal numbers of `b(-m)`, `m >= 0`, and
    /// `c(-n)`, `n >= 1`, with `sum m + sum n = level`.
    pub fn charge_zero_basis(&self, level: i64) -> Vec<FermionMonomial> {
        fn subsets(min: i64, max: i64, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            out.push(cur.clone());
            for x in min..=max.min(budget) {
                cur.push(x);
                subsets(x + 1, max, budget - x, cur, out);
                cur.pop();
            }
        }
        let (mut bs, mut cs) = (Vec::new(), Vec::new());
        subsets(0, level, level, &mut Vec::new(), &mut bs);
        subsets(1, level, level, &mut Vec::new(), &mut cs);
        let mut out = Vec::new();
        for b in &bs {
            for c in &cs {
                if b.len() == c.len() && b.iter().sum::<i64>() + c.iter().sum::<i64>() == level {
                    let mut ops: Vec<(Fermion, i64)> = b
                        .iter()
                        .map(|&m| (Fermion::B, -m))
                        .chain(c.iter().map(|&n| (Fermion::C, -n)))
                        .collect();
                    ops.sort();
                    out.push(FermionMonomial(ops));
                }
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_b0_kills_vacuum() {
        let f = BcSystem;
        let v = f.op(Fermion::B, 1, &f.op(Fermion::B, 0, &f.vacuum()));
        assert!(v.is_zero());
    }

    #[test]
    fn anticommutator() {
        let f = BcSystem;
        let vac = f.vacuum();
        // {b(1), c(-1)} = 1
        let a = f.op(Fermion::B, 1, &f.op(Fermion::C, -1, &vac));
        let b = f.op(Fermion::C, -1, &f.op(Fermion::B, 1, &vac));
        let mut sum = a;
        sum.add_assign(&b);
        assert_eq!(sum, vac);
    }

    #[test]
    fn zero_modes_on_simple_states() {
        let f = BcSystem;
        let s = f.op(Fermion::B, 0, &f.op(Fermion::C, -1, &f.vacuum()));
        assert!(f.j(0, &s).is_zero());
        let s = f.op(Fermion::B, -1, &f.op(Fermion::C, -1, &f.vacuum()));
        assert_eq!(f.l(0, &s), s.scale_rat(&int(2)));
        assert!(f.wt(0, &f.vacuum()).is_zero());
    }

    #[test]
    fn charge_zero_dimensions_are_partition_numbers() {
        let f = BcSystem;
        let dims: Vec<usize> = (0..=6).map(|l| f.charge_zero_basis(l).len()).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
        for m in f.charge_zero_basis(4) {
            assert_eq!((m.level(), m.charge()), (4, 0));
        }
    }
}
