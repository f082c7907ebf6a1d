use std::collections::HashMap;

use super::boson::{BosonFock, BosonState, Partition};
use super::fermion::{BcSystem, FermionState};
use super::Symbol;
use crate::error::{Error, Result};
use crate::exact::{LinComb, Poly, RatMatrix, Rational};
use crate::w3core::{commutator, AlgebraParams, Family, Mode, ModeAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub operator: String,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W3RelationReport {
    pub max_level: i64,
    pub pairs_checked: usize,
    pub states_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl W3RelationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares realized commutators `[X_m, Y_n]` for all generator pairs with
/// `|m|, |n| <= 3` against the abstract W3 commutator at `c = -2`, on every
/// basis state of `H^0` up to `max_level`.
pub fn verify_w3_relations(max_level: i64) -> Result<W3RelationReport> {
    if max_level < 2 {
        return Err(Error::InvalidArgument(format!(
            "max level must be at least 2, got {}",
            max_level
        )));
    }
    let fock = BosonFock::new(Poly::zero());
    let params = AlgebraParams::c_minus_two();
    let states: Vec<Partition> = (0..=max_level).flat_map(|l| fock.graded_basis(l)).collect();
    let modes: Vec<Mode> = [Family::L, Family::Wt]
        .into_iter()
        .flat_map(|f| (-3..=3).map(move |index| Mode { family: f, index }))
        .collect();
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for &x in &modes {
        for &y in &modes {
            pairs += 1;
            let expr = commutator(x, y, &params);
            for p in &states {
                let v = LinComb::single(p.clone());
                let lhs = fock
                    .act(x, &fock.act(y, &v))
                    .sub(&fock.act(y, &fock.act(x, &v)));
                let rhs = expr.apply(&fock, &v);
                if lhs != rhs {
                    mismatches.push(Mismatch {
                        operator: format!("[{}, {}]", x, y),
                        state: p.to_string(),
                    });
                }
            }
        }
    }
    Ok(W3RelationReport {
        max_level,
        pairs_checked: pairs,
        states_checked: states.len(),
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDims {
    pub level: i64,
    pub boson: usize,
    pub fermion: usize,
    /// Rank of the correspondence map at this level.
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonizationReport {
    pub max_level: i64,
    pub levels: Vec<LevelDims>,
    pub operators_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl BosonizationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
            && self
                .levels
                .iter()
                .all(|d| d.boson == d.fermion && d.rank == d.boson)
    }
}

struct Correspondence {
    bc: BcSystem,
    cache: HashMap<Partition, FermionState>,
}

impl Correspondence {
    /// `j_{-n_1} ... j_{-n_k}|0>` mapped to the fermionic `j` modes on
    /// `|0>_bc`.
    fn image_of(&mut self, p: &Partition) -> FermionState {
        if let Some(v) = self.cache.get(p) {
            return v.clone();
        }
        let mut st = self.bc.vacuum();
        for &n in p.0.iter().rev() {
            st = self.bc.j(-n, &st);
        }
        self.cache.insert(p.clone(), st.clone());
        st
    }

    fn image(&mut self, v: &BosonState) -> FermionState {
        let mut out = LinComb::zero();
        for (p, c) in v.iter() {
            let img = self.image_of(p);
            out.add_scaled(&img, c);
        }
        out
    }
}

/// Checks that the charge-0 boson-fermion map is an isomorphism at each
/// level up to `max_level`, and that it intertwines the two realizations of
/// `L_n`, `Wt_n` and `j_n` for `|n| <= 2`.
pub fn verify_bosonization(max_level: i64) -> Result<BosonizationReport> {
    if max_level < 1 {
        return Err(Error::InvalidArgument(format!(
            "max level must be at least 1, got {}",
            max_level
        )));
    }
    let fock = BosonFock::new(Poly::zero());
    let mut phi = Correspondence {
        bc: BcSystem,
        cache: HashMap::new(),
    };
    let bc = BcSystem;
    let mut levels = Vec::new();
    for level in 0..=max_level {
        let bbasis = fock.graded_basis(level);
        let fbasis = bc.charge_zero_basis(level);
        let cols: Vec<Vec<Rational>> = bbasis
            .iter()
            .map(|p| {
                let img = phi.image_of(p);
                fbasis
                    .iter()
                    .map(|m| img.coeff(m).as_constant().expect("rational image"))
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<Rational>> = (0..fbasis.len())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let rank = RatMatrix::from_rows(bbasis.len(), rows).rank();
        levels.push(LevelDims {
            level,
            boson: bbasis.len(),
            fermion: fbasis.len(),
            rank,
        });
    }
    let mut mismatches = Vec::new();
    let mut operators = 0;
    for symbol in [Symbol::L, Symbol::Wt, Symbol::J] {
        for n in -2..=2 {
            operators += 1;
            for level in 0..=max_level {
                for p in fock.graded_basis(level) {
                    let v = LinComb::single(p.clone());
                    let bos = match symbol {
                        Symbol::L => fock.l(n, &v),
                        Symbol::Wt => fock.wt(n, &v),
                        Symbol::J => fock.j(n, &v),
                    };
                    let lhs = phi.image(&bos);
                    let fv = phi.image_of(&p);
                    let rhs = match symbol {
                        Symbol::L => bc.l(n, &fv),
                        Symbol::Wt => bc.wt(n, &fv),
                        Symbol::J => bc.j(n, &fv),
                    };
                    if lhs != rhs {
                        mismatches.push(Mismatch {
                            operator: format!("{:?}({})", symbol, n),
                            state: p.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(BosonizationReport {
        max_level,
        levels,
        operators_checked: operators,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_level_relations() {
        let r = verify_w3_relations(2).unwrap();
        assert!(r.ok(), "{:?}", r.mismatches);
        assert_eq!(r.pairs_checked, 196);
        assert!(verify_w3_relations(1).is_err());
    }

    #[test]
    fn low_level_bosonization() {
        let r = verify_bosonization(2).unwrap();
        assert!(r.ok(), "{:?}", r);
        assert_eq!(r.levels[2].boson, 2);
    }
}
