//! Free boson and `bc` realizations of `T(z)` and `Wt(z)` at `c = -2`.

mod boson;
mod fermion;
mod verify;

pub use boson::{BosonFock, BosonState, Partition};
pub use fermion::{BcSystem, Fermion, FermionMonomial, FermionState};
pub use verify::{
    verify_bosonization, verify_w3_relations, BosonizationReport, LevelDims, Mismatch,
    W3RelationReport,
};

use crate::error::{Error, Result};
use crate::exact::{LinComb, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    L,
    Wt,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Boson,
    Fermion,
}

/// A mode of `T`, `Wt` or `j` in one of the two realizations, guarded by the
/// highest level it may be applied at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RealizedMode {
    pub symbol: Symbol,
    pub index: i64,
    pub side: Side,
    pub truncation: i64,
}

impl RealizedMode {
    pub fn new(symbol: Symbol, index: i64, side: Side, truncation: i64) -> Self {
        Self {
            symbol,
            index,
            side,
            truncation,
        }
    }

    fn guard<B: Ord + Clone>(&self, v: &LinComb<B>, level: impl Fn(&B) -> i64) -> Result<()> {
        if let Some(top) = v.basis().map(level).max() {
            if top > self.truncation {
                return Err(Error::TruncationExceeded {
                    level: top,
                    truncation: self.truncation,
                });
            }
        }
        Ok(())
    }
}

pub fn boson_apply(fock: &BosonFock, mode: RealizedMode, v: &BosonState) -> Result<BosonState> {
    if mode.side != Side::Boson {
        return Err(Error::InvalidArgument(
            "fermionic mode applied to a boson state".into(),
        ));
    }
    mode.guard(v, Partition::level)?;
    Ok(match mode.symbol {
        Symbol::L => fock.l(mode.index, v),
        Symbol::Wt => fock.wt(mode.index, v),
        Symbol::J => fock.j(mode.index, v),
    })
}

pub fn fermion_apply(mode: RealizedMode, v: &FermionState) -> Result<FermionState> {
    if mode.side != Side::Fermion {
        return Err(Error::InvalidArgument(
            "bosonic mode applied to a fermion state".into(),
        ));
    }
    mode.guard(v, FermionMonomial::level)?;
    let bc = BcSystem;
    Ok(match mode.symbol {
        Symbol::L => bc.l(mode.index, v),
        Symbol::Wt => bc.wt(mode.index, v),
        Symbol::J => bc.j(mode.index, v),
    })
}

/// `(L_0, Wt_0)` eigenvalues on `|alpha>`, computed by acting on the Fock
/// vacuum.
pub fn highest_weight(alpha: &Poly) -> (Poly, Poly) {
    let fock = BosonFock::new(alpha.clone());
    let vac = fock.vacuum();
    let eigen = |image: BosonState| {
        assert!(
            image.basis().all(|p| *p == Partition::vacuum()),
            "zero modes preserve the Fock vacuum"
        );
        image.coeff(&Partition::vacuum())
    };
    (eigen(fock.l(0, &vac)), eigen(fock.wt(0, &vac)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Var};

    #[test]
    fn weights_at_sample_points() {
        assert_eq!(highest_weight(&Poly::zero()), (Poly::zero(), Poly::zero()));
        assert_eq!(
            highest_weight(&Poly::from_int(1)),
            (Poly::zero(), Poly::zero())
        );
        assert_eq!(
            highest_weight(&Poly::from_int(2)),
            (Poly::from_int(1), Poly::from_int(1))
        );
        let (t, w) = highest_weight(&Poly::var(Var::Alpha));
        assert_eq!(t.to_string(), "1/2*alpha^2 - 1/2*alpha");
        assert_eq!(w.to_string(), "1/3*alpha^3 - 1/2*alpha^2 + 1/6*alpha");
    }

    #[test]
    fn truncation_guard() {
        let fock = BosonFock::new(Poly::zero());
        let v = fock.j(-3, &fock.vacuum());
        let m = RealizedMode::new(Symbol::L, 1, Side::Boson, 2);
        assert_eq!(
            boson_apply(&fock, m, &v),
            Err(Error::TruncationExceeded {
                level: 3,
                truncation: 2
            })
        );
        let m = RealizedMode::new(Symbol::J, 3, Side::Boson, 3);
        assert_eq!(
            boson_apply(&fock, m, &v).unwrap(),
            fock.vacuum().scale_rat(&int(3))
        );
        let m = RealizedMode::new(Symbol::J, 3, Side::Fermion, 3);
        assert!(boson_apply(&fock, m, &v).is_err());
    }
}
