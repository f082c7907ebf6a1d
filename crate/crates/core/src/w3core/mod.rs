//! The W3 mode algebra, PBW normal ordering (including the nonlinear
//! `Lambda` term) and the vacuum / Verma modules.

mod algebra;
mod expr;
mod fields;
mod mode;
mod module;

pub use algebra::{commutator, lambda_apply, AlgebraParams, ModeAction, OpExpr};
pub use expr::{format_vector, parse_terms, RawTerm};
pub(crate) use mode::partitions;
pub use mode::{Family, Mode, Monomial};
pub use module::{ModuleKind, ModuleTag, StateVector, W3Module};

/// `v_s = (Wt_{-3}^2 - 19/36 L_{-3}^2 - 8/9 L_{-2}^3 - 14/9 L_{-2}L_{-4} + 44/9 L_{-6})|0>`,
/// the W-even level-6 singular vector of the `c = -2` vacuum module.
pub const SINGULAR_VS: &str =
    "Wt(-3)Wt(-3)vac - 19/36*L(-3)L(-3)vac - 8/9*L(-2)L(-2)L(-2)vac - 14/9*L(-2)L(-4)vac + 44/9*L(-6)vac";

/// `9/2 Wt_{-6} + 9 L_{-3}Wt_{-3} - 6 L_{-2}Wt_{-4}` on the vacuum, the W-odd
/// level-6 singular vector (unrescaled partner up to a factor `sqrt 6 / 2`).
pub const SINGULAR_VS_PRIME: &str = "9/2*Wt(-6)vac + 9*L(-3)Wt(-3)vac - 6*L(-2)Wt(-4)vac";

/// `v_s` built in `module` by applying its words to the highest weight vector.
pub fn singular_vs(module: &W3Module) -> StateVector {
    module
        .parse_vector(SINGULAR_VS)
        .expect("reference expression is well formed")
}

pub fn singular_vs_prime(module: &W3Module) -> StateVector {
    module
        .parse_vector(SINGULAR_VS_PRIME)
        .expect("reference expression is well formed")
}
