//! Singular vectors in graded components of W3 modules.
//!
//! The positive part of the algebra is generated by `L_1`, `L_2` and
//! `Wt_1` (`L_{n+1}` and `Wt_{n+1}` are proportional to `[L_1, L_n]` and
//! `[L_1, Wt_n]`), so a vector is singular iff those three kill it. `Wt_2`
//! is checked as well as a redundant cross-check.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, solve_in_span, LinComb, Poly, RatMatrix, Rational};
use crate::w3core::{singular_vs, singular_vs_prime, AlgebraParams, Mode, StateVector, W3Module};

pub const GENERATING_MODES: [Mode; 3] = [Mode::l(1), Mode::l(2), Mode::wt(1)];
pub const CHECKED_MODES: [Mode; 4] = [Mode::l(1), Mode::l(2), Mode::wt(1), Mode::wt(2)];

#[derive(Clone, Debug, PartialEq)]
pub struct SingularReport {
    pub level: i64,
    pub kernel_dim: usize,
    pub basis: Vec<StateVector>,
    pub checked_modes: Vec<Mode>,
}

/// Stacked matrix of the given positive modes from the level-`level`
/// component into the lower components. Columns follow
/// `module.graded_basis(level)`; rows follow the target bases, mode by mode.
pub fn positive_action_matrix(module: &W3Module, level: i64, modes: &[Mode]) -> Result<RatMatrix> {
    if level < 0 {
        return Err(Error::InvalidArgument(format!("negative level {}", level)));
    }
    if let Some(m) = modes.iter().find(|m| m.index <= 0) {
        return Err(Error::InvalidArgument(format!(
            "{} is not a positive mode",
            m
        )));
    }
    let source = module.graded_basis(level);
    let mut stacked = RatMatrix::zeros(0, source.len());
    for &mode in modes {
        let target = module.graded_basis(level - mode.index);
        let mut block = RatMatrix::zeros(target.len(), source.len());
        for (j, b) in source.iter().enumerate() {
            let image = module.apply_mode(mode, &module.basis_vector(b))?;
            let coords = image.coordinates(&target).ok_or_else(|| {
                Error::InvalidArgument("action matrix needs rational coefficients".into())
            })?;
            for (i, x) in coords.into_iter().enumerate() {
                block.set(i, j, x);
            }
        }
        stacked = stacked.vstack(&block);
    }
    Ok(stacked)
}

/// Canonical (reduced echelon) basis of the common kernel of `modes` at
/// `level`, as state vectors.
pub fn kernel_vectors(module: &W3Module, level: i64, modes: &[Mode]) -> Result<Vec<StateVector>> {
    let m = positive_action_matrix(module, level, modes)?;
    let source = module.graded_basis(level);
    Ok(m.kernel_basis()
        .into_iter()
        .map(|v| vector_from_coords(module, &source, &v))
        .collect())
}

fn vector_from_coords(
    module: &W3Module,
    basis: &[crate::w3core::Monomial],
    coords: &[Rational],
) -> StateVector {
    module.state(
        basis
            .iter()
            .zip(coords)
            .map(|(b, c)| (b.clone(), Poly::constant(c.clone())))
            .collect::<LinComb<_>>(),
    )
}

/// Singular vectors of the `c = -2` vacuum module at `level`.
pub fn find_singular(level: i64) -> Result<SingularReport> {
    find_singular_in(&W3Module::vacuum_c_minus_two(), level)
}

/// Singular vectors at `level` in any module with rational weights. In the
/// `c = -2` vacuum module at level 6 the basis is re-expressed in the
/// `(v_s, vt_s')` coordinates whenever those span the kernel.
pub fn find_singular_in(module: &W3Module, level: i64) -> Result<SingularReport> {
    let mut basis = kernel_vectors(module, level, &CHECKED_MODES)?;
    if level == 6 && module.is_vacuum() && module.params() == &AlgebraParams::c_minus_two() {
        if let Some(normalized) = change_to_reference_basis(module, &basis) {
            basis = normalized;
        }
    }
    Ok(SingularReport {
        level,
        kernel_dim: basis.len(),
        basis,
        checked_modes: CHECKED_MODES.to_vec(),
    })
}

/// Rewrites a 2-dimensional kernel basis as `(v_s, vt_s')`, each obtained as
/// an explicit combination of the computed basis vectors. Returns `None` if
/// the references do not lie in the span or the dimensions differ.
fn change_to_reference_basis(
    module: &W3Module,
    kernel: &[StateVector],
) -> Option<Vec<StateVector>> {
    let refs = [singular_vs(module), singular_vs_prime(module)];
    if kernel.len() != refs.len() {
        return None;
    }
    let level_basis = module.graded_basis(6);
    let kcoords: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|v| v.coordinates(&level_basis))
        .collect::<Option<_>>()?;
    let mut out = Vec::new();
    for r in &refs {
        let rc = r.coordinates(&level_basis)?;
        let combo = solve_in_span(&kcoords, &rc)?;
        let mut acc = module.zero_vector();
        for (k, c) in kernel.iter().zip(&combo) {
            acc = acc.add(&k.scale(c)).ok()?;
        }
        out.push(acc);
    }
    Some(out)
}

/// True iff every positive mode `L_k`, `Wt_k` with `1 <= k <= max_index`
/// annihilates `v`.
pub fn full_sweep_annihilates(module: &W3Module, v: &StateVector, max_index: i64) -> Result<bool> {
    for k in 1..=max_index {
        for m in [Mode::l(k), Mode::wt(k)] {
            if !module.apply_mode(m, v)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Action of `Wt_0` on the span of `(v_s, vt_s')` in the `c = -2` vacuum
/// module.
#[derive(Clone, Debug, PartialEq)]
pub struct W0Structure {
    /// Coordinates of the input vector in `(v_s, vt_s')`.
    pub coords: [Rational; 2],
    /// Coordinates of `Wt_0` applied to the input.
    pub image_coords: [Rational; 2],
    /// Column `j` holds the coordinates of `Wt_0` applied to basis vector `j`.
    pub matrix: [[Rational; 2]; 2],
    /// `Wt_0 v_s = vs_to_prime * vt_s'`.
    pub vs_to_prime: Rational,
    /// `Wt_0 vt_s' = prime_to_vs * v_s`.
    pub prime_to_vs: Rational,
    pub trace: Rational,
    pub determinant: Rational,
    /// Rational eigenvalues of `Wt_0` (empty if the characteristic
    /// polynomial has no rational roots), ascending.
    pub eigenvalues: Vec<Rational>,
    /// An eigenvector for each rational eigenvalue, in `(v_s, vt_s')`
    /// coordinates with leading entry 1.
    pub eigenvectors: Vec<[Rational; 2]>,
    /// Square of the eigenvalues of the unrescaled `W_0 = (2/sqrt 6) Wt_0`,
    /// i.e. `-2/3 * determinant` for a traceless action.
    pub unrescaled_eigenvalue_squared: Rational,
    /// Whether the unrescaled eigenvalues are `+-6`, the value claimed
    /// alongside the two scalars.
    pub matches_claimed_plus_minus_six: bool,
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

pub fn w0_structure(module: &W3Module, v: &StateVector) -> Result<W0Structure> {
    if !module.is_vacuum() || module.params() != &AlgebraParams::c_minus_two() {
        return Err(Error::InvalidArgument(
            "W0 structure is defined in the c = -2 vacuum module".into(),
        ));
    }
    let basis6 = module.graded_basis(6);
    let refs = [singular_vs(module), singular_vs_prime(module)];
    let ref_coords: Vec<Vec<Rational>> = refs
        .iter()
        .map(|r| r.coordinates(&basis6).expect("rational level-6 vector"))
        .collect();
    let locate = |x: &StateVector| -> Result<[Rational; 2]> {
        let c = x.coordinates(&basis6).ok_or(Error::NotInSpan)?;
        let s = solve_in_span(&ref_coords, &c).ok_or(Error::NotInSpan)?;
        Ok([s[0].clone(), s[1].clone()])
    };
    let coords = if v.is_zero() {
        [Rational::zero(), Rational::zero()]
    } else {
        locate(v)?
    };
    let col0 = locate(&module.apply_mode(Mode::wt(0), &refs[0])?)?;
    let col1 = locate(&module.apply_mode(Mode::wt(0), &refs[1])?)?;
    let matrix = [
        [col0[0].clone(), col1[0].clone()],
        [col0[1].clone(), col1[1].clone()],
    ];
    let image_coords = [
        &matrix[0][0] * &coords[0] + &matrix[0][1] * &coords[1],
        &matrix[1][0] * &coords[0] + &matrix[1][1] * &coords[1],
    ];
    let trace = &matrix[0][0] + &matrix[1][1];
    let determinant = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
    let disc = &trace * &trace - int(4) * &determinant;
    let mut eigenvalues = Vec::new();
    if let Some(root) = rational_sqrt(&disc) {
        let half = rat(1, 2);
        eigenvalues.push((&trace - &root) * &half);
        if !root.is_zero() {
            eigenvalues.push((&trace + &root) * &half);
        }
    }
    let eigenvectors = eigenvalues
        .iter()
        .filter_map(|lam| {
            let shifted = RatMatrix::from_rows(
                2,
                vec![
                    vec![&matrix[0][0] - lam, matrix[0][1].clone()],
                    vec![matrix[1][0].clone(), &matrix[1][1] - lam],
                ],
            );
            shifted
                .kernel_basis()
                .into_iter()
                .next()
                .map(|k| [k[0].clone(), k[1].clone()])
        })
        .collect();
    // Wt_0 = (sqrt 6 / 2) W_0, so W_0^2 = (2/3) Wt_0^2 and on a traceless
    // 2x2 action Wt_0^2 = -det.
    let wt_sq = -determinant.clone();
    let unrescaled_eigenvalue_squared = rat(2, 3) * &wt_sq;
    let matches_claimed_plus_minus_six =
        trace.is_zero() && unrescaled_eigenvalue_squared == int(36);
    Ok(W0Structure {
        coords,
        image_coords,
        vs_to_prime: matrix[1][0].clone(),
        prime_to_vs: matrix[0][1].clone(),
        matrix,
        trace,
        determinant,
        eigenvalues,
        eigenvectors,
        unrescaled_eigenvalue_squared,
        matches_claimed_plus_minus_six,
    })
}

/// Evidence that a vector singular in the vacuum module is not singular in
/// the Verma module `M(0,0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VermaWitness {
    pub name: &'static str,
    /// First mode among `CHECKED_MODES` with nonzero image in `M(0,0)`.
    pub witness: Option<Mode>,
    pub image: Option<StateVector>,
    /// All checked modes kill the vector in the vacuum module.
    pub singular_in_vacuum_module: bool,
}

impl VermaWitness {
    pub fn holds(&self) -> bool {
        self.witness.is_some() && self.singular_in_vacuum_module
    }
}

pub fn verify_not_verma_singular() -> Result<Vec<VermaWitness>> {
    let params = AlgebraParams::c_minus_two();
    let verma = W3Module::verma(params.clone(), Poly::zero(), Poly::zero());
    let vm = W3Module::vacuum(params);
    type Builder = fn(&W3Module) -> StateVector;
    let cases: [(&str, Builder); 2] = [("v_s", singular_vs), ("vt_s'", singular_vs_prime)];
    let mut out = Vec::new();
    for (name, build) in cases {
        let in_verma = build(&verma);
        let mut witness = None;
        let mut image = None;
        for m in CHECKED_MODES {
            let img = verma.apply_mode(m, &in_verma)?;
            if !img.is_zero() {
                witness = Some(m);
                image = Some(img);
                break;
            }
        }
        let in_vm = build(&vm);
        let mut singular = true;
        for m in CHECKED_MODES {
            singular &= vm.apply_mode(m, &in_vm)?.is_zero();
        }
        out.push(VermaWitness {
            name,
            witness,
            image,
            singular_in_vacuum_module: singular,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_two_blocks() {
        let vm = W3Module::vacuum_c_minus_two();
        let m = positive_action_matrix(&vm, 2, &[Mode::l(1)]).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 1));
        let m = positive_action_matrix(&vm, 2, &[Mode::l(2)]).unwrap();
        assert_eq!(m, RatMatrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn level_six_has_eight_columns() {
        let vm = W3Module::vacuum_c_minus_two();
        let m = positive_action_matrix(&vm, 6, &GENERATING_MODES).unwrap();
        assert_eq!(m.cols(), 8);
    }

    #[test]
    fn rejects_non_positive_modes() {
        let vm = W3Module::vacuum_c_minus_two();
        assert!(positive_action_matrix(&vm, 3, &[Mode::l(0)]).is_err());
    }

    #[test]
    fn vacuum_is_singular_at_level_zero() {
        let r = find_singular(0).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(
            r.basis[0],
            W3Module::vacuum_c_minus_two().highest_weight_vector()
        );
    }

    #[test]
    fn w0_rejects_vectors_outside_the_span() {
        let vm = W3Module::vacuum_c_minus_two();
        let v = vm.parse_vector("L(-6)vac").unwrap();
        assert_eq!(w0_structure(&vm, &v), Err(Error::NotInSpan));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(49, 4)), Some(rat(7, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
