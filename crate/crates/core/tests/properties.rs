use std::collections::BTreeMap;

use proptest::prelude::*;

use w3_core::exact::{int, rat, LinComb, Poly, RatMatrix, Rational};
use w3_core::freefield::{BcSystem, BosonFock, Fermion, Partition};
use w3_core::w3core::{Mode, W3Module};
use w3_core::winf::{self, DPoly, DiffOp};
use w3_core::zhu;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), small_rational()), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for ((a, b, c), coeff) in terms {
            p.add_term([a, b, c], coeff);
        }
        p
    })
}

fn vacuum() -> &'static W3Module {
    zhu::c_minus_two().module()
}

fn vacuum_vector() -> impl Strategy<Value = LinComb<w3_core::w3core::Monomial>> {
    let basis: Vec<_> = (0..=6).flat_map(|l| vacuum().graded_basis(l)).collect();
    prop::collection::vec((0..basis.len(), small_rational()), 0..5).prop_map(move |picks| {
        picks
            .into_iter()
            .map(|(i, c)| (basis[i].clone(), Poly::constant(c)))
            .collect()
    })
}

fn dpoly(max_deg: usize) -> impl Strategy<Value = DPoly> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(DPoly::new)
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    (
        prop::collection::vec((-4i64..=4, dpoly(4)), 1..3),
        small_rational(),
    )
        .prop_map(|(pieces, c)| {
            pieces.into_iter().fold(DiffOp::central(c), |acc, (r, f)| {
                acc.add(&DiffOp::graded(r, f))
            })
        })
}

proptest! {
    #[test]
    fn poly_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn poly_print_parse_round_trip(a in small_poly()) {
        let back: Poly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn vector_print_parse_round_trip(terms in vacuum_vector()) {
        let v = vacuum().state(terms);
        let back = vacuum().parse_vector(&v.to_string()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn kernel_vectors_are_annihilated(
        rows in 1usize..5,
        cols in 1usize..6,
        entries in prop::collection::vec(small_rational(), 30),
    ) {
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|r| (0..cols).map(|c| entries[r * cols + c].clone()).collect())
            .collect();
        let m = RatMatrix::from_rows(cols, data);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn modes_shift_level_by_index(terms in vacuum_vector(), index in -3i64..=3, w in any::<bool>()) {
        let v = vacuum().state(terms);
        let mode = if w { Mode::wt(index) } else { Mode::l(index) };
        let out = vacuum().apply_mode(mode, &v).unwrap();
        for level in out.levels() {
            prop_assert!(v.levels().contains(&(level + index)));
        }
    }

    #[test]
    fn zhu_reduction_is_linear(a in vacuum_vector(), b in vacuum_vector(), s in small_rational()) {
        let z = zhu::c_minus_two();
        let va = vacuum().state(a);
        let vb = vacuum().state(b);
        let combo = va.add(&vb.scale(&s)).unwrap();
        let lhs = z.reduce(&combo).unwrap().value;
        let rhs = z.reduce(&va).unwrap().value + z.reduce(&vb).unwrap().value.scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent_and_w_linear(a in small_poly()) {
        let once = zhu::quotient_normal_form(&zhu::ZhuElement::new(a));
        prop_assert!(once.value.degree_in(w3_core::exact::Var::W) <= 1);
        prop_assert_eq!(zhu::quotient_normal_form(&once), once);
    }

    #[test]
    fn involution_on_weights(a in small_rational()) {
        let (t1, w1) = zhu::weight_from_alpha_rat(&a);
        let (t2, w2) = zhu::weight_from_alpha_rat(&zhu::iso_partner(&a));
        prop_assert_eq!(t1, t2);
        prop_assert_eq!(w1, -w2);
    }

    #[test]
    fn bracket_is_antisymmetric(x in diffop(), y in diffop()) {
        prop_assert!(winf::bracket(&x, &y).add(&winf::bracket(&y, &x)).is_zero());
    }

    #[test]
    fn jacobi_identity(x in diffop(), y in diffop(), z in diffop()) {
        let cyc = winf::bracket(&winf::bracket(&x, &y), &z)
            .add(&winf::bracket(&winf::bracket(&y, &z), &x))
            .add(&winf::bracket(&winf::bracket(&z, &x), &y));
        prop_assert!(cyc.is_zero());
    }

    #[test]
    fn basis_round_trip(x in diffop()) {
        let body = DiffOp { central: int(0), ..x };
        prop_assert_eq!(winf::from_l_coords(&winf::l_coords(&body)), body.clone());
        prop_assert_eq!(winf::from_j_coords(&winf::j_coords(&body)), body.clone());
        let via_j: BTreeMap<_, _> = winf::l_coords(&winf::from_j_coords(&winf::j_coords(&body)));
        prop_assert_eq!(via_j, winf::l_coords(&body));
    }

    #[test]
    fn dsr_inversion_symmetry(n in 2i64..8, p in 1i64..9, q in 1i64..9, neg in any::<bool>()) {
        let x = if neg { rat(-p, q) } else { rat(p, q) };
        let k1 = &x - int(n);
        let k2 = x.recip() - int(n);
        prop_assert_eq!(winf::dsr_central_charge(n, &k1).unwrap(), winf::dsr_central_charge(n, &k2).unwrap());
    }

    #[test]
    fn fermion_bilinears_preserve_charge_and_shift_level(level in 0i64..5, pick in 0usize..7, n in -2i64..=2) {
        let bc = BcSystem;
        let basis = bc.charge_zero_basis(level);
        let m = basis[pick % basis.len()].clone();
        let v = LinComb::single(m);
        for out in [bc.j(n, &v), bc.l(n, &v), bc.wt(n, &v)] {
            for b in out.basis() {
                prop_assert_eq!(b.charge(), 0);
                prop_assert_eq!(b.level(), level - n);
            }
        }
        let shifted = bc.op(Fermion::B, -1, &v);
        for b in shifted.basis() {
            prop_assert_eq!(b.charge(), 1);
        }
    }

    #[test]
    fn boson_modes_shift_level(level in 0i64..5, pick in 0usize..7, n in -3i64..=3) {
        let fock = BosonFock::new(Poly::zero());
        let basis = fock.graded_basis(level);
        let v = LinComb::single(basis[pick % basis.len()].clone());
        for out in [fock.j(n, &v), fock.l(n, &v), fock.wt(n, &v)] {
            for p in out.basis() {
                prop_assert_eq!(Partition::level(p), level - n);
            }
        }
    }
}
