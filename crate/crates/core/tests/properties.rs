//! Algebraic invariants on random inputs.

mod common;

use proptest::collection::vec;
use proptest::prelude::*;
use segre_implicit::biparam::{lift_mixed, parse_parametrization, BiHomPoly, Parametrization};
use segre_implicit::exactla::ExactMatrix;
use segre_implicit::field::{Field, FieldElem};
use segre_implicit::segre::{self, omega, reduce_mono, theta, SegreElem};
use segre_implicit::tpoly::{polydet, LinearForm, Mono, TPoly, VarSet};

const Q: Field = Field::Rationals;

fn bihom(n1: u32, n2: u32) -> impl Strategy<Value = BiHomPoly> {
    vec((0..=n1, 0..=n2, -9i64..=9), 0..8).prop_map(move |terms| {
        let t = terms.into_iter().map(|(i, j, c)| (Mono([i, n1 - i, j, n2 - j]), Q.from_i64(c)));
        BiHomPoly::new(TPoly::from_terms(VarSet::Param, Q, t), (n1, n2)).unwrap()
    })
}

fn normal_elem(n: u32) -> impl Strategy<Value = SegreElem> {
    let size = segre::dim(n);
    vec(-9i64..=9, size).prop_map(move |c| {
        let coords: Vec<FieldElem> = c.into_iter().map(|x| Q.from_i64(x)).collect();
        SegreElem::from_coords(n, Q, &coords)
    })
}

/// Any degree-`n` element, reduced on construction.
fn any_elem(n: u32) -> impl Strategy<Value = SegreElem> {
    vec((0..=n, 0..=n, 0..=n, -9i64..=9), 0..6).prop_map(move |terms| {
        let t = terms.into_iter().filter_map(|(a, b, c, k)| {
            (a + b + c <= n).then(|| (Mono([a, b, c, n - a - b - c]), Q.from_i64(k)))
        });
        SegreElem::from_terms(n, Q, t).unwrap()
    })
}

fn tpoly(max_deg: u32) -> impl Strategy<Value = TPoly> {
    vec(([0..=max_deg, 0..=max_deg, 0..=max_deg, 0..=max_deg], -5i64..=5), 1..5).prop_map(move |terms| {
        let t = terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| (Mono(e), Q.from_i64(c)));
        TPoly::from_terms(VarSet::T, Q, t)
    })
}

fn nonzero_tpoly(max_deg: u32) -> impl Strategy<Value = TPoly> {
    tpoly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn int_matrix(n: usize, m: usize) -> impl Strategy<Value = ExactMatrix> {
    vec(vec(-4i64..=4, m), n).prop_map(|rows| {
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| Q.from_i64(x)).collect()).collect();
        ExactMatrix::from_rows(Q, rows).unwrap()
    })
}

fn square(max_n: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_n).prop_flat_map(|n| int_matrix(n, n))
}

fn rect() -> impl Strategy<Value = ExactMatrix> {
    (1..=6usize, 1..=6usize).prop_flat_map(|(n, m)| int_matrix(n, m))
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &ExactMatrix) -> FieldElem {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Q.zero();
    for j in 0..n {
        let minor: Vec<Vec<FieldElem>> =
            (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| m.get(r, c).clone()).collect()).collect();
        let term = m.get(0, j) * &cofactor_det(&ExactMatrix::from_rows(Q, minor).unwrap());
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn point() -> impl Strategy<Value = [FieldElem; 4]> {
    [-7i64..=7, -7i64..=7, -7i64..=7, -7i64..=7].prop_map(|v| v.map(|x| Q.from_i64(x)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn theta_after_omega_is_identity(f in (0u32..5).prop_flat_map(|n| bihom(n, n))) {
        prop_assert_eq!(theta(&omega(&f).unwrap()), f);
    }

    #[test]
    fn omega_round_trip_degree_two(f in bihom(2, 2)) {
        let w = omega(&f).unwrap();
        prop_assert!(w.terms().all(|(m, _)| m.0[0] == 0 || m.0[3] == 0));
        prop_assert_eq!(theta(&w), f);
    }

    #[test]
    fn omega_round_trip_degree_three(f in bihom(3, 3)) {
        prop_assert_eq!(theta(&omega(&f).unwrap()), f);
    }

    #[test]
    fn omega_inverts_theta(x in normal_elem(3)) {
        prop_assert_eq!(omega(&theta(&x)).unwrap(), x);
    }

    #[test]
    fn nf_mul_commutative_associative(a in any_elem(1), b in any_elem(2), c in any_elem(2)) {
        prop_assert_eq!(a.nf_mul(&b), b.nf_mul(&a));
        prop_assert_eq!(a.nf_mul(&b).nf_mul(&c), a.nf_mul(&b.nf_mul(&c)));
    }

    #[test]
    fn reduce_then_multiply(a in any_elem(2), b in any_elem(2)) {
        // The raw product reduced at the end equals the product of reduced factors.
        let mut raw = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                raw.push((ma.mul(mb), ca * cb));
            }
        }
        let reduced = SegreElem::from_terms(4, Q, raw).unwrap();
        prop_assert_eq!(reduced, a.nf_mul(&b));
        prop_assert!(a.nf_mul(&b).terms().all(|(m, _)| reduce_mono(*m) == *m));
    }

    #[test]
    fn bihom_ops_keep_bidegree(a in bihom(2, 3), b in bihom(2, 3), c in bihom(1, 1)) {
        prop_assert_eq!(a.add(&b).unwrap().bidegree(), (2, 3));
        prop_assert_eq!(a.mul(&c).unwrap().bidegree(), (3, 4));
        prop_assert_eq!(a.substitute_powers(3, 2).bidegree(), (6, 6));
    }

    #[test]
    fn print_parse_round_trip(f in [bihom(2, 3), bihom(2, 3), bihom(2, 3), bihom(2, 3)]) {
        prop_assume!(f.iter().any(|x| !x.is_zero()));
        let p = Parametrization::new(f).unwrap();
        let text = p.to_text();
        let back = parse_parametrization(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn lift_is_idempotent(f in [bihom(2, 3), bihom(2, 3), bihom(2, 3), bihom(2, 3)]) {
        prop_assume!(f.iter().any(|x| !x.is_zero()));
        let once = lift_mixed(&Parametrization::new(f).unwrap()).unwrap();
        prop_assert_eq!(once.bidegree(), (6, 6));
        prop_assert_eq!(lift_mixed(&once).unwrap(), once);
    }

    #[test]
    fn exact_div_undoes_mul(a in nonzero_tpoly(3), b in nonzero_tpoly(3)) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn gcd_keeps_common_factor(a in nonzero_tpoly(2), b in nonzero_tpoly(2), c in nonzero_tpoly(2)) {
        let g = (&a * &c).mvgcd(&(&b * &c)).unwrap();
        prop_assert!(g.divides(&(&a * &c)));
        prop_assert!(c.divides(&g) || c.is_constant());
    }

    #[test]
    fn nullspace_and_rank(m in rect()) {
        let n = m.nullspace();
        prop_assert_eq!(m.rank() + n.cols(), m.cols());
        prop_assert!(m.mul(&n).unwrap().is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor(m in square(5)) {
        prop_assert_eq!(m.det_bareiss().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn polydet_of_constants(m in square(5)) {
        let pm: Vec<Vec<TPoly>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| TPoly::constant(VarSet::T, m.get(r, c).clone())).collect())
            .collect();
        prop_assert_eq!(polydet(&pm).unwrap(), TPoly::constant(VarSet::T, m.det_bareiss().unwrap()));
    }

    #[test]
    fn evaluation_commutes_with_det(
        entries in (1..=5usize).prop_flat_map(|n| vec(vec([-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3], n), n)),
        p in point(),
    ) {
        let lf: Vec<Vec<LinearForm>> = entries.iter()
            .map(|r| r.iter().map(|c| LinearForm(c.map(|x| Q.from_i64(x)))).collect())
            .collect();
        let pm: Vec<Vec<TPoly>> = lf.iter().map(|r| r.iter().map(LinearForm::to_tpoly).collect()).collect();
        let at: Vec<Vec<FieldElem>> = lf.iter().map(|r| r.iter().map(|l| l.eval(&p)).collect()).collect();
        let d = polydet(&pm).unwrap();
        prop_assert_eq!(d.eval(&p), ExactMatrix::from_rows(Q, at).unwrap().det_bareiss().unwrap());
    }

    #[test]
    fn modular_rank_bounded_by_rational(m in rect(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = segre_implicit::field::random_prime(&mut rng);
        prop_assert!(m.reduce_mod(p).unwrap().rank() <= m.rank());
    }
}

#[test]
fn generic_two_by_two_is_the_quadric() {
    let t = |i| TPoly::var(VarSet::T, Q, i);
    let m = vec![vec![t(0), t(1)], vec![t(2), t(3)]];
    assert_eq!(polydet(&m).unwrap(), common::tq("T1*T4 - T2*T3"));
}

#[test]
fn basis_dimensions() {
    for n in 0..=12 {
        assert_eq!(segre::basis(n).len(), (n as usize + 1).pow(2));
    }
}

mod syzygies {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use segre_implicit::matrixrep::{build_matrix, membership};
    use segre_implicit::zcomplex::{choose_nu0, cycles_dim, koszul_matrix, strand_report, syzygy_strand, SegreIdeal};

    fn dense(d: u32, seed: u64) -> SegreIdeal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Parametrization::random_dense((d, d), Q, 5, &mut rng).unwrap();
        SegreIdeal::from_parametrization(&p).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn syzygies_annihilate_generators(d in 1u32..=2, nu in 0u32..=3, seed in any::<u64>()) {
            let ideal = dense(d, seed);
            let syz = syzygy_strand(&ideal, nu);
            prop_assert_eq!(syz.len(), cycles_dim(&ideal, 1, nu + d));
            for a in &syz {
                let mut acc = SegreElem::zero(nu + d, Q);
                for i in 0..4 {
                    acc = acc.add(&a[i].nf_mul(&ideal.gens()[i])).unwrap();
                }
                prop_assert!(acc.is_zero());
            }
        }

        #[test]
        fn koszul_differentials_compose_to_zero(d in 1u32..=2, mu in 0u32..=6, seed in any::<u64>()) {
            let ideal = dense(d, seed);
            for i in 1..=3 {
                let prod = koszul_matrix(&ideal, i, mu).mul(&koszul_matrix(&ideal, i + 1, mu)).unwrap();
                prop_assert!(prod.is_zero());
            }
        }

        #[test]
        fn euler_vanishes_from_nu0(d in 1u32..=2, seed in any::<u64>()) {
            let ideal = dense(d, seed);
            let nu0 = choose_nu0(&ideal, false).chosen;
            for nu in nu0..=nu0 + 1 {
                let r = strand_report(&ideal, nu);
                prop_assert_eq!(r.euler, 0);
                prop_assert_eq!(r.expected_deg_d, (2 * d * d) as i64);
            }
        }

        #[test]
        fn columns_reassemble_to_syzygies(d in 1u32..=2, seed in any::<u64>()) {
            let ideal = dense(d, seed);
            let m = build_matrix(&ideal, 2 * d - 1);
            for c in 0..m.cols() {
                prop_assert_eq!(m.reassemble(c), m.syzygy(c));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn quadric_vanishing_iff_rank_drop(p in point()) {
            prop_assume!(p.iter().any(|x| !x.is_zero()));
            let m = build_matrix(&SegreIdeal::from_parametrization(&common::segre()).unwrap(), 1);
            let on = common::tq("T1*T4 - T2*T3").eval(&p).is_zero();
            let r = membership(&m, &p, m.rows()).unwrap();
            prop_assert_eq!(r.on_surface, on);
            prop_assert_eq!(r.rank < m.rows(), on);
        }
    }
}
