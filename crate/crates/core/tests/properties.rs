use proptest::prelude::*;
use superjordan::catalog::{make_dt, make_josp, make_spin, make_st_rd, CatalogEntry};
use superjordan::decomposition::{peirce_of_idempotent, spectral};
use superjordan::isomorphisms::dt_inverse_map;
use superjordan::orbits::{metric_at, metric_oracle, tangent_vector, OrbitSpaces};
use superjordan::scalar::{frac, int, Field, Rational};
use superjordan::superfn::SuperFunction;

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..8, 1i64..5, any::<bool>()).prop_map(|(n, d, neg)| frac(if neg { -n } else { n }, d))
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(int).collect())
}

fn homogeneous(entry: &CatalogEntry, v: Vec<Rational>, parity: u8) -> Vec<Rational> {
    v.into_iter().enumerate().map(|(i, c)| if entry.algebra.parity(i) == parity { c } else { int(0) }).collect()
}

fn entries() -> Vec<CatalogEntry> {
    vec![make_dt(&int(3)), make_josp(1, 1), make_spin(2, 2).unwrap(), make_st_rd(&frac(1, 3), 2).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn beta_is_associative_on_random_elements(which in 0usize..4, a in coeffs(8), b in coeffs(8), c in coeffs(8)) {
        let entry = &entries()[which];
        let n = entry.algebra.dim();
        let beta = entry.beta.as_ref().unwrap();
        let (a, b, c) = (&a[..n], &b[..n], &c[..n]);
        let alg = &entry.algebra;
        prop_assert_eq!(beta.eval(&alg.mul(a, b), c), beta.eval(a, &alg.mul(b, c)));
    }

    #[test]
    fn flat_and_sharp_are_inverse(which in 0usize..4, v in coeffs(8)) {
        let entry = &entries()[which];
        let beta = entry.beta.as_ref().unwrap();
        let v = &v[..entry.algebra.dim()];
        prop_assert_eq!(beta.sharp(&beta.flat(v)).unwrap(), v.to_vec());
    }

    #[test]
    fn super_commutativity_on_homogeneous_elements(which in 0usize..4, a in coeffs(8), b in coeffs(8), pa in 0u8..2, pb in 0u8..2) {
        let entry = &entries()[which];
        let n = entry.algebra.dim();
        let (a, b) = (homogeneous(entry, a[..n].to_vec(), pa), homogeneous(entry, b[..n].to_vec(), pb));
        let alg = &entry.algebra;
        let sign = if pa * pb == 1 { int(-1) } else { int(1) };
        let ba: Vec<Rational> = alg.mul(&b, &a).iter().map(|x| x * &sign).collect();
        prop_assert_eq!(alg.mul(&a, &b), ba);
    }

    #[test]
    fn dt_inverse_map_is_multiplicative(t in nonzero_rational(), a in coeffs(4), b in coeffs(4)) {
        let (src, dst) = (make_dt(&t), make_dt(&t.recip()));
        let phi = dt_inverse_map(&t).unwrap();
        let lhs = phi.apply(&src.algebra.mul(&a, &b));
        let rhs = dst.algebra.mul(&phi.apply(&a), &phi.apply(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dt_tau_vanishes(t in nonzero_rational()) {
        prop_assert!(make_dt(&t).algebra.canonical_form_tau().is_zero());
    }

    #[test]
    fn spectral_reconstructs_frame_points(l1 in nonzero_rational(), l2 in nonzero_rational(), t in nonzero_rational()) {
        let dt = make_dt(&t);
        let x = vec![l1.clone(), l2.clone(), int(0), int(0)];
        let s = spectral(&dt.algebra, &x).unwrap();
        let lambdas = s.exact_lambdas().unwrap();
        let frame = s.frame.as_ref().unwrap();
        let mut sum = vec![int(0); 4];
        for (l, e) in lambdas.iter().zip(&frame.idempotents) {
            for (s, c) in sum.iter_mut().zip(e) {
                *s += l * c;
            }
        }
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn peirce_parts_span_the_algebra(which in 0usize..4) {
        let entry = &entries()[which];
        for e in entry.frame.as_ref().unwrap() {
            let p = peirce_of_idempotent(&entry.algebra, e).unwrap();
            let dims: usize = p.parts().iter().map(|(_, _, s)| s.dim()).sum();
            prop_assert_eq!(dims, entry.algebra.dim());
        }
    }

    #[test]
    fn metric_matches_oracle_on_dt(t in (1i64..6, 1i64..4).prop_map(|(n, d)| frac(n, d)), l1 in nonzero_rational(), l2 in nonzero_rational(), a in coeffs(4), b in coeffs(4), pa in 0u8..2, pb in 0u8..2) {
        prop_assume!(!Field::is_zero(&(&l1 + &l2)));
        let dt = make_dt(&t);
        let (a, b) = (homogeneous(&dt, a, pa), homogeneous(&dt, b, pb));
        let beta = dt.beta.as_ref().unwrap();
        let spaces = OrbitSpaces::new(&dt.algebra).unwrap();
        let xi = beta.flat(&[l1, l2, int(0), int(0)]);
        let ta = tangent_vector(&dt.algebra, beta, &xi, &a).unwrap();
        let tb = tangent_vector(&dt.algebra, beta, &xi, &b).unwrap();
        prop_assert_eq!(
            metric_at(&dt.algebra, beta, &spaces, &xi, &ta, &tb).unwrap(),
            metric_oracle(&dt.algebra, beta, &xi, &a, &b).unwrap()
        );
    }

    #[test]
    fn grassmann_generators_anticommute(i in 0usize..4, j in 0usize..4) {
        let (a, b) = (SuperFunction::odd_coordinate(i), SuperFunction::odd_coordinate(j));
        prop_assert_eq!(a.mul(&b), b.mul(&a).neg());
        if i == j {
            prop_assert!(a.mul(&b).is_zero());
        }
    }
}
