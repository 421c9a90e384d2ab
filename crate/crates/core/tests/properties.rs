use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qtorus::cyclo::{q_of, qnum, zeta, CycNum, HalfInt};
use qtorus::exactla::{algebra_span_dim, ExactMatrix};
use qtorus::poly::QPoly;
use qtorus::ratfunc::RatFunc;

const ORDERS: [u32; 6] = [4, 8, 12, 24, 32, 40];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..12)
        .prop_map(move |c| CycNum::from_coeffs(order, &c.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>()))
}

fn cyc_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|l| (cyc(l), cyc(l), cyc(l)))
}

fn matrix(order: u32, n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec((-2i64..=2, 0i64..8), n * n).prop_map(move |v| {
        let mut it = v.into_iter();
        ExactMatrix::from_fn(n, n, order, |_, _| {
            let (c, e) = it.next().unwrap();
            zeta(order, e).scale(c, 1)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_round_trip((a, _, _) in cyc_triple()) {
        prop_assert_eq!(CycNum::from_coeffs(a.order(), &a.coeffs()), a.clone());
        prop_assert_eq!(a.coeffs().len(), CycNum::zero(a.order()).coeffs().len());
    }

    #[test]
    fn conj_and_galois_are_automorphisms((a, b, _) in cyc_triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let l = a.order() as i64;
        let k = (1..l).rev().find(|k| num_integer::Integer::gcd(k, &l) == 1).unwrap();
        prop_assert_eq!((&a + &b).galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
    }

    #[test]
    fn lift_is_a_homomorphism((a, b, _) in cyc_triple()) {
        let m = 2 * a.order();
        prop_assert_eq!((&a * &b).lift(m).unwrap(), &a.lift(m).unwrap() * &b.lift(m).unwrap());
    }

    #[test]
    fn embedding_matches_arithmetic((a, b, _) in cyc_triple()) {
        let lhs = (&a * &b).to_complex_f64();
        let rhs = a.to_complex_f64() * b.to_complex_f64();
        prop_assert!((lhs - rhs).norm() < 1e-7 * (1.0 + rhs.norm()));
    }

    #[test]
    fn roots_of_unity_inv_is_conj(l in prop::sample::select(ORDERS.to_vec()), k in -100i64..100) {
        let z = zeta(l, k);
        prop_assert_eq!(z.inv().unwrap(), z.conj());
        prop_assert_eq!(z.pow(l as i64).unwrap(), CycNum::one(l));
    }

    #[test]
    fn qnum_identity(n in 3u32..=8, t in -20i64..20) {
        // [x](q − q⁻¹) = q^x − q^{−x} with q^{1/2} = ζ_{8N}^2.
        let x = HalfInt::halves(t);
        let l = 8 * n;
        let q = q_of(n);
        let lhs = &qnum(x, n) * &(&q - &q.inv().unwrap());
        let rhs = &zeta(l, 2 * t) - &zeta(l, -2 * t);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(qnum(-x, n), -qnum(x, n));
    }

    #[test]
    fn rank_of_product(a in matrix(8, 4), b in matrix(8, 4)) {
        let ab = a.matmul(&b).unwrap();
        prop_assert!(ab.rank().unwrap() <= a.rank().unwrap().min(b.rank().unwrap()));
        prop_assert_eq!(a.rank().unwrap() + a.kernel_dim().unwrap(), 4);
    }

    #[test]
    fn adjoint_reverses_products(a in matrix(12, 3), b in matrix(12, 3)) {
        prop_assert_eq!(a.matmul(&b).unwrap().adjoint(), b.adjoint().matmul(&a.adjoint()).unwrap());
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(8, 3)) {
        if let Ok(inv) = a.inverse() {
            prop_assert!(a.matmul(&inv).unwrap().is_identity());
            prop_assert!(inv.matmul(&a).unwrap().is_identity());
        } else {
            prop_assert!(a.rank().unwrap() < 3);
        }
    }

    #[test]
    fn span_independent_of_generator_order(a in matrix(4, 3), b in matrix(4, 3)) {
        let d1 = algebra_span_dim(&[a.clone(), b.clone()], true).unwrap();
        let d2 = algebra_span_dim(&[b, a], true).unwrap();
        prop_assert_eq!(d1, d2);
        prop_assert!(d1 <= 9);
    }

    #[test]
    fn ratfunc_field_laws(
        p in prop::collection::vec(-4i64..=4, 1..5),
        r in prop::collection::vec(-4i64..=4, 1..5),
        k in -3i64..=3,
    ) {
        let a = RatFunc::new(QPoly::from_ints(&p), QPoly::from_ints(&[1, 1])).unwrap();
        let b = RatFunc::vpow(k).add(&RatFunc::new(QPoly::from_ints(&r), QPoly::from_ints(&[2, 0, 1])).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        }
    }
}
