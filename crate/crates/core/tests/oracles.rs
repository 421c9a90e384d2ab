//! Independent checks: floating-point closed forms, classical limits, modular
//! closures, and the algebra-span route for centralizers.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use qtorus::braid_image::{image_order, Mode, DEFAULT_BUDGET};
use qtorus::cyclo::{sqrt_int, CycNum, HalfInt};
use qtorus::fusion::bratteli_dims;
use qtorus::gaussian::{build_braid, eta, gauss_sum, trace_formula_check};
use qtorus::modp;
use qtorus::nso::{build_b, centralizer_dim, centralizer_dim_exact, spectrum_candidates, spectrum_check, Variant};
use qtorus::torus::build_torus_rep;
use qtorus::verma::{at_classical, norms_generic, unitarity_check};

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + b.norm())
}

#[test]
fn gauss_sums_match_closed_form() {
    // m ≡ 0 mod 4: G(m) = (1 + i)√m.
    for n in 3..=8u32 {
        let m = 4 * n;
        let g = gauss_sum(m, 8 * n).to_complex_f64();
        assert!(close(g, Complex64::new(1.0, 1.0) * (m as f64).sqrt()), "m = {m}");
    }
    // Odd m: √m or i√m.
    for m in [3u32, 5, 7, 11, 13] {
        let g = gauss_sum(m, 4 * m).to_complex_f64();
        let want = if m % 4 == 1 { Complex64::new((m as f64).sqrt(), 0.0) } else { Complex64::new(0.0, (m as f64).sqrt()) };
        assert!(close(g, want), "m = {m}");
    }
}

#[test]
fn square_roots_are_positive() {
    for (m, l) in [(2u64, 8u32), (3, 24), (5, 40), (6, 48), (7, 56), (8, 32), (12, 48), (16, 64)] {
        let r = sqrt_int(m, l).unwrap();
        assert_eq!(&r * &r, CycNum::from_int(l, m as i64));
        assert!(close(r.to_complex_f64(), Complex64::new((m as f64).sqrt(), 0.0)));
    }
}

#[test]
fn diagonal_braid_entries_match_floating_sum() {
    // For n = 2 the generator u_1 is diagonal with entries q^i, so R_1 is diagonal
    // and each entry is a finite exponential sum.
    for n_cap in 3..=8u32 {
        let rep = build_torus_rep(n_cap, 2).unwrap();
        let br = build_braid(&rep).unwrap();
        let nf = n_cap as f64;
        for i in 0..rep.dim {
            let diag = i % (2 * n_cap as usize);
            let want: Complex64 = if n_cap % 2 == 1 {
                (0..n_cap)
                    .map(|j| {
                        let jf = j as f64;
                        Complex64::from_polar(1.0, 2.0 * PI * jf * jf / nf + 2.0 * PI * jf * diag as f64 / nf)
                    })
                    .sum::<Complex64>()
                    / nf.sqrt()
            } else {
                let alpha = 1.0 - nf * if (n_cap / 2) % 2 == 0 { 1.0 } else { -1.0 };
                (0..2 * n_cap)
                    .map(|j| {
                        let jf = j as f64;
                        Complex64::from_polar(1.0, PI * alpha * jf * jf / (2.0 * nf) + PI * jf * diag as f64 / nf)
                    })
                    .sum::<Complex64>()
                    / (2.0 * nf).sqrt()
            };
            let got = br.r[0].get(i, i).to_complex_f64();
            assert!(close(got, want), "N={n_cap} i={i}: {got} vs {want}");
        }
    }
}

#[test]
fn spectrum_multiplicities_match_diagonal_count() {
    for n_cap in 3..=6u32 {
        let rep = build_torus_rep(n_cap, 3).unwrap();
        for variant in Variant::ALL {
            let bg = build_b(&rep, variant).unwrap();
            let report = spectrum_check(&bg).unwrap();
            let cands = spectrum_candidates(n_cap, variant);
            let counts: Vec<usize> = cands
                .iter()
                .map(|(_, c)| (0..rep.dim).filter(|&i| bg.b[0].get(i, i) == c).count())
                .collect();
            assert_eq!(report.multiplicities[0], counts, "N={n_cap} {}", variant.name());
        }
    }
}

#[test]
fn eta_matches_floating_exponential() {
    for n_cap in [4u32, 6, 8] {
        for t in 0..=n_cap as i64 {
            let a = n_cap as f64 - 2.0 * t as f64;
            let want = Complex64::from_polar(1.0, a * (a + 2.0) * PI / 8.0);
            assert!(close(eta(n_cap, t).to_complex_f64(), want));
        }
        let r = trace_formula_check(n_cap).unwrap();
        let total: f64 = r.eta.iter().zip(&r.binomials).map(|(&e, &c)| e as f64 * c as f64).sum();
        assert!((total / 2f64.powi(n_cap as i32) - 2f64.powf(-(n_cap as f64) / 2.0)).abs() < 1e-12);
    }
}

#[test]
fn verma_classical_limit() {
    // At q = 1: α_{i−1,i} = i(2λ−i+1)/4.
    for t in 0..=8i64 {
        let lambda = HalfInt::halves(t);
        let norms = norms_generic(lambda, t as usize + 1).unwrap();
        let mut want = BigRational::from_integer(1.into());
        for (j, nrm) in norms.iter().enumerate() {
            if j > 0 {
                let i = j as i64;
                want *= BigRational::new((i * (t - i + 1)).into(), 4.into());
            }
            assert_eq!(at_classical(nrm).unwrap(), want, "2λ = {t}, j = {j}");
        }
    }
}

#[test]
fn verma_norms_match_floating_recursion() {
    for ell in 3..=8u32 {
        for t in 0..ell as i64 {
            let r = unitarity_check(HalfInt::halves(t), ell).unwrap();
            let qn = |x: f64| (PI * x / ell as f64).sin() / (PI / ell as f64).sin();
            let c = |x: f64| 2.0 * (PI * x / ell as f64).cos();
            let lam = t as f64 / 2.0;
            let mut norm = 1.0;
            for (j, exact) in r.norms.iter().enumerate() {
                if j > 0 {
                    let i = j as f64;
                    norm *= qn(i) * qn(2.0 * lam - i + 1.0) / (c(lam - i) * c(lam - i + 1.0));
                }
                let got = exact.to_complex_f64();
                assert!((got.re - norm).abs() < 1e-9 && got.im.abs() < 1e-9, "ℓ={ell} 2λ={t} j={j}");
            }
        }
    }
}

#[test]
fn fusion_matches_exact_span() {
    for (n_cap, n_max) in [(3u32, 4usize), (4, 3), (5, 3), (6, 2)] {
        let d = bratteli_dims(n_cap, n_max).unwrap();
        for n in 2..=n_max {
            assert_eq!(centralizer_dim_exact(n_cap, n).unwrap() as u128, d[n - 1], "N={n_cap} n={n}");
            assert_eq!(centralizer_dim(n_cap, n).unwrap().dim as u128, d[n - 1]);
        }
    }
}

fn reduce(x: &CycNum, w: u64) -> u64 {
    let p = modp::P as i64;
    x.coeffs().iter().enumerate().fold(0, |acc, (k, c)| {
        let num = c.numer().to_i64().unwrap().rem_euclid(p) as u64;
        let den = c.denom().to_i64().unwrap().rem_euclid(p) as u64;
        modp::add(acc, modp::mul(modp::mul(num, modp::inv(den)), modp::pow(w, k as u64)))
    })
}

fn modp_projective_order(n_cap: u32, n: usize) -> usize {
    let rep = build_torus_rep(n_cap, n).unwrap();
    let br = build_braid(&rep).unwrap();
    let w = modp::root_of_unity(rep.order as u64).unwrap();
    let d = rep.dim;
    let gens: Vec<Vec<u64>> = br.r.iter().map(|m| m.entries().iter().map(|x| reduce(x, w)).collect()).collect();
    let canon = |m: Vec<u64>| {
        let f = modp::inv(*m.iter().find(|&&x| x != 0).unwrap());
        m.into_iter().map(|x| modp::mul(x, f)).collect::<Vec<u64>>()
    };
    let mul = |a: &[u64], b: &[u64]| {
        let mut o = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                if a[i * d + k] != 0 {
                    for j in 0..d {
                        o[i * d + j] = modp::add(o[i * d + j], modp::mul(a[i * d + k], b[k * d + j]));
                    }
                }
            }
        }
        o
    };
    let id: Vec<u64> = (0..d * d).map(|i| u64::from(i / d == i % d)).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &gens {
                let p = canon(mul(g, h));
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

#[test]
fn image_orders_match_modular_closure() {
    for (n_cap, n) in [(3u32, 3usize), (4, 3), (5, 3), (3, 4)] {
        let exact = image_order(n_cap, n, Mode::Projective, DEFAULT_BUDGET).unwrap();
        assert!(exact.terminated);
        assert_eq!(exact.order.unwrap() as usize, modp_projective_order(n_cap, n), "N={n_cap} n={n}");
    }
}

#[test]
fn projective_order_divides_linear() {
    for (n_cap, n) in [(3u32, 2usize), (3, 3), (4, 2), (5, 2)] {
        let p = image_order(n_cap, n, Mode::Projective, DEFAULT_BUDGET).unwrap();
        let l = image_order(n_cap, n, Mode::Linear, DEFAULT_BUDGET).unwrap();
        assert_eq!(l.order.unwrap() % p.order.unwrap(), 0);
    }
}
