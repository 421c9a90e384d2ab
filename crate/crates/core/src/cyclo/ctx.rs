//! Per-order tables: the cyclotomic polynomial and reduced powers of ζ.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub(crate) struct Ctx {

    pub phi: usize,
    /// Nonzero non-leading terms (degree, coeff) of Φ_L, which is monic of degree phi.
    pub tail: Vec<(usize, i64)>,
    /// Canonical integer coefficients of ζ^k for 0 ≤ k < L, each of length phi.
    pub powers: Vec<Vec<i64>>,
}

const CACHED: usize = 1025;
static SMALL: [OnceLock<Ctx>; CACHED] = [const { OnceLock::new() }; CACHED];
static LARGE: OnceLock<Mutex<HashMap<u32, &'static Ctx>>> = OnceLock::new();

pub(crate) fn ctx(l: u32) -> &'static Ctx {
    assert!(l >= 1, "cyclotomic order must be positive");
    if (l as usize) < CACHED {
        return SMALL[l as usize].get_or_init(|| build(l));
    }
    let map = LARGE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = map.lock().unwrap_or_else(|e| e.into_inner()).get(&l) {
        return c;
    }
    // Built outside the lock: construction recurses into smaller orders.
    let built: &'static Ctx = Box::leak(Box::new(build(l)));
    let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(l).or_insert(built)
}

/// Φ_L as a dense integer vector, low degree first.
pub(crate) fn cyclotomic_poly(l: u32) -> Vec<i64> {
    // x^L - 1 divided by every Φ_d with d | L, d < L.
    let mut p = vec![0i64; l as usize + 1];
    p[0] = -1;
    p[l as usize] = 1;
    for d in 1..l {
        if l % d == 0 {
            let c = ctx(d);
            let mut phi_d = vec![0i64; c.phi + 1];
            phi_d[c.phi] = 1;
            for &(k, v) in &c.tail {
                phi_d[k] = v;
            }
            p = div_exact(&p, &phi_d);
        }
    }
    p
}

fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn build(l: u32) -> Ctx {
    let phi_poly = if l == 1 { vec![-1, 1] } else { cyclotomic_poly(l) };
    let phi = phi_poly.len() - 1;
    let tail: Vec<(usize, i64)> = phi_poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k, c))
        .collect();
    let mut powers = Vec::with_capacity(l as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..l {
        powers.push(cur.clone());
        // multiply by x, then fold the degree-phi term back.
        let top = cur[phi - 1];
        for k in (1..phi).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for &(k, c) in &tail {
                cur[k] -= top * c;
            }
        }
    }
    Ctx { phi, tail, powers }
}

