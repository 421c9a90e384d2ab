//! Dimension of the algebra generated by the b_i (N even) or b_i² (N odd).
//!
//! The direct span computation on torus matrices is only feasible for small
//! modules, so larger cases use one of two certified modular routes. Both rest
//! on the same sandwich:
//!
//! * the algebra lies in the fixed points of θ: u_i ↦ u_i⁻¹ (and, for N odd, in
//!   the span of even monomials), which gives an exact upper bound;
//! * reduction modulo a prime can only lose rank, which gives a lower bound on a
//!   span dimension or an upper bound on a kernel dimension.

use std::collections::HashMap;

use serde::Serialize;

use super::{build_b, Variant};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::exactla::{algebra_span_dim, ExactMatrix};
use crate::modp::{self, SplitMix};
use crate::torus::{build_torus_rep, decode, encode, standard_generators};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralizerMethod {
    ExactSpan,
    TwistedClosureModP,
    CommutantModP,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerDim {
    pub dim: usize,
    pub method: CentralizerMethod,
    pub upper_bound: usize,
}

/// Rank and root order of the twisted torus that contains the algebra:
/// x_i = u_i with ω = q for N even, x_i = u_i² with ω = q⁴ for N odd.
fn twisted(n_cap: u32) -> (usize, i64) {
    if n_cap % 2 == 0 {
        (2 * n_cap as usize, 1)
    } else {
        (n_cap as usize, 2)
    }
}

/// dim of the θ-fixed part of the twisted torus of rank n-1.
pub fn structural_bound(n_cap: u32, n: usize) -> usize {
    let r = (n - 1) as u32;
    let (k, _) = twisted(n_cap);
    let fixed = if k % 2 == 0 { 2usize.pow(r) } else { 1 };
    (k.pow(r) + fixed) / 2
}

/// Span dimension computed directly on torus matrices.
pub fn centralizer_dim_exact(n_cap: u32, n: usize) -> Result<usize> {
    let rep = build_torus_rep(n_cap, n)?;
    let bg = build_b(&rep, Variant::PlusI)?;
    let gens: Vec<ExactMatrix> = if n_cap % 2 == 0 {
        bg.b.clone()
    } else {
        bg.b.iter().map(|b| b.matmul(b)).collect::<Result<_>>()?
    };
    algebra_span_dim(&gens, true)
}

/// Closure of span{1} under right multiplication by w_i = x_i + x_i⁻¹ in the abstract
/// twisted torus over F_p. Returns (lower bound on the dimension, structural bound).
pub fn twisted_closure_dim(n_cap: u32, n: usize) -> Result<(usize, usize)> {
    let r = n - 1;
    let (k, _) = twisted(n_cap);
    let w = modp::root_of_unity(k as u64)
        .ok_or_else(|| Error::Domain(format!("no {k}-th root of unity modulo the working prime")))?;
    let wp: Vec<u64> = (0..k as u64).map(|e| modp::pow(w, e)).collect();
    let size = k.pow(r as u32);
    let digits: Vec<Vec<usize>> = (0..size).map(|x| decode(x, k, r)).collect();
    let neg: Vec<usize> = digits.iter().map(|m| encode(&m.iter().map(|&x| (k - x) % k).collect::<Vec<_>>(), k)).collect();
    let nblocks = if k % 2 == 0 { 1usize << r } else { 1 };
    let block_of = |m: &[usize]| -> usize {
        if k % 2 == 0 {
            m.iter().enumerate().map(|(s, &x)| (x % 2) << s).sum()
        } else {
            0
        }
    };
    // Representative coordinates: one monomial per θ-orbit.
    let mut pos = vec![usize::MAX; size];
    let mut reps_per_block = vec![0usize; nblocks];
    for x in 0..size {
        if x <= neg[x] {
            let b = block_of(&digits[x]);
            pos[x] = reps_per_block[b];
            reps_per_block[b] += 1;
        }
    }
    let bound: usize = reps_per_block.iter().sum();
    debug_assert_eq!(bound, structural_bound(n_cap, n));
    let mut ech: Vec<modp::Echelon> = reps_per_block.iter().map(|&c| modp::Echelon::new(c)).collect();

    let mut queue: Vec<(usize, Vec<(usize, u64)>)> = vec![(0, vec![(0, 1)])];
    ech[0].insert(&{
        let mut v = vec![0; reps_per_block[0]];
        v[pos[0]] = 1;
        v
    });
    let mut scratch = vec![0u64; size];
    let mut touched: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < queue.len() {
        let (blk, elem) = queue[head].clone();
        head += 1;
        for i in 0..r {
            let target = if k % 2 == 0 { blk ^ (1 << i) } else { 0 };
            if ech[target].dim() == reps_per_block[target] {
                continue;
            }
            for &(x, c) in &elem {
                let m = &digits[x];
                let e = if i + 1 < r { m[i + 1] } else { 0 };
                let mut up = m.clone();
                up[i] = (up[i] + 1) % k;
                let mut down = m.clone();
                down[i] = (down[i] + k - 1) % k;
                for (t, f) in [(encode(&up, k), wp[(k - e) % k]), (encode(&down, k), wp[e])] {
                    if scratch[t] == 0 {
                        touched.push(t);
                    }
                    scratch[t] = modp::add(scratch[t], modp::mul(c, f));
                }
            }
            let mut prod = Vec::new();
            let mut v = vec![0u64; reps_per_block[target]];
            for &t in &touched {
                if scratch[t] != 0 {
                    prod.push((t, scratch[t]));
                    if pos[t] != usize::MAX {
                        v[pos[t]] = scratch[t];
                    }
                }
                scratch[t] = 0;
            }
            touched.clear();
            prod.sort_unstable();
            if ech[target].insert(&v) {
                queue.push((target, prod));
            }
        }
    }
    Ok((ech.iter().map(|e| e.dim()).sum(), bound))
}

/// For n - 1 even: the simple module of the twisted torus carries the algebra
/// faithfully. If its commutant is span{1, J} with J the index negation, the
/// double commutant gives dim = d₊² + d₋². Returns the dimension when certified.
pub fn commutant_route(n_cap: u32, n: usize) -> Result<usize> {
    let r = n - 1;
    if r % 2 != 0 || r == 0 {
        return Err(Error::Domain("commutant route needs n - 1 even and positive".into()));
    }
    let m = r / 2;
    let (k, step) = twisted(n_cap);
    let d = k.pow(m as u32);
    let neg_idx = |a: usize| -> usize {
        let v: Vec<usize> = decode(a, k, m).iter().map(|&x| (k - x) % k).collect();
        encode(&v, k)
    };

    // J commutes with every w_i exactly.
    let order = k as u32;
    let (x, x_inv) = standard_generators(order, k, m, step);
    let mut j = ExactMatrix::zeros(d, d, order);
    for a in 0..d {
        j.set(neg_idx(a), a, CycNum::one(order));
    }
    for (xi, xii) in x.iter().zip(&x_inv) {
        let w = xi.add(xii)?;
        if j.matmul(&w)? != w.matmul(&j)? {
            return Err(Error::Verification("index negation does not commute with the generators".into()));
        }
    }

    // Unknowns X_{ab}: commuting with the diagonal w_{2s-1} forces b_s ≡ ±a_s.
    let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    for a in 0..d {
        let av = decode(a, k, m);
        let mut partners = vec![Vec::<usize>::new()];
        for &x in &av {
            let opts = if x == (k - x) % k { vec![x] } else { vec![x, (k - x) % k] };
            partners = partners
                .into_iter()
                .flat_map(|p| opts.iter().map(move |&o| {
                    let mut q = p.clone();
                    q.push(o);
                    q
                }))
                .collect();
        }
        for p in partners {
            let b = encode(&p, k);
            unknown.insert((a, b), pairs.len());
            pairs.push((a, b));
        }
    }
    let u = pairs.len();

    // Shift generators w_{2s} = P_s + P_s⁻¹.
    let shift = |x: usize, s: usize, sign: i64| -> usize {
        let mut v = decode(x, k, m);
        v[s] = (v[s] as i64 + sign).rem_euclid(k as i64) as usize;
        if s + 1 < m {
            v[s + 1] = (v[s + 1] as i64 - sign).rem_euclid(k as i64) as usize;
        }
        encode(&v, k)
    };
    let mut equations: Vec<Vec<(usize, u64)>> = Vec::new();
    for s in 0..m {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &pairs {
            for (ea, eb) in [(a, shift(b, s, -1)), (a, shift(b, s, 1)), (shift(a, s, 1), b), (shift(a, s, -1), b)] {
                if !seen.insert((ea, eb)) {
                    continue;
                }
                // X_{a,Pb} + X_{a,P⁻¹b} − X_{P⁻¹a,b} − X_{Pa,b} = 0
                let terms = [
                    ((ea, shift(eb, s, 1)), 1),
                    ((ea, shift(eb, s, -1)), 1),
                    ((shift(ea, s, -1), eb), modp::P - 1),
                    ((shift(ea, s, 1), eb), modp::P - 1),
                ];
                let mut row: Vec<(usize, u64)> = Vec::new();
                for (key, c) in terms {
                    if let Some(&col) = unknown.get(&key) {
                        row.push((col, c));
                    }
                }
                if !row.is_empty() {
                    equations.push(row);
                }
            }
        }
    }

    // Random compression: rank(R·M) ≤ rank(M), so the kernel bound stays valid.
    let rows = u.min(equations.len());
    let mut rng = SplitMix(0x5eed_0000 ^ ((n_cap as u64) << 8) ^ n as u64);
    let mut dense = vec![vec![0u64; u]; rows];
    for eq in &equations {
        for row in dense.iter_mut() {
            let c = rng.next_mod_p();
            for &(col, v) in eq {
                row[col] = modp::add(row[col], modp::mul(c, v));
            }
        }
    }
    let kernel_bound = u - modp::rank(dense, u);
    if kernel_bound != 2 {
        return Err(Error::Verification(format!(
            "commutant not certified: modular kernel has dimension {kernel_bound}"
        )));
    }
    let fixed = if k % 2 == 0 { 2usize.pow(m as u32) } else { 1 };
    let dp = (d + fixed) / 2;
    let dm = (d - fixed) / 2;
    Ok(dp * dp + dm * dm)
}

pub fn centralizer_dim(n_cap: u32, n: usize) -> Result<CentralizerDim> {
    if n_cap < 3 || n < 2 {
        return Err(Error::Domain(format!("need N ≥ 3 and n ≥ 2, got N={n_cap}, n={n}")));
    }
    let bound = structural_bound(n_cap, n);
    if (n - 1) % 2 == 0 {
        let dim = commutant_route(n_cap, n)?;
        if dim != bound {
            return Err(Error::Verification(format!("commutant gives {dim}, structural bound {bound}")));
        }
        return Ok(CentralizerDim { dim, method: CentralizerMethod::CommutantModP, upper_bound: bound });
    }
    let (lower, bound) = twisted_closure_dim(n_cap, n)?;
    if lower != bound {
        // The modular lower bound fell short; only the exact span is trustworthy.
        let dim = centralizer_dim_exact(n_cap, n)?;
        return Ok(CentralizerDim { dim, method: CentralizerMethod::ExactSpan, upper_bound: bound });
    }
    Ok(CentralizerDim { dim: lower, method: CentralizerMethod::TwistedClosureModP, upper_bound: bound })
}
