//! The quantum torus at a 2N-th root of unity and its standard module.

use crate::cyclo::{q_of, zeta, CycNum};
use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;

#[derive(Clone, Debug)]
pub struct TorusRep {
    pub n_cap: u32,
    pub n: usize,
    /// Field order 8N.
    pub order: u32,
    pub dim: usize,
    /// Number of tensor indices of the basis vectors v(i⃗).
    pub slots: usize,
    pub u: Vec<ExactMatrix>,
    pub u_inv: Vec<ExactMatrix>,
}

/// Basis index ↔ multi-index, lexicographic with the first slot most significant.
pub fn decode(mut idx: usize, k: usize, slots: usize) -> Vec<usize> {
    let mut v = vec![0; slots];
    for s in (0..slots).rev() {
        v[s] = idx % k;
        idx /= k;
    }
    v
}

pub fn encode(v: &[usize], k: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * k + x)
}

/// Diagonal generator acting by ω^{i_s} (ω = ζ_L^step) on slot s.
fn diag_gen(order: u32, k: usize, slots: usize, s: usize, step: i64, sign: i64) -> ExactMatrix {
    let dim = k.pow(slots as u32);
    let d: Vec<CycNum> = (0..dim).map(|x| zeta(order, sign * step * decode(x, k, slots)[s] as i64)).collect();
    ExactMatrix::diag(order, &d)
}

/// Shift generator: slot s up by `sign`, slot s+1 (if present) down by `sign`.
fn shift_gen(order: u32, k: usize, slots: usize, s: usize, sign: i64) -> ExactMatrix {
    let dim = k.pow(slots as u32);
    let mut m = ExactMatrix::zeros(dim, dim, order);
    let ki = k as i64;
    for src in 0..dim {
        let mut t = decode(src, k, slots);
        t[s] = (t[s] as i64 + sign).rem_euclid(ki) as usize;
        if s + 1 < slots {
            t[s + 1] = (t[s + 1] as i64 - sign).rem_euclid(ki) as usize;
        }
        m.set(encode(&t, k), src, CycNum::one(order));
    }
    m
}

/// The 2m generators of the standard module on (Z/k)^m with q-commutation ω = ζ_L^step.
pub(crate) fn standard_generators(order: u32, k: usize, slots: usize, step: i64) -> (Vec<ExactMatrix>, Vec<ExactMatrix>) {
    let mut u = Vec::new();
    let mut u_inv = Vec::new();
    for s in 0..slots {
        u.push(diag_gen(order, k, slots, s, step, 1));
        u_inv.push(diag_gen(order, k, slots, s, step, -1));
        u.push(shift_gen(order, k, slots, s, 1));
        u_inv.push(shift_gen(order, k, slots, s, -1));
    }
    (u, u_inv)
}

/// Standard module of T_q^{2N}(n) at z⃗ = (1,…,1); for even n, the restriction of the
/// (n+1)-strand module.
pub fn build_torus_rep(n_cap: u32, n: usize) -> Result<TorusRep> {
    if n_cap < 2 || n < 2 {
        return Err(Error::Domain(format!("need N ≥ 2 and n ≥ 2, got N={n_cap}, n={n}")));
    }
    let order = 8 * n_cap;
    let k = 2 * n_cap as usize;
    let n_odd = if n % 2 == 1 { n } else { n + 1 };
    let slots = (n_odd - 1) / 2;
    let (mut u, mut u_inv) = standard_generators(order, k, slots, 4);
    u.truncate(n - 1);
    u_inv.truncate(n - 1);
    Ok(TorusRep { n_cap, n, order, dim: k.pow(slots as u32), slots, u, u_inv })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RelationsReport {
    pub q_commutation: bool,
    pub far_commutation: bool,
    pub root_of_unity: bool,
    pub inverses: bool,
    pub unitary: bool,
}

impl RelationsReport {
    pub fn all(&self) -> bool {
        self.q_commutation && self.far_commutation && self.root_of_unity && self.inverses && self.unitary
    }
}

pub fn relations_report(rep: &TorusRep) -> Result<RelationsReport> {
    let q = q_of(rep.n_cap);
    let r = rep.u.len();
    let mut out = RelationsReport {
        q_commutation: true,
        far_commutation: true,
        root_of_unity: true,
        inverses: true,
        unitary: true,
    };
    for i in 0..r {
        for j in (i + 1)..r {
            let lhs = rep.u[i].matmul(&rep.u[j])?;
            let rhs = rep.u[j].matmul(&rep.u[i])?;
            if j == i + 1 {
                out.q_commutation &= lhs == rhs.scale(&q);
            } else {
                out.far_commutation &= lhs == rhs;
            }
        }
        out.root_of_unity &= rep.u[i].pow(2 * rep.n_cap as u64)?.is_identity();
        out.inverses &= rep.u[i].matmul(&rep.u_inv[i])?.is_identity()
            && rep.u_inv[i].matmul(&rep.u[i])?.is_identity();
        out.unitary &= rep.u[i].adjoint() == rep.u_inv[i];
    }
    Ok(out)
}

/// True iff every defining relation and unitarity hold exactly.
pub fn relations_check(rep: &TorusRep) -> bool {
    relations_report(rep).map(|r| r.all()).unwrap_or(false)
}
