//! Gaussian braid matrices R_o (N odd) and R_e (N even), Gauss sums, eigenvalue
//! tables and the trace formula.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclo::{qnum, sqrt_int, zeta, CycNum, HalfInt};
use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::nso::{build_b, Variant};
use crate::torus::TorusRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug)]
pub struct BraidRep<'a> {
    pub rep: &'a TorusRep,
    pub parity: Parity,
    pub r: Vec<ExactMatrix>,
    /// α = 1 − N(−1)^{N/2}, N even only.
    pub alpha: Option<i64>,
    /// Overall scalar; fixed to 1.
    pub gamma: CycNum,
}

/// G(m) = Σ_{j<m} ζ_m^{j²}, returned in Q(ζ_lcm(m, order)).
pub fn gauss_sum(m: u32, order: u32) -> CycNum {
    let target = m.lcm(&order);
    let step = (target / m) as i64;
    let m64 = m as i64;
    (0..m64).fold(CycNum::zero(target), |acc, j| acc + zeta(target, step * ((j * j) % m64)))
}

pub fn alpha_even(n_cap: u32) -> i64 {
    let n = n_cap as i64;
    let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
    1 - n * sign
}

/// Σ c_j u^{step·j} for j < count.
fn gaussian_poly(u: &ExactMatrix, coeffs: &[CycNum], step: u64) -> Result<ExactMatrix> {
    let base = u.pow(step)?;
    let mut power = ExactMatrix::identity(u.rows(), u.ctx());
    let mut acc = ExactMatrix::zeros(u.rows(), u.cols(), u.ctx());
    for c in coeffs {
        acc = acc.add(&power.scale(c))?;
        power = power.matmul(&base)?;
    }
    Ok(acc)
}

/// R_i = (1/√N) Σ_{j<N} Q^{j²} u_i^{2j}, Q = q².
pub fn build_ro(rep: &TorusRep) -> Result<BraidRep<'_>> {
    let n = rep.n_cap;
    if n % 2 == 0 {
        return Err(Error::Parity(format!("R_o needs N odd, got {n}")));
    }
    let l = rep.order;
    let norm = sqrt_int(n as u64, l)?.inv()?;
    let coeffs: Vec<CycNum> = (0..n as i64).map(|j| &zeta(l, 8 * j * j) * &norm).collect();
    let r = rep.u.iter().map(|u| gaussian_poly(u, &coeffs, 2)).collect::<Result<_>>()?;
    Ok(BraidRep { rep, parity: Parity::Odd, r, alpha: None, gamma: CycNum::one(l) })
}

/// R_i = (1/√(2N)) Σ_{j<2N} x^{αj²} u_i^j, x = e^{πi/(2N)}.
pub fn build_re(rep: &TorusRep) -> Result<BraidRep<'_>> {
    let n = rep.n_cap;
    if n % 2 == 1 {
        return Err(Error::Parity(format!("R_e needs N even, got {n}")));
    }
    let l = rep.order;
    let alpha = alpha_even(n);
    let norm = sqrt_int(2 * n as u64, l)?.inv()?;
    let coeffs: Vec<CycNum> = (0..2 * n as i64).map(|j| &zeta(l, 2 * alpha * j * j) * &norm).collect();
    let r = rep.u.iter().map(|u| gaussian_poly(u, &coeffs, 1)).collect::<Result<_>>()?;
    Ok(BraidRep { rep, parity: Parity::Even, r, alpha: Some(alpha), gamma: CycNum::one(l) })
}

pub fn build_braid(rep: &TorusRep) -> Result<BraidRep<'_>> {
    if rep.n_cap % 2 == 1 {
        build_ro(rep)
    } else {
        build_re(rep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidReport {
    pub braid_relation: bool,
    pub far_commutation: bool,
    pub unitary: bool,
}

impl BraidReport {
    pub fn passed(&self) -> bool {
        self.braid_relation && self.far_commutation && self.unitary
    }
}

pub fn braid_report(br: &BraidRep<'_>) -> Result<BraidReport> {
    let r = &br.r;
    let mut out = BraidReport { braid_relation: true, far_commutation: true, unitary: true };
    for i in 0..r.len() {
        out.unitary &= r[i].matmul(&r[i].adjoint())?.is_identity();
        if i + 1 < r.len() {
            let a = r[i].matmul(&r[i + 1])?.matmul(&r[i])?;
            let b = r[i + 1].matmul(&r[i])?.matmul(&r[i + 1])?;
            out.braid_relation &= a == b;
        }
        for j in (i + 2)..r.len() {
            out.far_commutation &= r[i].commutator(&r[j])?.is_zero();
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigRow {
    pub s: i64,
    pub label: String,
    pub b_eigenvalue: CycNum,
    pub multiplicity: usize,
    pub r_eigenvalue: CycNum,
    pub reference: CycNum,
    pub ratio: CycNum,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigTable {
    pub n_cap: u32,
    pub parity: Parity,
    pub rows: Vec<EigRow>,
    pub ratio_constant: bool,
    pub ratio_norm_one: bool,
    /// N even: which labelling of b_1-eigenvalues by V[1^t] gave a constant ratio.
    pub orientation: Option<String>,
    /// N odd: whether the alternative normalization i^{(N/2−s)²+s}e^{−πis²/(2N)}
    /// also gives a constant ratio.
    pub alternative_ratio_constant: Option<bool>,
}

/// Scalar c with R v = c v on the kernel of (b - λ), or a verification error.
fn scalar_on_eigenspace(r: &ExactMatrix, b: &ExactMatrix, lambda: &CycNum) -> Result<Option<(CycNum, usize)>> {
    let basis = b.shift(lambda)?.kernel_basis()?;
    let Some(first) = basis.first() else { return Ok(None) };
    let rv = r.mul_vec(first)?;
    let p = first.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero");
    let c = rv[p].try_div(&first[p])?;
    for v in &basis {
        let rv = r.mul_vec(v)?;
        if rv.iter().zip(v).any(|(a, x)| *a != &c * x) {
            return Err(Error::Verification(format!("R_1 is not scalar on the eigenspace of {lambda}")));
        }
    }
    Ok(Some((c, basis.len())))
}

fn all_equal(v: &[CycNum]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// η(t) = e^{(N−2t)(N−2t+2)πi/8}, which is ±1 for N even.
pub fn eta(n_cap: u32, t: i64) -> CycNum {
    let a = n_cap as i64 - 2 * t;
    zeta(16, a * (a + 2))
}

/// f(t) = i^t e^{−πit²/(2N)} in Q(ζ_{8N}).
pub fn f_even(n_cap: u32, t: i64) -> CycNum {
    let n = n_cap as i64;
    zeta(8 * n_cap, 2 * n * t - 2 * t * t)
}

/// Ψ(N,s) = i^{(k−s)²} e^{−πis²/(2N)} in Q(ζ_{8N}), N = 2k+1.
pub fn psi_odd(n_cap: u32, s: i64) -> CycNum {
    let n = n_cap as i64;
    let k = (n - 1) / 2;
    zeta(8 * n_cap, 2 * n * (k - s) * (k - s) - 2 * s * s)
}

/// i^{(N/2−s)²+s} e^{−πis²/(2N)} in Q(ζ_{16N}).
pub fn psi_odd_alternative(n_cap: u32, s: i64) -> CycNum {
    let n = n_cap as i64;
    zeta(16 * n_cap, n * (n - 2 * s) * (n - 2 * s) + 4 * n * s - 4 * s * s)
}

fn eta_as_order(n_cap: u32, t: i64) -> Result<CycNum> {
    let e = eta(n_cap, t);
    let r = e.as_rational().ok_or_else(|| Error::Verification(format!("η({t}) is not ±1")))?;
    Ok(CycNum::from_rational(8 * n_cap, &r))
}

pub fn eigenvalue_check(br: &BraidRep<'_>) -> Result<EigTable> {
    let rep = br.rep;
    let n_cap = rep.n_cap;
    let n = n_cap as i64;
    let b = build_b(rep, Variant::PlusI)?.b.swap_remove(0);
    let r1 = &br.r[0];
    match br.parity {
        Parity::Odd => {
            let k = (n - 1) / 2;
            let b2 = b.matmul(&b)?;
            let mut rows = Vec::new();
            let mut alt = Vec::new();
            for s in 0..=k {
                let x = qnum(HalfInt::halves(n - 2 * s), n_cap);
                let lambda = &x * &x;
                let Some((c, mult)) = scalar_on_eigenspace(r1, &b2, &lambda)? else { continue };
                let reference = psi_odd(n_cap, s);
                let ratio = c.try_div(&reference)?;
                alt.push(c.lift(16 * n_cap)?.try_div(&psi_odd_alternative(n_cap, s))?);
                rows.push(EigRow {
                    s,
                    label: format!("gamma_{s}"),
                    b_eigenvalue: lambda,
                    multiplicity: mult,
                    r_eigenvalue: c,
                    reference,
                    ratio,
                });
            }
            let ratios: Vec<CycNum> = rows.iter().map(|r| r.ratio.clone()).collect();
            Ok(EigTable {
                n_cap,
                parity: Parity::Odd,
                ratio_norm_one: ratios.iter().all(|x| (x * &x.conj()).is_one()),
                ratio_constant: !rows.is_empty() && all_equal(&ratios),
                rows,
                orientation: None,
                alternative_ratio_constant: Some(all_equal(&alt)),
            })
        }
        Parity::Even => {
            let mut eig = Vec::new();
            for s in -(n / 2)..=(n / 2) {
                let lambda = qnum(HalfInt::from_int(s), n_cap);
                if let Some((c, mult)) = scalar_on_eigenspace(r1, &b, &lambda)? {
                    eig.push((s, lambda, c, mult));
                }
            }
            let mut chosen = None;
            for (name, sign) in [("t = N/2 - s", -1i64), ("t = N/2 + s", 1)] {
                let mut rows = Vec::new();
                for (s, lambda, c, mult) in &eig {
                    let t = n / 2 + sign * s;
                    let reference = &eta_as_order(n_cap, t)? * &f_even(n_cap, t);
                    rows.push(EigRow {
                        s: *s,
                        label: format!("[1^{t}]"),
                        b_eigenvalue: lambda.clone(),
                        multiplicity: *mult,
                        r_eigenvalue: c.clone(),
                        ratio: c.try_div(&reference)?,
                        reference,
                    });
                }
                let ratios: Vec<CycNum> = rows.iter().map(|r| r.ratio.clone()).collect();
                let constant = !rows.is_empty() && all_equal(&ratios);
                if chosen.is_none() || constant {
                    let done = constant;
                    chosen = Some((name, rows, constant));
                    if done {
                        break;
                    }
                }
            }
            let (name, rows, constant) = chosen.expect("two orientations tried");
            Ok(EigTable {
                n_cap,
                parity: Parity::Even,
                ratio_norm_one: rows.iter().all(|r| (&r.ratio * &r.ratio.conj()).is_one()),
                ratio_constant: constant,
                orientation: constant.then(|| name.to_string()),
                rows,
                alternative_ratio_constant: None,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub n_cap: u32,
    pub eta: Vec<i64>,
    pub binomials: Vec<u64>,
    pub weighted_sum: i64,
    pub expected: i64,
    pub holds: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// (1/2^N) Σ_t η(t) C(N,t) = 2^{−N/2}, checked as Σ_t η(t) C(N,t) = 2^{N/2}.
pub fn trace_formula_check(n_cap: u32) -> Result<TraceReport> {
    if n_cap % 2 == 1 || n_cap < 2 {
        return Err(Error::Parity(format!("trace formula needs N even, got {n_cap}")));
    }
    let mut etas = Vec::new();
    let mut bins = Vec::new();
    let mut sum = 0i64;
    for t in 0..=n_cap as i64 {
        let e = eta(n_cap, t);
        let v = if e.is_one() {
            1
        } else if (-&e).is_one() {
            -1
        } else {
            return Err(Error::Verification(format!("η({t}) = {e} is not ±1")));
        };
        let c = binomial(n_cap as u64, t as u64);
        etas.push(v);
        bins.push(c);
        sum += v * c as i64;
    }
    let expected = 1i64 << (n_cap / 2);
    Ok(TraceReport { n_cap, eta: etas, binomials: bins, weighted_sum: sum, expected, holds: sum == expected })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussReport {
    pub m: u32,
    pub g: CycNum,
    pub norm_identity: bool,
    pub square_identity: bool,
    pub normalized_identity: bool,
}

impl GaussReport {
    pub fn passed(&self) -> bool {
        self.norm_identity && self.square_identity && self.normalized_identity
    }
}

/// For m = 4N: G·Ḡ = 2m, G² = 2im, and G/(2√(2N)) = (1+i)/√2.
pub fn gauss_identities(n_cap: u32) -> Result<GaussReport> {
    let l = 8 * n_cap;
    let m = 4 * n_cap;
    let g = gauss_sum(m, l);
    let two_m = CycNum::from_int(l, 2 * m as i64);
    let i = zeta(l, 2 * n_cap as i64);
    let normalized = g.try_div(&sqrt_int(2 * n_cap as u64, l)?.scale(2, 1))?;
    Ok(GaussReport {
        m,
        norm_identity: &g * &g.conj() == two_m,
        square_identity: &g * &g == &i * &two_m,
        normalized_identity: normalized == zeta(l, n_cap as i64),
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::build_torus_rep;

    #[test]
    fn gauss_sum_examples() {
        assert!(gauss_sum(1, 8).is_one());
        for n in 3..=8u32 {
            let r = gauss_identities(n).unwrap();
            assert!(r.passed(), "N={n}");
        }
        // Odd m ≡ 1 mod 4 gives √m, ≡ 3 mod 4 gives i√m.
        let g5 = gauss_sum(5, 40);
        assert_eq!(g5, sqrt_int(5, 40).unwrap());
        let g3 = gauss_sum(3, 24);
        assert_eq!(g3, &zeta(24, 6) * &sqrt_int(3, 24).unwrap());
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_even(4), -3);
        assert_eq!(alpha_even(6), 7);
    }

    #[test]
    fn small_braid_relations() {
        let rep = build_torus_rep(3, 3).unwrap();
        let br = build_ro(&rep).unwrap();
        assert!(braid_report(&br).unwrap().passed());
        let rep = build_torus_rep(4, 3).unwrap();
        assert!(braid_report(&build_re(&rep).unwrap()).unwrap().passed());
        assert!(build_re(&build_torus_rep(3, 2).unwrap()).is_err());
    }

    #[test]
    fn ro_commutes_with_b_squared() {
        let rep = build_torus_rep(5, 4).unwrap();
        let br = build_ro(&rep).unwrap();
        let b = build_b(&rep, Variant::PlusI).unwrap().b;
        for i in 0..br.r.len() {
            let b2 = b[i].matmul(&b[i]).unwrap();
            assert!(br.r[i].commutator(&b2).unwrap().is_zero());
            for j in 0..b.len() {
                if i.abs_diff(j) >= 2 {
                    assert!(br.r[i].commutator(&b[j]).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn reference_values() {
        // Ψ(3,0) = i, Ψ(3,1) = e^{−πi/6}.
        assert_eq!(psi_odd(3, 0), zeta(24, 6));
        assert_eq!(psi_odd(3, 1), zeta(12, -1).lift(24).unwrap());
        let signs: Vec<CycNum> = (0..=4).map(|t| eta(4, t)).collect();
        let m1 = CycNum::from_int(16, -1);
        assert_eq!(signs[0], m1);
        assert_eq!(signs[1], m1);
        assert_eq!(signs[4], m1);
        assert_eq!(signs[2], signs[3]);
    }

    #[test]
    fn trace_formula_examples() {
        let r = trace_formula_check(4).unwrap();
        assert_eq!(r.eta, vec![-1, -1, 1, 1, -1]);
        assert_eq!(r.weighted_sum, 4);
        for n in [6, 8] {
            assert!(trace_formula_check(n).unwrap().holds);
        }
    }

    #[test]
    fn eigen_tables_constant() {
        for n in 3..=8u32 {
            let rep = build_torus_rep(n, 2).unwrap();
            let br = build_braid(&rep).unwrap();
            let t = eigenvalue_check(&br).unwrap();
            assert!(t.ratio_constant, "N={n}: {:?}", t.rows.iter().map(|r| r.ratio.to_string()).collect::<Vec<_>>());
            assert!(t.ratio_norm_one);
        }
    }
}
