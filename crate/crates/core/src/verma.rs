//! Highest-weight modules of U'_q so₃: the weight-vector recursion, the
//! α-coefficients, invariant forms, simple quotients and unitarity at roots of unity.
//!
//! Generic q is handled by rational functions in v = q^{1/2}. At q = e^{πi/ℓ} we
//! work in Q(ζ_{4ℓ}) with v = ζ_{4ℓ}.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclo::{zeta, CycNum, HalfInt};
use crate::error::{Error, Result};
use crate::exactla::{eigenspace_multiplicities, Matrix};
use crate::field::Field;
use crate::nso::serre_defect;
use crate::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum QSpec {
    Generic,
    /// q = e^{πi/ℓ}
    RootOfUnity(u32),
}

/// Powers v^k in a coefficient field.
pub trait VPowers: Field {
    fn vpow(&self, k: i64) -> Self;
}

impl VPowers for RatFunc {
    fn vpow(&self, k: i64) -> Self {
        RatFunc::vpow(k)
    }
}

impl VPowers for CycNum {
    fn vpow(&self, k: i64) -> Self {
        zeta(self.order(), k)
    }
}

/// q^{t/2} + q^{-t/2}
fn qsum<F: VPowers>(unit: &F, t: i64) -> F {
    unit.vpow(t).add(&unit.vpow(-t))
}

/// [t/2]
fn qint<F: VPowers>(unit: &F, t: i64) -> Result<F> {
    let d = unit.vpow(2).sub(&unit.vpow(-2));
    if d.is_zero() {
        return Err(Error::Degenerate("q − q⁻¹ vanishes".into()));
    }
    Ok(unit.vpow(t).sub(&unit.vpow(-t)).mul(&d.inv()?))
}

/// α_{i−1,i} = [i][2λ−i+1] / ((q^{λ−i}+q^{i−λ})(q^{λ−i+1}+q^{i−λ−1})).
fn alpha_in<F: VPowers>(unit: &F, lambda: HalfInt, i: i64) -> Result<F> {
    if i < 1 {
        return Err(Error::Domain(format!("α index must be ≥ 1, got {i}")));
    }
    let tl = lambda.twice();
    let num = qint(unit, 2 * i)?.mul(&qint(unit, 2 * tl - 2 * i + 2)?);
    let d1 = qsum(unit, tl - 2 * i);
    let d2 = qsum(unit, tl - 2 * i + 2);
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::Degenerate(format!("α_{{{},{i}}} has a vanishing denominator at λ = {lambda}", i - 1)));
    }
    Ok(num.mul(&d1.mul(&d2).inv()?))
}

fn generic_unit() -> RatFunc {
    RatFunc::from_int(1)
}

fn cyclo_unit(ell: u32) -> Result<CycNum> {
    if ell < 2 {
        return Err(Error::Degenerate(format!("q = e^{{πi/{ell}}} has q − q⁻¹ = 0")));
    }
    Ok(CycNum::one(4 * ell))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Generic(#[serde(serialize_with = "ser_display")] RatFunc),
    Cyclo(CycNum),
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn alpha(lambda: HalfInt, i: i64, spec: QSpec) -> Result<Scalar> {
    match spec {
        QSpec::Generic => alpha_in(&generic_unit(), lambda, i).map(Scalar::Generic),
        QSpec::RootOfUnity(ell) => alpha_in(&cyclo_unit(ell)?, lambda, i).map(Scalar::Cyclo),
    }
}

fn check_weight(lambda: HalfInt) -> Result<()> {
    if lambda.twice() < 0 {
        return Err(Error::Domain(format!("highest weight must be ≥ 0, got {lambda}")));
    }
    Ok(())
}

#[derive(Clone)]
pub struct VermaData<F: Field> {
    pub lambda: HalfInt,
    pub depth: usize,
    /// alphas[j-1] = α_{j−1,j}, 1 ≤ j ≤ depth.
    pub alphas: Vec<F>,
    /// norms[j] = (v_j, v_j), with (v_0, v_0) = 1.
    pub norms: Vec<F>,
    pub b1: Matrix<F>,
    /// B_2 on v_0..v_depth, with v_{depth+1} dropped.
    pub b2: Matrix<F>,
}

fn build_in<F: VPowers>(unit: &F, lambda: HalfInt, depth: usize) -> Result<VermaData<F>> {
    check_weight(lambda)?;
    if depth < 1 {
        return Err(Error::Domain("Verma depth must be ≥ 1".into()));
    }
    let alphas = (1..=depth as i64).map(|i| alpha_in(unit, lambda, i)).collect::<Result<Vec<F>>>()?;
    let mut norms = vec![F::one_in(unit.ctx())];
    for a in &alphas {
        let last = norms.last().expect("nonempty");
        norms.push(a.mul(last));
    }
    let size = depth + 1;
    let tl = lambda.twice();
    let diag = (0..size as i64).map(|j| qint(unit, tl - 2 * j)).collect::<Result<Vec<F>>>()?;
    let b1 = Matrix::diag(unit.ctx(), &diag);
    let b2 = Matrix::from_fn(size, size, unit.ctx(), |r, c| {
        if r == c + 1 {
            F::one_in(unit.ctx())
        } else if c == r + 1 {
            alphas[c - 1].clone()
        } else {
            F::zero_in(unit.ctx())
        }
    });
    Ok(VermaData { lambda, depth, alphas, norms: norms.into_iter().take(size).collect(), b1, b2 })
}

#[derive(Clone)]
pub enum Verma {
    Generic(VermaData<RatFunc>),
    Cyclo(VermaData<CycNum>),
}

/// Truncated Verma module on v_0..v_depth. At a root of unity every α is
/// evaluated directly, so a vanishing denominator is an error.
pub fn build_verma(lambda: HalfInt, depth: usize, spec: QSpec) -> Result<Verma> {
    match spec {
        QSpec::Generic => build_in(&generic_unit(), lambda, depth).map(Verma::Generic),
        QSpec::RootOfUnity(ell) => build_in(&cyclo_unit(ell)?, lambda, depth).map(Verma::Cyclo),
    }
}

pub fn default_depth(lambda: HalfInt) -> usize {
    (lambda.twice().max(0) + 3) as usize
}

/// Norms of v_{j+1} stay in the given relation: (v_{j+1},v_{j+1}) = α_{j,j+1}(v_j,v_j).
pub fn norms_generic(lambda: HalfInt, upto: usize) -> Result<Vec<RatFunc>> {
    Ok(build_in(&generic_unit(), lambda, upto.max(1))?.norms.into_iter().take(upto + 1).collect())
}

#[derive(Clone)]
pub struct SimpleSo3Module<F: Field> {
    pub lambda: HalfInt,
    pub dim: usize,
    pub b1: Matrix<F>,
    pub b2: Matrix<F>,
    pub norms: Vec<F>,
}

fn quotient_from<F: VPowers>(unit: &F, lambda: HalfInt, alphas: &[F], norms: &[F]) -> Result<SimpleSo3Module<F>> {
    let dim = (lambda.twice() + 1) as usize;
    let tl = lambda.twice();
    let diag = (0..dim as i64).map(|j| qint(unit, tl - 2 * j)).collect::<Result<Vec<F>>>()?;
    let b2 = Matrix::from_fn(dim, dim, unit.ctx(), |r, c| {
        if r == c + 1 {
            F::one_in(unit.ctx())
        } else if c == r + 1 {
            alphas[c - 1].clone()
        } else {
            F::zero_in(unit.ctx())
        }
    });
    Ok(SimpleSo3Module { lambda, dim, b1: Matrix::diag(unit.ctx(), &diag), b2, norms: norms[..dim].to_vec() })
}

pub fn simple_quotient_generic(lambda: HalfInt) -> Result<SimpleSo3Module<RatFunc>> {
    let d = build_in(&generic_unit(), lambda, default_depth(lambda))?;
    quotient_from(&generic_unit(), lambda, &d.alphas, &d.norms)
}

/// Simple quotient at q = e^{πi/ℓ}. The α's and norms are the generic rational
/// functions evaluated at v = ζ_{4ℓ}; at λ = ℓ/2 this resolves the 0/0 in α_{ℓ−1,ℓ}.
pub fn simple_quotient_at(lambda: HalfInt, ell: u32) -> Result<SimpleSo3Module<CycNum>> {
    let unit = cyclo_unit(ell)?;
    let v = zeta(4 * ell, 1);
    let g = build_in(&generic_unit(), lambda, default_depth(lambda))?;
    let top = lambda.twice() as usize;
    let alphas = g.alphas[..top].iter().map(|a| a.eval_cyclo(&v)).collect::<Result<Vec<_>>>()?;
    let norms = g.norms[..=top].iter().map(|a| a.eval_cyclo(&v)).collect::<Result<Vec<_>>>()?;
    quotient_from(&unit, lambda, &alphas, &norms)
}

#[derive(Clone)]
pub enum SimpleModule {
    Generic(SimpleSo3Module<RatFunc>),
    Cyclo(SimpleSo3Module<CycNum>),
}

pub fn simple_quotient(lambda: HalfInt, spec: QSpec) -> Result<SimpleModule> {
    match spec {
        QSpec::Generic => simple_quotient_generic(lambda).map(SimpleModule::Generic),
        QSpec::RootOfUnity(ell) => simple_quotient_at(lambda, ell).map(SimpleModule::Cyclo),
    }
}

fn q_plus_qinv<F: VPowers>(unit: &F) -> F {
    qsum(unit, 2)
}

/// G·B = Bᵀ·G for G = diag(norms) and B ∈ {B1, B2}.
pub fn form_invariant<F: VPowers>(m: &SimpleSo3Module<F>) -> Result<bool> {
    let g = Matrix::diag(m.b1.ctx(), &m.norms);
    for b in [&m.b1, &m.b2] {
        if g.matmul(b)? != b.transpose().matmul(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn qserre_holds<F: VPowers>(m: &SimpleSo3Module<F>) -> Result<bool> {
    let unit = F::one_in(m.b1.ctx());
    let c = q_plus_qinv(&unit);
    Ok(serre_defect(&m.b1, &m.b2, &c)?.is_zero() && serre_defect(&m.b2, &m.b1, &c)?.is_zero())
}

/// Multiplicity of each [λ−j], 0 ≤ j ≤ 2λ, as an eigenvalue of B2.
pub fn b2_spectrum<F: VPowers>(m: &SimpleSo3Module<F>) -> Result<Vec<usize>> {
    let unit = F::one_in(m.b1.ctx());
    let tl = m.lambda.twice();
    let cands = (0..m.dim as i64).map(|j| qint(&unit, tl - 2 * j)).collect::<Result<Vec<F>>>()?;
    eigenspace_multiplicities(&m.b2, &cands)
}

/// q-Serre on the truncated Verma module, columns 0..depth−1 (those not touching
/// the dropped v_{depth+1}).
pub fn verma_qserre_truncated<F: VPowers>(d: &VermaData<F>) -> Result<bool> {
    let unit = F::one_in(d.b1.ctx());
    let c = q_plus_qinv(&unit);
    let cols = d.depth;
    for defect in [serre_defect(&d.b1, &d.b2, &c)?, serre_defect(&d.b2, &d.b1, &c)?] {
        for r in 0..defect.rows() {
            for col in 0..cols {
                if !defect.get(r, col).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitarityReport {
    pub lambda: HalfInt,
    pub ell: u32,
    /// (v_j, v_j) for 0 ≤ j ≤ 2λ+1.
    pub norms: Vec<CycNum>,
    pub signs: Vec<i8>,
    pub norms_real: bool,
    pub positive_through_2lambda: bool,
    pub null_at_2lambda_plus_1: bool,
    /// Where every α is regular at ζ_{4ℓ}, the direct evaluation agrees with the
    /// specialized generic norms.
    pub direct_agrees: Option<bool>,
}

impl UnitarityReport {
    pub fn passed(&self) -> bool {
        self.norms_real && self.positive_through_2lambda && self.null_at_2lambda_plus_1 && self.direct_agrees != Some(false)
    }
}

pub fn unitarity_check(lambda: HalfInt, ell: u32) -> Result<UnitarityReport> {
    check_weight(lambda)?;
    if lambda.twice() > ell as i64 {
        return Err(Error::Domain(format!("λ = {lambda} exceeds ℓ/2 = {ell}/2")));
    }
    let _ = cyclo_unit(ell)?;
    let top = (lambda.twice() + 1) as usize;
    let v = zeta(4 * ell, 1);
    let norms = norms_generic(lambda, top)?
        .iter()
        .map(|r| r.eval_cyclo(&v))
        .collect::<Result<Vec<CycNum>>>()?;
    let norms_real = norms.iter().all(|x| x.conj() == *x);
    let mut signs = Vec::new();
    for x in &norms {
        signs.push(match x.sign_real()? {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        });
    }
    let direct_agrees = match build_in(&CycNum::one(4 * ell), lambda, top) {
        Ok(d) => Some(d.norms[..=top] == norms[..]),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(UnitarityReport {
        lambda,
        ell,
        positive_through_2lambda: signs[..top].iter().all(|&s| s == 1),
        null_at_2lambda_plus_1: norms[top].is_zero(),
        norms_real,
        signs,
        norms,
        direct_agrees,
    })
}

/// Evaluate a generic value at v = 1 (q = 1).
pub fn at_classical(x: &RatFunc) -> Result<BigRational> {
    x.eval_rational(&BigRational::from_integer(BigInt::from(1)))
}
