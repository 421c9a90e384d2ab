//! U'_q so_n inside the quantum torus: the b_i generators, q-Serre relations,
//! spectra, and centralizer dimensions.

mod centralizer;

pub use centralizer::{
    centralizer_dim, centralizer_dim_exact, commutant_route, structural_bound, twisted_closure_dim, CentralizerDim,
    CentralizerMethod,
};

use serde::Serialize;

use crate::cyclo::{q_of, qnum, zeta, CycNum, HalfInt};
use crate::error::Result;
use crate::exactla::{eigenspace_multiplicities, ExactMatrix, Matrix};
use crate::field::Field;
use crate::torus::TorusRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Variant {
    /// i(u + u⁻¹)/(q − q⁻¹)
    PlusI,
    /// −i(u + u⁻¹)/(q − q⁻¹)
    MinusI,
    /// (u − u⁻¹)/(q − q⁻¹)
    PlusReal,
    /// −(u − u⁻¹)/(q − q⁻¹)
    MinusReal,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::PlusI, Variant::MinusI, Variant::PlusReal, Variant::MinusReal];

    pub fn name(self) -> &'static str {
        match self {
            Variant::PlusI => "plusI",
            Variant::MinusI => "minusI",
            Variant::PlusReal => "plusReal",
            Variant::MinusReal => "minusReal",
        }
    }

    fn is_imaginary(self) -> bool {
        matches!(self, Variant::PlusI | Variant::MinusI)
    }
}

#[derive(Clone, Debug)]
pub struct BGenerators<'a> {
    pub rep: &'a TorusRep,
    pub variant: Variant,
    pub b: Vec<ExactMatrix>,
}

/// 1/(q − q⁻¹) times the variant's sign and unit.
fn prefactor(n_cap: u32, variant: Variant) -> CycNum {
    let l = 8 * n_cap;
    let q = q_of(n_cap);
    let d = (&q - &q.inv().expect("q is a unit")).inv().expect("q ≠ ±1");
    let i = zeta(l, 2 * n_cap as i64);
    match variant {
        Variant::PlusI => &i * &d,
        Variant::MinusI => -(&i * &d),
        Variant::PlusReal => d,
        Variant::MinusReal => -d,
    }
}

pub fn build_b(rep: &TorusRep, variant: Variant) -> Result<BGenerators<'_>> {
    let c = prefactor(rep.n_cap, variant);
    let b = rep
        .u
        .iter()
        .zip(&rep.u_inv)
        .map(|(u, ui)| {
            let s = if variant.is_imaginary() { u.add(ui) } else { u.sub(ui) };
            s.map(|m| m.scale(&c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BGenerators { rep, variant, b })
}

/// B_i²B_j − (q+q⁻¹)B_iB_jB_i + B_jB_i² − B_j.
pub fn serre_defect<F: Field>(bi: &Matrix<F>, bj: &Matrix<F>, q_plus_qinv: &F) -> Result<Matrix<F>> {
    let bibj = bi.matmul(bj)?;
    let bjbi = bj.matmul(bi)?;
    let t1 = bi.matmul(&bibj)?;
    let t2 = bibj.matmul(bi)?.scale(q_plus_qinv);
    let t3 = bjbi.matmul(bi)?;
    t1.sub(&t2)?.add(&t3)?.sub(bj)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub adjacent_pairs: usize,
    pub adjacent_ok: bool,
    pub far_pairs: usize,
    pub far_ok: bool,
}

pub fn qserre_report(b: &[ExactMatrix], n_cap: u32) -> Result<SerreReport> {
    let q = q_of(n_cap);
    let qq = &q + &q.inv()?;
    let mut rep = SerreReport { adjacent_pairs: 0, adjacent_ok: true, far_pairs: 0, far_ok: true };
    for i in 0..b.len() {
        for j in 0..b.len() {
            if i == j {
                continue;
            }
            if i.abs_diff(j) == 1 {
                rep.adjacent_pairs += 1;
                rep.adjacent_ok &= serre_defect(&b[i], &b[j], &qq)?.is_zero();
            } else if i < j {
                rep.far_pairs += 1;
                rep.far_ok &= b[i].commutator(&b[j])?.is_zero();
            }
        }
    }
    Ok(rep)
}

/// All adjacent q-Serre relations (both orders) and far commutations hold exactly.
pub fn qserre_check(bg: &BGenerators<'_>) -> bool {
    qserre_report(&bg.b, bg.rep.n_cap).map(|r| r.adjacent_ok && r.far_ok).unwrap_or(false)
}

/// Candidate eigenvalues of b_i with their labels.
pub fn spectrum_candidates(n_cap: u32, variant: Variant) -> Vec<(HalfInt, CycNum)> {
    let n = n_cap as i64;
    let labels: Vec<HalfInt> = if n % 2 == 0 || !variant.is_imaginary() {
        (-(n / 2)..=n / 2).map(HalfInt::from_int).collect()
    } else {
        let k = (n - 1) / 2;
        (-k - 1..=k).map(|j| HalfInt::halves(2 * j + 1)).collect()
    };
    labels.into_iter().map(|x| (x, qnum(x, n_cap))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub labels: Vec<HalfInt>,
    pub candidates_distinct: bool,
    pub annihilates: bool,
    /// Per generator, the multiplicity of each candidate.
    pub multiplicities: Vec<Vec<usize>>,
    pub sums_match_dim: bool,
    pub independent_of_i: bool,
    /// N odd: the b_i² eigenvalues [j+1/2]², 0 ≤ j ≤ k.
    pub squared: Option<SquaredSpectrum>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquaredSpectrum {
    pub labels: Vec<HalfInt>,
    pub candidates_distinct: bool,
    pub multiplicities: Vec<Vec<usize>>,
    pub sums_match_dim: bool,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.candidates_distinct
            && self.annihilates
            && self.sums_match_dim
            && self.independent_of_i
            && self.squared.as_ref().is_none_or(|s| s.candidates_distinct && s.sums_match_dim)
    }
}

fn pairwise_distinct(v: &[CycNum]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}

pub fn spectrum_check(bg: &BGenerators<'_>) -> Result<SpectrumReport> {
    let n_cap = bg.rep.n_cap;
    let dim = bg.rep.dim;
    let cands = spectrum_candidates(n_cap, bg.variant);
    let values: Vec<CycNum> = cands.iter().map(|c| c.1.clone()).collect();
    let mut annihilates = true;
    let mut mults = Vec::new();
    for b in &bg.b {
        let mut prod = ExactMatrix::identity(dim, bg.rep.order);
        for v in &values {
            prod = prod.matmul(&b.shift(v)?)?;
        }
        annihilates &= prod.is_zero();
        mults.push(eigenspace_multiplicities(b, &values)?);
    }
    let sums = mults.iter().all(|m| m.iter().sum::<usize>() == dim);
    let same = mults.windows(2).all(|w| w[0] == w[1]);
    let squared = if n_cap % 2 == 1 && bg.variant.is_imaginary() {
        let k = (n_cap as i64 - 1) / 2;
        let labels: Vec<HalfInt> = (0..=k).map(|j| HalfInt::halves(2 * j + 1)).collect();
        let vals: Vec<CycNum> = labels.iter().map(|&x| {
            let v = qnum(x, n_cap);
            &v * &v
        }).collect();
        let mut m2 = Vec::new();
        for b in &bg.b {
            m2.push(eigenspace_multiplicities(&b.matmul(b)?, &vals)?);
        }
        Some(SquaredSpectrum {
            labels,
            candidates_distinct: pairwise_distinct(&vals),
            sums_match_dim: m2.iter().all(|m| m.iter().sum::<usize>() == dim),
            multiplicities: m2,
        })
    } else {
        None
    };
    Ok(SpectrumReport {
        labels: cands.iter().map(|c| c.0).collect(),
        candidates_distinct: pairwise_distinct(&values),
        annihilates,
        multiplicities: mults,
        sums_match_dim: sums,
        independent_of_i: same,
        squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::build_torus_rep;

    #[test]
    fn b_diagonal_entries() {
        let rep = build_torus_rep(4, 2).unwrap();
        let bg = build_b(&rep, Variant::PlusI).unwrap();
        let q = q_of(4);
        let i = zeta(32, 8);
        let d = (&q - &q.inv().unwrap()).inv().unwrap();
        for j in 0..8 {
            let qj = q.pow(j as i64).unwrap();
            let expect = &(&i * &(&qj + &qj.inv().unwrap())) * &d;
            assert_eq!(*bg.b[0].get(j, j), expect);
        }
        let real = build_b(&rep, Variant::PlusReal).unwrap();
        for j in 0..8 {
            assert_eq!(*real.b[0].get(j, j), qnum(HalfInt::from_int(j as i64), 4));
        }
        // Real spectrum forces self-adjointness (not skew-adjointness).
        assert_eq!(bg.b[0].adjoint(), bg.b[0]);
        assert_eq!(real.b[0].adjoint(), real.b[0]);
    }

    #[test]
    fn serre_examples() {
        let rep = build_torus_rep(3, 3).unwrap();
        assert!(qserre_check(&build_b(&rep, Variant::PlusI).unwrap()));
        let rep = build_torus_rep(6, 4).unwrap();
        assert!(qserre_check(&build_b(&rep, Variant::MinusReal).unwrap()));
        let rep = build_torus_rep(3, 3).unwrap();
        let mut bg = build_b(&rep, Variant::PlusI).unwrap();
        bg.b[0] = bg.b[0].scale(&CycNum::from_int(24, 2));
        assert!(!qserre_check(&bg));
    }

    #[test]
    fn spectra_examples() {
        let rep = build_torus_rep(4, 3).unwrap();
        let r = spectrum_check(&build_b(&rep, Variant::PlusI).unwrap()).unwrap();
        assert_eq!(r.labels.len(), 5);
        assert!(r.passed());
        let rep = build_torus_rep(3, 3).unwrap();
        let r = spectrum_check(&build_b(&rep, Variant::PlusI).unwrap()).unwrap();
        assert_eq!(r.labels.len(), 4);
        assert_eq!(r.squared.as_ref().unwrap().labels.len(), 2);
        assert!(r.passed());
    }

    #[test]
    fn top_eigenvalue_multiplicity_n4() {
        // Count j ∈ Z/8 with i(q^j + q^-j)/(q - q^-1) = [2] directly.
        let rep = build_torus_rep(4, 3).unwrap();
        let bg = build_b(&rep, Variant::PlusI).unwrap();
        let top = qnum(HalfInt::from_int(2), 4);
        let c = prefactor(4, Variant::PlusI);
        let q = q_of(4);
        let hits = (0..8)
            .filter(|&j| {
                let qj = q.pow(j).unwrap();
                &c * &(&qj + &qj.inv().unwrap()) == top
            })
            .count();
        assert_eq!(bg.b[0].shift(&top).unwrap().kernel_dim().unwrap(), hits);
    }
}
