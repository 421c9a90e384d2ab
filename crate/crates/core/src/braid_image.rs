//! Breadth-first closure of braid-group images over exact matrices.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::gaussian::build_braid;
use crate::torus::build_torus_rep;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// Largest module dimension `image_order` will attempt.
pub const MAX_DIM: usize = 64;
/// Rough memory ceiling for stored elements.
const MEMORY_CAP: usize = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Projective,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub mode: Mode,
    pub order: Option<u64>,
    pub element_count_at_stop: u64,
    pub terminated: bool,
    pub budget: u64,
    pub generator_count: usize,
}

fn prepare(gens: &[ExactMatrix], mode: Mode) -> Result<Vec<ExactMatrix>> {
    let d = gens.first().map(|g| g.rows()).unwrap_or(0);
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.is_square() || g.rows() != d {
            return Err(Error::Shape("closure generators must be square of one size".into()));
        }
        if g.rank()? < d {
            return Err(Error::Singular("closure generator is not invertible".into()));
        }
        out.push(match mode {
            Mode::Projective => g.projective_canonical()?,
            Mode::Linear => g.clone(),
        });
    }
    Ok(out)
}

fn entry_bytes(m: &ExactMatrix) -> usize {
    let per = m.entries().iter().map(|x| 16 + 8 * x.coeffs().len()).max().unwrap_or(16);
    m.rows() * m.cols() * per + 64
}

/// BFS from the identity by right multiplication with the generators.
///
/// Only the generators themselves are applied: once a finite set of invertible
/// matrices is closed under g ↦ g·h, that map is a bijection of the set, so it
/// is closed under h⁻¹ as well.
pub fn closure_elements(
    gens: &[ExactMatrix],
    mode: Mode,
    budget: u64,
) -> Result<(ClosureResult, HashSet<ExactMatrix>)> {
    if budget == 0 {
        return Err(Error::Domain("closure budget must be at least 1".into()));
    }
    let gens = prepare(gens, mode)?;
    let (d, ctx) = match gens.first() {
        Some(g) => (g.rows(), g.ctx()),
        None => (1, 8),
    };
    let id = ExactMatrix::identity(d, ctx);
    let mut seen: HashSet<ExactMatrix> = HashSet::new();
    let mut frontier = vec![id.clone()];
    seen.insert(id);
    let mut terminated = true;
    let mut bytes = 0usize;
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &gens {
                let mut p = g.matmul(h)?;
                if mode == Mode::Projective {
                    p = p.projective_canonical()?;
                }
                if seen.contains(&p) {
                    continue;
                }
                bytes += entry_bytes(&p);
                seen.insert(p.clone());
                next.push(p);
                if seen.len() as u64 > budget || bytes > MEMORY_CAP {
                    terminated = false;
                    break 'bfs;
                }
            }
        }
        frontier = next;
    }
    let count = seen.len() as u64;
    let result = ClosureResult {
        mode,
        order: terminated.then_some(count),
        element_count_at_stop: count,
        terminated,
        budget,
        generator_count: gens.len(),
    };
    Ok((result, seen))
}

pub fn closure(gens: &[ExactMatrix], mode: Mode, budget: u64) -> Result<ClosureResult> {
    closure_elements(gens, mode, budget).map(|r| r.0)
}

/// Every product of a stored element with a generator or its inverse is stored.
pub fn verify_closed(elements: &HashSet<ExactMatrix>, gens: &[ExactMatrix], mode: Mode) -> Result<bool> {
    let gens = prepare(gens, mode)?;
    let mut all = gens.clone();
    for g in &gens {
        all.push(g.inverse()?);
    }
    for e in elements {
        for h in &all {
            let mut p = e.matmul(h)?;
            if mode == Mode::Projective {
                p = p.projective_canonical()?;
            }
            if !elements.contains(&p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closure of the Gaussian representation of B_n at the given N.
pub fn image_order(n_cap: u32, n: usize, mode: Mode, budget: u64) -> Result<ClosureResult> {
    if n_cap < 3 || n < 2 {
        return Err(Error::Domain(format!("image_order needs N ≥ 3 and n ≥ 2, got N={n_cap}, n={n}")));
    }
    let rep = build_torus_rep(n_cap, n)?;
    if rep.dim > MAX_DIM {
        return Err(Error::Bound(format!("module dimension {} exceeds {MAX_DIM}", rep.dim)));
    }
    let br = build_braid(&rep)?;
    closure(&br.r, mode, budget)
}
