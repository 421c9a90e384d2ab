//! Simple objects of SO(N)₂ (N odd) and O(N)₂ (N even), fusion with the spin
//! object S, and Bratteli path counts for End(S^⊗n).

use serde::Serialize;

use crate::cyclo::{sqrt_int, CycNum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "SO(N)_2")]
    SpecialOrthogonal,
    #[serde(rename = "O(N)_2")]
    Orthogonal,
}

/// a + b√m with m = N (N odd) or 2N (N even).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadDim {
    pub a: i64,
    pub b: i64,
}

impl QuadDim {
    fn times_spin(self, m: i64) -> QuadDim {
        QuadDim { a: self.b * m, b: self.a }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    pub n_cap: u32,
    pub family: Family,
    /// m in the dimension field Q(√m).
    pub radicand: u32,
    pub labels: Vec<String>,
    pub dims: Vec<CycNum>,
    pub quad_dims: Vec<QuadDim>,
    /// ns[x][y] = multiplicity of y in x ⊗ S; empty until `fusion_with_s`.
    pub ns: Vec<Vec<u32>>,
}

impl FusionTable {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn spin(&self) -> usize {
        self.index("S").expect("S is always present")
    }

    pub fn global_dim(&self) -> CycNum {
        self.dims.iter().fold(CycNum::zero(self.order()), |acc, d| acc + d * d)
    }

    fn order(&self) -> u32 {
        8 * self.n_cap
    }
}

/// Dimension field order used for tables: Q(ζ_{8N}) contains √N and √(2N).
fn table_order(n_cap: u32) -> u32 {
    8 * n_cap
}

pub fn object_table(n_cap: u32) -> Result<FusionTable> {
    if n_cap < 3 {
        return Err(Error::Domain(format!("fusion tables need N ≥ 3, got {n_cap}")));
    }
    let n = n_cap as i64;
    let mut labels: Vec<String> = Vec::new();
    let mut quad = Vec::new();
    let one = QuadDim { a: 1, b: 0 };
    let two = QuadDim { a: 2, b: 0 };
    let spin = QuadDim { a: 0, b: 1 };
    let (family, radicand) = if n % 2 == 1 {
        labels.push("1".into());
        labels.push("V_2L1".into());
        quad.extend([one, one]);
        for s in 1..=(n - 1) / 2 {
            labels.push(format!("gamma_{s}"));
            quad.push(two);
        }
        (Family::SpecialOrthogonal, n_cap)
    } else {
        for l in ["1", "[2]", &format!("[1^{n}]"), &format!("[1^{},1]", n - 1)] {
            labels.push(l.to_string());
            quad.push(one);
        }
        for s in 1..n {
            labels.push(format!("[1^{s}]"));
            quad.push(two);
        }
        (Family::Orthogonal, 2 * n_cap)
    };
    labels.push("S".into());
    labels.push("S'".into());
    quad.extend([spin, spin]);
    let l = table_order(n_cap);
    let root = sqrt_int(radicand as u64, l)?;
    let dims = quad.iter().map(|q| &CycNum::from_int(l, q.a) + &root.scale(q.b, 1)).collect();
    Ok(FusionTable { n_cap, family, radicand, labels, dims, quad_dims: quad, ns: Vec::new() })
}

/// Summands of S ⊗ S, each with multiplicity one.
pub fn s_tensor_square(n_cap: u32) -> Vec<String> {
    let n = n_cap as i64;
    if n % 2 == 1 {
        std::iter::once("1".to_string()).chain((1..=(n - 1) / 2).map(|s| format!("gamma_{s}"))).collect()
    } else {
        std::iter::once("1".to_string()).chain((1..=n).map(|s| format!("[1^{s}]"))).collect()
    }
}

struct Solver<'a> {
    dims: &'a [QuadDim],
    targets: Vec<QuadDim>,
    cells: Vec<(usize, usize)>,
    ns: Vec<Vec<Option<u32>>>,
    solutions: Vec<Vec<Vec<u32>>>,
}

impl Solver<'_> {
    fn remaining(&self, x: usize) -> QuadDim {
        let mut r = self.targets[x];
        for (y, v) in self.ns[x].iter().enumerate() {
            if let Some(v) = v {
                r.a -= *v as i64 * self.dims[y].a;
                r.b -= *v as i64 * self.dims[y].b;
            }
        }
        r
    }

    fn bound(&self, x: usize, y: usize) -> i64 {
        let mut best = i64::MAX;
        for (row, col) in [(x, y), (y, x)] {
            let rem = self.remaining(row);
            let d = self.dims[col];
            if d.a > 0 {
                best = best.min(rem.a.div_euclid(d.a));
            }
            if d.b > 0 {
                best = best.min(rem.b.div_euclid(d.b));
            }
        }
        best
    }

    fn row_done(&self, x: usize) -> bool {
        self.ns[x].iter().all(Option::is_some)
    }

    fn dfs(&mut self, k: usize) {
        if self.solutions.len() > 1 {
            return;
        }
        if k == self.cells.len() {
            let ok = (0..self.ns.len()).all(|x| self.remaining(x) == QuadDim { a: 0, b: 0 });
            if ok {
                self.solutions.push(self.ns.iter().map(|r| r.iter().map(|v| v.unwrap()).collect()).collect());
            }
            return;
        }
        let (x, y) = self.cells[k];
        for v in 0..=self.bound(x, y).max(-1) {
            self.ns[x][y] = Some(v as u32);
            self.ns[y][x] = Some(v as u32);
            let done_ok = [x, y]
                .iter()
                .all(|&r| !self.row_done(r) || self.remaining(r) == QuadDim { a: 0, b: 0 });
            if done_ok {
                self.dfs(k + 1);
            }
        }
        self.ns[x][y] = None;
        self.ns[y][x] = None;
    }
}

/// The unique nonnegative integer matrix NS with row S given by S ⊗ S, NS
/// symmetric, and Σ_y NS[x][y]·d_y = d_x·d_S in both components of Q(√m).
pub fn fusion_with_s(n_cap: u32) -> Result<FusionTable> {
    let mut t = object_table(n_cap)?;
    let r = t.rank();
    let s = t.spin();
    let m = t.radicand as i64;
    let sq = s_tensor_square(n_cap);
    let mut ns = vec![vec![None; r]; r];
    for y in 0..r {
        let v = sq.iter().filter(|l| **l == t.labels[y]).count() as u32;
        ns[s][y] = Some(v);
        ns[y][s] = Some(v);
    }
    let cells = (0..r).flat_map(|x| (x..r).map(move |y| (x, y))).filter(|&(x, y)| x != s && y != s).collect();
    let targets = t.quad_dims.iter().map(|d| d.times_spin(m)).collect();
    let mut solver = Solver { dims: &t.quad_dims, targets, cells, ns, solutions: Vec::new() };
    solver.dfs(0);
    match solver.solutions.len() {
        0 => Err(Error::Verification(format!("no fusion-with-S matrix satisfies the constraints at N = {n_cap}"))),
        1 => {
            t.ns = solver.solutions.pop().expect("one solution");
            Ok(t)
        }
        _ => Err(Error::Ambiguous(format!("fusion with S is not determined by the constraints at N = {n_cap}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionReport {
    pub rank: usize,
    pub expected_rank: usize,
    pub global_dim_ok: bool,
    pub square_dims_ok: bool,
    pub symmetric: bool,
    pub dimension_homomorphism: bool,
    /// 1 ⊗ S ⊗ S reproduces the S ⊗ S decomposition, and NS² preserves dimensions.
    pub associativity_spot_check: bool,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank
            && self.global_dim_ok
            && self.square_dims_ok
            && self.symmetric
            && self.dimension_homomorphism
            && self.associativity_spot_check
    }
}

/// Σd² = 4N for SO(N)₂ and 8N for O(N)₂.
pub fn expected_global_dim(n_cap: u32) -> i64 {
    if n_cap % 2 == 1 {
        4 * n_cap as i64
    } else {
        8 * n_cap as i64
    }
}

pub fn expected_rank(n_cap: u32) -> usize {
    if n_cap % 2 == 1 {
        (n_cap as usize - 1) / 2 + 4
    } else {
        n_cap as usize + 5
    }
}

pub fn fusion_report(t: &FusionTable) -> Result<FusionReport> {
    let r = t.rank();
    let l = t.order();
    let s = t.spin();
    let ds = &t.dims[s];
    let sq = s_tensor_square(t.n_cap);
    let sq_dim = sq.iter().filter_map(|x| t.index(x)).fold(CycNum::zero(l), |a, i| a + t.dims[i].clone());
    let mut out = FusionReport {
        rank: r,
        expected_rank: expected_rank(t.n_cap),
        global_dim_ok: t.global_dim() == CycNum::from_int(l, expected_global_dim(t.n_cap)),
        square_dims_ok: sq.len() == sq.iter().filter(|x| t.index(x).is_some()).count() && sq_dim == ds * ds,
        symmetric: false,
        dimension_homomorphism: false,
        associativity_spot_check: false,
    };
    if t.ns.len() != r {
        return Ok(out);
    }
    out.symmetric = (0..r).all(|x| (0..r).all(|y| t.ns[x][y] == t.ns[y][x]));
    let act = |row: &[u32]| -> CycNum {
        row.iter().zip(&t.dims).fold(CycNum::zero(l), |a, (&k, d)| a + d.scale(k as i64, 1))
    };
    out.dimension_homomorphism = (0..r).all(|x| act(&t.ns[x]) == &t.dims[x] * ds);
    let one = t.index("1").expect("unit object");
    let ns2: Vec<Vec<u32>> =
        (0..r).map(|x| (0..r).map(|y| (0..r).map(|z| t.ns[x][z] * t.ns[z][y]).sum()).collect()).collect();
    let sq_vec: Vec<u32> = t.labels.iter().map(|lab| sq.iter().filter(|x| *x == lab).count() as u32).collect();
    out.associativity_spot_check =
        ns2[one] == sq_vec && (0..r).all(|x| act(&ns2[x]) == &(&t.dims[x] * ds) * ds);
    Ok(out)
}

/// d_n = Σ_X mult_X(S^⊗n)² for n = 1..=n_max.
pub fn bratteli_dims(n_cap: u32, n_max: usize) -> Result<Vec<u128>> {
    let t = fusion_with_s(n_cap)?;
    let r = t.rank();
    let mut mult = vec![0u128; r];
    mult[t.spin()] = 1;
    let mut out = Vec::new();
    for step in 1..=n_max {
        if step > 1 {
            let mut next = vec![0u128; r];
            for x in 0..r {
                for y in 0..r {
                    let add = mult[x]
                        .checked_mul(t.ns[x][y] as u128)
                        .ok_or_else(|| Error::Bound("Bratteli multiplicity overflow".into()))?;
                    next[y] = next[y].checked_add(add).ok_or_else(|| Error::Bound("Bratteli multiplicity overflow".into()))?;
                }
            }
            mult = next;
        }
        let d = mult
            .iter()
            .try_fold(0u128, |a, &m| m.checked_mul(m).and_then(|m2| a.checked_add(m2)))
            .ok_or_else(|| Error::Bound("Bratteli dimension overflow".into()))?;
        out.push(d);
    }
    Ok(out)
}
