//! Dense exact linear algebra.
//!
//! Storage is dense row-major, but products and eliminations skip zero entries,
//! which keeps the monomial matrices of the torus cheap.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

pub type ExactMatrix = Matrix<CycNum>;

impl<F: Field + Eq> Eq for Matrix<F> {}

impl<F: Field + Hash> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, ctx: F::Ctx) -> Self {
        Matrix { rows, cols, ctx, data: vec![F::zero_in(ctx); rows * cols] }
    }

    pub fn identity(n: usize, ctx: F::Ctx) -> Self {
        Self::scalar(n, &F::one_in(ctx))
    }

    pub fn scalar(n: usize, c: &F) -> Self {
        let mut m = Self::zeros(n, n, c.ctx());
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(ctx: F::Ctx, d: &[F]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n, ctx);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: F::Ctx, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, ctx, data }
    }

    pub fn from_rows(ctx: F::Ctx, rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, ctx, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        *x == F::one_in(self.ctx)
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols, self.ctx);
        // Column lists of nonzeros per row of `o`.
        let nz: Vec<Vec<usize>> =
            (0..o.rows).map(|k| (0..o.cols).filter(|&j| !o.get(k, j).is_zero()).collect()).collect();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &nz[k] {
                    let idx = i * o.cols + j;
                    let t = a.mul(o.get(k, j));
                    out.data[idx] = out.data[idx].add(&t);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape("entrywise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx, data })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| if b.is_zero() { a.clone() } else { a.add(b) })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| if b.is_zero() { a.clone() } else { a.sub(b) })
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| if a.is_zero() { a.clone() } else { a.mul(c) }).collect();
        Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx, data }
    }

    /// self - c·I.
    pub fn shift(&self, c: &F) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("shift of a non-square matrix".into()));
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            m.data[idx] = m.data[idx].sub(c);
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).conj())
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows, self.ctx);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.matmul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length".into()));
        }
        let mut out = vec![F::zero_in(self.ctx); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    *o = o.add(&a.mul(x));
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero_in(self.ctx), |acc, i| acc.add(self.get(i, i)))
    }

    /// Connected components of the row/column incidence graph of the nonzero pattern.
    /// Columns touching no nonzero entry appear as components with no rows.
    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, self.rows + j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut idx = vec![usize::MAX; n];
        let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            if idx[r] == usize::MAX {
                idx[r] = out.len();
                out.push((Vec::new(), Vec::new()));
            }
            let b = &mut out[idx[r]];
            if x < self.rows {
                b.0.push(x);
            } else {
                b.1.push(x - self.rows);
            }
        }
        out
    }

    /// Reduced row echelon form of a dense block; returns (rows, pivot columns).
    fn rref(mut m: Vec<Vec<F>>, ncols: usize) -> Result<(Vec<Vec<F>>, Vec<usize>)> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].inv()?;
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        let mut total = 0;
        for (rs, cs) in self.blocks() {
            if rs.is_empty() || cs.is_empty() {
                continue;
            }
            let sub: Vec<Vec<F>> = rs.iter().map(|&i| cs.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
            total += Self::rref(sub, cs.len())?.1.len();
        }
        Ok(total)
    }

    pub fn kernel_dim(&self) -> Result<usize> {
        Ok(self.cols - self.rank()?)
    }

    /// A basis of the right kernel.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<F>>> {
        let mut out = Vec::new();
        for (rs, cs) in self.blocks() {
            if cs.is_empty() {
                continue;
            }
            let sub: Vec<Vec<F>> = rs.iter().map(|&i| cs.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
            let (red, pivots) = Self::rref(sub, cs.len())?;
            for free in 0..cs.len() {
                if pivots.contains(&free) {
                    continue;
                }
                let mut v = vec![F::zero_in(self.ctx); self.cols];
                v[cs[free]] = F::one_in(self.ctx);
                for (row, &p) in red.iter().zip(&pivots) {
                    if !row[free].is_zero() {
                        v[cs[p]] = row[free].neg();
                    }
                }
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { F::one_in(self.ctx) } else { F::zero_in(self.ctx) }));
                row
            })
            .collect();
        let (red, pivots) = Self::rref(aug, n)?;
        if pivots.len() < n {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        Ok(Self::from_fn(n, n, self.ctx, |i, j| red[i][n + j].clone()))
    }

    /// Scale so the first nonzero entry (row-major) is 1.
    pub fn projective_canonical(&self) -> Result<Self> {
        let first = self
            .data
            .iter()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::Domain("projective class of the zero matrix".into()))?;
        let inv = first.inv()?;
        Ok(self.scale(&inv))
    }

    /// AB - BA.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.matmul(o)?.sub(&o.matmul(self)?)
    }
}

impl<F: Field + fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn matmul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.matmul(b)
}

pub fn adjoint<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    m.adjoint()
}

pub fn kernel_dim<F: Field>(m: &Matrix<F>) -> Result<usize> {
    m.kernel_dim()
}

pub fn projective_canonical<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    m.projective_canonical()
}

/// dim ker(M - λI) for each candidate λ.
pub fn eigenspace_multiplicities<F: Field>(m: &Matrix<F>, candidates: &[F]) -> Result<Vec<usize>> {
    candidates.iter().map(|c| m.shift(c)?.kernel_dim()).collect()
}

/// Incrementally maintained reduced echelon basis of a subspace of F^len.
pub struct EchelonBasis<F: Field> {
    len: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(len: usize) -> Self {
        EchelonBasis { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F]) -> Result<bool> {
        if v.len() != self.len {
            return Err(Error::Shape("vector length".into()));
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return Ok(false) };
        let inv = w[p].inv()?;
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        Ok(true)
    }
}

/// Dimension of the algebra generated by `generators` (and I, if requested).
pub fn algebra_span_dim<F: Field>(generators: &[Matrix<F>], include_identity: bool) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Ok(usize::from(include_identity));
    };
    let d = first.rows;
    if generators.iter().any(|g| g.rows != d || g.cols != d) {
        return Err(Error::Shape("generators must be square of equal size".into()));
    }
    let ctx = first.ctx;
    let mut basis = EchelonBasis::new(d * d);
    let mut queue: Vec<Matrix<F>> = Vec::new();
    let mut seeds: Vec<Matrix<F>> = generators.to_vec();
    if include_identity {
        seeds.push(Matrix::identity(d, ctx));
    }
    for s in seeds {
        if basis.insert(&s.data)? {
            queue.push(s);
        }
    }
    // The span of all words is already closed under left multiplication,
    // so right multiplication by generators suffices.
    let mut head = 0;
    while head < queue.len() {
        let m = queue[head].clone();
        head += 1;
        for g in generators {
            let p = m.matmul(g)?;
            if basis.insert(&p.data)? {
                queue.push(p);
            }
        }
        if basis.dim() == d * d {
            break;
        }
    }
    Ok(basis.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::zeta;

    fn c(l: u32, n: i64) -> CycNum {
        CycNum::from_int(l, n)
    }

    #[test]
    fn identity_and_zero_kernels() {
        let i = ExactMatrix::identity(4, 8);
        assert_eq!(i.kernel_dim().unwrap(), 0);
        assert_eq!(ExactMatrix::zeros(5, 5, 8).kernel_dim().unwrap(), 5);
        let m = ExactMatrix::from_fn(3, 3, 8, |a, b| c(8, (a * 3 + b) as i64));
        assert_eq!(i.matmul(&ExactMatrix::identity(4, 8)).unwrap(), i);
        assert_eq!(ExactMatrix::identity(3, 8).matmul(&m).unwrap(), m);
        assert_eq!(m.rank().unwrap(), 2);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn adjoint_examples() {
        let l = 16;
        let m = ExactMatrix::from_fn(2, 3, l, |a, b| zeta(l, (a + 2 * b) as i64) + c(l, a as i64));
        assert_eq!(m.adjoint().adjoint(), m);
        assert_eq!(ExactMatrix::identity(3, l).adjoint(), ExactMatrix::identity(3, l));
    }

    #[test]
    fn inverse_round_trip() {
        let l = 12;
        let m = ExactMatrix::from_fn(3, 3, l, |a, b| zeta(l, (a * b) as i64) + c(l, (a == b) as i64));
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).unwrap().is_identity());
        assert!(ExactMatrix::zeros(2, 2, l).inverse().is_err());
    }

    #[test]
    fn span_examples() {
        let l = 8;
        assert_eq!(algebra_span_dim(&[ExactMatrix::identity(3, l)], true).unwrap(), 1);
        let d = ExactMatrix::diag(l, &[c(l, 1), c(l, 2), c(l, 3), c(l, 2)]);
        assert_eq!(algebra_span_dim(&[d], true).unwrap(), 3);
    }

    #[test]
    fn projective_examples() {
        let l = 8;
        let m = ExactMatrix::from_fn(2, 2, l, |a, b| if a == b { CycNum::zero(l) } else { zeta(l, (a + 1) as i64) });
        let pm = m.projective_canonical().unwrap();
        assert_eq!(pm, m.scale(&zeta(l, 1)).projective_canonical().unwrap());
        assert!(ExactMatrix::scalar(3, &zeta(l, 3)).projective_canonical().unwrap().is_identity());
        assert!(ExactMatrix::zeros(2, 2, l).projective_canonical().is_err());
    }
}
