//! Dense matrices over an exact field, row reduction, kernels and cokernels.
//!
//! Conventions used throughout the crate:
//! * the matrix of `f: V -> W` has `dim W` rows and `dim V` columns, column `j`
//!   being `f(e_j)`;
//! * the basis of `V_1 ⊗ … ⊗ V_n` is ordered with the leftmost factor most
//!   significant, `(i_1, …, i_n) ↦ i_1·(d_2⋯d_n) + … + i_n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Integer entries, row-major. Handy for catalog data and tests.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&x| F::from_i64(x)).collect())
    }

    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_col(j, c);
        }
        m
    }

    /// Builds a matrix column by column.
    pub fn from_fn_cols(rows: usize, cols: usize, mut f: impl FnMut(usize) -> Vec<F>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            let c = f(j);
            m.set_col(j, &c);
        }
        m
    }

    pub fn row_vector(v: Vec<F>) -> Self {
        Self::from_vec(1, v.len(), v)
    }

    pub fn column_vector(v: Vec<F>) -> Self {
        Self::from_vec(v.len(), 1, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[F]) {
        assert_eq!(v.len(), self.rows, "column length");
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape {
                context: "compose".into(),
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let lrow = self.row(i);
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in lrow.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    o.add_mul(a, b);
                }
            }
        }
        Ok(out)
    }

    /// Composition for callers that have already established the shapes.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.compose(rhs).expect("matrix shapes")
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                o.add_mul(self.get(i, j), x);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a.sub(b))
    }

    fn zip_with(&self, rhs: &Self, ctx: &str, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape { context: ctx.into(), left: self.shape(), right: rhs.shape() });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("matrix shapes")
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs).expect("matrix shapes")
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(F::neg).collect() }
    }

    /// Kronecker product `self ⊗ rhs` under the leftmost-significant index order.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r2, c2) = rhs.shape();
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn kron_all(factors: &[&Self]) -> Self {
        let mut acc = Self::identity(1);
        for f in factors {
            acc = acc.kron(f);
        }
        acc
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Columns `range` of `self`.
    pub fn columns(&self, idx: &[usize]) -> Self {
        Self::from_fn_cols(self.rows, idx.len(), |j| self.col(idx[j]))
    }

    pub fn rank(&self) -> usize {
        Rref::of(self).pivots.len()
    }

    pub fn kernel(&self) -> Subspace<F> {
        kernel(self)
    }

    pub fn cokernel(&self) -> Quotient<F> {
        cokernel(self)
    }

    /// Index of the first column where `self` and `other` differ.
    pub fn first_differing_col(&self, other: &Self) -> Option<usize> {
        assert_eq!(self.shape(), other.shape(), "comparison shapes");
        (0..self.cols).find(|&c| (0..self.rows).any(|r| self.get(r, c) != other.get(r, c)))
    }

    /// Square matrix inverse, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        solve_many(self, &Self::identity(self.rows))
    }
}

/// Reduced row echelon form: leftmost pivot, first nonzero row wins.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn of(m: &Matrix<F>) -> Self {
        Self::of_prefix(m.clone(), m.cols)
    }

    /// Row-reduces, choosing pivots only among the first `pivot_cols` columns.
    fn of_prefix(mut m: Matrix<F>, pivot_cols: usize) -> Self {
        let (rows, cols) = m.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    m.data.swap(p * cols + k, r * cols + k);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for k in c..cols {
                let v = m.get(r, k).mul(&inv);
                m.set(r, k, v);
            }
            let support: Vec<usize> = (c..cols).filter(|&k| !m.get(r, k).is_zero()).collect();
            let pivot_row: Vec<F> = support.iter().map(|&k| m.get(r, k).clone()).collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let factor = factor.neg();
                for (k, v) in support.iter().zip(&pivot_row) {
                    m.entry_mut(i, *k).add_mul(&factor, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }
}

/// A subspace `S ⊆ V` with inclusion `ι: S → V` and a retraction `r: V → S`, `r∘ι = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    pub inclusion: Matrix<F>,
    pub retraction: Matrix<F>,
}

/// A quotient `V → Q` with projection `π` and a section `σ`, `π∘σ = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient<F> {
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.inclusion.rows()
    }

    /// The column span of an injective map, with a left inverse as retraction.
    pub fn from_injective(inclusion: Matrix<F>) -> Option<Self> {
        let n = inclusion.cols();
        let rt = solve_many(&inclusion.transpose(), &Matrix::identity(n))?;
        Some(Subspace { inclusion, retraction: rt.transpose() })
    }

    /// Coordinates of `v` if it lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let x = self.retraction.apply(v);
        (self.inclusion.apply(&x) == v).then_some(x)
    }

    /// `r∘y`, after checking every column of `y` lies in the subspace.
    pub fn corestrict(&self, y: &Matrix<F>) -> std::result::Result<Matrix<F>, usize> {
        let x = self.retraction.mul(y);
        match self.inclusion.mul(&x).first_differing_col(y) {
            None => Ok(x),
            Some(c) => Err(c),
        }
    }
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection.cols()
    }
}

/// Null space of `f`, basis indexed by the free columns of its RREF.
pub fn kernel<F: Field>(f: &Matrix<F>) -> Subspace<F> {
    let n = f.cols();
    let rref = Rref::of(f);
    let mut is_pivot = vec![false; n];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut inclusion = Matrix::zeros(n, free.len());
    let mut retraction = Matrix::zeros(free.len(), n);
    for (j, &fc) in free.iter().enumerate() {
        inclusion.set(fc, j, F::one());
        retraction.set(j, fc, F::one());
        for (i, &pc) in rref.pivots.iter().enumerate() {
            let v = rref.matrix.get(i, fc);
            if !v.is_zero() {
                inclusion.set(pc, j, v.neg());
            }
        }
    }
    Subspace { inclusion, retraction }
}

/// Cokernel of `f`. The quotient basis consists of the classes of the standard
/// basis vectors of the target that are not pivots of `RREF(fᵀ)`.
pub fn cokernel<F: Field>(f: &Matrix<F>) -> Quotient<F> {
    cokernel_of_relations(&f.transpose(), f.rows())
}

/// Quotient of `F^n` by the span of the given relation rows.
pub fn cokernel_of_relations<F: Field>(relations: &Matrix<F>, n: usize) -> Quotient<F> {
    assert_eq!(relations.cols(), n, "relation width");
    let rref = Rref::of(relations);
    let mut is_pivot = vec![false; n];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut projection = Matrix::zeros(free.len(), n);
    let mut section = Matrix::zeros(n, free.len());
    for (j, &fc) in free.iter().enumerate() {
        projection.set(j, fc, F::one());
        section.set(fc, j, F::one());
        for (i, &pc) in rref.pivots.iter().enumerate() {
            let v = rref.matrix.get(i, fc);
            if !v.is_zero() {
                projection.set(j, pc, v.neg());
            }
        }
    }
    Quotient { projection, section }
}

/// Some `x` with `f x = y`, or `None` if `y ∉ im f`. Free variables are set to zero.
pub fn solve<F: Field>(f: &Matrix<F>, y: &[F]) -> Option<Vec<F>> {
    solve_many(f, &Matrix::column_vector(y.to_vec())).map(|x| x.col(0))
}

/// Some `X` with `f X = Y`, or `None` if a column of `Y` is outside `im f`.
pub fn solve_many<F: Field>(f: &Matrix<F>, y: &Matrix<F>) -> Option<Matrix<F>> {
    assert_eq!(f.rows(), y.rows(), "solve shapes");
    let n = f.cols();
    let rref = Rref::of_prefix(f.hstack(y), n);
    let rank = rref.pivots.len();
    for i in rank..f.rows() {
        if (0..y.cols()).any(|k| !rref.matrix.get(i, n + k).is_zero()) {
            return None;
        }
    }
    let mut x = Matrix::zeros(n, y.cols());
    for (i, &pc) in rref.pivots.iter().enumerate() {
        for k in 0..y.cols() {
            x.set(pc, k, rref.matrix.get(i, n + k).clone());
        }
    }
    Some(x)
}

/// Applies `f_1 ⊗ … ⊗ f_n` to a vector of the tensor product of their sources
/// without materializing the Kronecker product.
pub fn kron_apply<F: Field>(factors: &[&Matrix<F>], v: &[F]) -> Vec<F> {
    let mut shape: Vec<usize> = factors.iter().map(|f| f.cols()).collect();
    assert_eq!(shape.iter().product::<usize>(), v.len(), "kron_apply input length");
    let mut cur = v.to_vec();
    for (k, f) in factors.iter().enumerate() {
        let prefix: usize = shape[..k].iter().product();
        let suffix: usize = shape[k + 1..].iter().product();
        let (m, n) = f.shape();
        let mut next = vec![F::zero(); prefix * m * suffix];
        for p in 0..prefix {
            for b in 0..n {
                let base_in = (p * n + b) * suffix;
                if cur[base_in..base_in + suffix].iter().all(F::is_zero) {
                    continue;
                }
                for a in 0..m {
                    let coef = f.get(a, b);
                    if coef.is_zero() {
                        continue;
                    }
                    let base_out = (p * m + a) * suffix;
                    for s in 0..suffix {
                        let x = &cur[base_in + s];
                        if !x.is_zero() {
                            next[base_out + s].add_mul(coef, x);
                        }
                    }
                }
            }
        }
        shape[k] = m;
        cur = next;
    }
    cur
}

/// `(f_1 ⊗ … ⊗ f_n) ∘ g`, column by column.
pub fn kron_compose<F: Field>(factors: &[&Matrix<F>], g: &Matrix<F>) -> Matrix<F> {
    let rows: usize = factors.iter().map(|f| f.rows()).product();
    Matrix::from_fn_cols(rows, g.cols(), |j| kron_apply(factors, &g.col(j)))
}

/// Tensor product of vectors under the fixed index order.
pub fn tensor_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x.mul(y);
            }
        }
    }
    out
}

pub fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_vec<F: Field>(a: &[F], s: &F) -> Vec<F> {
    a.iter().map(|x| x.mul(s)).collect()
}

/// `acc += s * v`
pub fn axpy<F: Field>(acc: &mut [F], s: &F, v: &[F]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_mul(s, x);
    }
}

/// Decodes a flat tensor index into per-factor indices.
pub fn multi_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

pub fn flat_index(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

/// The flip `V ⊗ W → W ⊗ V`.
pub fn flip<F: Field>(dv: usize, dw: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(dv * dw, dv * dw);
    for i in 0..dv {
        for j in 0..dw {
            m.set(j * dv + i, i * dw + j, F::one());
        }
    }
    m
}
