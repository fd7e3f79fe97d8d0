//! Dense exact linear algebra over [`Scalar`], plus a block-decomposing
//! nullspace solver for large sparse systems.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::{Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: &Field) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: &Field) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        Matrix::from_rows(cols.to_vec()).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let zero = self.data.first().map(Scalar::zero_like).expect("nonempty matrix");
        let mut data = vec![zero; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = v[0].zero_like();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let d = &f * &m[(r, j)];
                            m[(i, j)] -= &d;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let zero = self.data.first().map(Scalar::zero_like).expect("nonempty matrix");
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = zero.one_like();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(i, free)];
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let zero = self.data[0].zero_like();
        let mut aug = Matrix { rows: n, cols: 2 * n, data: vec![zero.clone(); 2 * n * n] };
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = zero.one_like();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix { rows: n, cols: n, data: vec![zero; n * n] };
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = self.data[0].one_like();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return det.zero_like();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det *= &m[(c, c)];
            let inv = m[(c, c)].inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] * &inv;
                    for j in c..m.cols {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A subspace held as the rows of a reduced row echelon matrix.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Subspace { ambient, basis: Vec::new(), pivots: Vec::new() };
        }
        let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Coordinates with respect to the echelon basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= &(c * x);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// A sparse linear equation `Σ coeff · x_var = 0`.
pub type SparseRow = Vec<(usize, Scalar)>;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Kernel of a sparse homogeneous system in `nvars` unknowns.
///
/// Unknowns that never share an equation are independent, so the system is
/// split into connected blocks and each block is solved densely. Systems that
/// come from graded algebras break into many small blocks.
pub fn sparse_nullspace(nvars: usize, equations: &[SparseRow], field: &Field) -> Vec<Vec<Scalar>> {
    let mut parent: Vec<usize> = (0..nvars).collect();
    for eq in equations {
        if let Some(&(first, _)) = eq.first() {
            let a = find(&mut parent, first);
            for &(v, _) in &eq[1..] {
                let b = find(&mut parent, v);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..nvars {
        let r = find(&mut parent, v);
        blocks.entry(r).or_default().push(v);
    }
    let mut block_eqs: std::collections::BTreeMap<usize, Vec<&SparseRow>> = Default::default();
    for eq in equations {
        if let Some(&(first, _)) = eq.first() {
            let r = find(&mut parent, first);
            block_eqs.entry(r).or_default().push(eq);
        }
    }

    let mut out = Vec::new();
    for (root, vars) in blocks {
        let local: std::collections::HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let eqs = block_eqs.remove(&root).unwrap_or_default();
        let kernel = if eqs.is_empty() {
            (0..vars.len())
                .map(|i| {
                    let mut v = vec![field.zero(); vars.len()];
                    v[i] = field.one();
                    v
                })
                .collect()
        } else {
            let mut m = Matrix::zeros(eqs.len(), vars.len(), field);
            for (i, eq) in eqs.iter().enumerate() {
                for (v, c) in eq.iter() {
                    let j = local[v];
                    m[(i, j)] += c;
                }
            }
            m.nullspace()
        };
        for k in kernel {
            let mut full = vec![field.zero(); nvars];
            for (i, x) in k.into_iter().enumerate() {
                full[vars[i]] = x;
            }
            out.push(full);
        }
    }
    out
}

/// Diagonalizes the symmetric bilinear form with Gram matrix `gram` by
/// congruence and returns the diagonal. Characteristic must not be 2.
pub fn diagonalize_symmetric(gram: &Matrix) -> Vec<Scalar> {
    assert_eq!(gram.rows(), gram.cols());
    let n = gram.rows();
    let mut m = gram.clone();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if m[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                // swap basis vectors i and j
                m.swap_rows(i, j);
                let t = m.transpose();
                m = t;
                m.swap_rows(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !m[(i, j)].is_zero()) {
                // replace b_i by b_i + b_j, whose norm 2B(b_i, b_j) is nonzero
                for c in 0..n {
                    let v = m[(j, c)].clone();
                    m[(i, c)] += &v;
                }
                for r in 0..n {
                    let v = m[(r, j)].clone();
                    m[(r, i)] += &v;
                }
            }
        }
        let pivot = m[(i, i)].clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        let inv = pivot.inv().unwrap();
        for j in i + 1..n {
            if m[(j, i)].is_zero() {
                continue;
            }
            let f = &m[(j, i)] * &inv;
            for c in 0..n {
                let d = &f * &m[(i, c)];
                m[(j, c)] -= &d;
            }
            for r in 0..n {
                let d = &f * &m[(r, i)];
                m[(r, j)] -= &d;
            }
        }
    }
    diag
}
