//! Dense linear algebra over a [`FiniteField`].
//!
//! Vectors are plain slices of field elements. A square [`Matrix`] acts on
//! column vectors: `apply(m, v) = m·v`. Composition of group actions follows
//! from that: applying `a` and then `b` is the product `b·a`.

use std::fmt;

use rand::Rng;

use super::field::{FieldElement, FiniteField};
use crate::error::{Error, Result};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.0.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![FieldElement::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix rows must form a square array"));
        }
        Ok(Matrix {
            n,
            entries: rows.concat(),
        })
    }

    /// Builds a matrix from raw entry indices, validating them against `field`.
    pub fn from_indices(field: &FiniteField, n: usize, indices: &[u32]) -> Result<Self> {
        if indices.len() != n * n {
            return Err(Error::domain(format!("expected {} entries, got {}", n * n, indices.len())));
        }
        let entries = indices.iter().map(|&i| field.element(i)).collect::<Result<_>>()?;
        Ok(Matrix { n, entries })
    }

    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.entries[r * self.n + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| self.get(r, c) == if r == c { FieldElement::ONE } else { FieldElement::ZERO }))
    }

    pub fn scale_row(&mut self, f: &FiniteField, r: usize, s: FieldElement) {
        for c in 0..self.n {
            let x = f.mul(self.get(r, c), s);
            self.set(r, c, x);
        }
    }
}

pub fn matmul(f: &FiniteField, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.n != b.n {
        return Err(Error::domain(format!("dimension mismatch {} vs {}", a.n, b.n)));
    }
    let n = a.n;
    let mut out = Matrix::zero(n);
    for r in 0..n {
        for t in 0..n {
            let x = a.get(r, t);
            if x.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = f.add(out.get(r, c), f.mul(x, b.get(t, c)));
                out.set(r, c, v);
            }
        }
    }
    Ok(out)
}

/// `m·v` for a column vector `v`.
pub fn apply(f: &FiniteField, m: &Matrix, v: &[FieldElement]) -> Result<Vector> {
    if v.len() != m.n {
        return Err(Error::domain(format!("vector of length {} against {}x{} matrix", v.len(), m.n, m.n)));
    }
    Ok((0..m.n).map(|r| dot(f, m.row(r), v)).collect())
}

pub fn dot(f: &FiniteField, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    u.iter()
        .zip(v)
        .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

pub fn det(f: &FiniteField, m: &Matrix) -> FieldElement {
    let n = m.n;
    let mut a = m.rows();
    let mut d = FieldElement::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElement::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            d = f.neg(d);
        }
        let pv = a[col][col];
        d = f.mul(d, pv);
        let pinv = f.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = f.mul(a[r][col], pinv);
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let x = f.sub(a[r][c], f.mul(factor, a[col][c]));
                a[r][c] = x;
            }
        }
    }
    d
}

pub fn inverse(f: &FiniteField, m: &Matrix) -> Result<Matrix> {
    let n = m.n;
    let mut a = m.rows();
    let mut inv = Matrix::identity(n).rows();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let pinv = f.inv(a[col][col])?;
        for c in 0..n {
            a[col][c] = f.mul(a[col][c], pinv);
            inv[col][c] = f.mul(inv[col][c], pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col];
            for c in 0..n {
                a[r][c] = f.sub(a[r][c], f.mul(factor, a[col][c]));
                inv[r][c] = f.sub(inv[r][c], f.mul(factor, inv[col][c]));
            }
        }
    }
    Matrix::from_rows(&inv)
}

/// Reduced row-echelon basis of the span of `rows` (zero rows dropped).
pub fn rref(f: &FiniteField, rows: &[Vector]) -> Result<Vec<Vector>> {
    let mut span = EchelonSpan::new(dim_of(rows)?);
    for r in rows {
        span.insert(f, r)?;
    }
    Ok(span.into_reduced_rows())
}

pub fn in_span(f: &FiniteField, v: &[FieldElement], basis: &[Vector]) -> Result<bool> {
    if basis.iter().any(|b| b.len() != v.len()) {
        return Err(Error::domain("vector dimensions differ"));
    }
    let mut span = EchelonSpan::new(v.len());
    for b in basis {
        span.insert(f, b)?;
    }
    span.contains(f, v)
}

fn dim_of(rows: &[Vector]) -> Result<usize> {
    let n = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::domain("rows of differing length"));
    }
    Ok(n)
}

/// Solution set `{particular + Σ t_i kernel[i]}` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// A uniformly random point of the solution set.
    pub fn sample<R: Rng + ?Sized>(&self, f: &FiniteField, rng: &mut R) -> Vector {
        let mut x = self.particular.clone();
        for k in &self.kernel {
            let t = FieldElement(rng.gen_range(0..f.q()));
            if t.is_zero() {
                continue;
            }
            for (xi, &ki) in x.iter_mut().zip(k) {
                *xi = f.add(*xi, f.mul(t, ki));
            }
        }
        x
    }
}

/// Solves `A x = b` where `a` holds the rows of `A` and `ncols` is the number of unknowns.
/// Returns `None` when the system is inconsistent.
pub fn solve_affine(f: &FiniteField, a: &[Vector], b: &[FieldElement], ncols: usize) -> Result<Option<AffineSolution>> {
    if a.len() != b.len() || a.iter().any(|r| r.len() != ncols) {
        return Err(Error::domain("system dimensions disagree"));
    }
    // Augmented rows, Gauss–Jordan.
    let mut rows: Vec<Vector> = a.iter().zip(b).map(|(r, &bi)| {
        let mut row = r.clone();
        row.push(bi);
        row
    }).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(piv) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(piv, top);
        let pinv = f.inv(rows[top][col])?;
        for x in rows[top].iter_mut() {
            *x = f.mul(*x, pinv);
        }
        for r in 0..rows.len() {
            if r == top || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..=ncols {
                let v = f.sub(rows[r][c], f.mul(factor, rows[top][c]));
                rows[r][c] = v;
            }
        }
        pivots.push(col);
        top += 1;
    }
    if rows[top..].iter().any(|r| !r[ncols].is_zero()) {
        return Ok(None);
    }
    let mut particular = vec![FieldElement::ZERO; ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        particular[pc] = rows[i][ncols];
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(rows[i][free]);
        }
        kernel.push(v);
    }
    Ok(Some(AffineSolution { particular, kernel }))
}

/// An incrementally maintained subspace in echelon form.
///
/// Each stored row has a leading 1 in its pivot column and zeros in the
/// pivot columns of earlier rows, so reduction against the basis is a single pass.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonSpan {
    pub fn new(ambient_dim: usize) -> Self {
        EchelonSpan {
            dim: ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn check(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::domain(format!("vector of length {} in a space of dimension {}", v.len(), self.dim)));
        }
        Ok(())
    }

    fn residual(&self, f: &FiniteField, v: &[FieldElement]) -> Vector {
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        r
    }

    pub fn contains(&self, f: &FiniteField, v: &[FieldElement]) -> Result<bool> {
        self.check(v)?;
        Ok(self.residual(f, v).iter().all(|x| x.is_zero()))
    }

    /// Adds `v` to the span; returns whether it was independent of the existing span.
    pub fn insert(&mut self, f: &FiniteField, v: &[FieldElement]) -> Result<bool> {
        self.check(v)?;
        let mut r = self.residual(f, v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = f.inv(r[pc])?;
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&r) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        Ok(true)
    }

    /// Rows sorted by pivot column: the reduced row-echelon form.
    pub fn into_reduced_rows(self) -> Vec<Vector> {
        let mut pairs: Vec<(usize, Vector)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        pairs.into_iter().map(|(_, r)| r).collect()
    }
}

pub fn random_vector<R: Rng + ?Sized>(f: &FiniteField, n: usize, rng: &mut R) -> Vector {
    (0..n).map(|_| FieldElement(rng.gen_range(0..f.q()))).collect()
}
