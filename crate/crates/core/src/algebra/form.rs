//! Alternating bilinear forms.

use super::field::{FieldElement, FiniteField};
use super::matrix::{self, Matrix, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
    kind: FormKind,
}

impl BilinearForm {
    /// Validates that `gram` is antisymmetric with zero diagonal and nondegenerate.
    pub fn alternating(f: &FiniteField, gram: Matrix) -> Result<Self> {
        let n = gram.n();
        for i in 0..n {
            if !gram.get(i, i).is_zero() {
                return Err(Error::domain("alternating form needs a zero diagonal"));
            }
            for j in 0..i {
                if gram.get(i, j) != f.neg(gram.get(j, i)) {
                    return Err(Error::domain("alternating form must be antisymmetric"));
                }
            }
        }
        if matrix::det(f, &gram).is_zero() {
            return Err(Error::domain("form is degenerate"));
        }
        Ok(BilinearForm {
            gram,
            kind: FormKind::Alternating,
        })
    }

    /// The standard symplectic form on `F^n` (n even), basis ordered
    /// `e_1, f_1, e_2, f_2, ..` with `<e_i, f_i> = 1`.
    pub fn standard_symplectic(f: &FiniteField, n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::domain(format!("symplectic dimension must be even and positive, got {n}")));
        }
        let mut gram = Matrix::zero(n);
        for i in (0..n).step_by(2) {
            gram.set(i, i + 1, FieldElement::ONE);
            gram.set(i + 1, i, f.neg(FieldElement::ONE));
        }
        Self::alternating(f, gram)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.n()
    }

    /// `uᵀ · gram · v`.
    pub fn eval(&self, f: &FiniteField, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        let gv = matrix::apply(f, &self.gram, v)?;
        if u.len() != gv.len() {
            return Err(Error::domain("vector dimension does not match the form"));
        }
        Ok(matrix::dot(f, u, &gv))
    }

    /// The row vector `uᵀ · gram`, i.e. the functional `v ↦ <u, v>`.
    pub fn functional(&self, f: &FiniteField, u: &[FieldElement]) -> Vector {
        (0..self.dim())
            .map(|c| {
                (0..self.dim()).fold(FieldElement::ZERO, |acc, r| f.add(acc, f.mul(u[r], self.gram.get(r, c))))
            })
            .collect()
    }

    /// Whether `m` preserves the form: `mᵀ · gram · m = gram`.
    pub fn preserved_by(&self, f: &FiniteField, m: &Matrix) -> bool {
        let Ok(gm) = matrix::matmul(f, &self.gram, m) else { return false };
        matrix::matmul(f, &m.transpose(), &gm).is_ok_and(|x| x == self.gram)
    }
}
