//! Two-factor product spaces: factor lifts `O(1) = O ⊗ 1`, `O(2) = 1 ⊗ O`,
//! coupled operators `O = O(1) + O(2)` and the factor-exchange operator.
//!
//! Kronecker convention: the first factor varies slowest, so the product basis
//! vector `e_i ⊗ e_j` sits at index `i * dim2 + j`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie_core::{RepKind, Representation};
use crate::linalg::{self, CMatrix};

#[derive(Debug, Clone)]
pub struct ProductSpace {
    rep1: Representation,
    rep2: Representation,
}

impl ProductSpace {
    pub fn new(rep1: Representation, rep2: Representation) -> Result<Self> {
        if rep1.len() != rep2.len() {
            return Err(Error::DimensionMismatch {
                expected: rep1.len(),
                found: rep2.len(),
            });
        }
        Ok(Self { rep1, rep2 })
    }

    pub fn rep1(&self) -> &Representation {
        &self.rep1
    }

    pub fn rep2(&self) -> &Representation {
        &self.rep2
    }

    pub fn dim(&self) -> usize {
        self.rep1.dim() * self.rep2.dim()
    }

    pub fn identical_factors(&self) -> bool {
        self.rep1.kind() == self.rep2.kind() && self.rep1.dim() == self.rep2.dim()
    }

    fn check(a: &CMatrix, dim: usize) -> Result<()> {
        if a.nrows() != dim || a.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: if a.nrows() != dim { a.nrows() } else { a.ncols() },
            });
        }
        Ok(())
    }

    /// `A ⊗ 1`
    pub fn lift_first(&self, a: &CMatrix) -> Result<CMatrix> {
        Self::check(a, self.rep1.dim())?;
        Ok(linalg::kron(a, &linalg::identity(self.rep2.dim())))
    }

    /// `1 ⊗ A`
    pub fn lift_second(&self, a: &CMatrix) -> Result<CMatrix> {
        Self::check(a, self.rep2.dim())?;
        Ok(linalg::kron(&linalg::identity(self.rep1.dim()), a))
    }

    /// `A1 ⊗ 1 + 1 ⊗ A2`
    pub fn couple(&self, a1: &CMatrix, a2: &CMatrix) -> Result<CMatrix> {
        Ok(self.lift_first(a1)? + self.lift_second(a2)?)
    }

    /// The diagonal action of the algebra on the product space.
    pub fn coupled_rep(&self) -> Representation {
        let matrices = self
            .rep1
            .matrices()
            .iter()
            .zip(self.rep2.matrices())
            .map(|(r1, r2)| self.couple(r1, r2).expect("factor dimensions fixed at construction"))
            .collect();
        Representation::new(RepKind::Product, matrices).expect("uniform dimension")
    }

    /// `P (u ⊗ v) = v ⊗ u`; defined only for identical factors.
    pub fn exchange_operator(&self) -> Result<CMatrix> {
        if !self.identical_factors() {
            return Err(Error::ExchangeUndefined);
        }
        let d = self.rep1.dim();
        let mut p = linalg::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                p[(j * d + i, i * d + j)] = Complex64::new(1.0, 0.0);
            }
        }
        Ok(p)
    }
}
