//! Casimir operators of su(n) and of every embedded su(m) in the chain.
//!
//! Construction uses Gelfand invariants. With the mixing operator
//! `M = Σ_a T_a ⊗ R(T_a)` (sum over the generators of su(m), `T_a` restricted
//! to its `m × m` block), the order-k invariant is
//!
//! ```text
//! C_k = 2 · Tr_aux(M^k)
//! ```
//!
//! where the partial trace runs over the auxiliary m-dimensional index.
//! `M` commutes with the diagonal action `T ⊗ 1 + 1 ⊗ R(T)`, so the partial
//! trace commutes with every `R(T_a)` of the subgroup. The factor 2 makes
//! `C_2 = Σ_a R(T_a)²` under `Tr(T_a T_b) = δ_ab / 2`. Higher orders may carry
//! admixtures of lower-order Casimirs; the joint eigenspaces are unaffected.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie_core::{GeneratorBasis, Representation};
use crate::linalg::{self, CMatrix};

pub const SCALARITY_TOL: f64 = 1e-8;

/// Which Casimir: order `k` of the embedded su(m), `2 ≤ k ≤ m ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CasimirKey {
    pub subgroup_m: usize,
    pub order_k: usize,
}

impl CasimirKey {
    pub fn new(n: usize, subgroup_m: usize, order_k: usize) -> Result<Self> {
        if !(2 <= order_k && order_k <= subgroup_m && subgroup_m <= n) {
            return Err(Error::Domain(format!(
                "Casimir key (m={subgroup_m}, k={order_k}) outside 2 <= k <= m <= {n}"
            )));
        }
        Ok(Self {
            subgroup_m,
            order_k,
        })
    }

    /// All `m − 1` keys of the embedded su(m).
    pub fn for_subgroup(m: usize) -> impl Iterator<Item = CasimirKey> {
        (2..=m).map(move |k| CasimirKey {
            subgroup_m: m,
            order_k: k,
        })
    }

    fn check(&self, n: usize) -> Result<()> {
        CasimirKey::new(n, self.subgroup_m, self.order_k).map(|_| ())
    }
}

/// Block `(i, j)` of the mixing operator: `Σ_a (T_a)_ij R(T_a)`.
fn mixing_operator(rep: &Representation, basis: &GeneratorBasis, m: usize) -> CMatrix {
    let dim = rep.dim();
    let mut big = linalg::zeros(m * dim, m * dim);
    for a in basis.subgroup_indices(m) {
        let t = basis.generator(a);
        let r = rep.matrix(a);
        for i in 0..m {
            for j in 0..m {
                let c = t[(i, j)];
                if c.norm_sqr() == 0.0 {
                    continue;
                }
                let mut block = big.view_mut((i * dim, j * dim), (dim, dim));
                block.zip_apply(r, |x, y| *x += c * y);
            }
        }
    }
    big
}

/// Order-k Casimir of the embedded su(m) (given by `key`) evaluated in `rep`.
pub fn casimir(rep: &Representation, basis: &GeneratorBasis, key: CasimirKey) -> Result<CMatrix> {
    gelfand_invariant(rep, basis, key).map(|c| linalg::symmetrize(&c))
}

/// `2 · Tr_aux(M^k)` as computed, before the final Hermitian symmetrization.
pub fn gelfand_invariant(rep: &Representation, basis: &GeneratorBasis, key: CasimirKey) -> Result<CMatrix> {
    key.check(basis.n())?;
    if rep.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: rep.len(),
        });
    }
    let dim = rep.dim();
    let m = key.subgroup_m;
    let mix = mixing_operator(rep, basis, m);

    let mut power = mix.clone();
    for _ in 2..key.order_k {
        power = linalg::mul(&power, &mix);
    }

    // diagonal blocks of power · mix, summed
    let mut c = linalg::zeros(dim, dim);
    for i in 0..m {
        let row = power.view((i * dim, 0), (dim, m * dim)).clone_owned();
        let col = mix.view((0, i * dim), (m * dim, dim)).clone_owned();
        c += linalg::mul(&row, &col);
    }
    c *= Complex64::new(2.0, 0.0);
    Ok(c)
}

/// `Σ_a R(T_a)²` over the generators of su(m); the independent route for order 2.
pub fn quadratic_casimir_direct(rep: &Representation, basis: &GeneratorBasis, m: usize) -> CMatrix {
    let mut c = linalg::zeros(rep.dim(), rep.dim());
    for a in basis.subgroup_indices(m) {
        let r = rep.matrix(a);
        c += linalg::mul(r, r);
    }
    c
}

/// Scalar value `Tr(C)/dim` of a Casimir on an irreducible representation.
pub fn casimir_eigenvalue_on_irrep(
    rep: &Representation,
    basis: &GeneratorBasis,
    key: CasimirKey,
) -> Result<f64> {
    let c = casimir(rep, basis, key)?;
    scalar_value(&c, SCALARITY_TOL)
}

/// The scalar `c` with `‖C − c·I‖_F < tol·‖C‖_F`.
pub fn scalar_value(c: &CMatrix, tol: f64) -> Result<f64> {
    let (value, off) = linalg::scalar_part(c);
    let norm = linalg::frobenius(c);
    if off > tol * norm {
        return Err(Error::Invariant(format!(
            "representation not irreducible or tolerance too tight (off-scalar {:.2e} of {:.2e})",
            off, norm
        )));
    }
    Ok(value)
}
