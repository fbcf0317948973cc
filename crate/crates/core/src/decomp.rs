//! Isotypic decomposition of a product representation.
//!
//! Components are the joint eigenspaces of the coupled full-algebra Casimirs
//! (orders 2..n), which separate inequivalent irreps. The multiplicity of each
//! component is read off as the degeneracy of the top eigenvalue of the
//! strictly dominant Cartan element `diag(ρ)` restricted to it: inside one
//! irrep only the highest-weight vector attains that value. For su(3) the
//! components are additionally identified by their Dynkin labels `(p, q)`.

use crate::casimir::{self, CasimirKey};
use crate::completeness::joint_eigenspaces_of;
use crate::error::{Error, Result};
use crate::lie_core::{self, conjugate_rep, defining_rep, GeneratorBasis};
use crate::linalg::{self, CMatrix};
use crate::tensor_space::ProductSpace;

pub const CLUSTER_TOL: f64 = 1e-6;
pub const MATCH_TOL: f64 = 1e-6;
pub const DEFAULT_P_MAX: u32 = 8;

#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    /// Coupled Casimir values, orders 2..n.
    pub fingerprint: Vec<f64>,
    pub total_dim: usize,
    pub irrep_dim: Option<usize>,
    /// Copies of the irrep, from the highest-weight degeneracy.
    pub multiplicity: Option<usize>,
    pub su3_labels: Option<(u32, u32)>,
    pub basis: CMatrix,
}

/// `dim(p, q) = (p+1)(q+1)(p+q+2)/2`
pub fn su3_dim(p: u32, q: u32) -> usize {
    ((p + 1) * (q + 1) * (p + q + 2) / 2) as usize
}

fn c2_shape(p: u32, q: u32) -> f64 {
    let (p, q) = (p as f64, q as f64);
    (p * p + q * q + p * q + 3.0 * p + 3.0 * q) / 3.0
}

fn c3_shape(p: u32, q: u32) -> f64 {
    let (p, q) = (p as f64, q as f64);
    (p - q) * (2.0 * p + q + 3.0) * (p + 2.0 * q + 3.0)
}

/// Casimir predictions for su(3) irreps in this crate's conventions.
///
/// The quadratic value is `scale · c₂(p,q)`; the Gelfand cubic is modeled as
/// `a · g(p,q) + b · C₂` with `g` the odd cubic shape. All three constants are
/// measured once on the defining and conjugate representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su3Calibration {
    pub c2_scale: f64,
    pub cubic_odd: f64,
    pub cubic_quadratic: f64,
}

impl Su3Calibration {
    pub fn measure(basis: &GeneratorBasis) -> Result<Self> {
        if basis.n() != 3 {
            return Err(Error::Domain(format!("su(3) calibration on su({})", basis.n())));
        }
        let k2 = CasimirKey::new(3, 3, 2)?;
        let k3 = CasimirKey::new(3, 3, 3)?;
        let def = defining_rep(basis);
        let conj = conjugate_rep(basis);
        let c2 = casimir::casimir_eigenvalue_on_irrep(&def, basis, k2)?;
        let c3d = casimir::casimir_eigenvalue_on_irrep(&def, basis, k3)?;
        let c3c = casimir::casimir_eigenvalue_on_irrep(&conj, basis, k3)?;
        let g = c3_shape(1, 0);
        Ok(Self {
            c2_scale: c2 / c2_shape(1, 0),
            cubic_odd: (c3d - c3c) / (2.0 * g),
            cubic_quadratic: (c3d + c3c) / (2.0 * c2),
        })
    }

    pub fn predict(&self, p: u32, q: u32) -> (f64, f64) {
        let c2 = self.c2_scale * c2_shape(p, q);
        (c2, self.cubic_odd * c3_shape(p, q) + self.cubic_quadratic * c2)
    }
}

fn close(x: f64, target: f64) -> bool {
    (x - target).abs() <= MATCH_TOL * target.abs().max(1.0)
}

/// Dynkin labels `(p, q)` with `p + q ≤ p_max` whose Casimirs match `fingerprint = [C₂, C₃]`.
pub fn su3_identify(fingerprint: &[f64], calibration: &Su3Calibration, p_max: u32) -> Option<(u32, u32)> {
    let (&c2, &c3) = (fingerprint.first()?, fingerprint.get(1)?);
    for total in 0..=p_max {
        for p in 0..=total {
            let q = total - p;
            let (e2, e3) = calibration.predict(p, q);
            if close(c2, e2) && close(c3, e3) {
                return Some((p, q));
            }
        }
    }
    None
}

/// Decompose `ps` into isotypic components, largest first.
pub fn isotypic_decomposition(ps: &ProductSpace, basis: &GeneratorBasis) -> Result<Vec<IsotypicComponent>> {
    let n = basis.n();
    let coupled = ps.coupled_rep();
    let casimirs = CasimirKey::for_subgroup(n)
        .map(|key| casimir::casimir(&coupled, basis, key))
        .collect::<Result<Vec<_>>>()?;
    let spectrum = joint_eigenspaces_of(&casimirs.iter().collect::<Vec<_>>(), ps.dim(), CLUSTER_TOL)?;
    spectrum.validate(ps.dim())?;

    let rho = lie_core::combine(&coupled, &lie_core::rho_coefficients(basis));
    let calibration = if n == 3 {
        Some(Su3Calibration::measure(basis)?)
    } else {
        None
    };

    let mut components = spectrum
        .blocks
        .into_iter()
        .map(|block| {
            let restricted = linalg::mul(&block.basis.adjoint(), &linalg::mul(&rho, &block.basis));
            let eig = linalg::eigh(&restricted)?;
            let top = *eig.values.last().expect("blocks are non-empty");
            // distinct weights differ by at least 1 under ρ
            let multiplicity = eig.values.iter().filter(|&&v| v > top - 0.5).count();
            let su3_labels = calibration
                .as_ref()
                .and_then(|c| su3_identify(&block.eigenvalues, c, DEFAULT_P_MAX));
            let irrep_dim = match su3_labels {
                Some((p, q)) => Some(su3_dim(p, q)),
                None if block.dim % multiplicity == 0 => Some(block.dim / multiplicity),
                None => None,
            };
            Ok(IsotypicComponent {
                fingerprint: block.eigenvalues,
                total_dim: block.dim,
                irrep_dim,
                multiplicity: Some(multiplicity),
                su3_labels,
                basis: block.basis,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    components.sort_by(|a, b| {
        b.total_dim.cmp(&a.total_dim).then_with(|| {
            a.fingerprint
                .iter()
                .zip(&b.fingerprint)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(components)
}

/// Dynkin labels (when identified) and `σ` of one component.
pub type Multiplicity = (Option<(u32, u32)>, usize);

/// `σ = total_dim / irrep_dim` per component, checked for integrality and
/// against the highest-weight count.
pub fn multiplicities(components: &[IsotypicComponent]) -> Result<Vec<Multiplicity>> {
    components
        .iter()
        .map(|c| {
            let irrep_dim = c
                .irrep_dim
                .ok_or_else(|| Error::Invariant("identification inconsistent: irrep dimension unknown".into()))?;
            if irrep_dim == 0 || c.total_dim % irrep_dim != 0 {
                return Err(Error::Invariant(format!(
                    "identification inconsistent: {} is not a multiple of {irrep_dim}",
                    c.total_dim
                )));
            }
            let sigma = c.total_dim / irrep_dim;
            if let Some(m) = c.multiplicity {
                if m != sigma {
                    return Err(Error::Invariant(format!(
                        "identification inconsistent: highest-weight count {m} vs σ = {sigma}"
                    )));
                }
            }
            Ok((c.su3_labels, sigma))
        })
        .collect()
}
