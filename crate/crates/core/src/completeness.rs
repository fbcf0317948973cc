//! Commutation diagnostics, joint eigenspaces of a commuting family, and the
//! complete / incomplete verdict.
//!
//! A set is complete on a given space exactly when all of its joint
//! eigenspaces are one-dimensional.

use crate::basis_sets::{OperatorLabel, OperatorSet};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub commute_tol: f64,
    pub cluster_tol: f64,
    pub scalar_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            commute_tol: 1e-9,
            cluster_tol: 1e-6,
            scalar_tol: 1e-8,
        }
    }
}

/// Orthogonality threshold on the cross-block Gram matrix.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationReport {
    pub max_residual: f64,
    pub worst_pair: Option<(OperatorLabel, OperatorLabel)>,
    pub tol: f64,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.max_residual < self.tol
    }
}

/// `‖[A, B]‖_F / (‖A‖_F ‖B‖_F)`, with `0/0 → 0`.
pub fn relative_commutator(a: &CMatrix, b: &CMatrix) -> f64 {
    let denom = linalg::frobenius(a) * linalg::frobenius(b);
    if denom == 0.0 {
        return 0.0;
    }
    linalg::frobenius(&linalg::commutator(a, b)) / denom
}

pub fn check_commuting(set: &OperatorSet, tol: f64) -> CommutationReport {
    let mut report = CommutationReport {
        max_residual: 0.0,
        worst_pair: None,
        tol,
    };
    for (i, a) in set.items.iter().enumerate() {
        for b in &set.items[i + 1..] {
            let r = relative_commutator(&a.matrix, &b.matrix);
            if report.worst_pair.is_none() || r > report.max_residual {
                report.max_residual = r;
                report.worst_pair = Some((a.label, b.label));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    /// Rank of the Gram matrix of vectorized operators.
    pub rank: usize,
    /// Same, restricted to operators that are not multiples of the identity.
    pub nonscalar_rank: usize,
    pub scalar_flags: Vec<bool>,
}

pub const RANK_THRESHOLD: f64 = 1e-8;

fn gram_rank(ops: &[&CMatrix]) -> Result<usize> {
    if ops.is_empty() {
        return Ok(0);
    }
    let k = ops.len();
    let gram = CMatrix::from_fn(k, k, |i, j| linalg::inner(ops[i], ops[j]));
    let e = linalg::eigh(&gram)?;
    let largest = e.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(e.values.iter().filter(|v| v.abs() > RANK_THRESHOLD * largest).count())
}

pub fn matrix_rank(set: &OperatorSet, scalar_tol: f64) -> Result<RankReport> {
    let mats = set.matrices();
    let scalar_flags: Vec<bool> = mats
        .iter()
        .map(|m| {
            let (_, off) = linalg::scalar_part(m);
            off <= scalar_tol * linalg::frobenius(m)
        })
        .collect();
    let nonscalar: Vec<&CMatrix> = mats
        .iter()
        .zip(&scalar_flags)
        .filter(|(_, &s)| !s)
        .map(|(m, _)| *m)
        .collect();
    Ok(RankReport {
        rank: gram_rank(&mats)?,
        nonscalar_rank: gram_rank(&nonscalar)?,
        scalar_flags,
    })
}

#[derive(Debug, Clone)]
pub struct JointBlock {
    /// One value per operator, in processing order.
    pub eigenvalues: Vec<f64>,
    pub dim: usize,
    /// Orthonormal columns spanning the block.
    pub basis: CMatrix,
}

#[derive(Debug, Clone)]
pub struct JointSpectrum {
    pub blocks: Vec<JointBlock>,
}

impl JointSpectrum {
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    pub fn max_block_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).max().unwrap_or(0)
    }

    /// Block dimensions, sorted ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.blocks.iter().map(|b| b.dim).collect();
        d.sort_unstable();
        d
    }

    /// `(dim, count)` pairs, ascending in dim.
    pub fn dim_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist: Vec<(usize, usize)> = Vec::new();
        for d in self.dims() {
            match hist.last_mut() {
                Some((dd, c)) if *dd == d => *c += 1,
                _ => hist.push((d, 1)),
            }
        }
        hist
    }

    /// Largest off-diagonal-block entry of the Gram matrix of all block bases.
    pub fn orthogonality_residual(&self) -> f64 {
        let cols: usize = self.total_dim();
        if cols == 0 {
            return 0.0;
        }
        let rows = self.blocks[0].basis.nrows();
        let mut q = linalg::zeros(rows, cols);
        let mut owner = Vec::with_capacity(cols);
        let mut at = 0;
        for (bi, b) in self.blocks.iter().enumerate() {
            q.view_mut((0, at), (rows, b.dim)).copy_from(&b.basis);
            owner.extend(std::iter::repeat_n(bi, b.dim));
            at += b.dim;
        }
        let g = linalg::adjoint_mul(&q, &q);
        let mut worst: f64 = 0.0;
        for i in 0..cols {
            for j in 0..cols {
                let expected = if i == j { 1.0 } else { 0.0 };
                if owner[i] != owner[j] || i == j {
                    worst = worst.max((g[(i, j)].norm() - expected).abs());
                }
            }
        }
        worst
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.total_dim() != dim {
            return Err(Error::Invariant(format!(
                "joint blocks cover {} of {dim} dimensions",
                self.total_dim()
            )));
        }
        let r = self.orthogonality_residual();
        if r >= ORTHOGONALITY_TOL {
            return Err(Error::Invariant(format!("joint blocks not orthogonal ({r:.2e})")));
        }
        Ok(())
    }
}

/// Split every block by the eigenvalues of `op`, in place.
fn refine(blocks: Vec<JointBlock>, op: &CMatrix, cluster_tol: f64) -> Result<Vec<JointBlock>> {
    let mut decomposed = Vec::with_capacity(blocks.len());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for block in blocks {
        let compressed = linalg::mul(&block.basis.adjoint(), &linalg::mul(op, &block.basis));
        let eig = linalg::eigh(&compressed)?;
        if let (Some(&a), Some(&b)) = (eig.values.first(), eig.values.last()) {
            lo = lo.min(a);
            hi = hi.max(b);
        }
        decomposed.push((block, eig));
    }
    let range = hi - lo;
    let magnitude = lo.abs().max(hi.abs());
    // an operator whose spectrum is a single point cannot split anything
    let scalar = range <= 1e-10 * magnitude || magnitude == 0.0;
    let threshold = cluster_tol * range;

    let mut out = Vec::new();
    for (block, eig) in decomposed {
        let mut start = 0;
        for i in 1..=eig.values.len() {
            let boundary = i == eig.values.len() || (!scalar && eig.values[i] - eig.values[i - 1] > threshold);
            if !boundary {
                continue;
            }
            let cols: Vec<usize> = (start..i).collect();
            let mean = eig.values[start..i].iter().sum::<f64>() / cols.len() as f64;
            let basis = if cols.len() == eig.values.len() {
                block.basis.clone()
            } else {
                linalg::orthonormalize(&linalg::mul(&block.basis, &linalg::select_columns(&eig.vectors, &cols)))
            };
            let mut eigenvalues = block.eigenvalues.clone();
            eigenvalues.push(mean);
            out.push(JointBlock {
                eigenvalues,
                dim: cols.len(),
                basis,
            });
            start = i;
        }
    }
    Ok(out)
}

/// Joint eigenspaces of commuting Hermitian matrices by successive refinement.
/// The caller guarantees commutation; blocks are sorted by eigenvalue tuple.
pub fn joint_eigenspaces_of(ops: &[&CMatrix], dim: usize, cluster_tol: f64) -> Result<JointSpectrum> {
    let mut blocks = vec![JointBlock {
        eigenvalues: Vec::new(),
        dim,
        basis: linalg::identity(dim),
    }];
    for op in ops {
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.nrows(),
            });
        }
        blocks = refine(blocks, op, cluster_tol)?;
    }
    blocks.sort_by(|a, b| {
        a.eigenvalues
            .iter()
            .zip(&b.eigenvalues)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(JointSpectrum { blocks })
}

/// Joint eigenspaces of a declared set. Refuses non-commuting sets, whose
/// blocks would not be invariant.
pub fn joint_eigenspaces(set: &OperatorSet, tolerances: &Tolerances) -> Result<JointSpectrum> {
    let comm = check_commuting(set, tolerances.commute_tol);
    if !comm.passed() {
        return Err(not_commuting(set.n, &comm));
    }
    joint_eigenspaces_of(&set.matrices(), set.dim, tolerances.cluster_tol)
}

fn not_commuting(n: usize, comm: &CommutationReport) -> Error {
    let (l, r) = comm.worst_pair.expect("a failing report names its pair");
    Error::NotCommuting {
        left: l.render(n),
        right: r.render(n),
        residual: comm.max_residual,
        tol: comm.tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Complete,
    Incomplete,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Complete => "complete",
            Verdict::Incomplete => "incomplete",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompletenessReport {
    pub labels: Vec<OperatorLabel>,
    pub commutation: CommutationReport,
    pub rank: RankReport,
    pub spectrum: JointSpectrum,
    pub max_block_dim: usize,
    pub verdict: Verdict,
    pub expected_count: usize,
    pub actual_count: usize,
}

/// Full analysis of `set`, optionally extended by one more operator (e.g. the
/// exchange operator), which must commute with every member.
pub fn completeness_report(
    set: &OperatorSet,
    extra: Option<(OperatorLabel, CMatrix)>,
    tolerances: &Tolerances,
) -> Result<CompletenessReport> {
    let base = check_commuting(set, tolerances.commute_tol);
    if !base.passed() {
        return Err(not_commuting(set.n, &base));
    }
    let mut expected_count = set.expected_count();
    let full = match extra {
        Some((label, matrix)) => {
            for item in &set.items {
                let r = relative_commutator(&item.matrix, &matrix);
                if r >= tolerances.commute_tol {
                    return Err(Error::NotCommuting {
                        left: label.render(set.n),
                        right: item.label.render(set.n),
                        residual: r,
                        tol: tolerances.commute_tol,
                    });
                }
            }
            expected_count += 1;
            set.with(label, matrix)?
        }
        None => set.clone(),
    };
    let commutation = check_commuting(&full, tolerances.commute_tol);
    let rank = matrix_rank(&full, tolerances.scalar_tol)?;
    let spectrum = joint_eigenspaces_of(&full.matrices(), full.dim, tolerances.cluster_tol)?;
    spectrum.validate(full.dim)?;
    let max_block_dim = spectrum.max_block_dim();
    Ok(CompletenessReport {
        labels: full.labels(),
        commutation,
        rank,
        verdict: if max_block_dim == 1 {
            Verdict::Complete
        } else {
            Verdict::Incomplete
        },
        max_block_dim,
        spectrum,
        expected_count,
        actual_count: full.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis_sets::{enumerate_labels, materialize, BasisKind, Factor, LabeledOperator};
    use crate::lie_core::{build_generators, defining_rep, RepKind};
    use crate::tensor_space::ProductSpace;

    fn su2_set(kind: BasisKind) -> (OperatorSet, ProductSpace) {
        let b = build_generators(2).unwrap();
        let ps = ProductSpace::new(defining_rep(&b), defining_rep(&b)).unwrap();
        (materialize(kind, &enumerate_labels(2, kind).unwrap(), &ps, &b).unwrap(), ps)
    }

    #[test]
    fn su2_coupled_commutes_and_is_complete() {
        let (set, _) = su2_set(BasisKind::Coupled);
        let c = check_commuting(&set, 1e-9);
        assert!(c.max_residual < 1e-12);
        let r = completeness_report(&set, None, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Complete);
        assert_eq!(r.spectrum.blocks.len(), 4);
        // (J², J_z) pairs from the last two entries of each tuple
        let mut pairs: Vec<(i64, i64)> = r
            .spectrum
            .blocks
            .iter()
            .map(|b| {
                let k = b.eigenvalues.len();
                ((b.eigenvalues[k - 2]).round() as i64, (b.eigenvalues[k - 1]).round() as i64)
            })
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 0), (2, -1), (2, 0), (2, 1)]);
    }

    #[test]
    fn su2_product_rank_and_scalars() {
        let (set, _) = su2_set(BasisKind::Product);
        let r = matrix_rank(&set, 1e-8).unwrap();
        assert_eq!(r.scalar_flags, vec![true, false, true, false]);
        assert_eq!(r.nonscalar_rank, 2);
        assert_eq!(r.rank, 3);
        let rep = completeness_report(&set, None, &Tolerances::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Complete);
    }

    #[test]
    fn repeated_operator_drops_rank() {
        let (set, _) = su2_set(BasisKind::Product);
        let mut dup = set.clone();
        dup.items.push(LabeledOperator {
            label: OperatorLabel::Exchange,
            matrix: set.items[1].matrix.clone(),
        });
        assert!(matrix_rank(&dup, 1e-8).unwrap().rank < dup.len());
    }

    #[test]
    fn non_commuting_generators_rejected() {
        let b = build_generators(2).unwrap();
        let ps = ProductSpace::new(defining_rep(&b), defining_rep(&b)).unwrap();
        let set = OperatorSet {
            basis_kind: BasisKind::Product,
            n: 2,
            dim: 4,
            items: vec![
                LabeledOperator {
                    label: OperatorLabel::FactorWeight {
                        factor: Factor::First,
                        index: 1,
                    },
                    matrix: ps.lift_first(b.generator(0)).unwrap(),
                },
                LabeledOperator {
                    label: OperatorLabel::FactorWeight {
                        factor: Factor::First,
                        index: 2,
                    },
                    matrix: ps.lift_first(b.generator(1)).unwrap(),
                },
            ],
            provenance: (RepKind::Defining, RepKind::Defining),
        };
        let c = check_commuting(&set, 1e-9);
        assert!(!c.passed());
        assert!(c.max_residual > 0.1);
        assert!(matches!(
            joint_eigenspaces(&set, &Tolerances::default()),
            Err(Error::NotCommuting { .. })
        ));
        assert!(completeness_report(&set, None, &Tolerances::default()).is_err());
    }

    #[test]
    fn extra_must_commute() {
        let (set, ps) = su2_set(BasisKind::Product);
        // exchange does not commute with J_z(1)
        let p = ps.exchange_operator().unwrap();
        let err = completeness_report(&set, Some((OperatorLabel::Exchange, p)), &Tolerances::default());
        assert!(matches!(err, Err(Error::NotCommuting { .. })));
    }

    #[test]
    fn zero_over_zero_is_zero() {
        let z = linalg::zeros(3, 3);
        assert_eq!(relative_commutator(&z, &z), 0.0);
    }

    #[test]
    fn histogram() {
        let (set, _) = su2_set(BasisKind::Coupled);
        let spectrum = joint_eigenspaces_of(&set.matrices()[..3], 4, 1e-6).unwrap();
        assert_eq!(spectrum.dim_histogram(), vec![(1, 1), (3, 1)]);
        spectrum.validate(4).unwrap();
    }
}
