//! Label sets for the single-irrep, product (uncoupled) and coupled bases, the
//! closed-form counts, and binding of labels to concrete matrices.
//!
//! A complete single-irrep labeling uses the `n − 1` full-algebra Casimirs
//! (orders 2..n), the `n − 1` Cartan weights, and for every embedded su(m),
//! `2 ≤ m ≤ n − 1`, its `m − 1` Casimirs.

use std::cell::OnceCell;
use std::fmt;

use crate::cache::MatrixCache;
use crate::casimir::{self, CasimirKey};
use crate::error::{Error, Result};
use crate::lie_core::{self, GeneratorBasis, RepKind, Representation};
use crate::linalg::{self, CMatrix};
use crate::tensor_space::ProductSpace;

pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub fn number(&self) -> u8 {
        match self {
            Factor::First => 1,
            Factor::Second => 2,
        }
    }
}

/// Symbolic identity of a labeling operator.
///
/// Unsuffixed variants (`CoupledCasimir`, `CoupledWeight`) act through the
/// whole space's representation: the coupled action on a product, or the
/// irrep itself for a single-irrep set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorLabel {
    FactorCasimir { factor: Factor, key: CasimirKey },
    CoupledCasimir(CasimirKey),
    FactorWeight { factor: Factor, index: usize },
    CoupledWeight(usize),
    Exchange,
}

fn casimir_symbol(n: usize, key: CasimirKey) -> String {
    match (n, key.subgroup_m, key.order_k) {
        (2, 2, 2) => "J2".into(),
        (_, 2, 2) => "I2".into(),
        (_, 3, 2) => "F2".into(),
        (_, 3, 3) => "G3".into(),
        (4, 4, 2) => "A3".into(),
        (4, 4, 3) => "B3".into(),
        (4, 4, 4) => "C3".into(),
        (_, m, k) => format!("C[{m},{k}]"),
    }
}

fn weight_symbol(n: usize, index: usize) -> String {
    match (n, index) {
        (2, 1) => "Jz".into(),
        (_, 1) => "I3".into(),
        (_, 2) => "Y".into(),
        (_, 3) => "Z".into(),
        (_, k) => format!("W[{k}]"),
    }
}

impl OperatorLabel {
    /// Human-readable name, e.g. `G3(1)` for the cubic su(3) Casimir of factor 1.
    pub fn render(&self, n: usize) -> String {
        match *self {
            OperatorLabel::FactorCasimir { factor, key } => {
                format!("{}({})", casimir_symbol(n, key), factor.number())
            }
            OperatorLabel::CoupledCasimir(key) => casimir_symbol(n, key),
            OperatorLabel::FactorWeight { factor, index } => {
                format!("{}({})", weight_symbol(n, index), factor.number())
            }
            OperatorLabel::CoupledWeight(index) => weight_symbol(n, index),
            OperatorLabel::Exchange => "P".into(),
        }
    }

    /// Stable machine key, independent of naming conventions.
    pub fn key(&self) -> String {
        match *self {
            OperatorLabel::FactorCasimir { factor, key } => {
                format!("casimir{}-m{}-k{}", factor.number(), key.subgroup_m, key.order_k)
            }
            OperatorLabel::CoupledCasimir(key) => format!("casimir-m{}-k{}", key.subgroup_m, key.order_k),
            OperatorLabel::FactorWeight { factor, index } => format!("weight{}-{index}", factor.number()),
            OperatorLabel::CoupledWeight(index) => format!("weight-{index}"),
            OperatorLabel::Exchange => "exchange".into(),
        }
    }

    pub fn is_weight(&self) -> bool {
        matches!(self, OperatorLabel::FactorWeight { .. } | OperatorLabel::CoupledWeight(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Product,
    Coupled,
    SingleIr,
}

impl BasisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisKind::Product => "product",
            BasisKind::Coupled => "coupled",
            BasisKind::SingleIr => "single_ir",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `½ n(n+1) − 1`
pub fn count_single_ir(n: usize) -> usize {
    n * (n + 1) / 2 - 1
}

/// `(n+2)(n−1)`
pub fn count_product(n: usize) -> usize {
    (n + 2) * (n - 1)
}

/// `½ (n² + 5n − 6)`
pub fn count_coupled(n: usize) -> usize {
    (n * n + 5 * n - 6) / 2
}

/// `½ (n−1)(n−2)`, the number of missing labels.
pub fn count_difference(n: usize) -> usize {
    (n - 1) * (n - 2) / 2
}

pub fn closed_form_count(n: usize, kind: BasisKind) -> usize {
    match kind {
        BasisKind::Product => count_product(n),
        BasisKind::Coupled => count_coupled(n),
        BasisKind::SingleIr => count_single_ir(n),
    }
}

fn full_casimirs(n: usize) -> impl Iterator<Item = CasimirKey> {
    CasimirKey::for_subgroup(n)
}

/// Casimirs of su(n−1), su(n−2), …, su(2), in that order.
fn subgroup_casimirs(n: usize) -> impl Iterator<Item = CasimirKey> {
    (2..n).rev().flat_map(CasimirKey::for_subgroup)
}

pub fn enumerate_labels(n: usize, kind: BasisKind) -> Result<Vec<OperatorLabel>> {
    lie_core::AlgebraSpec::new(n)?;
    let single = |wrap_casimir: &dyn Fn(CasimirKey) -> OperatorLabel,
                  wrap_weight: &dyn Fn(usize) -> OperatorLabel| {
        full_casimirs(n)
            .chain(subgroup_casimirs(n))
            .map(wrap_casimir)
            .chain((1..n).map(wrap_weight))
            .collect::<Vec<_>>()
    };
    let labels = match kind {
        BasisKind::SingleIr => single(&OperatorLabel::CoupledCasimir, &OperatorLabel::CoupledWeight),
        BasisKind::Product => [Factor::First, Factor::Second]
            .into_iter()
            .flat_map(|factor| {
                single(
                    &|key| OperatorLabel::FactorCasimir { factor, key },
                    &|index| OperatorLabel::FactorWeight { factor, index },
                )
            })
            .collect(),
        BasisKind::Coupled => {
            let mut v = Vec::with_capacity(count_coupled(n));
            for factor in [Factor::First, Factor::Second] {
                v.extend(full_casimirs(n).map(|key| OperatorLabel::FactorCasimir { factor, key }));
            }
            v.extend(full_casimirs(n).map(OperatorLabel::CoupledCasimir));
            v.extend(subgroup_casimirs(n).map(OperatorLabel::CoupledCasimir));
            v.extend((1..n).map(OperatorLabel::CoupledWeight));
            v
        }
    };
    Ok(labels)
}

#[derive(Debug, Clone)]
pub struct LabeledOperator {
    pub label: OperatorLabel,
    pub matrix: CMatrix,
}

/// A declared commuting family with its materialized matrices.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub basis_kind: BasisKind,
    pub n: usize,
    pub dim: usize,
    pub items: Vec<LabeledOperator>,
    pub provenance: (RepKind, RepKind),
}

impl OperatorSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn labels(&self) -> Vec<OperatorLabel> {
        self.items.iter().map(|i| i.label).collect()
    }

    pub fn rendered_labels(&self) -> Vec<String> {
        self.items.iter().map(|i| i.label.render(self.n)).collect()
    }

    pub fn matrices(&self) -> Vec<&CMatrix> {
        self.items.iter().map(|i| &i.matrix).collect()
    }

    pub fn get(&self, label: &OperatorLabel) -> Option<&CMatrix> {
        self.items.iter().find(|i| &i.label == label).map(|i| &i.matrix)
    }

    pub fn expected_count(&self) -> usize {
        closed_form_count(self.n, self.basis_kind)
    }

    /// Copy of the set without `label`.
    pub fn without(&self, label: &OperatorLabel) -> OperatorSet {
        let mut s = self.clone();
        s.items.retain(|i| &i.label != label);
        s
    }

    pub fn with(&self, label: OperatorLabel, matrix: CMatrix) -> Result<OperatorSet> {
        if self.items.iter().any(|i| i.label == label) {
            return Err(Error::Domain(format!("label {} already present", label.render(self.n))));
        }
        if matrix.nrows() != self.dim || matrix.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: matrix.nrows(),
            });
        }
        let mut s = self.clone();
        s.items.push(LabeledOperator { label, matrix });
        Ok(s)
    }
}

/// Binds labels to matrices on one product space, building the coupled
/// representation once and consulting the optional disk cache.
pub struct Materializer<'a> {
    ps: &'a ProductSpace,
    basis: &'a GeneratorBasis,
    cache: Option<&'a MatrixCache>,
    coupled: OnceCell<Representation>,
}

impl<'a> Materializer<'a> {
    pub fn new(ps: &'a ProductSpace, basis: &'a GeneratorBasis, cache: Option<&'a MatrixCache>) -> Self {
        Self {
            ps,
            basis,
            cache,
            coupled: OnceCell::new(),
        }
    }

    fn coupled(&self) -> &Representation {
        self.coupled.get_or_init(|| self.ps.coupled_rep())
    }

    pub fn cache_key(&self, label: &OperatorLabel) -> String {
        format!(
            "n{}-{}-{}-{}",
            self.basis.n(),
            self.ps.rep1().kind(),
            self.ps.rep2().kind(),
            label.key()
        )
    }

    fn compute(&self, label: &OperatorLabel) -> Result<CMatrix> {
        let ps = self.ps;
        let factor_rep = |f: Factor| match f {
            Factor::First => ps.rep1(),
            Factor::Second => ps.rep2(),
        };
        let lift = |f: Factor, m: &CMatrix| match f {
            Factor::First => ps.lift_first(m),
            Factor::Second => ps.lift_second(m),
        };
        match *label {
            OperatorLabel::FactorCasimir { factor, key } => {
                let c = casimir::casimir(factor_rep(factor), self.basis, key)?;
                lift(factor, &c)
            }
            OperatorLabel::CoupledCasimir(key) => casimir::casimir(self.coupled(), self.basis, key),
            OperatorLabel::FactorWeight { factor, index } => {
                let w = lie_core::weight_in_rep(factor_rep(factor), self.basis, index)?;
                lift(factor, &w)
            }
            OperatorLabel::CoupledWeight(index) => lie_core::weight_in_rep(self.coupled(), self.basis, index),
            OperatorLabel::Exchange => ps.exchange_operator(),
        }
    }

    pub fn operator(&self, label: &OperatorLabel) -> Result<CMatrix> {
        let Some(cache) = self.cache else {
            return self.compute(label);
        };
        let key = self.cache_key(label);
        let m = cache.get_or_compute(&key, || self.compute(label))?;
        let dim = self.ps.dim();
        if m.shape() != (dim, dim) {
            return Err(Error::CacheFormat {
                path: cache.path_for(&key),
                reason: format!("{}x{} matrix, expected {dim}x{dim}", m.nrows(), m.ncols()),
            });
        }
        Ok(m)
    }

    pub fn materialize(&self, kind: BasisKind, labels: &[OperatorLabel]) -> Result<OperatorSet> {
        let n = self.basis.n();
        let items = labels
            .iter()
            .map(|label| {
                let matrix = self.operator(label)?;
                check_hermitian(&matrix, &label.render(n))?;
                Ok(LabeledOperator { label: *label, matrix })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorSet {
            basis_kind: kind,
            n,
            dim: self.ps.dim(),
            items,
            provenance: (self.ps.rep1().kind(), self.ps.rep2().kind()),
        })
    }
}

fn check_hermitian(m: &CMatrix, name: &str) -> Result<()> {
    let norm = linalg::frobenius(m);
    let r = linalg::hermitian_residual(m);
    if r > HERMITIAN_TOL * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::Invariant(format!("{name} is not Hermitian (residual {r:.2e})")));
    }
    Ok(())
}

/// Materialize `labels` on the product space without a disk cache.
pub fn materialize(
    kind: BasisKind,
    labels: &[OperatorLabel],
    ps: &ProductSpace,
    basis: &GeneratorBasis,
) -> Result<OperatorSet> {
    Materializer::new(ps, basis, None).materialize(kind, labels)
}

/// The single-irrep set acting directly on `rep`.
pub fn materialize_single(rep: &Representation, basis: &GeneratorBasis) -> Result<OperatorSet> {
    let n = basis.n();
    let labels = enumerate_labels(n, BasisKind::SingleIr)?;
    let items = labels
        .into_iter()
        .map(|label| {
            let matrix = match label {
                OperatorLabel::CoupledCasimir(key) => casimir::casimir(rep, basis, key)?,
                OperatorLabel::CoupledWeight(k) => lie_core::weight_in_rep(rep, basis, k)?,
                _ => unreachable!("single-irrep labels are unsuffixed"),
            };
            check_hermitian(&matrix, &label.render(n))?;
            Ok(LabeledOperator { label, matrix })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorSet {
        basis_kind: BasisKind::SingleIr,
        n,
        dim: rep.dim(),
        items,
        provenance: (rep.kind(), rep.kind()),
    })
}
