//! Generalized Gell-Mann bases of su(n), their structure constants, and the
//! three representations that are materialized concretely: defining,
//! conjugate and adjoint.
//!
//! Generators are normalized to `Tr(T_a T_b) = δ_ab / 2` and ordered along the
//! chain su(2) ⊂ su(3) ⊂ … ⊂ su(n): the first `m² − 1` indices span the
//! embedded su(m) acting on the top-left `m × m` block. Level `m` contributes,
//! for each `j < m`, the symmetric and antisymmetric off-diagonal pair on
//! `(j, m)` and then one new diagonal (Cartan) generator. For n = 3 this is
//! exactly the usual `λ_a / 2` ordering.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, I};

pub const CONSTRUCTION_TOL: f64 = 1e-12;
pub const HOMOMORPHISM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    n: usize,
}

impl AlgebraSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("su(n) requires n >= 2, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn generator_count(&self) -> usize {
        self.n * self.n - 1
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    spec: AlgebraSpec,
    matrices: Vec<CMatrix>,
    subgroup_level: Vec<usize>,
    cartan: Vec<bool>,
}

/// Build the chain-ordered generalized Gell-Mann basis of su(n).
pub fn build_generators(n: usize) -> Result<GeneratorBasis> {
    let spec = AlgebraSpec::new(n)?;
    let mut matrices = Vec::with_capacity(spec.generator_count());
    let mut subgroup_level = Vec::with_capacity(spec.generator_count());
    let mut cartan = Vec::with_capacity(spec.generator_count());

    let half = Complex64::new(0.5, 0.0);
    for m in 2..=n {
        let top = m - 1;
        for j in 0..top {
            let mut sym = linalg::zeros(n, n);
            sym[(j, top)] = half;
            sym[(top, j)] = half;
            matrices.push(sym);
            subgroup_level.push(m);
            cartan.push(false);

            let mut anti = linalg::zeros(n, n);
            anti[(j, top)] = -I * 0.5;
            anti[(top, j)] = I * 0.5;
            matrices.push(anti);
            subgroup_level.push(m);
            cartan.push(false);
        }
        let norm = 1.0 / ((2 * m * (m - 1)) as f64).sqrt();
        let mut diag = linalg::zeros(n, n);
        for i in 0..top {
            diag[(i, i)] = Complex64::new(norm, 0.0);
        }
        diag[(top, top)] = Complex64::new(-(top as f64) * norm, 0.0);
        matrices.push(diag);
        subgroup_level.push(m);
        cartan.push(true);
    }

    Ok(GeneratorBasis {
        spec,
        matrices,
        subgroup_level,
        cartan,
    })
}

impl GeneratorBasis {
    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.matrices[a]
    }

    pub fn subgroup_level(&self, a: usize) -> usize {
        self.subgroup_level[a]
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        self.cartan[a]
    }

    /// Indices spanning the embedded su(m), which are always a prefix.
    pub fn subgroup_indices(&self, m: usize) -> std::ops::Range<usize> {
        0..(m * m - 1).min(self.len())
    }

    /// 0-based index of the diagonal generator introduced at level `m`.
    pub fn cartan_index(&self, m: usize) -> usize {
        m * m - 2
    }

    /// Check every structural invariant of the basis at tolerance `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.n();
        let count = self.len();
        if count != self.spec.generator_count() {
            return Err(Error::Invariant(format!(
                "expected {} generators, found {count}",
                self.spec.generator_count()
            )));
        }
        for (a, t) in self.matrices.iter().enumerate() {
            if linalg::hermitian_residual(t) >= tol {
                return Err(Error::Invariant(format!("generator {a} is not Hermitian")));
            }
            if linalg::trace(t).norm() >= tol {
                return Err(Error::Invariant(format!("generator {a} is not traceless")));
            }
        }
        for a in 0..count {
            for b in 0..count {
                let expected = if a == b { 0.5 } else { 0.0 };
                let got = linalg::trace_of_product(&self.matrices[a], &self.matrices[b]);
                if (got - Complex64::new(expected, 0.0)).norm() >= tol {
                    return Err(Error::Invariant(format!(
                        "Tr(T{a} T{b}) = {got}, expected {expected}"
                    )));
                }
            }
        }
        for m in 2..=n {
            let members: Vec<usize> = (0..count).filter(|&a| self.subgroup_level[a] <= m).collect();
            if members.len() != m * m - 1 || members.iter().enumerate().any(|(i, &a)| i != a) {
                return Err(Error::Invariant(format!(
                    "embedded su({m}) is not the prefix of length {}",
                    m * m - 1
                )));
            }
            for &a in &members {
                let t = &self.matrices[a];
                for i in 0..n {
                    for j in 0..n {
                        if (i >= m || j >= m) && t[(i, j)].norm() >= tol {
                            return Err(Error::Invariant(format!(
                                "generator {a} leaks outside the {m}x{m} block"
                            )));
                        }
                    }
                }
            }
        }
        let flagged: Vec<usize> = (0..count).filter(|&a| self.cartan[a]).collect();
        if flagged.len() != n - 1 {
            return Err(Error::Invariant(format!(
                "{} Cartan flags set, expected {}",
                flagged.len(),
                n - 1
            )));
        }
        if let Some(&a) = flagged.iter().find(|&&a| !linalg::is_diagonal(&self.matrices[a], tol)) {
            return Err(Error::Invariant(format!("Cartan generator {a} is not diagonal")));
        }
        Ok(())
    }
}

/// `f_abc` (totally antisymmetric) and `d_abc` (totally symmetric), dense.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    f: Vec<f64>,
    d: Vec<f64>,
    max_imaginary: f64,
}

impl StructureConstants {
    #[inline]
    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim + b) * self.dim + c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[self.idx(a, b, c)]
    }

    pub fn d(&self, a: usize, b: usize, c: usize) -> f64 {
        self.d[self.idx(a, b, c)]
    }

    /// Largest imaginary part discarded while reading off f and d.
    pub fn max_imaginary(&self) -> f64 {
        self.max_imaginary
    }

    /// Largest deviation from total antisymmetry of f / total symmetry of d.
    pub fn symmetry_residual(&self) -> (f64, f64) {
        let mut fr: f64 = 0.0;
        let mut dr: f64 = 0.0;
        let g = self.dim;
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    let f = self.f(a, b, c);
                    let d = self.d(a, b, c);
                    fr = fr
                        .max((f + self.f(b, a, c)).abs())
                        .max((f + self.f(a, c, b)).abs())
                        .max((f + self.f(c, b, a)).abs());
                    dr = dr
                        .max((d - self.d(b, a, c)).abs())
                        .max((d - self.d(a, c, b)).abs())
                        .max((d - self.d(c, b, a)).abs());
                }
            }
        }
        (fr, dr)
    }

    /// `max_{a,b,c,e} |Σ_d f_abd f_dce + f_bcd f_dae + f_cad f_dbe|`
    pub fn jacobi_residual(&self) -> f64 {
        let g = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    for e in 0..g {
                        let mut s = 0.0;
                        for d in 0..g {
                            s += self.f(a, b, d) * self.f(d, c, e)
                                + self.f(b, c, d) * self.f(d, a, e)
                                + self.f(c, a, d) * self.f(d, b, e);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}

/// `f_abc = −2i Tr([T_a, T_b] T_c)`, `d_abc = 2 Tr({T_a, T_b} T_c)`.
pub fn structure_constants(basis: &GeneratorBasis) -> StructureConstants {
    let g = basis.len();
    let mut f = vec![0.0; g * g * g];
    let mut d = vec![0.0; g * g * g];
    let mut max_imaginary: f64 = 0.0;
    let t = basis.matrices();
    for a in 0..g {
        for b in 0..g {
            let ab = &t[a] * &t[b];
            let ba = &t[b] * &t[a];
            let comm = &ab - &ba;
            let anti = &ab + &ba;
            for (c, tc) in t.iter().enumerate() {
                let fv = Complex64::new(0.0, -2.0) * linalg::trace_of_product(&comm, tc);
                let dv = linalg::trace_of_product(&anti, tc) * 2.0;
                max_imaginary = max_imaginary.max(fv.im.abs()).max(dv.im.abs());
                let k = (a * g + b) * g + c;
                f[k] = fv.re;
                d[k] = dv.re;
            }
        }
    }
    StructureConstants {
        dim: g,
        f,
        d,
        max_imaginary,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    Defining,
    Conjugate,
    Adjoint,
    Product,
}

impl RepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RepKind::Defining => "defining",
            RepKind::Conjugate => "conjugate",
            RepKind::Adjoint => "adjoint",
            RepKind::Product => "product",
        }
    }
}

impl std::fmt::Display for RepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "defining" => Ok(RepKind::Defining),
            "conjugate" => Ok(RepKind::Conjugate),
            "adjoint" => Ok(RepKind::Adjoint),
            "product" => Ok(RepKind::Product),
            other => Err(Error::InvalidConfig(format!("unknown representation '{other}'"))),
        }
    }
}

/// A matrix `R(T_a)` for every generator index `a`.
#[derive(Debug, Clone)]
pub struct Representation {
    kind: RepKind,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Representation {
    pub fn new(kind: RepKind, matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        if let Some(bad) = matrices.iter().find(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.nrows().max(bad.ncols()),
            });
        }
        Ok(Self {
            kind,
            dim,
            matrices,
        })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, a: usize) -> &CMatrix {
        &self.matrices[a]
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `max_{a,b} ‖[R_a, R_b] − i Σ_c f_abc R_c‖_F`
    pub fn homomorphism_residual(&self, sc: &StructureConstants) -> f64 {
        let g = self.matrices.len();
        let mut worst: f64 = 0.0;
        for a in 0..g {
            for b in (a + 1)..g {
                let mut r = linalg::commutator(&self.matrices[a], &self.matrices[b]);
                for c in 0..g {
                    let fc = sc.f(a, b, c);
                    if fc != 0.0 {
                        r -= &self.matrices[c] * (I * fc);
                    }
                }
                worst = worst.max(linalg::frobenius(&r));
            }
        }
        worst
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.matrices
            .iter()
            .map(linalg::hermitian_residual)
            .fold(0.0, f64::max)
    }

    /// Check both Representation invariants; `tol` is scaled by the largest generator norm.
    pub fn validate(&self, sc: &StructureConstants, tol: f64) -> Result<()> {
        if self.matrices.len() != sc.dim() {
            return Err(Error::DimensionMismatch {
                expected: sc.dim(),
                found: self.matrices.len(),
            });
        }
        let scale = self
            .matrices
            .iter()
            .map(linalg::frobenius)
            .fold(1.0, f64::max);
        let h = self.hermitian_residual();
        if h >= tol * scale {
            return Err(Error::Invariant(format!("{} rep is not Hermitian ({h:.2e})", self.kind)));
        }
        let r = self.homomorphism_residual(sc);
        if r >= tol * scale * scale {
            return Err(Error::Invariant(format!(
                "{} rep is not a homomorphism (residual {r:.2e})",
                self.kind
            )));
        }
        Ok(())
    }
}

pub fn defining_rep(basis: &GeneratorBasis) -> Representation {
    Representation {
        kind: RepKind::Defining,
        dim: basis.n(),
        matrices: basis.matrices().to_vec(),
    }
}

/// `R(T_a) = −T_aᵀ`
pub fn conjugate_rep(basis: &GeneratorBasis) -> Representation {
    Representation {
        kind: RepKind::Conjugate,
        dim: basis.n(),
        matrices: basis.matrices().iter().map(|t| -t.transpose()).collect(),
    }
}

/// `(R(T_a))_bc = −i f_abc`
pub fn adjoint_rep(basis: &GeneratorBasis, sc: &StructureConstants) -> Representation {
    let g = basis.len();
    let matrices = (0..g)
        .map(|a| CMatrix::from_fn(g, g, |b, c| Complex64::new(0.0, -sc.f(a, b, c))))
        .collect();
    Representation {
        kind: RepKind::Adjoint,
        dim: g,
        matrices,
    }
}

/// Build one of the three irreducible representations materialized here.
pub fn irrep(kind: RepKind, basis: &GeneratorBasis, sc: &StructureConstants) -> Result<Representation> {
    match kind {
        RepKind::Defining => Ok(defining_rep(basis)),
        RepKind::Conjugate => Ok(conjugate_rep(basis)),
        RepKind::Adjoint => Ok(adjoint_rep(basis, sc)),
        RepKind::Product => Err(Error::Domain(
            "product representations are built from a ProductSpace".into(),
        )),
    }
}

/// A Cartan weight operator `W_k = √(2k/(k+1)) · T_{(k+1)²−1}` (1-based `k`).
#[derive(Debug, Clone)]
pub struct WeightOperator {
    pub index: usize,
    pub generator: usize,
    pub scale: f64,
    pub matrix: CMatrix,
}

/// Generator index and rescaling that define `W_k`.
pub fn weight_coefficients(basis: &GeneratorBasis, k: usize) -> Result<(usize, f64)> {
    if k == 0 || k >= basis.n() {
        return Err(Error::Domain(format!(
            "weight index {k} outside 1..={}",
            basis.n() - 1
        )));
    }
    let scale = (2.0 * k as f64 / (k as f64 + 1.0)).sqrt();
    Ok((basis.cartan_index(k + 1), scale))
}

/// `W_k` realized in an arbitrary representation of the same basis.
pub fn weight_in_rep(rep: &Representation, basis: &GeneratorBasis, k: usize) -> Result<CMatrix> {
    let (a, scale) = weight_coefficients(basis, k)?;
    if rep.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: rep.len(),
        });
    }
    Ok(rep.matrix(a) * Complex64::new(scale, 0.0))
}

/// The `n − 1` weight operators in the defining representation, in chain order.
pub fn weight_operators(basis: &GeneratorBasis) -> Vec<WeightOperator> {
    (1..basis.n())
        .map(|k| {
            let (generator, scale) = weight_coefficients(basis, k).expect("k in range");
            WeightOperator {
                index: k,
                generator,
                scale,
                matrix: basis.generator(generator) * Complex64::new(scale, 0.0),
            }
        })
        .collect()
}

/// The strictly dominant Cartan element `diag(ρ)`, `ρ_i = (n−1)/2 − i`, as
/// coefficients over generator indices. Its largest eigenvalue on an
/// irreducible representation is attained only on the highest-weight vector.
pub fn rho_coefficients(basis: &GeneratorBasis) -> Vec<(usize, f64)> {
    let n = basis.n();
    let mut h = linalg::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = Complex64::new((n as f64 - 1.0) / 2.0 - i as f64, 0.0);
    }
    (2..=n)
        .map(|m| {
            let a = basis.cartan_index(m);
            (a, 2.0 * linalg::trace_of_product(&h, basis.generator(a)).re)
        })
        .collect()
}

/// Linear combination `Σ c_a R(T_a)`.
pub fn combine(rep: &Representation, coefficients: &[(usize, f64)]) -> CMatrix {
    let mut out = linalg::zeros(rep.dim(), rep.dim());
    for &(a, c) in coefficients {
        out += rep.matrix(a) * Complex64::new(c, 0.0);
    }
    out
}
