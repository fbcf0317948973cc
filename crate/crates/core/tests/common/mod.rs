//! Test-only oracles. Nothing here calls into the construction paths it is
//! used to check: Gell-Mann and Pauli matrices are typed in by hand, and su(3)
//! decompositions come from counting Gelfand–Tsetlin patterns.

#![allow(dead_code)]

use std::collections::BTreeMap;

use liebasis::linalg::CMatrix;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn from_rows(rows: &[&[Complex64]]) -> CMatrix {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
}

/// Pauli matrices divided by 2.
pub fn pauli_halves() -> Vec<CMatrix> {
    let z = c(0.0, 0.0);
    let h = c(0.5, 0.0);
    let ih = c(0.0, 0.5);
    vec![
        from_rows(&[&[z, h], &[h, z]]),
        from_rows(&[&[z, -ih], &[ih, z]]),
        from_rows(&[&[h, z], &[z, -h]]),
    ]
}

/// The eight Gell-Mann matrices λ_a / 2, standard numbering.
pub fn gell_mann_halves() -> Vec<CMatrix> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let s3 = 1.0 / 3f64.sqrt();
    let lambdas = vec![
        from_rows(&[&[z, o, z], &[o, z, z], &[z, z, z]]),
        from_rows(&[&[z, -i, z], &[i, z, z], &[z, z, z]]),
        from_rows(&[&[o, z, z], &[z, -o, z], &[z, z, z]]),
        from_rows(&[&[z, z, o], &[z, z, z], &[o, z, z]]),
        from_rows(&[&[z, z, -i], &[z, z, z], &[i, z, z]]),
        from_rows(&[&[z, z, z], &[z, z, o], &[z, o, z]]),
        from_rows(&[&[z, z, z], &[z, z, -i], &[z, i, z]]),
        from_rows(&[&[c(s3, 0.0), z, z], &[z, c(s3, 0.0), z], &[z, z, c(-2.0 * s3, 0.0)]]),
    ];
    lambdas.into_iter().map(|l| l * c(0.5, 0.0)).collect()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

pub fn fro(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `−2i Tr([A,B]C)` by plain matrix arithmetic.
pub fn f_oracle(a: &CMatrix, b: &CMatrix, cc: &CMatrix) -> Complex64 {
    c(0.0, -2.0) * trace(&((a * b - b * a) * cc))
}

/// `2 Tr({A,B}C)`
pub fn d_oracle(a: &CMatrix, b: &CMatrix, cc: &CMatrix) -> Complex64 {
    c(2.0, 0.0) * trace(&((a * b + b * a) * cc))
}

/// `Σ_abc d_abc R_a R_b R_c` with d from the hand-typed Gell-Mann matrices.
pub fn su3_cubic_d_casimir(rep: &[CMatrix]) -> CMatrix {
    let t = gell_mann_halves();
    let dim = rep[0].nrows();
    let mut out = CMatrix::zeros(dim, dim);
    for a in 0..8 {
        for b in 0..8 {
            let rab = &rep[a] * &rep[b];
            for cc in 0..8 {
                let d = d_oracle(&t[a], &t[b], &t[cc]).re;
                if d.abs() > 1e-15 {
                    out += &rab * &rep[cc] * c(d, 0.0);
                }
            }
        }
    }
    out
}

/// Simple deterministic Hermitian matrix for property tests.
pub fn hermitian_from_seed(dim: usize, seed: u64) -> CMatrix {
    let mut s = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let m = CMatrix::from_fn(dim, dim, |_, _| c(next(), next()));
    (&m + m.adjoint()) * c(0.5, 0.0)
}

// ------------------------------------------------------------- su(3) weights

/// Weight in Dynkin coordinates `(h1 − h2, h2 − h3)`.
pub type Weight = (i64, i64);

/// Weight multiset of the su(3) irrep (p, q) by enumerating Gelfand–Tsetlin
/// patterns with top row `(p+q, q, 0)`.
pub fn su3_character(p: i64, q: i64) -> BTreeMap<Weight, usize> {
    let (l1, l2, l3) = (p + q, q, 0);
    let mut ch = BTreeMap::new();
    for a in l2..=l1 {
        for b in l3..=l2 {
            for m in b..=a {
                let h1 = m;
                let h2 = a + b - m;
                let h3 = l1 + l2 + l3 - a - b;
                *ch.entry((h1 - h2, h2 - h3)).or_insert(0) += 1;
            }
        }
    }
    ch
}

pub fn product_character(a: &BTreeMap<Weight, usize>, b: &BTreeMap<Weight, usize>) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            *out.entry((wa.0 + wb.0, wa.1 + wb.1)).or_insert(0) += ma * mb;
        }
    }
    out
}

/// Peel highest weights off a character: returns `(p, q) → σ`.
pub fn su3_decompose(mut ch: BTreeMap<Weight, usize>) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    loop {
        ch.retain(|_, m| *m > 0);
        // ρ pairs with Dynkin coordinates as x + y
        let Some((&top, _)) = ch.iter().max_by_key(|(w, _)| (w.0 + w.1, w.0)) else {
            break;
        };
        assert!(top.0 >= 0 && top.1 >= 0, "highest weight must be dominant");
        let irrep = su3_character(top.0, top.1);
        for (w, m) in &irrep {
            let slot = ch.get_mut(w).expect("weight present in remainder");
            assert!(*slot >= *m);
            *slot -= m;
        }
        *out.entry(top).or_insert(0) += 1;
    }
    out
}

pub fn su3_dim_oracle(p: i64, q: i64) -> usize {
    su3_character(p, q).values().sum()
}

