//! The Toeplitzness map Φ(A) = Σⱼ T_{z̄ⱼ} A T_{zⱼ} and its iterates.
//!
//! On raw Gram entries Φ is an index shift,
//!
//!   R_{Φ(A)}[γ,β] = Σⱼ R_A[γ+eⱼ, β+eⱼ],
//!
//! which is exact and makes the validity shrink auditable: one degree per
//! application, always, even when the input is known to be a fixed point.
//! Fixed points of Φ are exactly the Toeplitz operators, so the distance from
//! Φ(A) to A is a Toeplitzness defect.

use num::complex::Complex64;
use num::{Complex, Zero};

use crate::basis::monomial_norm_sq;
use crate::error::{Error, Result};
use crate::exact::{rat, to_c64, to_f64, CRat};
use crate::linalg::CMat;
use crate::operators::TruncatedOperator;

/// One application of Φ. Shrinks the valid degree by exactly 1.
pub fn phi_apply(a: &TruncatedOperator) -> Result<TruncatedOperator> {
    let v = a.valid_degree();
    if v < 0 {
        return Err(Error::TrustExhausted {
            valid_degree: v,
            max_usable: 0,
        });
    }
    let basis = a.basis().clone();
    let n = basis.dim();
    let len = basis.len();

    // shifted[j][i] = position of multi_index(i) + e_j, if in range
    let shifted: Vec<Vec<Option<usize>>> = (0..n)
        .map(|j| {
            (0..len)
                .map(|i| basis.index_of(&basis.multi_index(i).plus_unit(j)))
                .collect()
        })
        .collect();

    let mut raw = vec![CRat::zero(); len * len];
    for gamma in 0..len {
        for beta in 0..len {
            let mut acc = CRat::zero();
            for shift in &shifted {
                if let (Some(g), Some(b)) = (shift[gamma], shift[beta]) {
                    let e = a.entry(g, b);
                    if !e.is_zero() {
                        acc = acc + e;
                    }
                }
            }
            raw[gamma * len + beta] = acc;
        }
    }
    Ok(TruncatedOperator::from_parts(
        basis,
        raw,
        v - 1,
        a.growth().clone(),
    ))
}

/// Φ¹(A), …, Φᵐ(A). Errors when m exceeds the valid degree, reporting the
/// largest usable m.
pub fn phi_iterate(a: &TruncatedOperator, m: u32) -> Result<Vec<TruncatedOperator>> {
    let v = a.valid_degree();
    if m == 0 {
        return Err(Error::InvalidInput("iterate count must be positive".into()));
    }
    if v < 0 || m as i32 > v {
        return Err(Error::TrustExhausted {
            valid_degree: v,
            max_usable: v.max(0),
        });
    }
    let mut out = Vec::with_capacity(m as usize);
    let mut cur = phi_apply(a)?;
    for _ in 1..m {
        let next = phi_apply(&cur)?;
        out.push(cur);
        cur = next;
    }
    out.push(cur);
    Ok(out)
}

/// Cesàro mean (1/m) Σ_{j=1}^{m} Φʲ(A); the sum starts at j = 1.
pub fn cesaro_mean(a: &TruncatedOperator, m: u32) -> Result<TruncatedOperator> {
    let iterates = phi_iterate(a, m)?;
    let mut acc = iterates[0].clone();
    for it in &iterates[1..] {
        acc = acc.add(it)?;
    }
    Ok(acc.scale(&Complex::new(rat(1, i64::from(m)), num::Zero::zero())))
}

/// Φ computed in the rotated coordinate frame fⱼ(z) = ⟨z, uⱼ⟩ for the columns
/// uⱼ of a unitary U: Σⱼ T_{f̄ⱼ} A T_{fⱼ}, evaluated in floats. Returns the
/// raw-Gram float matrix; mathematically it coincides with [`phi_apply`].
pub fn phi_in_frame(a: &TruncatedOperator, u: &CMat) -> Result<CMat> {
    let basis = a.basis();
    let n = basis.dim();
    if u.rows != n || u.cols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.rows,
        });
    }
    let dev = u.adjoint().matmul(u).sub(&CMat::identity(n)).max_abs();
    if dev > 1e-10 {
        return Err(Error::NonUnitaryFrame { deviation: dev });
    }

    let len = basis.len();
    // float raw matrix of A and the inverse weights
    let mut a_raw = CMat::zeros(len, len);
    for i in 0..len {
        for j in 0..len {
            let e = a.entry(i, j);
            if !e.is_zero() {
                a_raw.set(i, j, to_c64(e));
            }
        }
    }
    let inv_w: Vec<f64> = (0..len).map(|i| 1.0 / to_f64(basis.weight(i))).collect();
    let scale_rows = |m: &CMat| -> CMat {
        let mut out = m.clone();
        for i in 0..len {
            for j in 0..len {
                let v = out.get(i, j);
                if !v.is_zero() {
                    out.set(i, j, v * inv_w[i]);
                }
            }
        }
        out
    };

    let mut acc = CMat::zeros(len, len);
    for jf in 0..n {
        // T_{f_j} raw: R[beta+e_k, beta] = conj(U[k][jf]) * omega(beta+e_k)
        let mut t = CMat::zeros(len, len);
        for col in 0..len {
            let beta = basis.multi_index(col);
            for k in 0..n {
                let c = u.get(k, jf).conj();
                if c.is_zero() {
                    continue;
                }
                if let Some(row) = basis.index_of(&beta.plus_unit(k)) {
                    let w = to_f64(
                        &monomial_norm_sq(basis.multi_index(row), n).expect("in-table index"),
                    );
                    t.add_to(row, col, c * w);
                }
            }
        }
        let t_adj = t.adjoint();
        // raw product X∘Y = X_raw · diag(1/omega) · Y_raw
        let inner = a_raw.matmul(&scale_rows(&t));
        let total = t_adj.matmul(&scale_rows(&inner));
        acc = add_mats(&acc, &total);
    }
    Ok(acc)
}

fn add_mats(a: &CMat, b: &CMat) -> CMat {
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.add_to(i, j, b.get(i, j));
        }
    }
    out
}

/// Max orthonormal-entry deviation between a raw float matrix and an exact
/// operator over the block of degrees ≤ `deg`.
pub fn frame_deviation(raw_float: &CMat, reference: &TruncatedOperator, deg: i32) -> f64 {
    let basis = reference.basis();
    let len = basis.block_len(deg);
    let sqrt_w: Vec<f64> = (0..len).map(|i| to_f64(basis.weight(i)).sqrt()).collect();
    let mut worst = 0.0f64;
    for i in 0..len {
        for j in 0..len {
            let scale = sqrt_w[i] * sqrt_w[j];
            let lhs = raw_float.get(i, j) / scale;
            let rhs = to_c64(reference.entry(i, j)) / scale;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Haar-ish pseudo-random unitary via Gram–Schmidt on complex Gaussians;
/// deterministic for a fixed seed. Used by frame-invariance experiments.
pub fn random_unitary(n: usize, seed: u64) -> CMat {
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, im)
            })
            .collect();
        for c in &cols {
            let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for vi in &mut v {
                *vi /= norm;
            }
            cols.push(v);
        }
    }
    let mut u = CMat::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            u.set(i, j, *v);
        }
    }
    u
}
