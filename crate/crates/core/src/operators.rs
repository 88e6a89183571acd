//! Exact truncated operators on H²(𝕊ₙ) in raw Gram form.
//!
//! An operator A is stored as the matrix R[γ,β] = ⟨A z^β, z^γ⟩ against
//! unnormalized monomials, with exact complex-rational entries. The
//! orthonormal-basis matrix M[γ,β] = R[γ,β]/√(ω(β)ω(γ)) is derived on demand
//! for float diagnostics and never stored.
//!
//! Truncation bookkeeping:
//! * `valid_degree` v certifies that entries with |β| ≤ v and |γ| ≤ v equal
//!   the entries of the untruncated operator. The product rule below is
//!   deliberately conservative and may under-report v.
//! * `growth` (a, b) certifies that the represented operator maps polynomials
//!   of degree ≤ d into degree ≤ a·d + b whenever that bound stays ≤ D.

use std::sync::Arc;

use num::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::basis::{monomial_norm_sq, BasisTable, MultiIndex};
use crate::error::{Error, Result};
use crate::exact::{abs_sq, conj, crat_one, rat_int, rat_to_string, to_c64, to_f64, CRat, Rat};
use crate::linalg::CMat;
use crate::symbols::{poly_mul, Polynomial, PolySelfMap, SphereSymbol};

/// Degree-growth certificate: maps degree d into degree ≤ a·d + b.
#[derive(Debug, Clone, PartialEq)]
pub struct Growth {
    pub a: Rat,
    pub b: u32,
}

impl Growth {
    pub fn new(a: Rat, b: u32) -> Self {
        Self { a, b }
    }

    fn bound(&self, d: i64) -> Rat {
        &self.a * rat_int(d) + rat_int(i64::from(self.b))
    }
}

/// Exact truncation of an operator on H², tied to a [`BasisTable`].
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    basis: Arc<BasisTable>,
    /// Row-major raw Gram entries, size N×N.
    raw: Vec<CRat>,
    valid_degree: i32,
    growth: Growth,
}

impl TruncatedOperator {
    fn empty(basis: Arc<BasisTable>, valid_degree: i32, growth: Growth) -> Self {
        let n = basis.len();
        Self {
            basis,
            raw: vec![CRat::zero(); n * n],
            valid_degree,
            growth,
        }
    }

    pub(crate) fn from_parts(
        basis: Arc<BasisTable>,
        raw: Vec<CRat>,
        valid_degree: i32,
        growth: Growth,
    ) -> Self {
        debug_assert_eq!(raw.len(), basis.len() * basis.len());
        Self {
            basis,
            raw,
            valid_degree,
            growth,
        }
    }

    pub fn basis(&self) -> &Arc<BasisTable> {
        &self.basis
    }

    pub fn valid_degree(&self) -> i32 {
        self.valid_degree
    }

    pub fn growth(&self) -> &Growth {
        &self.growth
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> &CRat {
        &self.raw[row * self.basis.len() + col]
    }

    #[inline]
    fn entry_mut(&mut self, row: usize, col: usize) -> &mut CRat {
        let n = self.basis.len();
        &mut self.raw[row * n + col]
    }

    /// Raw Gram entry by multi-index; `None` when either index is outside the
    /// truncation.
    pub fn entry_at(&self, gamma: &MultiIndex, beta: &MultiIndex) -> Option<&CRat> {
        let r = self.basis.index_of(gamma)?;
        let c = self.basis.index_of(beta)?;
        Some(self.entry(r, c))
    }

    /// The identity operator: R = diag(ω).
    pub fn identity(basis: Arc<BasisTable>) -> Self {
        let d = basis.max_degree() as i32;
        let mut op = Self::empty(basis, d, Growth::new(Rat::one(), 0));
        for i in 0..op.basis.len() {
            let w = op.basis.weight(i).clone();
            *op.entry_mut(i, i) = CRat::new(w, Rat::zero());
        }
        op
    }

    /// The zero operator.
    pub fn zero(basis: Arc<BasisTable>) -> Self {
        let d = basis.max_degree() as i32;
        Self::empty(basis, d, Growth::new(Rat::one(), 0))
    }

    /// Toeplitz operator T_f. Raw entries follow from T_f h = P(fh) and
    /// monomial orthogonality:
    ///   R[γ,β] = Σ over stored (μ,ν) with μ+β = ν+γ of c_{μν}·ω(μ+β).
    /// All stored entries are exact; v = D, growth (1, hol-degree of f).
    pub fn toeplitz(f: &SphereSymbol, basis: Arc<BasisTable>) -> Result<Self> {
        if f.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: f.dim(),
            });
        }
        let d = basis.max_degree() as i32;
        let growth = Growth::new(Rat::one(), f.holomorphic_degree());
        let mut op = Self::empty(basis, d, growth);
        let n = op.basis.dim();
        for ((mu, nu), c) in f.terms() {
            for col in 0..op.basis.len() {
                let beta = op.basis.multi_index(col).clone();
                let target = beta.plus(mu);
                // gamma = beta + mu - nu must be a valid multi-index in range
                let Some(gamma) = target.checked_sub(nu) else {
                    continue;
                };
                let Some(row) = op.basis.index_of(&gamma) else {
                    continue;
                };
                let w = monomial_norm_sq(&target, n)?;
                let add = c * &CRat::new(w, Rat::zero());
                let e = op.entry_mut(row, col);
                *e = e.clone() + add;
            }
        }
        Ok(op)
    }

    /// Composition operator C_φ: column α holds the expansion of
    /// φ^α = Π φⱼ^{αⱼ} scaled by the Gram weights, R[γ,α] = coeff_γ(φ^α)·ω(γ).
    ///
    /// Every stored entry is an exact expansion coefficient; the certificate
    /// v = ⌊D/k⌋ for k = deg φ ≥ 2 reflects that columns beyond that degree
    /// spill past the truncation and cannot be trusted in products.
    pub fn composition(phi: &PolySelfMap, basis: Arc<BasisTable>) -> Result<Self> {
        if phi.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: phi.dim(),
            });
        }
        let big_d = basis.max_degree();
        let k = phi.degree();
        let valid = if k <= 1 {
            big_d as i32
        } else {
            (big_d / k) as i32
        };
        let growth = Growth::new(rat_int(i64::from(k)), 0);
        let mut op = Self::empty(basis, valid, growth);
        let n = op.basis.dim();

        // powers[j][t] = phi_j^t as a coefficient map
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut pj = Vec::with_capacity(big_d as usize + 1);
            let mut one = Polynomial::new();
            one.insert(MultiIndex::zero(n), crat_one());
            pj.push(one);
            for t in 1..=big_d as usize {
                let next = poly_mul(&pj[t - 1], phi.component(j));
                pj.push(next);
            }
            powers.push(pj);
        }

        for col in 0..op.basis.len() {
            let alpha = op.basis.multi_index(col).clone();
            let mut poly = Polynomial::new();
            poly.insert(MultiIndex::zero(n), crat_one());
            for j in 0..n {
                let e = alpha.exp(j) as usize;
                if e > 0 {
                    poly = poly_mul(&poly, &powers[j][e]);
                }
            }
            for (gamma, c) in &poly {
                if let Some(row) = op.basis.index_of(gamma) {
                    let w = op.basis.weight(row).clone();
                    *op.entry_mut(row, col) = c * &CRat::new(w, Rat::zero());
                }
            }
        }
        Ok(op)
    }

    /// Rank-one operator u⊗v, (u⊗v)h = ⟨h,v⟩u, for coefficient vectors
    /// indexed by the basis: R[γ,β] = u_γ·conj(v_β)·ω(β)·ω(γ).
    pub fn rank_one(u: &[CRat], v: &[CRat], basis: Arc<BasisTable>) -> Result<Self> {
        if u.len() != basis.len() || v.len() != basis.len() {
            return Err(Error::InvalidInput(
                "rank-one factors must be indexed by the basis".into(),
            ));
        }
        let d = basis.max_degree() as i32;
        let growth = Growth::new(Rat::one(), basis.max_degree());
        let mut op = Self::empty(basis, d, growth);
        for row in 0..op.basis.len() {
            if u[row].is_zero() {
                continue;
            }
            let wr = op.basis.weight(row).clone();
            for col in 0..op.basis.len() {
                if v[col].is_zero() {
                    continue;
                }
                let wc = op.basis.weight(col).clone();
                let val = &u[row] * &conj(&v[col]) * CRat::new(&wr * &wc, Rat::zero());
                *op.entry_mut(row, col) = val;
            }
        }
        Ok(op)
    }

    /// Adjoint: R_{A*}[γ,β] = conj(R_A[β,γ]). The growth descriptor is
    /// conservative: adjoints of degree-raising maps carry no useful bound.
    pub fn adjoint(&self) -> Self {
        let n = self.basis.len();
        let growth = if self.growth.a == Rat::one() {
            Growth::new(Rat::one(), self.growth.b)
        } else {
            Growth::new(Rat::one(), self.basis.max_degree())
        };
        let mut out = Self::empty(self.basis.clone(), self.valid_degree, growth);
        for i in 0..n {
            for j in 0..n {
                *out.entry_mut(i, j) = conj(self.entry(j, i));
            }
        }
        out
    }

    /// Composition A∘B (B applied first): R_{AB} = R_A · C_B with
    /// C_B[δ,β] = R_B[δ,β]/ω(δ) the coefficient matrix of B.
    ///
    /// Validity: max d with d ≤ v_B, a_B·d+b_B ≤ D and a_B·d+b_B ≤ v_A;
    /// growth composes affinely.
    pub fn multiply(&self, other: &TruncatedOperator) -> Result<Self> {
        self.check_same_basis(other)?;
        let n = self.basis.len();
        let big_d = i64::from(self.basis.max_degree());

        let valid = {
            let cap = other.valid_degree.min(big_d as i32);
            let mut best = -1i32;
            for d in 0..=cap.max(-1) {
                let reach = other.growth.bound(i64::from(d));
                if reach <= rat_int(big_d) && reach <= rat_int(i64::from(self.valid_degree)) {
                    best = d;
                }
            }
            best
        };

        let a = &self.growth.a * &other.growth.a;
        let b_from_inner = (&self.growth.a * rat_int(i64::from(other.growth.b)))
            .ceil()
            .to_integer()
            .to_u32()
            .unwrap_or(u32::MAX);
        let b = b_from_inner.saturating_add(self.growth.b);
        let mut out = Self::empty(self.basis.clone(), valid, Growth::new(a, b));

        // column-scaled copy of other: C[δ,β] = R_B[δ,β]/ω(δ)
        let mut coeff = other.raw.clone();
        for row in 0..n {
            let w = other.basis.weight(row);
            for col in 0..n {
                let v = &coeff[row * n + col];
                if !v.is_zero() {
                    coeff[row * n + col] = CRat::new(&v.re / w, &v.im / w);
                }
            }
        }
        for i in 0..n {
            for k in 0..n {
                let aik = self.entry(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &coeff[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let e = out.entry_mut(i, j);
                    *e = e.clone() + aik * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &TruncatedOperator) -> Result<Self> {
        self.check_same_basis(other)?;
        let growth = Growth::new(
            self.growth.a.clone().max(other.growth.a.clone()),
            self.growth.b.max(other.growth.b),
        );
        let valid = self.valid_degree.min(other.valid_degree);
        let mut out = self.clone();
        out.valid_degree = valid;
        out.growth = growth;
        for (a, b) in out.raw.iter_mut().zip(&other.raw) {
            *a = a.clone() + b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CRat) -> Self {
        let mut out = self.clone();
        for a in out.raw.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn sub(&self, other: &TruncatedOperator) -> Result<Self> {
        self.add(&other.scale(&-crat_one()))
    }

    /// Coefficient-space application: y_γ = (Σ_β R[γ,β] x_β)/ω(γ).
    pub fn apply(&self, x: &[CRat]) -> Result<Vec<CRat>> {
        let n = self.basis.len();
        if x.len() != n {
            return Err(Error::InvalidInput(
                "vector must be indexed by the basis".into(),
            ));
        }
        let mut y = Vec::with_capacity(n);
        for row in 0..n {
            let mut acc = CRat::zero();
            for col in 0..n {
                let r = self.entry(row, col);
                if !r.is_zero() && !x[col].is_zero() {
                    acc = acc + r * &x[col];
                }
            }
            let w = self.basis.weight(row);
            y.push(CRat::new(&acc.re / w, &acc.im / w));
        }
        Ok(y)
    }

    /// True iff every stored entry is zero.
    pub fn is_zero_matrix(&self) -> bool {
        self.raw.iter().all(|v| v.is_zero())
    }

    /// Exact equality of all entries with both degrees ≤ `deg`.
    pub fn equal_on_block(&self, other: &TruncatedOperator, deg: i32) -> bool {
        if self.check_same_basis(other).is_err() {
            return false;
        }
        let len = self.basis.block_len(deg);
        for i in 0..len {
            for j in 0..len {
                if self.entry(i, j) != other.entry(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact equality on the intersection of the two valid blocks.
    pub fn equal_on_valid_block(&self, other: &TruncatedOperator) -> bool {
        self.equal_on_block(other, self.valid_degree.min(other.valid_degree))
    }

    /// Orthonormal-basis float matrix restricted to degrees ≤ `deg`.
    pub fn orthonormal_block(&self, deg: i32) -> CMat {
        let len = self.basis.block_len(deg);
        let mut m = CMat::zeros(len, len);
        let sqrt_w: Vec<f64> = (0..len)
            .map(|i| to_f64(self.basis.weight(i)).sqrt())
            .collect();
        for i in 0..len {
            for j in 0..len {
                let r = self.entry(i, j);
                if !r.is_zero() {
                    m.set(i, j, to_c64(r) / (sqrt_w[i] * sqrt_w[j]));
                }
            }
        }
        m
    }

    /// Orthonormal matrix on the full truncation.
    pub fn orthonormal(&self) -> CMat {
        self.orthonormal_block(self.basis.max_degree() as i32)
    }

    fn check_same_basis(&self, other: &TruncatedOperator) -> Result<()> {
        if self.basis.dim() != other.basis.dim()
            || self.basis.max_degree() != other.basis.max_degree()
        {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    /// Sparse exact dump for JSON export.
    pub fn dump(&self) -> OperatorDump {
        let mut entries = Vec::new();
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                let v = self.entry(i, j);
                if !v.is_zero() {
                    entries.push(DumpEntry {
                        row: self.basis.multi_index(i).exps().to_vec(),
                        col: self.basis.multi_index(j).exps().to_vec(),
                        re: rat_to_string(&v.re),
                        im: rat_to_string(&v.im),
                    });
                }
            }
        }
        OperatorDump {
            dimension: self.basis.dim(),
            truncation: self.basis.max_degree(),
            valid_degree: self.valid_degree,
            growth_a: rat_to_string(&self.growth.a),
            growth_b: self.growth.b,
            entries,
        }
    }

    /// CSV of nonzero float orthonormal entries: `row,col,re,im`.
    pub fn orthonormal_csv(&self) -> String {
        let m = self.orthonormal();
        let mut out = String::from("row,col,re,im\n");
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = m.get(i, j);
                if v.norm() > 0.0 {
                    out.push_str(&format!("{i},{j},{},{}\n", v.re, v.im));
                }
            }
        }
        out
    }
}

/// Exact squared H²-norm of a coefficient vector: Σ |x_α|² ω(α).
pub fn coeff_norm_sq(x: &[CRat], basis: &BasisTable) -> Rat {
    coeff_norm_sq_block(x, basis, basis.max_degree() as i32)
}

/// Exact squared norm over the coefficients of degree ≤ `deg` only.
pub fn coeff_norm_sq_block(x: &[CRat], basis: &BasisTable, deg: i32) -> Rat {
    let len = basis.block_len(deg).min(x.len());
    let mut acc = Rat::zero();
    for (i, c) in x.iter().take(len).enumerate() {
        if !c.is_zero() {
            acc += abs_sq(c) * basis.weight(i);
        }
    }
    acc
}

/// Float H²-norm of a coefficient vector.
pub fn coeff_norm(x: &[CRat], basis: &BasisTable) -> f64 {
    to_f64(&coeff_norm_sq(x, basis)).sqrt()
}

/// Float norm over the degree-≤`deg` block.
pub fn coeff_norm_block(x: &[CRat], basis: &BasisTable, deg: i32) -> f64 {
    to_f64(&coeff_norm_sq_block(x, basis, deg)).sqrt()
}

/// Coefficient basis vector for the monomial z^α.
pub fn monomial_vector(alpha: &MultiIndex, basis: &BasisTable) -> Result<Vec<CRat>> {
    let idx = basis
        .index_of(alpha)
        .ok_or_else(|| Error::InvalidInput(format!("monomial {alpha} outside truncation")))?;
    let mut v = vec![CRat::zero(); basis.len()];
    v[idx] = crat_one();
    Ok(v)
}

/// Degree-≤D truncation of the reproducing kernel K_a: the coefficient of z^α
/// is conj(a)^α / ω(α). Requires |a| < 1 (exact rational check).
pub fn kernel_vector(a: &[CRat], basis: &BasisTable) -> Result<Vec<CRat>> {
    if a.len() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: a.len(),
        });
    }
    let norm_sq: Rat = a.iter().map(abs_sq).sum();
    if norm_sq >= Rat::one() {
        return Err(Error::PointNotInBall);
    }
    let conj_a: Vec<CRat> = a.iter().map(conj).collect();
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let alpha = basis.multi_index(i);
        let mut c = crat_one();
        for j in 0..basis.dim() {
            for _ in 0..alpha.exp(j) {
                c = c * &conj_a[j];
            }
        }
        let w = basis.weight(i);
        out.push(CRat::new(&c.re / w, &c.im / w));
    }
    Ok(out)
}

/// Sparse exact JSON image of an operator.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorDump {
    pub dimension: usize,
    pub truncation: u32,
    pub valid_degree: i32,
    pub growth_a: String,
    pub growth_b: u32,
    pub entries: Vec<DumpEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DumpEntry {
    pub row: Vec<u32>,
    pub col: Vec<u32>,
    pub re: String,
    pub im: String,
}
