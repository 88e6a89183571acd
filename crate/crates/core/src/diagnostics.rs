//! Convergence diagnostics for iterates of the Toeplitzness map.
//!
//! Truncated norms are lower bounds of true operator norms, so decay verdicts
//! are only issued when the empirical series is unambiguous or an analytic
//! sup-norm bound backs the trend. Verdict thresholds are fixed constants,
//! not tunables.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::Zero;
use serde::Serialize;

use crate::basis::{monomial_norm_sq, BasisTable, MultiIndex};
use crate::error::{Error, Result};
use crate::exact::{abs_sq, conj, crat_one, to_f64, CRat, Rat};
use crate::linalg::{eigenvalues, null_vector, top_singular_value, CMat};
use crate::operators::{coeff_norm_block, kernel_vector, monomial_vector, TruncatedOperator};
use crate::phi::{cesaro_mean, phi_apply, phi_iterate};
use crate::symbols::{poly_mul, PolySelfMap, Polynomial, SphereSymbol, SymbolDump};

/// Outcome of a convergence experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConvergesToToeplitz,
    ConvergesToZero,
    NonConvergent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConvergesToToeplitz => "converges-to-toeplitz",
            Verdict::ConvergesToZero => "converges-to-zero",
            Verdict::NonConvergent => "non-convergent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportMode {
    Uniform,
    Strong,
    Cesaro,
    WeakProxy,
}

/// Per-probe-vector norm and difference series.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeSeries {
    pub label: String,
    /// (m, ‖Φᵐ(A)x‖) or the Cesàro analogue.
    pub norms: Vec<(u32, f64)>,
    /// (m, ‖Φᵐ(A)x − Φᵐ⁺¹(A)x‖).
    pub diffs: Vec<(u32, f64)>,
}

/// A convergence experiment's full record.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub mode: ReportMode,
    /// Main scalar series driving the verdict.
    pub series: Vec<(u32, f64)>,
    /// Optional per-m analytic upper bound (sup-norm based).
    pub analytic_bound: Option<Vec<(u32, f64)>>,
    /// Consecutive-iterate distances, when tracked.
    pub diff_series: Option<Vec<(u32, f64)>>,
    /// Per-vector detail for strong/Cesàro probes.
    pub probes: Vec<ProbeSeries>,
    /// Certified norm lower bounds per m, when attached.
    pub certificate: Option<Vec<(u32, f64)>>,
    pub verdict: Verdict,
    pub asymptotic_symbol: Option<SymbolDump>,
    /// Toeplitzness defect of the final iterate.
    pub residual: f64,
}

/// Decision thresholds (fixed).
const ZERO_LAST: f64 = 1e-6;
const ANALYTIC_LAST: f64 = 1e-2;
const STALL_LEVEL: f64 = 0.5;

fn tail_non_increasing(xs: &[f64]) -> bool {
    if xs.len() < 2 {
        return true;
    }
    let start = xs.len() * 2 / 3;
    let tail = &xs[start.min(xs.len() - 2)..];
    tail.windows(2).all(|w| w[1] <= w[0] + 1e-12)
}

fn zero_rule(xs: &[f64]) -> bool {
    match xs.last() {
        Some(&last) => last < ZERO_LAST && tail_non_increasing(xs),
        None => false,
    }
}

fn values(series: &[(u32, f64)]) -> Vec<f64> {
    series.iter().map(|&(_, v)| v).collect()
}

/// The fixed verdict rule shared by all report builders.
fn classify(
    series: &[(u32, f64)],
    diff: Option<&[(u32, f64)]>,
    residual: f64,
    bound: Option<&[(u32, f64)]>,
    certificate: Option<&[(u32, f64)]>,
) -> Verdict {
    let s = values(series);
    if zero_rule(&s) {
        return Verdict::ConvergesToZero;
    }
    if let Some(d) = diff {
        let d = values(d);
        if !d.is_empty() && zero_rule(&d) && residual < ZERO_LAST {
            return Verdict::ConvergesToToeplitz;
        }
    }
    if let Some(b) = bound {
        let b = values(b);
        let within = s
            .iter()
            .zip(&b)
            .all(|(v, bd)| *v <= 2.0 * bd + 1e-12);
        if let Some(&bl) = b.last() {
            if bl < ANALYTIC_LAST && within && tail_non_increasing(&s) {
                return Verdict::ConvergesToZero;
            }
        }
    }
    if let Some(c) = certificate {
        let c = values(c);
        let stays_up = !c.is_empty() && c.iter().all(|&v| v >= STALL_LEVEL);
        // the truncated series heads down (or already fell below the stall
        // level) while the certified lower bounds do not
        let drifts_down = match (s.first(), s.last()) {
            (Some(&first), Some(&last)) => last < first - 1e-9 || last < STALL_LEVEL,
            _ => false,
        };
        if stays_up && drifts_down {
            return Verdict::NonConvergent;
        }
    }
    Verdict::Inconclusive
}

/// ‖P_v A P_v‖ on the orthonormal valid block: power iteration on M*M with a
/// deterministic start. A lower bound for the true operator norm.
pub fn block_norm(a: &TruncatedOperator) -> Result<f64> {
    let v = a.valid_degree();
    if v < 0 {
        return Err(Error::TrustExhausted {
            valid_degree: v,
            max_usable: 0,
        });
    }
    Ok(top_singular_value(&a.orthonormal_block(v)))
}

/// Extras attached to a uniform-convergence report.
#[derive(Debug, Clone, Default)]
pub struct UatOptions {
    /// Sup-norm estimate r of the pairing symbol; attaches the analytic bound
    /// rᵐ·‖A‖ to the report.
    pub analytic_ratio: Option<f64>,
    /// Certified norm lower bounds per m (e.g. from [`lower_bound_probe`]).
    pub certificate: Option<Vec<(u32, f64)>>,
}

/// Norm series of the iterates Φᵐ(A), m = 1..m_max, with verdict.
pub fn uat_sequence(
    a: &TruncatedOperator,
    m_max: u32,
    opts: &UatOptions,
) -> Result<ConvergenceReport> {
    let iterates = phi_iterate(a, m_max)?;
    let mut series = Vec::with_capacity(iterates.len());
    for (i, it) in iterates.iter().enumerate() {
        series.push((i as u32 + 1, block_norm(it)?));
    }
    let mut diffs = Vec::new();
    for i in 0..iterates.len().saturating_sub(1) {
        let d = iterates[i + 1].sub(&iterates[i])?;
        diffs.push((i as u32 + 1, block_norm(&d)?));
    }
    let analytic_bound = opts.analytic_ratio.map(|r| {
        let base = block_norm(a).unwrap_or(0.0);
        (1..=m_max).map(|m| (m, r.powi(m as i32) * base)).collect::<Vec<_>>()
    });

    let last = iterates.last().expect("m_max >= 1");
    let residual = toeplitz_defect(last, diffs.last().map(|&(_, v)| v))?;
    let asymptotic_symbol = if last.valid_degree() >= 1 {
        Some(extract_symbol(last)?.0.dump())
    } else {
        None
    };
    let verdict = classify(
        &series,
        Some(&diffs),
        residual,
        analytic_bound.as_deref(),
        opts.certificate.as_deref(),
    );
    Ok(ConvergenceReport {
        mode: ReportMode::Uniform,
        series,
        analytic_bound,
        diff_series: Some(diffs),
        probes: Vec::new(),
        certificate: opts.certificate.clone(),
        verdict,
        asymptotic_symbol,
        residual,
    })
}

fn toeplitz_defect(last: &TruncatedOperator, fallback: Option<f64>) -> Result<f64> {
    if last.valid_degree() >= 1 {
        let next = phi_apply(last)?;
        block_norm(&next.sub(last)?)
    } else {
        Ok(fallback.unwrap_or(0.0))
    }
}

/// A labeled probe vector in coefficient form.
#[derive(Debug, Clone)]
pub struct ProbeVector {
    pub label: String,
    pub coeffs: Vec<CRat>,
}

/// Default probe set: monomials of degree ≤ 2 plus reproducing kernels at
/// 0.3·e₁ and 0.5·e₂ (0.5·e₁ in dimension one).
pub fn default_probes(basis: &BasisTable) -> Vec<ProbeVector> {
    let mut out = Vec::new();
    for i in 0..basis.block_len(2) {
        let alpha = basis.multi_index(i).clone();
        out.push(ProbeVector {
            label: format!("monomial{alpha}"),
            coeffs: monomial_vector(&alpha, basis).expect("in-range monomial"),
        });
    }
    let n = basis.dim();
    let mut p1 = vec![CRat::zero(); n];
    p1[0] = CRat::new(crate::exact::rat(3, 10), Rat::zero());
    let mut p2 = vec![CRat::zero(); n];
    let second = if n >= 2 { 1 } else { 0 };
    p2[second] = CRat::new(crate::exact::rat(1, 2), Rat::zero());
    for (label, point) in [("kernel(0.3 e1)", p1), ("kernel(0.5 e·)", p2)] {
        if let Ok(coeffs) = kernel_vector(&point, basis) {
            out.push(ProbeVector {
                label: label.to_string(),
                coeffs,
            });
        }
    }
    out
}

fn probe_report(
    mode: ReportMode,
    iterates: &[TruncatedOperator],
    probes: &[ProbeVector],
    residual: f64,
    asymptotic_symbol: Option<SymbolDump>,
) -> Result<ConvergenceReport> {
    let basis = iterates[0].basis().clone();
    let big_d = basis.max_degree() as i32;
    let mut probe_series = Vec::with_capacity(probes.len());
    for p in probes {
        let applied: Vec<Vec<CRat>> = iterates
            .iter()
            .map(|it| it.apply(&p.coeffs))
            .collect::<Result<_>>()?;
        // entries of the m-th iterate are reliable index shifts only up to
        // degree D−m, so norms are taken over that block (one less for the
        // differences, which involve the next iterate)
        let norms: Vec<(u32, f64)> = applied
            .iter()
            .enumerate()
            .map(|(i, y)| {
                let m = i as u32 + 1;
                (m, coeff_norm_block(y, &basis, big_d - m as i32))
            })
            .collect();
        let diffs: Vec<(u32, f64)> = applied
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let m = i as u32 + 1;
                let d: Vec<CRat> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
                (m, coeff_norm_block(&d, &basis, big_d - m as i32 - 1))
            })
            .collect();
        probe_series.push(ProbeSeries {
            label: p.label.clone(),
            norms,
            diffs,
        });
    }
    // aggregated series: per-m max of probe norms; diffs likewise
    let m_count = iterates.len();
    let mut series = Vec::with_capacity(m_count);
    for m in 0..m_count {
        let v = probe_series
            .iter()
            .map(|p| p.norms[m].1)
            .fold(0.0, f64::max);
        series.push((m as u32 + 1, v));
    }
    let mut diffs = Vec::new();
    for m in 0..m_count.saturating_sub(1) {
        let v = probe_series
            .iter()
            .map(|p| p.diffs[m].1)
            .fold(0.0, f64::max);
        diffs.push((m as u32 + 1, v));
    }

    // probe disagreement: one direction stalls while another dies
    let last_norms: Vec<f64> = probe_series
        .iter()
        .filter_map(|p| p.norms.last().map(|&(_, v)| v))
        .collect();
    let disagree = last_norms.iter().any(|&v| v >= STALL_LEVEL)
        && last_norms.iter().any(|&v| v < ZERO_LAST);

    let verdict = if disagree {
        Verdict::NonConvergent
    } else {
        classify(&series, Some(&diffs), residual, None, None)
    };
    Ok(ConvergenceReport {
        mode,
        series,
        analytic_bound: None,
        diff_series: Some(diffs),
        probes: probe_series,
        certificate: None,
        verdict,
        asymptotic_symbol,
        residual,
    })
}

/// Strong-topology probe: ‖Φᵐ(A)x‖ and ‖Φᵐ(A)x − Φᵐ⁺¹(A)x‖ per test vector.
///
/// Norms are taken over the degree-(D−m) coefficient block, the largest block
/// whose entries after m index shifts still read stored data.
pub fn sat_probe(
    a: &TruncatedOperator,
    probes: &[ProbeVector],
    m_max: u32,
) -> Result<ConvergenceReport> {
    if probes.is_empty() {
        return Err(Error::InvalidInput("probe set must be nonempty".into()));
    }
    let iterates = phi_iterate(a, m_max)?;
    let last = iterates.last().expect("m_max >= 1");
    let residual = toeplitz_defect(last, None)?;
    let symbol = if last.valid_degree() >= 1 {
        Some(extract_symbol(last)?.0.dump())
    } else {
        None
    };
    probe_report(ReportMode::Strong, &iterates, probes, residual, symbol)
}

/// Cesàro (mean-strong) probe: as [`sat_probe`] with (1/m)ΣΦʲ in place of Φᵐ.
pub fn cesaro_probe(
    a: &TruncatedOperator,
    probes: &[ProbeVector],
    m_max: u32,
) -> Result<ConvergenceReport> {
    if probes.is_empty() {
        return Err(Error::InvalidInput("probe set must be nonempty".into()));
    }
    let mut means = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        means.push(cesaro_mean(a, m)?);
    }
    let last = means.last().expect("m_max >= 1");
    let residual = toeplitz_defect(last, None)?;
    let symbol = if last.valid_degree() >= 1 {
        Some(extract_symbol(last)?.0.dump())
    } else {
        None
    };
    probe_report(ReportMode::Cesaro, &means, probes, residual, symbol)
}

/// Least-squares fit of a symbol with degrees ≤ v/2 to A's raw entries
/// through the Toeplitz entry formula, over the valid block. Solved exactly
/// in rational arithmetic per difference class μ−ν; relation-dependent
/// candidate columns (the sphere ideal) pivot to zero, so the minimal-degree
/// representative is returned. The residual is the Toeplitzness defect
/// ‖Φ(A) − A‖ on its valid block.
pub fn extract_symbol(a: &TruncatedOperator) -> Result<(SphereSymbol, f64)> {
    let v = a.valid_degree();
    if v < 1 {
        return Err(Error::TrustExhausted {
            valid_degree: v,
            max_usable: 0,
        });
    }
    let basis = a.basis();
    let n = basis.dim();
    let h = (v / 2) as usize;
    let cand_len = basis.block_len(h as i32);
    let block_len = basis.block_len(v);

    // group candidate pairs (mu, nu) by the difference vector mu - nu
    let mut groups: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
    for mi in 0..cand_len {
        for ni in 0..cand_len {
            let mu = basis.multi_index(mi);
            let nu = basis.multi_index(ni);
            let d: Vec<i64> = mu
                .exps()
                .iter()
                .zip(nu.exps())
                .map(|(a, b)| i64::from(*a) - i64::from(*b))
                .collect();
            groups.entry(d).or_default().push((mi, ni));
        }
    }

    let mut symbol = SphereSymbol::zero(n);
    for (d, mut cands) in groups {
        // graded order so minimal representatives pivot first
        cands.sort_by(|&(m1, n1), &(m2, n2)| {
            let deg1 = basis.degree_at(m1) + basis.degree_at(n1);
            let deg2 = basis.degree_at(m2) + basis.degree_at(n2);
            deg1.cmp(&deg2).then(m1.cmp(&m2)).then(n1.cmp(&n2))
        });
        // rows: (gamma, beta) in the valid block with gamma - beta = d
        let mut rows = Vec::new();
        for bi in 0..block_len {
            let beta = basis.multi_index(bi);
            let gamma_exps: Option<Vec<u32>> = beta
                .exps()
                .iter()
                .zip(&d)
                .map(|(b, delta)| u32::try_from(i64::from(*b) + delta).ok())
                .collect();
            let Some(exps) = gamma_exps else { continue };
            let gamma = MultiIndex::new(exps);
            if let Some(gi) = basis.index_of(&gamma) {
                if basis.degree_at(gi) <= v as u32 {
                    rows.push((gi, bi));
                }
            }
        }
        if rows.is_empty() {
            continue;
        }
        // design column value for candidate (mu, nu) at row (gamma, beta):
        // omega(mu + beta), a real rational
        let k = cands.len();
        let col_vals: Vec<Vec<Rat>> = cands
            .iter()
            .map(|&(mi, _)| {
                rows.iter()
                    .map(|&(_, bi)| {
                        let target = basis.multi_index(bi).plus(basis.multi_index(mi));
                        monomial_norm_sq(&target, n).expect("dimension matches")
                    })
                    .collect()
            })
            .collect();
        // normal equations G c = r (G real symmetric PSD, r complex)
        let mut g = vec![vec![Rat::zero(); k]; k];
        let mut r = vec![CRat::zero(); k];
        for p in 0..k {
            for q in p..k {
                let mut acc = Rat::zero();
                for row in 0..rows.len() {
                    acc += &col_vals[p][row] * &col_vals[q][row];
                }
                g[p][q] = acc.clone();
                g[q][p] = acc;
            }
            let mut acc = CRat::zero();
            for (row, &(gi, bi)) in rows.iter().enumerate() {
                let e = a.entry(gi, bi);
                if !e.is_zero() {
                    let w = CRat::new(col_vals[p][row].clone(), Rat::zero());
                    acc = acc + e * &w;
                }
            }
            r[p] = acc;
        }
        // symmetric Gaussian elimination; PSD => zero pivot means free column
        let mut pivots = Vec::new();
        for col in 0..k {
            if g[col][col].is_zero() {
                continue;
            }
            for row in (col + 1)..k {
                if g[row][col].is_zero() {
                    continue;
                }
                let factor = &g[row][col] / &g[col][col];
                for j in col..k {
                    let sub = &factor * &g[col][j];
                    g[row][j] -= sub;
                }
                let fc = CRat::new(factor, Rat::zero());
                let sub = &fc * &r[col];
                r[row] = &r[row] - &sub;
            }
            pivots.push(col);
        }
        let mut coeffs = vec![CRat::zero(); k];
        for &col in pivots.iter().rev() {
            let mut acc = r[col].clone();
            for j in (col + 1)..k {
                if !coeffs[j].is_zero() && !g[col][j].is_zero() {
                    let gj = CRat::new(g[col][j].clone(), Rat::zero());
                    acc = acc - &gj * &coeffs[j];
                }
            }
            let piv = &g[col][col];
            coeffs[col] = CRat::new(&acc.re / piv, &acc.im / piv);
        }
        for (idx, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let (mi, ni) = cands[idx];
                symbol.add_term(
                    basis.multi_index(mi).clone(),
                    basis.multi_index(ni).clone(),
                    c,
                );
            }
        }
    }

    let defect = block_norm(&phi_apply(a)?.sub(a)?)?;
    Ok((symbol, defect))
}

/// Rayleigh-quotient lower bounds for ‖T_f C_φ‖ along the concentrating peak
/// functions g_s(z) = (1+⟨z,η⟩)^s with h_s = C_φ g_s:
///
///   q_s = |⟨T_f C_φ g_s, h_s⟩| / (‖g_s‖·‖h_s‖),  s = 1..s_max.
///
/// Requires the exact polynomial identity ⟨φ(z),η⟩ = ⟨z,ζ⟩, verified
/// symbolically; the series trends toward |f(ζ)|.
pub fn lower_bound_probe(
    f: &SphereSymbol,
    phi: &PolySelfMap,
    zeta: &[CRat],
    eta: &[CRat],
    s_max: u32,
    basis: &std::sync::Arc<BasisTable>,
) -> Result<Vec<f64>> {
    let n = basis.dim();
    if f.dim() != n || phi.dim() != n || zeta.len() != n || eta.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.dim(),
        });
    }
    let k = phi.degree().max(1);
    if s_max == 0 || k * s_max > basis.max_degree() {
        return Err(Error::InvalidInput(format!(
            "need 1 <= s_max and deg(phi)*s_max <= D (got s_max={s_max}, deg={k}, D={})",
            basis.max_degree()
        )));
    }
    // hypothesis check: sum_j phi_j conj(eta_j) == sum_j conj(zeta_j) z_j
    let mut lhs = Polynomial::new();
    for j in 0..n {
        let ce = conj(&eta[j]);
        if ce.is_zero() {
            continue;
        }
        for (mu, c) in phi.component(j) {
            let entry = lhs.entry(mu.clone()).or_insert_with(CRat::zero);
            *entry = entry.clone() + c * &ce;
        }
    }
    lhs.retain(|_, v| !v.is_zero());
    let mut rhs = Polynomial::new();
    for (j, z) in zeta.iter().enumerate() {
        let cz = conj(z);
        if !cz.is_zero() {
            rhs.insert(MultiIndex::unit(n, j), cz);
        }
    }
    if lhs != rhs {
        return Err(Error::HypothesisViolation(
            "<phi(z), eta> != <z, zeta> as polynomials".into(),
        ));
    }

    let c_phi = TruncatedOperator::composition(phi, basis.clone())?;
    let t_f = TruncatedOperator::toeplitz(f, basis.clone())?;

    // base polynomial 1 + <z, eta>
    let mut base = Polynomial::new();
    base.insert(MultiIndex::zero(n), crat_one());
    for (j, e) in eta.iter().enumerate() {
        let ce = conj(e);
        if !ce.is_zero() {
            base.insert(MultiIndex::unit(n, j), ce);
        }
    }

    let mut series = Vec::with_capacity(s_max as usize);
    let mut g_poly = Polynomial::new();
    g_poly.insert(MultiIndex::zero(n), crat_one());
    for _s in 1..=s_max {
        g_poly = poly_mul(&g_poly, &base);
        let mut g = vec![CRat::zero(); basis.len()];
        for (alpha, c) in &g_poly {
            if let Some(i) = basis.index_of(alpha) {
                g[i] = c.clone();
            }
        }
        let h = c_phi.apply(&g)?;
        let th = t_f.apply(&h)?;
        // exact pairing <T_f h, h> and exact norms
        let mut pairing = CRat::zero();
        let mut norm_g = Rat::zero();
        let mut norm_h = Rat::zero();
        for i in 0..basis.len() {
            let w = basis.weight(i);
            if !th[i].is_zero() && !h[i].is_zero() {
                let p = &th[i] * &conj(&h[i]);
                pairing = pairing + &p * &CRat::new(w.clone(), Rat::zero());
            }
            if !g[i].is_zero() {
                norm_g += abs_sq(&g[i]) * w;
            }
            if !h[i].is_zero() {
                norm_h += abs_sq(&h[i]) * w;
            }
        }
        let num = to_f64(&abs_sq(&pairing)).sqrt();
        let den = (to_f64(&norm_g) * to_f64(&norm_h)).sqrt();
        series.push(if den == 0.0 { 0.0 } else { num / den });
    }
    Ok(series)
}

/// Classification of C_{Az} for a linear contraction A.
#[derive(Debug, Clone, Serialize)]
pub struct LinearClassification {
    pub uat: bool,
    pub spectral_radius: f64,
    pub eigenvalue: Option<(f64, f64)>,
    pub eigenvector: Option<Vec<(f64, f64)>>,
    /// |A*ζ − λ̄ζ| for the certified eigenpair.
    pub adjoint_deviation: Option<f64>,
}

/// Eigenvalue criterion for C_{Az}: UAT iff the spectral radius of A stays
/// below 1. When ρ(A) ≈ 1 the unimodular eigenpair (λ,ζ) with A*ζ = λ̄ζ is
/// emitted for use by [`lower_bound_probe`].
pub fn linear_uat_classifier(a: &CMat) -> Result<LinearClassification> {
    if a.rows != a.cols || a.rows == 0 {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let norm = top_singular_value(a);
    if norm > 1.0 + 1e-10 {
        return Err(Error::InvalidInput(format!(
            "matrix norm {norm} exceeds 1: not a self-map certificate"
        )));
    }
    if a.sub(&CMat::identity(a.rows)).max_abs() < 1e-12 {
        return Err(Error::InvalidInput(
            "identity map is excluded from the criterion".into(),
        ));
    }
    let eigs = eigenvalues(a);
    let rho = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if rho < 1.0 - 1e-8 {
        return Ok(LinearClassification {
            uat: true,
            spectral_radius: rho,
            eigenvalue: None,
            eigenvector: None,
            adjoint_deviation: None,
        });
    }
    let lambda = eigs
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("nonempty spectrum");
    // eigenvector of A for lambda
    let n = a.rows;
    let mut shifted = a.clone();
    for i in 0..n {
        shifted.set(i, i, shifted.get(i, i) - lambda);
    }
    let zeta = null_vector(&shifted);
    // check A* zeta = conj(lambda) zeta
    let astar_z = a.adjoint().matvec(&zeta);
    let dev = astar_z
        .iter()
        .zip(&zeta)
        .map(|(x, z)| (x - lambda.conj() * z).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(LinearClassification {
        uat: false,
        spectral_radius: rho,
        eigenvalue: Some((lambda.re, lambda.im)),
        eigenvector: Some(zeta.iter().map(|z| (z.re, z.im)).collect()),
        adjoint_deviation: Some(dev),
    })
}

/// Convenience: Complex64 view of a classification's eigenpair.
pub fn eigenpair(c: &LinearClassification) -> Option<(Complex64, Vec<Complex64>)> {
    let (lr, li) = c.eigenvalue?;
    let v = c
        .eigenvector
        .as_ref()?
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    Some((Complex64::new(lr, li), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{crat, crat_ratio, rat};
    use crate::operators::{coeff_norm, coeff_norm_sq};
    use crate::symbols::pairing_symbol;
    use std::sync::Arc;

    fn basis(n: usize, d: u32) -> Arc<BasisTable> {
        Arc::new(BasisTable::new(n, d))
    }

    fn shift_map_01() -> PolySelfMap {
        let mut comps = vec![Polynomial::new(); 2];
        comps[1].insert(MultiIndex::unit(2, 0), crat_one());
        PolySelfMap::new(2, comps).unwrap()
    }

    fn square_map_1d() -> PolySelfMap {
        let mut comp = Polynomial::new();
        comp.insert(MultiIndex::new(vec![2]), crat_one());
        PolySelfMap::new(1, vec![comp]).unwrap()
    }

    #[test]
    fn block_norm_of_identity_and_zero() {
        let b = basis(2, 5);
        assert!((block_norm(&TruncatedOperator::identity(b.clone())).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(block_norm(&TruncatedOperator::zero(b)).unwrap(), 0.0);
    }

    #[test]
    fn block_norm_of_coordinate_toeplitz() {
        let b = basis(2, 6);
        let t = TruncatedOperator::toeplitz(&SphereSymbol::coordinate(2, 0), b.clone()).unwrap();
        let norm = block_norm(&t).unwrap();
        assert!(norm <= 1.0 + 1e-10);
        // best ratio within the block: sqrt(omega(beta+e1)/omega(beta)) at beta=(5,0)
        let best = (to_f64(&monomial_norm_sq(&MultiIndex::new(vec![6, 0]), 2).unwrap())
            / to_f64(&monomial_norm_sq(&MultiIndex::new(vec![5, 0]), 2).unwrap()))
        .sqrt();
        assert!(norm >= best - 1e-10, "norm {norm} below ratio {best}");
    }

    #[test]
    fn uat_sequence_of_shift_counterexample_is_zero() {
        let b = basis(2, 8);
        let c = TruncatedOperator::composition(&shift_map_01(), b).unwrap();
        let rep = uat_sequence(&c, 4, &UatOptions::default()).unwrap();
        assert!(rep.series.iter().all(|&(_, v)| v == 0.0));
        assert_eq!(rep.verdict, Verdict::ConvergesToZero);
    }

    #[test]
    fn uat_sequence_of_toeplitz_is_fixed() {
        let b = basis(2, 8);
        let f = SphereSymbol::monomial(
            MultiIndex::new(vec![1, 0]),
            MultiIndex::new(vec![0, 1]),
            crat(1, 2),
        )
        .unwrap();
        let t = TruncatedOperator::toeplitz(&f, b).unwrap();
        let rep = uat_sequence(&t, 4, &UatOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::ConvergesToToeplitz);
        assert!(rep.residual < 1e-12);
        let d = rep.diff_series.unwrap();
        assert!(d.iter().all(|&(_, v)| v == 0.0));
    }

    #[test]
    fn uat_sequence_with_analytic_bound_decays() {
        let b = basis(2, 10);
        let a = PolySelfMap::diagonal(&[crat_ratio(1, 2, 0, 1), crat_ratio(1, 3, 0, 1)]);
        let c = TruncatedOperator::composition(&a, b).unwrap();
        let f = pairing_symbol(&a, &PolySelfMap::identity(2)).unwrap();
        let ratio = crate::symbols::sup_norm_estimate(&f, 50_000, 5);
        let rep = uat_sequence(
            &c,
            10,
            &UatOptions {
                analytic_ratio: Some(ratio),
                certificate: None,
            },
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::ConvergesToZero);
        // truncated norms stay below the analytic bound
        let bound = rep.analytic_bound.unwrap();
        for ((_, v), (_, bd)) in rep.series.iter().zip(&bound) {
            assert!(*v <= *bd + 1e-9, "series {v} above bound {bd}");
        }
    }

    #[test]
    fn uat_sequence_toeplitz_plus_rank_one_stabilizes() {
        let b = basis(2, 8);
        let f = SphereSymbol::coordinate(2, 1).conj();
        let t = TruncatedOperator::toeplitz(&f, b.clone()).unwrap();
        let u = monomial_vector(&MultiIndex::new(vec![1, 0]), &b).unwrap();
        let v = monomial_vector(&MultiIndex::new(vec![0, 2]), &b).unwrap();
        let k = TruncatedOperator::rank_one(&u, &v, b.clone()).unwrap();
        let sum = t.add(&k).unwrap();
        let rep = uat_sequence(&sum, 5, &UatOptions::default()).unwrap();
        // after m > deg v = 2, the iterate equals T_f on its valid block
        let its = phi_iterate(&sum, 5).unwrap();
        for (i, it) in its.iter().enumerate() {
            let m = i as u32 + 1;
            if m > 2 {
                assert!(it.equal_on_block(&t, it.valid_degree()));
            }
        }
        assert_eq!(rep.verdict, Verdict::ConvergesToToeplitz);
    }

    #[test]
    fn sat_probe_square_map_keeps_unit_norm() {
        // n=1, phi(z)=z^2: ||Phi^m(C) 1|| = 1 for all m
        let b = basis(1, 16);
        let c = TruncatedOperator::composition(&square_map_1d(), b.clone()).unwrap();
        let probes = vec![ProbeVector {
            label: "1".into(),
            coeffs: monomial_vector(&MultiIndex::new(vec![0]), &b).unwrap(),
        }];
        let rep = sat_probe(&c, &probes, 8).unwrap();
        for &(_, v) in &rep.probes[0].norms {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sat_probe_square_map_adjoint_kernels_decay() {
        let b = basis(1, 16);
        let c = TruncatedOperator::composition(&square_map_1d(), b.clone()).unwrap();
        let k = kernel_vector(&[crat_ratio(1, 2, 0, 1)], &b).unwrap();
        let k_norm = coeff_norm(&k, &b);
        let probes = vec![ProbeVector {
            label: "K(1/2)".into(),
            coeffs: k,
        }];
        let rep = sat_probe(&c.adjoint(), &probes, 8).unwrap();
        for &(m, v) in &rep.probes[0].norms {
            let bound = 0.5f64.powi(m as i32) * k_norm * 1.01;
            assert!(v <= bound, "m={m}: {v} > {bound}");
        }
    }

    #[test]
    fn sat_probe_of_toeplitz_has_zero_differences() {
        let b = basis(2, 6);
        let t = TruncatedOperator::toeplitz(&SphereSymbol::coordinate(2, 0), b.clone()).unwrap();
        let rep = sat_probe(&t, &default_probes(&b), 3).unwrap();
        for p in &rep.probes {
            assert!(p.diffs.iter().all(|&(_, v)| v == 0.0));
        }
        assert_eq!(rep.verdict, Verdict::ConvergesToToeplitz);
    }

    #[test]
    fn cesaro_probe_of_rotation_decays_like_one_over_m() {
        // lambda = (33+56i)/65, exactly unimodular; the normalized Cesaro
        // values are |sum lambda^j|/m <= 2/(m |1-lambda|), independent of the
        // monomial degree
        let b = basis(2, 10);
        let lam = crat_ratio(33, 65, 56, 65);
        let c =
            TruncatedOperator::composition(&PolySelfMap::scalar(2, lam.clone()), b.clone())
                .unwrap();
        let mut probes = Vec::new();
        for i in 0..b.block_len(3) {
            let alpha = b.multi_index(i).clone();
            if alpha.degree() >= 1 {
                probes.push(ProbeVector {
                    label: format!("{alpha}"),
                    coeffs: monomial_vector(&alpha, &b).unwrap(),
                });
            }
        }
        let rep = cesaro_probe(&c, &probes, 6).unwrap();
        let lam64 = Complex64::new(33.0 / 65.0, 56.0 / 65.0);
        let bound_const = 2.0 / (Complex64::new(1.0, 0.0) - lam64).norm();
        for p in &rep.probes {
            let alpha_norm = {
                // recover ||z^alpha|| from the m=1 value: |lambda|^{..}=1 so
                // ||cesaro_1 x|| = ||x||
                p.norms[0].1
            };
            for &(m, v) in &p.norms {
                assert!(
                    v <= bound_const / m as f64 * alpha_norm + 1e-12,
                    "m={m} v={v}"
                );
            }
        }
    }

    #[test]
    fn cesaro_probe_of_shift_counterexample_is_zero_and_identity_constant() {
        let b = basis(2, 8);
        let c = TruncatedOperator::composition(&shift_map_01(), b.clone()).unwrap();
        let rep = cesaro_probe(&c, &default_probes(&b), 3).unwrap();
        assert!(rep.series.iter().all(|&(_, v)| v == 0.0));
        assert_eq!(rep.verdict, Verdict::ConvergesToZero);

        // low-degree monomial probes of the identity stay exactly constant
        let id = TruncatedOperator::identity(b.clone());
        let monomials: Vec<ProbeVector> = (0..b.block_len(2))
            .map(|i| {
                let alpha = b.multi_index(i).clone();
                ProbeVector {
                    label: format!("{alpha}"),
                    coeffs: monomial_vector(&alpha, &b).unwrap(),
                }
            })
            .collect();
        let rep = cesaro_probe(&id, &monomials, 3).unwrap();
        for p in &rep.probes {
            let first = p.norms[0].1;
            assert!(p.norms.iter().all(|&(_, v)| (v - first).abs() < 1e-12));
        }
        assert_eq!(rep.verdict, Verdict::ConvergesToToeplitz);
    }

    #[test]
    fn extract_symbol_recovers_exact_toeplitz() {
        let b = basis(2, 8);
        let f = SphereSymbol::monomial(
            MultiIndex::unit(2, 0),
            MultiIndex::unit(2, 1),
            crat_ratio(2, 3, -1, 7),
        )
        .unwrap();
        let t = TruncatedOperator::toeplitz(&f, b).unwrap();
        let (sym, residual) = extract_symbol(&t).unwrap();
        assert_eq!(sym, f);
        assert!(residual < 1e-12);
    }

    #[test]
    fn extract_symbol_recovers_diagonal_symbol_up_to_sphere_relation() {
        // z1 zbar1 lies in a relation class (1 = z1 zbar1 + z2 zbar2), so the
        // fit may return any representative; it must reproduce the operator
        // exactly and have zero defect
        let b = basis(2, 8);
        let f = SphereSymbol::monomial(
            MultiIndex::unit(2, 0),
            MultiIndex::unit(2, 0),
            crat_one(),
        )
        .unwrap();
        let t = TruncatedOperator::toeplitz(&f, b.clone()).unwrap();
        let (sym, residual) = extract_symbol(&t).unwrap();
        let t_back = TruncatedOperator::toeplitz(&sym, b.clone()).unwrap();
        assert!(t_back.equal_on_block(&t, 8));
        assert!(residual < 1e-12);
    }

    #[test]
    fn extract_symbol_of_zero() {
        let b = basis(2, 6);
        let (sym, residual) = extract_symbol(&TruncatedOperator::zero(b)).unwrap();
        assert!(sym.is_zero());
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn extract_symbol_of_counterexample_has_positive_defect() {
        let b = basis(2, 8);
        let c = TruncatedOperator::composition(&shift_map_01(), b).unwrap();
        let (_, residual) = extract_symbol(&c).unwrap();
        // Phi(C) = 0 while C != 0, so the defect is the block norm of C
        let expected = block_norm(&c).unwrap();
        assert!(residual > 0.1);
        assert!((residual - expected).abs() < 1e-9);
    }

    #[test]
    fn extract_symbol_on_circle_picks_minimal_representative() {
        let b = basis(1, 8);
        let f = SphereSymbol::coordinate(1, 0);
        let t = TruncatedOperator::toeplitz(&f, b).unwrap();
        let (sym, residual) = extract_symbol(&t).unwrap();
        assert_eq!(sym, f);
        assert!(residual < 1e-12);
    }

    #[test]
    fn lower_bound_probe_constant_symbol_is_one() {
        let b = basis(2, 8);
        let lam = crat_ratio(4059, 5741, 4060, 5741);
        let phi = PolySelfMap::scalar(2, lam.clone());
        let zeta = vec![crat(1, 0), crat(0, 0)];
        let eta = vec![lam, crat(0, 0)];
        let f = SphereSymbol::constant(2, crat_one());
        let q = lower_bound_probe(&f, &phi, &zeta, &eta, 8, &b).unwrap();
        for v in q {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lower_bound_probe_rejects_bad_hypothesis() {
        let b = basis(2, 6);
        let phi = PolySelfMap::identity(2);
        let zeta = vec![crat(1, 0), crat(0, 0)];
        let eta = vec![crat(0, 0), crat(1, 0)];
        let f = SphereSymbol::constant(2, crat_one());
        let err = lower_bound_probe(&f, &phi, &zeta, &eta, 4, &b).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolation(_)));
    }

    #[test]
    fn lower_bound_probe_is_bounded_by_operator_norm() {
        let b = basis(2, 10);
        let a = PolySelfMap::diagonal(&[crat(1, 0), crat_ratio(1, 2, 0, 1)]);
        let f = pairing_symbol(&a, &PolySelfMap::identity(2)).unwrap();
        let zeta = vec![crat(1, 0), crat(0, 0)];
        let q = lower_bound_probe(&f, &a, &zeta, &zeta, 10, &b).unwrap();
        let tf = TruncatedOperator::toeplitz(&f, b.clone()).unwrap();
        let cp = TruncatedOperator::composition(&a, b.clone()).unwrap();
        let prod_norm = block_norm(&tf.multiply(&cp).unwrap()).unwrap();
        let sup = crate::symbols::sup_norm_estimate(&f, 20_000, 3);
        for &v in &q {
            assert!(v <= prod_norm + 1e-8 || v <= 1.0, "certificate above norm");
            assert!(v <= sup + 1e-2, "certificate above sup-norm estimate");
        }
        // monotone toward |f(zeta)| = 1
        for w in q.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn classifier_examples() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let a = CMat::from_rows(&[vec![c(0.5), c(0.0)], vec![c(0.0), c(1.0 / 3.0)]]);
        let r = linear_uat_classifier(&a).unwrap();
        assert!(r.uat);
        assert!((r.spectral_radius - 0.5).abs() < 1e-10);

        let a = CMat::from_rows(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(0.5)]]);
        let r = linear_uat_classifier(&a).unwrap();
        assert!(!r.uat);
        let (lambda, zeta) = eigenpair(&r).unwrap();
        assert!((lambda - c(1.0)).norm() < 1e-10);
        assert!((zeta[0].norm() - 1.0).abs() < 1e-10 && zeta[1].norm() < 1e-10);
        assert!(r.adjoint_deviation.unwrap() <= 1e-10);

        // the shift example map is nilpotent: rho = 0, UAT
        let a = CMat::from_rows(&[vec![c(0.0), c(0.0)], vec![c(1.0), c(0.0)]]);
        let r = linear_uat_classifier(&a).unwrap();
        assert!(r.uat);
        assert!(r.spectral_radius < 1e-12);
    }

    #[test]
    fn classifier_rejects_expansions_and_identity() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let a = CMat::from_rows(&[vec![c(2.0), c(0.0)], vec![c(0.0), c(0.5)]]);
        assert!(linear_uat_classifier(&a).is_err());
        assert!(linear_uat_classifier(&CMat::identity(2)).is_err());
    }

    #[test]
    fn classifier_agrees_with_empirical_verdicts() {
        // diag(1/2,1/3): classifier UAT, empirical converges-to-zero
        let b = basis(2, 10);
        let map = PolySelfMap::diagonal(&[crat_ratio(1, 2, 0, 1), crat_ratio(1, 3, 0, 1)]);
        let cop = TruncatedOperator::composition(&map, b.clone()).unwrap();
        let f = pairing_symbol(&map, &PolySelfMap::identity(2)).unwrap();
        let ratio = crate::symbols::sup_norm_estimate(&f, 50_000, 7);
        let rep = uat_sequence(
            &cop,
            10,
            &UatOptions {
                analytic_ratio: Some(ratio),
                certificate: None,
            },
        )
        .unwrap();
        let cls = linear_uat_classifier(&CMat::from_rows(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0 / 3.0, 0.0)],
        ]))
        .unwrap();
        assert!(cls.uat && rep.verdict == Verdict::ConvergesToZero);

        // diag(1,1/2): classifier not-UAT; empirical non-convergent with a
        // lower-bound certificate
        let b12 = basis(2, 12);
        let map = PolySelfMap::diagonal(&[crat(1, 0), crat_ratio(1, 2, 0, 1)]);
        let cop = TruncatedOperator::composition(&map, b12.clone()).unwrap();
        let f = pairing_symbol(&map, &PolySelfMap::identity(2)).unwrap();
        let zeta = vec![crat(1, 0), crat(0, 0)];
        let mut cert = Vec::new();
        for m in 1..=4u32 {
            let q = lower_bound_probe(&f.power(m), &map, &zeta, &zeta, 12, &b12).unwrap();
            cert.push((m, *q.last().unwrap()));
        }
        let rep = uat_sequence(
            &cop,
            8,
            &UatOptions {
                analytic_ratio: None,
                certificate: Some(cert.clone()),
            },
        )
        .unwrap();
        let cls = linear_uat_classifier(&CMat::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
        ]))
        .unwrap();
        assert!(
            !cls.uat && rep.verdict == Verdict::NonConvergent,
            "verdict {:?}, series {:?}, cert {:?}",
            rep.verdict,
            rep.series,
            cert
        );
    }

    #[test]
    fn probe_norm_sanity_exact() {
        // exact norms used by probes match the rational computation
        let b = basis(2, 6);
        let x = monomial_vector(&MultiIndex::new(vec![2, 1]), &b).unwrap();
        assert_eq!(
            coeff_norm_sq(&x, &b),
            monomial_norm_sq(&MultiIndex::new(vec![2, 1]), 2).unwrap()
        );
        let _ = rat(1, 2);
    }
}
