//! Experiment execution: builds the operator from the recipe, dispatches the
//! diagnostic mode, runs exactness checks, and assembles the report.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};

use asytop::basis::{BasisTable, MultiIndex};
use asytop::diagnostics::{
    cesaro_probe, default_probes, linear_uat_classifier, lower_bound_probe, sat_probe,
    uat_sequence, ProbeVector, UatOptions,
};
use asytop::exact::{to_c64, to_f64, CRat, Rat};
use asytop::linalg::CMat;
use asytop::operators::{
    coeff_norm_sq, kernel_vector, monomial_vector, TruncatedOperator,
};
use asytop::oracle::{mc_pairing, mc_toeplitz_entry};
use asytop::phi::{cesaro_mean, frame_deviation, phi_apply, phi_in_frame, phi_iterate,
    random_unitary};
use asytop::symbols::{pairing_symbol, sup_norm_estimate, PolySelfMap, SphereSymbol};
use num::complex::Complex64;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{CheckResult, OracleCase, OracleReport, Report};
use crate::spec::{CertificateSpec, CheckSpec, ExperimentSpec, Mode, ProbeSpec, Recipe};

/// Outcome of a run: the report plus the process exit code.
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

struct Context {
    basis: Arc<BasisTable>,
    symbols: BTreeMap<String, SphereSymbol>,
    maps: BTreeMap<String, PolySelfMap>,
    vectors: BTreeMap<String, Vec<CRat>>,
    operator: Option<TruncatedOperator>,
}

impl Context {
    fn symbol(&self, name: &str) -> Result<&SphereSymbol> {
        self.symbols.get(name).ok_or_else(|| anyhow!("undeclared symbol '{name}'"))
    }

    fn map(&self, name: &str) -> Result<&PolySelfMap> {
        self.maps.get(name).ok_or_else(|| anyhow!("undeclared map '{name}'"))
    }

    fn vector(&self, name: &str) -> Result<&Vec<CRat>> {
        self.vectors.get(name).ok_or_else(|| anyhow!("undeclared vector '{name}'"))
    }

    fn operator(&self) -> Result<&TruncatedOperator> {
        self.operator.as_ref().ok_or_else(|| anyhow!("this experiment needs a 'recipe'"))
    }
}

fn build_recipe(r: &Recipe, ctx: &Context) -> Result<TruncatedOperator> {
    Ok(match r {
        Recipe::Toeplitz(name) => {
            TruncatedOperator::toeplitz(ctx.symbol(name)?, ctx.basis.clone())?
        }
        Recipe::Compose(name) => {
            TruncatedOperator::composition(ctx.map(name)?, ctx.basis.clone())?
        }
        Recipe::Adjoint(inner) => build_recipe(inner, ctx)?.adjoint(),
        Recipe::Product(a, b) => build_recipe(a, ctx)?.multiply(&build_recipe(b, ctx)?)?,
        Recipe::Sum(a, b) => build_recipe(a, ctx)?.add(&build_recipe(b, ctx)?)?,
        Recipe::Scale(c, inner) => build_recipe(inner, ctx)?.scale(c),
        Recipe::RankOne(u, v) => {
            TruncatedOperator::rank_one(ctx.vector(u)?, ctx.vector(v)?, ctx.basis.clone())?
        }
        Recipe::Identity => TruncatedOperator::identity(ctx.basis.clone()),
    })
}

fn polynomial_vector(
    terms: &[(MultiIndex, CRat)],
    basis: &BasisTable,
) -> Result<Vec<CRat>> {
    let mut v = vec![CRat::zero(); basis.len()];
    for (alpha, c) in terms {
        let idx = basis
            .index_of(alpha)
            .ok_or_else(|| anyhow!("vector term {alpha} lies outside the truncation"))?;
        v[idx] = &v[idx] + c;
    }
    Ok(v)
}

fn probe_vectors(spec: &ExperimentSpec, ctx: &Context) -> Result<Vec<ProbeVector>> {
    if spec.params.probes.is_empty() {
        return Ok(default_probes(&ctx.basis));
    }
    let mut out = Vec::new();
    for p in &spec.params.probes {
        match p {
            ProbeSpec::Monomial(alpha) => out.push(ProbeVector {
                label: format!("monomial{alpha}"),
                coeffs: monomial_vector(alpha, &ctx.basis)?,
            }),
            ProbeSpec::Kernel(point) => out.push(ProbeVector {
                label: "kernel".to_string(),
                coeffs: kernel_vector(point, &ctx.basis)?,
            }),
        }
    }
    Ok(out)
}

fn certificate_series(
    cert: &CertificateSpec,
    ctx: &Context,
) -> Result<Vec<(u32, f64)>> {
    let map = ctx.map(&cert.map)?;
    let f = pairing_symbol(map, &PolySelfMap::identity(map.dim()))?;
    let mut series = Vec::with_capacity(cert.powers as usize);
    for m in 1..=cert.powers {
        let q = lower_bound_probe(&f.power(m), map, &cert.zeta, &cert.eta, cert.s_max, &ctx.basis)?;
        series.push((m, *q.last().expect("s_max >= 1")));
    }
    Ok(series)
}

fn matrix_from_map(map: &PolySelfMap) -> Result<CMat> {
    if map.degree() > 1 {
        bail!("classifier needs a linear map");
    }
    let n = map.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for (alpha, c) in map.component(i) {
            if alpha.degree() == 0 {
                bail!("classifier needs a linear map without constant term");
            }
            let j = (0..n).find(|&j| alpha.exp(j) == 1).expect("degree-1 term");
            m.set(i, j, to_c64(c));
        }
    }
    Ok(m)
}

fn run_checks(spec: &ExperimentSpec, ctx: &Context) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let basis = &ctx.basis;
    let n = basis.dim();
    let d = basis.max_degree();
    for check in &spec.params.checks {
        let result = match check {
            CheckSpec::Coisometry => {
                let mut acc = TruncatedOperator::zero(basis.clone());
                for j in 0..n {
                    let tz = TruncatedOperator::toeplitz(
                        &SphereSymbol::coordinate(n, j),
                        basis.clone(),
                    )?;
                    acc = acc.add(&tz.adjoint().multiply(&tz)?)?;
                }
                let id = TruncatedOperator::identity(basis.clone());
                let pass = acc.equal_on_valid_block(&id);
                CheckResult {
                    name: "coisometry".into(),
                    pass,
                    detail: format!("sum_j T_zbar_j T_z_j = I on degrees <= {}", d as i32 - 1),
                }
            }
            CheckSpec::PhiFixedPoint { symbol } => {
                let t = TruncatedOperator::toeplitz(ctx.symbol(symbol)?, basis.clone())?;
                let pass = phi_apply(&t)?.equal_on_valid_block(&t);
                CheckResult {
                    name: format!("phi-fixed-point({symbol})"),
                    pass,
                    detail: "Phi(T_f) = T_f exactly on the valid block".into(),
                }
            }
            CheckSpec::Induction { g, phi, eta, m_values } => {
                let g = ctx.symbol(g)?;
                let phi_map = ctx.map(phi)?;
                let eta_map = ctx.map(eta)?;
                let c_phi = TruncatedOperator::composition(phi_map, basis.clone())?;
                let c_eta_star =
                    TruncatedOperator::composition(eta_map, basis.clone())?.adjoint();
                let t_g = TruncatedOperator::toeplitz(g, basis.clone())?;
                let product = c_eta_star.multiply(&t_g.multiply(&c_phi)?)?;
                let pairing = pairing_symbol(phi_map, eta_map)?;
                let max_m = *m_values.iter().max().unwrap_or(&1);
                let iterates = phi_iterate(&product, max_m)?;
                let mut pass = true;
                let mut blocks = Vec::new();
                for &m in m_values {
                    let lhs = &iterates[m as usize - 1];
                    let sym = g.product(&pairing.power(m))?;
                    let t_m = TruncatedOperator::toeplitz(&sym, basis.clone())?;
                    let rhs = c_eta_star.multiply(&t_m.multiply(&c_phi)?)?;
                    let block = lhs.valid_degree().min(rhs.valid_degree());
                    pass &= basis.block_len(block) > 1 && lhs.equal_on_block(&rhs, block);
                    blocks.push(block);
                }
                CheckResult {
                    name: "induction".into(),
                    pass,
                    detail: format!(
                        "Phi^m(C_eta* T_g C_phi) = C_eta* T_{{g<phi,eta>^m}} C_phi exactly, \
                         blocks {blocks:?}"
                    ),
                }
            }
            CheckSpec::PhiAnnihilates { map } => {
                let c = TruncatedOperator::composition(ctx.map(map)?, basis.clone())?;
                let pass = phi_apply(&c)?.is_zero_matrix();
                CheckResult {
                    name: format!("phi-annihilates({map})"),
                    pass,
                    detail: "Phi(C_phi) = 0 in every stored entry".into(),
                }
            }
            CheckSpec::AdjointComposition { map, expected } => {
                let c = TruncatedOperator::composition(ctx.map(map)?, basis.clone())?;
                let e = TruncatedOperator::composition(ctx.map(expected)?, basis.clone())?;
                let pass = c.adjoint().equal_on_block(&e, d as i32);
                CheckResult {
                    name: format!("adjoint-composition({map})"),
                    pass,
                    detail: format!("C_{map}^* = C_{expected} entry for entry"),
                }
            }
            CheckSpec::IsometryOnCoordinate { map, coordinate } => {
                let c = TruncatedOperator::composition(ctx.map(map)?, basis.clone())?;
                let mut pass = true;
                for s in 0..=d {
                    let mut alpha = vec![0u32; n];
                    alpha[*coordinate] = s;
                    let x = monomial_vector(&MultiIndex::new(alpha), basis)?;
                    let y = c.apply(&x)?;
                    pass &= coeff_norm_sq(&y, basis) == coeff_norm_sq(&x, basis);
                }
                CheckResult {
                    name: format!("isometry-on-coordinate({map},{coordinate})"),
                    pass,
                    detail: format!("||C z_j^s|| = ||z_j^s|| exactly for s <= {d}"),
                }
            }
            CheckSpec::RankOneNilpotent { u, v } => {
                let uv = polynomial_vector(
                    spec.vectors.get(u).expect("validated"),
                    basis,
                )?;
                let vv_terms = spec.vectors.get(v).expect("validated");
                let vv = polynomial_vector(vv_terms, basis)?;
                let m0 = vv_terms.iter().map(|(a, _)| a.degree()).max().unwrap_or(0);
                let k = TruncatedOperator::rank_one(&uv, &vv, basis.clone())?;
                let last = phi_iterate(&k, m0 + 1)?.pop().expect("nonempty");
                let pass = last.is_zero_matrix();
                CheckResult {
                    name: format!("rank-one-nilpotent({u},{v})"),
                    pass,
                    detail: format!("Phi^{}(u x v) = 0 exactly", m0 + 1),
                }
            }
            CheckSpec::FrameInvariance { count, tolerance } => {
                let op = ctx.operator()?;
                let reference = phi_apply(op)?;
                let mut worst = 0.0f64;
                for i in 0..*count {
                    let u = random_unitary(n, spec.params.seed.wrapping_add(u64::from(i)));
                    let framed = phi_in_frame(op, &u)?;
                    worst = worst.max(frame_deviation(&framed, &reference, reference.valid_degree()));
                }
                CheckResult {
                    name: "frame-invariance".into(),
                    pass: worst <= *tolerance,
                    detail: format!("max deviation {worst:.3e} over {count} unitaries"),
                }
            }
            CheckSpec::ConstantUnitProbe { monomial, m_max } => {
                let op = ctx.operator()?;
                let x = monomial_vector(monomial, basis)?;
                let iterates = phi_iterate(op, *m_max)?;
                let mut pass = true;
                for it in &iterates {
                    pass &= coeff_norm_sq(&it.apply(&x)?, basis) == Rat::one();
                }
                CheckResult {
                    name: "constant-unit-probe".into(),
                    pass,
                    detail: format!("||Phi^m(A) z^{monomial}|| = 1 exactly for m <= {m_max}"),
                }
            }
            CheckSpec::KernelDecay { point, rate, slack, m_max, adjoint } => {
                let op = ctx.operator()?;
                let target = if *adjoint { op.adjoint() } else { op.clone() };
                let k = kernel_vector(point, basis)?;
                let k_norm_sq = coeff_norm_sq(&k, basis);
                let iterates = phi_iterate(&target, *m_max)?;
                let mut pass = true;
                for (i, it) in iterates.iter().enumerate() {
                    let m = i as i32 + 1;
                    let y = it.apply(&k)?;
                    let factor = (Rat::one() + slack) * (Rat::one() + slack);
                    let bound = (rate * rate).pow(m) * &k_norm_sq * factor;
                    pass &= coeff_norm_sq(&y, basis) <= bound;
                }
                CheckResult {
                    name: "kernel-decay".into(),
                    pass,
                    detail: format!(
                        "||Phi^m(A{}) K_a|| <= rate^m ||K_a|| (1+slack) for m <= {m_max}",
                        if *adjoint { "^*" } else { "" }
                    ),
                }
            }
            CheckSpec::CesaroRotationBound { lambda, max_degree, m_max } => {
                let c = TruncatedOperator::composition(
                    &PolySelfMap::scalar(n, lambda.clone()),
                    basis.clone(),
                )?;
                let lam64 = to_c64(lambda);
                // sharp alpha-independent geometric-sum constant
                let constant = 2.0 / (Complex64::new(1.0, 0.0) - lam64).norm();
                let mut pass = true;
                let mut worst_ratio = 0.0f64;
                for m in 1..=*m_max {
                    let mean = cesaro_mean(&c, m)?;
                    for i in 0..basis.block_len(*max_degree as i32) {
                        let alpha = basis.multi_index(i).clone();
                        if alpha.degree() < 1 {
                            continue;
                        }
                        let x = monomial_vector(&alpha, basis)?;
                        let y = mean.apply(&x)?;
                        let value = (to_f64(&coeff_norm_sq(&y, basis))
                            / to_f64(&coeff_norm_sq(&x, basis)))
                        .sqrt();
                        let gap = (Complex64::new(1.0, 0.0) - lam64.powu(alpha.degree())).norm();
                        if gap < 1e-12 {
                            continue;
                        }
                        let bound = constant * 2.0 / (m as f64 * gap);
                        worst_ratio = worst_ratio.max(value / bound);
                        pass &= value <= bound + 1e-12;
                    }
                }
                CheckResult {
                    name: "cesaro-rotation-bound".into(),
                    pass,
                    detail: format!(
                        "Cesaro values within (2/|1-lambda|) * 2/(m |1-lambda^deg|), worst ratio \
                         {worst_ratio:.3}"
                    ),
                }
            }
            CheckSpec::LowerBoundMonotone => {
                let series = lower_bound_series(spec, ctx)?;
                let pass = series.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12);
                CheckResult {
                    name: "lower-bound-monotone".into(),
                    pass,
                    detail: "q_s is non-decreasing in s".into(),
                }
            }
        };
        out.push(result);
    }
    Ok(out)
}

fn lower_bound_series(spec: &ExperimentSpec, ctx: &Context) -> Result<Vec<(u32, f64)>> {
    let p = &spec.params;
    let f = ctx.symbol(
        p.symbol
            .as_deref()
            .ok_or_else(|| anyhow!("lower-bound mode needs params.symbol"))?,
    )?;
    let map = ctx.map(
        p.map
            .as_deref()
            .ok_or_else(|| anyhow!("lower-bound mode needs params.map"))?,
    )?;
    let zeta = p.zeta.as_ref().ok_or_else(|| anyhow!("lower-bound mode needs params.zeta"))?;
    let eta = p.eta.as_ref().ok_or_else(|| anyhow!("lower-bound mode needs params.eta"))?;
    let q = lower_bound_probe(f, map, zeta, eta, p.s_max, &ctx.basis)?;
    Ok(q.into_iter().enumerate().map(|(i, v)| (i as u32 + 1, v)).collect())
}

fn run_oracle(spec: &ExperimentSpec, ctx: &Context) -> Result<OracleReport> {
    let p = &spec.params;
    let n = ctx.basis.dim();
    let mut cases = Vec::new();
    let mut seed = p.seed;

    // monomial Gram weights
    let table = BasisTable::new(n, p.max_degree);
    for alpha in table.indices() {
        seed = seed.wrapping_add(1);
        let mono = SphereSymbol::monomial(alpha.clone(), MultiIndex::zero(n), num::one())
            .map_err(|e| anyhow!("{e}"))?;
        let est = mc_pairing(&mono, &mono, p.samples, seed)?;
        let exact = to_f64(&asytop::basis::monomial_norm_sq(alpha, n)?);
        let sigmas = est.sigmas_from(Complex64::new(exact, 0.0));
        cases.push(OracleCase {
            label: format!("norm_sq{alpha}"),
            exact_re: exact,
            exact_im: 0.0,
            estimate: est,
            sigmas,
            within_tolerance: sigmas <= 4.0,
        });
    }

    // pseudo-random Toeplitz entries
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let b = &ctx.basis;
    for _ in 0..p.entries {
        seed = seed.wrapping_add(1);
        let f = random_symbol_for_oracle(n, &mut rng);
        let t = TruncatedOperator::toeplitz(&f, b.clone())?;
        let lim = b.block_len((p.max_degree.min(b.max_degree())) as i32);
        let bi = rng.gen_range(0..lim);
        let gi = rng.gen_range(0..lim);
        let beta = b.multi_index(bi).clone();
        let gamma = b.multi_index(gi).clone();
        let v = t.entry_at(&gamma, &beta).expect("in-range entry");
        let exact = Complex64::new(to_f64(&v.re), to_f64(&v.im));
        let est = mc_toeplitz_entry(&f, &beta, &gamma, p.samples, seed)?;
        let sigmas = est.sigmas_from(exact);
        cases.push(OracleCase {
            label: format!("entry[{gamma},{beta}]"),
            exact_re: exact.re,
            exact_im: exact.im,
            estimate: est,
            sigmas,
            within_tolerance: sigmas <= 4.0,
        });
    }
    let all = cases.iter().all(|c| c.within_tolerance);
    Ok(OracleReport {
        tolerance_sigmas: 4.0,
        cases,
        all_within_tolerance: all,
    })
}

fn random_symbol_for_oracle(n: usize, rng: &mut ChaCha8Rng) -> SphereSymbol {
    let mut s = SphereSymbol::zero(n);
    for _ in 0..3 {
        let mut mu = vec![0u32; n];
        let mut nu = vec![0u32; n];
        let mut left = 2u32;
        for e in mu.iter_mut() {
            let v = rng.gen_range(0..=left);
            *e = v;
            left -= v;
        }
        let mut left = 2u32;
        for e in nu.iter_mut() {
            let v = rng.gen_range(0..=left);
            *e = v;
            left -= v;
        }
        let c = CRat::new(
            Rat::new(rng.gen_range(-4i64..5).into(), rng.gen_range(1i64..5).into()),
            Rat::new(rng.gen_range(-4i64..5).into(), rng.gen_range(1i64..5).into()),
        );
        s.add_term(MultiIndex::new(mu), MultiIndex::new(nu), c);
    }
    s
}

/// Runs one experiment. `timestamp` is included unless disabled.
pub fn run_experiment(spec: &ExperimentSpec, with_timestamp: bool) -> Result<Outcome> {
    let basis = Arc::new(BasisTable::new(spec.dimension, spec.truncation));
    let mut vectors = BTreeMap::new();
    for (k, terms) in &spec.vectors {
        vectors.insert(k.clone(), polynomial_vector(terms, &basis)?);
    }
    let mut ctx = Context {
        basis,
        symbols: spec.symbols.clone(),
        maps: spec.maps.clone(),
        vectors,
        operator: None,
    };
    if let Some(recipe) = &spec.recipe {
        ctx.operator = Some(build_recipe(recipe, &ctx)?);
    }

    let mut convergence = None;
    let mut lower_bound = None;
    let mut classifier = None;
    let mut oracle = None;

    match spec.diagnostic {
        Mode::Uniform => {
            let op = ctx.operator()?;
            let analytic_ratio = match &spec.params.bound_map {
                Some(name) => {
                    let map = ctx.map(name)?;
                    let f = pairing_symbol(map, &PolySelfMap::identity(map.dim()))?;
                    Some(sup_norm_estimate(&f, spec.params.samples, spec.params.seed))
                }
                None => None,
            };
            let certificate = match &spec.params.certificate {
                Some(c) => Some(certificate_series(c, &ctx)?),
                None => None,
            };
            let opts = UatOptions {
                analytic_ratio,
                certificate,
            };
            convergence = Some(uat_sequence(op, spec.params.m_max, &opts)?);
        }
        Mode::Strong => {
            let probes = probe_vectors(spec, &ctx)?;
            convergence = Some(sat_probe(ctx.operator()?, &probes, spec.params.m_max)?);
        }
        Mode::Cesaro => {
            let probes = probe_vectors(spec, &ctx)?;
            convergence = Some(cesaro_probe(ctx.operator()?, &probes, spec.params.m_max)?);
        }
        Mode::LowerBound => {
            lower_bound = Some(lower_bound_series(spec, &ctx)?);
        }
        Mode::ClassifyLinear => {
            let m = match (&spec.params.matrix, &spec.params.classify_map) {
                (Some(rows), _) => {
                    let n = rows.len();
                    let mut m = CMat::zeros(n, n);
                    for (i, row) in rows.iter().enumerate() {
                        if row.len() != n {
                            bail!("classifier matrix must be square");
                        }
                        for (j, c) in row.iter().enumerate() {
                            m.set(i, j, to_c64(c));
                        }
                    }
                    m
                }
                (None, Some(name)) => matrix_from_map(ctx.map(name)?)?,
                (None, None) => bail!("classify-linear needs params.matrix or params.classify_map"),
            };
            classifier = Some(linear_uat_classifier(&m)?);
        }
        Mode::OracleValidate => {
            oracle = Some(run_oracle(spec, &ctx)?);
        }
        Mode::Identity => {
            if spec.params.checks.is_empty() {
                bail!("identity mode needs at least one check");
            }
        }
    }

    // classifier attachment for uniform runs over linear maps
    if classifier.is_none() {
        if let Some(name) = &spec.params.classify_map {
            if spec.diagnostic != Mode::ClassifyLinear {
                classifier = Some(linear_uat_classifier(&matrix_from_map(ctx.map(name)?)?)?);
            }
        }
    }

    let checks = run_checks(spec, &ctx)?;
    let checks_passed = checks.iter().all(|c| c.pass);

    let verdict = match (&convergence, &classifier, &oracle) {
        (Some(c), _, _) => Some(c.verdict.as_str().to_string()),
        (None, Some(c), _) => Some(if c.uat { "uat" } else { "not-uat" }.to_string()),
        (None, None, Some(o)) => Some(
            if o.all_within_tolerance {
                "oracle-consistent"
            } else {
                "oracle-inconsistent"
            }
            .to_string(),
        ),
        _ => None,
    };
    let expect_matched = match (&spec.params.expect, &verdict) {
        (Some(e), Some(v)) => e == v,
        (Some(_), None) => false,
        (None, _) => true,
    };

    let timestamp_unix = if with_timestamp {
        Some(
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    } else {
        None
    };

    let report = Report {
        name: spec.name.clone(),
        statement: spec.statement.clone(),
        dimension: spec.dimension,
        truncation: spec.truncation,
        diagnostic: spec.diagnostic.as_str().to_string(),
        seed: spec.params.seed,
        timestamp_unix,
        convergence,
        lower_bound_series: lower_bound,
        classifier,
        oracle,
        checks,
        verdict,
        expect: spec.params.expect.clone(),
        expect_matched,
        checks_passed,
    };
    let exit_code = if expect_matched && checks_passed { 0 } else { 1 };
    Ok(Outcome { report, exit_code })
}

/// Builds the spec's recipe operator on a fresh basis, for `--dump-operator`.
pub fn build_standalone(spec: &ExperimentSpec) -> Result<TruncatedOperator> {
    let recipe = spec
        .recipe
        .as_ref()
        .ok_or_else(|| anyhow!("this experiment has no 'recipe' to dump"))?;
    let basis = Arc::new(BasisTable::new(spec.dimension, spec.truncation));
    let mut vectors = BTreeMap::new();
    for (k, terms) in &spec.vectors {
        vectors.insert(k.clone(), polynomial_vector(terms, &basis)?);
    }
    let ctx = Context {
        basis,
        symbols: spec.symbols.clone(),
        maps: spec.maps.clone(),
        vectors,
        operator: None,
    };
    build_recipe(recipe, &ctx)
}

