//! Built-in experiments, one per headline identity or counterexample.

use std::collections::BTreeMap;

use asytop::basis::MultiIndex;
use asytop::exact::{crat, crat_one, crat_ratio, rat};
use asytop::symbols::{PolySelfMap, Polynomial, SphereSymbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spec::{CertificateSpec, CheckSpec, ExperimentSpec, Mode, Params, ProbeSpec, Recipe};

pub const PRESET_NAMES: &[&str] = &[
    "counterexample",
    "linear-uat",
    "linear-non-uat",
    "davie-jewell",
    "induction-formula",
    "cesaro-msat",
    "inner-1d",
    "compact-uat",
    "norm-lower-bound",
    "frame-invariance",
    "oracle-validate",
];

fn shift_map(n: usize) -> PolySelfMap {
    // z -> (0, z1, 0, ...)
    let mut comps = vec![Polynomial::new(); n];
    comps[1].insert(MultiIndex::unit(n, 0), crat_one());
    PolySelfMap::new(n, comps).expect("component count matches")
}

fn shift_adjoint_map(n: usize) -> PolySelfMap {
    // z -> (z2, 0, ...)
    let mut comps = vec![Polynomial::new(); n];
    comps[0].insert(MultiIndex::unit(n, 1), crat_one());
    PolySelfMap::new(n, comps).expect("component count matches")
}

fn base(name: &str, statement: &str, n: usize, d: u32, mode: Mode) -> ExperimentSpec {
    ExperimentSpec {
        name: name.to_string(),
        statement: Some(statement.to_string()),
        dimension: n,
        truncation: d,
        symbols: BTreeMap::new(),
        maps: BTreeMap::new(),
        vectors: BTreeMap::new(),
        recipe: None,
        diagnostic: mode,
        params: Params::default(),
    }
}

fn random_symbol(n: usize, max_deg: u32, terms: usize, seed: u64) -> SphereSymbol {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SphereSymbol::zero(n);
    for _ in 0..terms {
        let mut mu = vec![0u32; n];
        let mut nu = vec![0u32; n];
        let mut left = max_deg;
        for e in mu.iter_mut() {
            let v = rng.gen_range(0..=left);
            *e = v;
            left -= v;
        }
        let mut left = max_deg;
        for e in nu.iter_mut() {
            let v = rng.gen_range(0..=left);
            *e = v;
            left -= v;
        }
        s.add_term(
            MultiIndex::new(mu),
            MultiIndex::new(nu),
            crat_ratio(rng.gen_range(-4..5), rng.gen_range(1..6), rng.gen_range(-4..5), rng.gen_range(1..6)),
        );
    }
    s
}

/// Builds a preset by name; `seed` overrides the preset default.
pub fn preset(name: &str, seed: Option<u64>) -> Option<ExperimentSpec> {
    let mut spec = match name {
        "counterexample" => {
            let mut s = base(
                "counterexample",
                "Phi(C_phi) = 0 for phi(z) = (0, z1) although C_phi is neither compact nor the \
                 identity: it acts isometrically on powers of z2 and C_phi^* = C_psi for \
                 psi(z) = (z2, 0)",
                2,
                8,
                Mode::Uniform,
            );
            s.maps.insert("phi".into(), shift_map(2));
            s.maps.insert("psi".into(), shift_adjoint_map(2));
            s.recipe = Some(Recipe::Compose("phi".into()));
            s.params.m_max = 4;
            s.params.expect = Some("converges-to-zero".into());
            s.params.checks = vec![
                CheckSpec::PhiAnnihilates { map: "phi".into() },
                CheckSpec::IsometryOnCoordinate { map: "phi".into(), coordinate: 1 },
                CheckSpec::AdjointComposition { map: "phi".into(), expected: "psi".into() },
            ];
            s
        }
        "linear-uat" => {
            let mut s = base(
                "linear-uat",
                "C_{Az} is uniformly asymptotically Toeplitz with asymptotic symbol zero when \
                 every eigenvalue of the contraction A lies inside the open unit disk; the decay \
                 obeys ||Phi^m|| <= sup|<Az,z>|^m ||C_{Az}||",
                2,
                10,
                Mode::Uniform,
            );
            s.maps.insert(
                "a".into(),
                PolySelfMap::diagonal(&[crat_ratio(1, 2, 0, 1), crat_ratio(1, 3, 0, 1)]),
            );
            s.recipe = Some(Recipe::Compose("a".into()));
            s.params.m_max = 10;
            s.params.samples = 50_000;
            s.params.bound_map = Some("a".into());
            s.params.classify_map = Some("a".into());
            s.params.expect = Some("converges-to-zero".into());
            s
        }
        "linear-non-uat" => {
            let mut s = base(
                "linear-non-uat",
                "C_{Az} is not uniformly asymptotically Toeplitz when A has a unimodular \
                 eigenvalue lambda with A* zeta = conj(lambda) zeta: Rayleigh-quotient \
                 certificates keep ||Phi^m|| away from zero",
                2,
                12,
                Mode::Uniform,
            );
            s.maps.insert(
                "a".into(),
                PolySelfMap::diagonal(&[crat(1, 0), crat_ratio(1, 2, 0, 1)]),
            );
            s.recipe = Some(Recipe::Compose("a".into()));
            s.params.m_max = 8;
            s.params.classify_map = Some("a".into());
            s.params.certificate = Some(CertificateSpec {
                map: "a".into(),
                zeta: vec![crat(1, 0), crat(0, 0)],
                eta: vec![crat(1, 0), crat(0, 0)],
                s_max: 12,
                powers: 4,
            });
            s.params.expect = Some("non-convergent".into());
            s
        }
        "davie-jewell" => {
            let mut s = base(
                "davie-jewell",
                "an operator is Toeplitz exactly when it is a fixed point of Phi: \
                 Phi(T_g) = T_g entry for entry, for a pseudo-random symbol g",
                2,
                10,
                Mode::Uniform,
            );
            let seed_val = seed.unwrap_or(1234);
            s.symbols.insert("g".into(), random_symbol(2, 2, 4, seed_val));
            s.recipe = Some(Recipe::Toeplitz("g".into()));
            s.params.m_max = 4;
            s.params.expect = Some("converges-to-toeplitz".into());
            s.params.checks = vec![CheckSpec::PhiFixedPoint { symbol: "g".into() }];
            s
        }
        "induction-formula" => {
            let mut s = base(
                "induction-formula",
                "Phi^m(C_eta^* T_g C_phi) = C_eta^* T_{g <phi,eta>^m} C_phi exactly on the \
                 certified block, for linear contractions phi, eta",
                2,
                10,
                Mode::Identity,
            );
            s.maps.insert(
                "phi".into(),
                PolySelfMap::linear(&[
                    vec![crat_ratio(1, 2, 0, 1), crat_ratio(1, 4, 0, 1)],
                    vec![crat(0, 0), crat_ratio(1, 3, 0, 1)],
                ])
                .expect("square matrix"),
            );
            s.maps.insert(
                "eta".into(),
                PolySelfMap::linear(&[
                    vec![crat_ratio(1, 3, 0, 1), crat(0, 0)],
                    vec![crat_ratio(1, 6, 1, 8), crat_ratio(1, 2, 0, 1)],
                ])
                .expect("square matrix"),
            );
            let mut g = SphereSymbol::constant(2, crat_one());
            g.add_term(
                MultiIndex::new(vec![1, 1]),
                MultiIndex::zero(2),
                crat_ratio(1, 2, 0, 1),
            );
            g.add_term(
                MultiIndex::new(vec![0, 1]),
                MultiIndex::new(vec![1, 0]),
                crat_ratio(-1, 3, 1, 5),
            );
            s.symbols.insert("g".into(), g);
            s.params.checks = vec![CheckSpec::Induction {
                g: "g".into(),
                phi: "phi".into(),
                eta: "eta".into(),
                m_values: vec![1, 2, 3],
            }];
            s
        }
        "cesaro-msat" => {
            let lambda = crat_ratio(33, 65, 56, 65); // exactly unimodular, ~59.5 degrees
            let mut s = base(
                "cesaro-msat",
                "Cesaro means (1/m) sum_j Phi^j(C_phi) tend strongly to zero for a non-identity \
                 rotation phi(z) = lambda z, at the geometric-sum rate 2/(m |1-lambda|)",
                2,
                10,
                Mode::Cesaro,
            );
            s.maps.insert("rot".into(), PolySelfMap::scalar(2, lambda.clone()));
            s.recipe = Some(Recipe::Compose("rot".into()));
            s.params.m_max = 6;
            s.params.probes = vec![
                ProbeSpec::Monomial(MultiIndex::new(vec![0, 1])),
                ProbeSpec::Monomial(MultiIndex::new(vec![1, 0])),
                ProbeSpec::Monomial(MultiIndex::new(vec![1, 1])),
                ProbeSpec::Monomial(MultiIndex::new(vec![0, 3])),
            ];
            s.params.checks = vec![CheckSpec::CesaroRotationBound {
                lambda,
                max_degree: 4,
                m_max: 6,
            }];
            s
        }
        "inner-1d" => {
            let mut s = base(
                "inner-1d",
                "on the disk, phi(z) = z^2 gives ||Phi^m(C_phi) 1|| = 1 (C_phi is not strongly \
                 asymptotically Toeplitz) while Phi^m(C_phi^*) kills reproducing kernels at the \
                 rate |a|^m (C_phi^* is)",
                1,
                16,
                Mode::Strong,
            );
            let mut comp = Polynomial::new();
            comp.insert(MultiIndex::new(vec![2]), crat_one());
            s.maps
                .insert("sq".into(), PolySelfMap::new(1, vec![comp]).expect("one component"));
            s.recipe = Some(Recipe::Compose("sq".into()));
            s.params.m_max = 8;
            s.params.probes = vec![
                ProbeSpec::Monomial(MultiIndex::new(vec![0])),
                ProbeSpec::Kernel(vec![crat_ratio(1, 2, 0, 1)]),
            ];
            s.params.checks = vec![
                CheckSpec::ConstantUnitProbe {
                    monomial: MultiIndex::new(vec![0]),
                    m_max: 8,
                },
                CheckSpec::KernelDecay {
                    point: vec![crat_ratio(1, 2, 0, 1)],
                    rate: rat(1, 2),
                    slack: rat(1, 100),
                    m_max: 8,
                    adjoint: true,
                },
            ];
            s
        }
        "compact-uat" => {
            let mut s = base(
                "compact-uat",
                "Phi^m annihilates rank-one operators once m exceeds the degree of the right \
                 factor, so T_f + (u x v) is uniformly asymptotically Toeplitz with asymptotic \
                 symbol f",
                2,
                8,
                Mode::Uniform,
            );
            let mut f = SphereSymbol::coordinate(2, 0);
            f.add_term(
                MultiIndex::zero(2),
                MultiIndex::new(vec![0, 1]),
                crat_ratio(1, 3, 0, 1),
            );
            s.symbols.insert("f".into(), f);
            s.vectors.insert(
                "u".into(),
                vec![
                    (MultiIndex::new(vec![1, 0]), crat_one()),
                    (MultiIndex::new(vec![0, 2]), crat(2, 0)),
                ],
            );
            s.vectors
                .insert("v".into(), vec![(MultiIndex::new(vec![1, 1]), crat_one())]);
            s.recipe = Some(Recipe::Sum(
                Box::new(Recipe::Toeplitz("f".into())),
                Box::new(Recipe::RankOne("u".into(), "v".into())),
            ));
            s.params.m_max = 5;
            s.params.expect = Some("converges-to-toeplitz".into());
            s.params.checks = vec![CheckSpec::RankOneNilpotent {
                u: "u".into(),
                v: "v".into(),
            }];
            s
        }
        "norm-lower-bound" => {
            let lambda = crat_ratio(4059, 5741, 4060, 5741); // exactly unimodular, ~45 degrees
            let mut s = base(
                "norm-lower-bound",
                "||T_f C_phi|| >= |f(zeta)| via the concentrating peak functions \
                 g_s = (1+<z,eta>)^s; the Rayleigh quotients q_s increase toward |f(zeta)|",
                2,
                12,
                Mode::LowerBound,
            );
            s.symbols.insert(
                "f".into(),
                SphereSymbol::monomial(MultiIndex::unit(2, 0), MultiIndex::unit(2, 0), crat_one())
                    .expect("same dimension"),
            );
            s.maps.insert("rot".into(), PolySelfMap::scalar(2, lambda.clone()));
            s.params.symbol = Some("f".into());
            s.params.map = Some("rot".into());
            s.params.zeta = Some(vec![crat(1, 0), crat(0, 0)]);
            s.params.eta = Some(vec![lambda, crat(0, 0)]);
            s.params.s_max = 12;
            s.params.checks = vec![CheckSpec::LowerBoundMonotone];
            s
        }
        "frame-invariance" => {
            let mut s = base(
                "frame-invariance",
                "Phi does not depend on the orthonormal coordinate frame: \
                 sum_j T_{fbar_j} A T_{f_j} with f_j(z) = <z, u_j> matches the coordinate form",
                2,
                8,
                Mode::Identity,
            );
            s.maps.insert(
                "a".into(),
                PolySelfMap::diagonal(&[crat_ratio(1, 2, 0, 1), crat_ratio(1, 3, 0, 1)]),
            );
            s.recipe = Some(Recipe::Compose("a".into()));
            s.params.checks = vec![CheckSpec::FrameInvariance {
                count: 5,
                tolerance: 1e-10,
            }];
            s
        }
        "oracle-validate" => {
            let mut s = base(
                "oracle-validate",
                "closed-form Gram weights and Toeplitz matrix entries agree with Monte Carlo \
                 integration over the sphere within 4 standard errors",
                2,
                4,
                Mode::OracleValidate,
            );
            s.params.samples = 100_000;
            s.params.max_degree = 4;
            s.params.entries = 30;
            s.params.expect = Some("oracle-consistent".into());
            s
        }
        _ => return None,
    };
    if let Some(seed) = seed {
        spec.params.seed = seed;
        if spec.name == "davie-jewell" {
            spec.symbols.insert("g".into(), random_symbol(2, 2, 4, seed));
        }
    }
    Some(spec)
}
