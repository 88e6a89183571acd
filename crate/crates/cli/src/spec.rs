//! Experiment specification: a JSON document with exact numbers.
//!
//! Rationals are `{"num": i, "den": j}` (or a bare integer); complex scalars
//! are `{"re": <rational>, "im": <rational>}` (or a bare rational). The
//! operator recipe is an expression tree of `{"op": ..., "args": [...]}`
//! nodes. Floats are accepted only for diagnostic parameters.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::Value;

use asytop::basis::MultiIndex;
use asytop::exact::{rat_int, CRat, Rat};
use asytop::symbols::{PolySelfMap, Polynomial, SphereSymbol};
use num::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Uniform,
    Strong,
    Cesaro,
    LowerBound,
    ClassifyLinear,
    OracleValidate,
    /// Exactness checks only (an extension mode used by several presets).
    Identity,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Uniform => "uniform",
            Mode::Strong => "strong",
            Mode::Cesaro => "cesaro",
            Mode::LowerBound => "lower-bound",
            Mode::ClassifyLinear => "classify-linear",
            Mode::OracleValidate => "oracle-validate",
            Mode::Identity => "identity",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "uniform" => Mode::Uniform,
            "strong" => Mode::Strong,
            "cesaro" => Mode::Cesaro,
            "lower-bound" => Mode::LowerBound,
            "classify-linear" => Mode::ClassifyLinear,
            "oracle-validate" => Mode::OracleValidate,
            "identity" => Mode::Identity,
            other => bail!("unknown diagnostic mode '{other}'"),
        })
    }
}

/// A probe vector request.
#[derive(Debug, Clone)]
pub enum ProbeSpec {
    Monomial(MultiIndex),
    Kernel(Vec<CRat>),
}

/// Certificate request: attach q_{s_max}(f^m) for f = ⟨map, id⟩, m ≤ powers.
#[derive(Debug, Clone)]
pub struct CertificateSpec {
    pub map: String,
    pub zeta: Vec<CRat>,
    pub eta: Vec<CRat>,
    pub s_max: u32,
    pub powers: u32,
}

/// Exactness checks runnable by any experiment.
#[derive(Debug, Clone)]
pub enum CheckSpec {
    Coisometry,
    PhiFixedPoint { symbol: String },
    Induction { g: String, phi: String, eta: String, m_values: Vec<u32> },
    PhiAnnihilates { map: String },
    AdjointComposition { map: String, expected: String },
    IsometryOnCoordinate { map: String, coordinate: usize },
    RankOneNilpotent { u: String, v: String },
    FrameInvariance { count: u32, tolerance: f64 },
    ConstantUnitProbe { monomial: MultiIndex, m_max: u32 },
    KernelDecay { point: Vec<CRat>, rate: Rat, slack: Rat, m_max: u32, adjoint: bool },
    CesaroRotationBound { lambda: CRat, max_degree: u32, m_max: u32 },
    LowerBoundMonotone,
}

#[derive(Debug, Clone)]
pub struct Params {
    pub m_max: u32,
    pub s_max: u32,
    pub samples: u64,
    pub seed: u64,
    pub expect: Option<String>,
    pub probes: Vec<ProbeSpec>,
    pub bound_map: Option<String>,
    pub certificate: Option<CertificateSpec>,
    pub classify_map: Option<String>,
    /// lower-bound mode inputs
    pub symbol: Option<String>,
    pub map: Option<String>,
    pub zeta: Option<Vec<CRat>>,
    pub eta: Option<Vec<CRat>>,
    /// classify-linear input
    pub matrix: Option<Vec<Vec<CRat>>>,
    /// oracle-validate inputs
    pub max_degree: u32,
    pub entries: u32,
    pub checks: Vec<CheckSpec>,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            m_max: 4,
            s_max: 8,
            samples: 10_000,
            seed: 1234,
            expect: None,
            probes: Vec::new(),
            bound_map: None,
            certificate: None,
            classify_map: None,
            symbol: None,
            map: None,
            zeta: None,
            eta: None,
            matrix: None,
            max_degree: 4,
            entries: 30,
            checks: Vec::new(),
        }
    }
}

/// Operator recipe node.
#[derive(Debug, Clone)]
pub enum Recipe {
    Toeplitz(String),
    Compose(String),
    Adjoint(Box<Recipe>),
    Product(Box<Recipe>, Box<Recipe>),
    Sum(Box<Recipe>, Box<Recipe>),
    Scale(CRat, Box<Recipe>),
    RankOne(String, String),
    Identity,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub name: String,
    pub statement: Option<String>,
    pub dimension: usize,
    pub truncation: u32,
    pub symbols: BTreeMap<String, SphereSymbol>,
    pub maps: BTreeMap<String, PolySelfMap>,
    /// Named polynomials used as rank-one factors, as (monomial, coeff) lists.
    pub vectors: BTreeMap<String, Vec<(MultiIndex, CRat)>>,
    pub recipe: Option<Recipe>,
    pub diagnostic: Mode,
    pub params: Params,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).context("experiment spec is not valid JSON")?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| anyhow!("spec must be a JSON object"))?;
        let name = req_str(obj, "name")?.to_string();
        let statement = obj.get("statement").and_then(Value::as_str).map(str::to_string);
        let dimension = req_u64(obj, "dimension")? as usize;
        if dimension == 0 {
            bail!("dimension must be at least 1");
        }
        let truncation = req_u64(obj, "truncation")? as u32;

        let mut symbols = BTreeMap::new();
        if let Some(map) = obj.get("symbols") {
            let map = map.as_object().ok_or_else(|| anyhow!("'symbols' must be an object"))?;
            for (k, val) in map {
                symbols.insert(k.clone(), parse_symbol(val, dimension).context(format!("symbol '{k}'"))?);
            }
        }
        let mut maps = BTreeMap::new();
        if let Some(map) = obj.get("maps") {
            let map = map.as_object().ok_or_else(|| anyhow!("'maps' must be an object"))?;
            for (k, val) in map {
                maps.insert(k.clone(), parse_map(val, dimension).context(format!("map '{k}'"))?);
            }
        }
        let mut vectors = BTreeMap::new();
        if let Some(map) = obj.get("vectors") {
            let map = map.as_object().ok_or_else(|| anyhow!("'vectors' must be an object"))?;
            for (k, val) in map {
                vectors.insert(k.clone(), parse_vector(val, dimension).context(format!("vector '{k}'"))?);
            }
        }

        let recipe = match obj.get("recipe") {
            Some(r) => Some(parse_recipe(r).context("recipe")?),
            None => None,
        };
        let diagnostic = Mode::parse(req_str(obj, "diagnostic")?)?;
        let params = match obj.get("params") {
            Some(p) => parse_params(p, dimension)?,
            None => Params::default(),
        };

        let spec = Self {
            name,
            statement,
            dimension,
            truncation,
            symbols,
            maps,
            vectors,
            recipe,
            diagnostic,
            params,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if let Some(recipe) = &self.recipe {
            self.validate_recipe(recipe)?;
        }
        let p = &self.params;
        for name in [&p.bound_map, &p.classify_map, &p.map] {
            if let Some(name) = name {
                if !self.maps.contains_key(name) {
                    bail!("params reference undeclared map '{name}'");
                }
            }
        }
        if let Some(sym) = &p.symbol {
            if !self.symbols.contains_key(sym) {
                bail!("params reference undeclared symbol '{sym}'");
            }
        }
        if let Some(c) = &p.certificate {
            if !self.maps.contains_key(&c.map) {
                bail!("certificate references undeclared map '{}'", c.map);
            }
        }
        for check in &p.checks {
            self.validate_check(check)?;
        }
        Ok(())
    }

    fn validate_recipe(&self, r: &Recipe) -> Result<()> {
        match r {
            Recipe::Toeplitz(s) => {
                if !self.symbols.contains_key(s) {
                    bail!("recipe references undeclared symbol '{s}'");
                }
            }
            Recipe::Compose(m) => {
                if !self.maps.contains_key(m) {
                    bail!("recipe references undeclared map '{m}'");
                }
            }
            Recipe::Adjoint(x) | Recipe::Scale(_, x) => self.validate_recipe(x)?,
            Recipe::Product(a, b) | Recipe::Sum(a, b) => {
                self.validate_recipe(a)?;
                self.validate_recipe(b)?;
            }
            Recipe::RankOne(u, v) => {
                for name in [u, v] {
                    if !self.vectors.contains_key(name) {
                        bail!("recipe references undeclared vector '{name}'");
                    }
                }
            }
            Recipe::Identity => {}
        }
        Ok(())
    }

    fn validate_check(&self, c: &CheckSpec) -> Result<()> {
        let need_map = |m: &String| -> Result<()> {
            if !self.maps.contains_key(m) {
                bail!("check references undeclared map '{m}'");
            }
            Ok(())
        };
        match c {
            CheckSpec::PhiFixedPoint { symbol } => {
                if !self.symbols.contains_key(symbol) {
                    bail!("check references undeclared symbol '{symbol}'");
                }
            }
            CheckSpec::Induction { g, phi, eta, .. } => {
                if !self.symbols.contains_key(g) {
                    bail!("check references undeclared symbol '{g}'");
                }
                need_map(phi)?;
                need_map(eta)?;
            }
            CheckSpec::PhiAnnihilates { map } => need_map(map)?,
            CheckSpec::AdjointComposition { map, expected } => {
                need_map(map)?;
                need_map(expected)?;
            }
            CheckSpec::IsometryOnCoordinate { map, coordinate } => {
                need_map(map)?;
                if *coordinate >= self.dimension {
                    bail!("coordinate {coordinate} out of range for dimension {}", self.dimension);
                }
            }
            CheckSpec::RankOneNilpotent { u, v } => {
                for name in [u, v] {
                    if !self.vectors.contains_key(name) {
                        bail!("check references undeclared vector '{name}'");
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn req_str<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| anyhow!("missing or non-string field '{key}'"))
}

fn req_u64(obj: &serde_json::Map<String, Value>, key: &str) -> Result<u64> {
    obj.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("missing or non-integer field '{key}'"))
}

/// `{"num": i, "den": j}` or a bare integer.
pub fn parse_rational(v: &Value) -> Result<Rat> {
    if let Some(i) = v.as_i64() {
        return Ok(rat_int(i));
    }
    let obj = v.as_object().ok_or_else(|| anyhow!("expected rational {{num, den}} or integer"))?;
    let num = obj.get("num").and_then(Value::as_i64).ok_or_else(|| anyhow!("rational needs integer 'num'"))?;
    let den = obj.get("den").and_then(Value::as_i64).ok_or_else(|| anyhow!("rational needs integer 'den'"))?;
    if den == 0 {
        bail!("rational denominator must be nonzero");
    }
    Ok(Rat::new(BigInt::from(num), BigInt::from(den)))
}

/// `{"re": <rational>, "im": <rational>}` or a bare rational.
pub fn parse_complex(v: &Value) -> Result<CRat> {
    if let Some(obj) = v.as_object() {
        if obj.contains_key("re") || obj.contains_key("im") {
            let re = obj.get("re").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
            let im = obj.get("im").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
            return Ok(CRat::new(re, im));
        }
    }
    Ok(CRat::new(parse_rational(v)?, num::Zero::zero()))
}

fn parse_exponents(v: &Value, dim: usize) -> Result<MultiIndex> {
    let arr = v.as_array().ok_or_else(|| anyhow!("expected an exponent array"))?;
    if arr.len() != dim {
        bail!("exponent vector has length {}, expected {dim}", arr.len());
    }
    let exps: Result<Vec<u32>> = arr
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as u32)
                .ok_or_else(|| anyhow!("exponents must be non-negative integers"))
        })
        .collect();
    Ok(MultiIndex::new(exps?))
}

fn parse_symbol(v: &Value, dim: usize) -> Result<SphereSymbol> {
    let arr = v.as_array().ok_or_else(|| anyhow!("symbol must be an array of terms"))?;
    let mut s = SphereSymbol::zero(dim);
    for term in arr {
        let obj = term.as_object().ok_or_else(|| anyhow!("symbol term must be an object"))?;
        let mu = parse_exponents(obj.get("mu").ok_or_else(|| anyhow!("term needs 'mu'"))?, dim)?;
        let nu = parse_exponents(obj.get("nu").ok_or_else(|| anyhow!("term needs 'nu'"))?, dim)?;
        let re = obj.get("re").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
        let im = obj.get("im").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
        s.add_term(mu, nu, CRat::new(re, im));
    }
    Ok(s)
}

fn parse_map(v: &Value, dim: usize) -> Result<PolySelfMap> {
    let comps = v.as_array().ok_or_else(|| anyhow!("map must be an array of components"))?;
    if comps.len() != dim {
        bail!("map has {} components, expected {dim}", comps.len());
    }
    let mut components = Vec::with_capacity(dim);
    for comp in comps {
        let terms = comp.as_array().ok_or_else(|| anyhow!("map component must be an array of terms"))?;
        let mut p = Polynomial::new();
        for term in terms {
            let obj = term.as_object().ok_or_else(|| anyhow!("map term must be an object"))?;
            let e = parse_exponents(obj.get("exponents").ok_or_else(|| anyhow!("term needs 'exponents'"))?, dim)?;
            let re = obj.get("re").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
            let im = obj.get("im").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
            let c = CRat::new(re, im);
            if !num::Zero::is_zero(&c) {
                p.insert(e, c);
            }
        }
        components.push(p);
    }
    PolySelfMap::new(dim, components).map_err(|e| anyhow!("{e}"))
}

fn parse_vector(v: &Value, dim: usize) -> Result<Vec<(MultiIndex, CRat)>> {
    let terms = v.as_array().ok_or_else(|| anyhow!("vector must be an array of terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let obj = term.as_object().ok_or_else(|| anyhow!("vector term must be an object"))?;
        let e = parse_exponents(obj.get("exponents").ok_or_else(|| anyhow!("term needs 'exponents'"))?, dim)?;
        let re = obj.get("re").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
        let im = obj.get("im").map(parse_rational).transpose()?.unwrap_or_else(num::Zero::zero);
        out.push((e, CRat::new(re, im)));
    }
    Ok(out)
}

fn parse_recipe(v: &Value) -> Result<Recipe> {
    let obj = v.as_object().ok_or_else(|| anyhow!("recipe node must be an object"))?;
    let op = req_str(obj, "op")?;
    let args = obj.get("args").and_then(Value::as_array).cloned().unwrap_or_default();
    let arg_str = |i: usize| -> Result<String> {
        args.get(i)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| anyhow!("op '{op}' needs a string argument at position {i}"))
    };
    Ok(match op {
        "toeplitz" => Recipe::Toeplitz(arg_str(0)?),
        "compose" => Recipe::Compose(arg_str(0)?),
        "adjoint" => Recipe::Adjoint(Box::new(parse_recipe(
            args.first().ok_or_else(|| anyhow!("adjoint needs one argument"))?,
        )?)),
        "product" => {
            if args.len() != 2 {
                bail!("product needs exactly two arguments");
            }
            Recipe::Product(Box::new(parse_recipe(&args[0])?), Box::new(parse_recipe(&args[1])?))
        }
        "sum" => {
            if args.len() != 2 {
                bail!("sum needs exactly two arguments");
            }
            Recipe::Sum(Box::new(parse_recipe(&args[0])?), Box::new(parse_recipe(&args[1])?))
        }
        "scale" => {
            if args.len() != 2 {
                bail!("scale needs a scalar and a sub-recipe");
            }
            Recipe::Scale(parse_complex(&args[0])?, Box::new(parse_recipe(&args[1])?))
        }
        "rank_one" => Recipe::RankOne(arg_str(0)?, arg_str(1)?),
        "identity" => Recipe::Identity,
        other => bail!("unknown recipe op '{other}'"),
    })
}

fn parse_point(v: &Value, dim: usize) -> Result<Vec<CRat>> {
    let arr = v.as_array().ok_or_else(|| anyhow!("point must be an array"))?;
    if arr.len() != dim {
        bail!("point has {} coordinates, expected {dim}", arr.len());
    }
    arr.iter().map(parse_complex).collect()
}

fn parse_params(v: &Value, dim: usize) -> Result<Params> {
    let obj = v.as_object().ok_or_else(|| anyhow!("'params' must be an object"))?;
    let mut p = Params::default();
    if let Some(x) = obj.get("m_max") {
        p.m_max = x.as_u64().ok_or_else(|| anyhow!("m_max must be an integer"))? as u32;
    }
    if let Some(x) = obj.get("s_max") {
        p.s_max = x.as_u64().ok_or_else(|| anyhow!("s_max must be an integer"))? as u32;
    }
    if let Some(x) = obj.get("samples") {
        p.samples = x.as_u64().ok_or_else(|| anyhow!("samples must be an integer"))?;
    }
    if let Some(x) = obj.get("seed") {
        p.seed = x.as_u64().ok_or_else(|| anyhow!("seed must be an integer"))?;
    }
    if let Some(x) = obj.get("expect") {
        p.expect = Some(
            x.as_str()
                .ok_or_else(|| anyhow!("expect must be a string"))?
                .to_string(),
        );
    }
    if let Some(x) = obj.get("max_degree") {
        p.max_degree = x.as_u64().ok_or_else(|| anyhow!("max_degree must be an integer"))? as u32;
    }
    if let Some(x) = obj.get("entries") {
        p.entries = x.as_u64().ok_or_else(|| anyhow!("entries must be an integer"))? as u32;
    }
    for (key, slot) in [
        ("bound_map", &mut p.bound_map),
        ("classify_map", &mut p.classify_map),
        ("symbol", &mut p.symbol),
        ("map", &mut p.map),
    ] {
        if let Some(x) = obj.get(key) {
            *slot = Some(
                x.as_str()
                    .ok_or_else(|| anyhow!("{key} must be a string"))?
                    .to_string(),
            );
        }
    }
    if let Some(x) = obj.get("zeta") {
        p.zeta = Some(parse_point(x, dim)?);
    }
    if let Some(x) = obj.get("eta") {
        p.eta = Some(parse_point(x, dim)?);
    }
    if let Some(x) = obj.get("matrix") {
        let rows = x.as_array().ok_or_else(|| anyhow!("matrix must be an array of rows"))?;
        let mut m = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| anyhow!("matrix row must be an array"))?;
            m.push(row.iter().map(parse_complex).collect::<Result<Vec<_>>>()?);
        }
        p.matrix = Some(m);
    }
    if let Some(x) = obj.get("probes") {
        let arr = x.as_array().ok_or_else(|| anyhow!("probes must be an array"))?;
        for probe in arr {
            let obj = probe.as_object().ok_or_else(|| anyhow!("probe must be an object"))?;
            if let Some(mv) = obj.get("monomial") {
                p.probes.push(ProbeSpec::Monomial(parse_exponents(mv, dim)?));
            } else if let Some(pt) = obj.get("kernel") {
                p.probes.push(ProbeSpec::Kernel(parse_point(pt, dim)?));
            } else {
                bail!("probe must have 'monomial' or 'kernel'");
            }
        }
    }
    if let Some(x) = obj.get("certificate") {
        let obj = x.as_object().ok_or_else(|| anyhow!("certificate must be an object"))?;
        p.certificate = Some(CertificateSpec {
            map: req_str(obj, "map")?.to_string(),
            zeta: parse_point(obj.get("zeta").ok_or_else(|| anyhow!("certificate needs 'zeta'"))?, dim)?,
            eta: parse_point(obj.get("eta").ok_or_else(|| anyhow!("certificate needs 'eta'"))?, dim)?,
            s_max: req_u64(obj, "s_max")? as u32,
            powers: req_u64(obj, "powers")? as u32,
        });
    }
    if let Some(x) = obj.get("checks") {
        let arr = x.as_array().ok_or_else(|| anyhow!("checks must be an array"))?;
        for check in arr {
            p.checks.push(parse_check(check, dim)?);
        }
    }
    Ok(p)
}


fn parse_check(v: &Value, dim: usize) -> Result<CheckSpec> {
    let obj = v.as_object().ok_or_else(|| anyhow!("check must be an object"))?;
    let kind = req_str(obj, "kind")?;
    let get_str = |key: &str| -> Result<String> {
        Ok(req_str(obj, key)?.to_string())
    };
    Ok(match kind {
        "coisometry" => CheckSpec::Coisometry,
        "phi-fixed-point" => CheckSpec::PhiFixedPoint { symbol: get_str("symbol")? },
        "induction" => {
            let ms = obj
                .get("m_values")
                .and_then(Value::as_array)
                .ok_or_else(|| anyhow!("induction check needs 'm_values'"))?
                .iter()
                .map(|x| x.as_u64().map(|u| u as u32).ok_or_else(|| anyhow!("m_values must be integers")))
                .collect::<Result<Vec<_>>>()?;
            CheckSpec::Induction {
                g: get_str("g")?,
                phi: get_str("phi")?,
                eta: get_str("eta")?,
                m_values: ms,
            }
        }
        "phi-annihilates" => CheckSpec::PhiAnnihilates { map: get_str("map")? },
        "adjoint-composition" => CheckSpec::AdjointComposition {
            map: get_str("map")?,
            expected: get_str("expected")?,
        },
        "isometry-on-coordinate" => CheckSpec::IsometryOnCoordinate {
            map: get_str("map")?,
            coordinate: req_u64(obj, "coordinate")? as usize,
        },
        "rank-one-nilpotent" => CheckSpec::RankOneNilpotent { u: get_str("u")?, v: get_str("v")? },
        "frame-invariance" => CheckSpec::FrameInvariance {
            count: req_u64(obj, "count")? as u32,
            tolerance: obj
                .get("tolerance")
                .and_then(Value::as_f64)
                .unwrap_or(1e-10),
        },
        "constant-unit-probe" => CheckSpec::ConstantUnitProbe {
            monomial: parse_exponents(
                obj.get("monomial").ok_or_else(|| anyhow!("check needs 'monomial'"))?,
                dim,
            )?,
            m_max: req_u64(obj, "m_max")? as u32,
        },
        "kernel-decay" => CheckSpec::KernelDecay {
            point: parse_point(obj.get("point").ok_or_else(|| anyhow!("check needs 'point'"))?, dim)?,
            rate: parse_rational(obj.get("rate").ok_or_else(|| anyhow!("check needs 'rate'"))?)?,
            slack: parse_rational(obj.get("slack").ok_or_else(|| anyhow!("check needs 'slack'"))?)?,
            m_max: req_u64(obj, "m_max")? as u32,
            adjoint: obj.get("adjoint").and_then(Value::as_bool).unwrap_or(false),
        },
        "cesaro-rotation-bound" => CheckSpec::CesaroRotationBound {
            lambda: parse_complex(obj.get("lambda").ok_or_else(|| anyhow!("check needs 'lambda'"))?)?,
            max_degree: req_u64(obj, "max_degree")? as u32,
            m_max: req_u64(obj, "m_max")? as u32,
        },
        "lower-bound-monotone" => CheckSpec::LowerBoundMonotone,
        other => bail!("unknown check kind '{other}'"),
    })
}
