//! Symbols on the sphere and polynomial self-maps of the ball.
//!
//! A `SphereSymbol` is a finite bi-graded coefficient map f = Σ c_{μν} z^μ z̄^ν.
//! Products and powers are formal: no reduction modulo the sphere relation
//! Σ zⱼz̄ⱼ = 1 is performed. The Toeplitz matrix construction downstream is
//! relation-consistent, so symbols equal a.e. on 𝕊ₙ produce identical
//! operators even though their coefficient maps differ.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::Zero;
use serde::Serialize;

use crate::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::exact::{abs_sq, conj, crat_one, rat_to_string, to_c64, to_f64, CRat, Rat};
use crate::oracle::SphereSampler;

/// Holomorphic polynomial: coefficient map from multi-indices to scalars.
pub type Polynomial = BTreeMap<MultiIndex, CRat>;

/// Finite sum Σ c_{μν} z^μ z̄^ν on 𝕊ₙ, in canonical form (no zero terms).
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSymbol {
    dim: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), CRat>,
}

impl SphereSymbol {
    pub fn zero(n: usize) -> Self {
        Self {
            dim: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: CRat) -> Self {
        let mut s = Self::zero(n);
        s.add_term(MultiIndex::zero(n), MultiIndex::zero(n), c);
        s
    }

    /// The single term c · z^μ z̄^ν.
    pub fn monomial(mu: MultiIndex, nu: MultiIndex, c: CRat) -> Result<Self> {
        if mu.len() != nu.len() {
            return Err(Error::DimensionMismatch {
                expected: mu.len(),
                got: nu.len(),
            });
        }
        let mut s = Self::zero(mu.len());
        s.add_term(mu, nu, c);
        Ok(s)
    }

    /// The coordinate symbol z_j (0-based).
    pub fn coordinate(n: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, j), MultiIndex::zero(n), crat_one())
            .expect("same dimension")
    }

    /// Σ_j zⱼ z̄ⱼ, which equals 1 a.e. on the sphere.
    pub fn sphere_relation(n: usize) -> Self {
        let mut s = Self::zero(n);
        for j in 0..n {
            s.add_term(MultiIndex::unit(n, j), MultiIndex::unit(n, j), crat_one());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<(MultiIndex, MultiIndex), CRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds c·z^μ z̄^ν, keeping the map canonical.
    pub fn add_term(&mut self, mu: MultiIndex, nu: MultiIndex, c: CRat) {
        debug_assert_eq!(mu.len(), self.dim);
        debug_assert_eq!(nu.len(), self.dim);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((mu, nu)).or_insert_with(CRat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            // remove to stay canonical; re-borrow via key lookup
            let dead: Vec<_> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &SphereSymbol) -> Result<SphereSymbol> {
        self.check_dim(other.dim)?;
        let mut out = self.clone();
        for ((mu, nu), c) in &other.terms {
            out.add_term(mu.clone(), nu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CRat) -> SphereSymbol {
        let mut out = SphereSymbol::zero(self.dim);
        for ((mu, nu), v) in &self.terms {
            out.add_term(mu.clone(), nu.clone(), c * v);
        }
        out
    }

    /// Formal product of coefficient maps.
    pub fn product(&self, other: &SphereSymbol) -> Result<SphereSymbol> {
        self.check_dim(other.dim)?;
        let mut out = SphereSymbol::zero(self.dim);
        for ((mu1, nu1), c1) in &self.terms {
            for ((mu2, nu2), c2) in &other.terms {
                out.add_term(mu1.plus(mu2), nu1.plus(nu2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Complex conjugate symbol: swaps the holomorphic and antiholomorphic legs.
    pub fn conj(&self) -> SphereSymbol {
        let mut out = SphereSymbol::zero(self.dim);
        for ((mu, nu), c) in &self.terms {
            out.add_term(nu.clone(), mu.clone(), conj(c));
        }
        out
    }

    /// Formal m-th power; the zeroth power is the constant 1.
    pub fn power(&self, m: u32) -> SphereSymbol {
        let mut out = SphereSymbol::constant(self.dim, crat_one());
        for _ in 0..m {
            out = out.product(self).expect("same dimension");
        }
        out
    }

    /// Max |μ| over stored terms.
    pub fn holomorphic_degree(&self) -> u32 {
        self.terms.keys().map(|(mu, _)| mu.degree()).max().unwrap_or(0)
    }

    /// Max |ν| over stored terms.
    pub fn antiholomorphic_degree(&self) -> u32 {
        self.terms.keys().map(|(_, nu)| nu.degree()).max().unwrap_or(0)
    }

    /// Evaluate at a boundary point; `point` must satisfy |ζ| = 1 within 1e−12.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let norm: f64 = point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::OffSphere {
                deviation: (norm - 1.0).abs(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluate without the sphere check (used on points already normalized).
    pub fn eval_unchecked(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for ((mu, nu), c) in &self.terms {
            let mut t = to_c64(c);
            for j in 0..self.dim {
                t *= point[j].powu(mu.exp(j)) * point[j].conj().powu(nu.exp(j));
            }
            acc += t;
        }
        acc
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other,
            });
        }
        Ok(())
    }

    /// Exact serializable image: one record per term, rationals in lowest
    /// terms as `num/den` strings.
    pub fn dump(&self) -> SymbolDump {
        SymbolDump {
            dimension: self.dim,
            terms: self
                .terms
                .iter()
                .map(|((mu, nu), c)| SymbolTermDump {
                    mu: mu.exps().to_vec(),
                    nu: nu.exps().to_vec(),
                    re: rat_to_string(&c.re),
                    im: rat_to_string(&c.im),
                })
                .collect(),
        }
    }
}

/// Serializable exact image of a [`SphereSymbol`].
#[derive(Debug, Clone, Serialize)]
pub struct SymbolDump {
    pub dimension: usize,
    pub terms: Vec<SymbolTermDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolTermDump {
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub re: String,
    pub im: String,
}

impl fmt::Display for SphereSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((mu, nu), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}+{}i) z^{} zbar^{}", c.re, c.im, mu, nu)?;
        }
        Ok(())
    }
}

/// Polynomial map 𝔹ₙ → ℂⁿ with holomorphic polynomial components.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySelfMap {
    dim: usize,
    components: Vec<Polynomial>,
}

impl PolySelfMap {
    pub fn new(dim: usize, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: components.len(),
            });
        }
        let components = components
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Self { dim, components })
    }

    /// The identity map z ↦ z.
    pub fn identity(n: usize) -> Self {
        let components = (0..n)
            .map(|j| {
                let mut p = Polynomial::new();
                p.insert(MultiIndex::unit(n, j), crat_one());
                p
            })
            .collect();
        Self { dim: n, components }
    }

    /// Linear map z ↦ Az for an n×n matrix of exact scalars (row major).
    pub fn linear(matrix: &[Vec<CRat>]) -> Result<Self> {
        let n = matrix.len();
        for row in matrix {
            if row.len() != n {
                return Err(Error::InvalidInput("linear map matrix must be square".into()));
            }
        }
        let components = (0..n)
            .map(|i| {
                let mut p = Polynomial::new();
                for (j, a) in matrix[i].iter().enumerate() {
                    if !a.is_zero() {
                        p.insert(MultiIndex::unit(n, j), a.clone());
                    }
                }
                p
            })
            .collect();
        Ok(Self { dim: n, components })
    }

    /// Diagonal linear map z ↦ (a₁z₁, …, aₙzₙ).
    pub fn diagonal(diag: &[CRat]) -> Self {
        let n = diag.len();
        let components = (0..n)
            .map(|j| {
                let mut p = Polynomial::new();
                if !diag[j].is_zero() {
                    p.insert(MultiIndex::unit(n, j), diag[j].clone());
                }
                p
            })
            .collect();
        Self { dim: n, components }
    }

    /// Scalar rotation/contraction z ↦ λz.
    pub fn scalar(n: usize, lambda: CRat) -> Self {
        Self::diagonal(&vec![lambda; n])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Max total degree over the components (0 for the zero map).
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .flat_map(|p| p.keys().map(|a| a.degree()))
            .max()
            .unwrap_or(0)
    }

    /// Component i as a holomorphic sphere symbol.
    pub fn component_symbol(&self, i: usize) -> SphereSymbol {
        let mut s = SphereSymbol::zero(self.dim);
        for (mu, c) in &self.components[i] {
            s.add_term(mu.clone(), MultiIndex::zero(self.dim), c.clone());
        }
        s
    }

    pub fn eval(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|p| {
                let mut acc = Complex64::zero();
                for (mu, c) in p {
                    let mut t = to_c64(c);
                    for j in 0..self.dim {
                        t *= point[j].powu(mu.exp(j));
                    }
                    acc += t;
                }
                acc
            })
            .collect()
    }
}

/// Product of two holomorphic coefficient maps.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let key = ma.plus(mb);
            let entry = out.entry(key).or_insert_with(CRat::zero);
            *entry = entry.clone() + ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// ⟨φ,η⟩ = Σ_j φⱼ · conj(ηⱼ) as a sphere symbol (holomorphic leg from φ,
/// antiholomorphic leg from η).
pub fn pairing_symbol(phi: &PolySelfMap, eta: &PolySelfMap) -> Result<SphereSymbol> {
    if phi.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            got: eta.dim(),
        });
    }
    let mut out = SphereSymbol::zero(phi.dim());
    for j in 0..phi.dim() {
        for (mu, a) in phi.component(j) {
            for (nu, b) in eta.component(j) {
                out.add_term(mu.clone(), nu.clone(), a * &conj(b));
            }
        }
    }
    Ok(out)
}

/// Max of |f| over `n_samples` uniform sphere samples: a lower bound for
/// ‖f‖_{L^∞(𝕊ₙ)}, reproducible for a fixed seed.
pub fn sup_norm_estimate(f: &SphereSymbol, n_samples: u64, seed: u64) -> f64 {
    let mut sampler = SphereSampler::new(f.dim(), seed);
    let mut best: f64 = 0.0;
    for _ in 0..n_samples {
        let z = sampler.next_point();
        best = best.max(f.eval_unchecked(&z).norm());
    }
    best
}

/// Fraction of sphere samples ζ with |⟨φ(ζ),η(ζ)⟩| ≥ 1−ε: a statistical probe
/// of the exceptional set E(φ,η).
pub fn exceptional_set_fraction(
    phi: &PolySelfMap,
    eta: &PolySelfMap,
    eps: f64,
    n_samples: u64,
    seed: u64,
) -> Result<f64> {
    if phi.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            got: eta.dim(),
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput("epsilon must lie in (0,1)".into()));
    }
    let mut sampler = SphereSampler::new(phi.dim(), seed);
    let mut hits = 0u64;
    for _ in 0..n_samples {
        let z = sampler.next_point();
        let pv = phi.eval(&z);
        let ev = eta.eval(&z);
        let pairing: Complex64 = pv.iter().zip(&ev).map(|(a, b)| a * b.conj()).sum();
        if pairing.norm() >= 1.0 - eps {
            hits += 1;
        }
    }
    Ok(hits as f64 / n_samples as f64)
}

/// Exact ‖v‖² for a coefficient vector against the weighted monomial basis.
pub fn vector_norm_sq(coeffs: &[(MultiIndex, CRat)], n: usize) -> Result<Rat> {
    let mut acc = Rat::zero();
    for (alpha, c) in coeffs {
        acc += abs_sq(c) * crate::basis::monomial_norm_sq(alpha, n)?;
    }
    Ok(acc)
}

/// Convenience: float norm of an exact vector.
pub fn vector_norm(coeffs: &[(MultiIndex, CRat)], n: usize) -> Result<f64> {
    Ok(to_f64(&vector_norm_sq(coeffs, n)?).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{crat, crat_ratio, rat, rat_int};
    use proptest::prelude::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pairing_of_identity_with_itself_is_sphere_relation() {
        let id = PolySelfMap::identity(2);
        let p = pairing_symbol(&id, &id).unwrap();
        assert_eq!(p, SphereSymbol::sphere_relation(2));
        // equals 1 at any sphere point
        let z = [c64(0.6, 0.0), c64(0.0, 0.8)];
        let v = p.eval(&z).unwrap();
        assert!((v - c64(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pairing_of_shift_example() {
        // phi(z) = (0, z1), eta = id  ->  z1 zbar2
        let mut comp0 = Polynomial::new();
        comp0.clear();
        let mut comp1 = Polynomial::new();
        comp1.insert(MultiIndex::unit(2, 0), crat_one());
        let phi = PolySelfMap::new(2, vec![Polynomial::new(), comp1]).unwrap();
        let _ = comp0;
        let p = pairing_symbol(&phi, &PolySelfMap::identity(2)).unwrap();
        let expected = SphereSymbol::monomial(
            MultiIndex::unit(2, 0),
            MultiIndex::unit(2, 1),
            crat_one(),
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn pairing_of_diagonal_map() {
        let a = PolySelfMap::diagonal(&[crat_ratio(1, 2, 0, 1), crat_ratio(1, 3, 0, 1)]);
        let p = pairing_symbol(&a, &PolySelfMap::identity(2)).unwrap();
        let mut expected = SphereSymbol::zero(2);
        expected.add_term(
            MultiIndex::unit(2, 0),
            MultiIndex::unit(2, 0),
            crat_ratio(1, 2, 0, 1),
        );
        expected.add_term(
            MultiIndex::unit(2, 1),
            MultiIndex::unit(2, 1),
            crat_ratio(1, 3, 0, 1),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn symbol_power_and_conj_examples() {
        let z1zbar2 = SphereSymbol::monomial(
            MultiIndex::unit(2, 0),
            MultiIndex::unit(2, 1),
            crat_one(),
        )
        .unwrap();
        let sq = z1zbar2.power(2);
        let expected = SphereSymbol::monomial(
            MultiIndex::new(vec![2, 0]),
            MultiIndex::new(vec![0, 2]),
            crat_one(),
        )
        .unwrap();
        assert_eq!(sq, expected);

        let conj = z1zbar2.conj();
        let expected = SphereSymbol::monomial(
            MultiIndex::unit(2, 1),
            MultiIndex::unit(2, 0),
            crat_one(),
        )
        .unwrap();
        assert_eq!(conj, expected);

        let z1 = SphereSymbol::coordinate(2, 0);
        let zb1 = z1.conj();
        let prod = z1.product(&zb1).unwrap();
        let expected = SphereSymbol::monomial(
            MultiIndex::unit(2, 0),
            MultiIndex::unit(2, 0),
            crat_one(),
        )
        .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn eval_examples() {
        let rel = SphereSymbol::sphere_relation(3);
        let z = [c64(0.5, 0.5), c64(0.5, 0.0), c64(0.0, 0.5)];
        assert!((rel.eval(&z).unwrap() - c64(1.0, 0.0)).norm() < 1e-12);

        let z1 = SphereSymbol::coordinate(2, 0);
        let v = z1.eval(&[c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap();
        assert!((v - c64(1.0, 0.0)).norm() < 1e-15);

        // <Az, z> with A = diag(1, 1/2) at zeta = (1, 0) evaluates to 1
        let a = PolySelfMap::diagonal(&[crat(1, 0), crat_ratio(1, 2, 0, 1)]);
        let f = pairing_symbol(&a, &PolySelfMap::identity(2)).unwrap();
        let v = f.eval(&[c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap();
        assert!((v - c64(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_rejects_off_sphere_points() {
        let z1 = SphereSymbol::coordinate(2, 0);
        let err = z1.eval(&[c64(0.5, 0.0), c64(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::OffSphere { .. }));
    }

    #[test]
    fn sup_norm_estimates() {
        let rel = SphereSymbol::sphere_relation(2);
        let s = sup_norm_estimate(&rel, 1000, 7);
        assert!((s - 1.0).abs() < 1e-12);

        let a = PolySelfMap::diagonal(&[crat_ratio(1, 2, 0, 1), crat_ratio(1, 3, 0, 1)]);
        let f = pairing_symbol(&a, &PolySelfMap::identity(2)).unwrap();
        let s = sup_norm_estimate(&f, 100_000, 11);
        assert!(s <= 0.5 + 1e-12, "estimate {s} exceeds the true sup 1/2");
        assert!((s - 0.5).abs() < 1e-3, "estimate {s} not near 1/2");

        let z1 = SphereSymbol::coordinate(2, 0);
        let s = sup_norm_estimate(&z1, 100_000, 13);
        assert!(s <= 1.0 + 1e-12 && 1.0 - s < 5e-3, "estimate {s}");
    }

    #[test]
    fn exceptional_set_fractions() {
        let id = PolySelfMap::identity(2);
        let f = exceptional_set_fraction(&id, &id, 0.5, 2000, 3).unwrap();
        assert_eq!(f, 1.0);

        // phi(z) = (0, z1): |<phi, z>| = |z1 zbar2| <= 1/2 on S_2
        let mut comp1 = Polynomial::new();
        comp1.insert(MultiIndex::unit(2, 0), crat_one());
        let phi = PolySelfMap::new(2, vec![Polynomial::new(), comp1]).unwrap();
        let f = exceptional_set_fraction(&phi, &id, 0.1, 100_000, 5).unwrap();
        assert_eq!(f, 0.0);

        // diag(1, 1/2): small positive fraction shrinking with eps
        let a = PolySelfMap::diagonal(&[crat(1, 0), crat_ratio(1, 2, 0, 1)]);
        let f1 = exceptional_set_fraction(&a, &id, 0.1, 100_000, 5).unwrap();
        let f2 = exceptional_set_fraction(&a, &id, 0.01, 100_000, 5).unwrap();
        let f3 = exceptional_set_fraction(&a, &id, 0.001, 100_000, 5).unwrap();
        assert!(f1 > 0.0 && f1 < 0.2, "f1 = {f1}");
        assert!(f2 <= f1 && f3 <= f2, "not shrinking: {f1} {f2} {f3}");
    }

    #[test]
    fn pairing_with_itself_is_modulus_squared() {
        let mut comp0 = Polynomial::new();
        comp0.insert(MultiIndex::new(vec![0, 1]), crat_ratio(1, 2, 0, 1));
        let mut comp1 = Polynomial::new();
        comp1.insert(MultiIndex::new(vec![2, 0]), crat(0, 1));
        let phi = PolySelfMap::new(2, vec![comp0, comp1]).unwrap();
        let p = pairing_symbol(&phi, &phi).unwrap();
        let mut sampler = SphereSampler::new(2, 99);
        for _ in 0..50 {
            let z = sampler.next_point();
            let v = p.eval_unchecked(&z);
            let w: f64 = phi.eval(&z).iter().map(|c| c.norm_sqr()).sum();
            assert!((v.re - w).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn vector_norm_sq_is_exact() {
        // ||1 + z1||^2 = 1 + omega(e1) = 3/2 on S_2
        let coeffs = vec![
            (MultiIndex::zero(2), crat_one()),
            (MultiIndex::unit(2, 0), crat_one()),
        ];
        assert_eq!(vector_norm_sq(&coeffs, 2).unwrap(), rat(3, 2));
        let _ = rat_int(0);
    }

    fn arb_symbol() -> impl Strategy<Value = SphereSymbol> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..3, 2),
                proptest::collection::vec(0u32..3, 2),
                -4i64..5,
                -4i64..5,
            ),
            0..5,
        )
        .prop_map(|terms| {
            let mut s = SphereSymbol::zero(2);
            for (mu, nu, re, im) in terms {
                s.add_term(MultiIndex::new(mu), MultiIndex::new(nu), crat(re, im));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn conj_is_an_involution(s in arb_symbol()) {
            prop_assert_eq!(s.conj().conj(), s);
        }

        #[test]
        fn product_commutes(a in arb_symbol(), b in arb_symbol()) {
            prop_assert_eq!(a.product(&b).unwrap(), b.product(&a).unwrap());
        }

        #[test]
        fn product_associates(a in arb_symbol(), b in arb_symbol(), c in arb_symbol()) {
            let left = a.product(&b).unwrap().product(&c).unwrap();
            let right = a.product(&b.product(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn power_matches_pointwise_power(s in arb_symbol(), m in 0u32..4, seed in 0u64..50) {
            let mut sampler = SphereSampler::new(2, seed);
            let z = sampler.next_point();
            let lhs = s.power(m).eval_unchecked(&z);
            let rhs = s.eval_unchecked(&z).powu(m);
            let scale = rhs.norm().max(1.0);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * scale);
        }
    }
}
