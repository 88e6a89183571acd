//! Exact scalar types: arbitrary-precision rationals and complex rationals.
//!
//! Every operator identity in this crate is an equality of complex rationals;
//! floats only appear in diagnostics (norm estimates, Monte Carlo output).

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{Complex, One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Exact complex-rational scalar.
pub type CRat = Complex<Rat>;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `re + i*im` with integer parts.
pub fn crat(re: i64, im: i64) -> CRat {
    Complex::new(rat_int(re), rat_int(im))
}

/// `re_n/re_d + i*(im_n/im_d)`.
pub fn crat_ratio(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> CRat {
    Complex::new(rat(re_n, re_d), rat(im_n, im_d))
}

pub fn crat_zero() -> CRat {
    Complex::new(Rat::zero(), Rat::zero())
}

pub fn crat_one() -> CRat {
    Complex::new(Rat::one(), Rat::zero())
}

/// |z|^2 as an exact rational.
pub fn abs_sq(z: &CRat) -> Rat {
    &z.re * &z.re + &z.im * &z.im
}

pub fn conj(z: &CRat) -> CRat {
    Complex::new(z.re.clone(), -z.im.clone())
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational does not fit in f64 range")
}

pub fn to_c64(z: &CRat) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// `k!` as a big integer.
pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Render a rational as `num/den` in lowest terms, e.g. for JSON dumps.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `sign`-aware integer pair into a rational; used by the CLI.
pub fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = rat(1, 3);
        let b = rat(1, 6);
        assert_eq!(&a + &b, rat(1, 2));
        assert_eq!(&a * &b, rat(1, 18));
    }

    #[test]
    fn complex_modulus_squared() {
        let z = crat_ratio(3, 5, 4, 5);
        assert_eq!(abs_sq(&z), rat_int(1));
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
