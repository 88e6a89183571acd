//! Small dense complex float matrices for diagnostics.
//!
//! Desk-scale sizes only (a few hundred rows); everything is hand-rolled so
//! the exact-arithmetic core carries no linear-algebra backend.

use num::complex::Complex64;
use num::Zero;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * x[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value via power iteration on M*M.
///
/// Deterministic start (all-ones with a fixed ramp to dodge exact
/// orthogonality), at most 2·10⁴ iterations. The internal stall criterion is
/// far below the 1e−10 tolerance quoted to callers, so slowly separated
/// singular values still resolve; the result is a lower bound for the true
/// largest singular value.
pub fn top_singular_value(m: &CMat) -> f64 {
    if m.rows == 0 || m.cols == 0 {
        return 0.0;
    }
    let ma = m.adjoint();
    let mut x: Vec<Complex64> = (0..m.cols)
        .map(|k| Complex64::new(1.0 + (k % 7) as f64 / 8.0, 0.0))
        .collect();
    let nx = vec_norm(&x);
    for v in x.iter_mut() {
        *v /= nx;
    }
    let mut prev = 0.0f64;
    for _ in 0..20_000 {
        let y = ma.matvec(&m.matvec(&x));
        let lambda = vec_norm(&y);
        if lambda == 0.0 {
            return 0.0;
        }
        x = y.into_iter().map(|v| v / lambda).collect();
        if (lambda - prev).abs() <= 1e-14 * lambda.max(1.0) {
            return lambda.sqrt();
        }
        prev = lambda;
    }
    prev.sqrt()
}

/// Largest eigenvalue of a Hermitian PSD matrix (power iteration).
fn hermitian_top_eig(h: &CMat) -> f64 {
    if h.rows == 0 {
        return 0.0;
    }
    let mut x: Vec<Complex64> = (0..h.cols)
        .map(|k| Complex64::new(1.0 + (k % 5) as f64 / 4.0, 0.0))
        .collect();
    let nx = vec_norm(&x);
    for v in x.iter_mut() {
        *v /= nx;
    }
    let mut prev = 0.0f64;
    for _ in 0..10_000 {
        let y = h.matvec(&x);
        let lambda = vec_norm(&y);
        if lambda == 0.0 {
            return 0.0;
        }
        x = y.into_iter().map(|v| v / lambda).collect();
        if (lambda - prev).abs() <= 1e-12 * lambda.max(1.0) {
            return lambda;
        }
        prev = lambda;
    }
    prev
}

/// Smallest eigenvalue of a Hermitian matrix, via a Gershgorin shift.
pub fn hermitian_min_eig(h: &CMat) -> f64 {
    assert_eq!(h.rows, h.cols);
    if h.rows == 0 {
        return 0.0;
    }
    // c >= lambda_max(H), so cI - H is PSD
    let c = (0..h.rows)
        .map(|i| (0..h.cols).map(|j| h.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let mut shifted = CMat::zeros(h.rows, h.cols);
    for i in 0..h.rows {
        for j in 0..h.cols {
            let v = -h.get(i, j);
            shifted.set(i, j, if i == j { v + c } else { v });
        }
    }
    c - hermitian_top_eig(&shifted)
}

/// Eigenvalues of an n×n complex matrix for n ≤ 3 (closed forms); larger
/// sizes fall back to a power-iteration modulus estimate repeated once, which
/// is enough for the desk-scale classifier.
pub fn eigenvalues(a: &CMat) -> Vec<Complex64> {
    assert_eq!(a.rows, a.cols);
    match a.rows {
        0 => vec![],
        1 => vec![a.get(0, 0)],
        2 => {
            let tr = a.get(0, 0) + a.get(1, 1);
            let det = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
            let disc = (tr * tr - det.scale(4.0)).sqrt();
            vec![(tr + disc).scale(0.5), (tr - disc).scale(0.5)]
        }
        3 => cubic_eigenvalues(a),
        n => {
            // crude fallback: dominant modulus only
            let mut x: Vec<Complex64> = (0..n)
                .map(|k| Complex64::new(1.0 + k as f64 / 7.0, 0.3))
                .collect();
            let mut lambda = Complex64::zero();
            for _ in 0..5_000 {
                let y = a.matvec(&x);
                let ny = vec_norm(&y);
                if ny == 0.0 {
                    return vec![Complex64::zero(); n];
                }
                // Rayleigh quotient
                let num: Complex64 = x.iter().zip(&y).map(|(xi, yi)| xi.conj() * yi).sum();
                let den: f64 = x.iter().map(|z| z.norm_sqr()).sum();
                lambda = num / den;
                x = y.into_iter().map(|v| v / ny).collect();
            }
            vec![lambda; 1]
        }
    }
}

fn cubic_eigenvalues(a: &CMat) -> Vec<Complex64> {
    // characteristic polynomial λ³ − c2 λ² + c1 λ − c0
    let tr = a.get(0, 0) + a.get(1, 1) + a.get(2, 2);
    let m00 = a.get(1, 1) * a.get(2, 2) - a.get(1, 2) * a.get(2, 1);
    let m11 = a.get(0, 0) * a.get(2, 2) - a.get(0, 2) * a.get(2, 0);
    let m22 = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
    let c1 = m00 + m11 + m22;
    let det = a.get(0, 0) * m00 - a.get(0, 1) * (a.get(1, 0) * a.get(2, 2) - a.get(1, 2) * a.get(2, 0))
        + a.get(0, 2) * (a.get(1, 0) * a.get(2, 1) - a.get(1, 1) * a.get(2, 0));
    // depressed cubic t^3 + p t + q via λ = t + tr/3
    let shift = tr / 3.0;
    let p = c1 - tr * tr / 3.0;
    let q = -det + (c1 * tr) / 3.0 - tr * tr * tr * Complex64::new(2.0 / 27.0, 0.0);
    // Cardano with a branch-stable cube root
    let half_q = q * 0.5;
    let disc = (half_q * half_q + p * p * p / 27.0).sqrt();
    let mut u3 = -half_q + disc;
    if u3.norm() < 1e-30 {
        u3 = -half_q - disc;
    }
    let u = u3.powf(1.0 / 3.0);
    let omega = Complex64::new(-0.5, 3.0f64.sqrt() / 2.0);
    let mut roots = Vec::with_capacity(3);
    for k in 0..3 {
        let uk = u * omega.powu(k);
        let t = if uk.norm() < 1e-30 {
            Complex64::zero()
        } else {
            uk - p / (uk * 3.0)
        };
        roots.push(t + shift);
    }
    roots
}

/// A unit null vector of a (numerically) singular n×n matrix, via Gaussian
/// elimination with partial pivoting; used to extract eigenvectors.
pub fn null_vector(a: &CMat) -> Vec<Complex64> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let (best, best_val) = (row..n)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap_or((row, 0.0));
        if best_val < 1e-9 {
            continue;
        }
        m.swap(row, best);
        let inv = Complex64::new(1.0, 0.0) / m[row][col];
        for j in 0..n {
            m[row][j] *= inv;
        }
        for r in 0..n {
            if r != row {
                let f = m[r][col];
                for j in 0..n {
                    let v = m[row][j];
                    m[r][j] -= f * v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    // choose the first free column; if none, fall back to the last column
    let free = (0..n).find(|c| !pivot_cols.contains(c)).unwrap_or(n - 1);
    let mut x = vec![Complex64::zero(); n];
    x[free] = Complex64::new(1.0, 0.0);
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -m[r][free];
    }
    let nx = vec_norm(&x);
    x.into_iter().map(|v| v / nx).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn top_singular_value_of_diag() {
        let m = CMat::from_rows(&[
            vec![c(0.3, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.9, 0.0)],
        ]);
        assert!((top_singular_value(&m) - 0.9).abs() < 1e-9);
    }

    #[test]
    fn top_singular_value_of_zero_and_identity() {
        assert_eq!(top_singular_value(&CMat::zeros(4, 4)), 0.0);
        assert!((top_singular_value(&CMat::identity(5)) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn min_eig_of_hermitian() {
        let h = CMat::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ]);
        // eigenvalues 1 and 3
        assert!((hermitian_min_eig(&h) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn eigenvalues_2x2() {
        let a = CMat::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.5, 0.0)]]);
        let mut ev: Vec<f64> = eigenvalues(&a).iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 0.5).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);

        // nilpotent
        let a = CMat::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        for z in eigenvalues(&a) {
            assert!(z.norm() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_3x3() {
        let a = CMat::from_rows(&[
            vec![c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.25, 0.5), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(-0.75, 0.0)],
        ]);
        let mut got: Vec<(f64, f64)> = eigenvalues(&a).iter().map(|z| (z.re, z.im)).collect();
        got.sort_by(|x, y| x.0.total_cmp(&y.0));
        let want = [(-0.75, 0.0), (0.25, 0.5), (0.5, 0.0)];
        for ((gr, gi), (wr, wi)) in got.iter().zip(want) {
            assert!((gr - wr).abs() < 1e-8 && (gi - wi).abs() < 1e-8, "{got:?}");
        }
    }

    #[test]
    fn null_vector_of_rank_deficient() {
        // (A - I) for A = diag(1, 1/2): null vector is e1
        let a = CMat::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-0.5, 0.0)]]);
        let v = null_vector(&a);
        assert!((v[0].norm() - 1.0).abs() < 1e-10 && v[1].norm() < 1e-10);
    }
}
