//! Dense complex linear algebra sized for operator-norm experiments: a
//! row-major matrix type, a one-sided Jacobi SVD, a Hermitian Jacobi
//! eigensolver, and Schatten norms with `p = ∞` as a distinguished value.
//!
//! Everything here is exact-shape and allocation-simple; matrices in this
//! crate top out around a few hundred rows, where Jacobi methods are both
//! accurate and fast enough.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;

/// Relative off-diagonal threshold at which Jacobi iterations stop.
const JACOBI_TOL: f64 = 1e-14;
/// Sweep budget; exceeding it is reported as a convergence error.
const JACOBI_MAX_SWEEPS: usize = 64;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix unit `e_ij`: single 1 at row `i`, column `j` (0-based).
    pub fn matrix_unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        assert!(i < rows && j < cols, "matrix unit index out of range");
        let mut m = CMatrix::zeros(rows, cols);
        m.data[i * cols + j] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Domain("matrix must have at least one row and column".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data: Vec<Complex64> = rows.into_iter().flatten().collect();
        let m = CMatrix { rows: data.len() / cols, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    /// Real matrix from nested arrays; test/reporting convenience.
    pub fn from_real(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::Validation("matrix has non-finite entries".into()))
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, t: Complex64) -> CMatrix {
        let data = self.data.iter().map(|a| a * t).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = CMatrix::zeros(m, n);
        for i in 0..m {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[l * n..(l + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    dst[j] += a * row[j];
                }
            }
        }
        out
    }

    /// Kronecker product, first factor outer:
    /// `(A⊗B)[i·p+k, j·q+l] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = CMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> CMatrix {
        let data = self.data.iter().map(|z| z.conj()).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Entrywise absolute value `[|a_ij|]` (a real matrix).
    pub fn entrywise_abs(&self) -> CMatrix {
        let data = self.data.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "hadamard: shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Hilbert–Schmidt inner product `⟨A,B⟩ = Tr(A†B)`, conjugate-linear in `A`.
    pub fn hs_inner(&self, other: &CMatrix) -> Result<Complex64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "hs_inner: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum())
    }

    /// Frobenius (= Schatten-2, = Hilbert–Schmidt) norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Copies the `h×w` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> CMatrix {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        CMatrix::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// Hermitian deviation `max |A - A†|`, 0 for exactly Hermitian matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Operator (spectral) norm via singular values.
    pub fn op_norm(&self) -> Result<f64> {
        schatten_norm(self, f64::INFINITY)
    }
}

/// Nonincreasing singular values of a matrix.
#[derive(Debug, Clone)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
}

/// Thin singular value decomposition `A = U·diag(values)·V†`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub values: Vec<f64>,
    pub v: CMatrix,
}

/// Thin SVD by one-sided Jacobi: right rotations orthogonalize the columns
/// of a working copy until every column pair is numerically orthogonal.
///
/// Column norms of the converged copy are the singular values; accumulating
/// the rotations yields `V`. Wide inputs are handled through the conjugate
/// transpose.
pub fn svd(a: &CMatrix) -> Result<Svd> {
    a.check_finite()?;
    if a.rows < a.cols {
        let t = svd(&a.dagger())?;
        return Ok(Svd { u: t.v, values: t.values, v: t.u });
    }
    let (m, n) = (a.rows, a.cols);
    let mut b = a.clone();
    let mut v = CMatrix::identity(n);

    // Columns whose mass is at roundoff level relative to the whole matrix
    // (whose Frobenius norm the rotations preserve) carry numerically zero
    // singular values; rotating them against each other would churn forever
    // under the relative threshold below.
    let fro_sq: f64 = b.data.iter().map(|z| z.norm_sqr()).sum();
    let negligible = fro_sq * 1e-30;

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let bp = b.data[i * n + p];
                    let bq = b.data[i * n + q];
                    app += bp.norm_sqr();
                    aqq += bq.norm_sqr();
                    apq += bp.conj() * bq;
                }
                if app <= negligible || aqq <= negligible {
                    continue;
                }
                if apq.norm_sqr() <= JACOBI_TOL * JACOBI_TOL * app * aqq {
                    continue;
                }
                rotated = true;
                let (c, s, alpha) = jacobi_rotation(app, aqq, apq);
                rotate_columns(&mut b, p, q, c, s, alpha);
                rotate_columns(&mut v, p, q, c, s, alpha);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "one-sided Jacobi SVD: {JACOBI_MAX_SWEEPS} sweeps on {m}x{n} matrix"
        )));
    }

    let mut norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| b.data[i * n + j].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());
    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    norms = values.clone();

    let mut u = CMatrix::zeros(m, n);
    let mut vv = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let s = norms[dst];
        if s > 0.0 {
            for i in 0..m {
                u.set(i, dst, b.get(i, src) / s);
            }
        }
        for i in 0..n {
            vv.set(i, dst, v.get(i, src));
        }
    }
    Ok(Svd { u, values, v: vv })
}

/// Singular values only.
pub fn svd_values(a: &CMatrix) -> Result<SingularSpectrum> {
    Ok(SingularSpectrum { values: svd(a)?.values })
}

/// Complex rotation annihilating the off-diagonal entry of the Hermitian
/// 2x2 Gram block `[[app, apq],[conj(apq), aqq]]`. Returns `(c, s, alpha)`
/// with `alpha = apq/|apq|`; columns transform as
/// `p' = c·p + conj(alpha)·s·q`, `q' = -s·p + conj(alpha)·c·q`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let h = apq.norm();
    let alpha = apq / h;
    let zeta = (app - aqq) / (2.0 * h);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t, alpha)
}

fn rotate_columns(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, alpha: Complex64) {
    let n = m.cols;
    let ac = alpha.conj();
    for i in 0..m.rows {
        let xp = m.data[i * n + p];
        let xq = m.data[i * n + q];
        m.data[i * n + p] = xp * c + xq * (ac * s);
        m.data[i * n + q] = xp * (-s) + xq * (ac * c);
    }
}

/// Eigendecomposition of a Hermitian matrix by two-sided Jacobi.
///
/// Returns eigenvalues in ascending order and the matching unitary of column
/// eigenvectors. The input is symmetrized first; callers are expected to pass
/// matrices that are Hermitian up to roundoff.
pub fn eigh(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("eigh: matrix not square".into()));
    }
    a.check_finite()?;
    let n = a.rows;
    // Symmetrize to protect against roundoff-level deviation.
    let mut h = CMatrix::from_fn(n, n, |i, j| (a.get(i, j) + a.get(j, i).conj()) * 0.5);
    let mut q = CMatrix::identity(n);
    let frob = h.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for r in (p + 1)..n {
                off += h.get(p, r).norm_sqr();
            }
        }
        if off.sqrt() <= JACOBI_TOL * frob {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let hpq = h.get(p, r);
                if hpq.norm() <= JACOBI_TOL * frob / (n as f64) {
                    continue;
                }
                let (c, s, alpha) = jacobi_rotation(h.get(p, p).re, h.get(r, r).re, hpq);
                let ac = alpha.conj();
                // H <- R† H R with R = [[c, -s],[conj(alpha)·s, conj(alpha)·c]] on (p, r).
                for i in 0..n {
                    let xp = h.get(i, p);
                    let xq = h.get(i, r);
                    h.set(i, p, xp * c + xq * (ac * s));
                    h.set(i, r, xp * (-s) + xq * (ac * c));
                }
                for j in 0..n {
                    let xp = h.get(p, j);
                    let xq = h.get(r, j);
                    h.set(p, j, xp * c + xq * (alpha * s));
                    h.set(r, j, xp * (-s) + xq * (alpha * c));
                }
                h.set(p, r, Complex64::new(0.0, 0.0));
                h.set(r, p, Complex64::new(0.0, 0.0));
                for i in 0..n {
                    let xp = q.get(i, p);
                    let xq = q.get(i, r);
                    q.set(i, p, xp * c + xq * (ac * s));
                    q.set(i, r, xp * (-s) + xq * (ac * c));
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Hermitian Jacobi eigensolver: {JACOBI_MAX_SWEEPS} sweeps on {n}x{n} matrix"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| h.get(x, x).re.partial_cmp(&h.get(y, y).re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| h.get(i, i).re).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vecs.set(i, dst, q.get(i, src));
        }
    }
    Ok((values, vecs))
}

/// Schatten p-norm for `p ∈ [1, ∞]`; `p = f64::INFINITY` selects the
/// operator norm. `p < 1` (or NaN) is a domain error.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain(format!("schatten_norm requires p >= 1, got {p}")));
    }
    let s = svd_values(a)?.values;
    Ok(schatten_of_values(&s, p))
}

/// Schatten p-norm of an explicit nonnegative spectrum.
pub fn schatten_of_values(s: &[f64], p: f64) -> f64 {
    let smax = s.iter().cloned().fold(0.0, f64::max);
    if p.is_infinite() || smax == 0.0 {
        return smax;
    }
    // Scale by the largest value so the powers stay in range.
    let sum: f64 = s.iter().map(|&x| (x / smax).powf(p)).sum();
    smax * sum.powf(1.0 / p)
}

/// Best-aligned contraction for a linear functional `X ↦ Re⟨M,X⟩`: the
/// partial isometry `Σ u_j v_j†` over the significant singular triples of
/// `M`, which attains `‖M‖₁` and has operator norm 1 (when `M ≠ 0`).
pub fn polar_alignment(m: &CMatrix) -> Result<CMatrix> {
    let d = svd(m)?;
    let k = d.values.len();
    let smax = d.values.first().copied().unwrap_or(0.0);
    let mut x = CMatrix::zeros(m.rows(), m.cols());
    if smax == 0.0 {
        return Ok(x);
    }
    for j in 0..k {
        if d.values[j] <= 1e-12 * smax {
            break;
        }
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let add = d.u.get(r, j) * d.v.get(c, j).conj();
                x.set(r, c, x.get(r, c) + add);
            }
        }
    }
    Ok(x)
}

/// Standard normal deviate (Box–Muller on the supplied RNG).
pub fn gauss(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Complex Gaussian matrix: independent standard normal real and imaginary
/// parts in every entry.
pub fn gaussian(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| Complex64::new(gauss(rng), gauss(rng)))
}

/// Haar-ish random unitary: the polar factor of a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> Result<CMatrix> {
    loop {
        let g = gaussian(n, n, rng);
        let d = svd(&g)?;
        let smin = d.values.last().copied().unwrap_or(0.0);
        let smax = d.values.first().copied().unwrap_or(0.0);
        if smax > 0.0 && smin > 1e-6 * smax {
            return Ok(d.u.matmul(&d.v.dagger()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol * (1.0 + want.abs()),
            "{what}: got {got}, want {want}"
        );
    }

    #[test]
    fn kron_of_matrix_units() {
        let e11 = CMatrix::matrix_unit(2, 2, 0, 0);
        let e22 = CMatrix::matrix_unit(2, 2, 1, 1);
        let k = e11.kron(&e22);
        assert_eq!(k.rows(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (1, 1) { 1.0 } else { 0.0 };
                assert_eq!(k.get(i, j), c(want, 0.0));
            }
        }
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = gaussian(2, 3, &mut rng);
        let b = gaussian(3, 2, &mut rng);
        let x = gaussian(3, 2, &mut rng);
        let y = gaussian(2, 3, &mut rng);
        let lhs = a.kron(&b).matmul(&x.kron(&y));
        let rhs = a.matmul(&x).kron(&b.matmul(&y));
        assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn svd_reconstructs_and_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(m, n) in &[(4usize, 4usize), (5, 3), (3, 5), (1, 4)] {
            let a = gaussian(m, n, &mut rng);
            let d = svd(&a).unwrap();
            let k = m.min(n);
            assert_eq!(d.values.len(), k);
            let mut rec = CMatrix::zeros(m, n);
            for j in 0..k {
                for r in 0..m {
                    for cc in 0..n {
                        let add = d.u.get(r, j) * d.v.get(cc, j).conj() * d.values[j];
                        rec.set(r, cc, rec.get(r, cc) + add);
                    }
                }
            }
            assert!(a.sub(&rec).frobenius_norm() <= 1e-12 * a.frobenius_norm());
            let utu = d.u.dagger().matmul(&d.u);
            let vtv = d.v.dagger().matmul(&d.v);
            assert!(utu.sub(&CMatrix::identity(k)).max_abs() <= 1e-12);
            assert!(vtv.sub(&CMatrix::identity(k)).max_abs() <= 1e-12);
            for w in d.values.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    // Oracle: singular values must be the square roots of the eigenvalues of
    // A†A produced by the independent Hermitian eigensolver.
    #[test]
    fn svd_matches_gram_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..6 {
            let n = 2 + (trial % 3);
            let a = gaussian(n + 1, n, &mut rng);
            let gram = a.dagger().matmul(&a);
            let (mut evals, _) = eigh(&gram).unwrap();
            evals.reverse();
            let s = svd_values(&a).unwrap().values;
            for (si, li) in s.iter().zip(evals.iter()) {
                assert_close(si * si, li.max(0.0), 1e-10, "sigma^2 vs eig of A†A");
            }
        }
    }

    #[test]
    fn schatten_norms_of_diagonal() {
        let a = CMatrix::from_real(vec![vec![3.0, 0.0], vec![0.0, -4.0]]).unwrap();
        assert_close(schatten_norm(&a, 1.0).unwrap(), 7.0, 1e-14, "S1");
        assert_close(schatten_norm(&a, 2.0).unwrap(), 5.0, 1e-14, "S2");
        assert_close(schatten_norm(&a, f64::INFINITY).unwrap(), 4.0, 1e-14, "Sinf");
    }

    #[test]
    fn schatten_norm_of_matrix_unit_is_one_for_all_p() {
        let e = CMatrix::matrix_unit(2, 2, 0, 1);
        for p in [1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY] {
            assert_close(schatten_norm(&e, p).unwrap(), 1.0, 1e-14, "unit norm");
        }
    }

    #[test]
    fn schatten_norm_of_identity() {
        let n = 3.0f64;
        let got = schatten_norm(&CMatrix::identity(3), 3.0).unwrap();
        assert_close(got, n.powf(1.0 / 3.0), 1e-13, "identity S3");
    }

    #[test]
    fn schatten_rejects_p_below_one() {
        let a = CMatrix::identity(2);
        assert!(matches!(schatten_norm(&a, 0.5), Err(Error::Domain(_))));
        assert!(matches!(schatten_norm(&a, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn hs_inner_examples() {
        let id = CMatrix::identity(2);
        let sx = CMatrix::from_real(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(id.hs_inner(&sx).unwrap(), c(0.0, 0.0));
        let a = CMatrix::from_rows(vec![vec![c(1.0, 2.0), c(0.0, -1.0)]]).unwrap();
        let ip = a.hs_inner(&a).unwrap();
        assert_close(ip.re, a.frobenius_norm().powi(2), 1e-14, "⟨A,A⟩");
        assert!(ip.im.abs() <= 1e-15);
        let b = CMatrix::identity(3);
        assert!(matches!(a.hs_inner(&b), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn eigh_known_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = CMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let (vals, vecs) = eigh(&a).unwrap();
        assert_close(vals[0], 1.0, 1e-13, "λ0");
        assert_close(vals[1], 3.0, 1e-13, "λ1");
        let resid = a.matmul(&vecs).sub(&vecs.matmul(
            &CMatrix::from_real(vec![vec![vals[0], 0.0], vec![0.0, vals[1]]]).unwrap(),
        ));
        assert!(resid.max_abs() <= 1e-13);
    }

    #[test]
    fn eigh_random_hermitian_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = gaussian(5, 5, &mut rng);
        let h = g.add(&g.dagger()).scale(c(0.5, 0.0));
        let (vals, q) = eigh(&h).unwrap();
        let lambda = CMatrix::from_fn(5, 5, |i, j| {
            if i == j {
                c(vals[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let resid = h.matmul(&q).sub(&q.matmul(&lambda));
        assert!(resid.max_abs() <= 1e-12 * (1.0 + h.max_abs()));
        let qq = q.dagger().matmul(&q);
        assert!(qq.sub(&CMatrix::identity(5)).max_abs() <= 1e-12);
    }

    #[test]
    fn polar_alignment_attains_trace_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let m = gaussian(4, 4, &mut rng);
        let x = polar_alignment(&m).unwrap();
        assert!(x.op_norm().unwrap() <= 1.0 + 1e-12);
        let attained = m.hs_inner(&x).unwrap().re;
        let trace_norm = schatten_norm(&m, 1.0).unwrap();
        assert_close(attained, trace_norm, 1e-11, "⟨M, polar⟩ = ‖M‖₁");
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(4, &mut rng).unwrap();
        assert!(u.dagger().matmul(&u).sub(&CMatrix::identity(4)).max_abs() <= 1e-12);
    }

    #[test]
    fn entrywise_abs_and_dagger() {
        let a = CMatrix::from_rows(vec![vec![c(3.0, -4.0), c(0.0, 2.0)]]).unwrap();
        let abs = a.entrywise_abs();
        assert_eq!(abs.get(0, 0), c(5.0, 0.0));
        assert_eq!(abs.get(0, 1), c(2.0, 0.0));
        let d = a.dagger();
        assert_eq!(d.rows(), 2);
        assert_eq!(d.get(0, 0), c(3.0, 4.0));
    }

    fn arb_matrix(maxdim: usize) -> impl Strategy<Value = CMatrix> {
        (1..=maxdim, 1..=maxdim).prop_flat_map(|(m, n)| {
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), m * n).prop_map(
                move |entries| {
                    let mut mat = CMatrix::zeros(m, n);
                    for (idx, (re, im)) in entries.into_iter().enumerate() {
                        mat.data[idx] = Complex64::new(re, im);
                    }
                    mat
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn prop_schatten_monotone_in_p(a in arb_matrix(4)) {
            let ps = [1.0, 1.5, 2.0, 4.0, f64::INFINITY];
            let norms: Vec<f64> = ps.iter().map(|&p| schatten_norm(&a, p).unwrap()).collect();
            for w in norms.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-10 * (1.0 + w[0]));
            }
        }

        #[test]
        fn prop_schatten2_is_frobenius(a in arb_matrix(4)) {
            let s2 = schatten_norm(&a, 2.0).unwrap();
            let hs = a.hs_inner(&a).unwrap().re.sqrt();
            prop_assert!((s2 - hs).abs() <= 1e-12 * (1.0 + hs));
        }

        #[test]
        fn prop_triangle_inequality(a in arb_matrix(3), b in arb_matrix(3), pi in 0usize..4) {
            prop_assume!(a.rows() == b.rows() && a.cols() == b.cols());
            let p = [1.0, 1.5, 2.0, f64::INFINITY][pi];
            let lhs = schatten_norm(&a.add(&b), p).unwrap();
            let rhs = schatten_norm(&a, p).unwrap() + schatten_norm(&b, p).unwrap();
            prop_assert!(lhs <= rhs + 1e-10 * (1.0 + rhs));
        }

        #[test]
        fn prop_unitary_invariance(a in arb_matrix(4), seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random_unitary(a.rows(), &mut rng).unwrap();
            let w = random_unitary(a.cols(), &mut rng).unwrap();
            let b = u.matmul(&a).matmul(&w);
            for p in [1.0, 2.0, f64::INFINITY] {
                let na = schatten_norm(&a, p).unwrap();
                let nb = schatten_norm(&b, p).unwrap();
                prop_assert!((na - nb).abs() <= 1e-10 * (1.0 + na));
            }
        }
    }
}
