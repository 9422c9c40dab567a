//! Linear maps `M_in → M_out` represented by their Choi matrix, with exact
//! completely bounded (`cb`) and completely co-bounded (`cob`) norms via
//! semidefinite programming and a randomized ascent giving certified lower
//! bounds.
//!
//! Conventions: the Choi matrix is `J(Φ) = Σ_ij e_ij ⊗ Φ(e_ij)`, input index
//! outer, so block `(i, j)` (each `out × out`) is `Φ(e_ij)`. The
//! Hilbert–Schmidt adjoint `Φ*` satisfies `⟨Φ*(y), x⟩ = ⟨y, Φ(x)⟩` for
//! `⟨a, b⟩ = tr(a† b)`. Throughout, `cb` is taken with operator norms on both
//! sides; it equals the completely bounded trace norm (diamond norm) of the
//! adjoint, which is what the semidefinite program computes.

use crate::error::{Error, Result};
use crate::linalg::{polar_alignment, random_unitary, svd, CMatrix};
use crate::sdp::{im_entry, re_entry, SdpConstraint, SdpOptions, SdpProblem};
use crate::trial_rng;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct SuperOp {
    in_dim: usize,
    out_dim: usize,
    choi: CMatrix,
}

impl SuperOp {
    /// Wraps an explicit Choi matrix of shape `(in·out) × (in·out)`.
    pub fn from_choi(in_dim: usize, out_dim: usize, choi: CMatrix) -> Result<Self> {
        let d = in_dim * out_dim;
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::ShapeMismatch("superoperator dimensions must be positive".into()));
        }
        if choi.rows() != d || choi.cols() != d {
            return Err(Error::ShapeMismatch(format!(
                "Choi matrix is {}x{}, expected {}x{}",
                choi.rows(),
                choi.cols(),
                d,
                d
            )));
        }
        choi.check_finite()?;
        Ok(SuperOp { in_dim, out_dim, choi })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn choi(&self) -> &CMatrix {
        &self.choi
    }

    /// The identity map on `M_n`.
    pub fn identity(n: usize) -> Self {
        let mut choi = CMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                choi.set(i * n + i, j * n + j, Complex64::new(1.0, 0.0));
            }
        }
        SuperOp { in_dim: n, out_dim: n, choi }
    }

    /// The transposition map `x ↦ xᵀ` on `M_n`.
    pub fn transpose_map(n: usize) -> Self {
        let mut choi = CMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                // Block (i, j) is e_ji.
                choi.set(i * n + j, j * n + i, Complex64::new(1.0, 0.0));
            }
        }
        SuperOp { in_dim: n, out_dim: n, choi }
    }

    /// The entrywise multiplier `x ↦ [φ_ij · x_ij]` with symbol `φ`.
    pub fn from_schur(phi: &CMatrix) -> Result<Self> {
        if !phi.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "entrywise multiplier symbol must be square, got {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        phi.check_finite()?;
        let n = phi.rows();
        let mut choi = CMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                choi.set(i * n + i, j * n + j, phi.get(i, j));
            }
        }
        Ok(SuperOp { in_dim: n, out_dim: n, choi })
    }

    /// The two-sided multiplication `x ↦ a·x·b` with `a : out×in`, `b : in×out`.
    pub fn sandwich(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        let (out_dim, in_dim) = (a.rows(), a.cols());
        if b.rows() != in_dim || b.cols() != out_dim {
            return Err(Error::ShapeMismatch(format!(
                "sandwich factors {}x{} and {}x{} do not compose",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        a.check_finite()?;
        b.check_finite()?;
        let mut choi = CMatrix::zeros(in_dim * out_dim, in_dim * out_dim);
        for i in 0..in_dim {
            for j in 0..in_dim {
                // a·e_ij·b is the outer product of column i of a and row j of b.
                for k in 0..out_dim {
                    for l in 0..out_dim {
                        choi.set(i * out_dim + k, j * out_dim + l, a.get(k, i) * b.get(j, l));
                    }
                }
            }
        }
        Ok(SuperOp { in_dim, out_dim, choi })
    }

    /// Evaluates the map on a square matrix.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.in_dim || x.cols() != self.in_dim {
            return Err(Error::ShapeMismatch(format!(
                "argument is {}x{}, expected {}x{}",
                x.rows(),
                x.cols(),
                self.in_dim,
                self.in_dim
            )));
        }
        let (n, m) = (self.in_dim, self.out_dim);
        let mut out = CMatrix::zeros(m, m);
        for i in 0..n {
            for j in 0..n {
                let v = x.get(i, j);
                if v.re == 0.0 && v.im == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let cur = out.get(k, l);
                        out.set(k, l, cur + v * self.choi.get(i * m + k, j * m + l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates `id_k ⊗ Φ` blockwise, without materializing the amplified
    /// Choi matrix.
    pub fn amplified_apply(&self, x: &CMatrix, k: usize) -> Result<CMatrix> {
        let d = k * self.in_dim;
        if x.rows() != d || x.cols() != d {
            return Err(Error::ShapeMismatch(format!(
                "amplified argument is {}x{}, expected {}x{}",
                x.rows(),
                x.cols(),
                d,
                d
            )));
        }
        let (n, m) = (self.in_dim, self.out_dim);
        let mut out = CMatrix::zeros(k * m, k * m);
        for p in 0..k {
            for q in 0..k {
                let xb = x.block(p * n, q * n, n, n);
                let yb = self.apply(&xb)?;
                out.set_block(p * m, q * m, &yb);
            }
        }
        Ok(out)
    }

    /// Composition `self ∘ inner` (`inner` acts first).
    pub fn compose(&self, inner: &SuperOp) -> Result<SuperOp> {
        if self.in_dim != inner.out_dim {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: inner output dimension {} vs outer input dimension {}",
                inner.out_dim, self.in_dim
            )));
        }
        let n = inner.in_dim;
        let m = self.out_dim;
        let p = inner.out_dim;
        let mut choi = CMatrix::zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                let mid = inner.choi.block(i * p, j * p, p, p);
                let img = self.apply(&mid)?;
                choi.set_block(i * m, j * m, &img);
            }
        }
        Ok(SuperOp { in_dim: n, out_dim: m, choi })
    }

    /// Block-diagonal direct sum: acts as `self` on the leading corner and as
    /// `other` on the trailing corner, killing the mixed blocks.
    pub fn direct_sum(&self, other: &SuperOp) -> SuperOp {
        let n = self.in_dim + other.in_dim;
        let m = self.out_dim + other.out_dim;
        let mut choi = CMatrix::zeros(n * m, n * m);
        for i in 0..self.in_dim {
            for j in 0..self.in_dim {
                let b = self.choi.block(i * self.out_dim, j * self.out_dim, self.out_dim, self.out_dim);
                choi.set_block(i * m, j * m, &b);
            }
        }
        for i in 0..other.in_dim {
            for j in 0..other.in_dim {
                let b = other.choi.block(i * other.out_dim, j * other.out_dim, other.out_dim, other.out_dim);
                choi.set_block(
                    (self.in_dim + i) * m + self.out_dim,
                    (self.in_dim + j) * m + self.out_dim,
                    &b,
                );
            }
        }
        SuperOp { in_dim: n, out_dim: m, choi }
    }

    /// The Hilbert–Schmidt adjoint `Φ* : M_out → M_in`.
    pub fn hs_adjoint(&self) -> SuperOp {
        let (n, m) = (self.in_dim, self.out_dim);
        let mut choi = CMatrix::zeros(n * m, n * m);
        for k in 0..m {
            for l in 0..m {
                for i in 0..n {
                    for j in 0..n {
                        choi.set(k * n + i, l * n + j, self.choi.get(i * m + k, j * m + l).conj());
                    }
                }
            }
        }
        SuperOp { in_dim: m, out_dim: n, choi }
    }

    /// Semidefinite program whose optimum is the completely bounded trace
    /// norm (diamond norm) of this map.
    ///
    /// With `J` the Choi matrix, the program minimizes `(t₀ + t₁)/2` over a
    /// PSD matrix `Z` of twice the Choi size whose off-diagonal corner is
    /// pinned to `-J`, with the partial traces (over the output factor) of
    /// its diagonal corners bounded by `t_i·I` through explicit PSD slacks.
    pub fn diamond_problem(&self) -> SdpProblem {
        let (n, m) = (self.in_dim, self.out_dim);
        let d = n * m;
        // Blocks: 0 = Z (2d), 1 = S0 (n), 2 = S1 (n), 3 = t0, 4 = t1.
        let mut p = SdpProblem::new(vec![2 * d, n, n, 1, 1]);
        let mut half = CMatrix::zeros(1, 1);
        half.set(0, 0, Complex64::new(0.5, 0.0));
        p.set_objective(3, half.clone()).unwrap();
        p.set_objective(4, half).unwrap();

        for r in 0..d {
            for c in 0..d {
                let v = self.choi.get(r, c);
                let mut con = SdpConstraint::new(-v.re);
                con.entries.extend(re_entry(0, r, d + c));
                p.add_constraint(con);
                let mut con = SdpConstraint::new(-v.im);
                con.entries.extend(im_entry(0, r, d + c));
                p.add_constraint(con);
            }
        }

        // tr_out(Y_i)[k, l] + S_i[k, l] - t_i·δ_kl = 0.
        for i in 0..2 {
            let off = i * d;
            for k in 0..n {
                for l in k..n {
                    let mut con = SdpConstraint::new(0.0);
                    for a in 0..m {
                        con.entries.extend(re_entry(0, off + k * m + a, off + l * m + a));
                    }
                    con.entries.extend(re_entry(1 + i, k, l));
                    if k == l {
                        con.push(3 + i, 0, 0, Complex64::new(-1.0, 0.0));
                    }
                    p.add_constraint(con);
                    if k < l {
                        let mut con = SdpConstraint::new(0.0);
                        for a in 0..m {
                            con.entries.extend(im_entry(0, off + k * m + a, off + l * m + a));
                        }
                        con.entries.extend(im_entry(1 + i, k, l));
                        p.add_constraint(con);
                    }
                }
            }
        }
        p
    }

    /// Completely bounded trace norm of this map.
    pub fn diamond_norm_with(&self, opt: &SdpOptions) -> Result<f64> {
        self.diamond_problem().solve_with(opt)?.optimal_value()
    }

    /// Completely bounded norm `‖Φ‖_cb = sup_k ‖id_k ⊗ Φ‖` with operator
    /// norms, computed exactly as the diamond norm of the adjoint.
    pub fn cb_norm_with(&self, opt: &SdpOptions) -> Result<f64> {
        self.hs_adjoint().diamond_norm_with(opt)
    }

    pub fn cb_norm(&self) -> Result<f64> {
        self.cb_norm_with(&SdpOptions::default())
    }

    /// Completely co-bounded norm: the cb norm of transposition composed
    /// after the map.
    pub fn cob_norm_with(&self, opt: &SdpOptions) -> Result<f64> {
        SuperOp::transpose_map(self.out_dim).compose(self)?.cb_norm_with(opt)
    }

    pub fn cob_norm(&self) -> Result<f64> {
        self.cob_norm_with(&SdpOptions::default())
    }

    /// Certified lower bound on the cb norm by alternating ascent on
    /// `‖(id_k ⊗ Φ)(x)‖` over contractions `x`.
    ///
    /// Each restart runs a fixed number of ascent steps; a step replaces `x`
    /// by the polar alignment of `(id_k ⊗ Φ*)` applied to the top singular
    /// dyad of the current image, which never decreases the attained norm.
    /// Restart 0 starts from the identity, restart 1 (when `amp` equals the
    /// input dimension) from the flip witness `Σ_ij e_ij ⊗ e_ji`, later
    /// restarts from seeded Haar unitaries. The result never exceeds the true
    /// cb norm.
    pub fn cb_lower_bound_sampler(
        &self,
        amp: usize,
        restarts: usize,
        steps: usize,
        seed: u64,
    ) -> Result<f64> {
        let k = amp.max(1);
        let d = k * self.in_dim;
        let adj = self.hs_adjoint();
        let mut best = 0.0f64;
        for trial in 0..restarts.max(1) {
            let mut x = if trial == 0 {
                CMatrix::identity(d)
            } else if trial == 1 && k == self.in_dim {
                let n = self.in_dim;
                let mut w = CMatrix::zeros(d, d);
                for i in 0..n {
                    for j in 0..n {
                        w.set(i * n + j, j * n + i, Complex64::new(1.0, 0.0));
                    }
                }
                w
            } else {
                let mut rng = trial_rng(seed, trial as u64);
                random_unitary(d, &mut rng)?
            };
            for _ in 0..steps {
                let y = self.amplified_apply(&x, k)?;
                let dec = svd(&y)?;
                if dec.values.is_empty() || dec.values[0] <= 0.0 {
                    break;
                }
                best = best.max(dec.values[0]);
                let u1 = dec.u.block(0, 0, y.rows(), 1);
                let v1 = dec.v.block(0, 0, y.cols(), 1);
                let dyad = u1.matmul(&v1.dagger());
                let grad = adj.amplified_apply(&dyad, k)?;
                x = polar_alignment(&grad)?;
            }
            let y = self.amplified_apply(&x, k)?;
            best = best.max(y.op_norm()?);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gaussian;

    fn rng(t: u64) -> impl rand::Rng {
        crate::trial_rng(0xC0B0, t)
    }

    #[test]
    fn schur_map_is_entrywise_product() {
        let mut r = rng(1);
        let phi = gaussian(3, 3, &mut r);
        let x = gaussian(3, 3, &mut r);
        let op = SuperOp::from_schur(&phi).unwrap();
        let lhs = op.apply(&x).unwrap();
        let rhs = phi.hadamard(&x);
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn transpose_map_transposes() {
        let mut r = rng(2);
        let x = gaussian(4, 4, &mut r);
        let op = SuperOp::transpose_map(4);
        let lhs = op.apply(&x).unwrap();
        assert!(lhs.sub(&x.transpose()).max_abs() < 1e-12);
    }

    #[test]
    fn sandwich_applies_two_sided_product() {
        let mut r = rng(3);
        let a = gaussian(2, 3, &mut r);
        let b = gaussian(3, 2, &mut r);
        let x = gaussian(3, 3, &mut r);
        let op = SuperOp::sandwich(&a, &b).unwrap();
        let lhs = op.apply(&x).unwrap();
        let rhs = a.matmul(&x).matmul(&b);
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn sandwich_choi_norm_is_product_of_hs_norms() {
        let mut r = rng(4);
        let a = gaussian(3, 2, &mut r);
        let b = gaussian(2, 3, &mut r);
        let op = SuperOp::sandwich(&a, &b).unwrap();
        let choi_norm = op.choi().op_norm().unwrap();
        let expect = a.frobenius_norm() * b.frobenius_norm();
        assert!((choi_norm - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn compose_matches_nested_application() {
        let mut r = rng(5);
        let a = gaussian(2, 3, &mut r);
        let b = gaussian(3, 2, &mut r);
        let phi = gaussian(3, 3, &mut r);
        let outer = SuperOp::sandwich(&a, &b).unwrap();
        let inner = SuperOp::from_schur(&phi).unwrap();
        let comp = outer.compose(&inner).unwrap();
        let x = gaussian(3, 3, &mut r);
        let lhs = comp.apply(&x).unwrap();
        let rhs = outer.apply(&inner.apply(&x).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn adjoint_satisfies_pairing() {
        let mut r = rng(6);
        let a = gaussian(2, 3, &mut r);
        let b = gaussian(3, 2, &mut r);
        let op = SuperOp::sandwich(&a, &b).unwrap();
        let adj = op.hs_adjoint();
        let x = gaussian(3, 3, &mut r);
        let y = gaussian(2, 2, &mut r);
        let lhs = adj.apply(&y).unwrap().hs_inner(&x).unwrap();
        let rhs = y.hs_inner(&op.apply(&x).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn adjoint_of_adjoint_is_identity() {
        let mut r = rng(7);
        let phi = gaussian(3, 3, &mut r);
        let op = SuperOp::from_schur(&phi).unwrap();
        let back = op.hs_adjoint().hs_adjoint();
        assert!(op.choi().sub(back.choi()).max_abs() < 1e-14);
    }

    #[test]
    fn amplified_apply_matches_kron_structure() {
        let mut r = rng(8);
        let phi = gaussian(2, 2, &mut r);
        let op = SuperOp::from_schur(&phi).unwrap();
        let x = gaussian(4, 4, &mut r);
        let lhs = op.amplified_apply(&x, 2).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                let xb = x.block(p * 2, q * 2, 2, 2);
                let want = op.apply(&xb).unwrap();
                let got = lhs.block(p * 2, q * 2, 2, 2);
                assert!(got.sub(&want).max_abs() < 1e-13);
            }
        }
    }

    #[test]
    fn cb_norm_of_identity_is_one() {
        let cb = SuperOp::identity(2).cb_norm().unwrap();
        assert!((cb - 1.0).abs() < 1e-5, "got {}", cb);
    }

    #[test]
    fn cb_norm_of_transpose_is_dimension() {
        let cb = SuperOp::transpose_map(2).cb_norm().unwrap();
        assert!((cb - 2.0).abs() < 1e-5, "got {}", cb);
    }

    #[test]
    fn cob_norm_of_identity_is_dimension() {
        // Transposition after the identity is transposition.
        let cob = SuperOp::identity(2).cob_norm().unwrap();
        assert!((cob - 2.0).abs() < 1e-5, "got {}", cob);
    }

    #[test]
    fn cb_is_submultiplicative_under_composition() {
        let mut r = rng(9);
        let phi = gaussian(2, 2, &mut r);
        let psi = gaussian(2, 2, &mut r);
        let f = SuperOp::from_schur(&phi).unwrap();
        let g = SuperOp::from_schur(&psi).unwrap();
        let fg = f.compose(&g).unwrap();
        let cb_f = f.cb_norm().unwrap();
        let cb_g = g.cb_norm().unwrap();
        let cb_fg = fg.cb_norm().unwrap();
        assert!(cb_fg <= cb_f * cb_g + 1e-5, "{} > {} * {}", cb_fg, cb_f, cb_g);
    }

    #[test]
    fn direct_sum_cb_is_max_of_parts() {
        let t = SuperOp::transpose_map(2);
        let i = SuperOp::identity(2);
        let both = t.direct_sum(&i);
        let x = gaussian(4, 4, &mut rng(10));
        let y = both.apply(&x).unwrap();
        // Mixed blocks vanish, corners transform independently.
        assert!(y.block(0, 2, 2, 2).max_abs() < 1e-14);
        assert!(y.block(2, 0, 2, 2).max_abs() < 1e-14);
        assert!(y.block(0, 0, 2, 2).sub(&x.block(0, 0, 2, 2).transpose()).max_abs() < 1e-13);
        assert!(y.block(2, 2, 2, 2).sub(&x.block(2, 2, 2, 2)).max_abs() < 1e-13);
        let cb = both.cb_norm().unwrap();
        assert!((cb - 2.0).abs() < 1e-4, "got {}", cb);
    }

    #[test]
    fn sampler_matches_transpose_cb_and_never_exceeds() {
        let op = SuperOp::transpose_map(2);
        let lower = op.cb_lower_bound_sampler(2, 4, 12, 7).unwrap();
        assert!(lower <= 2.0 + 1e-9, "lower bound {} exceeds cb", lower);
        assert!((lower - 2.0).abs() < 1e-8, "ascent should reach 2, got {}", lower);
    }
}
