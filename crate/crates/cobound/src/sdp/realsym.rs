//! Dense real symmetric kernels for the interior-point core: flat row-major
//! square buffers, Cholesky, triangular solves, and a cyclic Jacobi
//! eigensolver. Everything is private to the solver.

/// Dense real square matrix, row-major. Symmetry is by convention of use.
#[derive(Debug, Clone)]
pub(crate) struct RMat {
    pub n: usize,
    pub a: Vec<f64>,
}

impl RMat {
    pub fn zeros(n: usize) -> Self {
        RMat { n, a: vec![0.0; n * n] }
    }

    pub fn identity_scaled(n: usize, t: f64) -> Self {
        let mut m = RMat::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = t;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    pub fn frob(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &RMat) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.a.iter().zip(&other.a).map(|(x, y)| x * y).sum()
    }

    pub fn add_scaled(&mut self, other: &RMat, t: f64) {
        debug_assert_eq!(self.n, other.n);
        for (x, y) in self.a.iter_mut().zip(&other.a) {
            *x += t * y;
        }
    }

    pub fn scale(&mut self, t: f64) {
        for x in self.a.iter_mut() {
            *x *= t;
        }
    }

    pub fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (self.a[i * n + j] + self.a[j * n + i]);
                self.a[i * n + j] = v;
                self.a[j * n + i] = v;
            }
        }
    }

    /// `C = A·B`.
    pub fn mul(a: &RMat, b: &RMat) -> RMat {
        let n = a.n;
        debug_assert_eq!(n, b.n);
        let mut c = RMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = a.a[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let brow = &b.a[k * n..(k + 1) * n];
                let crow = &mut c.a[i * n..(i + 1) * n];
                for j in 0..n {
                    crow[j] += aik * brow[j];
                }
            }
        }
        c
    }

    /// `C = Aᵀ·B`.
    pub fn mul_at_b(a: &RMat, b: &RMat) -> RMat {
        let n = a.n;
        debug_assert_eq!(n, b.n);
        let mut c = RMat::zeros(n);
        for k in 0..n {
            for i in 0..n {
                let aki = a.a[k * n + i];
                if aki == 0.0 {
                    continue;
                }
                let brow = &b.a[k * n..(k + 1) * n];
                let crow = &mut c.a[i * n..(i + 1) * n];
                for j in 0..n {
                    crow[j] += aki * brow[j];
                }
            }
        }
        c
    }

    /// `G·diag(d)·Gᵀ`, symmetric by construction.
    pub fn scaled_gram(g: &RMat, d: &[f64]) -> RMat {
        let n = g.n;
        let mut w = RMat::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += g.a[i * n + k] * d[k] * g.a[j * n + k];
                }
                w.a[i * n + j] = acc;
                w.a[j * n + i] = acc;
            }
        }
        w
    }
}

/// In-place lower Cholesky of a symmetric positive definite matrix; returns
/// `None` if a non-positive pivot is met. On success the lower triangle holds
/// `L` (upper triangle zeroed).
pub(crate) fn cholesky(m: &RMat) -> Option<RMat> {
    let n = m.n;
    let mut l = m.clone();
    for j in 0..n {
        let mut d = l.a[j * n + j];
        for k in 0..j {
            d -= l.a[j * n + k] * l.a[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return None;
        }
        let dj = d.sqrt();
        l.a[j * n + j] = dj;
        for i in (j + 1)..n {
            let mut v = l.a[i * n + j];
            for k in 0..j {
                v -= l.a[i * n + k] * l.a[j * n + k];
            }
            l.a[i * n + j] = v / dj;
        }
        for i in 0..j {
            l.a[i * n + j] = 0.0;
        }
    }
    Some(l)
}

/// Solves `L·x = b` in place (forward substitution).
pub(crate) fn solve_lower_vec(l: &RMat, b: &mut [f64]) {
    let n = l.n;
    for i in 0..n {
        let mut v = b[i];
        for k in 0..i {
            v -= l.a[i * n + k] * b[k];
        }
        b[i] = v / l.a[i * n + i];
    }
}

/// Solves `Lᵀ·x = b` in place (back substitution).
pub(crate) fn solve_lower_t_vec(l: &RMat, b: &mut [f64]) {
    let n = l.n;
    for i in (0..n).rev() {
        let mut v = b[i];
        for k in (i + 1)..n {
            v -= l.a[k * n + i] * b[k];
        }
        b[i] = v / l.a[i * n + i];
    }
}

/// `B ← L⁻¹·B`, column-wise forward substitution.
pub(crate) fn solve_lower_mat(l: &RMat, b: &mut RMat) {
    let n = l.n;
    for i in 0..n {
        let li = i * n;
        for k in 0..i {
            let c = l.a[li + k];
            if c == 0.0 {
                continue;
            }
            for j in 0..n {
                b.a[li + j] -= c * b.a[k * n + j];
            }
        }
        let d = l.a[li + i];
        for j in 0..n {
            b.a[li + j] /= d;
        }
    }
}

/// Symmetric inverse from a Cholesky factor: returns `(L·Lᵀ)⁻¹`.
pub(crate) fn chol_inverse(l: &RMat) -> RMat {
    let n = l.n;
    let mut inv = RMat::zeros(n);
    let mut col = vec![0.0; n];
    for j in 0..n {
        col.iter_mut().for_each(|x| *x = 0.0);
        col[j] = 1.0;
        solve_lower_vec(l, &mut col);
        solve_lower_t_vec(l, &mut col);
        for i in 0..n {
            inv.a[i * n + j] = col[i];
        }
    }
    let mut out = inv;
    out.symmetrize();
    out
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi.
/// Returns eigenvalues ascending; eigenvectors (columns) only if requested.
pub(crate) fn sym_eig(m: &RMat, want_vectors: bool) -> Option<(Vec<f64>, Option<RMat>)> {
    let n = m.n;
    let mut h = m.clone();
    h.symmetrize();
    let mut q = if want_vectors { Some(RMat::identity_scaled(n, 1.0)) } else { None };
    let frob = h.frob().max(f64::MIN_POSITIVE);
    let tol = 1e-14 * frob;

    let mut done = false;
    for _ in 0..80 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += h.a[i * n + j] * h.a[i * n + j];
            }
        }
        if off.sqrt() <= tol {
            done = true;
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let hpq = h.a[p * n + r];
                if hpq.abs() <= tol / (n as f64) {
                    continue;
                }
                let app = h.a[p * n + p];
                let aqq = h.a[r * n + r];
                let zeta = (app - aqq) / (2.0 * hpq);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let xp = h.a[i * n + p];
                    let xq = h.a[i * n + r];
                    h.a[i * n + p] = c * xp + s * xq;
                    h.a[i * n + r] = -s * xp + c * xq;
                }
                for j in 0..n {
                    let xp = h.a[p * n + j];
                    let xq = h.a[r * n + j];
                    h.a[p * n + j] = c * xp + s * xq;
                    h.a[r * n + j] = -s * xp + c * xq;
                }
                h.a[p * n + r] = 0.0;
                h.a[r * n + p] = 0.0;
                if let Some(qm) = q.as_mut() {
                    for i in 0..n {
                        let xp = qm.a[i * n + p];
                        let xq = qm.a[i * n + r];
                        qm.a[i * n + p] = c * xp + s * xq;
                        qm.a[i * n + r] = -s * xp + c * xq;
                    }
                }
            }
        }
    }
    if !done {
        return None;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| h.a[x * n + x].partial_cmp(&h.a[y * n + y]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| h.a[i * n + i]).collect();
    let vecs = q.map(|qm| {
        let mut v = RMat::zeros(n);
        for (dst, &src) in order.iter().enumerate() {
            for i in 0..n {
                v.a[i * n + dst] = qm.a[i * n + src];
            }
        }
        v
    });
    Some((vals, vecs))
}

/// Smallest eigenvalue only.
pub(crate) fn sym_eig_min(m: &RMat) -> Option<f64> {
    sym_eig(m, false).map(|(vals, _)| vals[0])
}
