//! Finite groups with validated multiplication tables, catalogs of
//! irreducible unitary representations, Fourier analysis on the regular
//! representation, and the group-side multiplier computations: the
//! completely co-bounded norm of a two-sided convolution multiplier from its
//! Fourier data, the ℓ¹-vs-operator-norm comparison for convolutors, and the
//! contrast between entrywise multipliers on `M_N` and convolution
//! multipliers over a group of order `N`.
//!
//! Conventions: group elements are indices `0..N`; functions on the group
//! are slices of length `N`; the normalized counting measure is used
//! throughout, so `(f * x)(s) = (1/N)·Σ_t f(t)·x(t⁻¹s)` and
//! `f̂(π) = (1/N)·Σ_t f(t)·π(t)†`.

use crate::error::{Error, Result};
use crate::linalg::{gauss, CMatrix};
use crate::schur::SchurSymbol;
use crate::sdp::SdpOptions;
use crate::superop::SuperOp;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

const REP_TOL: f64 = 1e-12;
const ORTHO_TOL: f64 = 1e-10;

/// A finite group given by its full multiplication table, validated on
/// construction (Latin square, two-sided identity, inverses, associativity).
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    name: String,
}

impl FiniteGroup {
    pub fn new(name: &str, mult: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::Validation("group table must be nonempty".into()));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "multiplication table row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Validation(format!(
                        "table entry {} out of range for order {}",
                        v, n
                    )));
                }
            }
        }
        // Latin square: every row and column is a permutation.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen_row[mult[i][j]], true) {
                    return Err(Error::Validation(format!("row {} repeats a product", i)));
                }
                if std::mem::replace(&mut seen_col[mult[j][i]], true) {
                    return Err(Error::Validation(format!("column {} repeats a product", i)));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|t| mult[e][t] == t && mult[t][e] == t))
            .ok_or_else(|| Error::Validation("table has no two-sided identity".into()))?;
        let mut inv = vec![0usize; n];
        for t in 0..n {
            inv[t] = (0..n)
                .find(|&u| mult[t][u] == identity && mult[u][t] == identity)
                .ok_or_else(|| {
                    Error::Validation(format!("element {} has no two-sided inverse", t))
                })?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::Validation(format!(
                        "expected {} labels, got {}",
                        n,
                        l.len()
                    )));
                }
                l
            }
            None => (0..n).map(|t| format!("g{}", t)).collect(),
        };
        Ok(FiniteGroup { order: n, mult, inv, identity, labels, name: name.to_string() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }
}

/// A unitary representation listed element-by-element: `mats[t] = π(t)`.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub name: String,
    mats: Vec<CMatrix>,
}

impl Irrep {
    pub fn new(name: &str, mats: Vec<CMatrix>) -> Self {
        Irrep { name: name.to_string(), mats }
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.rows())
    }

    pub fn mat(&self, t: usize) -> &CMatrix {
        &self.mats[t]
    }

    pub fn character(&self, t: usize) -> Complex64 {
        self.mats[t].trace()
    }

    /// Homomorphism property, unitarity, and irreducibility
    /// (`(1/N)·Σ_t |χ(t)|² = 1`).
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order();
        if self.mats.len() != n {
            return Err(Error::Validation(format!(
                "representation '{}' lists {} matrices for a group of order {}",
                self.name,
                self.mats.len(),
                n
            )));
        }
        let d = self.dim();
        if d == 0 {
            return Err(Error::Validation(format!("representation '{}' is empty", self.name)));
        }
        let eye = CMatrix::identity(d);
        for t in 0..n {
            let m = &self.mats[t];
            if m.rows() != d || m.cols() != d {
                return Err(Error::Validation(format!(
                    "representation '{}' has mixed dimensions",
                    self.name
                )));
            }
            m.check_finite()?;
            if m.matmul(&m.dagger()).sub(&eye).max_abs() > REP_TOL {
                return Err(Error::Validation(format!(
                    "representation '{}' is not unitary at element {}",
                    self.name, t
                )));
            }
        }
        for s in 0..n {
            for t in 0..n {
                let dev =
                    self.mats[s].matmul(&self.mats[t]).sub(&self.mats[g.mul(s, t)]).max_abs();
                if dev > REP_TOL {
                    return Err(Error::Validation(format!(
                        "representation '{}' fails the product rule at ({}, {}): deviation {:.3e}",
                        self.name, s, t, dev
                    )));
                }
            }
        }
        let mean_sq: f64 =
            (0..n).map(|t| self.character(t).norm_sqr()).sum::<f64>() / n as f64;
        if (mean_sq - 1.0).abs() > ORTHO_TOL {
            return Err(Error::Validation(format!(
                "representation '{}' is not irreducible: mean |character|^2 = {:.12}",
                self.name, mean_sq
            )));
        }
        Ok(())
    }
}

/// A complete list of pairwise inequivalent irreducible representations.
#[derive(Debug, Clone)]
pub struct IrrepCatalog {
    pub group: FiniteGroup,
    pub irreps: Vec<Irrep>,
}

impl IrrepCatalog {
    /// Validates every representation, completeness (`Σ d² = N`), and
    /// character orthogonality across the catalog.
    pub fn validate(&self) -> Result<()> {
        let n = self.group.order();
        for rep in &self.irreps {
            rep.validate(&self.group)?;
        }
        let dim_sum: usize = self.irreps.iter().map(|r| r.dim() * r.dim()).sum();
        if dim_sum != n {
            return Err(Error::Validation(format!(
                "squared dimensions sum to {}, expected the group order {}",
                dim_sum, n
            )));
        }
        for a in 0..self.irreps.len() {
            for b in 0..a {
                let inner: Complex64 = (0..n)
                    .map(|t| self.irreps[a].character(t) * self.irreps[b].character(t).conj())
                    .sum::<Complex64>()
                    / n as f64;
                if inner.norm() > ORTHO_TOL {
                    return Err(Error::Validation(format!(
                        "characters of '{}' and '{}' are not orthogonal: {:.3e}",
                        self.irreps[a].name,
                        self.irreps[b].name,
                        inner.norm()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn max_dim(&self) -> usize {
        self.irreps.iter().map(|r| r.dim()).max().unwrap_or(0)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Cyclic group of order `k` with its `k` characters.
pub fn cyclic_group(k: usize) -> Result<IrrepCatalog> {
    if k == 0 || k > 12 {
        return Err(Error::Domain(format!("cyclic order must be in 1..=12, got {}", k)));
    }
    let mult: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
    let labels = (0..k)
        .map(|t| if t == 0 { "e".to_string() } else { format!("g{}", t) })
        .collect();
    let group = FiniteGroup::new(&format!("cyclic({})", k), mult, Some(labels))?;
    let irreps = (0..k)
        .map(|j| {
            let mats = (0..k)
                .map(|t| {
                    let mut m = CMatrix::zeros(1, 1);
                    m.set(0, 0, Complex64::from_polar(1.0, 2.0 * PI * ((j * t) % k) as f64 / k as f64));
                    m
                })
                .collect();
            Irrep::new(&format!("chi{}", j), mats)
        })
        .collect();
    Ok(IrrepCatalog { group, irreps })
}

fn rotation(theta: f64) -> CMatrix {
    CMatrix::from_rows(vec![
        vec![c(theta.cos(), 0.0), c(-theta.sin(), 0.0)],
        vec![c(theta.sin(), 0.0), c(theta.cos(), 0.0)],
    ])
    .unwrap()
}

fn reflection() -> CMatrix {
    CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
        .unwrap()
}

/// Dihedral group of order `2n`: element `r^m·s^f` has index `m + n·f`.
/// Supplies the irreducible representations for `n = 3` (the symmetric
/// group on three letters) and `n = 4`.
pub fn dihedral_group(n: usize) -> Result<IrrepCatalog> {
    if n != 3 && n != 4 {
        return Err(Error::Domain(format!(
            "dihedral catalog is provided for n = 3 and n = 4, got {}",
            n
        )));
    }
    let order = 2 * n;
    let idx = |m: usize, f: usize| m + n * f;
    let mut mult = vec![vec![0usize; order]; order];
    for m1 in 0..n {
        for f1 in 0..2 {
            for m2 in 0..n {
                for f2 in 0..2 {
                    let m = if f1 == 0 { (m1 + m2) % n } else { (m1 + n - m2 % n) % n };
                    mult[idx(m1, f1)][idx(m2, f2)] = idx(m, (f1 + f2) % 2);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|t| {
            let (m, f) = (t % n, t / n);
            match (m, f) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r{}", m),
                (0, _) => "s".to_string(),
                (_, _) => format!("r{}s", m),
            }
        })
        .collect();
    let name = if n == 3 { "s3".to_string() } else { format!("d{}", n) };
    let group = FiniteGroup::new(&name, mult, Some(labels))?;

    let mut irreps = Vec::new();
    let one_dim = |a: f64, b: f64, tag: &str| {
        let mats = (0..order)
            .map(|t| {
                let (m, f) = (t % n, t / n);
                let mut mat = CMatrix::zeros(1, 1);
                mat.set(0, 0, c(a.powi(m as i32) * b.powi(f as i32), 0.0));
                mat
            })
            .collect();
        Irrep::new(tag, mats)
    };
    irreps.push(one_dim(1.0, 1.0, "trivial"));
    irreps.push(one_dim(1.0, -1.0, "sign"));
    if n == 4 {
        irreps.push(one_dim(-1.0, 1.0, "alt"));
        irreps.push(one_dim(-1.0, -1.0, "alt-sign"));
    }
    let two = (0..order)
        .map(|t| {
            let (m, f) = (t % n, t / n);
            let r = rotation(2.0 * PI * m as f64 / n as f64);
            if f == 0 {
                r
            } else {
                r.matmul(&reflection())
            }
        })
        .collect();
    irreps.push(Irrep::new("plane", two));
    Ok(IrrepCatalog { group, irreps })
}

/// Quaternion group of order 8 with the four characters of its abelian
/// quotient and the two-dimensional representation by Pauli-type unitaries.
pub fn quaternion_group() -> Result<IrrepCatalog> {
    // Axis products: ax_mul[a][b] = (sign flip, axis) for 1, i, j, k.
    const AX: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let idx = |s: usize, a: usize| s * 4 + a;
    let mut mult = vec![vec![0usize; 8]; 8];
    for s1 in 0..2 {
        for a1 in 0..4 {
            for s2 in 0..2 {
                for a2 in 0..4 {
                    let (flip, axis) = AX[a1][a2];
                    mult[idx(s1, a1)][idx(s2, a2)] = idx((s1 + s2 + flip) % 2, axis);
                }
            }
        }
    }
    let labels =
        ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
    let group = FiniteGroup::new("q8", mult, Some(labels))?;

    let mut irreps = Vec::new();
    for (eps, del, tag) in
        [(1.0, 1.0, "trivial"), (-1.0, 1.0, "chi-i"), (1.0, -1.0, "chi-j"), (-1.0, -1.0, "chi-k")]
    {
        let vals = [1.0, eps, del, eps * del];
        let mats = (0..8)
            .map(|t| {
                let mut m = CMatrix::zeros(1, 1);
                m.set(0, 0, c(vals[t % 4], 0.0));
                m
            })
            .collect();
        irreps.push(Irrep::new(tag, mats));
    }
    let base = [
        CMatrix::identity(2),
        CMatrix::from_rows(vec![vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]])
            .unwrap(),
        CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]])
            .unwrap(),
        CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap(),
    ];
    let mats = (0..8)
        .map(|t| {
            let m = base[t % 4].clone();
            if t < 4 {
                m
            } else {
                m.scale(c(-1.0, 0.0))
            }
        })
        .collect();
    irreps.push(Irrep::new("spin", mats));
    Ok(IrrepCatalog { group, irreps })
}

/// Looks up a named catalog: `cyclic:k` (k in 1..=12), `s3`, `d4`, `q8`.
pub fn catalog(name: &str) -> Result<IrrepCatalog> {
    let lower = name.trim().to_ascii_lowercase();
    if let Some(k) = lower.strip_prefix("cyclic:") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::Domain(format!("bad cyclic order in '{}'", name)))?;
        return cyclic_group(k);
    }
    match lower.as_str() {
        "s3" => dihedral_group(3),
        "d4" => dihedral_group(4),
        "q8" => quaternion_group(),
        _ => Err(Error::Domain(format!(
            "unknown group '{}'; expected cyclic:k, s3, d4, or q8",
            name
        ))),
    }
}

fn check_len(g: &FiniteGroup, f: &[Complex64]) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::ShapeMismatch(format!(
            "function has {} values for a group of order {}",
            f.len(),
            g.order()
        )));
    }
    Ok(())
}

/// `N·δ_t`, the convolution unit mass at `t` under normalized counting
/// measure.
pub fn scaled_delta(g: &FiniteGroup, t: usize) -> Vec<Complex64> {
    let mut f = vec![c(0.0, 0.0); g.order()];
    f[t] = c(g.order() as f64, 0.0);
    f
}

/// Gaussian random function on the group.
pub fn random_function(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..n).map(|_| c(gauss(rng), gauss(rng))).collect()
}

/// `(f * x)(s) = (1/N)·Σ_t f(t)·x(t⁻¹s)`.
pub fn convolve(g: &FiniteGroup, f: &[Complex64], x: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(g, f)?;
    check_len(g, x)?;
    let n = g.order();
    let mut out = vec![c(0.0, 0.0); n];
    for s in 0..n {
        let mut acc = c(0.0, 0.0);
        for t in 0..n {
            acc += f[t] * x[g.mul(g.inv(t), s)];
        }
        out[s] = acc / n as f64;
    }
    Ok(out)
}

/// Fourier coefficients `f̂(π) = (1/N)·Σ_t f(t)·π(t)†`, one per catalog
/// entry.
pub fn fourier(cat: &IrrepCatalog, f: &[Complex64]) -> Result<Vec<CMatrix>> {
    check_len(&cat.group, f)?;
    let n = cat.group.order();
    let mut out = Vec::with_capacity(cat.irreps.len());
    for rep in &cat.irreps {
        let d = rep.dim();
        let mut acc = CMatrix::zeros(d, d);
        for t in 0..n {
            acc = acc.add(&rep.mat(t).dagger().scale(f[t]));
        }
        out.push(acc.scale(c(1.0 / n as f64, 0.0)));
    }
    Ok(out)
}

/// Inverts Fourier coefficients: `f(s) = Σ_π d_π·tr(π(s)·f̂(π))`.
pub fn fourier_inverse(cat: &IrrepCatalog, coeffs: &[CMatrix]) -> Result<Vec<Complex64>> {
    if coeffs.len() != cat.irreps.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} coefficient blocks for {} representations",
            coeffs.len(),
            cat.irreps.len()
        )));
    }
    let n = cat.group.order();
    let mut f = vec![c(0.0, 0.0); n];
    for (rep, co) in cat.irreps.iter().zip(coeffs) {
        let d = rep.dim();
        if co.rows() != d || co.cols() != d {
            return Err(Error::ShapeMismatch(format!(
                "coefficient block for '{}' must be {}x{}",
                rep.name, d, d
            )));
        }
        for s in 0..n {
            f[s] += rep.mat(s).matmul(co).trace() * d as f64;
        }
    }
    Ok(f)
}

/// Left convolution operator `λ(f)` on ℓ²(G): `λ(f)[s,u] = f(s·u⁻¹)/N`, so
/// `λ(f)·x = f * x`.
pub fn left_convolutor(g: &FiniteGroup, f: &[Complex64]) -> Result<CMatrix> {
    check_len(g, f)?;
    let n = g.order();
    Ok(CMatrix::from_fn(n, n, |s, u| f[g.mul(s, g.inv(u))] / n as f64))
}

/// Right convolution operator `ρ(f)`: `ρ(f)[s,t] = f(t⁻¹·s)/N`, so
/// `ρ(f)·x = x * f`. Commutes with every `λ(h)`.
pub fn right_convolutor(g: &FiniteGroup, f: &[Complex64]) -> Result<CMatrix> {
    check_len(g, f)?;
    let n = g.order();
    Ok(CMatrix::from_fn(n, n, |s, t| f[g.mul(g.inv(t), s)] / n as f64))
}

/// The permutation matrix `λ(N·δ_r)`: `[s,t] = 1` iff `s = r·t`.
pub fn left_translation(g: &FiniteGroup, r: usize) -> CMatrix {
    let n = g.order();
    CMatrix::from_fn(n, n, |s, t| if s == g.mul(r, t) { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// The permutation matrix `ρ(N·δ_r)`: `[s,t] = 1` iff `s = t·r`.
pub fn right_translation(g: &FiniteGroup, r: usize) -> CMatrix {
    let n = g.order();
    CMatrix::from_fn(n, n, |s, t| if s == g.mul(t, r) { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// Column offsets of each representation's `d²` coordinates in the
/// Fourier-side basis, plus the total (which equals the order).
fn coefficient_offsets(cat: &IrrepCatalog) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(cat.irreps.len());
    let mut acc = 0;
    for rep in &cat.irreps {
        offs.push(acc);
        acc += rep.dim() * rep.dim();
    }
    (offs, acc)
}

/// Sizes of the diagonal blocks in the rotated left translations: each
/// `d`-dimensional representation contributes `d` copies of a `d×d` block.
pub fn expanded_block_sizes(cat: &IrrepCatalog) -> Vec<usize> {
    let mut sizes = Vec::new();
    for rep in &cat.irreps {
        sizes.extend(std::iter::repeat(rep.dim()).take(rep.dim()));
    }
    sizes
}

/// The change of basis on ℓ²(G) that simultaneously block-diagonalizes all
/// translations: column `(π, copy j, member i)` — copy index outer — holds
/// `√(d_π/N)·conj(π(t)[i,j])` at row `t`. Errors if the assembled matrix is
/// not unitary to 1e-10 (a catalog defect).
pub fn peter_weyl_unitary(cat: &IrrepCatalog) -> Result<CMatrix> {
    let n = cat.group.order();
    let (offs, total) = coefficient_offsets(cat);
    if total != n {
        return Err(Error::Validation(format!(
            "representation coordinates sum to {}, expected {}",
            total, n
        )));
    }
    let mut u = CMatrix::zeros(n, n);
    for (rep, &off) in cat.irreps.iter().zip(&offs) {
        let d = rep.dim();
        let scale = (d as f64 / n as f64).sqrt();
        for t in 0..n {
            let m = rep.mat(t);
            for j in 0..d {
                for i in 0..d {
                    u.set(t, off + j * d + i, m.get(i, j).conj() * scale);
                }
            }
        }
    }
    let dev = u.dagger().matmul(&u).sub(&CMatrix::identity(n)).max_abs();
    if dev > 1e-10 {
        return Err(Error::Validation(format!(
            "assembled basis is not unitary: deviation {:.3e}",
            dev
        )));
    }
    Ok(u)
}

/// Conjugates every left and right translation by the Fourier basis and
/// measures the worst deviation from the expected block forms
/// `⊕_π I_d ⊗ π(s)` and `⊕_π π(s)ᵀ ⊗ I_d`.
pub fn peter_weyl_check(cat: &IrrepCatalog) -> Result<f64> {
    let u = peter_weyl_unitary(cat)?;
    let n = cat.group.order();
    let (offs, _) = coefficient_offsets(cat);
    let mut worst = 0.0f64;
    for s in 0..n {
        let rot_l = u.dagger().matmul(&left_translation(&cat.group, s)).matmul(&u);
        let rot_r = u.dagger().matmul(&right_translation(&cat.group, s)).matmul(&u);
        let mut expect_l = CMatrix::zeros(n, n);
        let mut expect_r = CMatrix::zeros(n, n);
        for (rep, &off) in cat.irreps.iter().zip(&offs) {
            let d = rep.dim();
            let pi = rep.mat(s);
            expect_l.set_block(off, off, &CMatrix::identity(d).kron(pi));
            expect_r.set_block(off, off, &pi.transpose().kron(&CMatrix::identity(d)));
        }
        worst = worst.max(rot_l.sub(&expect_l).max_abs());
        worst = worst.max(rot_r.sub(&expect_r).max_abs());
    }
    Ok(worst)
}

/// Fourier-side analysis of the two-sided convolution multiplier
/// `x ↦ λ(f)·x·ρ(g)`.
#[derive(Debug, Clone)]
pub struct GroupMultiplierReport {
    /// `max_π ‖f̂(π)‖₂·‖ĝ(π)‖₂` — the completely co-bounded norm of the
    /// block-diagonal Fourier realization.
    pub formula: f64,
    /// The same products evaluated per representation.
    pub per_block_formula: Vec<f64>,
    /// Per-representation SDP values of the co-bounded norm of the sandwich
    /// map `y ↦ f̂(π)·y·ĝ(π)`.
    pub per_block_sdp: Vec<f64>,
    /// Worst entrywise deviation of the rotated operator `U†·λ(f)ρ(g)·U`
    /// from its expected block-diagonal form.
    pub block_deviation: f64,
}

/// Computes the report and verifies the block structure before trusting the
/// formula; a deviation above 1e-10 is an error.
pub fn group_multiplier_cob(
    cat: &IrrepCatalog,
    f: &[Complex64],
    g: &[Complex64],
    opt: &SdpOptions,
) -> Result<GroupMultiplierReport> {
    let n = cat.group.order();
    check_len(&cat.group, f)?;
    check_len(&cat.group, g)?;
    let fhat = fourier(cat, f)?;
    let ghat = fourier(cat, g)?;

    // Verify that λ(f)ρ(g) really is block-diagonal in the Fourier basis,
    // with blocks B_π ⊗ A_π built from the plain (undaggered) averages.
    let u = peter_weyl_unitary(cat)?;
    let prod = left_convolutor(&cat.group, f)?.matmul(&right_convolutor(&cat.group, g)?);
    let rotated = u.dagger().matmul(&prod).matmul(&u);
    let (offs, _) = coefficient_offsets(cat);
    let mut expect = CMatrix::zeros(n, n);
    for (rep, &off) in cat.irreps.iter().zip(&offs) {
        let d = rep.dim();
        let mut a = CMatrix::zeros(d, d);
        let mut b = CMatrix::zeros(d, d);
        for t in 0..n {
            a = a.add(&rep.mat(t).scale(f[t]));
            b = b.add(&rep.mat(t).scale(g[t]));
        }
        a = a.scale(c(1.0 / n as f64, 0.0));
        b = b.scale(c(1.0 / n as f64, 0.0));
        expect.set_block(off, off, &b.transpose().kron(&a));
    }
    let block_deviation = rotated.sub(&expect).max_abs();
    if block_deviation > 1e-10 {
        return Err(Error::Validation(format!(
            "rotated multiplier is not block-diagonal: deviation {:.3e}",
            block_deviation
        )));
    }

    let mut per_block_formula = Vec::with_capacity(fhat.len());
    let mut per_block_sdp = Vec::with_capacity(fhat.len());
    for (a, b) in fhat.iter().zip(&ghat) {
        per_block_formula.push(a.frobenius_norm() * b.frobenius_norm());
        let map = SuperOp::sandwich(a, b)?;
        per_block_sdp.push(map.cob_norm_with(opt)?);
    }
    let formula = per_block_formula.iter().cloned().fold(0.0, f64::max);
    Ok(GroupMultiplierReport { formula, per_block_formula, per_block_sdp, block_deviation })
}

/// Co-bounded norm of the identity multiplier (`f = g = N·δ_e`): equals the
/// largest representation dimension.
pub fn identity_cob(cat: &IrrepCatalog) -> Result<f64> {
    let e = scaled_delta(&cat.group, cat.group.identity());
    let fhat = fourier(cat, &e)?;
    Ok(fhat
        .iter()
        .map(|m| m.frobenius_norm() * m.frobenius_norm())
        .fold(0.0, f64::max))
}

/// ℓ¹ mass of `f` against the operator norm of the nonnegative matrix
/// `[|f(s·t⁻¹)|]`; equal for every function because the matrix has constant
/// row and column sums.
#[derive(Debug, Clone, Copy)]
pub struct KestenReport {
    pub l1_value: f64,
    pub matrix_norm: f64,
    pub ratio: f64,
}

pub fn kesten_check(g: &FiniteGroup, f: &[Complex64]) -> Result<KestenReport> {
    check_len(g, f)?;
    let n = g.order();
    let l1: f64 = f.iter().map(|v| v.norm()).sum();
    let a = CMatrix::from_fn(n, n, |s, t| c(f[g.mul(s, g.inv(t))].norm(), 0.0));
    let matrix_norm = a.op_norm()?;
    let ratio = if l1 > 0.0 { matrix_norm / l1 } else { 1.0 };
    Ok(KestenReport { l1_value: l1, matrix_norm, ratio })
}

/// Contrast between the entrywise all-ones multiplier on `M_N` (co-bounded
/// norm `N`) and the identity convolution multiplier over a group of order
/// `N` (co-bounded norm `max_π d_π`).
#[derive(Debug, Clone, Copy)]
pub struct ContrastReport {
    pub matrix_side: f64,
    pub group_side: f64,
    pub ratio: f64,
}

pub fn herz_schur_vs_schur_report(cat: &IrrepCatalog) -> Result<ContrastReport> {
    let n = cat.group.order();
    let ones = CMatrix::from_fn(n, n, |_, _| c(1.0, 0.0));
    let matrix_side = SchurSymbol::new(ones)?.cob_norm_formula()?;
    let group_side = identity_cob(cat)?;
    Ok(ContrastReport { matrix_side, group_side, ratio: matrix_side / group_side })
}

/// Renames the elements of a catalog through a bijection `perm` (new index
/// of old element `t` is `perm[t]`); all derived quantities are invariant.
pub fn relabel(cat: &IrrepCatalog, perm: &[usize]) -> Result<IrrepCatalog> {
    let n = cat.group.order();
    if perm.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "permutation has length {}, expected {}",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Validation("not a permutation".into()));
        }
    }
    let mut mult = vec![vec![0usize; n]; n];
    let mut labels = vec![String::new(); n];
    for a in 0..n {
        labels[perm[a]] = cat.group.label(a).to_string();
        for b in 0..n {
            mult[perm[a]][perm[b]] = perm[cat.group.mul(a, b)];
        }
    }
    let group = FiniteGroup::new(cat.group.name(), mult, Some(labels))?;
    let irreps = cat
        .irreps
        .iter()
        .map(|rep| {
            let mut mats = vec![CMatrix::zeros(rep.dim(), rep.dim()); n];
            for t in 0..n {
                mats[perm[t]] = rep.mat(t).clone();
            }
            Irrep::new(&rep.name, mats)
        })
        .collect();
    Ok(IrrepCatalog { group, irreps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trial_rng;

    fn perm_fn(f: &[Complex64], perm: &[usize]) -> Vec<Complex64> {
        let mut out = vec![c(0.0, 0.0); f.len()];
        for (t, &v) in f.iter().enumerate() {
            out[perm[t]] = v;
        }
        out
    }

    #[test]
    fn catalogs_validate() {
        for name in ["cyclic:1", "cyclic:2", "cyclic:7", "cyclic:12", "s3", "d4", "q8"] {
            let cat = catalog(name).unwrap();
            cat.validate().unwrap_or_else(|e| panic!("{} fails: {}", name, e));
        }
    }

    #[test]
    fn catalog_rejects_unknown_names() {
        assert!(catalog("cyclic:0").is_err());
        assert!(catalog("cyclic:13").is_err());
        assert!(catalog("a5").is_err());
    }

    #[test]
    fn group_constructor_rejects_bad_tables() {
        // Not a Latin square.
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteGroup::new("bad", t, None).is_err());
        // Latin square without associativity or identity: 5-element table
        // from a quasigroup (subtraction mod 5).
        let t: Vec<Vec<usize>> = (0..5).map(|a| (0..5).map(|b| (a + 5 - b) % 5).collect()).collect();
        assert!(FiniteGroup::new("bad", t, None).is_err());
    }

    #[test]
    fn inverse_and_identity_round_trip() {
        let cat = catalog("q8").unwrap();
        let g = &cat.group;
        for t in 0..g.order() {
            assert_eq!(g.mul(t, g.inv(t)), g.identity());
            assert_eq!(g.mul(g.inv(t), t), g.identity());
        }
        assert_eq!(g.label(g.identity()), "1");
    }

    #[test]
    fn convolution_matches_left_convolutor() {
        let cat = catalog("s3").unwrap();
        let g = &cat.group;
        let mut rng = trial_rng(0xAA, 0);
        let f = random_function(g.order(), &mut rng);
        let x = random_function(g.order(), &mut rng);
        let direct = convolve(g, &f, &x).unwrap();
        let lam = left_convolutor(g, &f).unwrap();
        for s in 0..g.order() {
            let mut acc = c(0.0, 0.0);
            for t in 0..g.order() {
                acc += lam.get(s, t) * x[t];
            }
            assert!((acc - direct[s]).norm() < 1e-12);
        }
    }

    #[test]
    fn left_and_right_convolutors_commute() {
        for name in ["s3", "d4", "q8"] {
            let cat = catalog(name).unwrap();
            let mut rng = trial_rng(0xBB, 1);
            let f = random_function(cat.group.order(), &mut rng);
            let g = random_function(cat.group.order(), &mut rng);
            let lam = left_convolutor(&cat.group, &f).unwrap();
            let rho = right_convolutor(&cat.group, &g).unwrap();
            let dev = lam.matmul(&rho).sub(&rho.matmul(&lam)).max_abs();
            assert!(dev < 1e-12, "{}: commutator {:.3e}", name, dev);
        }
    }

    #[test]
    fn fourier_turns_convolution_into_products() {
        let cat = catalog("s3").unwrap();
        let mut rng = trial_rng(0xCC, 2);
        let f = random_function(6, &mut rng);
        let g = random_function(6, &mut rng);
        let conv = convolve(&cat.group, &f, &g).unwrap();
        let lhs = fourier(&cat, &conv).unwrap();
        let fh = fourier(&cat, &f).unwrap();
        let gh = fourier(&cat, &g).unwrap();
        for ((l, a), b) in lhs.iter().zip(&fh).zip(&gh) {
            // The dagger in the coefficients reverses the order.
            let rhs = b.matmul(a);
            assert!(l.sub(&rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn fourier_inversion_recovers_functions() {
        for name in ["cyclic:5", "s3", "d4", "q8"] {
            let cat = catalog(name).unwrap();
            let mut rng = trial_rng(0xDD, 3);
            let f = random_function(cat.group.order(), &mut rng);
            let back = fourier_inverse(&cat, &fourier(&cat, &f).unwrap()).unwrap();
            for (a, b) in f.iter().zip(&back) {
                assert!((a - b).norm() < 1e-10, "{} inversion fails", name);
            }
        }
    }

    #[test]
    fn rotated_translations_have_block_pattern() {
        for name in ["cyclic:4", "s3", "q8"] {
            let cat = catalog(name).unwrap();
            let dev = peter_weyl_check(&cat).unwrap();
            assert!(dev < 1e-10, "{}: deviation {:.3e}", name, dev);
        }
        assert_eq!(expanded_block_sizes(&catalog("s3").unwrap()), vec![1, 1, 2, 2]);
        assert_eq!(expanded_block_sizes(&catalog("q8").unwrap()), vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn identity_multiplier_norms() {
        for (name, want) in [("cyclic:4", 1.0), ("s3", 2.0), ("d4", 2.0), ("q8", 2.0)] {
            let v = identity_cob(&catalog(name).unwrap()).unwrap();
            assert!((v - want).abs() < 1e-10, "{}: got {}", name, v);
        }
    }

    #[test]
    fn formula_matches_per_block_sdp() {
        let cat = catalog("s3").unwrap();
        let mut rng = trial_rng(0xEE, 4);
        let f = random_function(6, &mut rng);
        let g = random_function(6, &mut rng);
        let rep = group_multiplier_cob(&cat, &f, &g, &SdpOptions::default()).unwrap();
        assert!(rep.block_deviation < 1e-10);
        for (a, b) in rep.per_block_formula.iter().zip(&rep.per_block_sdp) {
            assert!((a - b).abs() <= 1e-4 * (1.0 + a), "block formula {} vs sdp {}", a, b);
        }
        let sup = rep.per_block_sdp.iter().cloned().fold(0.0, f64::max);
        assert!((rep.formula - sup).abs() <= 1e-4 * (1.0 + rep.formula));
    }

    #[test]
    fn l1_mass_equals_convolutor_norm() {
        for name in ["cyclic:6", "s3", "q8"] {
            let cat = catalog(name).unwrap();
            let mut rng = trial_rng(0xFF, 5);
            for _ in 0..5 {
                let f = random_function(cat.group.order(), &mut rng);
                let r = kesten_check(&cat.group, &f).unwrap();
                assert!(
                    (r.matrix_norm - r.l1_value).abs() <= 1e-10 * (1.0 + r.l1_value),
                    "{}: {} vs {}",
                    name,
                    r.matrix_norm,
                    r.l1_value
                );
            }
        }
    }

    #[test]
    fn contrast_report_on_reference_groups() {
        for (name, mat, grp) in [("cyclic:4", 4.0, 1.0), ("s3", 6.0, 2.0), ("q8", 8.0, 2.0)] {
            let r = herz_schur_vs_schur_report(&catalog(name).unwrap()).unwrap();
            assert!((r.matrix_side - mat).abs() < 1e-9, "{}: {}", name, r.matrix_side);
            assert!((r.group_side - grp).abs() < 1e-9, "{}: {}", name, r.group_side);
            assert!((r.ratio - mat / grp).abs() < 1e-9);
        }
    }

    #[test]
    fn relabeling_preserves_all_reports() {
        let cat = catalog("s3").unwrap();
        let perm = vec![3, 0, 5, 1, 4, 2];
        let moved = relabel(&cat, &perm).unwrap();
        moved.validate().unwrap();
        let mut rng = trial_rng(0x11, 6);
        let f = random_function(6, &mut rng);
        let g = random_function(6, &mut rng);
        let fp = perm_fn(&f, &perm);
        let gp = perm_fn(&g, &perm);
        let a = kesten_check(&cat.group, &f).unwrap();
        let b = kesten_check(&moved.group, &fp).unwrap();
        assert!((a.matrix_norm - b.matrix_norm).abs() < 1e-10);
        assert!((identity_cob(&cat).unwrap() - identity_cob(&moved).unwrap()).abs() < 1e-12);
        let ra = group_multiplier_cob(&cat, &f, &g, &SdpOptions::default()).unwrap();
        let rb = group_multiplier_cob(&moved, &fp, &gp, &SdpOptions::default()).unwrap();
        assert!((ra.formula - rb.formula).abs() < 1e-10);
    }

    #[test]
    fn delta_fourier_is_identity_blocks() {
        let cat = catalog("q8").unwrap();
        let e = scaled_delta(&cat.group, cat.group.identity());
        for (m, rep) in fourier(&cat, &e).unwrap().iter().zip(&cat.irreps) {
            assert!(m.sub(&CMatrix::identity(rep.dim())).max_abs() < 1e-12);
        }
    }
}
