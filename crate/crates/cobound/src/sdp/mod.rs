//! Complex Hermitian semidefinite programming over block-diagonal variables.
//!
//! Problems are stated in complex form,
//!
//! ```text
//!   minimize    Σ_b ⟨C_b, X_b⟩
//!   subject to  Σ_b ⟨A_kb, X_b⟩ = rhs_k,   X_b ⪰ 0,
//! ```
//!
//! with `⟨A, X⟩ = tr(A† X)` and all coefficient matrices Hermitian, so every
//! inner product is real. Internally each complex block is embedded as the
//! real symmetric matrix `[[Re X, -Im X], [Im X, Re X]]` and handed to a
//! primal-dual interior-point method; a bisection/alternating-projection
//! fallback covers the rare cases where the Newton iteration fails. A
//! redundant big-M trace bound keeps the feasible region bounded and powers
//! the infeasibility heuristics.
//!
//! Free (sign-unconstrained) scalars are not a primitive: encode them as a
//! difference of two 1x1 blocks, as the spectral-norm builders in
//! [`crate::superop`] do.

mod ipm;
mod projection;
mod realsym;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use ipm::{IpmOptions, RealProblem, RealStatus};
use num_complex::Complex64;
use realsym::RMat;
use std::fmt::Write as _;

const HERMITICITY_TOL: f64 = 1e-12;

/// One coefficient entry of a constraint matrix: contributes
/// `conj(value) · X_b[row, col]` to the constraint's inner product.
#[derive(Debug, Clone, Copy)]
pub struct ConEntry {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: Complex64,
}

/// A single affine constraint `Σ_b ⟨A_kb, X_b⟩ = rhs`. Entries must assemble
/// to Hermitian matrices; [`re_entry`] and [`im_entry`] produce the standard
/// coefficient pairs that pin real and imaginary parts of a variable entry.
#[derive(Debug, Clone)]
pub struct SdpConstraint {
    pub entries: Vec<ConEntry>,
    pub rhs: f64,
}

impl SdpConstraint {
    pub fn new(rhs: f64) -> Self {
        SdpConstraint { entries: Vec::new(), rhs }
    }

    pub fn push(&mut self, block: usize, row: usize, col: usize, value: Complex64) {
        self.entries.push(ConEntry { block, row, col, value });
    }
}

/// Coefficient entries whose inner product with Hermitian `X` equals
/// `Re X_b[r, c]`.
pub fn re_entry(block: usize, r: usize, c: usize) -> Vec<ConEntry> {
    if r == c {
        vec![ConEntry { block, row: r, col: c, value: Complex64::new(1.0, 0.0) }]
    } else {
        vec![
            ConEntry { block, row: r, col: c, value: Complex64::new(0.5, 0.0) },
            ConEntry { block, row: c, col: r, value: Complex64::new(0.5, 0.0) },
        ]
    }
}

/// Coefficient entries whose inner product with Hermitian `X` equals
/// `Im X_b[r, c]`. Requires `r != c` (diagonal entries are real).
pub fn im_entry(block: usize, r: usize, c: usize) -> Vec<ConEntry> {
    assert!(r != c, "imaginary part of a diagonal entry is identically zero");
    vec![
        ConEntry { block, row: r, col: c, value: Complex64::new(0.0, 0.5) },
        ConEntry { block, row: c, col: r, value: Complex64::new(0.0, -0.5) },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Interior point first, projection fallback on numerical failure, and a
    /// projection-based recheck before reporting infeasibility.
    Auto,
    InteriorPoint,
    Projection,
}

#[derive(Debug, Clone)]
pub struct SdpOptions {
    /// Relative duality-gap target; feasibility tolerances are derived from it.
    pub tol: f64,
    pub max_iter: usize,
    /// Trace bound added to keep the primal bounded (applies to the embedded
    /// real variable, i.e. twice the complex trace). When the optimal set
    /// contains a ray on which the objective is flat, the central path drifts
    /// to the analytic center near this bound, so an oversized value costs
    /// accuracy through cancellation; raise it only for genuinely large
    /// optima.
    pub big_m: f64,
    pub method: SolveMethod,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { tol: 1e-7, max_iter: 120, big_m: 1e4, method: SolveMethod::Auto }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdpStatus {
    Optimal,
    Infeasible,
    NumericalFailure,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    /// Primal optimizers, one Hermitian PSD matrix per block (empty unless
    /// the status is `Optimal`).
    pub primal_blocks: Vec<CMatrix>,
    /// Lagrange multipliers for the stated constraints, scaled back to the
    /// complex problem (the internal trace-bound row is dropped).
    pub dual_multipliers: Vec<f64>,
    pub iterations: usize,
    pub complementarity: f64,
    pub message: String,
}

impl SdpSolution {
    /// The optimal value, or an error carrying the solver's diagnosis.
    pub fn optimal_value(&self) -> Result<f64> {
        match self.status {
            SdpStatus::Optimal => Ok(self.primal_value),
            SdpStatus::Infeasible => Err(Error::SdpInfeasible(self.message.clone())),
            SdpStatus::NumericalFailure => Err(Error::SdpNumerical(self.message.clone())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub block_sizes: Vec<usize>,
    pub objective: Vec<CMatrix>,
    pub constraints: Vec<SdpConstraint>,
}

impl SdpProblem {
    pub fn new(block_sizes: Vec<usize>) -> Self {
        let objective = block_sizes.iter().map(|&s| CMatrix::zeros(s, s)).collect();
        SdpProblem { block_sizes, objective, constraints: Vec::new() }
    }

    pub fn set_objective(&mut self, block: usize, c: CMatrix) -> Result<()> {
        if block >= self.block_sizes.len() {
            return Err(Error::ShapeMismatch(format!(
                "objective block {} out of range ({} blocks)",
                block,
                self.block_sizes.len()
            )));
        }
        let s = self.block_sizes[block];
        if c.rows() != s || c.cols() != s {
            return Err(Error::ShapeMismatch(format!(
                "objective block {} is {}x{}, expected {}x{}",
                block,
                c.rows(),
                c.cols(),
                s,
                s
            )));
        }
        self.objective[block] = c;
        Ok(())
    }

    pub fn add_constraint(&mut self, con: SdpConstraint) {
        self.constraints.push(con);
    }

    /// Checks shapes, finiteness, and hermiticity of the objective and of
    /// every assembled constraint matrix.
    pub fn validate(&self) -> Result<()> {
        if self.block_sizes.is_empty() || self.block_sizes.contains(&0) {
            return Err(Error::Validation("block sizes must be positive".into()));
        }
        for (b, c) in self.objective.iter().enumerate() {
            c.check_finite()?;
            let dev = c.hermitian_deviation();
            if dev > HERMITICITY_TOL * (1.0 + c.max_abs()) {
                return Err(Error::Validation(format!(
                    "objective block {} deviates from Hermitian by {:.3e}",
                    b, dev
                )));
            }
        }
        for (k, con) in self.constraints.iter().enumerate() {
            if !con.rhs.is_finite() {
                return Err(Error::Validation(format!("constraint {} has non-finite rhs", k)));
            }
            let mut mats: Vec<CMatrix> =
                self.block_sizes.iter().map(|&s| CMatrix::zeros(s, s)).collect();
            for e in &con.entries {
                if e.block >= self.block_sizes.len() {
                    return Err(Error::ShapeMismatch(format!(
                        "constraint {} references block {} of {}",
                        k,
                        e.block,
                        self.block_sizes.len()
                    )));
                }
                let s = self.block_sizes[e.block];
                if e.row >= s || e.col >= s {
                    return Err(Error::ShapeMismatch(format!(
                        "constraint {} entry ({}, {}) outside block {} of size {}",
                        k, e.row, e.col, e.block, s
                    )));
                }
                if !e.value.re.is_finite() || !e.value.im.is_finite() {
                    return Err(Error::Validation(format!(
                        "constraint {} has a non-finite coefficient",
                        k
                    )));
                }
                let cur = mats[e.block].get(e.row, e.col);
                mats[e.block].set(e.row, e.col, cur + e.value);
            }
            for (b, m) in mats.iter().enumerate() {
                let dev = m.hermitian_deviation();
                if dev > HERMITICITY_TOL * (1.0 + m.max_abs()) {
                    return Err(Error::Validation(format!(
                        "constraint {} block {} deviates from Hermitian by {:.3e}",
                        k, b, dev
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<SdpSolution> {
        self.solve_with(&SdpOptions::default())
    }

    pub fn solve_with(&self, opt: &SdpOptions) -> Result<SdpSolution> {
        self.validate()?;
        // The interior-point phase gets an artificial trace bound so its
        // central path stays bounded; the projection phase bisects on the
        // objective level itself and works better without that huge row.
        let plain = self.embed();
        let mut real = self.embed();
        real.augment_trace_bound(opt.big_m);
        let feas_tol = (opt.tol * 1e-2).max(1e-11);
        let ipm_opt = IpmOptions { tol: opt.tol, feas_tol, max_iter: opt.max_iter };

        let outcome = match opt.method {
            SolveMethod::Projection => projection::solve_projection(&plain, opt.tol, opt.big_m),
            SolveMethod::InteriorPoint => ipm::solve_ipm(&real, &ipm_opt),
            SolveMethod::Auto => {
                let first = ipm::solve_ipm(&real, &ipm_opt);
                match first.status {
                    RealStatus::Optimal => first,
                    // The interior-point infeasibility signals are heuristic;
                    // let the projection phase have the final word.
                    RealStatus::Infeasible | RealStatus::NumericalFailure => {
                        let second = projection::solve_projection(&plain, opt.tol, opt.big_m);
                        match (first.status, second.status) {
                            (RealStatus::Infeasible, RealStatus::Optimal) => second,
                            (RealStatus::NumericalFailure, _) => second,
                            _ => first,
                        }
                    }
                }
            }
        };

        let status = match outcome.status {
            RealStatus::Optimal => SdpStatus::Optimal,
            RealStatus::Infeasible => SdpStatus::Infeasible,
            RealStatus::NumericalFailure => SdpStatus::NumericalFailure,
        };
        let primal_blocks = if status == SdpStatus::Optimal {
            self.extract(&outcome.x)
        } else {
            Vec::new()
        };
        let dual_multipliers: Vec<f64> = outcome
            .y
            .iter()
            .take(self.constraints.len())
            .map(|&v| 2.0 * v)
            .collect();
        Ok(SdpSolution {
            status,
            primal_value: outcome.pobj,
            dual_value: outcome.dobj,
            gap: (outcome.pobj - outcome.dobj).abs(),
            primal_blocks,
            dual_multipliers,
            iterations: outcome.iterations,
            complementarity: outcome.complementarity,
            message: outcome.message,
        })
    }

    /// Real symmetric embedding: block sizes double, the objective becomes
    /// `E(C)/2`, and each complex coefficient entry turns into at most four
    /// real triplets so that optima coincide exactly with the complex problem.
    fn embed(&self) -> RealProblem {
        let sizes: Vec<usize> = self.block_sizes.iter().map(|&s| 2 * s).collect();
        let mut obj = Vec::with_capacity(sizes.len());
        for (b, c) in self.objective.iter().enumerate() {
            let s = self.block_sizes[b];
            let mut m = RMat::zeros(2 * s);
            for r in 0..s {
                for q in 0..s {
                    let v = c.get(r, q);
                    m.set(r, q, 0.5 * v.re);
                    m.set(r + s, q + s, 0.5 * v.re);
                    m.set(r + s, q, 0.5 * v.im);
                    m.set(r, q + s, -0.5 * v.im);
                }
            }
            obj.push(m);
        }
        let mut cons = Vec::with_capacity(self.constraints.len());
        let mut rhs = Vec::with_capacity(self.constraints.len());
        for con in &self.constraints {
            let mut tri: Vec<Vec<(u32, u32, f64)>> =
                self.block_sizes.iter().map(|_| Vec::new()).collect();
            for e in &con.entries {
                let s = self.block_sizes[e.block];
                let (r, c) = (e.row as u32, e.col as u32);
                let sh = s as u32;
                if e.value.re != 0.0 {
                    tri[e.block].push((r, c, e.value.re));
                    tri[e.block].push((r + sh, c + sh, e.value.re));
                }
                if e.value.im != 0.0 {
                    tri[e.block].push((r + sh, c, e.value.im));
                    tri[e.block].push((r, c + sh, -e.value.im));
                }
            }
            cons.push(tri);
            rhs.push(2.0 * con.rhs);
        }
        RealProblem { sizes, obj, cons, rhs }
    }

    /// Pulls a Hermitian complex block out of its real embedding, averaging
    /// the two copies (this is exactly conjugation-averaging over the
    /// embedding symmetry, so feasibility and objective are preserved).
    fn extract(&self, xr: &[RMat]) -> Vec<CMatrix> {
        let mut out = Vec::with_capacity(self.block_sizes.len());
        for (b, &s) in self.block_sizes.iter().enumerate() {
            let m = &xr[b];
            let mut c = CMatrix::zeros(s, s);
            for r in 0..s {
                for q in 0..s {
                    let re = 0.5 * (m.get(r, q) + m.get(r + s, q + s));
                    let im = 0.5 * (m.get(r + s, q) - m.get(r, q + s));
                    c.set(r, q, Complex64::new(re, im));
                }
            }
            for r in 0..s {
                for q in (r + 1)..s {
                    let h = 0.5 * (c.get(r, q) + c.get(q, r).conj());
                    c.set(r, q, h);
                    c.set(q, r, h.conj());
                }
                let d = c.get(r, r);
                c.set(r, r, Complex64::new(d.re, 0.0));
            }
            out.push(c);
        }
        out
    }

    /// Plain-text dump of the full problem data, for debugging and for the
    /// `validate` tooling. Entries are written as `block row col re im`.
    pub fn dump_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "blocks {}",
            self.block_sizes.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
        );
        let _ = writeln!(s, "objective");
        for (b, c) in self.objective.iter().enumerate() {
            for r in 0..c.rows() {
                for q in 0..c.cols() {
                    let v = c.get(r, q);
                    if v.norm() > 0.0 {
                        let _ = writeln!(s, "{} {} {} {:.17e} {:.17e}", b, r, q, v.re, v.im);
                    }
                }
            }
        }
        for (k, con) in self.constraints.iter().enumerate() {
            let _ = writeln!(s, "constraint {} rhs {:.17e}", k, con.rhs);
            for e in &con.entries {
                let _ = writeln!(
                    s,
                    "{} {} {} {:.17e} {:.17e}",
                    e.block, e.row, e.col, e.value.re, e.value.im
                );
            }
        }
        s
    }
}

/// The real symmetric image `[[Re M, -Im M], [Im M, Re M]]` of a complex
/// matrix, returned with zero imaginary part. Its spectrum is that of `M`
/// with every multiplicity doubled, which makes it a handy independent check
/// on complex eigensolvers.
pub fn real_embedding(m: &CMatrix) -> CMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    CMatrix::from_fn(2 * rows, 2 * cols, |r, c| {
        let quad = (r >= rows, c >= cols);
        let v = m.get(r % rows, c % cols);
        let x = match quad {
            (false, false) | (true, true) => v.re,
            (true, false) => v.im,
            (false, true) => -v.im,
        };
        Complex64::new(x, 0.0)
    })
}
