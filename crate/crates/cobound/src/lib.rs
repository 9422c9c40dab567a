//! Completely bounded and completely co-bounded norms of maps on matrix
//! algebras, computed and cross-checked numerically.
//!
//! The crate revolves around a handful of classical closed-form identities:
//!
//! * the transposition map on `M_n` has completely bounded (cb) norm `n`;
//! * a Schur multiplier `M_φ` composed with transposition has cb norm equal to
//!   the operator norm of the entrywise absolute value `[|φ_ij|]` — the
//!   "completely co-bounded" (cob) norm of `M_φ`;
//! * the sandwich map `x ↦ a·x·b` has cob norm `‖a‖₂·‖b‖₂`
//!   (Hilbert–Schmidt norms);
//! * Fourier multipliers `x ↦ f*x*g` on a finite group decompose over the
//!   irreducible representations, with cob norm `max_π ‖f̂(π)‖₂·‖ĝ(π)‖₂`;
//! * on Schatten classes, `‖Σ e_ij⊗e_ji⊗x_ij‖_p = (Σ‖x_ij‖_p^p)^{1/p}` and
//!   `‖Σ e_ij⊗e_ij⊗x_ij‖_p = ‖[x_ij]‖_p`.
//!
//! Every identity is checked two ways: a direct formula (singular values,
//! Fourier coefficients) against an independent semidefinite-programming
//! oracle for the cb norm, built on the Choi matrix of the map.
//!
//! # Where to start
//!
//! The `examples/` directory is the primary tour; each file is runnable with
//! `cargo run --example <name>`:
//!
//! * `transpose_norm` — cb norm of transposition vs. dimension;
//! * `schur_multipliers` — cob formula, Haagerup-style cb SDP, ℓ∞ factorization;
//! * `sandwich_maps` — `x ↦ axb` and its Hilbert–Schmidt formula;
//! * `schatten_identities` — the two tensor identities across `p`;
//! * `trace_class_domination` — the `|φ_ij| ≤ λ_i + μ_j` multiplier bound;
//! * `finite_groups` — irreducible catalogs, Fourier multipliers, block SDPs;
//! * `kesten_equality` — `Σ|f|` vs. the norm of `[|f(st⁻¹)|]`;
//! * `herz_schur_contrast` — Schur vs. Herz–Schur multiplier norms of `f ≡ 1`;
//! * `sdp_solver` — the block-diagonal complex SDP solver on its own;
//! * `sampler_bounds` — randomized lower bounds vs. SDP values.
//!
//! A thin CLI (`cobound`) exposes the same checks as subcommands emitting
//! JSON/CSV/text reports; see the README.
//!
//! # Module map
//!
//! * [`linalg`] — dense complex matrices, one-sided Jacobi SVD, Schatten norms;
//! * [`sdp`] — complex block-diagonal SDP solver (NT-scaled interior point,
//!   alternating-projection fallback);
//! * [`superop`] — superoperators as Choi matrices; cb/cob norms via SDP;
//! * [`schur`] — Schur multipliers: formulas, factorizations, Schatten bounds;
//! * [`groups`] — finite groups, irreducible representations, Fourier
//!   multipliers, Kesten-type checks;
//! * [`report`] — deterministic JSON/CSV/text report records;
//! * [`suites`] — the prebuilt verification suites behind the CLI;
//! * [`io`] — text formats for matrices, groups, and SDP debug dumps.

pub mod error;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod report;
pub mod schur;
pub mod sdp;
pub mod suites;
pub mod superop;

pub use error::{Error, Result};
pub use linalg::CMatrix;

/// Derives the RNG for one trial of a sampled check.
///
/// Trials are independent: trial `i` uses a ChaCha stream seeded with
/// `seed ^ i`, so a report is reproducible from `(seed, trial)` alone and
/// trial loops may run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ trial)
}
