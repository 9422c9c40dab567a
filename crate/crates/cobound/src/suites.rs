//! Experiment suites behind the CLI subcommands. Each suite consumes a
//! [`RunConfig`], draws its random instances from per-trial generators
//! derived as `seed XOR trial-index`, and emits one [`Record`] per checked
//! claim instance, so a fixed config and seed reproduce the report
//! byte-for-byte (timing fields aside).

use crate::error::{Error, Result};
use crate::groups::{
    catalog, group_multiplier_cob, herz_schur_vs_schur_report, identity_cob, kesten_check,
    peter_weyl_check, random_function,
};
use crate::linalg::{gaussian, CMatrix};
use crate::report::{InputDigest, Record, Report, RunConfig};
use crate::schur::{schatten_identities, witness_norms, S1DominationWitness, SchurSymbol};
use crate::sdp::SdpOptions;
use crate::superop::SuperOp;
use crate::trial_rng;
use std::time::Instant;

pub const COMMANDS: &[&str] = &[
    "cob-schur",
    "cb-schur",
    "transpose-norm",
    "sandwich",
    "schatten-identities",
    "s1-check",
    "group",
    "kesten",
    "compare-herz-schur",
    "validate",
    "report",
];

/// Claim tolerance each command checks against when `--tol` is not given.
pub fn default_tol(command: &str) -> f64 {
    match command {
        "schatten-identities" | "kesten" => 1e-10,
        "s1-check" | "compare-herz-schur" => 1e-9,
        _ => 1e-4,
    }
}

/// Runs the suite selected by `config.command`.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let t0 = Instant::now();
    let mut rep = match cfg.command.as_str() {
        "cob-schur" => cob_schur(cfg)?,
        "cb-schur" => cb_schur(cfg)?,
        "transpose-norm" => transpose_norm(cfg)?,
        "sandwich" => sandwich(cfg)?,
        "schatten-identities" => schatten_suite(cfg)?,
        "s1-check" => s1_check(cfg)?,
        "group" => group_suite(cfg)?,
        "kesten" => kesten_suite(cfg)?,
        "compare-herz-schur" => compare_herz_schur(cfg)?,
        "validate" => validate_all(cfg)?,
        "report" => aggregate(cfg)?,
        other => {
            return Err(Error::Domain(format!(
                "unknown command '{}'; expected one of {}",
                other,
                COMMANDS.join(", ")
            )))
        }
    };
    rep.wall_ms = t0.elapsed().as_millis() as u64;
    Ok(rep)
}

fn solver_options(cfg: &RunConfig) -> SdpOptions {
    SdpOptions { tol: (cfg.tol * 1e-2).clamp(1e-9, 1e-7), ..SdpOptions::default() }
}

fn finish(mut r: Record, t: Instant) -> Record {
    r.wall_ms = t.elapsed().as_millis() as u64;
    r
}

/// Entrywise multiplier co-bounded norm: SDP value against the absolute-value
/// symbol formula, plus the amplified witness identities on the same symbol.
pub fn cob_schur(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let opt = solver_options(cfg);
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let phi = gaussian(cfg.n, cfg.n, &mut rng);
        let digest = InputDigest::new("cob-schur").int(trial).complex_matrix(&phi).finish();

        let t = Instant::now();
        let sym = SchurSymbol::new(phi.clone())?;
        let formula = sym.cob_norm_formula()?;
        let sdp = sym.to_superop()?.cob_norm_with(&opt)?;
        rep.push(finish(
            Record::new("cob-equals-abs-symbol-norm", "cob_norm", digest).check_close(
                "cob",
                sdp,
                formula,
                cfg.tol * (1.0 + formula),
            ),
            t,
        ));

        let t = Instant::now();
        let digest = InputDigest::new("witness-norms").int(trial).complex_matrix(&phi).finish();
        let w = witness_norms(&phi)?;
        rep.push(finish(
            Record::new("amplified-witness-norms", "witness_norms", digest)
                .check_close("aligned", w.aligned, w.op_norm, 1e-10 * (1.0 + w.op_norm))
                .check_close("flipped", w.flipped, w.max_abs, 1e-10 * (1.0 + w.max_abs)),
            t,
        ));
    }
    Ok(rep)
}

/// The plain cb norm of an entrywise multiplier by two independent oracles:
/// the factorization SDP and the Choi-matrix route; includes the fixed
/// 2x2 sign-pattern symbol whose value is √2.
pub fn cb_schur(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let opt = solver_options(cfg);
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let phi = gaussian(cfg.n, cfg.n, &mut rng);
        let digest = InputDigest::new("cb-schur").int(trial).complex_matrix(&phi).finish();
        let t = Instant::now();
        let sym = SchurSymbol::new(phi)?;
        let h = sym.cb_norm_haagerup_with(&opt)?;
        let d = sym.to_superop()?.cb_norm_with(&opt)?;
        rep.push(finish(
            Record::new("cb-two-oracles-agree", "cb_norm", digest).check_close(
                "cb",
                h,
                d,
                cfg.tol * (1.0 + h),
            ),
            t,
        ));
    }
    let phi = CMatrix::from_real(vec![vec![1.0, 1.0], vec![1.0, -1.0]])?;
    let digest = InputDigest::new("cb-hadamard2").complex_matrix(&phi).finish();
    let t = Instant::now();
    let sym = SchurSymbol::new(phi)?;
    let h = sym.cb_norm_haagerup_with(&opt)?;
    let d = sym.to_superop()?.cb_norm_with(&opt)?;
    let root2 = 2f64.sqrt();
    rep.push(finish(
        Record::new("sign-pattern-cb-is-sqrt2", "cb_norm", digest)
            .check_close("factorization-sdp", h, root2, 1e-5)
            .check_close("choi-sdp", d, root2, 1e-5),
        t,
    ));
    Ok(rep)
}

/// cb norm of the transposition map equals the matrix dimension.
pub fn transpose_norm(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let opt = solver_options(cfg);
    let digest = InputDigest::new("transpose-norm").int(cfg.n as u64).finish();
    let t = Instant::now();
    let value = SuperOp::transpose_map(cfg.n).cb_norm_with(&opt)?;
    rep.push(finish(
        Record::new("transpose-cb-equals-dimension", "cb_norm", digest).check_close(
            "cb",
            value,
            cfg.n as f64,
            cfg.tol,
        ),
        t,
    ));
    Ok(rep)
}

/// Co-bounded norm of two-sided product maps `x ↦ a·x·b` equals the product
/// of Hilbert–Schmidt norms.
pub fn sandwich(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let opt = solver_options(cfg);
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = gaussian(cfg.n, cfg.n, &mut rng);
        let b = gaussian(cfg.n, cfg.n, &mut rng);
        let digest = InputDigest::new("sandwich")
            .int(trial)
            .complex_matrix(&a)
            .complex_matrix(&b)
            .finish();
        let t = Instant::now();
        let map = SuperOp::sandwich(&a, &b)?;
        let sdp = map.cob_norm_with(&opt)?;
        let formula = a.frobenius_norm() * b.frobenius_norm();
        rep.push(finish(
            Record::new("sandwich-cob-is-hs-product", "cob_norm", digest).check_close(
                "cob",
                sdp,
                formula,
                cfg.tol * (1.0 + formula),
            ),
            t,
        ));
    }
    Ok(rep)
}

/// Exact Schatten-norm identities for the two amplification assemblies at
/// the configured exponent, plus endpoint checks of the `S_p` multiplier
/// bracket at `p = 2` and `p = ∞`.
pub fn schatten_suite(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let m = 2usize;
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let fam: Vec<Vec<CMatrix>> = (0..cfg.n)
            .map(|_| (0..cfg.n).map(|_| gaussian(m, m, &mut rng)).collect())
            .collect();
        let mut dig = InputDigest::new("schatten-identities").int(trial).real(cfg.p);
        for row in &fam {
            for b in row {
                dig = dig.complex_matrix(b);
            }
        }
        let digest = dig.finish();
        let t = Instant::now();
        let r = schatten_identities(cfg.p, &fam)?;
        rep.push(finish(
            Record::new("amplification-schatten-identities", "schatten_identities", digest)
                .value("flipped", r.flipped_assembled)
                .value("family", r.family_value)
                .value("aligned", r.aligned_assembled)
                .value("block-matrix", r.block_matrix_value)
                .check_close("rel-flipped", r.rel_err_flipped, 0.0, cfg.tol)
                .check_close("rel-aligned", r.rel_err_aligned, 0.0, cfg.tol),
            t,
        ));
    }

    let mut rng = trial_rng(cfg.seed, 0x5eed);
    let phi = gaussian(cfg.n, cfg.n, &mut rng);
    let digest =
        InputDigest::new("sp-bounds-endpoints").complex_matrix(&phi).int(cfg.seed).finish();
    let t = Instant::now();
    let sym = SchurSymbol::new(phi.clone())?;
    let at2 = sym.sp_multiplier_bounds(2.0, 1, 4, 30, cfg.seed)?;
    let atinf = sym.sp_multiplier_bounds(f64::INFINITY, 1, 4, 30, cfg.seed)?;
    let max_abs = phi.max_abs();
    let op = sym.cob_norm_formula()?;
    rep.push(finish(
        Record::new("sp-bracket-endpoints", "sp_multiplier_bounds", digest)
            .check_close("p2-lower", at2.lower, max_abs, 1e-8)
            .check_close("p2-upper", at2.upper, max_abs, 1e-12)
            .check_close("pinf-upper", atinf.upper, op, 1e-12)
            .check_at_most("pinf-lower", op * 0.95, atinf.lower, 1e-12)
            .check_at_most("pinf-lower-sound", atinf.lower, op, 1e-8),
        t,
    ));
    Ok(rep)
}

/// Trace-class domination: sampled bilinear pairings never beat the
/// Cauchy–Schwarz bound certified by a dominating weight pair.
pub fn s1_check(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let phi = gaussian(cfg.n, cfg.n, &mut rng);
        let digest = InputDigest::new("s1-check").int(trial).complex_matrix(&phi).finish();
        let t = Instant::now();
        let sym = SchurSymbol::new(phi.clone())?;
        let w = S1DominationWitness::from_row_col_sums(&phi)?;
        let r = sym.s1_multiplier_check(&w, 100, cfg.seed ^ (trial << 32))?;
        rep.push(finish(
            Record::new("trace-class-domination", "s1_multiplier_check", digest)
                .value("constant", r.c)
                .check_at_most("max-ratio", r.max_ratio, 1.0, cfg.tol),
            t,
        ));
    }
    Ok(rep)
}

/// Group-side suite for one catalog entry: representation invariants, the
/// Fourier-basis block pattern, the identity multiplier value, and the
/// convolution-multiplier formula against per-block SDP oracles.
pub fn group_suite(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let cat = catalog(&cfg.group)?;
    let opt = solver_options(cfg);
    let base = InputDigest::new("group").text(&cfg.group).finish();

    let t = Instant::now();
    let mut r = Record::new("irrep-catalog-invariants", "catalog.validate", base.clone());
    if let Err(e) = cat.validate() {
        r = r.fail(&format!("{}", e));
    }
    rep.push(finish(r, t));

    let t = Instant::now();
    let dev = peter_weyl_check(&cat)?;
    rep.push(finish(
        Record::new("fourier-basis-block-pattern", "peter_weyl_check", base.clone())
            .check_at_most("deviation", dev, 0.0, 1e-10),
        t,
    ));

    let t = Instant::now();
    let idv = identity_cob(&cat)?;
    rep.push(finish(
        Record::new("identity-multiplier-cob-is-max-dim", "identity_cob", base)
            .check_close("value", idv, cat.max_dim() as f64, 1e-10),
        t,
    ));

    let n = cat.group.order();
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let f = random_function(n, &mut rng);
        let g = random_function(n, &mut rng);
        let digest = InputDigest::new("group-multiplier")
            .text(&cfg.group)
            .int(trial)
            .complex_slice(&f)
            .complex_slice(&g)
            .finish();
        let t = Instant::now();
        let r = group_multiplier_cob(&cat, &f, &g, &opt)?;
        let mut rec = Record::new(
            "convolution-multiplier-formula-vs-sdp",
            "group_multiplier_cob",
            digest,
        )
        .value("formula", r.formula)
        .check_at_most("block-deviation", r.block_deviation, 0.0, 1e-10);
        let mut worst = 0.0f64;
        for (a, b) in r.per_block_formula.iter().zip(&r.per_block_sdp) {
            worst = worst.max((a - b).abs() / (1.0 + a));
        }
        rec = rec.check_close("max-block-rel-dev", worst, 0.0, cfg.tol);
        rep.push(finish(rec, t));
    }
    Ok(rep)
}

/// ℓ¹ mass equals the operator norm of the translation-structured
/// absolute-value matrix, for random functions on the configured group.
pub fn kesten_suite(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let cat = catalog(&cfg.group)?;
    let n = cat.group.order();
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        let f = random_function(n, &mut rng);
        let digest = InputDigest::new("kesten")
            .text(&cfg.group)
            .int(trial)
            .complex_slice(&f)
            .finish();
        let t = Instant::now();
        let r = kesten_check(&cat.group, &f)?;
        rep.push(finish(
            Record::new("l1-mass-equals-convolutor-norm", "kesten_check", digest)
                .value("l1", r.l1_value)
                .value("ratio", r.ratio)
                .check_close(
                    "matrix-norm",
                    r.matrix_norm,
                    r.l1_value,
                    cfg.tol * (1.0 + r.l1_value),
                ),
            t,
        ));
    }
    Ok(rep)
}

/// Contrast between the all-ones entrywise multiplier on `M_N` and the
/// identity convolution multiplier on a group of order `N`.
pub fn compare_herz_schur(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let cat = catalog(&cfg.group)?;
    let digest = InputDigest::new("compare-herz-schur").text(&cfg.group).finish();
    let t = Instant::now();
    let r = herz_schur_vs_schur_report(&cat)?;
    rep.push(finish(
        Record::new("matrix-vs-group-multiplier-contrast", "herz_schur_vs_schur_report", digest)
            .check_close("matrix-side", r.matrix_side, cat.group.order() as f64, cfg.tol)
            .check_close("group-side", r.group_side, cat.max_dim() as f64, cfg.tol)
            .value("ratio", r.ratio),
        t,
    ));
    Ok(rep)
}

/// Cross-cutting invariant checks: every catalog entry, solver sanity on
/// closed-form values, adjoint invariance of the co-bounded norm, and
/// soundness of the cb lower-bound sampler.
pub fn validate_all(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    let opt = solver_options(cfg);

    let mut names: Vec<String> = (1..=12).map(|k| format!("cyclic:{}", k)).collect();
    names.extend(["s3".to_string(), "d4".to_string(), "q8".to_string()]);
    for name in &names {
        let t = Instant::now();
        let digest = InputDigest::new("catalog").text(name).finish();
        let mut r = Record::new("irrep-catalog-invariants", "catalog.validate", digest);
        match catalog(name) {
            Ok(cat) => {
                if let Err(e) = cat.validate() {
                    r = r.fail(&format!("{}", e));
                }
                r = r.value("order", cat.group.order() as f64);
            }
            Err(e) => r = r.fail(&format!("{}", e)),
        }
        rep.push(finish(r, t));
    }

    let t = Instant::now();
    let digest = InputDigest::new("solver-sanity").finish();
    let id1 = SuperOp::identity(2).cb_norm_with(&opt)?;
    let tr2 = SuperOp::transpose_map(2).cb_norm_with(&opt)?;
    rep.push(finish(
        Record::new("solver-closed-form-sanity", "cb_norm", digest)
            .check_close("identity-cb", id1, 1.0, 1e-5)
            .check_close("transpose-cb", tr2, 2.0, 1e-5),
        t,
    ));

    for trial in 0..3u64 {
        let mut rng = trial_rng(cfg.seed, 0xAD10 + trial);
        let phi = gaussian(2, 2, &mut rng);
        let digest =
            InputDigest::new("adjoint-invariance").int(trial).complex_matrix(&phi).finish();
        let t = Instant::now();
        let map = SuperOp::from_schur(&phi)?;
        let lhs = map.cob_norm_with(&opt)?;
        let rhs = map.hs_adjoint().cob_norm_with(&opt)?;
        rep.push(finish(
            Record::new("cob-invariant-under-hs-adjoint", "cob_norm", digest).check_close(
                "cob",
                lhs,
                rhs,
                1e-4 * (1.0 + lhs),
            ),
            t,
        ));

        let a = gaussian(2, 2, &mut rng);
        let b = gaussian(2, 2, &mut rng);
        let digest = InputDigest::new("adjoint-invariance-sandwich")
            .int(trial)
            .complex_matrix(&a)
            .complex_matrix(&b)
            .finish();
        let t = Instant::now();
        let map = SuperOp::sandwich(&a, &b)?;
        let lhs = map.cob_norm_with(&opt)?;
        let rhs = map.hs_adjoint().cob_norm_with(&opt)?;
        rep.push(finish(
            Record::new("cob-invariant-under-hs-adjoint", "cob_norm", digest).check_close(
                "cob",
                lhs,
                rhs,
                1e-4 * (1.0 + lhs),
            ),
            t,
        ));
    }

    let t = Instant::now();
    let digest = InputDigest::new("sampler-soundness").int(cfg.seed).finish();
    let map = SuperOp::transpose_map(2);
    let sdp = map.cb_norm_with(&opt)?;
    let low = map.cb_lower_bound_sampler(2, 6, 25, cfg.seed)?;
    let mut rng = trial_rng(cfg.seed, 0x5A3);
    let phi = gaussian(2, 2, &mut rng);
    let smap = SuperOp::from_schur(&phi)?;
    let ssdp = smap.cb_norm_with(&opt)?;
    let slow = smap.cb_lower_bound_sampler(2, 6, 25, cfg.seed)?;
    rep.push(finish(
        Record::new("sampler-never-exceeds-sdp", "cb_lower_bound_sampler", digest)
            .check_at_most("transpose", low, sdp, 1e-6)
            .check_close("transpose-attained", low, sdp, 1e-5)
            .check_at_most("schur", slow, ssdp, 1e-6),
        t,
    ));

    let t = Instant::now();
    let mut rng = trial_rng(cfg.seed, 0x717);
    let x = gaussian(3, 3, &mut rng);
    let digest = InputDigest::new("witness-invariants").complex_matrix(&x).finish();
    let w = witness_norms(&x)?;
    rep.push(finish(
        Record::new("amplified-witness-norms", "witness_norms", digest)
            .check_close("aligned", w.aligned, w.op_norm, 1e-10 * (1.0 + w.op_norm))
            .check_close("flipped", w.flipped, w.max_abs, 1e-10 * (1.0 + w.max_abs)),
        t,
    ));

    for (i, p) in [1.0, 1.5, 2.0, 3.0, f64::INFINITY].iter().enumerate() {
        let mut rng = trial_rng(cfg.seed, 0x9A0 + i as u64);
        let fam: Vec<Vec<CMatrix>> =
            (0..2).map(|_| (0..2).map(|_| gaussian(2, 2, &mut rng)).collect()).collect();
        let digest = InputDigest::new("schatten-invariants").real(*p).int(i as u64).finish();
        let t = Instant::now();
        let r = schatten_identities(*p, &fam)?;
        rep.push(finish(
            Record::new("amplification-schatten-identities", "schatten_identities", digest)
                .check_close("rel-flipped", r.rel_err_flipped, 0.0, 1e-10)
                .check_close("rel-aligned", r.rel_err_aligned, 0.0, 1e-10),
            t,
        ));
    }

    Ok(rep)
}

/// Aggregate of every table: runs each suite with its own default claim
/// tolerance and merges the records.
pub fn aggregate(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    for command in COMMANDS.iter().filter(|&&c| c != "report") {
        let mut sub = cfg.clone();
        sub.command = command.to_string();
        sub.tol = default_tol(command);
        let part = match *command {
            "cob-schur" => cob_schur(&sub)?,
            "cb-schur" => cb_schur(&sub)?,
            "transpose-norm" => transpose_norm(&sub)?,
            "sandwich" => sandwich(&sub)?,
            "schatten-identities" => schatten_suite(&sub)?,
            "s1-check" => s1_check(&sub)?,
            "group" => group_suite(&sub)?,
            "kesten" => kesten_suite(&sub)?,
            "compare-herz-schur" => compare_herz_schur(&sub)?,
            "validate" => validate_all(&sub)?,
            _ => unreachable!(),
        };
        rep.merge(part);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::OutputFormat;

    fn cfg(command: &str) -> RunConfig {
        let mut c = RunConfig::new(command);
        c.n = 2;
        c.trials = 2;
        c.tol = default_tol(command);
        c.format = OutputFormat::Json;
        c
    }

    #[test]
    fn every_light_suite_passes() {
        for command in ["transpose-norm", "schatten-identities", "s1-check", "kesten", "compare-herz-schur"] {
            let rep = run(&cfg(command)).unwrap();
            assert!(rep.pass, "{} failed: {}", command, rep.to_text());
            assert!(!rep.records.is_empty());
        }
    }

    #[test]
    fn sdp_suites_pass_with_small_sizes() {
        for command in ["cob-schur", "cb-schur", "sandwich", "group"] {
            let rep = run(&cfg(command)).unwrap();
            assert!(rep.pass, "{} failed: {}", command, rep.to_text());
        }
    }

    #[test]
    fn reports_are_deterministic_for_fixed_seed() {
        let a = run(&cfg("cob-schur")).unwrap();
        let b = run(&cfg("cob-schur")).unwrap();
        let strip = |mut r: Report| {
            r.wall_ms = 0;
            for rec in &mut r.records {
                rec.wall_ms = 0;
            }
            r.to_json()
        };
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn different_seeds_change_instances() {
        let a = run(&cfg("cob-schur")).unwrap();
        let mut c2 = cfg("cob-schur");
        c2.seed = 1;
        let b = run(&c2).unwrap();
        assert_ne!(a.records[0].inputs_digest, b.records[0].inputs_digest);
    }

    #[test]
    fn unknown_command_is_domain_error() {
        assert!(matches!(run(&cfg("frobnicate")), Err(Error::Domain(_))));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let mut c = cfg("transpose-norm");
        c.trials = 0;
        assert!(run(&c).is_err());
    }
}
