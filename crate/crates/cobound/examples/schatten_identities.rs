//! Two canonical ways to assemble a family `{x_ij}` of blocks into one big
//! matrix, and their exact Schatten norms:
//!
//! * flipped pattern `Σ e_ij ⊗ e_ji ⊗ x_ij`: permutation-equivalent to a
//!   direct sum, so `‖·‖_p = (Σ‖x_ij‖_p^p)^{1/p}`;
//! * aligned pattern `Σ e_ij ⊗ e_ij ⊗ x_ij`: permutation-equivalent to the
//!   block matrix `[x_ij]`, so the norms agree.
//!
//! The same patterns bracket the norm of an entrywise multiplier acting on
//! `S_p`-valued families.

use cobound::linalg::gaussian;
use cobound::schur::{schatten_identities, SchurSymbol};
use cobound::trial_rng;

fn main() -> cobound::Result<()> {
    let mut rng = trial_rng(23, 0);
    let fam: Vec<Vec<_>> =
        (0..3).map(|_| (0..3).map(|_| gaussian(2, 2, &mut rng)).collect()).collect();

    println!("  p     flipped    family     aligned    block      rel errs");
    for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
        let r = schatten_identities(p, &fam)?;
        println!(
            "{:>4}   {:.6}   {:.6}   {:.6}   {:.6}   {:.1e} / {:.1e}",
            if p.is_infinite() { "inf".to_string() } else { format!("{}", p) },
            r.flipped_assembled,
            r.family_value,
            r.aligned_assembled,
            r.block_matrix_value,
            r.rel_err_flipped,
            r.rel_err_aligned,
        );
    }

    let phi = gaussian(3, 3, &mut rng);
    let sym = SchurSymbol::new(phi.clone())?;
    println!("\nmultiplier norm bracket on S_p families (max|φ| = {:.4}, ‖|φ|‖ = {:.4}):",
        phi.max_abs(), sym.cob_norm_formula()?);
    for p in [2.0, 4.0, 8.0, f64::INFINITY] {
        let b = sym.sp_multiplier_bounds(p, 2, 6, 40, 1)?;
        println!(
            "  p = {:>4}   lower {:.6}   upper {:.6}",
            if p.is_infinite() { "inf".to_string() } else { format!("{}", p) },
            b.lower,
            b.upper
        );
    }
    Ok(())
}
