//! Multipliers into trace class: when the symbol is dominated entrywise by
//! `λ_i + μ_j`, the bilinear pairing `Σ φ_ij·a_ij·b_ij` is bounded by a
//! two-term Cauchy–Schwarz expression built from the normalized weight
//! states. The check samples random pairs and reports the worst ratio,
//! which never exceeds 1.

use cobound::linalg::gaussian;
use cobound::schur::{S1DominationWitness, SchurSymbol};
use cobound::trial_rng;

fn main() -> cobound::Result<()> {
    let mut rng = trial_rng(31, 0);
    let phi = gaussian(4, 4, &mut rng);
    let sym = SchurSymbol::new(phi.clone())?;

    // Row/column absolute sums always dominate the symbol.
    let w = S1DominationWitness::from_row_col_sums(&phi)?;
    let r = sym.s1_multiplier_check(&w, 500, 0)?;
    println!(
        "row+column witness: constant {:.4}, worst ratio over {} pairs = {:.6}",
        r.c, r.trials, r.max_ratio
    );

    // A one-sided witness (all weight on rows, μ = 0) exercises the
    // degenerate branch where the missing state is replaced by the uniform
    // one.
    let w = S1DominationWitness::from_row_max(&phi)?;
    let r = sym.s1_multiplier_check(&w, 500, 1)?;
    println!("row-max witness:    constant {:.4}, worst ratio = {:.6}", r.c, r.max_ratio);

    // A witness that fails to dominate is rejected up front, naming the
    // offending entry.
    let bad = S1DominationWitness::new(vec![0.01; 4], vec![0.01; 4])?;
    match sym.s1_multiplier_check(&bad, 1, 0) {
        Err(e) => println!("undersized witness rejected: {}", e),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
