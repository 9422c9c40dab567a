//! Randomized lower bounds vs. SDP values.
//!
//! The sampler ascends ‖(id_k ⊗ Φ)(X)‖ over contractions X at a fixed
//! amplification level k. Whatever it returns is a certified lower bound
//! on the completely bounded norm; with k = input dimension it attains
//! the transpose-map value exactly.

use cobound::schur::SchurSymbol;
use cobound::superop::SuperOp;
use cobound::trial_rng;

fn main() -> cobound::Result<()> {
    println!("{:<28} {:>12} {:>12}", "map", "sampler", "sdp");
    for n in 2..=3 {
        let t = SuperOp::transpose_map(n);
        let lower = t.cb_lower_bound_sampler(n, 6, 40, 3)?;
        let sdp = t.cb_norm()?;
        println!("{:<28} {:>12.8} {:>12.8}", format!("transpose on {n}x{n}"), lower, sdp);
    }

    let mut rng = trial_rng(29, 0);
    let phi = SchurSymbol::new(cobound::linalg::gaussian(3, 3, &mut rng))?;
    let map = phi.to_superop()?;
    let lower = map.cb_lower_bound_sampler(3, 8, 60, 5)?;
    let sdp = map.cb_norm()?;
    println!("{:<28} {:>12.8} {:>12.8}", "random 3x3 Schur map", lower, sdp);
    println!();
    println!("every sampler value sits at or below its SDP column.");
    Ok(())
}
