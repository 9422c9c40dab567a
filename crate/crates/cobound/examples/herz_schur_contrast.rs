//! The same symbol, two very different multiplier norms. The constant
//! function `f ≡ 1` read as an entrywise multiplier symbol on `M_N` has
//! co-bounded norm `N`; read as a convolution multiplier over a group of
//! order `N`, its co-bounded norm is only the largest irrep dimension.

use cobound::groups::{catalog, herz_schur_vs_schur_report};

fn main() -> cobound::Result<()> {
    println!("   group    entrywise   convolution   ratio");
    for name in ["cyclic:4", "s3", "q8", "cyclic:12", "d4"] {
        let r = herz_schur_vs_schur_report(&catalog(name)?)?;
        println!(
            "{:>9}   {:>9.4}   {:>11.4}   {:>5.2}",
            name, r.matrix_side, r.group_side, r.ratio
        );
    }
    println!("\n(abelian groups maximize the gap: every irrep is one-dimensional)");
    Ok(())
}
