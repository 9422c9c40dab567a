//! For any function on a finite group, the ℓ¹ mass `Σ|f(t)|` equals the
//! operator norm of the translation-structured matrix `[|f(s·t⁻¹)|]`: the
//! matrix is nonnegative with constant row and column sums. (Over infinite
//! amenable groups the analogous equality characterizes amenability; here
//! it is exact for every group in the catalog.)

use cobound::groups::{catalog, kesten_check, random_function};
use cobound::trial_rng;

fn main() -> cobound::Result<()> {
    for name in ["cyclic:6", "s3", "d4", "q8"] {
        let cat = catalog(name)?;
        let mut rng = trial_rng(13, 0);
        let f = random_function(cat.group.order(), &mut rng);
        let r = kesten_check(&cat.group, &f)?;
        println!(
            "{:>9}:  Σ|f| = {:.8}   ‖[|f(st⁻¹)|]‖ = {:.8}   ratio {:.12}",
            name, r.l1_value, r.matrix_norm, r.ratio
        );
    }
    Ok(())
}
