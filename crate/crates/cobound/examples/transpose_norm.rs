//! The transposition map on `M_n` has completely bounded norm exactly `n`,
//! even though its operator norm is 1. The SDP recovers the value from the
//! Choi matrix alone.

use cobound::superop::SuperOp;

fn main() -> cobound::Result<()> {
    for n in 2..=4 {
        let map = SuperOp::transpose_map(n);
        let cb = map.cb_norm()?;
        println!("cb(transpose on M_{}) = {:.8}   (plain norm would be 1)", n, cb);
    }

    // The identity map, for contrast, is a complete contraction at every
    // dimension.
    let id = SuperOp::identity(4);
    println!("cb(identity on M_4)  = {:.8}", id.cb_norm()?);
    Ok(())
}
