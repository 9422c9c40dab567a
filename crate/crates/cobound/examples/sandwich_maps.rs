//! Two-sided product maps `x ↦ a·x·b`. Their Choi matrix has rank one, and
//! the completely co-bounded norm is exactly `‖a‖₂·‖b‖₂` — a product of
//! Hilbert–Schmidt norms, not operator norms.

use cobound::linalg::gaussian;
use cobound::superop::SuperOp;
use cobound::trial_rng;

fn main() -> cobound::Result<()> {
    let mut rng = trial_rng(11, 0);
    let a = gaussian(3, 3, &mut rng);
    let b = gaussian(3, 3, &mut rng);
    let map = SuperOp::sandwich(&a, &b)?;

    let x = gaussian(3, 3, &mut rng);
    let lhs = map.apply(&x)?;
    let rhs = a.matmul(&x).matmul(&b);
    println!("apply deviation      {:.2e}", lhs.sub(&rhs).max_abs());

    let sdp = map.cob_norm()?;
    let formula = a.frobenius_norm() * b.frobenius_norm();
    println!("cob norm    sdp {:.8}   ‖a‖₂·‖b‖₂ {:.8}", sdp, formula);

    // The plain cb norm is the product of operator norms instead.
    let cb = map.cb_norm()?;
    let op = a.op_norm()? * b.op_norm()?;
    println!("cb norm     sdp {:.8}   ‖a‖·‖b‖   {:.8}", cb, op);
    Ok(())
}
