//! The SDP layer on its own: a complex block-diagonal problem assembled
//! entry by entry. Here: the largest eigenvalue of a Hermitian matrix `A`,
//! as `minimize t` subject to `t·I − A ⪰ 0`, with the free variable `t`
//! split into two nonnegative blocks `t = t₊ − t₋`.

use cobound::linalg::{eigh, gaussian};
use cobound::sdp::{im_entry, re_entry, SdpConstraint, SdpProblem};
use cobound::trial_rng;
use num_complex::Complex64;

fn main() -> cobound::Result<()> {
    let n = 4;
    let mut rng = trial_rng(41, 0);
    let g = gaussian(n, n, &mut rng);
    let a = g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0));

    // Blocks: 0 = slack S (n×n PSD), 1 = t₊, 2 = t₋.
    let mut p = SdpProblem::new(vec![n, 1, 1]);
    let mut one = cobound::CMatrix::zeros(1, 1);
    one.set(0, 0, Complex64::new(1.0, 0.0));
    p.set_objective(1, one.clone())?;
    p.set_objective(2, one.scale(Complex64::new(-1.0, 0.0)))?;

    // S[k,l] − δ_kl·t₊ + δ_kl·t₋ = −A[k,l], entrywise over the upper
    // triangle, split into real and imaginary parts.
    for k in 0..n {
        for l in k..n {
            let v = a.get(k, l);
            let mut con = SdpConstraint::new(-v.re);
            con.entries.extend(re_entry(0, k, l));
            if k == l {
                con.push(1, 0, 0, Complex64::new(-1.0, 0.0));
                con.push(2, 0, 0, Complex64::new(1.0, 0.0));
            }
            p.add_constraint(con);
            if k != l {
                let mut con = SdpConstraint::new(-v.im);
                con.entries.extend(im_entry(0, k, l));
                p.add_constraint(con);
            }
        }
    }

    let sol = p.solve()?;
    let sdp_value = sol.optimal_value()?;
    let (evals, _) = eigh(&a)?;
    let top = *evals.last().unwrap();
    println!("largest eigenvalue:   eigensolver {:.10}   sdp {:.10}", top, sdp_value);
    println!(
        "status {:?}, {} iterations, duality gap {:.2e}, dual value {:.10}",
        sol.status,
        sol.iterations,
        (sol.primal_value - sol.dual_value).abs(),
        sol.dual_value
    );
    Ok(())
}
