//! Infeasible-start primal-dual interior-point method for block-diagonal
//! real symmetric SDPs, using Nesterov–Todd scaling and a dense Schur
//! complement. Predictor/corrector steps share one factorization of the
//! Schur matrix per iteration.

use super::realsym::*;

/// Standard-form real problem: minimize `Σ_b ⟨C_b, X_b⟩` subject to
/// `Σ_b ⟨A_kb, X_b⟩ = rhs_k` and every `X_b ⪰ 0`.
#[derive(Debug, Clone)]
pub(crate) struct RealProblem {
    pub sizes: Vec<usize>,
    pub obj: Vec<RMat>,
    /// Per constraint, per block: sparse triplets `(row, col, value)` listing
    /// every nonzero (both triangles).
    pub cons: Vec<Vec<Vec<(u32, u32, f64)>>>,
    pub rhs: Vec<f64>,
}

impl RealProblem {
    pub fn con_dot(&self, k: usize, x: &[RMat]) -> f64 {
        let mut acc = 0.0;
        for (b, tri) in self.cons[k].iter().enumerate() {
            for &(r, c, v) in tri {
                acc += v * x[b].get(r as usize, c as usize);
            }
        }
        acc
    }

    pub fn con_frob(&self, k: usize) -> f64 {
        self.cons[k]
            .iter()
            .flat_map(|t| t.iter())
            .map(|&(_, _, v)| v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Adds a redundant trace bound `Σ_b tr(X_b) + slack = big_m` through a
    /// fresh 1x1 slack block. Keeps the primal feasible region bounded so a
    /// persistent equality residual certifies infeasibility.
    pub fn augment_trace_bound(&mut self, big_m: f64) {
        let slack = self.sizes.len();
        self.sizes.push(1);
        self.obj.push(RMat::zeros(1));
        for con in self.cons.iter_mut() {
            con.push(Vec::new());
        }
        let mut tri: Vec<Vec<(u32, u32, f64)>> = Vec::with_capacity(slack + 1);
        for (b, &s) in self.sizes.iter().enumerate().take(slack) {
            tri.push((0..s as u32).map(|i| (i, i, 1.0)).collect());
            let _ = b;
        }
        tri.push(vec![(0, 0, 1.0)]);
        self.cons.push(tri);
        self.rhs.push(big_m);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RealStatus {
    Optimal,
    Infeasible,
    NumericalFailure,
}

#[derive(Debug, Clone)]
pub(crate) struct RealOutcome {
    pub status: RealStatus,
    pub x: Vec<RMat>,
    pub y: Vec<f64>,
    pub pobj: f64,
    pub dobj: f64,
    pub iterations: usize,
    pub complementarity: f64,
    pub message: String,
}

pub(crate) struct IpmOptions {
    pub tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
}

struct Scaling {
    w: Vec<RMat>,
    s_inv: Vec<RMat>,
    lx: Vec<RMat>,
    ls: Vec<RMat>,
}

/// Most accurate iterate seen so far, kept so that a late-stage numerical
/// breakdown (ill-conditioned Schur systems once complementarity is tiny)
/// can still return the nearly-converged point instead of garbage.
struct BestIterate {
    x: Vec<RMat>,
    y: Vec<f64>,
    pobj: f64,
    dobj: f64,
    compl: f64,
    merit: f64,
}

/// Terminal outcome when the iteration cannot continue: hand back the best
/// iterate, as a reduced-accuracy optimum if it nearly met the tolerance.
fn settle(
    best: Option<BestIterate>,
    current: (Vec<RMat>, Vec<f64>, f64, f64, f64),
    iterations: usize,
    tol: f64,
    msg: &str,
) -> RealOutcome {
    match best {
        Some(b) if b.merit <= 100.0 * tol => RealOutcome {
            status: RealStatus::Optimal,
            x: b.x,
            y: b.y,
            pobj: b.pobj,
            dobj: b.dobj,
            iterations,
            complementarity: b.compl,
            message: format!("reduced accuracy ({msg}); worst residual {:.1e}", b.merit),
        },
        Some(b) => RealOutcome {
            status: RealStatus::NumericalFailure,
            x: b.x,
            y: b.y,
            pobj: b.pobj,
            dobj: b.dobj,
            iterations,
            complementarity: b.compl,
            message: format!("{msg}; best residual {:.1e}", b.merit),
        },
        None => RealOutcome {
            status: RealStatus::NumericalFailure,
            x: current.0,
            y: current.1,
            pobj: current.2,
            dobj: current.3,
            iterations,
            complementarity: current.4,
            message: msg.into(),
        },
    }
}

pub(crate) fn solve_ipm(p: &RealProblem, opt: &IpmOptions) -> RealOutcome {
    let nb = p.sizes.len();
    let nk = p.cons.len();
    let ntot: usize = p.sizes.iter().sum();

    // Starting point: multiples of the identity sized from the data, with the
    // trace-bound slack (last block, 1x1 with zero objective) absorbing its
    // constraint so the artificial row starts satisfied.
    let bscale = p
        .rhs
        .iter()
        .enumerate()
        .map(|(k, &b)| b.abs() / (1.0 + p.con_frob(k)))
        .fold(0.0f64, f64::max)
        .min(1e4);
    let cscale = p.obj.iter().map(|c| c.frob()).fold(0.0f64, f64::max);
    let xi_p = 10.0 * (1.0 + bscale);
    let xi_d = 10.0 * (1.0 + cscale);

    let mut x: Vec<RMat> = p.sizes.iter().map(|&s| RMat::identity_scaled(s, xi_p)).collect();
    let mut s: Vec<RMat> = p.sizes.iter().map(|&s| RMat::identity_scaled(s, xi_d)).collect();
    let mut y = vec![0.0; nk];

    // If the last constraint is the trace bound, start its slack on the row.
    if let Some(last) = p.cons.last() {
        let is_trace = last.len() == nb && last.last().map_or(false, |t| t == &[(0, 0, 1.0)]);
        if is_trace {
            let used: f64 = p.sizes[..nb - 1].iter().map(|&sz| xi_p * sz as f64).sum();
            let slack0 = p.rhs[nk - 1] - used;
            if slack0 > 1.0 {
                x[nb - 1] = RMat::identity_scaled(1, slack0);
            }
        }
    }

    let mu0 = xi_p * xi_d;
    let mut stall = 0usize;
    let mut iterations = 0usize;
    let mut best: Option<BestIterate> = None;
    let mut min_rel_p = f64::INFINITY;
    for iter in 0..opt.max_iter {
        iterations = iter;
        let pobj: f64 = (0..nb).map(|b| p.obj[b].dot(&x[b])).sum();
        let dobj: f64 = (0..nk).map(|k| y[k] * p.rhs[k]).sum();
        let compl: f64 = (0..nb).map(|b| x[b].dot(&s[b])).sum();
        let mu = compl / ntot as f64;

        let rp: Vec<f64> = (0..nk).map(|k| p.rhs[k] - p.con_dot(k, &x)).collect();
        let rel_p = rp
            .iter()
            .zip(&p.rhs)
            .map(|(r, b)| r.abs() / (1.0 + b.abs()))
            .fold(0.0f64, f64::max);

        let mut rd: Vec<RMat> = Vec::with_capacity(nb);
        for b in 0..nb {
            let mut m = p.obj[b].clone();
            m.add_scaled(&s[b], -1.0);
            rd.push(m);
        }
        for k in 0..nk {
            if y[k] == 0.0 {
                continue;
            }
            for (b, tri) in p.cons[k].iter().enumerate() {
                for &(r, c, v) in tri {
                    let cur = rd[b].get(r as usize, c as usize);
                    rd[b].set(r as usize, c as usize, cur - y[k] * v);
                }
            }
        }
        let rel_d = (0..nb)
            .map(|b| rd[b].frob() / (1.0 + p.obj[b].frob()))
            .fold(0.0f64, f64::max);

        let rel_gap = (pobj - dobj).abs() / (1.0 + pobj.abs());

        if std::env::var_os("COBOUND_IPM_TRACE").is_some() {
            eprintln!(
                "it {iter:3} mu {mu:9.2e} rp {rel_p:9.2e} rd {rel_d:9.2e} gap {rel_gap:9.2e} pobj {pobj:14.8} dobj {dobj:14.8}"
            );
        }

        if rel_gap <= opt.tol && rel_p <= opt.feas_tol && rel_d <= opt.feas_tol {
            return RealOutcome {
                status: RealStatus::Optimal,
                x,
                y,
                pobj,
                dobj,
                iterations,
                complementarity: compl,
                message: String::new(),
            };
        }

        let merit = rel_gap.max(rel_p).max(rel_d);
        if best.as_ref().map_or(true, |b| merit < b.merit) {
            best = Some(BestIterate {
                x: x.clone(),
                y: y.clone(),
                pobj,
                dobj,
                compl,
                merit,
            });
        }
        // An essentially feasible iterate at any point in the run refutes
        // primal infeasibility: x stays in the cone by construction.
        min_rel_p = min_rel_p.min(rel_p);
        let was_near_feasible = min_rel_p <= 1e-8;

        // Divergence of the dual objective with small dual residual is a
        // primal-infeasibility certificate (improving ray).
        if dobj > 1e6 * (1.0 + bscale) && rel_d <= 1e-6 {
            return RealOutcome {
                status: RealStatus::Infeasible,
                x,
                y,
                pobj,
                dobj,
                iterations,
                complementarity: compl,
                message: "dual objective diverging with near-feasible dual".into(),
            };
        }
        // Complementarity converged but the (bounded) equalities are still
        // violated: no feasible point exists — unless an earlier iterate was
        // essentially feasible, in which case this is a numerical breakdown
        // of the final steps, not an infeasibility certificate.
        if mu <= 1e-12 * mu0 && rel_p > 1e-6 {
            if was_near_feasible {
                return settle(
                    best,
                    (x, y, pobj, dobj, compl),
                    iterations,
                    opt.tol,
                    "complementarity collapsed before the gap closed",
                );
            }
            return RealOutcome {
                status: RealStatus::Infeasible,
                x,
                y,
                pobj,
                dobj,
                iterations,
                complementarity: compl,
                message: "equality residual persists at vanishing complementarity".into(),
            };
        }

        let scaling = match compute_scaling(p, &x, &s) {
            Some(sc) => sc,
            None => {
                return settle(
                    best,
                    (x, y, pobj, dobj, compl),
                    iterations,
                    opt.tol,
                    "NT scaling breakdown",
                )
            }
        };

        let m = match build_schur(p, &scaling) {
            Some(m) => m,
            None => {
                return settle(
                    best,
                    (x, y, pobj, dobj, compl),
                    iterations,
                    opt.tol,
                    "Schur build failed",
                )
            }
        };
        let lm = match chol_with_ridge(&m) {
            Some(l) => l,
            None => {
                return settle(
                    best,
                    (x, y, pobj, dobj, compl),
                    iterations,
                    opt.tol,
                    "Schur factorization failed",
                )
            }
        };

        // Predictor (affine scaling, sigma = 0).
        let g_aff: Vec<RMat> = (0..nb)
            .map(|b| {
                let mut g = x[b].clone();
                g.scale(-1.0);
                let wrw = sandwich_w(&scaling.w[b], &rd[b]);
                g.add_scaled(&wrw, -1.0);
                g
            })
            .collect();
        let (dx_a, dy_a, ds_a) = newton_step(p, &scaling, &m, &lm, &rp, &rd, &g_aff);
        let ap_a = step_length(&x, &dx_a, &scaling.lx);
        let ad_a = step_length(&s, &ds_a, &scaling.ls);
        let _ = &dy_a;

        let mut mu_aff = 0.0;
        for b in 0..nb {
            let mut xt = x[b].clone();
            xt.add_scaled(&dx_a[b], ap_a);
            let mut st = s[b].clone();
            st.add_scaled(&ds_a[b], ad_a);
            mu_aff += xt.dot(&st);
        }
        mu_aff /= ntot as f64;
        let sigma = ((mu_aff / mu).powi(3)).clamp(1e-10, 1.0);

        // Corrector with centering sigma·mu, reusing the Schur factor.
        let g_cor: Vec<RMat> = (0..nb)
            .map(|b| {
                let mut g = scaling.s_inv[b].clone();
                g.scale(sigma * mu);
                g.add_scaled(&x[b], -1.0);
                let wrw = sandwich_w(&scaling.w[b], &rd[b]);
                g.add_scaled(&wrw, -1.0);
                g
            })
            .collect();
        let (dx, dy, ds) = newton_step(p, &scaling, &m, &lm, &rp, &rd, &g_cor);
        let ap = step_length(&x, &dx, &scaling.lx);
        let ad = step_length(&s, &ds, &scaling.ls);

        if std::env::var_os("COBOUND_IPM_TRACE").is_some() {
            eprintln!("      ap {ap:9.2e} ad {ad:9.2e} sigma {sigma:9.2e}");
        }

        for b in 0..nb {
            x[b].add_scaled(&dx[b], ap);
            x[b].symmetrize();
            s[b].add_scaled(&ds[b], ad);
            s[b].symmetrize();
        }
        for k in 0..nk {
            y[k] += ad * dy[k];
        }

        if ap.max(ad) < 1e-7 {
            stall += 1;
        } else {
            stall = 0;
        }
        if stall >= 5 {
            if rel_p > 1e-7 && !was_near_feasible {
                return RealOutcome {
                    status: RealStatus::Infeasible,
                    x,
                    y,
                    pobj,
                    dobj,
                    iterations,
                    complementarity: compl,
                    message: "step sizes collapsed away from feasibility".into(),
                };
            }
            return settle(
                best,
                (x, y, pobj, dobj, compl),
                iterations,
                opt.tol,
                "step sizes collapsed",
            );
        }
    }

    let pobj: f64 = (0..nb).map(|b| p.obj[b].dot(&x[b])).sum();
    let dobj: f64 = (0..nk).map(|k| y[k] * p.rhs[k]).sum();
    let compl: f64 = (0..nb).map(|b| x[b].dot(&s[b])).sum();
    settle(best, (x, y, pobj, dobj, compl), iterations, opt.tol, "iteration budget exhausted")
}

/// NT scaling point per block: `W = L·Q·Λ^(-1/2)·Qᵀ·Lᵀ` with `X = L·Lᵀ` and
/// `Lᵀ·S·L = Q·Λ·Qᵀ`, so that `W·S·W = X`.
fn compute_scaling(p: &RealProblem, x: &[RMat], s: &[RMat]) -> Option<Scaling> {
    let nb = p.sizes.len();
    let mut w = Vec::with_capacity(nb);
    let mut s_inv = Vec::with_capacity(nb);
    let mut lxs = Vec::with_capacity(nb);
    let mut lss = Vec::with_capacity(nb);
    for b in 0..nb {
        let lx = cholesky(&x[b])?;
        let ls = cholesky(&s[b])?;
        let sl = RMat::mul(&s[b], &lx);
        let t = RMat::mul_at_b(&lx, &sl);
        let (vals, vecs) = sym_eig(&t, true)?;
        if vals[0] <= 0.0 {
            return None;
        }
        let q = vecs.unwrap();
        let lq = RMat::mul(&lx, &q);
        let d: Vec<f64> = vals.iter().map(|&l| 1.0 / l.sqrt()).collect();
        w.push(RMat::scaled_gram(&lq, &d));
        s_inv.push(chol_inverse(&ls));
        lxs.push(lx);
        lss.push(ls);
    }
    Some(Scaling { w, s_inv, lx: lxs, ls: lss })
}

/// `W·A·W` for a dense symmetric `A`.
fn sandwich_w(w: &RMat, a: &RMat) -> RMat {
    let wa = RMat::mul(w, a);
    let mut out = RMat::mul(&wa, w);
    out.symmetrize();
    out
}

/// Schur complement `M[j,k] = Σ_b ⟨A_jb, W_b·A_kb·W_b⟩`, computed through the
/// sparse triplets: `Σ v1·v2·W[c1,r2]·W[c2,r1]`.
fn build_schur(p: &RealProblem, sc: &Scaling) -> Option<RMat> {
    let nk = p.cons.len();
    let mut m = RMat::zeros(nk);
    for j in 0..nk {
        for k in j..nk {
            let mut acc = 0.0;
            for (b, w) in sc.w.iter().enumerate() {
                let tj = &p.cons[j][b];
                let tk = &p.cons[k][b];
                if tj.is_empty() || tk.is_empty() {
                    continue;
                }
                for &(r1, c1, v1) in tj {
                    for &(r2, c2, v2) in tk {
                        acc += v1
                            * v2
                            * w.get(c1 as usize, r2 as usize)
                            * w.get(c2 as usize, r1 as usize);
                    }
                }
            }
            if !acc.is_finite() {
                return None;
            }
            m.set(j, k, acc);
            m.set(k, j, acc);
        }
    }
    Some(m)
}

pub(crate) fn chol_with_ridge(m: &RMat) -> Option<RMat> {
    if let Some(l) = cholesky(m) {
        return Some(l);
    }
    let base = (0..m.n).map(|i| m.get(i, i)).fold(0.0f64, f64::max).max(1.0);
    let mut ridge = 1e-12 * base;
    for _ in 0..3 {
        let mut mr = m.clone();
        for i in 0..m.n {
            let d = mr.get(i, i);
            mr.set(i, i, d + ridge);
        }
        if let Some(l) = cholesky(&mr) {
            return Some(l);
        }
        ridge *= 1e3;
    }
    None
}

/// Solves the Newton system for a given complementarity target `G`:
/// `M·Δy = r_p − A(G)`, `ΔS = R_d − A*(Δy)`, `ΔX = G + W·A*(Δy)·W`.
///
/// The Schur solve gets two rounds of iterative refinement; near the optimum
/// `M` is often ill-conditioned enough (possibly ridged) that the raw
/// triangular solves lose the primal residual entirely.
fn newton_step(
    p: &RealProblem,
    sc: &Scaling,
    m: &RMat,
    lm: &RMat,
    rp: &[f64],
    rd: &[RMat],
    g: &[RMat],
) -> (Vec<RMat>, Vec<f64>, Vec<RMat>) {
    let nb = p.sizes.len();
    let nk = p.cons.len();
    let mut rhs = vec![0.0; nk];
    for k in 0..nk {
        let mut acc = 0.0;
        for (b, tri) in p.cons[k].iter().enumerate() {
            for &(r, c, v) in tri {
                acc += v * g[b].get(r as usize, c as usize);
            }
        }
        rhs[k] = rp[k] - acc;
    }
    let rhs0 = rhs.clone();
    solve_lower_vec(lm, &mut rhs);
    solve_lower_t_vec(lm, &mut rhs);
    let mut dy = rhs;
    let rhs_scale = rhs0.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    for _ in 0..2 {
        let mut resid = vec![0.0; nk];
        let mut worst = 0.0f64;
        for j in 0..nk {
            let mut acc = 0.0;
            for c in 0..nk {
                acc += m.get(j, c) * dy[c];
            }
            resid[j] = rhs0[j] - acc;
            worst = worst.max(resid[j].abs());
        }
        if worst <= 1e-14 * (1.0 + rhs_scale) {
            break;
        }
        solve_lower_vec(lm, &mut resid);
        solve_lower_t_vec(lm, &mut resid);
        for j in 0..nk {
            dy[j] += resid[j];
        }
    }
    let dy = dy;

    let mut ds: Vec<RMat> = rd.to_vec();
    let mut astar: Vec<RMat> = p.sizes.iter().map(|&s| RMat::zeros(s)).collect();
    for k in 0..nk {
        if dy[k] == 0.0 {
            continue;
        }
        for (b, tri) in p.cons[k].iter().enumerate() {
            for &(r, c, v) in tri {
                let cur = astar[b].get(r as usize, c as usize);
                astar[b].set(r as usize, c as usize, cur + dy[k] * v);
            }
        }
    }
    let mut dx = Vec::with_capacity(nb);
    for b in 0..nb {
        ds[b].add_scaled(&astar[b], -1.0);
        let mut d = g[b].clone();
        d.add_scaled(&sandwich_w(&sc.w[b], &astar[b]), 1.0);
        d.symmetrize();
        dx.push(d);
    }
    (dx, dy, ds)
}

/// Fraction-to-boundary step: `min(1, η·α_max)` over blocks, where `α_max`
/// keeps `Z + α·ΔZ` positive definite. A Cholesky probe short-circuits the
/// common full-step case; otherwise the exact bound comes from the smallest
/// eigenvalue of `L⁻¹·ΔZ·L⁻ᵀ`.
fn step_length(z: &[RMat], dz: &[RMat], lz: &[RMat]) -> f64 {
    const ETA: f64 = 0.98;
    let mut alpha = 1.0f64;
    for b in 0..z.len() {
        // Probe: is Z + (1/η)·ΔZ still PD? Then a unit step is safe here.
        let mut probe = z[b].clone();
        probe.add_scaled(&dz[b], 1.0 / ETA);
        if cholesky(&probe).is_some() {
            continue;
        }
        let mut h = dz[b].clone();
        solve_lower_mat(&lz[b], &mut h);
        let mut ht = RMat::zeros(h.n);
        for i in 0..h.n {
            for j in 0..h.n {
                ht.set(i, j, h.get(j, i));
            }
        }
        solve_lower_mat(&lz[b], &mut ht);
        ht.symmetrize();
        match sym_eig_min(&ht) {
            Some(lmin) if lmin < 0.0 => {
                alpha = alpha.min(ETA * (-1.0 / lmin));
            }
            Some(_) => {}
            None => {
                alpha = alpha.min(1e-8);
            }
        }
    }
    alpha.clamp(0.0, 1.0)
}
