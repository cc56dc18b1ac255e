//! Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
//!
//! The power series is the definition but is numerically useless on much of
//! the negative axis: its terms grow to e^{alpha |z|^{1/alpha}} before the
//! alternating sum collapses, so in f64 the cancellation destroys the result
//! long before |z| reaches 50. The evaluator therefore dispatches:
//!
//! * condition-guarded Kahan series wherever the rounding-error estimate
//!   eps * sum|t_k| / |sum| stays below 1e-12 (all z >= 0, small |z| otherwise),
//! * alpha == 1: Kummer-transformed confluent series (fixed-sign terms),
//! * 0 < alpha <= 2, z < 0: residues of e^s s^{alpha-beta}/(s^alpha - z) on
//!   the principal sheet plus the branch-cut integral, by adaptive
//!   Gauss-Kronrod quadrature,
//! * far negative z: the algebraic asymptotic series whenever its own
//!   truncation bound certifies the target accuracy.
//!
//! Each branch is validated against high-precision references in the tests;
//! the observed worst-case relative error over the tested domain is ~2e-12.

use std::f64::consts::PI;

use super::gamma::{gamma, recip_gamma};
use crate::error::{FraflowError, Result};

/// Arguments for [`mittag_leffler`]: E_{alpha,beta}(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64, z: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(FraflowError::precondition(format!(
                "Mittag-Leffler alpha must be > 0, got {alpha}"
            )));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(FraflowError::precondition(format!(
                "Mittag-Leffler beta must be > 0, got {beta}"
            )));
        }
        if !z.is_finite() {
            return Err(FraflowError::precondition("Mittag-Leffler z must be finite"));
        }
        Ok(MLParams { alpha, beta, z })
    }
}

/// Convenience for the common E_{theta,1}(z) decay-envelope use.
pub fn ml_e1(alpha: f64, z: f64) -> Result<f64> {
    mittag_leffler(MLParams::new(alpha, 1.0, z)?)
}

/// Evaluates E_{alpha,beta}(z) to ~1e-10 relative accuracy for |z| <= 50
/// (and well beyond on the negative axis).
pub fn mittag_leffler(p: MLParams) -> Result<f64> {
    let MLParams { alpha, beta, z } = p;
    if z == 0.0 {
        return Ok(recip_gamma(beta));
    }
    if z > 0.0 {
        return match series_guarded(alpha, beta, z) {
            SeriesOutcome::Converged(v) => Ok(v),
            SeriesOutcome::Overflow => Ok(f64::INFINITY),
            SeriesOutcome::IllConditioned { .. } => unreachable!("positive terms"),
            SeriesOutcome::NoConvergence { partial, bound } => Err(FraflowError::MlEvaluation {
                partial,
                bound,
                detail: "series term cap exceeded".into(),
            }),
        };
    }

    // z < 0
    let mut partial = f64::NAN;
    let mut bound = f64::INFINITY;
    match series_guarded(alpha, beta, z) {
        SeriesOutcome::Converged(v) => return Ok(v),
        SeriesOutcome::IllConditioned { partial: s, bound: b } => {
            partial = s;
            bound = b;
        }
        SeriesOutcome::Overflow => {}
        SeriesOutcome::NoConvergence { partial: s, bound: b } => {
            partial = s;
            bound = b;
        }
    }

    if beta >= alpha + 1.0 {
        // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z brings beta into the
        // band where the branch-cut integral is integrable at the origin.
        let inner = mittag_leffler(MLParams::new(alpha, beta - alpha, z)?)?;
        return Ok((inner - recip_gamma(beta - alpha)) / z);
    }

    if (alpha - 1.0).abs() < 1e-12 {
        return Ok(kummer_alpha_one(beta, z));
    }

    if alpha <= 2.0 + 1e-12 {
        let res = residue_pair(alpha, beta, z);
        let cut_vanishes = (alpha - 2.0).abs() < 1e-12
            && ((2.0 - beta) - (2.0 - beta).round()).abs() < 1e-12;
        if cut_vanishes {
            return Ok(res);
        }
        if z < -50.0 {
            if let Some((asy, asy_bound)) = asymptotic_negative(alpha, beta, z) {
                let total = res + asy;
                if asy_bound <= 1e-12 * total.abs().max(1e-300) {
                    return Ok(total);
                }
            }
        }
        let cut = cut_integral(alpha, beta, z)?;
        return Ok(res + cut);
    }

    // alpha > 2 with an ill-conditioned series: outside the implemented
    // analysis regime (the flows use theta in (0,1]); refuse honestly.
    Err(FraflowError::MlEvaluation {
        partial,
        bound,
        detail: format!("series ill-conditioned and no branch covers alpha = {alpha} > 2"),
    })
}

enum SeriesOutcome {
    Converged(f64),
    IllConditioned { partial: f64, bound: f64 },
    Overflow,
    NoConvergence { partial: f64, bound: f64 },
}

const SERIES_TERM_CAP: usize = 20_000;

/// Kahan-compensated power series with a running condition estimate.
fn series_guarded(alpha: f64, beta: f64, z: f64) -> SeriesOutcome {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut z_pow = 1.0f64;
    for k in 0..SERIES_TERM_CAP {
        let arg = alpha * k as f64 + beta;
        let term = if arg > 171.0 { 0.0 } else { z_pow / gamma(arg) };
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sum_abs += term.abs();
        z_pow *= z;
        if z_pow.abs() > 1e280 {
            return SeriesOutcome::Overflow;
        }
        if k > 4 && term.abs() <= 1e-17 * sum.abs() + 1e-300 {
            let err = f64::EPSILON * sum_abs;
            if err > 1e-12 * sum.abs() {
                return SeriesOutcome::IllConditioned {
                    partial: sum,
                    bound: err,
                };
            }
            return SeriesOutcome::Converged(sum);
        }
    }
    SeriesOutcome::NoConvergence {
        partial: sum,
        bound: f64::EPSILON * sum_abs,
    }
}

/// alpha == 1 via the Kummer transformation:
/// E_{1,b}(z) = e^z M(b-1, b, -z) / Gamma(b), and the transformed series
/// has a single sign change at most, so it is free of the catastrophic
/// cancellation that kills the direct series for z << 0.
fn kummer_alpha_one(beta: f64, z: f64) -> f64 {
    let x = -z;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut k = 0usize;
    while k < 2_000_000 {
        k += 1;
        let kf = k as f64;
        term *= x * (beta - 2.0 + kf) / ((beta - 1.0 + kf) * kf);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    z.exp() * sum / gamma(beta)
}

/// Sum of the residues of e^s s^{alpha-beta}/(s^alpha - z) over the poles on
/// the principal sheet. For z < 0 those exist only when alpha > 1, at
/// s = |z|^{1/alpha} e^{+-i pi/alpha}; the conjugate pair collapses to a
/// purely real expression.
fn residue_pair(alpha: f64, beta: f64, z: f64) -> f64 {
    if alpha <= 1.0 {
        return 0.0;
    }
    let r = (-z).powf(1.0 / alpha);
    let phi = PI / alpha;
    let modulus = r.powf(1.0 - beta) * (r * phi.cos()).exp();
    let argument = (1.0 - beta) * phi + r * phi.sin();
    (2.0 / alpha) * modulus * argument.cos()
}

/// Branch-cut integrand (already real):
/// (1/pi) e^{-u} u^{alpha-beta} Im[ e^{i pi (alpha-beta+1)} / (u^alpha e^{i pi alpha} - z) ].
fn cut_kernel(u: f64, alpha: f64, beta: f64, z: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let ua = u.powf(alpha);
    let dre = ua * (PI * alpha).cos() - z;
    let dim = ua * (PI * alpha).sin();
    let denom = dre * dre + dim * dim;
    let th = PI * (alpha - beta + 1.0);
    let im = (th.sin() * dre - th.cos() * dim) / denom;
    (1.0 / PI) * (-u).exp() * u.powf(alpha - beta) * im
}

/// Branch-cut integral for z < 0, 0 < alpha < 2 (beta < alpha + 1).
fn cut_integral(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let x = -z;
    let u_pole = x.powf(1.0 / alpha);

    // [0, 1]: substitute u = w^p with p = 1/(alpha - beta + 1) so the
    // endpoint factor u^{alpha-beta} du becomes p dw; an algebraic kink
    // remains at w = 0, handled by geometric seed panels.
    let p = 1.0 / (alpha - beta + 1.0);
    let f0 = |w: f64| -> f64 {
        if w <= 0.0 {
            return 0.0;
        }
        let u = w.powf(p);
        let ua = u.powf(alpha);
        let dre = ua * (PI * alpha).cos() - z;
        let dim = ua * (PI * alpha).sin();
        let denom = dre * dre + dim * dim;
        let th = PI * (alpha - beta + 1.0);
        let im = (th.sin() * dre - th.cos() * dim) / denom;
        (p / PI) * (-u).exp() * im
    };
    let mut pts0 = vec![0.0];
    for e in (1..=12).rev() {
        pts0.push(10f64.powi(-e));
    }
    pts0.push(0.5);
    pts0.push(1.0);
    let i0 = adaptive_gk(&f0, &pts0)?;

    // [1, r_cap]: direct, with breakpoints steering the splitter at the
    // near-pole Lorentzian that forms as alpha -> 1.
    let r_cap = 40.0f64.max(u_pole + 40.0);
    let mut pts = vec![1.0];
    if (alpha - 1.0).abs() < 0.2 && u_pole > 1.0 {
        let w = u_pole * PI * (1.0 - alpha).abs() / alpha + 1e-8;
        for m in [-100.0, -30.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 30.0, 100.0] {
            let q = u_pole + m * w;
            if q > 1.0 && q < r_cap {
                pts.push(q);
            }
        }
    }
    if u_pole > 1.0 && u_pole < r_cap {
        pts.push(u_pole);
    }
    for g in [2.0, 4.0, 8.0, 16.0] {
        if g < r_cap {
            pts.push(g);
        }
    }
    pts.push(r_cap);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let f1 = |u: f64| cut_kernel(u, alpha, beta, z);
    let i1 = adaptive_gk(&f1, &pts)?;

    Ok(i0 + i1)
}

/// Algebraic asymptotic series -sum_{k>=1} z^{-k}/Gamma(beta - alpha k),
/// optimally truncated. Returns (value, truncation bound); the caller only
/// accepts it when the bound certifies the target accuracy.
fn asymptotic_negative(alpha: f64, beta: f64, z: f64) -> Option<(f64, f64)> {
    let mut sum = 0.0f64;
    let mut last = f64::INFINITY;
    let mut zk = 1.0f64;
    for k in 1..300 {
        zk /= z;
        let g = beta - alpha * k as f64;
        let rg = recip_gamma(g);
        if rg == 0.0 {
            continue;
        }
        let t = zk * rg;
        if t.abs() > last {
            return Some((sum, t.abs()));
        }
        last = t.abs();
        sum -= t;
        if k > 3 && t.abs() < 1e-17 * sum.abs() {
            return Some((sum, t.abs()));
        }
    }
    Some((sum, last))
}

// ---- adaptive Gauss-Kronrod (G7, K15) ----

const XGK: [f64; 15] = [
    -0.991455371120813,
    -0.949107912342759,
    -0.864864423359769,
    -0.741531185599394,
    -0.586087235467691,
    -0.405845151377397,
    -0.207784955007898,
    0.0,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];
const WGK: [f64; 15] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];
const WG: [f64; 7] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
    0.381830050505119,
    0.279705391489277,
    0.129484966168870,
];

fn gk15(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut k = 0.0;
    let mut g = 0.0;
    let mut fx = [0.0f64; 15];
    for (i, &x) in XGK.iter().enumerate() {
        fx[i] = f(c + h * x);
        k += WGK[i] * fx[i];
    }
    for (j, &w) in WG.iter().enumerate() {
        g += w * fx[2 * j + 1];
    }
    (h * k, (h * (k - g)).abs())
}

const MAX_PANELS: usize = 4000;

fn adaptive_gk(f: &dyn Fn(f64) -> f64, pts: &[f64]) -> Result<f64> {
    #[derive(Debug)]
    struct Panel {
        err: f64,
        lo: f64,
        hi: f64,
        val: f64,
    }
    let mut panels: Vec<Panel> = Vec::new();
    let mut total = 0.0;
    let mut toterr = 0.0;
    for w in pts.windows(2) {
        let (v, e) = gk15(f, w[0], w[1]);
        total += v;
        toterr += e;
        panels.push(Panel {
            err: e,
            lo: w[0],
            hi: w[1],
            val: v,
        });
    }
    let mut n = panels.len();
    while toterr > 1e-13 * total.abs() + 1e-306 {
        if n >= MAX_PANELS {
            return Err(FraflowError::MlEvaluation {
                partial: total,
                bound: toterr,
                detail: "branch-cut quadrature panel cap exceeded".into(),
            });
        }
        // split the worst panel
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.err.partial_cmp(&b.1.err).unwrap())
            .unwrap();
        let Panel { err, lo, hi, val } = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        total += v1 + v2 - val;
        toterr += e1 + e2 - err;
        panels.push(Panel {
            err: e1,
            lo,
            hi: mid,
            val: v1,
        });
        panels.push(Panel {
            err: e2,
            lo: mid,
            hi,
            val: v2,
        });
        n += 1;
    }
    Ok(total)
}
