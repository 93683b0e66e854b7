//! Adaptive quadrature.
//!
//! The rate integrals in this crate are smooth once the gap-edge singularity
//! has been absorbed by the substitution u = sqrt(eps - gap), so a classic
//! adaptive Simpson rule with Richardson extrapolation is accurate and cheap.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("quadrature tolerance not met: value {value}, error estimate {abs_err}")]
    ToleranceNotMet { value: f64, abs_err: f64 },
    #[error("quadrature interval is invalid: [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Accumulated absolute error estimate from the extrapolation step.
    pub abs_err: f64,
    /// Number of integrand evaluations.
    pub evals: usize,
}

impl QuadResult {
    pub fn rel_err(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_err
        } else {
            (self.abs_err / self.value).abs()
        }
    }
}

const MAX_DEPTH: u32 = 48;

struct Ctx<'f> {
    f: &'f dyn Fn(f64) -> f64,
    evals: usize,
    err: f64,
    bad_x: Option<f64>,
}

impl Ctx<'_> {
    fn eval(&mut self, x: f64) -> f64 {
        self.evals += 1;
        let y = (self.f)(x);
        if !y.is_finite() && self.bad_x.is_none() {
            self.bad_x = Some(x);
        }
        y
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    ctx: &mut Ctx,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = ctx.eval(lm);
    let frm = ctx.eval(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        ctx.err += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    refine(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + refine(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
}

/// Integrate `f` over `[a, b]` to the requested tolerance.
///
/// The effective absolute tolerance is
/// `max(abs_tol, rel_tol * |first coarse estimate|)`; the returned error
/// estimate is the sum of the per-panel extrapolation corrections.
pub fn adaptive_simpson(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult, QuadError> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(QuadError::BadInterval { a, b });
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_err: 0.0,
            evals: 0,
        });
    }
    let mut ctx = Ctx {
        f: &f,
        evals: 0,
        err: 0.0,
        bad_x: None,
    };
    let m = 0.5 * (a + b);
    let fa = ctx.eval(a);
    let fm = ctx.eval(m);
    let fb = ctx.eval(b);
    let whole = simpson(fa, fm, fb, b - a);
    let tol = abs_tol.max(rel_tol * whole.abs()).max(f64::MIN_POSITIVE);
    let value = refine(&mut ctx, a, b, fa, fm, fb, whole, tol, 0);
    if let Some(x) = ctx.bad_x {
        return Err(QuadError::NonFinite { x });
    }
    let res = QuadResult {
        value,
        abs_err: ctx.err,
        evals: ctx.evals,
    };
    if ctx.err > 10.0 * tol.max(rel_tol * value.abs()) {
        return Err(QuadError::ToleranceNotMet {
            value,
            abs_err: ctx.err,
        });
    }
    Ok(res)
}
