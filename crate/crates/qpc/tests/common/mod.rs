//! Shared helpers for the integration suites: brute-force quadrature
//! oracles for the sampler distributions, a Kolmogorov-Smirnov statistic,
//! and small fit/statistics utilities.
//!
//! The oracles here deliberately avoid the library's own reparametrized
//! quadrature. They integrate the raw densities on a quadratically graded
//! mesh x = lo + (hi - lo) t^2, which absorbs the inverse-square-root
//! gap-edge singularity, with a plain trapezoid rule at around a million
//! points. Agreement between the two routes is then meaningful evidence.

#![allow(dead_code)]

/// BCS density of states in gap units, x / sqrt(x^2 - 1) for x > 1.
pub fn bcs_rho(x: f64) -> f64 {
    x / (x * x - 1.0).sqrt()
}

/// Cumulative of a density with (at worst) an inverse-square-root
/// singularity at `lo`, tabulated on the graded mesh x = lo + span * t^2.
pub struct GradedCdf {
    lo: f64,
    span: f64,
    cum: Vec<f64>, // trapezoid cumulative over the uniform t grid
}

impl GradedCdf {
    pub fn build(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let span = hi - lo;
        // integrand in t is f(x(t)) dx/dt = f(x) 2 span t, finite at the
        // singular edge; the edge is evaluated just inside, far enough in
        // that x - lo stays resolvable in f64 (the limit is t-independent
        // for an inverse-square-root singularity)
        let g = |t: f64| {
            let tt = t.max(1e-7);
            let x = lo + span * tt * tt;
            f(x) * 2.0 * span * tt
        };
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        let mut prev = g(0.0);
        for j in 1..=n {
            let t = j as f64 / n as f64;
            let cur = g(t);
            acc += 0.5 * (prev + cur) / n as f64;
            cum.push(acc);
            prev = cur;
        }
        GradedCdf { lo, span, cum }
    }

    pub fn total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// Unnormalized cumulative at x, clamped to the support.
    pub fn partial(&self, x: f64) -> f64 {
        let n = self.cum.len() - 1;
        let frac_x = ((x - self.lo) / self.span).clamp(0.0, 1.0);
        let pos = frac_x.sqrt() * n as f64;
        let i = (pos as usize).min(n - 1);
        let frac = pos - i as f64;
        self.cum[i] + (self.cum[i + 1] - self.cum[i]) * frac
    }
}

/// Brute-force CDF of the pair-breaking split in gap units: a phonon of
/// energy e > 2 produces a quasiparticle at s in [1, e-1] with density
/// rho(s) rho(e-s) (1 + 1/(s (e-s))). The density is symmetric about e/2,
/// so only the left half is integrated and the right half is mirrored.
pub struct PairbreakOracle {
    half: GradedCdf,
    e: f64,
}

impl PairbreakOracle {
    pub fn build(e: f64, n: usize) -> Self {
        let f = move |s: f64| bcs_rho(s) * bcs_rho(e - s) * (1.0 + 1.0 / (s * (e - s)));
        PairbreakOracle {
            half: GradedCdf::build(1.0, 0.5 * e, n, f),
            e,
        }
    }

    pub fn cdf(&self, s: f64) -> f64 {
        let t = self.half.total();
        if s <= 0.5 * self.e {
            0.5 * self.half.partial(s) / t
        } else {
            1.0 - 0.5 * self.half.partial(self.e - s) / t
        }
    }
}

/// Brute-force CDF of the relaxation final state in gap units: a
/// quasiparticle at e > 1 lands at s in [1, e] with density
/// (e-s)^2 rho(s) (1 - 1/(e s)).
pub struct EmissionOracle {
    cdf: GradedCdf,
}

impl EmissionOracle {
    pub fn build(e: f64, n: usize) -> Self {
        let f = move |s: f64| {
            let excess = e - s;
            excess * excess * bcs_rho(s) * (1.0 - 1.0 / (e * s))
        };
        EmissionOracle {
            cdf: GradedCdf::build(1.0, e, n, f),
        }
    }

    pub fn cdf(&self, s: f64) -> f64 {
        self.cdf.partial(s) / self.cdf.total()
    }
}

/// Two-sided Kolmogorov-Smirnov distance between samples pushed through a
/// reference CDF and the uniform distribution. Consumes the CDF values.
pub fn ks_distance(mut u: Vec<f64>) -> f64 {
    u.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = u.len() as f64;
    let mut d = 0.0f64;
    for (i, &ui) in u.iter().enumerate() {
        let below = ui - i as f64 / n;
        let above = (i + 1) as f64 / n - ui;
        d = d.max(below.abs()).max(above.abs());
    }
    d
}

/// Least-squares line through (x, y); returns (slope, intercept, r^2).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, intercept, r2)
}

/// Sample mean and standard error.
pub fn mean_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
