//! Inverse-CDF samplers for the cascade's final-state energy distributions.
//!
//! The two superconductor samplers draw from the integrands of the
//! scattering-rate formulas:
//!
//! * pair breaking: a phonon of energy E splits into quasiparticles with
//!   energies distributed as rho(eps) rho(E-eps) (1 + gap^2/(eps (E-eps)))
//!   on [gap, E-gap];
//! * quasiparticle relaxation: a quasiparticle at eps lands at eps' with
//!   weight (eps-eps')^2 rho(eps') (1 - gap^2/(eps eps')) on [gap, eps].
//!
//! Both densities have inverse-square-root singularities at the gap edge.
//! Each is reparametrized so the transformed density is bounded and smooth,
//! tabulated once per energy (in units of the gap), and inverted into a
//! 4096-segment lookup table. Tables are cached per thread, keyed by the
//! energy/gap ratio rounded to 1e-3; the integrands are scale-invariant in
//! gap units, which is what makes the cache effective.
//!
//! All samplers return a pair of energies that sum to the input energy
//! exactly: the partner energy is computed as the exact complement.

use rand::Rng;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("phonon energy {ep_k} K cannot break a pair for gap {gap_k} K")]
    BelowPairBreaking { ep_k: f64, gap_k: f64 },
    #[error("quasiparticle energy {eps_k} K is not above the gap {gap_k} K")]
    AtOrBelowGap { eps_k: f64, gap_k: f64 },
    #[error("electron energy {0} K must be positive")]
    NonPositiveElectron(f64),
}

/// Number of segments in both the build grid and the inverted table.
const KNOTS: usize = 4096;
/// Live entries kept per process-wide cache, both generations together.
/// Each table is about 33 KB, so a full cache holds about 270 MB; the low
/// energy funnel every deep cascade descends through stays resident.
const CACHE_CAP: usize = 8192;

/// Monotone map from uniform u in [0,1] to the transformed coordinate.
struct InverseTable {
    knots: Vec<f64>, // KNOTS + 1 values of the transformed coordinate
}

impl InverseTable {
    /// Build from density values on the uniform build grid (KNOTS + 1 of
    /// them). Overall constant factors in the density cancel in the
    /// inversion, so callers may drop them.
    fn build(vals: &[f64]) -> Self {
        let n = KNOTS;
        debug_assert_eq!(vals.len(), n + 1);
        let mut cum = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for j in 1..=n {
            acc += 0.5 * (vals[j - 1] + vals[j]) / n as f64;
            cum.push(acc);
        }
        let total = acc;
        // invert the cumulative at uniformly spaced quantiles
        let mut knots = Vec::with_capacity(n + 1);
        knots.push(0.0);
        let mut j = 0usize;
        for i in 1..n {
            let target = total * i as f64 / n as f64;
            while j + 1 < n && cum[j + 1] < target {
                j += 1;
            }
            let lo = cum[j];
            let hi = cum[j + 1];
            let frac = if hi > lo { (target - lo) / (hi - lo) } else { 0.0 };
            knots.push((j as f64 + frac) / n as f64);
        }
        knots.push(1.0);
        InverseTable { knots }
    }

    /// Map u in [0, 1) to t.
    fn sample(&self, u: f64) -> f64 {
        let pos = u * KNOTS as f64;
        let i = (pos as usize).min(KNOTS - 1);
        let frac = pos - i as f64;
        self.knots[i] + (self.knots[i + 1] - self.knots[i]) * frac
    }
}

fn quantize(e_over_gap: f64) -> u64 {
    (e_over_gap * 1000.0).round() as u64
}

/// Two-generation bounded cache, shared by every thread. Each table is a
/// pure function of its key, so eviction (and the benign race where two
/// threads build the same key at once) can never change a sampled value;
/// the policy only affects rebuild frequency.
///
/// When the fresh generation fills, it becomes the aging one and the old
/// aging entries drop. The cascade returns to near-threshold energies on
/// every trial, so those keys are re-hit and promoted before they age out,
/// while one-shot high-energy keys wash out after two generations.
struct TableCache {
    fresh: HashMap<u64, Arc<InverseTable>>,
    aging: HashMap<u64, Arc<InverseTable>>,
}

impl TableCache {
    fn new() -> Self {
        TableCache { fresh: HashMap::new(), aging: HashMap::new() }
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.fresh.len() + self.aging.len()
    }

    fn insert_fresh(&mut self, key: u64, table: Arc<InverseTable>) {
        if self.fresh.len() >= CACHE_CAP / 2 {
            self.aging = std::mem::take(&mut self.fresh);
        }
        self.fresh.insert(key, table);
    }
}

static PAIRBREAK_TABLES: OnceLock<RwLock<TableCache>> = OnceLock::new();
static EMISSION_TABLES: OnceLock<RwLock<TableCache>> = OnceLock::new();

fn cached(
    cache: &'static OnceLock<RwLock<TableCache>>,
    key: u64,
    build: impl FnOnce() -> InverseTable,
) -> Arc<InverseTable> {
    let lock = cache.get_or_init(|| RwLock::new(TableCache::new()));
    if let Some(t) = lock.read().unwrap().fresh.get(&key) {
        return Arc::clone(t);
    }
    // promote from the aging generation if present; otherwise rebuild with
    // the lock released, since a build takes far longer than a lookup
    {
        let mut c = lock.write().unwrap();
        if let Some(t) = c.fresh.get(&key) {
            return Arc::clone(t);
        }
        if let Some(t) = c.aging.remove(&key) {
            c.insert_fresh(key, Arc::clone(&t));
            return t;
        }
    }
    let t = Arc::new(build());
    let mut c = lock.write().unwrap();
    if let Some(existing) = c.fresh.get(&key) {
        return Arc::clone(existing);
    }
    c.insert_fresh(key, Arc::clone(&t));
    t
}

/// sin^2(pi t / 2) on the fixed build grid. The grid never changes between
/// table builds, only the energy does, so the transcendentals are paid once.
fn pairbreak_grid() -> &'static [f64] {
    static GRID: OnceLock<Vec<f64>> = OnceLock::new();
    GRID.get_or_init(|| {
        (0..=KNOTS)
            .map(|j| {
                let t = j as f64 / KNOTS as f64;
                (0.5 * PI * t).sin().powi(2)
            })
            .collect()
    })
}

/// Transformed pair-breaking density table.
///
/// With s = 1 + (e-2) sin^2(pi t / 2) in gap units, the edge singularities
/// cancel against the Jacobian and the density collapses to
/// (s (e-s) + 1) / sqrt((s+1)(e-s+1)) up to a constant, smooth and positive.
/// The two quasiparticles are exchangeable, so the density is symmetric
/// about t = 1/2 and only half the grid needs evaluating.
fn pairbreak_table(e: f64) -> InverseTable {
    let grid = pairbreak_grid();
    let half = KNOTS / 2;
    let mut vals = Vec::with_capacity(KNOTS + 1);
    for &phi in &grid[..=half] {
        let s = 1.0 + (e - 2.0) * phi;
        vals.push((s * (e - s) + 1.0) / ((s + 1.0) * (e - s + 1.0)).sqrt());
    }
    for j in (0..half).rev() {
        let v = vals[j];
        vals.push(v);
    }
    InverseTable::build(&vals)
}

/// Split a pair-breaking phonon into two quasiparticle energies.
///
/// Returns `(eps, ep_k - eps)`; the sum is exact by construction. Requires
/// `ep_k > 2 * gap_k`.
pub fn sample_pairbreak_split(
    ep_k: f64,
    gap_k: f64,
    rng: &mut impl Rng,
) -> Result<(f64, f64), SampleError> {
    if !(gap_k > 0.0) || ep_k <= 2.0 * gap_k {
        return Err(SampleError::BelowPairBreaking { ep_k, gap_k });
    }
    let e = ep_k / gap_k;
    let key = quantize(e);
    let e_key = key as f64 / 1000.0;
    let table = cached(&PAIRBREAK_TABLES, key, || pairbreak_table(e_key.max(2.0)));
    let t = table.sample(rng.gen::<f64>());
    // map through the actual energy, not the quantized one, so the result
    // always lies inside [gap, ep - gap]
    let phi = (0.5 * PI * t).sin().powi(2);
    let eps = gap_k * (1.0 + (e - 2.0) * phi);
    Ok((eps, ep_k - eps))
}

/// v^2 on the fixed build grid, for the relaxation tables.
fn emission_grid() -> &'static [f64] {
    static GRID: OnceLock<Vec<f64>> = OnceLock::new();
    GRID.get_or_init(|| {
        (0..=KNOTS)
            .map(|j| {
                let v = j as f64 / KNOTS as f64;
                v * v
            })
            .collect()
    })
}

/// Transformed quasiparticle-relaxation density table.
///
/// With s' = 1 + (e-1) v^2 in gap units the gap-edge singularity cancels:
/// h(v) = (e-s')^2 (1 - 1/(e s')) s' / sqrt(s'+1) up to a constant,
/// rearranged below so each point costs one division and one square root.
fn emission_table(e: f64) -> InverseTable {
    let vals: Vec<f64> = emission_grid()
        .iter()
        .map(|&v2| {
            let sp = 1.0 + (e - 1.0) * v2;
            let excess = e - sp;
            let esp = e * sp;
            excess * excess * (esp - 1.0) * sp / (esp * (sp + 1.0).sqrt())
        })
        .collect();
    InverseTable::build(&vals)
}

/// Relax a quasiparticle by one phonon emission.
///
/// Returns `(eps_final, phonon)` with an exact sum. Requires
/// `eps_k > gap_k`.
pub fn sample_qp_emission(
    eps_k: f64,
    gap_k: f64,
    rng: &mut impl Rng,
) -> Result<(f64, f64), SampleError> {
    if !(gap_k > 0.0) || eps_k <= gap_k {
        return Err(SampleError::AtOrBelowGap { eps_k, gap_k });
    }
    let e = eps_k / gap_k;
    let key = quantize(e);
    let e_key = (key as f64 / 1000.0).max(1.0 + 1e-6);
    let table = cached(&EMISSION_TABLES, key, || emission_table(e_key));
    let v = table.sample(rng.gen::<f64>());
    let sp = 1.0 + (e - 1.0) * v * v;
    let eps_final = gap_k * sp;
    Ok((eps_final, eps_k - eps_final))
}

/// Relax a normal-metal electron by one phonon emission.
///
/// The phonon energy x is drawn from the density proportional to x^2 on
/// [0, ee_k] (the gapless limit of the relaxation integrand), so on average
/// the phonon carries 3/4 of the electron energy. Returns
/// `(electron_final, phonon)`.
pub fn sample_electron_emission(
    ee_k: f64,
    rng: &mut impl Rng,
) -> Result<(f64, f64), SampleError> {
    if !(ee_k > 0.0) {
        return Err(SampleError::NonPositiveElectron(ee_k));
    }
    let x = ee_k * rng.gen::<f64>().cbrt();
    Ok((ee_k - x, x))
}

/// Split a phonon absorbed in a normal metal into two electron energies,
/// uniformly (the gapless limit of the pair-breaking integrand is flat).
pub fn sample_electron_split(ep_k: f64, rng: &mut impl Rng) -> (f64, f64) {
    let x = ep_k * rng.gen::<f64>();
    (x, ep_k - x)
}
