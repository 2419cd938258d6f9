//! Seeded Monte Carlo estimation of outage probabilities and ergodic rates.
//!
//! Each trial draws two independent channel realizations, one per slot: the
//! relay-side events use the first, the user-side events the second. Outage
//! is counted directly from the complementary SINR events, never from the
//! closed forms.
//!
//! Trials are split into fixed-size chunks and chunk `c` consumes random
//! stream `c` of the seed, so estimates do not depend on the number of worker
//! threads. Chunk results are merged as integer counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::SignalKind;
use crate::error::{Error, Result};
use crate::model::{sample_channels, PairRoles, RandomStream, SicMode, SystemConfig};
use crate::sinr::{compute_sinrs, SinrSet};

pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const MIN_TRIALS: u64 = 1_000;
pub const CHUNK_TRIALS: u64 = 1 << 15;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageEstimate {
    pub p_hat: f64,
    pub outages: u64,
    pub trials: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub signal: SignalKind,
    pub mode: SicMode,
    pub roles: PairRoles,
}

impl OutageEstimate {
    /// Binomial standard error at probability `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let p = k as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let centre = (p + z2 / (2.0 * n_f)) / denom;
    let half = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    let lo = if k == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (centre + half).min(1.0) };
    (lo.min(p), hi.max(p))
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::config(format!(
            "Monte Carlo needs at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    Ok(())
}

fn chunk_len(chunk: u64, trials: u64) -> u64 {
    CHUNK_TRIALS.min(trials - chunk * CHUNK_TRIALS)
}

/// Runs `per_trial` on (relay-slot, user-slot) SINRs for every trial and
/// returns per-chunk results in chunk order.
fn run_chunks<T, F>(config: &SystemConfig, roles: PairRoles, trials: u64, seed: u64, per_chunk: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut dyn FnMut() -> (SinrSet, SinrSet), u64) -> T + Sync,
{
    let n_chunks = trials.div_ceil(CHUNK_TRIALS);
    (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut stream = RandomStream::new(seed, chunk);
            let mut draw = || {
                let up = sample_channels(&mut stream, config);
                let down = sample_channels(&mut stream, config);
                (compute_sinrs(config, roles, &up), compute_sinrs(config, roles, &down))
            };
            per_chunk(&mut draw, chunk_len(chunk, trials))
        })
        .collect()
}

fn estimate<E>(
    config: &SystemConfig,
    roles: PairRoles,
    trials: u64,
    seed: u64,
    signal: SignalKind,
    success: E,
) -> Result<OutageEstimate>
where
    E: Fn(&SinrSet, &SinrSet) -> bool + Sync,
{
    config.validate()?;
    roles.validate()?;
    check_trials(trials)?;
    let outages: u64 = run_chunks(config, roles, trials, seed, |draw, n| {
        (0..n)
            .filter(|_| {
                let (up, down) = draw();
                !success(&up, &down)
            })
            .count() as u64
    })
    .into_iter()
    .sum();
    let (ci_low, ci_high) = wilson_interval(outages, trials, Z_95);
    Ok(OutageEstimate {
        p_hat: outages as f64 / trials as f64,
        outages,
        trials,
        ci_low,
        ci_high,
        seed,
        signal,
        mode: config.sic,
        roles,
    })
}

/// Outage of `x_l`: the relay decodes `x_l`, then `D_k` decodes `x_t` and `x_l`.
pub fn mc_outage_xl(config: &SystemConfig, roles: PairRoles, trials: u64, seed: u64) -> Result<OutageEstimate> {
    let g = config.gamma_th();
    let (g_l, g_t) = (g[roles.l - 1], g[roles.t - 1]);
    estimate(config, roles, trials, seed, SignalKind::Strong, |up, down| {
        up.relay_strong > g_l && down.user_cross > g_t && down.user_own > g_l
    })
}

/// Outage of `x_t`: the relay decodes `x_l` then `x_t`, and both `D_k` and
/// `D_r` decode `x_t`.
pub fn mc_outage_xt(config: &SystemConfig, roles: PairRoles, trials: u64, seed: u64) -> Result<OutageEstimate> {
    let g = config.gamma_th();
    let (g_l, g_t) = (g[roles.l - 1], g[roles.t - 1]);
    estimate(config, roles, trials, seed, SignalKind::Weak, |up, down| {
        up.relay_weak > g_t && up.relay_strong > g_l && down.user_cross > g_t && down.far_user > g_t
    })
}

pub fn mc_outage(
    config: &SystemConfig,
    roles: PairRoles,
    signal: SignalKind,
    trials: u64,
    seed: u64,
) -> Result<OutageEstimate> {
    match signal {
        SignalKind::Strong => mc_outage_xl(config, roles, trials, seed),
        SignalKind::Weak => mc_outage_xt(config, roles, trials, seed),
    }
}

/// Mean achievable rates in BPCU.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErgodicRates {
    pub x_l: f64,
    pub x_t: f64,
    pub trials: u64,
    pub seed: u64,
}

/// `E[½·log₂(1 + γ)]` per signal, where `γ` is the weakest SINR along the
/// signal's decode-and-forward path. The factor ½ accounts for the two slots.
pub fn mc_ergodic_rates(config: &SystemConfig, roles: PairRoles, trials: u64, seed: u64) -> Result<ErgodicRates> {
    config.validate()?;
    roles.validate()?;
    check_trials(trials)?;
    let rate = |sinr: f64| 0.5 * sinr.ln_1p() / std::f64::consts::LN_2;
    let sums = run_chunks(config, roles, trials, seed, |draw, n| {
        let (mut sl, mut st) = (0.0, 0.0);
        for _ in 0..n {
            let (up, down) = draw();
            sl += rate(up.relay_strong.min(down.user_own));
            st += rate(up.relay_weak.min(down.user_cross).min(down.far_user));
        }
        (sl, st)
    });
    let (sl, st) = sums.iter().fold((0.0, 0.0), |acc, s| (acc.0 + s.0, acc.1 + s.1));
    Ok(ErgodicRates {
        x_l: sl / trials as f64,
        x_t: st / trials as f64,
        trials,
        seed,
    })
}
