//! Instantaneous SINRs of the two-slot exchange for one channel realization.

use crate::model::{ChannelSample, PairRoles, SystemConfig};

/// The five SINRs seen while delivering `x_l` and `x_t` from one group to the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrSet {
    /// Relay decoding `x_l`, treating `x_t` and the other group as interference.
    pub relay_strong: f64,
    /// Relay decoding `x_t` after cancelling `x_l`.
    pub relay_weak: f64,
    /// `D_k` decoding `x_t` first.
    pub user_cross: f64,
    /// `D_k` decoding `x_l` after cancelling `x_t`.
    pub user_own: f64,
    /// `D_r` decoding `x_t` over `|h_r|²`.
    pub far_user: f64,
}

pub fn compute_sinrs(config: &SystemConfig, roles: PairRoles, sample: &ChannelSample) -> SinrSet {
    let rho = config.rho();
    let eps = config.sic.epsilon();
    let (w1, w2) = (config.varpi1, config.varpi2);
    let i = |u: usize| u - 1;
    let (l, t, k, r) = (i(roles.l), i(roles.t), i(roles.k), i(roles.r));
    let (a, b) = (&config.a, &config.b);
    let h = &sample.gains;
    let g = sample.residual;

    let cross_group = rho * w1 * (h[k] * a[k] + h[r] * a[r]);
    let relay_strong = rho * h[l] * a[l] / (rho * h[t] * a[t] + cross_group + 1.0);
    let relay_weak = rho * h[t] * a[t] / (eps * rho * g + cross_group + 1.0);

    let user_cross = rho * h[k] * b[t] / (rho * h[k] * b[l] + rho * w2 * h[k] + 1.0);
    let user_own = rho * h[k] * b[l] / (eps * rho * g + rho * w2 * h[k] + 1.0);
    let far_user = rho * h[r] * b[t] / (rho * h[r] * b[l] + rho * w2 * h[r] + 1.0);

    SinrSet {
        relay_strong,
        relay_weak,
        user_cross,
        user_own,
        far_user,
    }
}
