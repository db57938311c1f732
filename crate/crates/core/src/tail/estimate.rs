use rayon::prelude::*;
use serde::Serialize;

use super::count::count_in_host;
use super::host::sample_gnp_stream;
use crate::error::{Error, Result};
use crate::exponents::{check_probability, mu, Objective, SubgraphIndex};
use crate::graph::Graph;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// Environment variable capping the number of worker threads (0 = automatic).
pub const THREADS_ENV: &str = "UPPERTAIL_THREADS";

/// Runs `f` on a pool sized by [`THREADS_ENV`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("{THREADS_ENV} must be a non-negative integer, got {s:?}")))?,
        _ => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Wilson score interval for `hits` successes out of `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let ph = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (ph + z2 / (2.0 * n)) / denom;
    let half = z / denom * (ph * (1.0 - ph) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0).min(ph), (center + half).min(1.0).max(ph))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub x: u64,
    pub hit: bool,
}

/// Monte Carlo estimate of Pr(X ≥ (1+ε)μ).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    pub n: u64,
    pub p: f64,
    pub eps: f64,
    pub trials: u64,
    pub seed: u64,
    pub hit_count: u64,
    pub p_hat: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub mean_x: f64,
    pub var_x: f64,
    /// Standard error of `mean_x`.
    pub se_mean: f64,
    pub mu: f64,
    pub mu_ln: f64,
    /// (1+ε)μ; a trial hits when its integer count reaches the ceiling of this.
    pub threshold: f64,
    pub phi: f64,
    pub phi_ln: f64,
    /// var_X·Φ/μ²; absent when μ = 0.
    pub variance_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<TrialRecord>>,
}

/// Smallest integer count that counts as a hit.
pub fn hit_threshold(mu: f64, eps: f64) -> u64 {
    ((1.0 + eps) * mu).ceil().max(0.0) as u64
}

/// Independent trials on streams 0..trials of `seed`; every output bit is
/// independent of the worker count.
pub fn tail_estimate(h: &Graph, n: u64, p: f64, eps: f64, trials: u64, seed: u64, keep_records: bool) -> Result<TailEstimate> {
    check_probability(p)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("eps must be positive, got {eps}")));
    }
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    let order = usize::try_from(n).map_err(|_| Error::Limit(format!("host order {n} too large")))?;
    if order > super::MAX_HOST_ORDER {
        return Err(Error::Limit(format!("host order {n} exceeds {}", super::MAX_HOST_ORDER)));
    }
    let mu = mu(h, n, p)?;
    let mu_value = mu.value.ok_or_else(|| Error::Limit("expected count is not representable".into()))?;
    let phi = SubgraphIndex::build(h)?.minimize(n, p, Objective::Mu)?;
    let phi_value = phi.value_ln.exp();
    let need = hit_threshold(mu_value, eps);

    // fail fast on the guard before spawning trials
    count_in_host(&sample_gnp_stream(order, p, seed, 0)?, h)?;

    let counts: Vec<u64> = with_pool(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| count_in_host(&sample_gnp_stream(order, p, seed, t)?, h))
            .collect::<Result<Vec<u64>>>()
    })??;

    let hit_count = counts.iter().filter(|&&x| x >= need).count() as u64;
    let k = trials as f64;
    let mean = counts.iter().map(|&x| x as f64).sum::<f64>() / k;
    let var = if trials > 1 {
        counts.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let (lo, hi) = wilson_interval(hit_count, trials, Z95);
    let records = keep_records.then(|| {
        counts
            .iter()
            .enumerate()
            .map(|(t, &x)| TrialRecord { trial: t as u64, x, hit: x >= need })
            .collect()
    });
    Ok(TailEstimate {
        n,
        p,
        eps,
        trials,
        seed,
        hit_count,
        p_hat: hit_count as f64 / k,
        ci_lower: lo,
        ci_upper: hi,
        mean_x: mean,
        var_x: var,
        se_mean: (var / k).sqrt(),
        mu: mu_value,
        mu_ln: mu.ln,
        threshold: (1.0 + eps) * mu_value,
        phi: phi_value,
        phi_ln: phi.value_ln,
        variance_ratio: (mu_value > 0.0).then(|| var * phi_value / (mu_value * mu_value)),
        records,
    })
}
