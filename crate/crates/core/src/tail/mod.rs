//! Sampling G(n, p), exact counting in sampled hosts, Monte Carlo tail
//! estimates, and planted lower-bound constructions.

mod count;
mod estimate;
mod execute;
mod host;
mod plan;

pub use count::{count_in_host, count_in_host_with_limit, DEFAULT_VOLUME_LIMIT, MAX_PATTERN_ORDER};
pub use estimate::{hit_threshold, tail_estimate, wilson_interval, with_pool, TailEstimate, TrialRecord, THREADS_ENV, Z95};
pub use execute::{execute_general, execute_pendant, GeneralOutcome, PendantOutcome};
pub use host::{sample_gnp, sample_gnp_stream, stream_rng, unit, SparseHost, MAX_HOST_ORDER};
pub use plan::{
    binomial_big, plan_general, plan_mixed, plan_pendant, split_half, split_sizes, GeneralConstants, GeneralDetail,
    MixedDetail, PendantDetail, PlanDetail, PlantPlan,
};
