use crate::error::{Error, Result};
use crate::graph::{count_copies_limited, Graph, Host, SearchLimits, SearchPlan};

/// Largest pattern order accepted by [`count_in_host`].
pub const MAX_PATTERN_ORDER: usize = 10;

/// Default bound on the estimated number of search leaves.
pub const DEFAULT_VOLUME_LIMIT: f64 = 1e11;

/// Exact number of copies of `pattern` in `host`, guarded by [`DEFAULT_VOLUME_LIMIT`].
pub fn count_in_host<H: Host>(host: &H, pattern: &Graph) -> Result<u64> {
    count_in_host_with_limit(host, pattern, DEFAULT_VOLUME_LIMIT)
}

/// As [`count_in_host`] with an explicit volume guard. The guard compares the
/// anchor-forest bound of the search plan against `limit` before searching.
pub fn count_in_host_with_limit<H: Host>(host: &H, pattern: &Graph, limit: f64) -> Result<u64> {
    if pattern.order() > MAX_PATTERN_ORDER {
        return Err(Error::Limit(format!(
            "pattern order {} exceeds the counting cap of {MAX_PATTERN_ORDER}",
            pattern.order()
        )));
    }
    if pattern.order() > host.order() {
        return Ok(0);
    }
    let volume = SearchPlan::new(pattern).tree_volume(host).0;
    if volume > limit {
        return Err(Error::SearchVolume { estimate: volume, limit });
    }
    count_copies_limited(host, pattern, SearchLimits::default())
}
