//! C interface to the `uppertail` library.
//!
//! Graphs live behind the opaque [`UtGraph`] handle. Every fallible call
//! returns a [`UtStatus`]; on failure the message is available from
//! [`ut_last_error`] on the same thread until the next failing call.
//! Strings handed out by the library are released with [`ut_string_free`].
//! Vertex labels are 1-based, as in the edge-list format.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use uppertail::exponents::{self, fractional_independence, m_density};
use uppertail::graph::{automorphism_count, count_copies, graph_from_edge_list};
use uppertail::primal::{counterexample_check, primal_family};
use uppertail::report::{analyze, EvalPoint};
use uppertail::{families, Error, Graph};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UtStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidInput = 3,
    Limit = 4,
    Infeasible = 5,
    SearchVolume = 6,
    Internal = 7,
    Panic = 8,
}

/// An undirected simple graph.
pub struct UtGraph {
    inner: Graph,
}

/// A rational number in lowest terms with a positive denominator.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UtRational {
    pub num: i64,
    pub den: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> UtStatus {
    match e {
        Error::Parse { .. } => UtStatus::Parse,
        Error::TooManyVertices(_) | Error::InvalidInput(_) => UtStatus::InvalidInput,
        Error::Limit(_) => UtStatus::Limit,
        Error::Infeasible(_) => UtStatus::Infeasible,
        Error::SearchVolume { .. } => UtStatus::SearchVolume,
        Error::Internal(_) => UtStatus::Internal,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UtStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            UtStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            UtStatus::Panic
        }
    }
}

unsafe fn graph<'a>(g: *const UtGraph, what: &'static str) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

fn rational(r: uppertail::rational::Rational) -> UtRational {
    UtRational { num: *r.numer(), den: *r.denom() }
}

fn hand_out(g: Graph, dst: *mut *mut UtGraph) -> Result<(), Failure> {
    let slot = unsafe { out(dst, "out")? };
    *slot = Box::into_raw(Box::new(UtGraph { inner: g }));
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ut_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph on vertices 1..=order from `edge_count` label pairs stored
/// flat in `pairs` (2·edge_count entries).
///
/// # Safety
/// `pairs` must point to 2·edge_count readable values (or may be null when
/// edge_count is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_from_edges(
    order: usize,
    pairs: *const u32,
    edge_count: usize,
    out: *mut *mut UtGraph,
) -> UtStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if pairs.is_null() {
            return Err(Failure::Null("pairs"));
        } else {
            std::slice::from_raw_parts(pairs, 2 * edge_count)
        };
        let mut edges = Vec::with_capacity(edge_count);
        for e in flat.chunks_exact(2) {
            let (a, b) = (e[0] as usize, e[1] as usize);
            if a == 0 || b == 0 || a > order || b > order {
                return Err(Error::InvalidInput(format!("edge {a}-{b} is outside 1..={order}")).into());
            }
            edges.push((a - 1, b - 1));
        }
        hand_out(Graph::from_edges(order, &edges)?, out)
    })
}

/// Parses the edge-list text format ("u v" per line, `#` comments).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_parse(text: *const c_char, out: *mut *mut UtGraph) -> UtStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Error::InvalidInput("edge list is not UTF-8".into()))?;
        hand_out(graph_from_edge_list(text)?, out)
    })
}

/// Built-in graph families.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UtFamily {
    /// K_a.
    Complete = 0,
    /// C_a.
    Cycle = 1,
    /// C_a with b pendant edges at one vertex.
    CyclePendant = 2,
    Snail = 3,
    /// H_a.
    Badnews = 4,
    Fig2 = 5,
}

/// Builds a member of a family; `a` and `b` are ignored where unused.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_family(family: UtFamily, a: usize, b: usize, out: *mut *mut UtGraph) -> UtStatus {
    guard(|| {
        let g = match family {
            UtFamily::Complete => families::complete(a)?,
            UtFamily::Cycle => families::cycle(a)?,
            UtFamily::CyclePendant => families::cycle_pendant(a, b)?,
            UtFamily::Snail => families::snail(),
            UtFamily::Badnews => families::badnews(a)?,
            UtFamily::Fig2 => families::fig2_example(),
        };
        hand_out(g, out)
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_free(g: *mut UtGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_order(g: *const UtGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.order())
}

/// Number of edges, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_edge_count(g: *const UtGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Size of the automorphism group; `Limit` when it exceeds 64 bits.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_automorphisms(g: *const UtGraph, out: *mut u64) -> UtStatus {
    guard(|| {
        let aut = automorphism_count(graph(g, "g")?);
        *self::out(out, "out")? =
            u64::try_from(aut).map_err(|_| Error::Limit(format!("{aut} automorphisms do not fit in 64 bits")))?;
        Ok(())
    })
}

/// Number of unlabeled copies of `pattern` in `host`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_count_copies(pattern: *const UtGraph, host: *const UtGraph, out: *mut u64) -> UtStatus {
    guard(|| {
        let (pattern, host) = (graph(pattern, "pattern")?, graph(host, "host")?);
        *self::out(out, "out")? = count_copies(host, pattern);
        Ok(())
    })
}

/// m(H), the largest e_G / v_G over subgraphs.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_m(g: *const UtGraph, out: *mut UtRational) -> UtStatus {
    guard(|| {
        *self::out(out, "out")? = rational(m_density(graph(g, "g")?).density.value());
        Ok(())
    })
}

/// Fractional independence number α*.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_alpha_star(g: *const UtGraph, out: *mut UtRational) -> UtStatus {
    guard(|| {
        *self::out(out, "out")? = rational(fractional_independence(graph(g, "g")?));
        Ok(())
    })
}

/// ζ of the primal family. `defined` is set to false, and `out` left alone,
/// when no primal subgraph has a cover.
///
/// # Safety
/// `g` must be a live handle; `out` and `defined` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_zeta(g: *const UtGraph, out: *mut UtRational, defined: *mut bool) -> UtStatus {
    guard(|| {
        let h = graph(g, "g")?;
        let (out, defined) = (self::out(out, "out")?, self::out(defined, "defined")?);
        let family = primal_family(h)?;
        match family.zeta() {
            Some(z) => {
                *out = rational(z.zeta);
                *defined = true;
            }
            None => *defined = false,
        }
        Ok(())
    })
}

/// Whether some primal subgraph and covers beat the smallest primal size.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_graph_is_counterexample(g: *const UtGraph, out: *mut bool) -> UtStatus {
    guard(|| {
        *self::out(out, "out")? = counterexample_check(graph(g, "g")?)?.is_counterexample;
        Ok(())
    })
}

/// ln of the expected number of copies in G(n, p).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_mu_ln(g: *const UtGraph, n: u64, p: f64, out: *mut f64) -> UtStatus {
    guard(|| {
        *self::out(out, "out")? = exponents::mu(graph(g, "g")?, n, p)?.ln;
        Ok(())
    })
}

/// ln Φ(n, p): the smallest expected count over subgraphs with an edge.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_phi_ln(g: *const UtGraph, n: u64, p: f64, out: *mut f64) -> UtStatus {
    guard(|| {
        *self::out(out, "out")? = exponents::phi(graph(g, "g")?, n, p)?.value_ln;
        Ok(())
    })
}

/// Full analysis as a JSON document, with exponent terms at (n, p, eps)
/// when `n` is positive. Free the result with [`ut_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ut_analyze_json(g: *const UtGraph, n: u64, p: f64, eps: f64, out: *mut *mut c_char) -> UtStatus {
    guard(|| {
        let h = graph(g, "g")?;
        let slot = self::out(out, "out")?;
        let points = if n > 0 { vec![EvalPoint { n, p, eps }] } else { Vec::new() };
        let report = analyze(h, &points, false)?;
        let text = serde_json::to_string_pretty(&report).map_err(|e| Error::Internal(format!("json: {e}")))?;
        *slot = CString::new(text).map_err(|e| Error::Internal(e.to_string()))?.into_raw();
        Ok(())
    })
}
