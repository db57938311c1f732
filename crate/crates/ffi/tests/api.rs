use std::ffi::{CStr, CString};
use std::ptr;

use uppertail_ffi::*;

fn family(f: UtFamily, a: usize, b: usize) -> *mut UtGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ut_graph_family(f, a, b, &mut g) }, UtStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ut_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn edge_list_round_trip() {
    let pairs: [u32; 6] = [1, 2, 2, 3, 1, 3];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(ut_graph_from_edges(3, pairs.as_ptr(), 3, &mut g), UtStatus::Ok);
        assert_eq!((ut_graph_order(g), ut_graph_edge_count(g)), (3, 3));
        let mut aut = 0u64;
        assert_eq!(ut_graph_automorphisms(g, &mut aut), UtStatus::Ok);
        assert_eq!(aut, 6);
        let mut m = UtRational::default();
        assert_eq!(ut_graph_m(g, &mut m), UtStatus::Ok);
        assert_eq!(m, UtRational { num: 1, den: 1 });
        let mut a = UtRational::default();
        assert_eq!(ut_graph_alpha_star(g, &mut a), UtStatus::Ok);
        assert_eq!(a, UtRational { num: 3, den: 2 });
        ut_graph_free(g);
    }
}

#[test]
fn parse_and_count() {
    let text = CString::new("1 2\n2 3\n3 1\n3 4\n3 5\n").unwrap();
    let mut host = ptr::null_mut();
    unsafe {
        assert_eq!(ut_graph_parse(text.as_ptr(), &mut host), UtStatus::Ok);
        let tri = family(UtFamily::Cycle, 3, 0);
        let mut n = 0u64;
        assert_eq!(ut_count_copies(tri, host, &mut n), UtStatus::Ok);
        assert_eq!(n, 1);
        let k5 = family(UtFamily::Complete, 5, 0);
        assert_eq!(ut_count_copies(host, k5, &mut n), UtStatus::Ok);
        assert_eq!(n, 30);
        for g in [host, tri, k5] {
            ut_graph_free(g);
        }
    }
}

#[test]
fn snail_is_a_counterexample_with_zeta_seven_thirds() {
    let g = family(UtFamily::Snail, 0, 0);
    unsafe {
        let mut z = UtRational::default();
        let mut defined = false;
        assert_eq!(ut_graph_zeta(g, &mut z, &mut defined), UtStatus::Ok);
        assert!(defined);
        assert_eq!(z, UtRational { num: 7, den: 3 });
        let mut is = false;
        assert_eq!(ut_graph_is_counterexample(g, &mut is), UtStatus::Ok);
        assert!(is);
        ut_graph_free(g);
    }
}

#[test]
fn exponent_logs() {
    let g = family(UtFamily::Cycle, 3, 0);
    unsafe {
        let (mut mu, mut phi) = (0.0, 0.0);
        assert_eq!(ut_mu_ln(g, 100, 0.1, &mut mu), UtStatus::Ok);
        assert!((mu - 161.7f64.ln()).abs() < 1e-12);
        assert_eq!(ut_phi_ln(g, 100, 0.1, &mut phi), UtStatus::Ok);
        assert!(phi <= mu + 1e-12);
        assert_eq!(ut_mu_ln(g, 100, 1.5, &mut mu), UtStatus::InvalidInput);
        assert!(last_error().contains("probability"));
        ut_graph_free(g);
    }
}

#[test]
fn analysis_json_is_valid() {
    let g = family(UtFamily::Fig2, 0, 0);
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(ut_analyze_json(g, 1000, 0.01, 1.0, &mut text), UtStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["graph"]["order"], 10);
        assert_eq!(doc["exponents"].as_array().unwrap().len(), 1);
        ut_string_free(text);
        ut_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad: [u32; 2] = [1, 4];
        assert_eq!(ut_graph_from_edges(3, bad.as_ptr(), 1, &mut g), UtStatus::InvalidInput);
        assert!(g.is_null());
        assert!(last_error().contains("outside"));
        assert_eq!(ut_graph_from_edges(3, ptr::null(), 2, &mut g), UtStatus::NullPointer);
        let text = CString::new("1 x\n").unwrap();
        assert_eq!(ut_graph_parse(text.as_ptr(), &mut g), UtStatus::Parse);
        assert_eq!(ut_graph_family(UtFamily::Complete, 40, 0, &mut g), UtStatus::InvalidInput);
        let mut n = 0u64;
        assert_eq!(ut_graph_automorphisms(ptr::null(), &mut n), UtStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(ut_graph_order(ptr::null()), 0);
        ut_graph_free(ptr::null_mut());
        ut_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/uppertail.h")).unwrap();
    for name in [
        "ut_last_error",
        "ut_string_free",
        "ut_graph_from_edges",
        "ut_graph_parse",
        "ut_graph_family",
        "ut_graph_free",
        "ut_graph_order",
        "ut_graph_edge_count",
        "ut_graph_automorphisms",
        "ut_count_copies",
        "ut_graph_m",
        "ut_graph_alpha_star",
        "ut_graph_zeta",
        "ut_graph_is_counterexample",
        "ut_mu_ln",
        "ut_phi_ln",
        "ut_analyze_json",
        "typedef struct UtGraph UtGraph",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/uppertail.h");
    let Ok(status) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99", header]).status()
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    assert!(status.success());
}
