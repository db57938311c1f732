//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use rayon::prelude::*;
use uppertail::exponents::{fractional_independence, m_density, m_parameter, phi, ExponentContext};
use uppertail::families::{badnews, cycle, cycle_pendant, edge, fig2_example, glue, snail, triangle, GlueSpec};
use uppertail::primal::{claim_suite, counterexample_check, grading, primal_family, zeta};
use uppertail::tail::{execute_pendant, plan_mixed, plan_pendant, tail_estimate};
use uppertail::{Graph, VertexSet};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    ensure!(took <= limit, "took {took:.2?}, limit {limit:?}");
    Ok(())
}

fn labels(sets: &[VertexSet]) -> Vec<String> {
    sets.iter().map(|s| s.label_string()).collect()
}

fn snail_fixtures() -> Check {
    let start = Instant::now();
    let h = snail();
    let fam = primal_family(&h).map_err(|e| e.to_string())?;
    let mut got = labels(&fam.members);
    got.sort();
    let mut want: Vec<String> = ["123", "1234", "1237", "12345", "12346", "12347", "123456", "123457", "123467", "1234567"]
        .map(String::from)
        .to_vec();
    want.sort();
    ensure!(got == want, "primal family {got:?}");
    let z = zeta(&h).map_err(|e| e.to_string())?;
    ensure!(z.zeta == q(7, 3), "ζ = {}", z.zeta);
    ensure!(z.witness_g == set("1234"), "witness {}", z.witness_g.label_string());
    ensure!(labels(&z.witness_covers) == ["12345", "12346", "12347"], "covers {:?}", labels(&z.witness_covers));
    ensure!(z.value_at(set("123")) == Some(q(5, 2)), "ζ(123)");
    ensure!(z.value_at(set("12347")) == Some(q(7, 2)), "ζ(12347)");
    let chain = grading(&h).map_err(|e| e.to_string())?;
    ensure!(labels(&chain) == ["123", "12347", "1234567"], "grading {:?}", labels(&chain));
    within(Duration::from_secs(1), start)
}

fn family_constants() -> Check {
    let start = Instant::now();
    for l in 3..=6usize {
        for r in 1..=3usize {
            let h = cycle_pendant(l, r).unwrap();
            ensure!(h.order() == l + r && h.edge_count() == l + r, "C_{l}^+{r} size");
            ensure!(m_density(&h).density.value() == q(1, 1), "C_{l}^+{r} m");
            ensure!(primal_family(&h).unwrap().min_vertex_count == l, "C_{l}^+{r} v0");
            ensure!(zeta(&h).unwrap().zeta == q((l + r) as i64, r as i64), "C_{l}^+{r} ζ");
            ensure!(counterexample_check(&h).unwrap().is_counterexample == (r >= 2), "C_{l}^+{r} verdict");
        }
    }
    let h = badnews(7).unwrap();
    ensure!(h.order() == 27 && h.edge_count() == 36, "H_7 size");
    ensure!(m_density(&h).density.value() == q(4, 3), "H_7 m");
    let fam = primal_family(&h).unwrap();
    ensure!(fam.min_vertex_count == 6, "H_7 v0 = {}", fam.min_vertex_count);
    ensure!(zeta(&h).unwrap().zeta == q(27, 7), "H_7 ζ");
    for s in &fam.members {
        let sub = h.induced_subgraph(*s).unwrap();
        ensure!(fractional_independence(&sub) == q(s.len() as i64, 2), "α* of {}", s.label_string());
    }
    let f = fig2_example();
    ensure!(q(f.edge_count() as i64, f.order() as i64) == q(19, 10), "fig2 e/v");
    ensure!(m_density(&f).density.value() == q(2, 1), "fig2 m");
    ensure!(counterexample_check(&f).unwrap().is_counterexample, "fig2 verdict");
    within(Duration::from_secs(300), start)
}

fn oracle_equivalences() -> Check {
    let mut alpha_hosts: Vec<Graph> = (1..=6).flat_map(all_connected).collect();
    alpha_hosts.extend([cycle(5).unwrap(), cycle(7).unwrap()]);
    let pet = petersen();
    alpha_hosts.extend((1u32..1 << 10).step_by(7).map(|m| pet.induced_subgraph(VertexSet::from_mask(m)).unwrap()));
    for g in &alpha_hosts {
        ensure!(fractional_independence(g) == alpha_brute(g), "α* of {:?}", g.edges());
    }
    let mut fams = vec![edge(), triangle(), cycle(4).unwrap(), snail()];
    for l in 3..=6 {
        for r in 1..=3 {
            fams.push(cycle_pendant(l, r).unwrap());
        }
    }
    let points = [(100u64, 0.1), (1000, 0.004), (10_000, 0.3), (1_000_000, 1e-5), (1_000_000_000, 3e-8)];
    for h in fams.iter().filter(|h| h.edge_count() <= 12) {
        let subs = edge_subgraphs(h);
        for &(n, p) in &points {
            let a = phi(h, n, p).unwrap().value_ln;
            let b = phi_brute(&subs, n, p);
            ensure!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "Φ of {:?} at ({n}, {p})", h.edges());
            let a = m_parameter(h, n, p).unwrap().ln;
            let b = m_brute(h, &subs, n, p);
            ensure!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "M of {:?} at ({n}, {p})", h.edges());
        }
    }
    let mut zeta_hosts = vec![snail(), fig2_example()];
    for l in 3..=6 {
        for r in 1..=3 {
            zeta_hosts.push(cycle_pendant(l, r).unwrap());
        }
    }
    for h in &zeta_hosts {
        ensure!(zeta(h).ok().map(|z| z.zeta) == zeta_brute(h), "ζ of {:?}", h.edges());
    }
    Ok(())
}

fn k5_apex() -> Graph {
    let mut e: Vec<(usize, usize)> = (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
    e.extend([(1, 6), (2, 6)]);
    graph(6, &e)
}

fn claim_suites() -> Check {
    let mut hosts = vec![snail(), fig2_example(), edge(), triangle(), badnews(2).unwrap(), badnews(7).unwrap()];
    for l in 3..=6 {
        for r in 1..=4 {
            hosts.push(cycle_pendant(l, r).unwrap());
        }
    }
    for r in [1, 2, 3, 6] {
        hosts.push(glue(&GlueSpec::new(k5_apex(), set("12345"), r).unwrap()).unwrap());
    }
    hosts.extend(random_connected(100, 9, 2024));
    for h in &hosts {
        let report = claim_suite(h).map_err(|e| e.to_string())?;
        ensure!(report.passed, "claims fail on {:?}: {report:?}", h.edges());
    }
    Ok(())
}

fn glue_postconditions() -> Check {
    for r in [1usize, 2, 3, 6] {
        let k = glue(&GlueSpec::new(k5_apex(), set("12345"), r).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(m_density(&k).density.value() == q(2, 1), "r = {r}: m");
        ensure!(q(k.edge_count() as i64, k.order() as i64) == q(2, 1), "r = {r}: density");
        ensure!(primal_family(&k).unwrap().min_vertex_count == 5, "r = {r}: v0");
        let verdict = counterexample_check(&k).unwrap().is_counterexample;
        ensure!(verdict == (q(5 + r as i64, r as i64) < q(5, 1)), "r = {r}: verdict {verdict}");
    }
    Ok(())
}

fn monte_carlo_sanity() -> Check {
    let start = Instant::now();
    for (name, h) in [("triangle", triangle()), ("C3+2", cycle_pendant(3, 2).unwrap())] {
        let est = tail_estimate(&h, 60, 0.1, 1.0, 2000, 20_260_101, false).map_err(|e| e.to_string())?;
        let z = (est.mean_x - est.mu).abs() / est.se_mean;
        ensure!(z <= 4.0, "{name}: |mean − μ|/SE = {z:.2}");
        let ratio = est.variance_ratio.unwrap_or(f64::NAN);
        ensure!((0.125..=8.0).contains(&ratio), "{name}: variance ratio {ratio:.3}");
    }
    within(Duration::from_secs(120), start)
}

fn pendant_certificate() -> Check {
    let start = Instant::now();
    let plan = plan_pendant(3, 2, 300, 8.0 / 300.0, 1.0).map_err(|e| e.to_string())?;
    let outcomes: Vec<_> = (0..50u64).into_par_iter().map(|s| execute_pendant(&plan, s)).collect();
    let mut found = 0;
    for o in outcomes {
        let o = o.map_err(|e| e.to_string())?;
        if o.cycle_found {
            found += 1;
            ensure!(o.planted, "seed {}: cycle found but nothing planted", o.seed);
        }
        if o.planted {
            ensure!(o.hit && o.x >= o.threshold, "seed {}: X = {} < {}", o.seed, o.x, o.threshold);
        }
    }
    ensure!(found >= 45, "cycle found in {found}/50 seeds");
    within(Duration::from_secs(120), start)
}

fn window_orderings() -> Check {
    let start = Instant::now();
    let n = 1_000_000_000u64;
    let lnln = (n as f64).ln().ln();
    let mut failures = Vec::new();

    // (a) pendant plan below min{Φ, M log(1/p)} for 1 < np < (log n)^{r/(ℓ+r)}
    let (l, r) = (3usize, 2usize);
    let c_h = r as f64 / (l + r) as f64;
    let ctx = ExponentContext::new(&cycle_pendant(l, r).unwrap()).map_err(|e| e.to_string())?;
    for i in 1..=8 {
        let np = (c_h * lnln * i as f64 / 9.0).exp();
        let p = np / n as f64;
        let rep = ctx.report(n, p, 1.0).map_err(|e| e.to_string())?;
        let cost = plan_pendant(l, r, n, p, 1.0).map_err(|e| e.to_string())?.cost_exponent_ln();
        let bound = rep.phi_ln.min(rep.m_log_term_ln);
        if cost >= bound {
            failures.push(format!("(a) np = {np:.3}: ln cost {cost:.3} ≥ ln min {bound:.3}"));
        }
    }

    // (b) mixed plan below all three terms across the H_7 window, and the minimum tracks ω^{27/7}·log ω
    let ctx = ExponentContext::new(&badnews(7).unwrap()).map_err(|e| e.to_string())?;
    let probe = plan_mixed(7, n, 1e-7, 1.0).map_err(|e| e.to_string())?;
    let uppertail::tail::PlanDetail::Mixed(d) = &probe.detail else { unreachable!() };
    let (lo, hi) = (d.c_h, d.d_h);
    for i in 1..=8 {
        let x = lo + (hi - lo) * i as f64 / 9.0;
        let omega_ln = x * lnln;
        let p = (0.75 * (omega_ln - (n as f64).ln())).exp();
        let rep = ctx.report(n, p, 1.0).map_err(|e| e.to_string())?;
        let cost = plan_mixed(7, n, p, 1.0).map_err(|e| e.to_string())?.cost_exponent_ln();
        let min = rep.phi_ln.min(rep.m_log_term_ln).min(rep.zeta_term_ln.unwrap_or(f64::INFINITY));
        if cost >= min {
            failures.push(format!("(b) ω = (log n)^{x:.4}: ln cost {cost:.3} ≥ ln min {min:.3}"));
        }
        let scale = 27.0 / 7.0 * omega_ln + omega_ln.ln();
        if (min - scale).abs() > 16f64.ln() {
            failures.push(format!("(b) ω = (log n)^{x:.4}: min term off ω^(27/7)·log ω by e^{:.3}", min - scale));
        }
    }
    if let Err(e) = within(Duration::from_secs(1), start) {
        failures.push(e);
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn run_cli(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_uppertail"))
        .args(args)
        .env("UPPERTAIL_THREADS", threads)
        .output()
        .expect("spawn uppertail");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Check {
    let commands: [&[&str]; 4] = [
        &["simulate", "--family", "cycle-pendant", "--l", "3", "--r", "2", "--n", "60", "--p", "0.1", "--trials", "400", "--seed", "7", "--records"],
        &["plant", "--kind", "pendant", "--family", "cycle-pendant", "--l", "3", "--r", "2", "--n", "200", "--np", "6", "--seeds", "4", "--seed", "3"],
        &["plant", "--kind", "general", "--family", "snail", "--n", "300", "--np", "2", "--seeds", "2", "--seed", "1"],
        &["sweep", "--family", "snail", "--n", "1e9", "--np-grid", "1.5:1000:6"],
    ];
    for args in commands {
        let base = run_cli(args, "1");
        for threads in ["1", "2", "4"] {
            ensure!(run_cli(args, threads) == base, "{} differs with UPPERTAIL_THREADS={threads}", args[0]);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("snail fixtures", snail_fixtures),
        ("family constants", family_constants),
        ("oracle equivalences", oracle_equivalences),
        ("claim suite", claim_suites),
        ("glue postconditions", glue_postconditions),
        ("Monte Carlo sanity", monte_carlo_sanity),
        ("pendant-plant certificate", pendant_certificate),
        ("window orderings", window_orderings),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
