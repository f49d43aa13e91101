//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always print; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hyperconv::harness::{anchors, enumerate_spaces, grid_instances, run_laws, Grid, Report, ScopeConfig, Status};
use hyperconv::hyperconv::{cover_numbers, hyper_topology};
use hyperconv::hyperfamily::{standard_alphas, HyperFilter, IsotoneFamily};
use hyperconv::space::{FiniteSpace, PointSet};
use hyperconv::transfer::{
    erected_filter, filter_preimage, ladder, verify_transfer_compact, RealModel, RealSet, TransferVerdict, Q,
};

type Verdict = Result<String, String>;

const EXPECTED_ANCHORS: [&str; 46] = [
    "W-erected",
    "Wn-erected",
    "Wnbase",
    "alpha-arens",
    "alpha-collections",
    "alpha-lindelof",
    "cor:0-polar",
    "cor:Falpha",
    "cor:idealcover",
    "crit-inh",
    "dual-conv",
    "eq:3alphas",
    "eq:FW",
    "eq:FWbelow",
    "eq:alphaLind",
    "eq:bracketnotation",
    "eq:hyperH",
    "eq:hyperR",
    "eq:reducedideal",
    "eq:topbase",
    "example-discrete",
    "functional-separation",
    "general-def",
    "ideal-subbase",
    "lem:closure",
    "lem:conv-at-zero",
    "lem:liftsequence",
    "lem:separation",
    "mesh",
    "pro:adh=lim",
    "pro:adhalpha",
    "pro:idealbasis",
    "pro:up-regular",
    "prop:alpha-lift",
    "prop:base",
    "prop:constr-rel",
    "prop:cover",
    "prop:natural-lift",
    "prop:refine",
    "prop:scaling",
    "prop:t0-not-t1",
    "solid-axioms",
    "th:equality",
    "thm:anWn",
    "thm:transfer-compact",
    "upper-kuratowski",
];

fn run(ids: &[&str], cfg: &ScopeConfig) -> Result<Report, String> {
    let only: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    run_laws(&only, &[], cfg).map_err(|e| e.to_string())
}

/// All selected laws passed; returns the instance counts.
fn all_pass(report: &Report) -> Result<Vec<(String, usize)>, String> {
    let bad: Vec<String> = report
        .laws
        .iter()
        .filter(|l| l.status != Status::Pass)
        .map(|l| {
            let first = l.failures.first().map(|f| f.violation.message.clone()).unwrap_or_default();
            format!("{} {:?} {}", l.id, l.status, first)
        })
        .collect();
    if bad.is_empty() {
        Ok(report.laws.iter().map(|l| (l.id.clone(), l.instances)).collect())
    } else {
        Err(bad.join("; "))
    }
}

fn identity_laws() -> Verdict {
    let start = Instant::now();
    let cfg = ScopeConfig::default();
    let report = run(&["prop-alpha-lift", "prop-natural-lift", "th-equality", "eq-3alphas"], &cfg)?;
    let counts = all_pass(&report)?;
    let expected = 3 * (1..=3).map(|n| enumerate_spaces(n, true).unwrap().len()).sum::<usize>();
    if let Some((id, n)) = counts.iter().find(|(_, n)| *n != expected) {
        return Err(format!("{id} ran {n} instances, expected {expected}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("4 laws x {expected} (X,Z) pairs, exact, {:.1}s", elapsed.as_secs_f64()))
}

fn structural_laws() -> Verdict {
    let cfg = ScopeConfig::default();
    let t0_up_to_4: usize = (1..=4).map(|n| enumerate_spaces(n, true).unwrap().len()).sum();
    let lattice = grid_instances(Grid::Lattice, &cfg).map_err(|e| e.to_string())?;
    let t0_in_grid = lattice.iter().filter(|i| FiniteSpace::build(&i.space).unwrap().separation_profile().t0).count();
    if t0_in_grid != t0_up_to_4 {
        return Err(format!("grid has {t0_in_grid} T0 spaces, expected {t0_up_to_4}"));
    }
    let ids = [
        "prop-refine",
        "pro-up-regular",
        "lem-closure",
        "prop-t0-not-t1",
        "solid-axioms",
        "prop-base",
        "pro-adh-lim",
        "cor-idealcover",
        "pro-adhalpha",
        "alpha-collections",
    ];
    let report = run(&ids, &cfg)?;
    all_pass(&report)?;
    Ok(format!("{} laws x {} spaces ({} T0 up to 4 points)", ids.len(), lattice.len(), t0_up_to_4))
}

fn transfer_suite() -> Verdict {
    let cfg = ScopeConfig { depth: 8, ..ScopeConfig::default() };
    let ids = [
        "lem-conv-at-zero",
        "thm-anwn",
        "cor-falpha",
        "cor-0-polar",
        "eq-fwbelow",
        "prop-scaling",
        "prop-constr-rel",
        "thm-transfer-compact",
    ];
    let report = run(&ids, &cfg)?;
    let counts = all_pass(&report)?;

    let s = FiniteSpace::sierpinski();
    let model = RealModel::new(&s).map_err(|e| e.to_string())?;
    let alpha =
        HyperFilter::of_family(&s, &IsotoneFamily::principal(&s, PointSet::singleton(1))).map_err(|e| e.to_string())?;
    let verdict = verify_transfer_compact(&model, alpha, &ladder(0), 8).map_err(|e| e.to_string())?;
    let strict = TransferVerdict { leq: true, eq: false, separated: false };
    if verdict != strict {
        return Err(format!("Sierpinski witness gave {verdict:?}"));
    }

    // stabilization on every erected filter of every transfer instance
    let mut probes = 0;
    for inst in grid_instances(Grid::Transfer, &cfg).map_err(|e| e.to_string())? {
        let space = FiniteSpace::build(&inst.space).map_err(|e| e.to_string())?;
        let model = RealModel::new(&space).map_err(|e| e.to_string())?;
        for a in hyperconv::hyperfamily::antichains(&space).into_iter().filter(|&a| a != 0) {
            let alpha = HyperFilter::new(hyperconv::hyperfamily::up_closure(&space, a)).map_err(|e| e.to_string())?;
            let erected = erected_filter(&model, alpha, 8).map_err(|e| e.to_string())?;
            let wide = RealSet::open_interval(Q::new(-2, 1), Q::new(2, 1));
            for w in (0..8).map(ladder).chain([wide]) {
                let p = filter_preimage(&model, &erected, &w).map_err(|e| e.to_string())?;
                if !p.stabilized {
                    return Err(format!("not stabilized on {:?} at {w}", inst.space));
                }
                probes += 1;
            }
        }
    }
    Ok(format!(
        "{} laws x {} instances at depth 8, {probes} stabilized preimages, Sierpinski witness {verdict:?}",
        ids.len(),
        counts[0].1
    ))
}

fn example_law() -> Verdict {
    let report = run(&["example-discrete"], &ScopeConfig::default())?;
    let counts = all_pass(&report)?;
    if counts[0].1 != 3 {
        return Err(format!("ran {} discrete spaces, expected 3", counts[0].1));
    }
    Ok("discrete 2, 3 and 4 points".into())
}

fn cover_numbers_agree() -> Verdict {
    let report = run(&["eq-alphalind"], &ScopeConfig::default())?;
    let counts = all_pass(&report)?;
    let mut compared = 0;
    for n in 1..=3 {
        for space in enumerate_spaces(n, false).map_err(|e| e.to_string())? {
            let a = standard_alphas(&space).map_err(|e| e.to_string())?;
            for (name, alpha) in [("s", &a.s), ("p", &a.p), ("kappa", &a.kappa)] {
                let closed = alpha.intersection_closure();
                let tau = hyper_topology(&space, &closed).map_err(|e| e.to_string())?;
                for (i, &u) in space.opens().iter().enumerate() {
                    let by_covers = cover_numbers(&space, &closed, u).map_err(|e| e.to_string())?.lindelof;
                    let by_adherence = tau.conv().tightness_at(i).map_err(|e| e.to_string())?;
                    if by_covers != by_adherence {
                        return Err(format!("{name} on {:?} at {u:?}: {by_covers} vs {by_adherence}", space.spec()));
                    }
                    compared += 1;
                }
                if name == "kappa" {
                    let at_top = cover_numbers(&space, alpha, space.full()).map_err(|e| e.to_string())?.lindelof;
                    if at_top != 1 {
                        return Err(format!("kappa gives {at_top} on {:?}", space.spec()));
                    }
                }
            }
        }
    }
    let d3 = FiniteSpace::discrete(3);
    let s = standard_alphas(&d3).map_err(|e| e.to_string())?.s;
    let raw = cover_numbers(&d3, &s, d3.full()).map_err(|e| e.to_string())?.lindelof;
    if raw != 3 {
        return Err(format!("s on discrete 3 gives {raw}"));
    }
    Ok(format!(
        "{compared} (space, alpha, U) triples over {} spaces; s on discrete 3 = {raw}; kappa = 1 everywhere",
        counts[0].1
    ))
}

fn meta_coverage() -> Verdict {
    let got = anchors();
    if got != EXPECTED_ANCHORS {
        let missing: Vec<_> = EXPECTED_ANCHORS.iter().filter(|a| !got.contains(a)).collect();
        let extra: Vec<_> = got.iter().filter(|a| !EXPECTED_ANCHORS.contains(a)).collect();
        return Err(format!("missing {missing:?}, unexpected {extra:?}"));
    }
    let exe = env!("CARGO_BIN_EXE_hyperconv");
    let skipped = Command::new(exe)
        .args(["laws", "--only", "example-discrete", "--max-points", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    if skipped.status.success() {
        return Err("CLI exited 0 with a skipped law".into());
    }
    let excluded = Command::new(exe)
        .args(["laws", "--only", "example-discrete", "--max-points", "1", "--exclude", "example-discrete"])
        .output()
        .map_err(|e| e.to_string())?;
    if !excluded.status.success() {
        return Err("CLI failed although the skipped law was excluded".into());
    }
    Ok(format!("{} anchors match; skipped law exits {:?}, excluded law exits 0", got.len(), skipped.status.code()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 6] = [
        ("function identity laws", identity_laws),
        ("hyperspace structural laws", structural_laws),
        ("transfer suite", transfer_suite),
        ("discrete example", example_law),
        ("cover-number agreement", cover_numbers_agree),
        ("meta-coverage", meta_coverage),
    ];
    let mut ok = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                ok = false;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
