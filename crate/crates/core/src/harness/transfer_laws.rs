//! Laws about the transfer between `C(X,$)` and `C(X,ℝ)`.

use serde_json::json;

use super::{Case, Outcome, Violation};
use crate::hyperconv::{hyper_topology, scott_convergence, HyperConvergence};
use crate::hyperfamily::{
    antichains, is_functionally_separated, polar, reduced_ideal, standard_alphas, up_closure, HyperFilter, HyperSet,
    IsotoneFamily,
};
use crate::space::{low_bits, FiniteSpace, PointSet};
use crate::transfer::{
    bracket_region, bracket_region_of_kernel, delta_reconstruction, erected_filter, f_upper, ladder,
    lift_limit_at_zero, stable_preimage, standard_probes, sup_erected, verify_transfer_compact, zero_limit_by_probes,
    RealModel, RealSet, Region, SymbolicFilter, Window, Q,
};

type Checked<T> = std::result::Result<T, Violation>;

fn q(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

fn show(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Windows other than the ladder used where a law holds for any open
/// neighbourhood of 0.
fn windows() -> Vec<RealSet> {
    vec![ladder(0), RealSet::open_interval(q(-2, 1), q(2, 1)), RealSet::open_interval(q(-1, 3), q(5, 1))]
}

/// `𝒪^♮`-regular filters: the up-closure of every nonempty antichain.
fn regular_filters(space: &FiniteSpace) -> Checked<Vec<HyperFilter>> {
    antichains(space)
        .into_iter()
        .filter(|&a| a != 0)
        .map(|a| HyperFilter::new(up_closure(space, a)).map_err(Violation::from))
        .collect()
}

fn solid_list(space: &FiniteSpace) -> Checked<Vec<(&'static str, HyperConvergence)>> {
    let kappa = standard_alphas(space)?.kappa;
    Ok(vec![("[X,$]", scott_convergence(space)?), ("kappa(X,$)", hyper_topology(space, &kappa)?)])
}

fn top(space: &FiniteSpace) -> usize {
    space.open_count() - 1
}

fn lists(space: &FiniteSpace, mask: HyperSet) -> Vec<Vec<usize>> {
    space.opens_of_mask(mask).iter().map(|o| o.to_vec()).collect()
}

/// Kernel of `𝒪^♮(𝒦^⇓)`: the opens containing the union of the reduced
/// ideal, that is `⋂𝒦`.
fn polar_of_reduced(space: &FiniteSpace, filter: HyperFilter) -> HyperSet {
    let ideal = reduced_ideal(space, filter);
    polar(space, &ideal).iter().fold(low_bits(space.open_count()), |a, &b| a & b)
}

/// Every vector over `values`, one coordinate per component.
fn vectors(dim: usize, values: &[Q]) -> Vec<Vec<Q>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Sequences `s, s+3, s+6, ..` (mod the list length) of length `depth`, so
/// the probe level repeats the last entry.
fn sequences<T: Clone>(list: &[T], depth: usize) -> Vec<Vec<T>> {
    let len = list.len();
    (0..len.min(3)).map(|s| (0..depth.max(1)).map(|n| list[(s + 3 * n) % len].clone()).collect()).collect()
}

/// Erected filters of every regular filter, suprema along sequences, and
/// the constant filters at `0̄` and at everything.
fn test_filters(model: &RealModel, alphas: &[HyperFilter], depth: usize) -> Checked<Vec<SymbolicFilter>> {
    let mut out = Vec::new();
    for &alpha in alphas {
        out.push(erected_filter(model, alpha, depth)?);
    }
    for seq in sequences(alphas, depth) {
        out.push(sup_erected(model, &seq, depth)?);
    }
    out.push(SymbolicFilter::principal_at_zero(model, depth)?);
    out.push(SymbolicFilter::constant(Region::full(model.dim()), depth)?);
    Ok(out)
}

fn converges_to_top(tau: &HyperConvergence, alpha: HyperFilter) -> bool {
    tau.conv().converges(alpha.kernel(), top(tau.space()))
}

pub fn separation(case: &Case) -> Outcome {
    let space = &case.space;
    let scott = scott_convergence(space)?;
    let model = RealModel::new(space)?;
    for gamma in regular_filters(space)? {
        let k = gamma.kernel();
        if scott.lim(k) == 0 {
            continue;
        }
        let meet = space.opens_of_mask(k).iter().fold(space.full(), |a, &o| a.intersection(o));
        let q_set = space.interior(meet);
        let family = IsotoneFamily::principal(space, q_set);
        let alpha = HyperFilter::of_family(space, &family)?;
        let a = alpha.kernel();
        let witness = || json!({"gamma": lists(space, k), "alpha": lists(space, a)});
        ensure!(k & !a == 0, witness(), "α is not coarser than γ");
        ensure!(scott.lim(a) & scott.lim(k) == scott.lim(k), witness(), "α loses a limit of γ");
        ensure!(is_functionally_separated(space, &family), witness(), "α is not functionally separated");
        ensure!(polar_of_reduced(space, alpha) == a, witness(), "α differs from 𝒪^♮(α^⇓)");
        let erected = erected_filter(&model, alpha, case.depth)?;
        for w in windows() {
            let back = stable_preimage(&model, &erected, &w)?;
            ensure!(
                polar_of_reduced(space, back) == a,
                json!({"gamma": lists(space, k), "alpha": lists(space, a), "window": w, "preimage": lists(space, back.kernel())}),
                "𝒪^♮ of the preimage of the erected filter differs from α"
            );
        }
    }
    Ok(())
}

pub fn wn_base(case: &Case) -> Outcome {
    let depth = case.depth;
    let unit = RealSet::open_interval(q(-1, 1), q(1, 1));
    for n in 0..=depth {
        let w = ladder(n);
        let next = ladder(n + 1);
        ensure!(next.is_subset(&w) && next != w, n, "the ladder does not strictly decrease");
        ensure!(w.is_subset(&unit) && w.contains(q(0, 1)), n, "a ladder set is unbounded or misses 0");
        let symmetric = w.breakpoints().iter().all(|&p| w.contains(p) == w.contains(-p))
            && w.breakpoints().iter().all(|&p| w.contains(p / 2) == w.contains(-p / 2));
        ensure!(symmetric, n, "a ladder set is not symmetric");
    }
    for m in 1..=2 * depth as i64 + 2 {
        let eps = RealSet::open_interval(q(-1, m), q(1, m));
        ensure!((0..=2 * depth + 2).any(|n| ladder(n).is_subset(&eps)), m, "no ladder set fits in (−1/m, 1/m)");
    }
    Ok(())
}

pub fn conv_at_zero(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let alphas = regular_filters(space)?;
    let probes = standard_probes(case.depth);
    let filters = test_filters(&model, &alphas, case.depth)?;
    for (name, tau) in solid_list(space)? {
        for (i, f) in filters.iter().enumerate() {
            let ladder_test = lift_limit_at_zero(&tau, &model, f)?;
            let probe_test = zero_limit_by_probes(&tau, &model, f, &probes)?;
            ensure!(
                ladder_test == probe_test,
                json!({"convergence": name, "filter": i, "ladder": ladder_test, "probes": probe_test}),
                "the ladder test disagrees with testing open sets one by one"
            );
        }
    }
    Ok(())
}

fn sample_values(n: usize) -> Vec<Q> {
    let r = q(1, n as i64 + 1);
    vec![q(-2, 1), r, -r, r / 2, -r / 2, q(0, 1), q(3, 2)]
}

pub fn w_erected(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let zero = RealSet::point(q(0, 1));
    let depth = case.depth.max(1);
    for alpha in regular_filters(space)? {
        let fam = alpha.family(space)?;
        for n in [0, depth - 1] {
            let w = ladder(n);
            let samples = vectors(model.dim(), &sample_values(n));
            for (window, literal) in [
                (
                    Window::Set(w.clone()),
                    Box::new(|v: &[Q]| fam.contains(model.preimage(v, &w))) as Box<dyn Fn(&[Q]) -> bool>,
                ),
                (Window::Zero, Box::new(|v: &[Q]| fam.has_member_inside(model.preimage(v, &zero)))),
            ] {
                let region = bracket_region(&model, &fam, &window);
                for v in &samples {
                    ensure!(
                        region.contains(v) == literal(v),
                        json!({"family": fam, "level": n, "zero_window": window == Window::Zero, "function": show(v)}),
                        "bracket region membership differs from the definition"
                    );
                }
            }
        }
    }
    Ok(())
}

pub fn wn_erected(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    for alpha in regular_filters(space)? {
        let fam = alpha.family(space)?;
        let erected = erected_filter(&model, alpha, case.depth)?;
        for (n, level) in erected.levels().iter().enumerate() {
            let bracket = bracket_region(&model, &fam, &Window::Set(ladder(n)));
            ensure!(
                *level == bracket,
                json!({"family": fam, "level": n}),
                "a level of the erected filter is not [𝒪^♮(α),W_n]"
            );
            if n > 0 {
                let above = bracket_region(&model, &fam, &Window::Set(ladder(n - 1)));
                ensure!(
                    bracket.is_subset(&above),
                    json!({"family": fam, "level": n}),
                    "brackets along the ladder do not decrease"
                );
            }
        }
    }
    Ok(())
}

pub fn lift_sequence(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let zero = model.zero();
    let alphas = regular_filters(space)?;
    for seq in sequences(&alphas, case.depth) {
        let sup = sup_erected(&model, &seq, case.depth)?;
        for (n, level) in sup.levels().iter().enumerate() {
            let bracket = bracket_region_of_kernel(&model, seq[n.min(seq.len() - 1)].kernel(), &ladder(n));
            let witness =
                || json!({"sequence": seq.iter().map(|a| lists(space, a.kernel())).collect::<Vec<_>>(), "level": n});
            ensure!(level.is_subset(&bracket), witness(), "the supremum is not below a bracket");
            ensure!(level.contains(&zero), witness(), "a level misses the zero function");
        }
    }
    Ok(())
}

pub fn an_wn(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let alphas = regular_filters(space)?;
    for (name, tau) in solid_list(space)? {
        let convergent: Vec<HyperFilter> = alphas.iter().copied().filter(|&a| converges_to_top(&tau, a)).collect();
        if convergent.is_empty() {
            continue;
        }
        for seq in sequences(&convergent, case.depth) {
            let sup = sup_erected(&model, &seq, case.depth)?;
            ensure!(
                lift_limit_at_zero(&tau, &model, &sup)?,
                json!({"convergence": name, "sequence": seq.iter().map(|a| lists(space, a.kernel())).collect::<Vec<_>>()}),
                "the supremum of the brackets does not converge to 0"
            );
        }
    }
    Ok(())
}

pub fn f_alpha(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let alphas = regular_filters(space)?;
    for (name, tau) in solid_list(space)? {
        for &alpha in alphas.iter().filter(|&&a| converges_to_top(&tau, a)) {
            let erected = erected_filter(&model, alpha, case.depth)?;
            ensure!(
                lift_limit_at_zero(&tau, &model, &erected)?,
                json!({"convergence": name, "alpha": lists(space, alpha.kernel())}),
                "the erected filter does not converge to 0"
            );
        }
    }
    Ok(())
}

pub fn zero_polar(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let alphas = regular_filters(space)?;
    let solid = solid_list(space)?;
    for alpha in alphas {
        let fam = alpha.family(space)?;
        let erected = erected_filter(&model, alpha, case.depth)?;
        let polar_filter = SymbolicFilter::constant(bracket_region(&model, &fam, &Window::Zero), case.depth)?;
        ensure!(
            erected.leq(&polar_filter),
            json!({"alpha": lists(space, alpha.kernel())}),
            "[α,{{0}}] is not finer than the erected filter"
        );
        for (name, tau) in &solid {
            if converges_to_top(tau, alpha) {
                ensure!(
                    lift_limit_at_zero(tau, &model, &polar_filter)?,
                    json!({"convergence": name, "alpha": lists(space, alpha.kernel())}),
                    "[α,{{0}}] does not converge to 0"
                );
            }
        }
    }
    Ok(())
}

pub fn constr_rel(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    for alpha in regular_filters(space)? {
        for depth in 1..=case.depth {
            let erected = erected_filter(&model, alpha, depth)?;
            let delta = delta_reconstruction(&model, alpha, depth)?;
            ensure!(
                erected.leq(&delta) && delta.leq(&erected),
                json!({"alpha": lists(space, alpha.kernel()), "depth": depth}),
                "the relational reconstruction differs from the erected filter"
            );
        }
    }
    Ok(())
}

pub fn scaling(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let pairs = [
        (RealSet::open_interval(q(-1, 1), q(1, 1)), RealSet::open_interval(q(-2, 1), q(2, 1)), q(2, 1)),
        (ladder(1), ladder(2), q(2, 3)),
    ];
    for alpha in regular_filters(space)? {
        let fam = alpha.family(space)?;
        let filters = [
            erected_filter(&model, alpha, case.depth)?,
            SymbolicFilter::constant(bracket_region(&model, &fam, &Window::Zero), case.depth)?,
        ];
        for f in &filters {
            for (v, w, a) in &pairs {
                let kv = stable_preimage(&model, f, v)?.kernel();
                let kw = stable_preimage(&model, f, w)?.kernel();
                if kv != kw {
                    continue;
                }
                let at_v = bracket_region_of_kernel(&model, kv, v).rescale(*a, q(0, 1))?;
                let at_w = bracket_region_of_kernel(&model, kw, w);
                ensure!(
                    at_v == at_w,
                    json!({"alpha": lists(space, alpha.kernel()), "V": v, "W": w, "factor": a.to_string()}),
                    "the bracket at W is not the rescaled bracket at V"
                );
            }
        }
    }
    Ok(())
}

fn fw_values(n: usize) -> Vec<Q> {
    let mut out = vec![q(0, 1), q(2, 1), q(-2, 1)];
    for k in 0..=n {
        let r = q(1, k as i64 + 1);
        for c in [q(1, 1), q(3, 4), q(5, 4)] {
            out.push(c * r);
            out.push(-c * r);
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn fw(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let alphas = regular_filters(space)?;
    for (i, f) in test_filters(&model, &alphas, case.depth)?.iter().enumerate() {
        let upper = f_upper(&model, f)?;
        let kernels: Vec<HyperSet> = (0..=1)
            .map(|m| stable_preimage(&model, f, &ladder(m)).map(|p| p.kernel()))
            .collect::<crate::error::Result<_>>()?;
        for n in 0..=1 {
            for v in vectors(model.dim(), &fw_values(n)) {
                let literal = (0..=n).all(|m| {
                    let pre = model.preimage(&v, &ladder(m));
                    space.open_index(pre).is_some_and(|j| kernels[m] >> j & 1 == 1)
                });
                ensure!(
                    upper.levels()[n].contains(&v) == literal,
                    json!({"filter": i, "level": n, "function": show(&v)}),
                    "a level of 𝓕^{{𝒩(0)}} has the wrong functions"
                );
            }
        }
    }
    Ok(())
}

pub fn fw_below(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    let alphas = regular_filters(space)?;
    for (i, f) in test_filters(&model, &alphas, case.depth)?.iter().enumerate() {
        let upper = f_upper(&model, f)?;
        ensure!(upper.leq(f), json!({"filter": i}), "𝓕^{{𝒩(0)}} is not coarser than 𝓕");
    }
    Ok(())
}

pub fn transfer_compact(case: &Case) -> Outcome {
    let space = &case.space;
    let model = RealModel::new(space)?;
    for alpha in regular_filters(space)? {
        for w in windows() {
            let verdict = verify_transfer_compact(&model, alpha, &w, case.depth)?;
            let witness = || json!({"alpha": lists(space, alpha.kernel()), "window": w, "verdict": verdict});
            ensure!(verdict.leq, witness(), "α is not coarser than the preimage of its erected filter");
            ensure!(
                !verdict.separated || verdict.eq,
                witness(),
                "a separated α is not recovered from its erected filter"
            );
        }
    }
    if *space == FiniteSpace::sierpinski() {
        let alpha = HyperFilter::of_family(space, &IsotoneFamily::principal(space, PointSet::singleton(1)))?;
        let verdict = verify_transfer_compact(&model, alpha, &ladder(0), case.depth)?;
        ensure!(
            verdict.leq && !verdict.eq && !verdict.separated,
            verdict,
            "𝒪({{1}}) on the Sierpiński space should be strictly coarser and not separated"
        );
    }
    Ok(())
}
