//! Laws about convergences on `C(X,Z)`.

use serde_json::json;

use super::{Case, Outcome};
use crate::convergence::{comparison_kernels, Convergence, Reflection};
use crate::funcspace::{
    alpha_function_topology, closed_lift_over, dual_convergence, filtered_closed_bases, ideal_bases,
    natural_convergence, preimage_lift, preimage_lift_direct, preimage_lift_over, FunctionCarrier,
};
use crate::hyperconv::{hyper_topology, scott_convergence, HyperConvergence};
use crate::hyperfamily::{antichains, standard_alphas, AlphaCollection, IsotoneFamily};
use crate::space::PointSet;

fn carrier(case: &Case) -> Result<FunctionCarrier, super::Violation> {
    Ok(FunctionCarrier::new(&case.space, case.target()?)?)
}

fn maps_json(carrier: &FunctionCarrier, mask: u64) -> Vec<Vec<usize>> {
    PointSet(mask).iter().map(|i| carrier.maps()[i].table.clone()).collect()
}

/// Exact comparison over every kernel.
fn same_exactly(name: &str, carrier: &FunctionCarrier, a: &Convergence, b: &Convergence) -> Outcome {
    if let Some(k) = a.difference(b) {
        ensure!(
            false,
            json!({"convergence": name, "kernel": maps_json(carrier, k), "left": maps_json(carrier, a.lim(k)), "right": maps_json(carrier, b.lim(k))}),
            "{name}: limits differ"
        );
    }
    Ok(())
}

/// Comparison over [`comparison_kernels`].
fn same_on_sample(name: &str, carrier: &FunctionCarrier, a: &Convergence, b: &Convergence) -> Outcome {
    if let Some(k) = comparison_kernels(a.size()).find(|&k| a.lim(k) != b.lim(k)) {
        ensure!(
            false,
            json!({"convergence": name, "kernel": maps_json(carrier, k), "left": maps_json(carrier, a.lim(k)), "right": maps_json(carrier, b.lim(k))}),
            "{name}: limits differ"
        );
    }
    Ok(())
}

fn hyper_list(case: &Case) -> Result<Vec<(&'static str, HyperConvergence)>, super::Violation> {
    let x = &case.space;
    let a = standard_alphas(x)?;
    let scott = scott_convergence(x)?;
    let topological = HyperConvergence::new(x.clone(), scott.conv().reflect(Reflection::T))?;
    Ok(vec![
        ("[X,$]", scott),
        ("T[X,$]", topological),
        ("p(X,$)", hyper_topology(x, &a.p)?),
        ("s(X,$)", hyper_topology(x, &a.s)?),
    ])
}

pub fn general_def(case: &Case) -> Outcome {
    let c = carrier(case)?;
    for (name, tau) in hyper_list(case)? {
        let initial = preimage_lift(&c, &tau)?;
        let direct = preimage_lift_direct(&c, &tau)?;
        same_on_sample(name, &c, &initial.conv, &direct.conv)?;
    }
    Ok(())
}

pub fn ideal_basis(case: &Case) -> Outcome {
    let c = carrier(case)?;
    let z = case.target()?;
    let x = &case.space;
    let a = standard_alphas(x)?;
    let solid = [
        ("[X,$]", scott_convergence(x)?),
        ("p(X,$)", hyper_topology(x, &a.p)?),
        ("kappa(X,$)", hyper_topology(x, &a.kappa)?),
    ];
    for (name, tau) in &solid {
        let full = preimage_lift(&c, tau)?;
        for basis in ideal_bases(z)? {
            let over = preimage_lift_over(&c, tau, &basis)?;
            same_on_sample(&format!("{name} over ideal basis {basis:?}"), &c, &full.conv, &over.conv)?;
        }
        for basis in filtered_closed_bases(z)? {
            let over = closed_lift_over(&c, tau, &basis)?;
            same_on_sample(&format!("{name} over closed basis {basis:?}"), &c, &full.conv, &over.conv)?;
        }
    }
    Ok(())
}

pub fn bracket_notation(case: &Case) -> Outcome {
    let c = carrier(case)?;
    let x = &case.space;
    let z = case.target()?;
    for d in 0..1u64 << x.points() {
        let d = PointSet(d);
        for &u in z.opens() {
            let literal = c
                .maps()
                .iter()
                .enumerate()
                .filter(|(_, f)| d.iter().all(|p| u.contains(f.apply(p))))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            let points = c.bracket_points(d, u);
            let family = c.bracket_family(&IsotoneFamily::principal(x, d), u);
            ensure!(
                points == literal && family == literal,
                json!({"D": d.to_vec(), "U": u.to_vec(), "points": maps_json(&c, points), "family": maps_json(&c, family), "expected": maps_json(&c, literal)}),
                "[D,U] is not the set of maps sending D into U"
            );
        }
    }
    Ok(())
}

pub fn top_base(case: &Case) -> Outcome {
    let c = carrier(case)?;
    let x = &case.space;
    let z = case.target()?;
    let families: Vec<IsotoneFamily> = antichains(x)
        .into_iter()
        .map(|a| IsotoneFamily::from_opens(x, &x.opens_of_mask(a)))
        .collect::<crate::error::Result<_>>()?;
    for &u in z.opens() {
        let brackets: Vec<u64> = families.iter().map(|fam| c.bracket_family(fam, u)).collect();
        for (fam, &got) in families.iter().zip(&brackets) {
            let literal = c
                .maps()
                .iter()
                .enumerate()
                .filter(|(_, f)| fam.contains(f.preimage(u)))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            ensure!(
                got == literal,
                json!({"family": fam, "U": u.to_vec()}),
                "[𝒜,U] is not the set of maps with f⁻(U) ∈ 𝒜"
            );
        }
        for (i, a) in families.iter().enumerate() {
            for (j, b) in families.iter().enumerate().skip(i) {
                let meet = c.bracket_family(&a.intersection(b), u);
                ensure!(
                    brackets[i] & brackets[j] == meet,
                    json!({"A": a, "B": b, "U": u.to_vec()}),
                    "[𝒜,U] ∩ [ℬ,U] differs from [𝒜 ∩ ℬ,U]"
                );
            }
        }
    }
    Ok(())
}

fn nondegenerate(case: &Case) -> Result<Vec<(&'static str, AlphaCollection)>, super::Violation> {
    let a = standard_alphas(&case.space)?;
    Ok([("p", a.p), ("k", a.k), ("kappa", a.kappa), ("s", a.s)]
        .into_iter()
        .filter(|(_, alpha)| !alpha.is_degenerate())
        .collect())
}

pub fn alpha_lift(case: &Case) -> Outcome {
    let c = carrier(case)?;
    for (name, alpha) in nondegenerate(case)? {
        let topology = alpha_function_topology(&c, &alpha)?;
        let lift = preimage_lift(&c, &hyper_topology(&case.space, &alpha)?)?;
        same_exactly(name, &c, &topology.conv, &lift.conv)?;
    }
    Ok(())
}

pub fn natural_lift(case: &Case) -> Outcome {
    let c = carrier(case)?;
    let natural = natural_convergence(&c)?;
    let lift = preimage_lift(&c, &scott_convergence(&case.space)?)?;
    same_exactly("[X,Z]", &c, &natural.conv, &lift.conv)
}

/// `[α,Z]` from its definition: every open `O` of `Z` and family `𝒜 ∈ α`
/// with no member inside `⋂_{g∈K} g⁻(O)` rules out the maps with
/// `f⁻(O) ∈ 𝒜`.
fn dual_by_definition(c: &FunctionCarrier, alpha: &AlphaCollection, kernel: u64) -> u64 {
    let z = c.z();
    let mut excluded = 0u64;
    for &o in z.opens() {
        let meet = PointSet(kernel).iter().fold(c.x().full(), |acc, g| acc.intersection(c.maps()[g].preimage(o)));
        for fam in &alpha.families {
            if fam.has_member_inside(meet) {
                continue;
            }
            for (f, map) in c.maps().iter().enumerate() {
                if fam.contains(map.preimage(o)) {
                    excluded |= 1 << f;
                }
            }
        }
    }
    c.full() & !excluded
}

pub fn dual_conv(case: &Case) -> Outcome {
    let c = carrier(case)?;
    for (name, alpha) in nondegenerate(case)? {
        let dual = dual_convergence(&c, &alpha)?;
        if let Some(k) = comparison_kernels(c.len()).find(|&k| dual.conv.lim(k) != dual_by_definition(&c, &alpha, k)) {
            ensure!(
                false,
                json!({"alpha": name, "kernel": maps_json(&c, k), "got": maps_json(&c, dual.conv.lim(k)), "expected": maps_json(&c, dual_by_definition(&c, &alpha, k))}),
                "dual convergence differs from its definition"
            );
        }
    }
    Ok(())
}

pub fn equality(case: &Case) -> Outcome {
    let c = carrier(case)?;
    let natural = natural_convergence(&c)?;
    let a = standard_alphas(&case.space)?;
    for (name, alpha) in [("p", a.p), ("k", a.k), ("kappa", a.kappa)] {
        let dual = dual_convergence(&c, &alpha)?;
        same_exactly(name, &c, &dual.conv, &natural.conv)?;
    }
    Ok(())
}

pub fn three_alphas(case: &Case) -> Outcome {
    let c = carrier(case)?;
    for (name, alpha) in nondegenerate(case)? {
        let dual = dual_convergence(&c, &alpha)?.conv;
        let reflected = dual.reflect(Reflection::T);
        let topology = alpha_function_topology(&c, &alpha)?.conv;
        if let Some(k) = reflected.coarser_witness(&dual) {
            ensure!(false, json!({"alpha": name, "kernel": maps_json(&c, k)}), "T[α,Z] is not coarser than [α,Z]");
        }
        if let Some(k) = topology.coarser_witness(&reflected) {
            ensure!(false, json!({"alpha": name, "kernel": maps_json(&c, k)}), "α(X,Z) is not coarser than T[α,Z]");
        }
    }
    Ok(())
}
