//! Laws about the hyperspace `C(X,$)` itself.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Case, Outcome};
use crate::convergence::{kernels, Convergence, Reflection};
use crate::error::Result;
use crate::hyperconv::{
    arens_number, cover_numbers, hyper_topology, is_alpha_cover, is_cover, minimal_alpha_covers, scott_by_kernel,
    scott_convergence, selection, solidity_check, upper_kuratowski_view, HyperConvergence, SelectionMode,
};
use crate::hyperfamily::{
    antichains, family_leq, functional_separation, is_compact_family, is_compact_set, is_functionally_separated,
    is_ideal_base, is_ideal_subbase, is_ideal_subbase_by_subfamilies, mesh, meshes_polar, polar, reduced_ideal,
    refines, standard_alphas, subsets_of_size, union_closure, AlphaCollection, HyperFilter, HyperSet, IsotoneFamily,
    Separation,
};
use crate::space::{low_bits, FiniteSpace, OpenSet, PointSet};

/// Carriers up to this many opens get the literal adherence scan; larger
/// ones use the pointwise form.
const LITERAL_ADHERENCE_OPENS: usize = 8;

/// Carriers up to this many opens have every hyperset checked where a law
/// quantifies over families of opens; larger ones get a fixed sample.
const EXHAUSTIVE_FAMILY_OPENS: usize = 10;

fn adh(conv: &Convergence, set: HyperSet) -> HyperSet {
    if conv.size() <= LITERAL_ADHERENCE_OPENS {
        conv.adherence(set)
    } else {
        conv.adherence_pointwise(set)
    }
}

fn lists(space: &FiniteSpace, mask: HyperSet) -> Vec<Vec<usize>> {
    space.opens_of_mask(mask).iter().map(|o| o.to_vec()).collect()
}

fn full_mask(space: &FiniteSpace) -> HyperSet {
    low_bits(space.open_count())
}

/// Hypersets (including the empty one) over which family-quantified laws
/// run: all of them on small carriers, otherwise every hyperset with at most
/// three or at least `m − 2` members plus a seeded sample.
fn families_to_check(m: usize) -> Vec<HyperSet> {
    let full = low_bits(m);
    if m <= EXHAUSTIVE_FAMILY_OPENS {
        return (0..=full).collect();
    }
    let mut out: BTreeSet<HyperSet> = (0..=3).flat_map(|k| subsets_of_size(m, k)).collect();
    out.extend((0..=2).flat_map(|k| subsets_of_size(m, k)).map(|s| full & !s));
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11);
    out.extend((0..2048).map(|_| rng.gen::<u64>() & full));
    out.into_iter().collect()
}

fn standard(space: &FiniteSpace) -> Result<[(&'static str, AlphaCollection); 3]> {
    let a = standard_alphas(space)?;
    Ok([("s", a.s), ("p", a.p), ("kappa", a.kappa)])
}

/// The families `𝒪(x) ∪ 𝒪(y)` together with the point families.
fn pair_collection(space: &FiniteSpace) -> AlphaCollection {
    let n = space.points();
    let point = |x: usize| IsotoneFamily::principal(space, PointSet::singleton(x));
    let mut families: Vec<IsotoneFamily> = (0..n).map(point).collect();
    for x in 0..n {
        for y in x + 1..n {
            families.push(point(x).union(&point(y)));
        }
    }
    AlphaCollection::custom(families)
}

/// Hyperconvergences between `p(X,$)` and `[X,$]`, coarsest first.
fn between(space: &FiniteSpace) -> Result<Vec<(&'static str, HyperConvergence)>> {
    let a = standard_alphas(space)?;
    let scott = scott_convergence(space)?;
    let topological = HyperConvergence::new(space.clone(), scott.conv().reflect(Reflection::T))?;
    Ok(vec![
        ("p(X,$)", hyper_topology(space, &a.p)?),
        ("kappa(X,$)", hyper_topology(space, &a.kappa)?),
        ("T[X,$]", topological),
        ("[X,$]", scott),
    ])
}

pub fn alpha_collections(case: &Case) -> Outcome {
    let space = &case.space;
    let a = standard_alphas(space)?;
    ensure!(
        a.p.same_families(&a.k) && a.p.same_families(&a.kappa),
        json!({"p": a.p.families.len(), "k": a.k.families.len(), "kappa": a.kappa.families.len()}),
        "p, k and kappa are not the same collection"
    );
    let isotone = antichains(space).len();
    ensure!(
        a.kappa.families.len() == isotone,
        json!({"kappa": a.kappa.families.len(), "isotone": isotone}),
        "kappa misses some isotone family"
    );
    for fam in &a.kappa.families {
        ensure!(is_compact_family(space, fam), fam, "a family of kappa fails the compactness check");
    }
    for s in 0..1u64 << space.points() {
        ensure!(is_compact_set(space, PointSet(s)), PointSet(s).to_vec(), "a subset is not compact");
    }
    let points: BTreeSet<IsotoneFamily> =
        (0..space.points()).map(|x| IsotoneFamily::principal(space, PointSet::singleton(x))).collect();
    let s: BTreeSet<IsotoneFamily> = a.s.families.iter().cloned().collect();
    ensure!(s == points, &a.s.families, "s is not the collection of point families");
    ensure!(a.s.families.iter().all(|f| a.p.families.contains(f)), &a.s.families, "s is not contained in p");
    Ok(())
}

pub fn crit_inh(case: &Case) -> Outcome {
    let space = &case.space;
    let literal = scott_convergence(space)?;
    let reduced = scott_by_kernel(space)?;
    if let Some(k) = literal.conv().difference(reduced.conv()) {
        ensure!(
            false,
            json!({"kernel": lists(space, k), "union": lists(space, literal.lim(k)), "interior": lists(space, reduced.lim(k))}),
            "union over superset kernels differs from the interior of the intersection"
        );
    }
    literal.conv().validate()?;
    Ok(())
}

pub fn upper_kuratowski(case: &Case) -> Outcome {
    let space = &case.space;
    let view = upper_kuratowski_view(space)?;
    let scott = scott_convergence(space)?;
    if let Some(k) = view.difference(scott.conv()) {
        ensure!(
            false,
            json!({"kernel": lists(space, k)}),
            "adherence formula differs from the complement image of [X,$]"
        );
    }
    Ok(())
}

pub fn solid_axioms(case: &Case) -> Outcome {
    let space = &case.space;
    let a = standard_alphas(space)?;
    let mut list = vec![("[X,$]", scott_convergence(space)?)];
    for (name, alpha) in [("s(X,$)", &a.s), ("p(X,$)", &a.p), ("k(X,$)", &a.k), ("kappa(X,$)", &a.kappa)] {
        list.push((name, hyper_topology(space, alpha)?));
    }
    for (name, tau) in &list {
        let flags = solidity_check(tau);
        ensure!(flags.solid, json!({"convergence": name, "flags": flags}), "{name} is not solid");
    }
    let discrete = HyperConvergence::new(space.clone(), Convergence::discrete(space.open_count()))?;
    let flags = solidity_check(&discrete);
    ensure!(!flags.lower, json!({"flags": flags}), "the discrete hyperconvergence passes as lower");
    Ok(())
}

pub fn up_regular(case: &Case) -> Outcome {
    let space = &case.space;
    let a = standard_alphas(space)?;
    let scott = scott_convergence(space)?;
    let m = space.open_count();
    let mut candidates = vec![
        ("T[X,$]", HyperConvergence::new(space.clone(), scott.conv().reflect(Reflection::T))?),
        ("P[X,$]", HyperConvergence::new(space.clone(), scott.conv().reflect(Reflection::P))?),
        ("chaotic", HyperConvergence::new(space.clone(), Convergence::chaotic(m))?),
        ("discrete", HyperConvergence::new(space.clone(), Convergence::discrete(m))?),
    ];
    for (name, alpha) in
        [("s(X,$)", a.s.clone()), ("s^(X,$)", a.s.intersection_closure()), ("p(X,$)", a.p), ("kappa(X,$)", a.kappa)]
    {
        candidates.push((name, hyper_topology(space, &alpha)?));
    }
    let mut lower_topologies = 0;
    for (name, tau) in &candidates {
        let flags = solidity_check(tau);
        if flags.lower && tau.conv().classify().topology {
            lower_topologies += 1;
            ensure!(
                flags.upper_regular,
                json!({"convergence": name, "flags": flags}),
                "{name} is a lower topology but not upper regular"
            );
        }
    }
    ensure!(lower_topologies > 0, json!(null), "no lower topology among the candidates");
    Ok(())
}

pub fn closure(case: &Case) -> Outcome {
    let space = &case.space;
    let list = between(space)?;
    let coarsest = &list[0].1;
    let finest = &list[list.len() - 1].1;
    for (name, tau) in &list {
        ensure!(
            coarsest.conv().leq(tau.conv()) && tau.conv().leq(finest.conv()),
            name,
            "{name} is not between p(X,$) and [X,$]"
        );
        for (i, open) in space.opens().iter().enumerate() {
            let cl = tau.conv().adherence(1 << i);
            ensure!(
                cl == space.opens_below(i),
                json!({"convergence": name, "open": open.to_vec(), "closure": lists(space, cl)}),
                "closure of a point is not the set of opens inside it"
            );
        }
    }
    Ok(())
}

pub fn t0_not_t1(case: &Case) -> Outcome {
    let space = &case.space;
    let m = space.open_count();
    let top = m - 1;
    for (name, tau) in between(space)? {
        let cl: Vec<HyperSet> = (0..m).map(|i| tau.conv().adherence(1 << i)).collect();
        for i in 0..m {
            for j in i + 1..m {
                ensure!(
                    cl[j] >> i & 1 == 0 || cl[i] >> j & 1 == 0,
                    json!({"convergence": name, "a": space.opens()[i].to_vec(), "b": space.opens()[j].to_vec()}),
                    "two opens lie in each other's closure"
                );
            }
        }
        ensure!(top > 0 && cl[top] & 1 == 1, json!({"convergence": name}), "the empty set is not in the closure of X");
    }
    Ok(())
}

pub fn mesh_law(case: &Case) -> Outcome {
    let space = &case.space;
    let full = full_mask(space);
    for k in kernels(space.open_count()) {
        let members: Vec<HyperSet> = (0..=full).filter(|&g| g & k == k).collect();
        for r in 0..=full {
            let expected = r & k != 0;
            ensure!(
                mesh(&[r], &members) == expected && mesh(&members, &[r]) == expected,
                json!({"kernel": lists(space, k), "set": lists(space, r)}),
                "mesh with a principal filter disagrees with meeting its kernel"
            );
        }
    }
    Ok(())
}

pub fn refine(case: &Case) -> Outcome {
    let space = &case.space;
    let subsets: Vec<PointSet> = (0..1u64 << space.points()).map(PointSet).collect();
    let mut families: Vec<Vec<PointSet>> = vec![Vec::new()];
    for (i, &a) in subsets.iter().enumerate() {
        families.push(vec![a]);
        for &b in &subsets[i + 1..] {
            families.push(vec![a, b]);
        }
    }
    let polars: Vec<Vec<HyperSet>> = families.iter().map(|p| polar(space, p)).collect();
    for r in 0..=full_mask(space) {
        let rs = space.opens_of_mask(r);
        let polar_r = polar(space, &rs);
        for (p, polar_p) in families.iter().zip(&polars) {
            let meshes = meshes_polar(space, &rs, p);
            let refined = refines(p, &rs);
            let below = family_leq(polar_p, &polar_r);
            ensure!(
                meshes == refined && refined == below,
                json!({
                    "R": lists(space, r),
                    "P": p.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                    "mesh": meshes, "refines": refined, "leq": below,
                }),
                "the three conditions disagree"
            );
        }
    }
    Ok(())
}

pub fn ideal_subbase(case: &Case) -> Outcome {
    let space = &case.space;
    for p in 0..=full_mask(space) {
        let fam = space.opens_of_mask(p);
        let fast = is_ideal_subbase(&fam);
        ensure!(fast == is_ideal_subbase_by_subfamilies(&fam), lists(space, p), "the two ideal subbase tests disagree");
        if fast {
            let pol = polar(space, &fam);
            ensure!(
                pol.iter().all(|&a| pol.iter().all(|&b| pol.iter().any(|&c| c & !(a & b) == 0))),
                lists(space, p),
                "𝒪^♮ of an ideal subbase is not a filter base"
            );
        }
        if is_ideal_base(&fam) {
            ensure!(fast, lists(space, p), "an ideal base is not an ideal subbase");
        }
        if fam.is_empty() {
            continue;
        }
        let closure = union_closure(&fam);
        ensure!(is_ideal_base(&closure), lists(space, p), "the union closure is not an ideal base");
        ensure!(fam.iter().all(|o| closure.contains(o)), lists(space, p), "the union closure drops a member");
        ensure!(
            closure
                .iter()
                .all(|&c| fam.iter().filter(|f| f.is_subset(c)).fold(PointSet::EMPTY, |a, &f| a.union(f)) == c),
            lists(space, p),
            "the union closure has a member that is not a union of members"
        );
    }
    Ok(())
}

pub fn reduced_ideal_law(case: &Case) -> Outcome {
    let space = &case.space;
    let full = full_mask(space);
    for k in kernels(space.open_count()) {
        let got = reduced_ideal(space, HyperFilter::new(k)?);
        let free = full & !k;
        let mut brute = BTreeSet::new();
        let mut extra = free;
        loop {
            let meet = space.opens_of_mask(k | extra).iter().fold(space.full(), |a, &o| a.intersection(o));
            brute.insert(meet);
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
        let brute: Vec<OpenSet> = brute.into_iter().collect();
        ensure!(
            got == brute,
            json!({"kernel": lists(space, k), "got": got, "expected": brute}),
            "reduced ideal differs from the set of intersections"
        );
        ensure!(is_ideal_subbase(&got), lists(space, k), "reduced ideal is not an ideal subbase");
    }
    Ok(())
}

pub fn base(case: &Case) -> Outcome {
    let space = &case.space;
    let scott = scott_convergence(space)?;
    let full = full_mask(space);
    for k in kernels(space.open_count()) {
        let lim = scott.lim(k);
        let mut p: Vec<OpenSet> =
            reduced_ideal(space, HyperFilter::new(k)?).into_iter().map(|a| space.interior(a)).collect();
        p.sort_unstable();
        p.dedup();
        let witness = || json!({"kernel": lists(space, k), "P": p});
        ensure!(is_ideal_subbase(&p), witness(), "interiors of the reduced ideal do not form an ideal subbase");
        let base_kernel = polar(space, &p).iter().fold(full, |a, &b| a & b);
        ensure!(base_kernel & k == k, witness(), "𝒪^♮(P) is not coarser than the filter");
        ensure!(scott.lim(base_kernel) & lim == lim, witness(), "𝒪^♮(P) loses a limit of the filter");
        for y in space.opens_of_mask(lim) {
            ensure!(is_cover(&p, y), witness(), "P does not cover a limit");
        }
    }
    Ok(())
}

pub fn adh_lim(case: &Case) -> Outcome {
    let space = &case.space;
    let a = standard_alphas(space)?;
    let full = full_mask(space);
    let mut candidates = vec![("[X,$]", scott_convergence(space)?)];
    for (name, alpha) in
        [("s(X,$)", a.s.clone()), ("s^(X,$)", a.s.intersection_closure()), ("p(X,$)", a.p), ("kappa(X,$)", a.kappa)]
    {
        candidates.push((name, hyper_topology(space, &alpha)?));
    }
    let subbases: Vec<HyperSet> = (1..=full).filter(|&p| is_ideal_subbase(&space.opens_of_mask(p))).collect();
    for (name, tau) in &candidates {
        if !solidity_check(tau).upper_regular {
            continue;
        }
        for &p in &subbases {
            let kernel = polar(space, &space.opens_of_mask(p)).iter().fold(full, |a, &b| a & b);
            let (adherence, limit) = (adh(tau.conv(), p), tau.lim(kernel));
            ensure!(
                adherence == limit,
                json!({"convergence": name, "P": lists(space, p), "adherence": lists(space, adherence), "limit": lists(space, limit)}),
                "adherence of an ideal subbase differs from the limit of its 𝒪^♮ filter"
            );
        }
    }
    Ok(())
}

fn solid_between(space: &FiniteSpace) -> std::result::Result<Vec<(&'static str, HyperConvergence)>, super::Violation> {
    let list = between(space)?;
    for (name, tau) in &list {
        let flags = solidity_check(tau);
        ensure!(flags.solid, json!({"convergence": name, "flags": flags}), "{name} is not solid");
    }
    Ok(list)
}

pub fn cover(case: &Case) -> Outcome {
    let space = &case.space;
    let list = solid_between(space)?;
    for p in 1..=full_mask(space) {
        let fam = space.opens_of_mask(p);
        let closure = space.mask_of_opens(&union_closure(&fam));
        for (name, tau) in &list {
            let adherence = adh(tau.conv(), closure);
            for (u, &open) in space.opens().iter().enumerate() {
                ensure!(
                    is_cover(&fam, open) == (adherence >> u & 1 == 1),
                    json!({"convergence": name, "P": lists(space, p), "U": open.to_vec()}),
                    "covering U disagrees with U adhering to the union closure"
                );
            }
        }
    }
    Ok(())
}

pub fn ideal_cover(case: &Case) -> Outcome {
    let space = &case.space;
    let list = solid_between(space)?;
    let full = full_mask(space);
    for p in 1..=full {
        let fam = space.opens_of_mask(p);
        if !is_ideal_base(&fam) {
            continue;
        }
        let kernel = polar(space, &fam).iter().fold(full, |a, &b| a & b);
        let covered =
            space.opens().iter().enumerate().filter(|(_, &u)| is_cover(&fam, u)).fold(0u64, |acc, (i, _)| acc | 1 << i);
        for (name, tau) in &list {
            let (adherence, limit) = (adh(tau.conv(), p), tau.lim(kernel));
            ensure!(
                adherence == covered && limit == covered,
                json!({
                    "convergence": name, "P": lists(space, p),
                    "adherence": lists(space, adherence), "limit": lists(space, limit), "covered": lists(space, covered),
                }),
                "adherence, limit and covered opens of an ideal base disagree"
            );
        }
    }
    Ok(())
}

pub fn example_discrete(case: &Case) -> Outcome {
    let space = &case.space;
    let n = space.points();
    ensure!(
        *space == FiniteSpace::discrete(n) && n >= 2,
        n,
        "the example needs a discrete space with at least 2 points"
    );
    let a = standard_alphas(space)?;
    let pointwise = hyper_topology(space, &a.p)?;
    let singletons: Vec<OpenSet> = (0..n).map(PointSet::singleton).collect();
    let top = space.open_count() - 1;
    let plain = pointwise.conv().adherence(space.mask_of_opens(&singletons));
    let unions = pointwise.conv().adherence(space.mask_of_opens(&union_closure(&singletons)));
    ensure!(plain >> top & 1 == 0, lists(space, plain), "X adheres to the singletons");
    ensure!(unions >> top & 1 == 1, lists(space, unions), "X does not adhere to the unions of singletons");
    Ok(())
}

pub fn adh_alpha(case: &Case) -> Outcome {
    let space = &case.space;
    let families = families_to_check(space.open_count());
    let mut collections: Vec<(&str, AlphaCollection)> = standard(space)?.into_iter().collect();
    collections.push(("pairs", pair_collection(space)));
    for (name, alpha) in collections {
        let closed = alpha.intersection_closure();
        let tau = hyper_topology(space, &closed)?;
        for &p in &families {
            let adherence = adh(tau.conv(), p);
            let fam = space.opens_of_mask(p);
            for (u, &open) in space.opens().iter().enumerate() {
                ensure!(
                    is_alpha_cover(space, &closed, &fam, open) == (adherence >> u & 1 == 1),
                    json!({"alpha": name, "P": lists(space, p), "U": open.to_vec()}),
                    "adherence in the α topology disagrees with being an α-cover"
                );
            }
        }
    }
    Ok(())
}

/// Smallest α-subcover of `p`, over all submasks.
fn least_subcover(space: &FiniteSpace, alpha: &AlphaCollection, p: HyperSet, target: OpenSet) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut q = p;
    while q != 0 {
        if is_alpha_cover(space, alpha, &space.opens_of_mask(q), target) {
            let size = q.count_ones() as usize;
            best = Some(best.map_or(size, |b| b.min(size)));
        }
        q = (q - 1) & p;
    }
    best
}

pub fn alpha_lindelof(case: &Case) -> Outcome {
    let space = &case.space;
    let m = space.open_count();
    let full = full_mask(space);
    for (name, alpha) in standard(space)? {
        for &u in space.opens() {
            let got = cover_numbers(space, &alpha, u)?.lindelof;
            let covers: Vec<HyperSet> =
                (1..=full).filter(|&p| is_alpha_cover(space, &alpha, &space.opens_of_mask(p), u)).collect();
            let least: Vec<usize> = covers
                .iter()
                .map(|&p| least_subcover(space, &alpha, p, u).expect("a cover is its own subcover"))
                .collect();
            let oracle = (0..=m).find(|&lambda| least.iter().all(|&l| l <= lambda)).expect("m bounds every subcover");
            ensure!(
                got == oracle,
                json!({"alpha": name, "U": u.to_vec(), "got": got, "expected": oracle}),
                "α-Lindelöf number disagrees with the threshold search"
            );
            if name == "kappa" {
                ensure!(got == 1, json!({"U": u.to_vec(), "got": got}), "kappa-Lindelöf number is not 1");
            }
            if name == "s" {
                // s-covers are exactly the open covers
                let ordinary = (1..=full)
                    .filter(|&p| is_cover(&space.opens_of_mask(p), u))
                    .map(|p| {
                        let mut q = p;
                        let mut best = usize::MAX;
                        while q != 0 {
                            if is_cover(&space.opens_of_mask(q), u) {
                                best = best.min(q.count_ones() as usize);
                            }
                            q = (q - 1) & p;
                        }
                        best
                    })
                    .max()
                    .unwrap_or(0);
                ensure!(
                    ordinary == got,
                    json!({"U": u.to_vec(), "L": ordinary, "sL": got}),
                    "s-Lindelöf number differs from the Lindelöf number"
                );
            }
        }
        if name == "s" && *space == FiniteSpace::discrete(3) {
            let at_top = cover_numbers(space, &alpha, space.full())?.lindelof;
            ensure!(at_top == 3, at_top, "s-Lindelöf number of the discrete 3-point space is not 3");
        }
    }
    Ok(())
}

pub fn alpha_arens(case: &Case) -> Outcome {
    let space = &case.space;
    let mut collections: Vec<(&str, AlphaCollection)> = standard(space)?.into_iter().collect();
    collections.push(("pairs", pair_collection(space)));
    for (name, alpha) in collections {
        for &u in space.opens() {
            let local: Vec<&IsotoneFamily> =
                alpha.families.iter().filter(|f| f.contains(u)).collect::<BTreeSet<_>>().into_iter().collect();
            let oracle = (0..=local.len())
                .find(|&size| {
                    subsets_of_size(local.len(), size).any(|pick| {
                        let chosen: Vec<&IsotoneFamily> = PointSet(pick).iter().map(|j| local[j]).collect();
                        local.iter().all(|f| chosen.iter().any(|g| g.is_subfamily(f)))
                    })
                })
                .expect("all local families are cofinal");
            let got = arens_number(&alpha, u);
            ensure!(
                got == oracle,
                json!({"alpha": name, "U": u.to_vec(), "got": got, "expected": oracle}),
                "α-Arens number disagrees with the cofinality search"
            );
        }
    }
    Ok(())
}

/// Least bound `b` such that parts of at most `b` members, one part per
/// cover, have a union `U` adheres to.
fn hurewicz_by_adherence(conv: &Convergence, covers: &[HyperSet], u: usize) -> Option<usize> {
    fn rec(conv: &Convergence, covers: &[HyperSet], u: usize, bound: usize, acc: HyperSet) -> bool {
        let Some((&first, rest)) = covers.split_first() else {
            return adh(conv, acc) >> u & 1 == 1;
        };
        let mut sub = first;
        loop {
            if sub.count_ones() as usize <= bound && rec(conv, rest, u, bound, acc | sub) {
                return true;
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & first;
        }
    }
    if covers.is_empty() {
        return None;
    }
    let widest = covers.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    (1..=widest).find(|&b| rec(conv, covers, u, b, 0))
}

/// Whether one member per cover can be picked with `U` adhering to the picks.
fn rothberger_by_adherence(conv: &Convergence, covers: &[HyperSet], u: usize) -> bool {
    fn rec(conv: &Convergence, covers: &[HyperSet], u: usize, acc: HyperSet) -> bool {
        match covers.split_first() {
            None => adh(conv, acc) >> u & 1 == 1,
            Some((&first, rest)) => PointSet(first).iter().any(|i| rec(conv, rest, u, acc | 1 << i)),
        }
    }
    !covers.is_empty() && rec(conv, covers, u, 0)
}

fn selection_law(case: &Case, mode: SelectionMode) -> Outcome {
    let space = &case.space;
    let mut collections: Vec<(&str, AlphaCollection)> = standard(space)?.into_iter().collect();
    collections.push(("pairs", pair_collection(space)));
    for (name, alpha) in collections {
        let closed = alpha.intersection_closure();
        let tau = hyper_topology(space, &closed)?;
        let conv = tau.conv();
        for (u, &open) in space.opens().iter().enumerate() {
            let minimal = minimal_alpha_covers(space, &closed, open)?;
            let masks: Vec<HyperSet> = minimal.iter().map(|c| space.mask_of_opens(c)).collect();
            for &c in &masks {
                ensure!(
                    adh(conv, c) >> u & 1 == 1,
                    json!({"alpha": name, "U": open.to_vec(), "cover": lists(space, c)}),
                    "U does not adhere to an α-cover"
                );
            }
            let mut sequences: Vec<Vec<usize>> = (0..masks.len()).map(|i| vec![i]).collect();
            for i in 0..masks.len() {
                for j in i..masks.len() {
                    sequences.push(vec![i, j]);
                }
            }
            for seq in sequences {
                let covers: Vec<Vec<OpenSet>> = seq.iter().map(|&i| minimal[i].clone()).collect();
                let seq_masks: Vec<HyperSet> = seq.iter().map(|&i| masks[i]).collect();
                let chosen = selection(space, &closed, open, &covers, mode)?;
                let witness = || json!({"alpha": name, "U": open.to_vec(), "covers": seq_masks.iter().map(|&c| lists(space, c)).collect::<Vec<_>>()});
                match mode {
                    SelectionMode::Rothberger => {
                        ensure!(
                            chosen.is_some() == rothberger_by_adherence(conv, &seq_masks, u),
                            witness(),
                            "Rothberger selection from covers disagrees with selection through adherence"
                        );
                    }
                    SelectionMode::Hurewicz => {
                        let bound = chosen.map(|parts| parts.iter().map(Vec::len).max().unwrap_or(0));
                        ensure!(
                            bound == hurewicz_by_adherence(conv, &seq_masks, u),
                            witness(),
                            "Hurewicz bound from covers disagrees with the bound through adherence"
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn hyper_h(case: &Case) -> Outcome {
    selection_law(case, SelectionMode::Hurewicz)
}

pub fn hyper_r(case: &Case) -> Outcome {
    selection_law(case, SelectionMode::Rothberger)
}

pub fn alpha_lind(case: &Case) -> Outcome {
    let space = &case.space;
    let mut collections: Vec<(&str, AlphaCollection)> = standard(space)?.into_iter().collect();
    collections.push(("pairs", pair_collection(space)));
    for (name, alpha) in collections {
        let closed = alpha.intersection_closure();
        let tau = hyper_topology(space, &closed)?;
        for (u, &open) in space.opens().iter().enumerate() {
            let by_covers = cover_numbers(space, &closed, open)?.lindelof;
            let by_adherence = tau.conv().tightness_at(u)?;
            ensure!(
                by_covers == by_adherence,
                json!({"alpha": name, "U": open.to_vec(), "covers": by_covers, "tightness": by_adherence}),
                "α-Lindelöf number differs from the tightness of α(X,$)"
            );
        }
    }
    Ok(())
}

pub fn functional_separation_law(case: &Case) -> Outcome {
    let space = &case.space;
    let n = space.points();
    let comps = space.components();
    let regular = space.separation_profile().regular;
    for a in antichains(space) {
        let fam = IsotoneFamily::from_opens(space, &space.opens_of_mask(a))?;
        match functional_separation(space, &fam) {
            Separation::Separated(ws) => {
                ensure!(ws.len() == fam.members(space).len(), &fam, "a member has no witness");
                for w in &ws {
                    ensure!(fam.contains(w.open) && fam.contains(w.inner), w, "witness uses a non-member");
                    ensure!(w.component_values.len() == comps.len(), w, "witness has the wrong number of values");
                    for (c, &v) in comps.iter().zip(&w.component_values) {
                        ensure!(!c.meets(w.inner) || v == 0, w, "witness is not 0 on the inner member");
                        ensure!(!c.meets(w.open.complement(n)) || v == 1, w, "witness is not 1 off the member");
                    }
                }
            }
            Separation::Fails(o) => {
                ensure!(fam.contains(o), json!({"family": fam, "open": o.to_vec()}), "failure names a non-member");
                for inner in fam.members(space) {
                    ensure!(
                        comps.iter().any(|c| c.meets(inner) && c.meets(o.complement(n))),
                        json!({"family": fam, "open": o.to_vec(), "inner": inner.to_vec()}),
                        "failure reported although a member is separated"
                    );
                }
            }
        }
        if regular {
            ensure!(is_functionally_separated(space, &fam), &fam, "a family on a regular space is not separated");
        }
    }
    Ok(())
}
