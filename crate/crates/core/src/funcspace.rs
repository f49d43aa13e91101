//! Convergences on `C(X,Z)` for finite `Z`: bracket sets, the topologies
//! `α(X,Z)`, the natural convergence `[X,Z]`, preimage-wise lifts `τ^⇑` and
//! the dual convergences `[α,Z]`.
//!
//! Maps are numbered in the order of [`FiniteSpace::continuous_maps`], and a
//! set of maps is a bit mask over those numbers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::convergence::{initial, Convergence, MAX_SWEEP_BITS};
use crate::error::{Error, Result};
use crate::hyperconv::HyperConvergence;
use crate::hyperfamily::{AlphaCollection, IsotoneFamily};
use crate::lookup::SubsetMap;
use crate::space::{low_bits, ContinuousMap, FiniteSpace, OpenSet, PointSet};

/// Largest domain for which tables over point subsets are built.
const MAX_DOMAIN_POINTS: usize = 20;

/// `C(X,Z)` materialized.
#[derive(Clone, Debug)]
pub struct FunctionCarrier {
    x: FiniteSpace,
    z: FiniteSpace,
    maps: Vec<ContinuousMap>,
    index: HashMap<Vec<usize>, usize>,
}

impl FunctionCarrier {
    pub fn new(x: &FiniteSpace, z: &FiniteSpace) -> Result<Self> {
        if x.points() > MAX_DOMAIN_POINTS {
            return Err(Error::CarrierTooLarge(x.points()));
        }
        let maps = x.continuous_maps(z);
        if maps.len() > MAX_SWEEP_BITS {
            return Err(Error::CarrierTooLarge(maps.len()));
        }
        let index = maps.iter().enumerate().map(|(i, f)| (f.table.clone(), i)).collect();
        Ok(FunctionCarrier { x: x.clone(), z: z.clone(), maps, index })
    }

    pub fn x(&self) -> &FiniteSpace {
        &self.x
    }

    pub fn z(&self) -> &FiniteSpace {
        &self.z
    }

    pub fn maps(&self) -> &[ContinuousMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn full(&self) -> u64 {
        low_bits(self.maps.len())
    }

    pub fn index_of(&self, map: &ContinuousMap) -> Option<usize> {
        self.index.get(&map.table).copied()
    }

    /// `f⁻(S)` for every map.
    pub fn preimages(&self, set: PointSet) -> Vec<PointSet> {
        self.maps.iter().map(|f| f.preimage(set)).collect()
    }

    fn select(&self, pred: impl Fn(&ContinuousMap) -> bool) -> u64 {
        self.maps.iter().enumerate().filter(|(_, f)| pred(f)).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// `[D,U] = {f : f(D) ⊆ U}`.
    pub fn bracket_points(&self, d: PointSet, u: OpenSet) -> u64 {
        self.select(|f| d.is_subset(f.preimage(u)))
    }

    /// `[𝒜,U] = {f : f⁻(U) ∈ 𝒜}`.
    pub fn bracket_family(&self, family: &IsotoneFamily, u: OpenSet) -> u64 {
        self.select(|f| family.contains(f.preimage(u)))
    }

    /// `[𝒜,C] = {f : A ⊆ f⁻(C) for some A ∈ 𝒜}`, for `C` closed or not.
    pub fn bracket_closed(&self, family: &IsotoneFamily, c: PointSet) -> u64 {
        self.select(|f| family.has_member_inside(f.preimage(c)))
    }

    /// For `Z` the Sierpiński space: the open `f⁻({1})` of each map, by index.
    pub fn sierpinski_identification(&self) -> Option<Vec<usize>> {
        if self.z != FiniteSpace::sierpinski() {
            return None;
        }
        let one = PointSet::singleton(1);
        self.maps.iter().map(|f| self.x.open_index(f.preimage(one))).collect()
    }

    /// Opens of `Z` whose preimage is not the same under every map. The
    /// others impose no condition on any of the convergences built here.
    fn varying_opens(&self, opens: &[OpenSet]) -> Vec<OpenSet> {
        opens
            .iter()
            .copied()
            .filter(|&u| {
                let pre = self.preimages(u);
                pre.iter().any(|&p| p != pre[0])
            })
            .collect()
    }

    fn bits(sets: &[PointSet]) -> Vec<u64> {
        sets.iter().map(|s| s.0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    AlphaTopology,
    Natural,
    Lift,
    Dual,
}

#[derive(Clone, Debug)]
pub struct FunctionConvergence {
    pub provenance: Provenance,
    pub conv: Convergence,
}

/// The topology on `C(X,Z)` with subbase `{[𝒜,U] : 𝒜 ∈ α, U open in Z}`.
pub fn alpha_function_topology(carrier: &FunctionCarrier, alpha: &AlphaCollection) -> Result<FunctionConvergence> {
    if alpha.is_degenerate() {
        return Err(Error::DegenerateAlpha);
    }
    let subbase: Vec<u64> = alpha
        .families
        .iter()
        .flat_map(|fam| carrier.z.opens().iter().map(move |&u| carrier.bracket_family(fam, u)))
        .collect();
    let full = carrier.full();
    let nbhd: Vec<u64> =
        (0..carrier.len()).map(|f| subbase.iter().filter(|&&s| s >> f & 1 == 1).fold(full, |a, &s| a & s)).collect();
    Ok(FunctionConvergence {
        provenance: Provenance::AlphaTopology,
        conv: Convergence::topology_from_neighbourhoods(&nbhd)?,
    })
}

/// `f₀ ∈ lim K` iff `f₀⁻(U) ⊆ int ⋂_{g∈K} g⁻(U)` for every open `U` of `Z`.
pub fn natural_convergence(carrier: &FunctionCarrier) -> Result<FunctionConvergence> {
    let x = &carrier.x;
    let mut parts = Vec::new();
    for u in carrier.varying_opens(carrier.z.opens()) {
        let pre = carrier.preimages(u);
        let meet = SubsetMap::meet(&FunctionCarrier::bits(&pre), x.full().0);
        let good: Vec<u64> = (0..1u64 << x.points())
            .map(|p| {
                let int = x.interior(PointSet(p));
                pre.iter().enumerate().filter(|(_, q)| q.is_subset(int)).fold(0, |acc, (f, _)| acc | 1 << f)
            })
            .collect();
        parts.push((meet, good));
    }
    let full = carrier.full();
    Ok(FunctionConvergence {
        provenance: Provenance::Natural,
        conv: Convergence::trusted(carrier.len(), move |k| {
            parts.iter().fold(full, |acc, (meet, good)| acc & good[meet.eval(k) as usize])
        }),
    })
}

fn check_same_domain(carrier: &FunctionCarrier, tau: &HyperConvergence) -> Result<()> {
    if tau.space() != carrier.x() {
        return Err(Error::InconsistentSpec("hyperconvergence lives on another space".into()));
    }
    Ok(())
}

/// `τ^⇑` as the initial convergence of the maps `f ↦ f⁻(U)`, `U` open in `Z`.
pub fn preimage_lift(carrier: &FunctionCarrier, tau: &HyperConvergence) -> Result<FunctionConvergence> {
    preimage_lift_over(carrier, tau, carrier.z.opens())
}

/// `τ^⇑` tested only on the opens in `basis`.
pub fn preimage_lift_over(
    carrier: &FunctionCarrier,
    tau: &HyperConvergence,
    basis: &[OpenSet],
) -> Result<FunctionConvergence> {
    check_same_domain(carrier, tau)?;
    if let Some(&b) = basis.iter().find(|&&b| !carrier.z.is_open(b)) {
        return Err(Error::InconsistentSpec(format!("{b:?} is not open")));
    }
    let x = &carrier.x;
    let maps: Vec<Vec<usize>> = carrier
        .varying_opens(basis)
        .into_iter()
        .map(|u| carrier.preimages(u).iter().map(|&p| x.open_index(p).expect("preimages of opens are open")).collect())
        .collect();
    let targets = vec![tau.conv().clone(); maps.len()];
    Ok(FunctionConvergence { provenance: Provenance::Lift, conv: initial(carrier.len(), &maps, &targets)? })
}

/// `τ^⇑` straight from its definition, looping over maps and opens.
pub fn preimage_lift_direct(carrier: &FunctionCarrier, tau: &HyperConvergence) -> Result<FunctionConvergence> {
    check_same_domain(carrier, tau)?;
    let x = carrier.x.clone();
    let pre: Vec<Vec<usize>> = carrier
        .z
        .opens()
        .iter()
        .map(|&u| carrier.preimages(u).iter().map(|&p| x.open_index(p).expect("open")).collect())
        .collect();
    let conv = tau.conv().clone();
    let count = carrier.len();
    Ok(FunctionConvergence {
        provenance: Provenance::Lift,
        conv: Convergence::trusted(count, move |k| {
            let limits: Vec<u64> = pre
                .iter()
                .map(|row| {
                    let image = PointSet(k).iter().fold(0u64, |a, g| a | 1 << row[g]);
                    conv.lim(image)
                })
                .collect();
            (0..count)
                .filter(|&f| pre.iter().zip(&limits).all(|(row, l)| l >> row[f] & 1 == 1))
                .fold(0, |acc, f| acc | 1 << f)
        }),
    })
}

/// `cτ`: `τ` carried to the closed sets of `X` by complementation, with closed
/// sets numbered in increasing bit order. Returns the closed sets as well.
pub fn complement_convergence(tau: &HyperConvergence) -> (Vec<PointSet>, Convergence) {
    let x = tau.space();
    let n = x.points();
    let mut closed: Vec<PointSet> = x.opens().iter().map(|o| o.complement(n)).collect();
    closed.sort_by_key(|c| c.0);
    // closed index j ↔ open index of its complement
    let to_open: Vec<usize> = closed.iter().map(|c| x.open_index(c.complement(n)).expect("open")).collect();
    let mut to_closed = vec![0usize; closed.len()];
    for (j, &i) in to_open.iter().enumerate() {
        to_closed[i] = j;
    }
    let forward = SubsetMap::join(&to_open.iter().map(|&i| 1u64 << i).collect::<Vec<_>>());
    let back = SubsetMap::join(&to_closed.iter().map(|&j| 1u64 << j).collect::<Vec<_>>());
    let conv = tau.conv().clone();
    (closed, Convergence::trusted(to_open.len(), move |k| back.eval(conv.lim(forward.eval(k)))))
}

/// `f ∈ lim K` iff `f⁻(C) ∈ lim_{cτ} K⁻(C)` for every `C` in `closed_basis`.
pub fn closed_lift_over(
    carrier: &FunctionCarrier,
    tau: &HyperConvergence,
    closed_basis: &[PointSet],
) -> Result<FunctionConvergence> {
    check_same_domain(carrier, tau)?;
    if let Some(&c) = closed_basis.iter().find(|&&c| !carrier.z.is_closed(c)) {
        return Err(Error::InconsistentSpec(format!("{c:?} is not closed")));
    }
    let (closed, ctau) = complement_convergence(tau);
    let position: HashMap<PointSet, usize> = closed.iter().enumerate().map(|(j, &c)| (c, j)).collect();
    let maps: Vec<Vec<usize>> =
        closed_basis.iter().map(|&c| carrier.preimages(c).iter().map(|p| position[p]).collect()).collect();
    let targets = vec![ctau; maps.len()];
    Ok(FunctionConvergence { provenance: Provenance::Lift, conv: initial(carrier.len(), &maps, &targets)? })
}

/// `[α,Z]`: `f ∈ lim K` iff whenever `f⁻(O) ∈ 𝒜 ∈ α`, some `A ∈ 𝒜` has
/// `K ⊆ [A,O]`, that is `A ⊆ ⋂_{g∈K} g⁻(O)`.
pub fn dual_convergence(carrier: &FunctionCarrier, alpha: &AlphaCollection) -> Result<FunctionConvergence> {
    let x = &carrier.x;
    let mut parts = Vec::new();
    for o in carrier.varying_opens(carrier.z.opens()) {
        let pre = carrier.preimages(o);
        let meet = SubsetMap::meet(&FunctionCarrier::bits(&pre), x.full().0);
        let table: Vec<u64> = (0..1u64 << x.points())
            .map(|i| {
                let inner = PointSet(i);
                pre.iter()
                    .enumerate()
                    .filter(|(_, &p)| {
                        alpha.families.iter().filter(|fam| fam.contains(p)).all(|fam| fam.has_member_inside(inner))
                    })
                    .fold(0, |acc, (f, _)| acc | 1 << f)
            })
            .collect();
        parts.push((meet, table));
    }
    let full = carrier.full();
    Ok(FunctionConvergence {
        provenance: Provenance::Dual,
        conv: Convergence::trusted(carrier.len(), move |k| {
            parts.iter().fold(full, |acc, (meet, table)| acc & table[meet.eval(k) as usize])
        }),
    })
}

/// Index table of `f ↦ h ∘ f` from `C(X,Z)` to `C(X,W)`.
pub fn lower_conjugate(from: &FunctionCarrier, to: &FunctionCarrier, h: &ContinuousMap) -> Result<Vec<usize>> {
    if from.x != to.x || !from.z.is_continuous(&to.z, &h.table) {
        return Err(Error::InconsistentSpec("map does not connect the two function spaces".into()));
    }
    Ok(from
        .maps
        .iter()
        .map(|f| to.index_of(&f.compose(h)).expect("composites of continuous maps are continuous"))
        .collect())
}

/// Whether `limits` are preserved by a map of carriers:
/// `f ∈ lim_a K ⇒ m(f) ∈ lim_b m(K)` on every compared kernel.
pub fn continuity_witness(a: &Convergence, b: &Convergence, map: &[usize]) -> Option<u64> {
    let image = SubsetMap::join(&map.iter().map(|&t| 1u64 << t).collect::<Vec<_>>());
    crate::convergence::comparison_kernels(a.size()).find(|&k| {
        let target = b.lim(image.eval(k));
        image.eval(a.lim(k)) & !target != 0
    })
}

/// Union-closed families of opens of which every open is a union.
pub fn ideal_bases(z: &FiniteSpace) -> Result<Vec<Vec<OpenSet>>> {
    let opens = z.opens();
    if opens.len() > 16 {
        return Err(Error::CarrierTooLarge(opens.len()));
    }
    Ok((1u64..1 << opens.len())
        .map(|mask| PointSet(mask).iter().map(|i| opens[i]).collect::<Vec<_>>())
        .filter(|b: &Vec<OpenSet>| is_ideal_basis(z, b))
        .collect())
}

pub fn is_ideal_basis(z: &FiniteSpace, basis: &[OpenSet]) -> bool {
    let union_closed = basis.iter().all(|&a| basis.iter().all(|&b| basis.contains(&a.union(b))));
    let generates = z
        .opens()
        .iter()
        .all(|&u| basis.iter().filter(|b| b.is_subset(u)).fold(PointSet::EMPTY, |a, &b| a.union(b)) == u);
    union_closed && generates
}

/// Intersection-closed families of closed sets of which every closed set is
/// an intersection (the empty intersection being `Z`).
pub fn filtered_closed_bases(z: &FiniteSpace) -> Result<Vec<Vec<PointSet>>> {
    let n = z.points();
    let closed: Vec<PointSet> = z.opens().iter().map(|o| o.complement(n)).collect();
    if closed.len() > 16 {
        return Err(Error::CarrierTooLarge(closed.len()));
    }
    Ok((1u64..1 << closed.len())
        .map(|mask| PointSet(mask).iter().map(|i| closed[i]).collect::<Vec<_>>())
        .filter(|b: &Vec<PointSet>| is_filtered_closed_basis(z, b))
        .collect())
}

pub fn is_filtered_closed_basis(z: &FiniteSpace, basis: &[PointSet]) -> bool {
    let full = z.full();
    let closed_under = basis.iter().all(|&a| basis.iter().all(|&b| basis.contains(&a.intersection(b))));
    let generates = z.opens().iter().all(|&o| {
        let c = o.complement(z.points());
        basis.iter().filter(|b| c.is_subset(**b)).fold(full, |a, &b| a.intersection(b)) == c
    });
    basis.iter().all(|&c| z.is_closed(c)) && closed_under && generates
}
