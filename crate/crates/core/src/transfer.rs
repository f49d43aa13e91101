//! Exact model of `C(X,ℝ)` for a finite space `X`, filters on it built from
//! filters on the opens of `X`, and the preimage filters that lead back.
//!
//! A continuous real function on a finite space is constant on each
//! component, so `C(X,ℝ)` is `ℚ^c`-like: a vector of one value per component.
//! Regions are finite unions of cylinders whose factors are finite unions of
//! rational intervals; every comparison is decided exactly.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hyperconv::{solidity_check, HyperConvergence};
use crate::hyperfamily::{is_functionally_separated, up_closure, HyperFilter, HyperSet, IsotoneFamily};
use crate::space::{FiniteSpace, PointSet};

pub type Q = Ratio<i64>;

/// Default number of ladder steps.
pub const DEFAULT_DEPTH: usize = 8;
const MAX_COMPONENTS: usize = 16;

/// A subset of ℝ with finitely many rational breakpoints `p₀ < .. < p_{k-1}`,
/// stored as membership of the `2k+1` cells `(−∞,p₀), {p₀}, (p₀,p₁), .., (p_{k-1},∞)`.
/// Breakpoints that separate nothing are dropped, so equal sets are equal values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealSet {
    points: Vec<Q>,
    cells: Vec<bool>,
}

impl RealSet {
    pub fn empty() -> Self {
        RealSet { points: Vec::new(), cells: vec![false] }
    }

    pub fn all() -> Self {
        RealSet { points: Vec::new(), cells: vec![true] }
    }

    /// `(a,b)`; empty unless `a < b`.
    pub fn open_interval(a: Q, b: Q) -> Self {
        if a >= b {
            return Self::empty();
        }
        RealSet { points: vec![a, b], cells: vec![false, false, true, false, false] }
    }

    /// `[a,b]`; empty unless `a ≤ b`.
    pub fn closed_interval(a: Q, b: Q) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Self::empty(),
            std::cmp::Ordering::Equal => Self::point(a),
            std::cmp::Ordering::Less => RealSet { points: vec![a, b], cells: vec![false, true, true, true, false] },
        }
    }

    pub fn point(q: Q) -> Self {
        RealSet { points: vec![q], cells: vec![false, true, false] }
    }

    /// `(a,∞)`.
    pub fn above(a: Q) -> Self {
        RealSet { points: vec![a], cells: vec![false, false, true] }
    }

    /// `(−∞,b)`.
    pub fn below(b: Q) -> Self {
        RealSet { points: vec![b], cells: vec![true, false, false] }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|&c| !c)
    }

    pub fn contains(&self, q: Q) -> bool {
        match self.points.binary_search(&q) {
            Ok(i) => self.cells[2 * i + 1],
            Err(j) => self.cells[2 * j],
        }
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.points
    }

    /// Membership of each cell of a finer breakpoint list containing ours.
    fn refined(&self, points: &[Q]) -> Vec<bool> {
        let mut out = Vec::with_capacity(2 * points.len() + 1);
        // number of own breakpoints passed so far
        let mut j = 0;
        out.push(self.cells[0]);
        for &p in points {
            if j < self.points.len() && self.points[j] == p {
                out.push(self.cells[2 * j + 1]);
                j += 1;
            } else {
                out.push(self.cells[2 * j]);
            }
            out.push(self.cells[2 * j]);
        }
        out
    }

    fn normalized(points: Vec<Q>, cells: Vec<bool>) -> Self {
        let mut keep_points = Vec::with_capacity(points.len());
        let mut keep_cells = vec![cells[0]];
        for (i, p) in points.into_iter().enumerate() {
            let (at, after) = (cells[2 * i + 1], cells[2 * i + 2]);
            let before = *keep_cells.last().expect("nonempty");
            if before == at && at == after {
                continue;
            }
            keep_points.push(p);
            keep_cells.push(at);
            keep_cells.push(after);
        }
        RealSet { points: keep_points, cells: keep_cells }
    }

    fn combine(&self, other: &RealSet, op: impl Fn(bool, bool) -> bool) -> RealSet {
        let mut points: Vec<Q> = self.points.iter().chain(&other.points).copied().collect();
        points.sort();
        points.dedup();
        let a = self.refined(&points);
        let b = other.refined(&points);
        let cells = a.iter().zip(&b).map(|(&x, &y)| op(x, y)).collect();
        Self::normalized(points, cells)
    }

    pub fn intersection(&self, other: &RealSet) -> RealSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &RealSet) -> RealSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &RealSet) -> RealSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> RealSet {
        RealSet { points: self.points.clone(), cells: self.cells.iter().map(|c| !c).collect() }
    }

    pub fn is_subset(&self, other: &RealSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn meets(&self, other: &RealSet) -> bool {
        !self.intersection(other).is_empty()
    }

    /// Image under `t ↦ a·t + b` with `a > 0`.
    fn affine(&self, a: Q, b: Q) -> RealSet {
        RealSet { points: self.points.iter().map(|&p| a * p + b).collect(), cells: self.cells.clone() }
    }

    /// The maximal intervals making up the set, as `(lower, upper)` bounds.
    fn intervals(&self) -> Vec<(Bound, Bound)> {
        let last = self.cells.len() - 1;
        let mut out = Vec::new();
        let mut start = None;
        for i in 0..=last {
            match (self.cells[i], start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    out.push((self.lower(s), self.upper(i - 1)));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((self.lower(s), self.upper(last)));
        }
        out
    }

    fn lower(&self, cell: usize) -> Bound {
        if cell == 0 {
            Bound::Infinite
        } else if cell % 2 == 1 {
            Bound::Closed(self.points[(cell - 1) / 2])
        } else {
            Bound::Open(self.points[cell / 2 - 1])
        }
    }

    fn upper(&self, cell: usize) -> Bound {
        if cell == self.cells.len() - 1 {
            Bound::Infinite
        } else if cell % 2 == 1 {
            Bound::Closed(self.points[(cell - 1) / 2])
        } else {
            Bound::Open(self.points[cell / 2])
        }
    }
}

#[derive(Clone, Copy)]
enum Bound {
    Infinite,
    Open(Q),
    Closed(Q),
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.intervals();
        if parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, (lo, hi)) in parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            match lo {
                Bound::Infinite => write!(f, "(-inf, ")?,
                Bound::Open(q) => write!(f, "({q}, ")?,
                Bound::Closed(q) => write!(f, "[{q}, ")?,
            }
            match hi {
                Bound::Infinite => write!(f, "inf)")?,
                Bound::Open(q) => write!(f, "{q})")?,
                Bound::Closed(q) => write!(f, "{q}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for RealSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One representative per cell of a breakpoint list.
fn cell_samples(points: &[Q]) -> Vec<Q> {
    let one = Q::from_integer(1);
    match (points.first(), points.last()) {
        (Some(&first), Some(&last)) => {
            let mut out = vec![first - one];
            for (i, &p) in points.iter().enumerate() {
                out.push(p);
                out.push(match points.get(i + 1) {
                    Some(&next) => (p + next) / Q::from_integer(2),
                    None => last + one,
                });
            }
            out
        }
        _ => vec![Q::from_integer(0)],
    }
}

/// A product of one real set per component.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cylinder(pub Vec<RealSet>);

impl Cylinder {
    pub fn full(dim: usize) -> Self {
        Cylinder(vec![RealSet::all(); dim])
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().any(RealSet::is_empty)
    }

    pub fn intersection(&self, other: &Cylinder) -> Cylinder {
        Cylinder(self.0.iter().zip(&other.0).map(|(a, b)| a.intersection(b)).collect())
    }

    /// Containment of nonempty cylinders, factor by factor.
    fn is_subset(&self, other: &Cylinder) -> bool {
        self.is_empty() || self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(b))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.0.iter().zip(v).all(|(s, &q)| s.contains(q))
    }
}

impl fmt::Debug for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// A finite union of cylinders in `ℚ^dim`.
#[derive(Clone, Serialize)]
pub struct Region {
    dim: usize,
    cylinders: Vec<Cylinder>,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.cylinders).finish()
    }
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.is_subset(other) && other.is_subset(self)
    }
}

impl Region {
    pub fn empty(dim: usize) -> Self {
        Region { dim, cylinders: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Region { dim, cylinders: vec![Cylinder::full(dim)] }
    }

    pub fn from_cylinders(dim: usize, cylinders: Vec<Cylinder>) -> Self {
        assert!(cylinders.iter().all(|c| c.0.len() == dim), "cylinder of the wrong dimension");
        let mut r = Region { dim, cylinders };
        r.canonicalize();
        r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    /// Drops empty and redundant cylinders and merges pairs that differ in
    /// one factor only.
    fn canonicalize(&mut self) {
        self.cylinders.retain(|c| !c.is_empty());
        loop {
            let mut changed = false;
            'scan: for i in 0..self.cylinders.len() {
                for j in 0..self.cylinders.len() {
                    if i == j {
                        continue;
                    }
                    if self.cylinders[i].is_subset(&self.cylinders[j]) {
                        self.cylinders.remove(i);
                        changed = true;
                        break 'scan;
                    }
                    let (a, b) = (&self.cylinders[i], &self.cylinders[j]);
                    let differing: Vec<usize> = (0..self.dim).filter(|&k| a.0[k] != b.0[k]).collect();
                    if differing.len() == 1 {
                        let k = differing[0];
                        let merged = a.0[k].union(&b.0[k]);
                        self.cylinders[i].0[k] = merged;
                        self.cylinders.remove(j);
                        changed = true;
                        break 'scan;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    pub fn union(&self, other: &Region) -> Region {
        Region::from_cylinders(self.dim, self.cylinders.iter().chain(&other.cylinders).cloned().collect())
    }

    pub fn intersection(&self, other: &Region) -> Region {
        let cylinders =
            self.cylinders.iter().flat_map(|a| other.cylinders.iter().map(move |b| a.intersection(b))).collect();
        Region::from_cylinders(self.dim, cylinders)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.cylinders.iter().any(|c| c.contains(v))
    }

    /// A point of `self` outside `other`, if there is one.
    pub fn difference_witness(&self, other: &Region) -> Option<Vec<Q>> {
        assert_eq!(self.dim, other.dim, "regions of different dimension");
        let samples: Vec<Vec<Q>> = (0..self.dim)
            .map(|k| {
                let mut points: Vec<Q> = self
                    .cylinders
                    .iter()
                    .chain(&other.cylinders)
                    .flat_map(|c| c.0[k].breakpoints().iter().copied())
                    .collect();
                points.sort();
                points.dedup();
                cell_samples(&points)
            })
            .collect();
        let mut point = Vec::with_capacity(self.dim);
        let inside: Vec<&Cylinder> = self.cylinders.iter().collect();
        let outside: Vec<&Cylinder> = other.cylinders.iter().collect();
        search_difference(&samples, 0, &inside, &outside, &mut point).then_some(point)
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.difference_witness(other).is_none()
    }

    /// Image under `t ↦ a·t + b` applied to every component.
    pub fn rescale(&self, a: Q, b: Q) -> Result<Region> {
        if a <= Q::from_integer(0) {
            return Err(Error::NonPositiveSlope);
        }
        Ok(self.map_factors(|_, s| s.affine(a, b)))
    }

    /// `R + v`.
    pub fn translate(&self, shift: &[Q]) -> Region {
        assert_eq!(shift.len(), self.dim, "shift of the wrong dimension");
        self.map_factors(|k, s| s.affine(Q::from_integer(1), shift[k]))
    }

    fn map_factors(&self, f: impl Fn(usize, &RealSet) -> RealSet) -> Region {
        let cylinders =
            self.cylinders.iter().map(|c| Cylinder(c.0.iter().enumerate().map(|(k, s)| f(k, s)).collect())).collect();
        Region::from_cylinders(self.dim, cylinders)
    }
}

/// Depth-first search over cell representatives, one component at a time,
/// keeping only the cylinders that still contain the partial point.
fn search_difference(
    samples: &[Vec<Q>],
    k: usize,
    inside: &[&Cylinder],
    outside: &[&Cylinder],
    point: &mut Vec<Q>,
) -> bool {
    if inside.is_empty() {
        return false;
    }
    if outside.is_empty() {
        let c = inside[0];
        for (j, row) in samples.iter().enumerate().skip(k) {
            point.push(*row.iter().find(|&&q| c.0[j].contains(q)).expect("nonempty factor"));
        }
        return true;
    }
    if k == samples.len() {
        return false;
    }
    for &q in &samples[k] {
        let inner: Vec<&Cylinder> = inside.iter().copied().filter(|c| c.0[k].contains(q)).collect();
        if inner.is_empty() {
            continue;
        }
        let outer: Vec<&Cylinder> = outside.iter().copied().filter(|c| c.0[k].contains(q)).collect();
        point.push(q);
        if search_difference(samples, k + 1, &inner, &outer, point) {
            return true;
        }
        point.pop();
    }
    false
}

/// `C(X,ℝ)` as vectors of component values.
#[derive(Clone, Debug)]
pub struct RealModel {
    space: FiniteSpace,
}

impl RealModel {
    pub fn new(space: &FiniteSpace) -> Result<Self> {
        if space.components().len() > MAX_COMPONENTS {
            return Err(Error::CarrierTooLarge(space.components().len()));
        }
        Ok(RealModel { space: space.clone() })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.components().len()
    }

    pub fn blocks(&self) -> &[PointSet] {
        self.space.components()
    }

    /// Union of the components in a component mask; always open.
    pub fn union_of(&self, components: u64) -> PointSet {
        PointSet(components).iter().fold(PointSet::EMPTY, |acc, t| acc.union(self.blocks()[t]))
    }

    fn open_index_of(&self, components: u64) -> usize {
        self.space.open_index(self.union_of(components)).expect("unions of components are open")
    }

    /// `f⁻(W)` for a function given by its component values.
    pub fn preimage(&self, values: &[Q], w: &RealSet) -> PointSet {
        let mask = values.iter().enumerate().filter(|(_, &v)| w.contains(v)).fold(0u64, |a, (t, _)| a | 1 << t);
        self.union_of(mask)
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::from_integer(0); self.dim()]
    }

    /// The single function `0̄`.
    pub fn zero_region(&self) -> Region {
        Region::from_cylinders(self.dim(), vec![Cylinder(vec![RealSet::point(Q::from_integer(0)); self.dim()])])
    }
}

/// `W_n = (−1/(n+1), 1/(n+1))`.
pub fn ladder(n: usize) -> RealSet {
    let r = Q::new(1, n as i64 + 1);
    RealSet::open_interval(-r, r)
}

/// `{f : f⁻(W) ∈ K}` for any hyperset `K`: a cylinder per component set `T`
/// whose union lies in `K`, with values in `W` exactly on `T`.
pub fn bracket_region_of_kernel(model: &RealModel, kernel: HyperSet, w: &RealSet) -> Region {
    let dim = model.dim();
    let outside = w.complement();
    let cylinders = (0..1u64 << dim)
        .filter(|&t| kernel >> model.open_index_of(t) & 1 == 1)
        .map(|t| Cylinder((0..dim).map(|k| if t >> k & 1 == 1 { w.clone() } else { outside.clone() }).collect()))
        .collect();
    Region::from_cylinders(dim, cylinders)
}

/// Where the functions of a bracket are evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    Set(RealSet),
    /// The closed point `{0}`, with `[𝒦,{0}] = {f : A ⊆ f⁻(0) for some A ∈ 𝒦}`.
    Zero,
}

/// `[𝒦,W]` as a region.
pub fn bracket_region(model: &RealModel, family: &IsotoneFamily, window: &Window) -> Region {
    let dim = model.dim();
    match window {
        Window::Set(w) => bracket_region_of_kernel(model, family.mask(&model.space), w),
        Window::Zero => {
            let zero = RealSet::point(Q::from_integer(0));
            let cylinders = family
                .minimals()
                .iter()
                .map(|&a| {
                    Cylinder(
                        model.blocks().iter().map(|b| if b.meets(a) { zero.clone() } else { RealSet::all() }).collect(),
                    )
                })
                .collect();
            Region::from_cylinders(dim, cylinders)
        }
    }
}

/// A filter on `C(X,ℝ)` given by a descending base indexed by ladder depth.
/// Level `depth` is kept as a probe for stabilization.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolicFilter {
    levels: Vec<Region>,
}

impl SymbolicFilter {
    pub fn new(levels: Vec<Region>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::TruncationInsufficient { depth: levels.len().saturating_sub(1) });
        }
        if let Some(n) = levels.iter().position(Region::is_empty) {
            return Err(Error::EmptyBase(n));
        }
        if let Some(n) = (1..levels.len()).find(|&n| !levels[n].is_subset(&levels[n - 1])) {
            return Err(Error::InconsistentSpec(format!("base is not descending at level {n}")));
        }
        Ok(SymbolicFilter { levels })
    }

    /// The filter generated by one region.
    pub fn constant(region: Region, depth: usize) -> Result<Self> {
        Self::new(vec![region; depth + 1])
    }

    pub fn principal_at_zero(model: &RealModel, depth: usize) -> Result<Self> {
        Self::constant(model.zero_region(), depth)
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Region] {
        &self.levels
    }

    /// `self ≤ finer` up to the truncation: every level contains the deepest
    /// level of `finer`.
    pub fn leq(&self, finer: &SymbolicFilter) -> bool {
        let deepest = &finer.levels[finer.depth()];
        self.levels.iter().all(|l| deepest.is_subset(l))
    }
}

fn cumulative(levels: Vec<Region>) -> Vec<Region> {
    let mut out: Vec<Region> = Vec::with_capacity(levels.len());
    for l in levels {
        let next = match out.last() {
            Some(prev) => prev.intersection(&l),
            None => l,
        };
        out.push(next);
    }
    out
}

/// `[α,𝒩(0)]` truncated: level `n` is `[𝒪^♮(α),W_n]`, intersected with the
/// levels above it.
pub fn erected_filter(model: &RealModel, alpha: HyperFilter, depth: usize) -> Result<SymbolicFilter> {
    sup_erected(model, &[alpha], depth)
}

/// `⋁ₙ [αₙ,Wₙ]` truncated. A list shorter than `depth + 1` repeats its last
/// filter.
pub fn sup_erected(model: &RealModel, alphas: &[HyperFilter], depth: usize) -> Result<SymbolicFilter> {
    let last = alphas.last().ok_or(Error::EmptyBase(0))?;
    let levels = (0..=depth)
        .map(|n| {
            let alpha = alphas.get(n).unwrap_or(last);
            bracket_region_of_kernel(model, alpha.regularized(&model.space).kernel(), &ladder(n))
        })
        .collect();
    SymbolicFilter::new(cumulative(levels))
}

/// `R⁻(W) = {f⁻(W) : f ∈ R}` as a hyperset. Within a cylinder each component
/// is forced into the preimage, forced out, or free to go either way.
pub fn region_preimage(model: &RealModel, region: &Region, w: &RealSet) -> HyperSet {
    let mut out = 0;
    for c in region.cylinders() {
        let mut forced = 0u64;
        let mut free = Vec::new();
        for (t, s) in c.0.iter().enumerate() {
            let inside = s.meets(w);
            let outside = !s.is_subset(w);
            match (inside, outside) {
                (true, false) => forced |= 1 << t,
                (true, true) => free.push(t),
                _ => {}
            }
        }
        for pick in 0..1u64 << free.len() {
            let extra = PointSet(pick).iter().fold(0u64, |a, j| a | 1 << free[j]);
            out |= 1 << model.open_index_of(forced | extra);
        }
    }
    out
}

/// The filter `𝓕⁻(W)` on the opens, read off the deepest level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Preimage {
    pub filter: HyperFilter,
    /// The two deepest levels give the same kernel.
    pub stabilized: bool,
}

pub fn filter_preimage(model: &RealModel, filter: &SymbolicFilter, w: &RealSet) -> Result<Preimage> {
    let n = filter.depth();
    let deep = region_preimage(model, &filter.levels[n], w);
    let before = region_preimage(model, &filter.levels[n - 1], w);
    Ok(Preimage { filter: HyperFilter::new(deep)?, stabilized: deep == before })
}

/// [`filter_preimage`], failing when the truncation has not stabilized.
pub fn stable_preimage(model: &RealModel, filter: &SymbolicFilter, w: &RealSet) -> Result<HyperFilter> {
    let p = filter_preimage(model, filter, w)?;
    if !p.stabilized {
        return Err(Error::TruncationInsufficient { depth: filter.depth() });
    }
    Ok(p.filter)
}

fn require_solid(model: &RealModel, tau: &HyperConvergence) -> Result<()> {
    if tau.space() != model.space() {
        return Err(Error::InconsistentSpec("hyperconvergence lives on another space".into()));
    }
    let s = solidity_check(tau);
    let failing: Vec<&str> = [
        ("lower", s.lower),
        ("upper regular", s.upper_regular),
        ("compact", s.compact),
        ("directed sups", s.directed_sups),
        ("pseudotopology", s.pseudotopology),
    ]
    .iter()
    .filter(|(_, ok)| !ok)
    .map(|(name, _)| *name)
    .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Error::NotSolid(failing.join(", ")))
    }
}

/// `0̄ ∈ lim_{τ^⇑} 𝓕`, decided as `X ∈ lim_τ 𝓕⁻(W_n)` for every `n < depth`.
pub fn lift_limit_at_zero(tau: &HyperConvergence, model: &RealModel, filter: &SymbolicFilter) -> Result<bool> {
    require_solid(model, tau)?;
    let top = model.space.open_count() - 1;
    for n in 0..filter.depth() {
        let p = stable_preimage(model, filter, &ladder(n))?;
        if !tau.conv().converges(p.kernel(), top) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `0̄ ∈ lim_{τ^⇑} 𝓕` tested on the given open sets `O` of ℝ one by one:
/// `0̄⁻(O)` is `X` or `∅` and must be a limit of `𝓕⁻(O)`.
pub fn zero_limit_by_probes(
    tau: &HyperConvergence,
    model: &RealModel,
    filter: &SymbolicFilter,
    probes: &[RealSet],
) -> Result<bool> {
    if tau.space() != model.space() {
        return Err(Error::InconsistentSpec("hyperconvergence lives on another space".into()));
    }
    let top = model.space.open_count() - 1;
    for o in probes {
        let p = stable_preimage(model, filter, o)?;
        let target = if o.contains(Q::from_integer(0)) { top } else { 0 };
        if !tau.conv().converges(p.kernel(), target) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Open subsets of ℝ used by [`zero_limit_by_probes`]: the ladder and a few
/// others on both sides of `0`.
pub fn standard_probes(depth: usize) -> Vec<RealSet> {
    let q = |a: i64, b: i64| Q::new(a, b);
    let mut out: Vec<RealSet> = (0..depth).map(ladder).collect();
    out.push(RealSet::all());
    out.push(RealSet::open_interval(q(-2, 1), q(2, 1)));
    out.push(RealSet::open_interval(q(-1, 3), q(5, 1)));
    out.push(ladder(6).union(&RealSet::open_interval(q(1, 1), q(2, 1))));
    out.push(RealSet::empty());
    out.push(RealSet::open_interval(q(1, 2), q(3, 1)));
    out.push(RealSet::open_interval(q(0, 1), q(1, 1)));
    out.push(RealSet::below(q(-1, 1)).union(&RealSet::above(q(1, 1))));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransferVerdict {
    /// `𝒪^♮(α) ≤ [α,𝒩(0)]⁻(W)`.
    pub leq: bool,
    /// `𝒪^♮(α) = 𝒪^♮([α,𝒩(0)]⁻(W))`.
    pub eq: bool,
    /// `𝒪^♮(α)` is functionally separated.
    pub separated: bool,
}

/// Compares `α` with the preimage of its erected filter.
pub fn verify_transfer_compact(
    model: &RealModel,
    alpha: HyperFilter,
    w: &RealSet,
    depth: usize,
) -> Result<TransferVerdict> {
    let space = &model.space;
    let regular = alpha.regularized(space).kernel();
    let erected = erected_filter(model, alpha, depth)?;
    let back = stable_preimage(model, &erected, w)?.kernel();
    let family = IsotoneFamily::from_mask(space, regular)?;
    Ok(TransferVerdict {
        leq: back & !regular == 0,
        eq: up_closure(space, back) == regular,
        separated: is_functionally_separated(space, &family),
    })
}

/// `𝓕^{𝒩(0)} = ⋁ₙ [𝓕⁻(W_n),W_n]`, truncated one level shallower than
/// `filter`: the preimage at `W_depth` is what the probe level cannot certify.
pub fn f_upper(model: &RealModel, filter: &SymbolicFilter) -> Result<SymbolicFilter> {
    let levels = (0..filter.depth())
        .map(|n| {
            let w = ladder(n);
            let kernel = stable_preimage(model, filter, &w)?.kernel();
            Ok(bracket_region_of_kernel(model, kernel, &w))
        })
        .collect::<Result<Vec<_>>>()?;
    SymbolicFilter::new(cumulative(levels))
}

/// `Δ₁(Δ₂⁻α ∨ Δ₃⁻𝒩)` with `Δ = {(f,A,k) : A ⊆ f⁻(W_k)}`, `k ≤ depth`, and
/// the cofinite filter replaced by the tails `{k : k ≥ n}`. Level `n` is
/// `{f : A ⊆ f⁻(W_k) for some A ∈ 𝒪^♮(α), n ≤ k ≤ depth}`.
pub fn delta_reconstruction(model: &RealModel, alpha: HyperFilter, depth: usize) -> Result<SymbolicFilter> {
    let space = &model.space;
    let members = space.opens_of_mask(alpha.regularized(space).kernel());
    let dim = model.dim();
    let levels = (0..=depth)
        .map(|n| {
            let cylinders = (n..=depth)
                .flat_map(|k| {
                    let w = ladder(k);
                    members.iter().map(move |&a| {
                        Cylinder(
                            model
                                .blocks()
                                .iter()
                                .map(|b| if b.meets(a) { w.clone() } else { RealSet::all() })
                                .collect(),
                        )
                    })
                })
                .collect();
            Region::from_cylinders(dim, cylinders)
        })
        .collect();
    SymbolicFilter::new(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperconv::scott_convergence;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn real_set_algebra() {
        let a = RealSet::open_interval(q(-1, 1), q(1, 1));
        let b = RealSet::closed_interval(q(0, 1), q(2, 1));
        assert_eq!(a.intersection(&b).to_string(), "[0, 1)");
        assert_eq!(a.union(&b).to_string(), "(-1, 2]");
        assert_eq!(a.complement().to_string(), "(-inf, -1] ∪ [1, inf)");
        assert_eq!(a.union(&a.complement()), RealSet::all());
        assert!(a.difference(&a).is_empty());
        assert!(RealSet::point(q(0, 1)).is_subset(&a));
        assert!(!a.contains(q(1, 1)) && a.contains(q(-1, 2)));
        assert_eq!(ladder(3).to_string(), "(-1/4, 1/4)");
        assert_eq!(a.affine(q(2, 1), q(0, 1)), RealSet::open_interval(q(-2, 1), q(2, 1)));
    }

    #[test]
    fn region_containment() {
        let full = Region::full(2);
        let half = Region::from_cylinders(2, vec![Cylinder(vec![RealSet::above(q(0, 1)), RealSet::all()])]);
        let rest = Region::from_cylinders(2, vec![Cylinder(vec![RealSet::below(q(1, 1)), RealSet::all()])]);
        assert!(half.is_subset(&full));
        assert!(!full.is_subset(&half));
        assert_eq!(half.union(&rest), full);
        let w = full.difference_witness(&half).unwrap();
        assert!(!half.contains(&w) && full.contains(&w));
    }

    #[test]
    fn bracket_examples() {
        let d = FiniteSpace::discrete(2);
        let model = RealModel::new(&d).unwrap();
        let fam = IsotoneFamily::principal(&d, ps(&[0]));
        let r = bracket_region(&model, &fam, &Window::Set(ladder(0)));
        let expect = Region::from_cylinders(2, vec![Cylinder(vec![ladder(0), RealSet::all()])]);
        assert_eq!(r, expect);
        assert_eq!(r.cylinders().len(), 1);
        let s = FiniteSpace::sierpinski();
        let model = RealModel::new(&s).unwrap();
        let fam = IsotoneFamily::principal(&s, ps(&[1]));
        assert_eq!(
            bracket_region(&model, &fam, &Window::Set(ladder(2))),
            Region::from_cylinders(1, vec![Cylinder(vec![ladder(2)])])
        );
        assert_eq!(bracket_region(&model, &IsotoneFamily::full(), &Window::Set(ladder(0))), Region::full(1));
    }

    #[test]
    fn preimage_examples() {
        let d = FiniteSpace::discrete(2);
        let model = RealModel::new(&d).unwrap();
        let alpha = HyperFilter::of_family(&d, &IsotoneFamily::principal(&d, ps(&[0]))).unwrap();
        let f = erected_filter(&model, alpha, DEFAULT_DEPTH).unwrap();
        let p = filter_preimage(&model, &f, &ladder(0)).unwrap();
        assert!(p.stabilized);
        assert_eq!(p.filter.kernel_opens(&d), vec![ps(&[0]), d.full()]);

        let s = FiniteSpace::sierpinski();
        let model = RealModel::new(&s).unwrap();
        let alpha = HyperFilter::of_family(&s, &IsotoneFamily::principal(&s, ps(&[1]))).unwrap();
        let f = erected_filter(&model, alpha, DEFAULT_DEPTH).unwrap();
        assert_eq!(stable_preimage(&model, &f, &ladder(0)).unwrap().kernel_opens(&s), vec![s.full()]);
        let v = verify_transfer_compact(&model, alpha, &ladder(0), DEFAULT_DEPTH).unwrap();
        assert_eq!(v, TransferVerdict { leq: true, eq: false, separated: false });

        // one component: constant functions only reach ∅ and X
        let everything = SymbolicFilter::constant(Region::full(1), 2).unwrap();
        assert_eq!(
            stable_preimage(&model, &everything, &ladder(0)).unwrap().kernel_opens(&s),
            vec![PointSet::EMPTY, s.full()]
        );
        let model = RealModel::new(&d).unwrap();
        let everything = SymbolicFilter::constant(Region::full(2), 2).unwrap();
        assert_eq!(stable_preimage(&model, &everything, &ladder(0)).unwrap().kernel(), d.all_opens_mask());
    }

    #[test]
    fn lift_at_zero() {
        let d = FiniteSpace::discrete(2);
        let model = RealModel::new(&d).unwrap();
        let scott = scott_convergence(&d).unwrap();
        let top = HyperFilter::from_opens(&d, &[d.full()]).unwrap();
        let f = erected_filter(&model, top, DEFAULT_DEPTH).unwrap();
        assert!(lift_limit_at_zero(&scott, &model, &f).unwrap());
        let far = Region::from_cylinders(2, vec![Cylinder(vec![RealSet::open_interval(q(2, 1), q(3, 1)); 2])]);
        let pinned = SymbolicFilter::constant(far, DEFAULT_DEPTH).unwrap();
        assert!(!lift_limit_at_zero(&scott, &model, &pinned).unwrap());
        assert!(!zero_limit_by_probes(&scott, &model, &pinned, &standard_probes(DEFAULT_DEPTH)).unwrap());
    }

    #[test]
    fn auxiliary_constructions() {
        let d = FiniteSpace::discrete(2);
        let model = RealModel::new(&d).unwrap();
        let alpha = HyperFilter::of_family(&d, &IsotoneFamily::principal(&d, ps(&[0]))).unwrap();
        let erected = erected_filter(&model, alpha, 4).unwrap();
        let delta = delta_reconstruction(&model, alpha, 4).unwrap();
        assert!(erected.levels().iter().zip(delta.levels()).all(|(a, b)| a == b));
        let zero = SymbolicFilter::principal_at_zero(&model, 4).unwrap();
        assert!(f_upper(&model, &zero).unwrap().leq(&zero));
        let r = bracket_region(&model, &IsotoneFamily::principal(&d, ps(&[0])), &Window::Set(ladder(0)));
        assert_eq!(r.rescale(q(0, 1), q(0, 1)).unwrap_err(), Error::NonPositiveSlope);
        let scaled = r.rescale(q(2, 1), q(0, 1)).unwrap();
        let wide = RealSet::open_interval(q(-2, 1), q(2, 1));
        assert_eq!(scaled, bracket_region(&model, &IsotoneFamily::principal(&d, ps(&[0])), &Window::Set(wide)));
        let moved = r.translate(&[q(1, 1), q(0, 1)]).translate(&[q(-1, 1), q(0, 1)]);
        assert_eq!(moved, r);
    }

    #[test]
    fn zero_bracket_is_finer_than_erected() {
        let d = FiniteSpace::discrete(3);
        let model = RealModel::new(&d).unwrap();
        let fam = IsotoneFamily::principal(&d, ps(&[0, 2]));
        let polar = bracket_region(&model, &fam, &Window::Zero);
        let alpha = HyperFilter::of_family(&d, &fam).unwrap();
        let erected = erected_filter(&model, alpha, DEFAULT_DEPTH).unwrap();
        assert!(erected.levels().iter().all(|l| polar.is_subset(l)));
    }
}
