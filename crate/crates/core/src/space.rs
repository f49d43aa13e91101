//! Finite topological spaces.
//!
//! A finite topology is the same thing as a preorder on its points (Alexandrov
//! duality): the opens are exactly the up-sets of the specialization preorder,
//! where `x ⊑ y` iff every open containing `x` also contains `y`. Spaces are
//! built either from an explicit list of opens (validated, never repaired) or
//! from a list of preorder edges, and are immutable afterwards.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of points a [`PointSet`] can address.
pub const MAX_POINTS: usize = 64;

/// A subset of the points `{0, .., n-1}` of a finite space, as a bit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

/// An element of `C(X,$)`: an open set of some space.
pub type OpenSet = PointSet;

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        PointSet(points.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = points.iter().find(|&&p| p >= MAX_POINTS) {
            return Err(serde::de::Error::custom(format!("point id {bad} out of range")));
        }
        Ok(PointSet::from_points(points))
    }
}

/// A finite topological space.
///
/// Opens are kept sorted by their bit pattern, so `∅` is first and the full
/// set is last. The specialization preorder and the comparability components
/// are derived once at construction.
#[derive(Clone)]
pub struct FiniteSpace {
    n: usize,
    opens: Vec<OpenSet>,
    index: HashMap<OpenSet, usize>,
    // smallest open containing each point
    hull: Vec<OpenSet>,
    components: Vec<PointSet>,
    // per open index: masks of the opens containing it / contained in it
    above: Vec<u64>,
    below: Vec<u64>,
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.opens == other.opens
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace").field("points", &self.n).field("opens", &self.opens).finish()
    }
}

/// On-disk description of a space: either explicit opens or preorder edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub le: Option<Vec<[usize; 2]>>,
}

impl FiniteSpace {
    /// Builds and validates a space from a description.
    pub fn build(spec: &SpaceSpec) -> Result<Self> {
        match (&spec.opens, &spec.le) {
            (Some(_), Some(_)) => Err(Error::InconsistentSpec("give either `opens` or `le`, not both".into())),
            (None, None) => Err(Error::InconsistentSpec("missing `opens` or `le`".into())),
            (Some(opens), None) => {
                let mut sets = Vec::with_capacity(opens.len());
                for open in opens {
                    if let Some(&bad) = open.iter().find(|&&p| p >= spec.points) {
                        return Err(Error::InconsistentSpec(format!(
                            "point id {bad} out of range for {} points",
                            spec.points
                        )));
                    }
                    sets.push(PointSet::from_points(open.iter().copied()));
                }
                Self::from_opens(spec.points, sets)
            }
            (None, Some(le)) => {
                if let Some(bad) = le.iter().flatten().find(|&&p| p >= spec.points) {
                    return Err(Error::InconsistentSpec(format!(
                        "point id {bad} out of range for {} points",
                        spec.points
                    )));
                }
                Self::from_preorder(spec.points, le.iter().map(|&[a, b]| (a, b)))
            }
        }
    }

    /// Validates that `opens` is a topology on `n` points.
    pub fn from_opens(n: usize, opens: Vec<OpenSet>) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::SizeTooLarge { requested: n, max: MAX_POINTS });
        }
        let full = PointSet::full(n);
        let mut opens = opens;
        opens.sort_unstable();
        opens.dedup();
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(full)) {
            return Err(Error::InconsistentSpec(format!("{bad:?} is not a set of points")));
        }
        if opens.first() != Some(&PointSet::EMPTY) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if opens.last() != Some(&full) {
            return Err(Error::NotATopology("the whole space is not open".into()));
        }
        let lookup: HashSet<OpenSet> = opens.iter().copied().collect();
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                if !lookup.contains(&a.union(b)) {
                    return Err(Error::NotATopology(format!("{a:?} ∪ {b:?} is not open")));
                }
                if !lookup.contains(&a.intersection(b)) {
                    return Err(Error::NotATopology(format!("{a:?} ∩ {b:?} is not open")));
                }
            }
        }
        let hull =
            (0..n).map(|x| opens.iter().filter(|o| o.contains(x)).fold(full, |acc, &o| acc.intersection(o))).collect();
        Ok(Self::assemble(n, opens, hull))
    }

    /// The Alexandrov space of the preorder generated by `edges` (`a ⊑ b`).
    /// Opens are the up-sets.
    pub fn from_preorder<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_POINTS {
            return Err(Error::SizeTooLarge { requested: n, max: MAX_POINTS });
        }
        // up[x] = points above x, closed transitively
        let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InconsistentSpec(format!("edge ({a},{b}) out of range")));
            }
            up[a] = up[a].union(PointSet::singleton(b));
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let grown = up[x].iter().fold(up[x], |acc, y| acc.union(up[y]));
                if grown != up[x] {
                    up[x] = grown;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Self::from_hulls(n, up))
    }

    /// Builds the Alexandrov space whose smallest neighbourhoods are `hull`.
    /// `hull[x]` must contain `x` and be transitively closed.
    fn from_hulls(n: usize, hull: Vec<OpenSet>) -> Self {
        let opens = union_closure(&hull);
        Self::assemble(n, opens, hull)
    }

    fn assemble(n: usize, opens: Vec<OpenSet>, hull: Vec<OpenSet>) -> Self {
        let index = opens.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let components = comparability_components(n, &hull);
        let (mut above, mut below) = (Vec::new(), Vec::new());
        if opens.len() <= 64 {
            for &u in &opens {
                let mut up = 0u64;
                let mut down = 0u64;
                for (j, &v) in opens.iter().enumerate() {
                    if u.is_subset(v) {
                        up |= 1 << j;
                    }
                    if v.is_subset(u) {
                        down |= 1 << j;
                    }
                }
                above.push(up);
                below.push(down);
            }
        }
        FiniteSpace { n, opens, index, hull, components, above, below }
    }

    pub fn sierpinski() -> Self {
        Self::from_preorder(2, [(0, 1)]).expect("valid preorder")
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_preorder(n, []).expect("valid preorder")
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_opens(n, vec![PointSet::EMPTY, PointSet::full(n)]).expect("indiscrete topology")
    }

    /// The chain `0 ⊑ 1 ⊑ .. ⊑ n-1`; opens are the final segments.
    pub fn chain(n: usize) -> Self {
        Self::from_preorder(n, (1..n).map(|i| (i - 1, i))).expect("valid preorder")
    }

    /// Disjoint union, points of `other` shifted by `self.points()`.
    pub fn disjoint_union(&self, other: &FiniteSpace) -> Self {
        let shift = self.n;
        let mut hull = self.hull.clone();
        hull.extend(other.hull.iter().map(|h| PointSet(h.0 << shift)));
        Self::from_hulls(self.n + other.n, hull)
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// The opens, sorted by bit pattern.
    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.index.contains_key(&set)
    }

    /// Position of an open in [`Self::opens`].
    pub fn open_index(&self, set: OpenSet) -> Option<usize> {
        self.index.get(&set).copied()
    }

    /// Whether the opens fit in a 64-bit mask over open indices.
    pub fn has_small_lattice(&self) -> bool {
        self.opens.len() <= 64
    }

    /// Mask of the opens containing the open with index `i`.
    /// Empty unless [`Self::has_small_lattice`].
    pub fn opens_above(&self, i: usize) -> u64 {
        self.above[i]
    }

    /// Mask of the opens contained in the open with index `i`.
    pub fn opens_below(&self, i: usize) -> u64 {
        self.below[i]
    }

    /// Mask of all open indices.
    pub fn all_opens_mask(&self) -> u64 {
        low_bits(self.opens.len())
    }

    /// The opens selected by a mask of open indices.
    pub fn opens_of_mask(&self, mask: u64) -> Vec<OpenSet> {
        PointSet(mask).iter().map(|i| self.opens[i]).collect()
    }

    /// Mask of the given opens; panics on a set that is not open.
    pub fn mask_of_opens(&self, opens: &[OpenSet]) -> u64 {
        opens.iter().fold(0, |acc, &o| acc | 1u64 << self.open_index(o).unwrap_or_else(|| panic!("{o:?} is not open")))
    }

    /// Smallest open containing `x`.
    pub fn hull_of_point(&self, x: usize) -> OpenSet {
        self.hull[x]
    }

    /// Smallest open containing `set`.
    pub fn hull(&self, set: PointSet) -> OpenSet {
        set.iter().fold(PointSet::EMPTY, |acc, x| acc.union(self.hull[x]))
    }

    /// Largest open contained in `set`.
    pub fn interior(&self, set: PointSet) -> OpenSet {
        set.iter().filter(|&x| self.hull[x].is_subset(set)).fold(PointSet::EMPTY, |acc, x| acc.union(self.hull[x]))
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: PointSet) -> PointSet {
        self.interior(set.complement(self.n)).complement(self.n)
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        self.is_open(set.complement(self.n))
    }

    /// `x ⊑ y`: every open containing `x` contains `y`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.hull[x].contains(y)
    }

    /// Specialization pairs `(x, y)` with `x ≠ y`.
    pub fn specialization_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| self.hull[x].iter().filter(move |&y| y != x).map(move |y| (x, y))).collect()
    }

    /// Connected components of the symmetrized specialization preorder.
    pub fn components(&self) -> &[PointSet] {
        &self.components
    }

    /// Union of the components meeting `set`.
    pub fn component_saturation(&self, set: PointSet) -> PointSet {
        self.components.iter().filter(|c| c.meets(set)).fold(PointSet::EMPTY, |acc, &c| acc.union(c))
    }

    pub fn spec(&self) -> SpaceSpec {
        SpaceSpec { points: self.n, opens: Some(self.opens.iter().map(|o| o.to_vec()).collect()), le: None }
    }

    /// Product topology; point `(x, y)` is numbered `x * other.points() + y`.
    pub fn product(&self, other: &FiniteSpace) -> Result<Self> {
        let n = self.n * other.n;
        if n > MAX_POINTS {
            return Err(Error::SizeTooLarge { requested: n, max: MAX_POINTS });
        }
        let boxed = |u: OpenSet, v: OpenSet| {
            PointSet::from_points(u.iter().flat_map(|x| v.iter().map(move |y| x * other.n + y)))
        };
        let hull = (0..n).map(|p| boxed(self.hull[p / other.n], other.hull[p % other.n])).collect();
        Ok(Self::from_hulls(n, hull))
    }

    /// Whether `table` (point of `self` ↦ point of `target`) is continuous.
    pub fn is_continuous(&self, target: &FiniteSpace, table: &[usize]) -> bool {
        table.len() == self.n
            && table.iter().all(|&z| z < target.n)
            && target.opens.iter().all(|&u| self.is_open(preimage(table, u)))
    }

    /// Every continuous map `self → target`, in lexicographic table order.
    pub fn continuous_maps(&self, target: &FiniteSpace) -> Vec<ContinuousMap> {
        let mut out = Vec::new();
        if target.n == 0 {
            if self.n == 0 {
                out.push(ContinuousMap { table: Vec::new() });
            }
            return out;
        }
        let mut table = vec![0usize; self.n];
        loop {
            if self.is_continuous(target, &table) {
                out.push(ContinuousMap { table: table.clone() });
            }
            // odometer, last point fastest
            let mut i = self.n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                table[i] += 1;
                if table[i] < target.n {
                    break;
                }
                table[i] = 0;
            }
        }
    }

    pub fn separation_profile(&self) -> SeparationProfile {
        let n = self.n;
        let t0 = (0..n).all(|x| (0..n).all(|y| x == y || !(self.specializes(x, y) && self.specializes(y, x))));
        let t1 = (0..n).all(|x| self.hull[x] == PointSet::singleton(x));
        let closed: Vec<PointSet> = self.opens.iter().map(|o| o.complement(n)).collect();
        // Two sets have disjoint open neighbourhoods iff their hulls are disjoint.
        let normal = closed
            .iter()
            .enumerate()
            .all(|(i, &c)| closed[i + 1..].iter().filter(|d| !d.meets(c)).all(|&d| !self.hull(c).meets(self.hull(d))));
        let regular =
            (0..n).all(|x| closed.iter().filter(|c| !c.contains(x)).all(|&c| !self.hull[x].meets(self.hull(c))));
        SeparationProfile { t0, t1, normal, regular }
    }
}

/// Separation axioms of a finite space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationProfile {
    pub t0: bool,
    pub t1: bool,
    pub normal: bool,
    /// Points and closed sets not containing them have disjoint neighbourhoods.
    pub regular: bool,
}

/// A continuous map between finite spaces, as a point table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuousMap {
    pub table: Vec<usize>,
}

impl ContinuousMap {
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `f⁻(U)`.
    pub fn preimage(&self, set: PointSet) -> PointSet {
        preimage(&self.table, set)
    }

    pub fn image(&self, set: PointSet) -> PointSet {
        PointSet::from_points(set.iter().map(|x| self.table[x]))
    }

    pub fn compose(&self, after: &ContinuousMap) -> ContinuousMap {
        ContinuousMap { table: self.table.iter().map(|&z| after.table[z]).collect() }
    }
}

/// Mask with the lowest `n` bits set.
pub fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn preimage(table: &[usize], set: PointSet) -> PointSet {
    PointSet::from_points(table.iter().enumerate().filter(|(_, &z)| set.contains(z)).map(|(x, _)| x))
}

/// All unions of the given sets, including the empty union, sorted.
fn union_closure(generators: &[PointSet]) -> Vec<PointSet> {
    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(PointSet::EMPTY);
    queue.push_back(PointSet::EMPTY);
    while let Some(set) = queue.pop_front() {
        for &g in generators {
            let next = set.union(g);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn comparability_components(n: usize, hull: &[PointSet]) -> Vec<PointSet> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for x in 0..n {
        for y in hull[x].iter() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<PointSet> = Vec::new();
    let mut root_block: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        let idx = *root_block.entry(r).or_insert_with(|| {
            blocks.push(PointSet::EMPTY);
            blocks.len() - 1
        });
        blocks[idx] = blocks[idx].union(PointSet::singleton(x));
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opens_of(space: &FiniteSpace) -> Vec<Vec<usize>> {
        space.opens().iter().map(|o| o.to_vec()).collect()
    }

    #[test]
    fn sierpinski_from_opens() {
        let spec = SpaceSpec { points: 2, opens: Some(vec![vec![], vec![1], vec![0, 1]]), le: None };
        let s = FiniteSpace::build(&spec).unwrap();
        assert!(s.specializes(0, 1));
        assert!(!s.specializes(1, 0));
        assert_eq!(s, FiniteSpace::sierpinski());
    }

    #[test]
    fn discrete_from_empty_preorder() {
        let spec = SpaceSpec { points: 3, opens: None, le: Some(vec![]) };
        let s = FiniteSpace::build(&spec).unwrap();
        assert_eq!(s.open_count(), 8);
    }

    #[test]
    fn rejects_missing_union() {
        let spec = SpaceSpec { points: 2, opens: Some(vec![vec![], vec![0], vec![1]]), le: None };
        assert!(matches!(FiniteSpace::build(&spec), Err(Error::NotATopology(_))));
        let spec = SpaceSpec { points: 2, opens: Some(vec![vec![], vec![0], vec![1], vec![0, 1]]), le: None };
        assert!(FiniteSpace::build(&spec).is_ok());
        let spec = SpaceSpec { points: 3, opens: Some(vec![vec![], vec![0, 1], vec![1, 2], vec![0, 1, 2]]), le: None };
        assert!(matches!(FiniteSpace::build(&spec), Err(Error::NotATopology(_))));
    }

    #[test]
    fn rejects_out_of_range_points() {
        let spec = SpaceSpec { points: 2, opens: Some(vec![vec![], vec![2], vec![0, 1]]), le: None };
        assert!(matches!(FiniteSpace::build(&spec), Err(Error::InconsistentSpec(_))));
        let spec = SpaceSpec { points: 2, opens: None, le: Some(vec![[0, 5]]) };
        assert!(matches!(FiniteSpace::build(&spec), Err(Error::InconsistentSpec(_))));
        let json = r#"{"points": 2, "opens": [[], [7], [0, 1]]}"#;
        let spec: SpaceSpec = serde_json::from_str(json).unwrap();
        assert!(FiniteSpace::build(&spec).is_err());
    }

    #[test]
    fn interior_and_closure() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.interior(PointSet::from_points([0])), PointSet::EMPTY);
        assert_eq!(s.interior(s.full()), s.full());
        assert_eq!(s.closure(PointSet::from_points([1])), s.full());
        assert_eq!(s.closure(PointSet::from_points([0])), PointSet::from_points([0]));
        let d = FiniteSpace::discrete(3);
        assert_eq!(d.interior(PointSet::from_points([0, 2])), PointSet::from_points([0, 2]));
    }

    #[test]
    fn interior_matches_union_of_contained_opens() {
        for space in
            [FiniteSpace::sierpinski(), FiniteSpace::chain(3), FiniteSpace::discrete(3), FiniteSpace::indiscrete(3)]
        {
            for bits in 0..(1u64 << space.points()) {
                let set = PointSet(bits);
                let brute = space.opens().iter().filter(|o| o.is_subset(set)).fold(PointSet::EMPTY, |a, &o| a.union(o));
                assert_eq!(space.interior(set), brute);
            }
        }
    }

    #[test]
    fn continuous_maps_counts() {
        let s = FiniteSpace::sierpinski();
        let maps = s.continuous_maps(&s);
        assert_eq!(maps.len(), 3);
        assert!(!maps.iter().any(|m| m.table == vec![1, 0]));
        let point = FiniteSpace::discrete(1);
        assert_eq!(point.continuous_maps(&FiniteSpace::chain(3)).len(), 3);
        // C(X,$) is in bijection with the opens of X
        let x = FiniteSpace::chain(3);
        let to_sierpinski = x.continuous_maps(&s);
        assert_eq!(to_sierpinski.len(), x.open_count());
        let mut preimages: Vec<_> = to_sierpinski.iter().map(|m| m.preimage(PointSet::singleton(1))).collect();
        preimages.sort();
        assert_eq!(preimages, x.opens());
    }

    #[test]
    fn components_examples() {
        assert_eq!(FiniteSpace::sierpinski().components().len(), 1);
        assert_eq!(FiniteSpace::discrete(4).components().len(), 4);
        let u = FiniteSpace::sierpinski().disjoint_union(&FiniteSpace::discrete(1));
        assert_eq!(u.components(), &[PointSet::from_points([0, 1]), PointSet::singleton(2)]);
    }

    #[test]
    fn products() {
        let s = FiniteSpace::sierpinski();
        let sq = s.product(&s).unwrap();
        assert_eq!(sq.points(), 4);
        // (x,y) ⊑ (x',y') iff componentwise
        for p in 0..4 {
            for q in 0..4 {
                let expect = s.specializes(p / 2, q / 2) && s.specializes(p % 2, q % 2);
                assert_eq!(sq.specializes(p, q), expect);
            }
        }
        let point = FiniteSpace::discrete(1);
        assert_eq!(opens_of(&s.product(&point).unwrap()), opens_of(&s));
        assert_eq!(FiniteSpace::discrete(2).product(&FiniteSpace::discrete(2)).unwrap(), FiniteSpace::discrete(4));
    }

    #[test]
    fn product_opens_are_unions_of_boxes() {
        let x = FiniteSpace::chain(2);
        let y = FiniteSpace::chain(3);
        let prod = x.product(&y).unwrap();
        let boxes: Vec<PointSet> = x
            .opens()
            .iter()
            .flat_map(|&u| y.opens().iter().map(move |&v| (u, v)))
            .map(|(u, v)| PointSet::from_points(u.iter().flat_map(|a| v.iter().map(move |b| a * 3 + b))))
            .collect();
        assert_eq!(union_closure(&boxes), prod.opens());
    }

    #[test]
    fn separation_examples() {
        let s = FiniteSpace::sierpinski().separation_profile();
        assert_eq!((s.t0, s.t1, s.normal), (true, false, true));
        let d = FiniteSpace::discrete(3).separation_profile();
        assert!(d.t0 && d.t1 && d.normal && d.regular);
        let i = FiniteSpace::indiscrete(2).separation_profile();
        assert_eq!((i.t0, i.t1, i.normal), (false, false, true));
        assert!(i.regular);
        assert!(!FiniteSpace::sierpinski().separation_profile().regular);
    }

    #[test]
    fn preorder_round_trip() {
        let x = FiniteSpace::from_preorder(4, [(0, 1), (1, 2), (3, 2), (2, 1)]).unwrap();
        let again = FiniteSpace::from_preorder(4, x.specialization_edges()).unwrap();
        assert_eq!(x, again);
        assert_eq!(FiniteSpace::from_opens(4, x.opens().to_vec()).unwrap(), x);
    }
}
