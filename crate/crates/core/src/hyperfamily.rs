//! Openly isotone families of opens, the standard collections `p`, `k`, `κ`
//! and `s`, filters on the lattice of opens, and the combinatorics around
//! them (mesh, refinement, ideal subbases, reduced ideals, functional
//! separation).
//!
//! A set of opens of a space is written as a *hyperset*: a `u64` mask over the
//! open indices of [`FiniteSpace::opens`]. Everything here needs the space to
//! have at most 64 opens.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{low_bits, FiniteSpace, OpenSet, PointSet};

/// A set of opens, as a mask over open indices.
pub type HyperSet = u64;

/// An openly isotone family `𝒜 = 𝒪(𝒜)`, stored as the antichain of its
/// minimal members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsotoneFamily {
    minimals: Vec<OpenSet>,
}

impl fmt::Debug for IsotoneFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "𝒪{:?}", self.minimals)
    }
}

impl IsotoneFamily {
    /// The empty family.
    pub fn empty() -> Self {
        IsotoneFamily { minimals: Vec::new() }
    }

    /// The family of all opens.
    pub fn full() -> Self {
        IsotoneFamily { minimals: vec![PointSet::EMPTY] }
    }

    /// `𝒪(D)`: the opens containing `set`.
    pub fn principal(space: &FiniteSpace, set: PointSet) -> Self {
        IsotoneFamily { minimals: vec![space.hull(set)] }
    }

    /// `⋃_D 𝒪(D)` over the generating point sets.
    pub fn generated(space: &FiniteSpace, generators: &[PointSet]) -> Self {
        Self::from_opens_unchecked(generators.iter().map(|&d| space.hull(d)).collect())
    }

    /// The up-closure of the given opens; errors if one is not open.
    pub fn from_opens(space: &FiniteSpace, opens: &[OpenSet]) -> Result<Self> {
        if let Some(&bad) = opens.iter().find(|&&o| !space.is_open(o)) {
            return Err(Error::NotATopology(format!("{bad:?} is not open")));
        }
        Ok(Self::from_opens_unchecked(opens.to_vec()))
    }

    fn from_opens_unchecked(mut opens: Vec<OpenSet>) -> Self {
        opens.sort_unstable();
        opens.dedup();
        let minimals = opens.iter().copied().filter(|&o| !opens.iter().any(|&p| p != o && p.is_subset(o))).collect();
        IsotoneFamily { minimals }
    }

    /// Reads a hyperset; errors if it is not closed upward among opens.
    pub fn from_mask(space: &FiniteSpace, mask: HyperSet) -> Result<Self> {
        for i in PointSet(mask).iter() {
            let up = space.opens_above(i);
            if up & !mask != 0 {
                return Err(Error::NotIsotone(space.opens()[i]));
            }
        }
        Ok(Self::from_opens_unchecked(space.opens_of_mask(mask)))
    }

    pub fn minimals(&self) -> &[OpenSet] {
        &self.minimals
    }

    pub fn is_empty(&self) -> bool {
        self.minimals.is_empty()
    }

    /// `U ∈ 𝒜` for an open `U`.
    pub fn contains(&self, open: OpenSet) -> bool {
        self.minimals.iter().any(|m| m.is_subset(open))
    }

    /// Whether some member is contained in `set` (`set` need not be open).
    pub fn has_member_inside(&self, set: PointSet) -> bool {
        self.contains(set)
    }

    /// The members, in open-index order.
    pub fn members(&self, space: &FiniteSpace) -> Vec<OpenSet> {
        space.opens().iter().copied().filter(|&o| self.contains(o)).collect()
    }

    pub fn mask(&self, space: &FiniteSpace) -> HyperSet {
        space.opens().iter().enumerate().filter(|(_, &o)| self.contains(o)).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// `𝒜 ∩ ℬ`, whose minimals are the minimal pairwise unions.
    pub fn intersection(&self, other: &IsotoneFamily) -> Self {
        Self::from_opens_unchecked(
            self.minimals.iter().flat_map(|&a| other.minimals.iter().map(move |&b| a.union(b))).collect(),
        )
    }

    pub fn union(&self, other: &IsotoneFamily) -> Self {
        Self::from_opens_unchecked(self.minimals.iter().chain(&other.minimals).copied().collect())
    }

    /// `self ⊆ other` as families.
    pub fn is_subfamily(&self, other: &IsotoneFamily) -> bool {
        self.minimals.iter().all(|&m| other.contains(m))
    }
}

/// Which standard collection a list of families came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaLabel {
    P,
    K,
    Kappa,
    S,
    Custom,
}

impl std::str::FromStr for AlphaLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(AlphaLabel::P),
            "k" => Ok(AlphaLabel::K),
            "kappa" => Ok(AlphaLabel::Kappa),
            "s" => Ok(AlphaLabel::S),
            "custom" => Ok(AlphaLabel::Custom),
            other => Err(Error::Parse(format!("unknown collection `{other}`"))),
        }
    }
}

/// A collection `α` of openly isotone families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCollection {
    pub label: AlphaLabel,
    pub families: Vec<IsotoneFamily>,
}

impl AlphaCollection {
    pub fn custom(families: Vec<IsotoneFamily>) -> Self {
        AlphaCollection { label: AlphaLabel::Custom, families }
    }

    /// No family is nonempty.
    pub fn is_degenerate(&self) -> bool {
        self.families.iter().all(IsotoneFamily::is_empty)
    }

    pub fn masks(&self, space: &FiniteSpace) -> Vec<HyperSet> {
        self.families.iter().map(|f| f.mask(space)).collect()
    }

    /// `α^∩`: closure under finite nonempty intersections, deduplicated.
    pub fn intersection_closure(&self) -> AlphaCollection {
        let mut seen: BTreeSet<IsotoneFamily> = self.families.iter().cloned().collect();
        let mut queue: VecDeque<IsotoneFamily> = seen.iter().cloned().collect();
        while let Some(fam) = queue.pop_front() {
            for g in &self.families {
                let next = fam.intersection(g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        AlphaCollection { label: self.label, families: seen.into_iter().collect() }
    }

    /// Same families as a set (order and multiplicity ignored).
    pub fn same_families(&self, other: &AlphaCollection) -> bool {
        let a: BTreeSet<_> = self.families.iter().collect();
        let b: BTreeSet<_> = other.families.iter().collect();
        a == b
    }
}

/// The four standard collections of a space.
#[derive(Clone, Debug)]
pub struct StandardAlphas {
    pub p: AlphaCollection,
    pub k: AlphaCollection,
    pub kappa: AlphaCollection,
    pub s: AlphaCollection,
}

impl StandardAlphas {
    pub fn get(&self, label: AlphaLabel) -> Option<&AlphaCollection> {
        match label {
            AlphaLabel::P => Some(&self.p),
            AlphaLabel::K => Some(&self.k),
            AlphaLabel::Kappa => Some(&self.kappa),
            AlphaLabel::S => Some(&self.s),
            AlphaLabel::Custom => None,
        }
    }
}

/// Computes `p`, `k`, `κ` and `s`, each from its own definition.
pub fn standard_alphas(space: &FiniteSpace) -> Result<StandardAlphas> {
    if !space.has_small_lattice() {
        return Err(Error::CarrierTooLarge(space.open_count()));
    }
    let subsets: Vec<PointSet> = (0..1u64 << space.points()).map(PointSet).collect();
    // every subset of a finite space is finite
    let p = unions_of_principals(space, &subsets);
    let compact: Vec<PointSet> = subsets.iter().copied().filter(|&s| is_compact_set(space, s)).collect();
    let k = unions_of_principals(space, &compact);
    let kappa = antichains(space)
        .into_iter()
        .map(|a| IsotoneFamily::from_opens_unchecked(space.opens_of_mask(a)))
        .filter(|fam| is_compact_family(space, fam))
        .collect::<BTreeSet<_>>();
    let s = (0..space.points()).map(|x| IsotoneFamily::principal(space, PointSet::singleton(x))).collect();
    Ok(StandardAlphas {
        p: AlphaCollection { label: AlphaLabel::P, families: p },
        k: AlphaCollection { label: AlphaLabel::K, families: k },
        kappa: AlphaCollection { label: AlphaLabel::Kappa, families: kappa.into_iter().collect() },
        s: AlphaCollection { label: AlphaLabel::S, families: s },
    })
}

/// All families `⋃_{F∈𝓕} 𝒪(F)` with `𝓕` ranging over sets of the given
/// generators (the empty `𝓕` gives the empty family).
fn unions_of_principals(space: &FiniteSpace, generators: &[PointSet]) -> Vec<IsotoneFamily> {
    let gens: Vec<HyperSet> = generators
        .iter()
        .map(|&g| IsotoneFamily::principal(space, g).mask(space))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut seen: HashSet<HyperSet> = HashSet::from([0]);
    let mut queue = VecDeque::from([0u64]);
    while let Some(fam) = queue.pop_front() {
        for &g in &gens {
            if seen.insert(fam | g) {
                queue.push_back(fam | g);
            }
        }
    }
    let mut out: Vec<IsotoneFamily> =
        seen.into_iter().map(|m| IsotoneFamily::from_opens_unchecked(space.opens_of_mask(m))).collect();
    out.sort();
    out
}

/// Every open cover of `set` has a subcover with at most `|set|` members.
/// Covers are taken as antichains: the maximal members of any cover form a
/// subcover.
pub fn is_compact_set(space: &FiniteSpace, set: PointSet) -> bool {
    let opens = space.opens();
    antichains(space).into_iter().all(|cover| {
        let members: Vec<OpenSet> = PointSet(cover).iter().map(|i| opens[i]).collect();
        let union = members.iter().fold(PointSet::EMPTY, |a, &o| a.union(o));
        if !set.is_subset(union) {
            return true;
        }
        let picked = set
            .iter()
            .fold(PointSet::EMPTY, |acc, x| acc.union(*members.iter().find(|o| o.contains(x)).expect("cover")));
        set.is_subset(picked)
    })
}

/// All antichains of the open lattice, as hypersets.
pub fn antichains(space: &FiniteSpace) -> Vec<HyperSet> {
    fn rec(space: &FiniteSpace, i: usize, current: u64, blocked: u64, out: &mut Vec<u64>) {
        if i == space.open_count() {
            out.push(current);
            return;
        }
        rec(space, i + 1, current, blocked, out);
        if blocked >> i & 1 == 0 {
            let comparable = space.opens_above(i) | space.opens_below(i);
            rec(space, i + 1, current | 1 << i, blocked | comparable, out);
        }
    }
    let mut out = Vec::new();
    rec(space, 0, 0, 0, &mut out);
    out.sort_unstable();
    out
}

/// Compactness of an isotone family, checked from the definition: for each
/// subfamily `ℬ` of opens whose union lies in the family, a finite subfamily
/// of `ℬ` with union in the family is searched for by increasing size. Only
/// antichains `ℬ` are tested; adding opens below a member changes no union.
pub fn is_compact_family(space: &FiniteSpace, family: &IsotoneFamily) -> bool {
    let opens = space.opens();
    antichains(space).into_iter().all(|b| {
        let members: Vec<OpenSet> = PointSet(b).iter().map(|i| opens[i]).collect();
        let union = members.iter().fold(PointSet::EMPTY, |a, &o| a.union(o));
        if !family.contains(union) {
            return true;
        }
        (0..=members.len()).any(|size| {
            subsets_of_size(members.len(), size).any(|pick| {
                let u = PointSet(pick).iter().fold(PointSet::EMPTY, |a, j| a.union(members[j]));
                family.contains(u)
            })
        })
    })
}

/// Masks over `0..n` with exactly `size` bits set.
pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << n).filter(move |m| m.count_ones() as usize == size)
}

/// A filter on the opens of a space. On a finite carrier every filter is
/// principal, so it is its kernel: the smallest member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperFilter {
    kernel: HyperSet,
}

impl HyperFilter {
    pub fn new(kernel: HyperSet) -> Result<Self> {
        if kernel == 0 {
            return Err(Error::EmptyKernel);
        }
        Ok(HyperFilter { kernel })
    }

    pub fn from_opens(space: &FiniteSpace, opens: &[OpenSet]) -> Result<Self> {
        Self::new(space.mask_of_opens(opens))
    }

    /// The principal filter of an isotone family.
    pub fn of_family(space: &FiniteSpace, family: &IsotoneFamily) -> Result<Self> {
        Self::new(family.mask(space))
    }

    pub fn kernel(self) -> HyperSet {
        self.kernel
    }

    pub fn kernel_opens(self, space: &FiniteSpace) -> Vec<OpenSet> {
        space.opens_of_mask(self.kernel)
    }

    /// `self ≤ other`: `other` is finer.
    pub fn leq(self, other: HyperFilter) -> bool {
        other.kernel & !self.kernel == 0
    }

    /// `self ∨ other`; fails when the kernels are disjoint.
    pub fn sup(self, other: HyperFilter) -> Result<HyperFilter> {
        HyperFilter::new(self.kernel & other.kernel).map_err(|_| Error::NoSupremum)
    }

    pub fn inf(self, other: HyperFilter) -> HyperFilter {
        HyperFilter { kernel: self.kernel | other.kernel }
    }

    /// `𝒪^♮(γ)`, generated by the isotone hulls of the members.
    pub fn regularized(self, space: &FiniteSpace) -> HyperFilter {
        HyperFilter { kernel: up_closure(space, self.kernel) }
    }

    pub fn is_regular(self, space: &FiniteSpace) -> bool {
        up_closure(space, self.kernel) == self.kernel
    }

    /// The kernel as an isotone family, when it is one.
    pub fn family(self, space: &FiniteSpace) -> Result<IsotoneFamily> {
        IsotoneFamily::from_mask(space, self.kernel)
    }
}

/// Opens containing some open of the hyperset.
pub fn up_closure(space: &FiniteSpace, set: HyperSet) -> HyperSet {
    PointSet(set).iter().fold(0, |acc, i| acc | space.opens_above(i))
}

/// Opens contained in some open of the hyperset.
pub fn down_closure(space: &FiniteSpace, set: HyperSet) -> HyperSet {
    PointSet(set).iter().fold(0, |acc, i| acc | space.opens_below(i))
}

/// `𝒜 # ℬ` for families of sets given as bit masks: every member of one meets
/// every member of the other.
pub fn mesh(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| x & y != 0))
}

/// `𝒪^♮(𝒫) = {𝒪(P) : P ∈ 𝒫}` as hypersets.
pub fn polar(space: &FiniteSpace, family: &[PointSet]) -> Vec<HyperSet> {
    family.iter().map(|&p| IsotoneFamily::principal(space, p).mask(space)).collect()
}

/// `ℛ # 𝒪^♮(𝒫)`, with `ℛ` read as a subset of the hyperspace.
pub fn meshes_polar(space: &FiniteSpace, r: &[OpenSet], p: &[PointSet]) -> bool {
    mesh(&[space.mask_of_opens(r)], &polar(space, p))
}

/// Every `P ∈ 𝒫` is contained in some `R ∈ ℛ`.
pub fn refines(p: &[PointSet], r: &[PointSet]) -> bool {
    p.iter().all(|&x| r.iter().any(|&y| x.is_subset(y)))
}

/// The order on families of sets: `𝒜 ≤ ℬ` iff every member of `𝒜` contains a
/// member of `ℬ`.
pub fn family_leq(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|&x| b.iter().any(|&y| y & !x == 0))
}

/// Each finite subfamily has its union inside some member. On a finite family
/// it is enough to look at the whole family.
pub fn is_ideal_subbase(family: &[PointSet]) -> bool {
    let total = family.iter().fold(PointSet::EMPTY, |a, &p| a.union(p));
    family.iter().any(|&p| total.is_subset(p))
}

/// [`is_ideal_subbase`] by enumerating every finite subfamily.
pub fn is_ideal_subbase_by_subfamilies(family: &[PointSet]) -> bool {
    assert!(family.len() <= 20, "too many members to enumerate");
    (0..1u64 << family.len()).all(|pick| {
        let u = PointSet(pick).iter().fold(PointSet::EMPTY, |a, j| a.union(family[j]));
        family.iter().any(|&p| u.is_subset(p))
    })
}

/// Nonempty and closed under binary unions.
pub fn is_ideal_base(family: &[PointSet]) -> bool {
    !family.is_empty() && family.iter().all(|&a| family.iter().all(|&b| family.contains(&a.union(b))))
}

/// `𝒫^∪`: closure under finite nonempty unions, sorted.
pub fn union_closure(family: &[PointSet]) -> Vec<PointSet> {
    let mut seen: BTreeSet<PointSet> = family.iter().copied().collect();
    let mut queue: VecDeque<PointSet> = seen.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for &p in family {
            if seen.insert(x.union(p)) {
                queue.push_back(x.union(p));
            }
        }
    }
    seen.into_iter().collect()
}

/// `γ^⇓ = {⋂S : S ⊇ kernel(γ)}`, sorted.
pub fn reduced_ideal(space: &FiniteSpace, filter: HyperFilter) -> Vec<OpenSet> {
    let kernel = filter.kernel_opens(space);
    let base = kernel.iter().fold(space.full(), |a, &o| a.intersection(o));
    // adjoining further opens to S intersects ⋂S with them
    let extra: Vec<OpenSet> =
        space.opens().iter().enumerate().filter(|(i, _)| filter.kernel() >> i & 1 == 0).map(|(_, &o)| o).collect();
    let mut seen = BTreeSet::from([base]);
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for &o in &extra {
            if seen.insert(x.intersection(o)) {
                queue.push_back(x.intersection(o));
            }
        }
    }
    seen.into_iter().collect()
}

/// Separation witness for one member `O`: a member `A′` and a function that
/// is `0` on `A′` and `1` off `O`, constant on components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub open: OpenSet,
    pub inner: OpenSet,
    /// Value of the function on each component, in component order.
    pub component_values: Vec<u8>,
}

/// Outcome of [`functional_separation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separated(Vec<SeparationWitness>),
    /// A member with no separated inner member.
    Fails(OpenSet),
}

/// For every member `O` look for a member `A′` whose component saturation
/// lies in `O`; continuous real maps on a finite space are constant on
/// components, so this is the existence of the separating function.
pub fn functional_separation(space: &FiniteSpace, family: &IsotoneFamily) -> Separation {
    let members = family.members(space);
    let mut witnesses = Vec::with_capacity(members.len());
    for &o in &members {
        let inner = members.iter().copied().find(|&a| space.component_saturation(a).is_subset(o));
        match inner {
            None => return Separation::Fails(o),
            Some(a) => witnesses.push(SeparationWitness {
                open: o,
                inner: a,
                component_values: space.components().iter().map(|c| u8::from(!c.meets(a))).collect(),
            }),
        }
    }
    Separation::Separated(witnesses)
}

pub fn is_functionally_separated(space: &FiniteSpace, family: &IsotoneFamily) -> bool {
    matches!(functional_separation(space, family), Separation::Separated(_))
}

/// Every hyperset over the opens, i.e. every nonempty kernel.
pub fn all_kernels(space: &FiniteSpace) -> impl Iterator<Item = HyperSet> {
    1..=low_bits(space.open_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn isotone_family_examples() {
        let d = FiniteSpace::discrete(2);
        let a = IsotoneFamily::generated(&d, &[ps(&[0])]);
        assert_eq!(a.minimals(), &[ps(&[0])]);
        assert_eq!(a.members(&d), vec![ps(&[0]), ps(&[0, 1])]);
        let s = FiniteSpace::sierpinski();
        assert_eq!(IsotoneFamily::generated(&s, &[ps(&[0])]).minimals(), &[ps(&[0, 1])]);
        let two = IsotoneFamily::generated(&d, &[ps(&[0]), ps(&[1])]);
        assert_eq!(two.minimals(), &[ps(&[0]), ps(&[1])]);
    }

    #[test]
    fn canonical_form_is_stable() {
        for space in [FiniteSpace::discrete(3), FiniteSpace::chain(3), FiniteSpace::sierpinski()] {
            for a in antichains(&space) {
                let fam = IsotoneFamily::from_opens(&space, &space.opens_of_mask(a)).unwrap();
                assert_eq!(space.mask_of_opens(fam.minimals()), a);
                let again = IsotoneFamily::from_opens(&space, &fam.members(&space)).unwrap();
                assert_eq!(again, fam);
                assert_eq!(IsotoneFamily::from_mask(&space, fam.mask(&space)).unwrap(), fam);
            }
        }
    }

    #[test]
    fn from_mask_rejects_non_isotone() {
        let s = FiniteSpace::sierpinski();
        let only_one = 1u64 << s.open_index(ps(&[1])).unwrap();
        assert!(matches!(IsotoneFamily::from_mask(&s, only_one), Err(Error::NotIsotone(_))));
    }

    #[test]
    fn compactness_examples() {
        let d = FiniteSpace::discrete(3);
        assert!(is_compact_family(&d, &IsotoneFamily::empty()));
        assert!(is_compact_family(&d, &IsotoneFamily::principal(&d, d.full())));
        for a in antichains(&d) {
            let fam = IsotoneFamily::from_opens(&d, &d.opens_of_mask(a)).unwrap();
            assert!(is_compact_family(&d, &fam));
        }
    }

    #[test]
    fn standard_collection_counts() {
        let a = standard_alphas(&FiniteSpace::discrete(2)).unwrap();
        assert_eq!(a.kappa.families.len(), 6);
        assert!(a.kappa.families.contains(&IsotoneFamily::empty()));
        let b = standard_alphas(&FiniteSpace::sierpinski()).unwrap();
        assert_eq!(b.kappa.families.len(), 4);
        assert_eq!(b.s.families.len(), 2);
        let c = standard_alphas(&FiniteSpace::chain(3)).unwrap();
        assert!(c.p.same_families(&c.kappa) && c.k.same_families(&c.kappa));
    }

    #[test]
    fn mesh_and_refinement() {
        let d = FiniteSpace::discrete(2);
        let p = [ps(&[0])];
        let r = [ps(&[0, 1])];
        assert!(refines(&p, &r));
        assert!(meshes_polar(&d, &r, &p));
        assert!(refines(&p, &p));
        let r2 = [ps(&[1])];
        assert!(!refines(&p, &r2));
        assert!(!meshes_polar(&d, &r2, &p));
        assert!(mesh(&[0b11], &[0b01, 0b10]));
        assert!(!mesh(&[0b01], &[0b10]));
    }

    #[test]
    fn ideal_examples() {
        let singletons = [ps(&[0]), ps(&[1]), ps(&[2])];
        assert!(!is_ideal_subbase(&singletons));
        assert_eq!(union_closure(&singletons).len(), 7);
        let chain = [ps(&[2]), ps(&[1, 2]), ps(&[0, 1, 2])];
        assert!(is_ideal_subbase(&chain));
        assert_eq!(union_closure(&chain), chain.to_vec());
        assert!(is_ideal_subbase(&[PointSet::EMPTY]));
        assert_eq!(union_closure(&[PointSet::EMPTY]), vec![PointSet::EMPTY]);
        assert!(!is_ideal_subbase(&[]));
        assert!(!is_ideal_subbase_by_subfamilies(&[]));
    }

    #[test]
    fn ideal_subbase_agrees_with_subfamily_enumeration() {
        for bits in 0u64..1 << 8 {
            let fam: Vec<PointSet> = PointSet(bits).iter().map(|i| PointSet(i as u64)).collect();
            assert_eq!(is_ideal_subbase(&fam), is_ideal_subbase_by_subfamilies(&fam));
        }
    }

    #[test]
    fn reduced_ideal_examples() {
        let d = FiniteSpace::discrete(2);
        let f = HyperFilter::from_opens(&d, &[ps(&[0]), ps(&[0, 1])]).unwrap();
        assert_eq!(reduced_ideal(&d, f), vec![PointSet::EMPTY, ps(&[0])]);
        let top = HyperFilter::from_opens(&d, &[d.full()]).unwrap();
        assert!(reduced_ideal(&d, top).contains(&d.full()));
        let all = HyperFilter::new(d.all_opens_mask()).unwrap();
        assert_eq!(reduced_ideal(&d, all), vec![PointSet::EMPTY]);
    }

    #[test]
    fn reduced_ideal_matches_superset_enumeration() {
        let x = FiniteSpace::chain(2).disjoint_union(&FiniteSpace::discrete(1));
        for k in all_kernels(&x) {
            let brute: BTreeSet<OpenSet> = (1..=x.all_opens_mask())
                .filter(|s| s & k == k)
                .map(|s| x.opens_of_mask(s).into_iter().fold(x.full(), |a, o| a.intersection(o)))
                .collect();
            let got = reduced_ideal(&x, HyperFilter::new(k).unwrap());
            assert_eq!(got, brute.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn functional_separation_examples() {
        let d = FiniteSpace::discrete(2);
        match functional_separation(&d, &IsotoneFamily::principal(&d, ps(&[0]))) {
            Separation::Separated(w) => {
                let first = &w[0];
                assert_eq!(first.open, ps(&[0]));
                assert_eq!(first.inner, ps(&[0]));
                assert_eq!(first.component_values, vec![0, 1]);
            }
            Separation::Fails(o) => panic!("fails at {o:?}"),
        }
        let s = FiniteSpace::sierpinski();
        assert_eq!(functional_separation(&s, &IsotoneFamily::principal(&s, ps(&[1]))), Separation::Fails(ps(&[1])));
        assert!(is_functionally_separated(&d, &IsotoneFamily::principal(&d, d.full())));
    }

    #[test]
    fn filter_lattice() {
        let f = HyperFilter::new(0b011).unwrap();
        let g = HyperFilter::new(0b001).unwrap();
        assert!(f.leq(g) && !g.leq(f));
        assert_eq!(f.sup(g).unwrap(), g);
        assert_eq!(f.inf(g), f);
        assert_eq!(HyperFilter::new(0b01).unwrap().sup(HyperFilter::new(0b10).unwrap()), Err(Error::NoSupremum));
        assert_eq!(HyperFilter::new(0), Err(Error::EmptyKernel));
    }

    #[test]
    fn intersection_of_families() {
        let d = FiniteSpace::discrete(3);
        let a = IsotoneFamily::principal(&d, ps(&[0]));
        let b = IsotoneFamily::principal(&d, ps(&[1]));
        let ab = a.intersection(&b);
        assert_eq!(ab.mask(&d), a.mask(&d) & b.mask(&d));
        assert_eq!(a.union(&b).mask(&d), a.mask(&d) | b.mask(&d));
    }
}
