//! Convergences on finite carriers `{0, .., size-1}`.
//!
//! Every filter on a finite set is principal, so a convergence is a map from
//! nonempty kernels `K` (bit masks) to limit sets `lim(K)`. Kernel `0` stands
//! for the degenerate filter and converges to everything. A convergence is
//! either tabulated or backed by a rule evaluated on demand; rule-backed ones
//! are what makes carriers of 27 functions (`2^27` kernels) tractable.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lookup::SubsetMap;
use crate::space::{low_bits, PointSet};

/// Largest carrier whose kernels are ever swept exhaustively.
pub const MAX_SWEEP_BITS: usize = 32;
/// Carriers up to this size are tabulated when built from a rule.
pub const TABULATE_BITS: usize = 20;
/// Carriers up to this size are validated on every kernel; above it a fixed
/// pseudo-random sample of kernels is checked.
pub const FULL_CHECK_BITS: usize = 22;
const SAMPLE_KERNELS: usize = 1 << 18;

type Rule = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

#[derive(Clone)]
enum Lim {
    Table(Arc<[u64]>),
    Rule(Rule),
}

#[derive(Clone)]
pub struct Convergence {
    size: usize,
    lim: Lim,
}

impl fmt::Debug for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.lim {
            Lim::Table(_) => "table",
            Lim::Rule(_) => "rule",
        };
        f.debug_struct("Convergence").field("size", &self.size).field("lim", &kind).finish()
    }
}

/// Position in the pseudotopology / pretopology / topology hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub pseudotopology: bool,
    pub pretopology: bool,
    pub topology: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reflection {
    /// Finest topology coarser than the convergence.
    T,
    /// Finest pretopology coarser than the convergence.
    P,
}

/// Every nonempty kernel of a carrier.
pub fn kernels(size: usize) -> impl Iterator<Item = u64> {
    assert!(size <= MAX_SWEEP_BITS, "carrier of {size} elements cannot be swept");
    1..=low_bits(size)
}

/// A fixed pseudo-random sample of nonempty kernels.
pub fn sample_kernels(size: usize, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let full = low_bits(size);
    (0..count).map(|_| rng.gen::<u64>() & full).filter(|&k| k != 0).collect()
}

/// Kernels to compare on: all of them up to [`FULL_CHECK_BITS`], a sample above.
pub fn comparison_kernels(size: usize) -> Box<dyn Iterator<Item = u64>> {
    if size <= FULL_CHECK_BITS {
        Box::new(kernels(size))
    } else {
        Box::new(sample_kernels(size, SAMPLE_KERNELS).into_iter())
    }
}

/// First nonempty kernel satisfying `pred`.
pub fn find_kernel(size: usize, mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
    kernels(size).find(|&k| pred(k))
}

impl Convergence {
    /// Validated convergence from a table indexed by kernel (`2^size` entries;
    /// entry `0` is ignored).
    pub fn from_table(size: usize, mut table: Vec<u64>) -> Result<Self> {
        if size > FULL_CHECK_BITS {
            return Err(Error::CarrierTooLarge(size));
        }
        if table.len() != 1usize << size {
            return Err(Error::Parse(format!("limit table has {} entries, expected {}", table.len(), 1usize << size)));
        }
        table[0] = low_bits(size);
        let full = low_bits(size);
        for t in table.iter_mut() {
            *t &= full;
        }
        let conv = Convergence { size, lim: Lim::Table(table.into()) };
        conv.validate()?;
        Ok(conv)
    }

    /// Validated convergence from a rule; tabulated for small carriers.
    pub fn from_rule(size: usize, rule: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Result<Self> {
        if size > MAX_SWEEP_BITS {
            return Err(Error::CarrierTooLarge(size));
        }
        let conv = Self::trusted(size, rule);
        conv.validate()?;
        Ok(conv)
    }

    /// Builds without validation. Used for constructions that satisfy the
    /// axioms by definition; the law suite still checks them.
    pub(crate) fn trusted(size: usize, rule: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        let full = low_bits(size);
        if size <= TABULATE_BITS {
            let mut table = Vec::with_capacity(1 << size);
            table.push(full);
            table.extend((1..=full).map(|k| rule(k) & full));
            Convergence { size, lim: Lim::Table(table.into()) }
        } else {
            Convergence { size, lim: Lim::Rule(Arc::new(move |k| if k == 0 { full } else { rule(k) & full })) }
        }
    }

    /// Everything converges to everything.
    pub fn chaotic(size: usize) -> Self {
        let full = low_bits(size);
        Self::trusted(size, move |_| full)
    }

    /// Only the point filters converge, each to its own point.
    pub fn discrete(size: usize) -> Self {
        Self::trusted(size, |k| if k.count_ones() == 1 { k } else { 0 })
    }

    /// The pretopology with the given vicinity kernels:
    /// `x ∈ lim(K)` iff `K ⊆ vicinity[x]`.
    pub fn from_vicinities(vicinity: &[u64]) -> Result<Self> {
        let size = vicinity.len();
        if size > MAX_SWEEP_BITS {
            return Err(Error::CarrierTooLarge(size));
        }
        if let Some(x) = (0..size).find(|&x| vicinity[x] >> x & 1 == 0) {
            return Err(Error::NotCentered(x));
        }
        Ok(Self::pretopology_unchecked(vicinity))
    }

    pub(crate) fn pretopology_unchecked(vicinity: &[u64]) -> Self {
        let size = vicinity.len();
        let full = low_bits(size);
        // column y: points whose vicinity contains y
        let columns: Vec<u64> =
            (0..size).map(|y| (0..size).filter(|&x| vicinity[x] >> y & 1 == 1).fold(0, |a, x| a | 1 << x)).collect();
        let map = SubsetMap::meet(&columns, full);
        Self::trusted(size, move |k| map.eval(k))
    }

    /// The topology with the given neighbourhood kernels (smallest open
    /// neighbourhood of each point). The kernels are closed under reachability
    /// first, so any centered relation yields a topology.
    pub fn topology_from_neighbourhoods(nbhd: &[u64]) -> Result<Self> {
        Self::from_vicinities(&reachability_closure(nbhd))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full(&self) -> u64 {
        low_bits(self.size)
    }

    /// `lim(K)`.
    #[inline]
    pub fn lim(&self, kernel: u64) -> u64 {
        match &self.lim {
            Lim::Table(t) => t[kernel as usize],
            Lim::Rule(r) => r(kernel),
        }
    }

    pub fn converges(&self, kernel: u64, x: usize) -> bool {
        self.lim(kernel) >> x & 1 == 1
    }

    /// Checks centering and monotonicity.
    pub fn validate(&self) -> Result<()> {
        for x in 0..self.size {
            if !self.converges(1 << x, x) {
                return Err(Error::NotCentered(x));
            }
        }
        let check = |k: u64| -> Result<()> {
            let here = self.lim(k);
            for x in 0..self.size {
                if k >> x & 1 == 0 {
                    let larger = k | 1 << x;
                    if self.lim(larger) & !here != 0 {
                        return Err(Error::NotMonotone { smaller: k, larger });
                    }
                }
            }
            Ok(())
        };
        if self.size <= FULL_CHECK_BITS {
            kernels(self.size).try_for_each(check)
        } else {
            sample_kernels(self.size, SAMPLE_KERNELS).into_iter().try_for_each(check)
        }
    }

    /// `⋃{lim K : K ∩ S ≠ ∅}`, scanning every kernel meeting `S`. Carriers
    /// above [`FULL_CHECK_BITS`] use [`Self::adherence_pointwise`], which
    /// agrees on every monotone convergence.
    pub fn adherence(&self, set: u64) -> u64 {
        if self.size > FULL_CHECK_BITS {
            return self.adherence_pointwise(set);
        }
        kernels(self.size).filter(|k| k & set != 0).fold(0, |acc, k| acc | self.lim(k))
    }

    /// `⋃_{x∈S} lim{x}`.
    pub fn adherence_pointwise(&self, set: u64) -> u64 {
        PointSet(set).iter().fold(0, |acc, x| acc | self.lim(1 << x))
    }

    /// Vicinity kernel of `x`: the union of all kernels converging to `x`,
    /// which by monotonicity is `{y : x ∈ lim{y}}`.
    pub fn vicinity(&self, x: usize) -> u64 {
        (0..self.size).filter(|&y| self.converges(1 << y, x)).fold(0, |a, y| a | 1 << y)
    }

    /// [`Self::vicinity`] by scanning every kernel.
    pub fn vicinity_by_scan(&self, x: usize) -> u64 {
        kernels(self.size).filter(|&k| self.converges(k, x)).fold(0, |a, k| a | k)
    }

    pub fn vicinities(&self) -> Vec<u64> {
        (0..self.size).map(|x| self.vicinity(x)).collect()
    }

    /// First kernel where `lim(K)` differs from `⋂_{x∈K} lim{x}`.
    pub fn pseudotopology_witness(&self) -> Option<u64> {
        let singles: Vec<u64> = (0..self.size).map(|x| self.lim(1 << x)).collect();
        let map = SubsetMap::meet(&singles, self.full());
        find_kernel(self.size, |k| self.lim(k) != map.eval(k))
    }

    pub fn classify(&self) -> Classification {
        let pseudotopology = self.pseudotopology_witness().is_none();
        let pretopology = self.difference(&self.reflect(Reflection::P)).is_none();
        let topology = pretopology && self.difference(&self.reflect(Reflection::T)).is_none();
        Classification { pseudotopology, pretopology, topology }
    }

    /// The T or P reflection.
    pub fn reflect(&self, level: Reflection) -> Convergence {
        let vic = self.vicinities();
        match level {
            Reflection::P => Self::pretopology_unchecked(&vic),
            // a set is open iff it contains the vicinity of each of its points,
            // so the smallest open around x is everything reachable from x
            Reflection::T => Self::pretopology_unchecked(&reachability_closure(&vic)),
        }
    }

    /// Kernel where the limit sets differ, if any.
    pub fn difference(&self, other: &Convergence) -> Option<u64> {
        assert_eq!(self.size, other.size, "carriers differ");
        find_kernel(self.size, |k| self.lim(k) != other.lim(k))
    }

    /// `self ≤ finer` fails at the returned kernel: some limit of `finer` is
    /// not a limit of `self`.
    pub fn coarser_witness(&self, finer: &Convergence) -> Option<u64> {
        assert_eq!(self.size, finer.size, "carriers differ");
        find_kernel(self.size, |k| finer.lim(k) & !self.lim(k) != 0)
    }

    /// `self ≤ other` in the convergence order: `self` is coarser.
    pub fn leq(&self, other: &Convergence) -> bool {
        self.coarser_witness(other).is_none()
    }

    /// Least `m` such that whenever `x ∈ adh(S)` some `S′ ⊆ S` with
    /// `|S′| ≤ m` has `x ∈ adh(S′)`.
    pub fn tightness_at(&self, x: usize) -> Result<usize> {
        if self.size > TABULATE_BITS {
            return Err(Error::CarrierTooLarge(self.size));
        }
        let mut worst = 0;
        for s in kernels(self.size) {
            if self.adherence_pointwise(s) >> x & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = PointSet(s).iter().collect();
            let least = (1..=members.len())
                .find(|&m| {
                    crate::hyperfamily::subsets_of_size(members.len(), m).any(|pick| {
                        let sub = PointSet(pick).iter().fold(0u64, |a, j| a | 1 << members[j]);
                        self.adherence_pointwise(sub) >> x & 1 == 1
                    })
                })
                .expect("S itself is a witness");
            worst = worst.max(least);
        }
        Ok(worst)
    }
}

/// Closes each `relation[x]` under `y ∈ relation[x], z ∈ relation[y] ⇒ z ∈ relation[x]`.
pub fn reachability_closure(relation: &[u64]) -> Vec<u64> {
    let mut out = relation.to_vec();
    loop {
        let mut changed = false;
        for x in 0..out.len() {
            let grown = PointSet(out[x]).iter().fold(out[x], |a, y| a | out[y]);
            if grown != out[x] {
                out[x] = grown;
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// The initial convergence of a source of maps: `x ∈ lim(K)` iff
/// `mᵢ(x) ∈ limᵢ(mᵢ(K))` for every `i`. With no maps it is chaotic.
pub fn initial(size: usize, maps: &[Vec<usize>], targets: &[Convergence]) -> Result<Convergence> {
    if maps.len() != targets.len() {
        return Err(Error::ArityMismatch { maps: maps.len(), targets: targets.len() });
    }
    if size > MAX_SWEEP_BITS {
        return Err(Error::CarrierTooLarge(size));
    }
    let mut parts = Vec::with_capacity(maps.len());
    for (map, target) in maps.iter().zip(targets) {
        if map.len() != size || map.iter().any(|&t| t >= target.size()) {
            return Err(Error::InconsistentSpec("map table does not fit its carriers".into()));
        }
        let image = SubsetMap::join(&map.iter().map(|&t| 1u64 << t).collect::<Vec<_>>());
        let fibres: Vec<u64> =
            (0..target.size()).map(|t| (0..size).filter(|&x| map[x] == t).fold(0, |a, x| a | 1 << x)).collect();
        parts.push((image, SubsetMap::join(&fibres), target.clone()));
    }
    let full = low_bits(size);
    Ok(Convergence::trusted(size, move |k| {
        parts.iter().fold(full, |acc, (image, fibres, target)| acc & fibres.eval(target.lim(image.eval(k))))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chaotic_is_valid_topology() {
        let c = Convergence::chaotic(3);
        c.validate().unwrap();
        let cls = c.classify();
        assert!(cls.topology && cls.pretopology && cls.pseudotopology);
        assert!(c.reflect(Reflection::P).difference(&c).is_none());
    }

    #[test]
    fn singleton_rule_is_valid() {
        let c = Convergence::from_rule(2, |k| if k.count_ones() == 1 { k } else { 0 }).unwrap();
        assert_eq!(c.lim(0b11), 0);
    }

    #[test]
    fn rejects_bad_rules() {
        assert_eq!(Convergence::from_rule(2, |_| 0).unwrap_err(), Error::NotCentered(0));
        let err = Convergence::from_rule(2, |k| if k == 0b11 { 0b11 } else { k }).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { .. }));
    }

    #[test]
    fn topology_from_neighbourhoods_is_topological() {
        // Sierpiński: smallest neighbourhood of 0 is {0,1}, of 1 is {1}
        let t = Convergence::topology_from_neighbourhoods(&[0b11, 0b10]).unwrap();
        let cls = t.classify();
        assert!(cls.topology);
        assert_eq!(t.lim(0b10), 0b11);
        assert_eq!(t.lim(0b01), 0b01);
        assert_eq!(t.reflect(Reflection::T).difference(&t), None);
    }

    #[test]
    fn reflections_are_coarser_and_idempotent() {
        // not a pseudotopology: {0,1} converges nowhere
        let conv = Convergence::from_rule(3, |k| {
            let singles = [0b011u64, 0b110, 0b101];
            let meet = PointSet(k).iter().fold(0b111, |a, x| a & singles[x]);
            if k & 0b011 == 0b011 {
                0
            } else {
                meet
            }
        })
        .unwrap();
        let p = conv.reflect(Reflection::P);
        let t = conv.reflect(Reflection::T);
        assert!(p.leq(&conv) && t.leq(&p));
        assert!(p.reflect(Reflection::P).difference(&p).is_none());
        assert!(t.reflect(Reflection::T).difference(&t).is_none());
        assert!(t.classify().topology);
        let cls = conv.classify();
        assert!(!cls.pretopology && !cls.pseudotopology);
        assert_eq!(conv.pseudotopology_witness(), Some(0b011));
    }

    #[test]
    fn vicinity_scan_agrees() {
        let t = Convergence::topology_from_neighbourhoods(&[0b011, 0b010, 0b110]).unwrap();
        for x in 0..3 {
            assert_eq!(t.vicinity(x), t.vicinity_by_scan(x));
        }
    }

    #[test]
    fn initial_examples() {
        let target = Convergence::topology_from_neighbourhoods(&[0b11, 0b10]).unwrap();
        let copy = initial(2, &[vec![0, 1]], std::slice::from_ref(&target)).unwrap();
        assert!(copy.difference(&target).is_none());
        let free = initial(3, &[], &[]).unwrap();
        assert!(free.difference(&Convergence::chaotic(3)).is_none());
        assert!(matches!(initial(2, &[vec![0, 1]], &[]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn tightness_is_one() {
        let t = Convergence::topology_from_neighbourhoods(&[0b011, 0b010, 0b110]).unwrap();
        for x in 0..3 {
            assert_eq!(t.tightness_at(x).unwrap(), 1);
        }
        assert_eq!(Convergence::chaotic(3).tightness_at(1).unwrap(), 1);
        assert_eq!(Convergence::discrete(3).tightness_at(1).unwrap(), 1);
    }

    #[test]
    fn adherence_forms_agree() {
        let t = Convergence::topology_from_neighbourhoods(&[0b011, 0b010, 0b110]).unwrap();
        for s in 0..8 {
            assert_eq!(t.adherence(s), t.adherence_pointwise(s));
        }
        assert_eq!(t.adherence(0b111), 0b111);
    }
}
