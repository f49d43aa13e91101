//! Convergences on the hyperspace `C(X,$)` of opens: the Scott convergence,
//! topologies generated by collections of isotone families, the solidity
//! axioms, covers and α-covers, and finite cover and selection numbers.

use serde::{Deserialize, Serialize};

use crate::convergence::{kernels, Convergence, TABULATE_BITS};
use crate::error::{Error, Result};
use crate::hyperfamily::{up_closure, AlphaCollection, HyperSet, IsotoneFamily};
use crate::space::{low_bits, FiniteSpace, OpenSet, PointSet};

/// A convergence whose carrier is the opens of a space, by open index.
#[derive(Clone, Debug)]
pub struct HyperConvergence {
    space: FiniteSpace,
    conv: Convergence,
}

impl HyperConvergence {
    pub fn new(space: FiniteSpace, conv: Convergence) -> Result<Self> {
        if conv.size() != space.open_count() {
            return Err(Error::InconsistentSpec(format!(
                "carrier has {} elements but the space has {} opens",
                conv.size(),
                space.open_count()
            )));
        }
        Ok(HyperConvergence { space, conv })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn conv(&self) -> &Convergence {
        &self.conv
    }

    pub fn lim(&self, kernel: HyperSet) -> HyperSet {
        self.conv.lim(kernel)
    }

    /// The limits of a kernel, as opens.
    pub fn limit_opens(&self, kernel: HyperSet) -> Vec<OpenSet> {
        self.space.opens_of_mask(self.lim(kernel))
    }
}

fn check_carrier(space: &FiniteSpace) -> Result<()> {
    if space.open_count() > TABULATE_BITS {
        Err(Error::CarrierTooLarge(space.open_count()))
    } else {
        Ok(())
    }
}

/// Opens contained in `set`, as a hyperset.
fn opens_inside(space: &FiniteSpace, set: PointSet) -> HyperSet {
    space.opens().iter().enumerate().filter(|(_, o)| o.is_subset(set)).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// `⋂T` for every hyperset `T` (the empty intersection is the whole space).
fn intersections(space: &FiniteSpace) -> Vec<PointSet> {
    let m = space.open_count();
    let mut out = vec![space.full(); 1 << m];
    for t in 1usize..1 << m {
        let low = t.trailing_zeros() as usize;
        out[t] = out[t & (t - 1)].intersection(space.opens()[low]);
    }
    out
}

/// `[X,$]`: `Y ∈ lim(K)` iff `Y ⊆ ⋃_{T ⊇ K} int(⋂T)`, with the union taken
/// over every superset `T` of the kernel.
pub fn scott_convergence(space: &FiniteSpace) -> Result<HyperConvergence> {
    check_carrier(space)?;
    let m = space.open_count();
    let meets = intersections(space);
    let mut cover: Vec<PointSet> = meets.iter().map(|&s| space.interior(s)).collect();
    // union over supersets, one bit at a time
    for bit in 0..m {
        for t in 0..1usize << m {
            if t >> bit & 1 == 0 {
                cover[t] = cover[t].union(cover[t | 1 << bit]);
            }
        }
    }
    let below: Vec<HyperSet> = cover.iter().map(|&c| opens_inside(space, c)).collect();
    let conv = Convergence::trusted(m, move |k| below[k as usize]);
    HyperConvergence::new(space.clone(), conv)
}

/// `Y ∈ lim(K)` iff `Y ⊆ int(⋂K)`: the Scott convergence with the union over
/// supersets already collapsed.
pub fn scott_by_kernel(space: &FiniteSpace) -> Result<HyperConvergence> {
    check_carrier(space)?;
    let meets = intersections(space);
    let below: Vec<HyperSet> = meets.iter().map(|&s| opens_inside(space, space.interior(s))).collect();
    let conv = Convergence::trusted(space.open_count(), move |k| below[k as usize]);
    HyperConvergence::new(space.clone(), conv)
}

/// The topology on `C(X,$)` with subbase `α`.
pub fn hyper_topology(space: &FiniteSpace, alpha: &AlphaCollection) -> Result<HyperConvergence> {
    if alpha.is_degenerate() {
        return Err(Error::DegenerateAlpha);
    }
    check_carrier(space)?;
    let masks = alpha.masks(space);
    let all = space.all_opens_mask();
    let nbhd: Vec<HyperSet> = (0..space.open_count())
        .map(|y| masks.iter().filter(|&&a| a >> y & 1 == 1).fold(all, |acc, &a| acc & a))
        .collect();
    HyperConvergence::new(space.clone(), Convergence::topology_from_neighbourhoods(&nbhd)?)
}

/// Outcome of [`solidity_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solidity {
    pub lower: bool,
    pub upper_regular: bool,
    pub compact: bool,
    pub directed_sups: bool,
    pub pseudotopology: bool,
    pub solid: bool,
}

/// Checks the solidity axioms on every kernel.
///
/// Respecting directed sups only needs directed systems of two filters: a
/// finite directed system has a largest filter and a largest open, so the
/// condition reduces to `K₂ ⊆ K₁`, `B₁ ∈ lim K₁`, `B₂ ∈ lim K₂`, `B₂ ⊆ B₁`
/// implying `B₁ ∈ lim K₂`. Those pairs are enumerated exhaustively.
pub fn solidity_check(tau: &HyperConvergence) -> Solidity {
    let space = &tau.space;
    let conv = &tau.conv;
    let m = space.open_count();
    let lower = kernels(m).all(|k| {
        let l = conv.lim(k);
        PointSet(l).iter().all(|i| space.opens_below(i) & !l == 0)
    });
    let upper_regular = kernels(m).all(|k| conv.lim(k) & !conv.lim(up_closure(space, k)) == 0);
    let compact = (0..m).all(|i| conv.lim(1 << i) != 0);
    let up_of_lim: Vec<HyperSet> = (0..=low_bits(m)).map(|k| up_closure(space, conv.lim(k))).collect();
    let directed_sups = kernels(m).all(|k1| {
        let l1 = conv.lim(k1);
        let mut k2 = k1;
        loop {
            if k2 != 0 {
                let l2 = conv.lim(k2);
                if l1 & !l2 & up_of_lim[k2 as usize] != 0 {
                    return false;
                }
            }
            if k2 == 0 {
                return true;
            }
            k2 = (k2 - 1) & k1;
        }
    });
    let pseudotopology = conv.pseudotopology_witness().is_none();
    Solidity {
        lower,
        upper_regular,
        compact,
        directed_sups,
        pseudotopology,
        solid: lower && upper_regular && compact && directed_sups && pseudotopology,
    }
}

/// `U ⊆ ⋃P`.
pub fn is_cover(family: &[OpenSet], target: OpenSet) -> bool {
    target.is_subset(family.iter().fold(PointSet::EMPTY, |a, &o| a.union(o)))
}

/// `P` is nonempty and meets every family of `α` that contains `U`.
///
/// The families not containing `U` play no role at `U`; nonemptiness stands
/// for the whole hyperspace, which is open in every `α(X,$)`.
pub fn is_alpha_cover(space: &FiniteSpace, alpha: &AlphaCollection, family: &[OpenSet], target: OpenSet) -> bool {
    let p = space.mask_of_opens(family);
    p != 0 && required_masks(space, alpha, target).iter().all(|&a| a & p != 0)
}

/// The families of `α` containing `U`, as hypersets.
fn required_masks(space: &FiniteSpace, alpha: &AlphaCollection, target: OpenSet) -> Vec<HyperSet> {
    alpha.families.iter().filter(|f| f.contains(target)).map(|f| f.mask(space)).collect()
}

fn covers_mask(required: &[HyperSet], p: HyperSet) -> bool {
    p != 0 && required.iter().all(|&a| a & p != 0)
}

/// Smallest α-subcover of `p`, by increasing size.
fn min_subcover(required: &[HyperSet], p: HyperSet) -> usize {
    let members: Vec<usize> = PointSet(p).iter().collect();
    (1..=members.len())
        .find(|&size| {
            crate::hyperfamily::subsets_of_size(members.len(), size).any(|pick| {
                let sub = PointSet(pick).iter().fold(0u64, |a, j| a | 1 << members[j]);
                covers_mask(required, sub)
            })
        })
        .unwrap_or(0)
}

/// Finite cover numbers at an open `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverNumbers {
    /// Worst case, over α-covers of `U`, of the smallest α-subcover.
    pub lindelof: usize,
    /// Fewest families among those containing `U` such that each of them
    /// contains one of the chosen.
    pub arens: usize,
}

/// Largest carrier on which covers are enumerated.
pub const MAX_COVER_OPENS: usize = 16;

pub fn cover_numbers(space: &FiniteSpace, alpha: &AlphaCollection, target: OpenSet) -> Result<CoverNumbers> {
    if alpha.is_degenerate() {
        return Err(Error::DegenerateAlpha);
    }
    if space.open_count() > MAX_COVER_OPENS {
        return Err(Error::CarrierTooLarge(space.open_count()));
    }
    let required = required_masks(space, alpha, target);
    let lindelof = kernels(space.open_count())
        .filter(|&p| covers_mask(&required, p))
        .map(|p| min_subcover(&required, p))
        .max()
        .unwrap_or(0);
    Ok(CoverNumbers { lindelof, arens: arens_number(alpha, target) })
}

/// The α-Arens number at `U`: the ⊆-minimal families containing `U` must all
/// be chosen, and they suffice.
pub fn arens_number(alpha: &AlphaCollection, target: OpenSet) -> usize {
    let mut local: Vec<&IsotoneFamily> = alpha.families.iter().filter(|f| f.contains(target)).collect();
    local.sort();
    local.dedup();
    local.iter().filter(|f| !local.iter().any(|g| g != *f && g.is_subfamily(f))).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelectionMode {
    /// Finitely many members from each cover.
    Hurewicz,
    /// One member from each cover.
    Rothberger,
}

/// Selects from each α-cover of `U` so that the selection is again an α-cover.
/// Hurewicz selections minimise the largest selected part. Returns `None` when
/// no selection exists.
pub fn selection(
    space: &FiniteSpace,
    alpha: &AlphaCollection,
    target: OpenSet,
    covers: &[Vec<OpenSet>],
    mode: SelectionMode,
) -> Result<Option<Vec<Vec<OpenSet>>>> {
    if space.open_count() > MAX_COVER_OPENS {
        return Err(Error::CarrierTooLarge(space.open_count()));
    }
    for (i, c) in covers.iter().enumerate() {
        if !is_alpha_cover(space, alpha, c, target) {
            return Err(Error::NotACover(i));
        }
    }
    let required = required_masks(space, alpha, target);
    let masks: Vec<HyperSet> = covers.iter().map(|c| space.mask_of_opens(c)).collect();
    let chosen = match mode {
        SelectionMode::Rothberger => search_selection(&required, &masks, 1, true),
        SelectionMode::Hurewicz => {
            let widest = masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
            (1..=widest).find_map(|bound| search_selection(&required, &masks, bound, false))
        }
    };
    Ok(chosen.map(|parts| parts.into_iter().map(|m| space.opens_of_mask(m)).collect()))
}

/// Depth-first search over one part per cover, each of size at most `bound`
/// (exactly one when `exact_one`).
fn search_selection(
    required: &[HyperSet],
    covers: &[HyperSet],
    bound: usize,
    exact_one: bool,
) -> Option<Vec<HyperSet>> {
    fn rec(
        required: &[HyperSet],
        covers: &[HyperSet],
        bound: usize,
        exact_one: bool,
        i: usize,
        acc: HyperSet,
        parts: &mut Vec<HyperSet>,
    ) -> bool {
        if i == covers.len() {
            return covers_mask(required, acc);
        }
        let mut sub = covers[i];
        loop {
            let n = sub.count_ones() as usize;
            let fits = if exact_one { n == 1 } else { n <= bound };
            if fits {
                parts.push(sub);
                if rec(required, covers, bound, exact_one, i + 1, acc | sub, parts) {
                    return true;
                }
                parts.pop();
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & covers[i];
        }
    }
    if covers.is_empty() {
        return None;
    }
    let mut parts = Vec::new();
    rec(required, covers, bound, exact_one, 0, 0, &mut parts).then_some(parts)
}

/// The α-covers of `U` with no proper α-subcover.
pub fn minimal_alpha_covers(
    space: &FiniteSpace,
    alpha: &AlphaCollection,
    target: OpenSet,
) -> Result<Vec<Vec<OpenSet>>> {
    if space.open_count() > MAX_COVER_OPENS {
        return Err(Error::CarrierTooLarge(space.open_count()));
    }
    let required = required_masks(space, alpha, target);
    let covers: Vec<HyperSet> = kernels(space.open_count()).filter(|&p| covers_mask(&required, p)).collect();
    Ok(covers
        .iter()
        .filter(|&&p| PointSet(p).iter().all(|i| !covers_mask(&required, p & !(1 << i))))
        .map(|&p| space.opens_of_mask(p))
        .collect())
}

/// Finite selection numbers at `U` over sequences of minimal α-covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionNumbers {
    /// Least length `k` such that every `k` minimal α-covers admit a
    /// Rothberger selection (`None` if no length up to the bound works).
    pub rothberger: Option<usize>,
    /// For sequences of the same length, the worst optimal Hurewicz part size.
    pub hurewicz: Option<usize>,
}

pub fn selection_numbers(
    space: &FiniteSpace,
    alpha: &AlphaCollection,
    target: OpenSet,
    max_length: usize,
) -> Result<SelectionNumbers> {
    let minimal = minimal_alpha_covers(space, alpha, target)?;
    let masks: Vec<HyperSet> = minimal.iter().map(|c| space.mask_of_opens(c)).collect();
    let required = required_masks(space, alpha, target);
    // sequences up to reordering: nondecreasing index tuples
    let sequences = |len: usize| -> Vec<Vec<HyperSet>> {
        let mut out = Vec::new();
        let mut idx = vec![0usize; len];
        if masks.is_empty() {
            return out;
        }
        loop {
            out.push(idx.iter().map(|&i| masks[i]).collect());
            let mut pos = len;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if idx[pos] + 1 < masks.len() {
                    let v = idx[pos] + 1;
                    for slot in &mut idx[pos..] {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    };
    let rothberger = (1..=max_length)
        .find(|&len| sequences(len).iter().all(|seq| search_selection(&required, seq, 1, true).is_some()));
    let hurewicz = rothberger.map(|len| {
        sequences(len)
            .iter()
            .map(|seq| {
                let widest = seq.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
                (1..=widest).find(|&b| search_selection(&required, seq, b, false).is_some()).unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    });
    Ok(SelectionNumbers { rothberger, hurewicz })
}

/// Convergence on the closed sets of `X`, closed set `i` being the complement
/// of open `i`: `C ∈ lim(K)` iff `⋂_{𝒢 ⊇ K} cl(⋃𝒢) ⊆ C`.
pub fn upper_kuratowski_view(space: &FiniteSpace) -> Result<Convergence> {
    check_carrier(space)?;
    let m = space.open_count();
    let n = space.points();
    let closed: Vec<PointSet> = space.opens().iter().map(|o| o.complement(n)).collect();
    let mut adh = vec![PointSet::EMPTY; 1 << m];
    for t in 1usize..1 << m {
        let low = t.trailing_zeros() as usize;
        adh[t] = adh[t & (t - 1)].union(closed[low]);
    }
    for a in adh.iter_mut() {
        *a = space.closure(*a);
    }
    for bit in 0..m {
        for t in 0..1usize << m {
            if t >> bit & 1 == 0 {
                adh[t] = adh[t].intersection(adh[t | 1 << bit]);
            }
        }
    }
    let above: Vec<HyperSet> = adh
        .iter()
        .map(|&a| closed.iter().enumerate().filter(|(_, c)| a.is_subset(**c)).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    Ok(Convergence::trusted(m, move |k| above[k as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfamily::{standard_alphas, HyperFilter};

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn scott_examples() {
        let s = FiniteSpace::sierpinski();
        let scott = scott_convergence(&s).unwrap();
        let k = s.mask_of_opens(&[ps(&[1]), s.full()]);
        assert_eq!(scott.limit_opens(k), vec![PointSet::EMPTY, ps(&[1])]);
        let top = s.mask_of_opens(&[s.full()]);
        assert_eq!(scott.lim(top), s.all_opens_mask());
        let d = FiniteSpace::discrete(2);
        let scott = scott_convergence(&d).unwrap();
        let k = d.mask_of_opens(&[ps(&[0]), ps(&[1])]);
        assert_eq!(scott.limit_opens(k), vec![PointSet::EMPTY]);
    }

    #[test]
    fn scott_reduces_to_kernel_form() {
        for space in [FiniteSpace::chain(3), FiniteSpace::discrete(3), FiniteSpace::indiscrete(2)] {
            let a = scott_convergence(&space).unwrap();
            let b = scott_by_kernel(&space).unwrap();
            assert_eq!(a.conv().difference(b.conv()), None);
        }
    }

    #[test]
    fn hyper_topologies() {
        let s = FiniteSpace::sierpinski();
        let alphas = standard_alphas(&s).unwrap();
        let kappa = hyper_topology(&s, &alphas.kappa).unwrap();
        // Alexandrov topology of the chain ∅ ⊂ {1} ⊂ X: open sets are up-sets
        for k in kernels(3) {
            for y in 0..3 {
                let expect = PointSet(k).iter().all(|i| s.opens()[y].is_subset(s.opens()[i]));
                assert_eq!(kappa.conv().converges(k, y), expect);
            }
        }
        let full = AlphaCollection::custom(vec![IsotoneFamily::full()]);
        let indiscrete = hyper_topology(&s, &full).unwrap();
        assert_eq!(indiscrete.conv().difference(&Convergence::chaotic(3)), None);
        assert_eq!(
            hyper_topology(&s, &AlphaCollection::custom(vec![IsotoneFamily::empty()])).unwrap_err(),
            Error::DegenerateAlpha
        );
    }

    #[test]
    fn solidity_examples() {
        for space in [FiniteSpace::sierpinski(), FiniteSpace::discrete(2), FiniteSpace::chain(3)] {
            assert!(solidity_check(&scott_convergence(&space).unwrap()).solid);
            let kappa = standard_alphas(&space).unwrap().kappa;
            assert!(solidity_check(&hyper_topology(&space, &kappa).unwrap()).solid);
        }
        let d = FiniteSpace::discrete(2);
        let isolated = HyperConvergence::new(d.clone(), Convergence::discrete(d.open_count())).unwrap();
        assert!(!solidity_check(&isolated).lower);
    }

    #[test]
    fn cover_examples() {
        let d = FiniteSpace::discrete(3);
        let alphas = standard_alphas(&d).unwrap();
        let singletons = [ps(&[0]), ps(&[1]), ps(&[2])];
        assert!(is_cover(&singletons, d.full()));
        assert!(is_alpha_cover(&d, &alphas.s, &singletons, d.full()));
        assert!(!is_alpha_cover(&d, &alphas.p, &singletons, d.full()));
        let two = FiniteSpace::discrete(2);
        assert!(!is_cover(&[ps(&[0])], two.full()));
    }

    #[test]
    fn cover_number_examples() {
        let d = FiniteSpace::discrete(3);
        let alphas = standard_alphas(&d).unwrap();
        assert_eq!(cover_numbers(&d, &alphas.s, d.full()).unwrap().lindelof, 3);
        assert_eq!(cover_numbers(&d, &alphas.kappa, d.full()).unwrap().lindelof, 1);
        let s = FiniteSpace::sierpinski();
        let kappa = standard_alphas(&s).unwrap().kappa;
        assert_eq!(cover_numbers(&s, &kappa, s.full()).unwrap().arens, 1);
    }

    #[test]
    fn arens_matches_subset_search() {
        for space in [FiniteSpace::sierpinski(), FiniteSpace::discrete(2), FiniteSpace::chain(3)] {
            let alphas = standard_alphas(&space).unwrap();
            for alpha in [&alphas.s, &alphas.kappa, &alphas.p] {
                for &u in space.opens() {
                    let local: Vec<&IsotoneFamily> = alpha.families.iter().filter(|f| f.contains(u)).collect();
                    let brute = (0..=local.len())
                        .find(|&size| {
                            crate::hyperfamily::subsets_of_size(local.len(), size).any(|pick| {
                                local.iter().all(|f| PointSet(pick).iter().any(|j| local[j].is_subfamily(f)))
                            })
                        })
                        .unwrap();
                    assert_eq!(arens_number(alpha, u), brute);
                }
            }
        }
    }

    #[test]
    fn selection_examples() {
        let d = FiniteSpace::discrete(3);
        let s = standard_alphas(&d).unwrap().s;
        let singletons = vec![ps(&[0]), ps(&[1]), ps(&[2])];
        let covers = vec![singletons.clone(), singletons.clone()];
        assert_eq!(selection(&d, &s, d.full(), &covers, SelectionMode::Rothberger).unwrap(), None);
        let h = selection(&d, &s, d.full(), &covers, SelectionMode::Hurewicz).unwrap().unwrap();
        assert_eq!(h.iter().map(Vec::len).max(), Some(2));
        let with_top = vec![vec![d.full(), ps(&[0])]];
        let r = selection(&d, &s, d.full(), &with_top, SelectionMode::Rothberger).unwrap().unwrap();
        assert_eq!(r, vec![vec![d.full()]]);
        assert_eq!(selection(&d, &s, d.full(), &[], SelectionMode::Rothberger).unwrap(), None);
        assert_eq!(
            selection(&d, &s, d.full(), &[vec![ps(&[0])]], SelectionMode::Hurewicz).unwrap_err(),
            Error::NotACover(0)
        );
    }

    #[test]
    fn selection_numbers_discrete() {
        let d = FiniteSpace::discrete(3);
        let s = standard_alphas(&d).unwrap().s;
        let numbers = selection_numbers(&d, &s, d.full(), 4).unwrap();
        assert_eq!(numbers.rothberger, Some(3));
    }

    #[test]
    fn upper_kuratowski_examples() {
        let s = FiniteSpace::sierpinski();
        let uk = upper_kuratowski_view(&s).unwrap();
        // closed {0} is the complement of open {1}
        let i = s.open_index(ps(&[1])).unwrap();
        let limits: Vec<PointSet> = PointSet(uk.lim(1 << i)).iter().map(|j| s.opens()[j].complement(2)).collect();
        assert_eq!(limits.len(), 2);
        assert!(limits.contains(&ps(&[0])) && limits.contains(&s.full()));
        // the empty closed set is the complement of X
        let top = s.open_index(s.full()).unwrap();
        assert_eq!(uk.lim(1 << top), s.all_opens_mask());
        for space in [FiniteSpace::chain(3), FiniteSpace::discrete(3)] {
            let scott = scott_convergence(&space).unwrap();
            assert_eq!(upper_kuratowski_view(&space).unwrap().difference(scott.conv()), None);
        }
    }

    #[test]
    fn regularized_filters_keep_scott_limits() {
        let x = FiniteSpace::chain(3);
        let scott = scott_convergence(&x).unwrap();
        for k in kernels(x.open_count()) {
            let reg = HyperFilter::new(k).unwrap().regularized(&x).kernel();
            assert_eq!(scott.lim(k) & !scott.lim(reg), 0);
        }
    }
}
