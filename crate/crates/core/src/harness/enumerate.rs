//! Labeled finite topologies, enumerated through their specialization
//! preorders.

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, PointSet};

/// Largest point count accepted by [`enumerate_spaces`].
pub const MAX_ENUMERATION_POINTS: usize = 5;

/// Every labeled topology on `n` points, one per preorder; with `t0_only`,
/// one per partial order. Order is by the bit pattern of the relation.
pub fn enumerate_spaces(n: usize, t0_only: bool) -> Result<Vec<FiniteSpace>> {
    if n > MAX_ENUMERATION_POINTS {
        return Err(Error::SizeTooLarge { requested: n, max: MAX_ENUMERATION_POINTS });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let mut rel = vec![0u64; n];
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel[a] |= 1 << b;
            }
        }
        let transitive = (0..n).all(|a| PointSet(rel[a]).iter().all(|b| rel[b] & !(rel[a] | 1 << a) == 0));
        if !transitive {
            continue;
        }
        if t0_only && (0..n).any(|a| PointSet(rel[a]).iter().any(|b| rel[b] >> a & 1 == 1)) {
            continue;
        }
        let edges = pairs.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &e)| e);
        out.push(FiniteSpace::from_preorder(n, edges)?);
    }
    Ok(out)
}

/// Independent count: every family of subsets of `n` points that contains
/// `∅` and the full set and is closed under binary unions and intersections.
/// Returns the sorted open lists. Only feasible for `n ≤ 4`.
pub fn topologies_by_brute_force(n: usize, t0_only: bool) -> Result<Vec<Vec<PointSet>>> {
    if n > 4 {
        return Err(Error::SizeTooLarge { requested: n, max: 4 });
    }
    let full = (1u64 << n) - 1;
    // candidate members other than ∅ and the full set
    let middle: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0..1u64 << middle.len() {
        let mut family: Vec<u64> = vec![0];
        family.extend(PointSet(pick).iter().map(|j| middle[j]));
        if n > 0 {
            family.push(full);
        }
        let closed =
            family.iter().all(|&a| family.iter().all(|&b| family.contains(&(a | b)) && family.contains(&(a & b))));
        if !closed {
            continue;
        }
        if t0_only {
            let separated =
                (0..n).all(|x| (0..n).all(|y| x == y || family.iter().any(|&o| (o >> x & 1) != (o >> y & 1))));
            if !separated {
                continue;
            }
        }
        out.push(family.into_iter().map(PointSet).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_spaces(1, false).unwrap().len(), 1);
        assert_eq!(enumerate_spaces(2, true).unwrap().len(), 3);
        assert_eq!(enumerate_spaces(2, false).unwrap().len(), 4);
        assert_eq!(enumerate_spaces(3, false).unwrap().len(), 29);
        assert_eq!(enumerate_spaces(6, false).unwrap_err(), Error::SizeTooLarge { requested: 6, max: 5 });
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 0..=4 {
            for t0 in [false, true] {
                let ours: BTreeSet<Vec<PointSet>> =
                    enumerate_spaces(n, t0).unwrap().iter().map(|s| s.opens().to_vec()).collect();
                let brute: BTreeSet<Vec<PointSet>> = topologies_by_brute_force(n, t0).unwrap().into_iter().collect();
                assert_eq!(ours, brute, "n = {n}, t0 = {t0}");
            }
        }
    }

    #[test]
    fn duplicate_free() {
        let spaces = enumerate_spaces(4, false).unwrap();
        let distinct: BTreeSet<Vec<PointSet>> = spaces.iter().map(|s| s.opens().to_vec()).collect();
        assert_eq!(distinct.len(), spaces.len());
        assert_eq!(spaces.len(), 355);
        assert_eq!(enumerate_spaces(4, true).unwrap().len(), 219);
    }
}
