//! Chunked lookup tables for maps on subsets that distribute over unions.
//!
//! A map `φ` with `φ(K ∪ L) = φ(K) ⋄ φ(L)` (for `⋄` one of `|`, `&`) is fixed by
//! its values on singletons. Splitting the carrier into chunks of at most
//! [`CHUNK_BITS`] elements and tabulating each chunk turns one evaluation into a
//! handful of lookups, which keeps sweeps over `2^27` kernels affordable.

pub const CHUNK_BITS: usize = 14;

#[derive(Clone, Debug)]
struct Chunk {
    shift: u32,
    mask: u64,
    table: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct SubsetMap {
    chunks: Vec<Chunk>,
    meet: bool,
    empty: u64,
}

impl SubsetMap {
    /// `K ↦ ⋃_{i∈K} values[i]`.
    pub fn join(values: &[u64]) -> Self {
        Self::build(values, false, 0)
    }

    /// `K ↦ ⋂_{i∈K} values[i]`, with `top` for the empty set.
    pub fn meet(values: &[u64], top: u64) -> Self {
        Self::build(values, true, top)
    }

    fn build(values: &[u64], meet: bool, empty: u64) -> Self {
        let mut chunks = Vec::new();
        let mut start = 0;
        while start < values.len() {
            let width = (values.len() - start).min(CHUNK_BITS);
            let mut table = vec![empty; 1 << width];
            for sub in 1..1usize << width {
                let low = sub.trailing_zeros() as usize;
                let rest = table[sub & (sub - 1)];
                let v = values[start + low];
                table[sub] = if meet { rest & v } else { rest | v };
            }
            chunks.push(Chunk { shift: start as u32, mask: (1u64 << width) - 1, table });
            start += width;
        }
        SubsetMap { chunks, meet, empty }
    }

    #[inline]
    pub fn eval(&self, set: u64) -> u64 {
        let mut acc = self.empty;
        let mut first = true;
        for c in &self.chunks {
            let v = c.table[((set >> c.shift) & c.mask) as usize];
            if first {
                acc = v;
                first = false;
            } else if self.meet {
                acc &= v;
            } else {
                acc |= v;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_and_meet_match_direct_folds() {
        let values: Vec<u64> = (0..20u64).map(|i| (i * 0x9e37_79b9) ^ (i << 7)).collect();
        let join = SubsetMap::join(&values);
        let meet = SubsetMap::meet(&values, u64::MAX);
        for set in [0u64, 1, 0b1011, 0xfffff, 0x8_4021, 0x7_0f0f] {
            let members = (0..20).filter(|i| set >> i & 1 == 1);
            let j = members.clone().fold(0, |a, i| a | values[i]);
            let m = members.fold(u64::MAX, |a, i| a & values[i]);
            assert_eq!(join.eval(set), j);
            assert_eq!(meet.eval(set), m);
        }
    }

    #[test]
    fn empty_carrier() {
        assert_eq!(SubsetMap::join(&[]).eval(0), 0);
        assert_eq!(SubsetMap::meet(&[], 7).eval(0), 7);
    }
}
