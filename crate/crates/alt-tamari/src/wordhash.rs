//! A fast word-at-a-time hasher for the crate's hot maps.
//!
//! The sweeps hash hundreds of thousands of small structured keys (node
//! lists, bit sets) where SipHash's per-call overhead dominates; this is the
//! usual multiply–rotate–xor word hash.  Not DoS-resistant, which is fine for
//! keys derived from enumerated combinatorial data.

use std::collections::{HashMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

pub(crate) type WordMap<K, V> = HashMap<K, V, BuildHasherDefault<WordHasher>>;
pub(crate) type WordSet<K> = HashSet<K, BuildHasherDefault<WordHasher>>;

#[derive(Default)]
pub(crate) struct WordHasher(u64);

const SEED: u64 = 0x51_7c_c1_b7_27_22_0a_95;

impl WordHasher {
    #[inline]
    fn mix(&mut self, word: u64) {
        self.0 = (self.0.rotate_left(5) ^ word).wrapping_mul(SEED);
    }
}

impl Hasher for WordHasher {
    #[inline]
    fn finish(&self) -> u64 {
        self.0
    }

    #[inline]
    fn write(&mut self, bytes: &[u8]) {
        let mut chunks = bytes.chunks_exact(8);
        for c in &mut chunks {
            self.mix(u64::from_ne_bytes(c.try_into().expect("8-byte chunk")));
        }
        let rest = chunks.remainder();
        if !rest.is_empty() {
            let mut word = [0u8; 8];
            word[..rest.len()].copy_from_slice(rest);
            self.mix(u64::from_ne_bytes(word));
        }
    }

    #[inline]
    fn write_u64(&mut self, n: u64) {
        self.mix(n);
    }

    #[inline]
    fn write_usize(&mut self, n: usize) {
        self.mix(n as u64);
    }

    #[inline]
    fn write_u32(&mut self, n: u32) {
        self.mix(u64::from(n));
    }

    #[inline]
    fn write_u8(&mut self, n: u8) {
        self.mix(u64::from(n));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_behave_as_maps() {
        let mut m: WordMap<Vec<(i64, i64)>, usize> = WordMap::default();
        m.insert(vec![(0, 1), (2, 3)], 7);
        m.insert(vec![(0, 1)], 8);
        assert_eq!(m[&vec![(0, 1), (2, 3)]], 7);
        assert_eq!(m[&vec![(0, 1)]], 8);
        assert!(!m.contains_key(&vec![(2, 3)]));

        let mut s: WordSet<u64> = WordSet::default();
        assert!(s.insert(42));
        assert!(!s.insert(42));
    }
}
