#![allow(dead_code)]

use dcm_core::{Label, Matching};
use proptest::prelude::*;

/// Decodes a bit string into a non-crossing matching: a set bit opens an
/// edge when both choices are possible, a clear bit closes the innermost.
pub fn from_bits(k: usize, bits: &[bool]) -> Matching {
    let n = 2 * k;
    let mut open: Vec<Label> = Vec::new();
    let mut pairs = Vec::new();
    for p in 1..=n {
        let remaining = n - p + 1;
        let close = if open.is_empty() {
            false
        } else if open.len() == remaining {
            true
        } else {
            !bits[p - 1]
        };
        if close {
            pairs.push((open.pop().unwrap(), p as Label));
        } else {
            open.push(p as Label);
        }
    }
    Matching::validate(k, &pairs).unwrap()
}

pub fn matching(k_min: usize, k_max: usize) -> impl Strategy<Value = Matching> {
    (k_min..=k_max)
        .prop_flat_map(|k| (Just(k), proptest::collection::vec(any::<bool>(), 2 * k), 0..2 * k as i64))
        .prop_map(|(k, bits, s)| from_bits(k, &bits).rotate(s))
}
