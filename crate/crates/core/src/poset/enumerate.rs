//! Exhaustive generation of small posets up to isomorphism.

use std::collections::HashSet;

use super::{canonical_form, default_names, Poset, PosetError};

pub const MAX_ENUMERATION_SIZE: usize = 7;

/// One poset per isomorphism class on `n` elements, named `e0, e1, …`.
///
/// Each class on `n` elements is reached from a class on `n − 1` elements
/// by adding a new maximal element over one of its down-sets.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, PosetError> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(PosetError::SizeLimitExceeded {
            requested: n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let mut level = vec![Poset::antichain(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            let m = p.len();
            for mask in 0u32..(1 << m) {
                let inside = |x: usize| mask & (1 << x) != 0;
                let is_down_set = (0..m).all(|x| !inside(x) || p.predecessors(x).all(inside));
                if !is_down_set {
                    continue;
                }
                let mut pairs = p.strict_pairs();
                pairs.extend((0..m).filter(|&x| inside(x)).map(|x| (x, m)));
                let q = Poset::from_index_pairs(default_names(size), &pairs)
                    .expect("extension by a down-set is a poset");
                if seen.insert(canonical_form(&q)) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    Ok(level)
}
