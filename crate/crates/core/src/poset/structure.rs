//! Twin classes and the decomposition into inseparable blocks.

use super::Poset;

/// Partition of the ground set into maximal sets of mutual twins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Each class sorted by index; classes ordered by their smallest member.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[x]` is the position of x's class in `classes`.
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Ordered partition `B_1, …, B_k` with every element of `B_i` below every
/// element of `B_j` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<usize>>,
}

impl Poset {
    /// Two elements are twins when they have the same strict down-set and
    /// the same strict up-set.
    pub fn are_twins(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        (0..self.len()).all(|k| {
            k == a
                || k == b
                || (self.precedes(k, a) == self.precedes(k, b) && self.precedes(a, k) == self.precedes(b, k))
        }) && self.incomparable(a, b)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn twin_partition(&self) -> TwinPartition {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![x];
            class_of[x] = id;
            for y in x + 1..n {
                if class_of[y] == usize::MAX && self.are_twins(x, y) {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            classes.push(class);
        }
        TwinPartition { classes, class_of }
    }

    pub fn is_twin_free(&self) -> bool {
        self.twin_partition().is_trivial()
    }

    /// The subposet on one representative per twin class.
    pub fn twin_quotient(&self) -> (Poset, TwinPartition) {
        let tp = self.twin_partition();
        (self.induced(&tp.representatives()), tp)
    }

    pub fn block_decomposition(&self) -> BlockDecomposition {
        let n = self.len();
        if n == 0 {
            return BlockDecomposition { blocks: Vec::new() };
        }
        let succ: Vec<usize> = (0..n).map(|x| self.up_degree(x)).collect();
        let mut cuts = vec![0usize];
        for k in 1..n {
            let cand: Vec<usize> = (0..n).filter(|&x| succ[x] >= n - k).collect();
            if cand.len() != k {
                continue;
            }
            let mut inside = vec![false; n];
            for &x in &cand {
                inside[x] = true;
            }
            let ok = cand
                .iter()
                .all(|&x| (0..n).all(|y| inside[y] || self.precedes(x, y)));
            if ok {
                cuts.push(k);
            }
        }
        cuts.push(n);
        // elements are ranked by successor count: the lowest block holds the
        // elements with the most successors
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| succ[b].cmp(&succ[a]).then(a.cmp(&b)));
        let mut blocks = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let mut block: Vec<usize> = order[w[0]..w[1]].to_vec();
            block.sort_unstable();
            blocks.push(block);
        }
        BlockDecomposition { blocks }
    }

    pub fn is_inseparable(&self) -> bool {
        self.block_decomposition().blocks.len() <= 1
    }
}
