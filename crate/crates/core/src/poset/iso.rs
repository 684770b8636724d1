//! Isomorphism, canonical forms and induced-subposet search.

use super::Poset;

/// Per-element invariant used to prune every search in this module:
/// (height, depth, |down-set|, |up-set|).
type Key = (usize, usize, usize, usize);

fn keys(p: &Poset) -> Vec<Key> {
    let n = p.len();
    let order = linear_extension(p);
    let mut height = vec![0usize; n];
    for &x in &order {
        height[x] = p.predecessors(x).map(|y| height[y] + 1).max().unwrap_or(0);
    }
    let mut depth = vec![0usize; n];
    for &x in order.iter().rev() {
        depth[x] = p.successors(x).map(|y| depth[y] + 1).max().unwrap_or(0);
    }
    (0..n)
        .map(|x| (height[x], depth[x], p.down_degree(x), p.up_degree(x)))
        .collect()
}

/// Elements sorted by down-set size, which is a linear extension.
pub(crate) fn linear_extension(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| (p.down_degree(x), x));
    order
}

/// Canonical encoding of an isomorphism class.
///
/// `bits` lists, for each position m and each earlier position i, the
/// relations `i ≺ m` and `m ≺ i` of the canonical ordering.
/// Equality, hashing and ordering look at `n` and `bits` only.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: Vec<bool>,
    order: Vec<usize>,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.bits).cmp(&(other.n, &other.bits))
    }
}

impl CanonicalForm {
    pub fn to_bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// The canonical ordering: position k holds element `order[k]`.
    pub fn ordering(&self) -> &[usize] {
        &self.order
    }
}

pub fn canonical_form(p: &Poset) -> CanonicalForm {
    let n = p.len();
    let k = keys(p);
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&x| (k[x], x));
    // positions whose key equals the key of slot m may receive any element
    // of that key class
    let slot_key: Vec<Key> = slots.iter().map(|&x| k[x]).collect();

    struct Search<'a> {
        p: &'a Poset,
        k: &'a [Key],
        slot_key: &'a [Key],
        best: Option<Vec<bool>>,
        best_order: Vec<usize>,
        order: Vec<usize>,
        bits: Vec<bool>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, m: usize) {
            let n = self.p.len();
            if m == n {
                if self.best.as_ref().map_or(true, |b| self.bits < *b) {
                    self.best = Some(self.bits.clone());
                    self.best_order = self.order.clone();
                }
                return;
            }
            for x in 0..n {
                if self.used[x] || self.k[x] != self.slot_key[m] {
                    continue;
                }
                let mark = self.bits.len();
                for i in 0..m {
                    let y = self.order[i];
                    self.bits.push(self.p.precedes(y, x));
                    self.bits.push(self.p.precedes(x, y));
                }
                let prune = match &self.best {
                    Some(b) => self.bits[..] > b[..self.bits.len()],
                    None => false,
                };
                if !prune {
                    self.used[x] = true;
                    self.order.push(x);
                    self.go(m + 1);
                    self.order.pop();
                    self.used[x] = false;
                }
                self.bits.truncate(mark);
            }
        }
    }

    let mut s = Search {
        p,
        k: &k,
        slot_key: &slot_key,
        best: None,
        best_order: Vec::new(),
        order: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n),
        used: vec![false; n],
    };
    s.go(0);
    CanonicalForm {
        n,
        bits: s.best.unwrap_or_default(),
        order: s.best_order,
    }
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    if p.len() != q.len() || p.comparable_pairs() != q.comparable_pairs() {
        return false;
    }
    let kp = keys(p);
    let kq = keys(q);
    let mut sp = kp.clone();
    let mut sq = kq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return false;
    }
    let order = search_order(p);
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    extend(p, q, &order, 0, &mut map, &mut used, &|x, y| kp[x] == kq[y])
}

/// An injective map from `pattern` into `p` whose image induces a copy of
/// `pattern`; `result[i]` is the image of pattern element `i`.
pub fn contains_induced(p: &Poset, pattern: &Poset) -> Option<Vec<usize>> {
    if pattern.len() > p.len() {
        return None;
    }
    let kp = keys(p);
    let kq = keys(pattern);
    let order = search_order(pattern);
    let mut map = vec![usize::MAX; pattern.len()];
    let mut used = vec![false; p.len()];
    // embedding preserves chains and comparabilities, so each invariant of
    // the pattern element bounds that of its image from below
    let fits = |x: usize, y: usize| {
        let (a, b) = (kq[x], kp[y]);
        a.0 <= b.0 && a.1 <= b.1 && a.2 <= b.2 && a.3 <= b.3
    };
    if extend(pattern, p, &order, 0, &mut map, &mut used, &fits) {
        Some(map)
    } else {
        None
    }
}

/// Greedy order: next is the element with most relations to those already
/// chosen, so that conflicts surface early.
fn search_order(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&x| !chosen[x])
            .max_by_key(|&x| {
                let links = order.iter().filter(|&&y| !p.incomparable(x, y)).count();
                let deg = p.up_degree(x) + p.down_degree(x);
                (links, deg, std::cmp::Reverse(x))
            })
            .expect("unchosen element exists");
        chosen[next] = true;
        order.push(next);
    }
    order
}

fn extend(
    from: &Poset,
    to: &Poset,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    fits: &dyn Fn(usize, usize) -> bool,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..to.len() {
        if used[y] || !fits(x, y) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x2| {
            let y2 = map[x2];
            from.precedes(x, x2) == to.precedes(y, y2) && from.precedes(x2, x) == to.precedes(y2, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(from, to, order, depth + 1, map, used, fits) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}
