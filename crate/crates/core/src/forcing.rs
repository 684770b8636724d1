//! Forcing trails and cycles.
//!
//! A trail is a walk whose steps are `x ≺ y` (value +1) or `x ∥ y`
//! (value −1). Positive cycles rule out every representation; value-0
//! cycles pin the relative centers of their elements.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::dyadic::Dyadic;
use crate::poset::{Poset, Relation};
use crate::representation::{precedes as interval_precedes, IntervalType, PlacedInterval, TypeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Prec,
    Par,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Prec => 1,
            Step::Par => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Step::Prec => "<",
            Step::Par => "||",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForcingError {
    #[error("step {position} ({from} -> {to}) does not match the poset")]
    InvalidStep { position: usize, from: String, to: String },
    #[error("unknown element `{0}`")]
    UnknownName(String),
    #[error("no value-0 cycle through the requested elements")]
    NoSuchCycle,
    #[error("the poset has a forcing cycle of positive value")]
    PositiveCycleExists(ForcingCycle),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

/// A forcing trail `x_0, …, x_t` over element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForcingTrail {
    nodes: Vec<String>,
    steps: Vec<Step>,
}

impl ForcingTrail {
    pub fn new(nodes: Vec<String>, steps: Vec<Step>) -> Result<Self, ForcingError> {
        if nodes.is_empty() || steps.len() + 1 != nodes.len() {
            return Err(ForcingError::MalformedCertificate(format!(
                "{} nodes and {} steps",
                nodes.len(),
                steps.len()
            )));
        }
        Ok(ForcingTrail { nodes, steps })
    }

    /// Reads the step marks off the poset.
    pub fn from_indices(p: &Poset, nodes: &[usize]) -> Result<Self, ForcingError> {
        assert!(!nodes.is_empty(), "a trail has at least one node");
        let mut steps = Vec::with_capacity(nodes.len() - 1);
        for (k, w) in nodes.windows(2).enumerate() {
            let step = match p.relation(w[0], w[1]) {
                Relation::Precedes => Step::Prec,
                Relation::Incomparable => Step::Par,
                _ => {
                    return Err(ForcingError::InvalidStep {
                        position: k,
                        from: p.name(w[0]).to_string(),
                        to: p.name(w[1]).to_string(),
                    })
                }
            };
            steps.push(step);
        }
        Ok(ForcingTrail {
            nodes: nodes.iter().map(|&i| p.name(i).to_string()).collect(),
            steps,
        })
    }

    pub fn single(name: impl Into<String>) -> Self {
        ForcingTrail {
            nodes: vec![name.into()],
            steps: Vec::new(),
        }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn first(&self) -> &str {
        &self.nodes[0]
    }

    pub fn last(&self) -> &str {
        self.nodes.last().expect("non-empty")
    }

    /// `up − side` over the whole trail.
    pub fn val(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    /// Value at every position; `values()[0] == 0`.
    pub fn values(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut acc = 0;
        out.push(0);
        for s in &self.steps {
            acc += s.delta();
            out.push(acc);
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }

    /// Checks every step mark against `p`.
    pub fn check(&self, p: &Poset) -> Result<(), ForcingError> {
        let idx = self.indices(p)?;
        for (k, (w, step)) in idx.windows(2).zip(&self.steps).enumerate() {
            let ok = match step {
                Step::Prec => p.precedes(w[0], w[1]),
                Step::Par => p.incomparable(w[0], w[1]),
            };
            if !ok {
                return Err(ForcingError::InvalidStep {
                    position: k,
                    from: self.nodes[k].clone(),
                    to: self.nodes[k + 1].clone(),
                });
            }
        }
        Ok(())
    }

    pub fn indices(&self, p: &Poset) -> Result<Vec<usize>, ForcingError> {
        self.nodes
            .iter()
            .map(|n| p.index_of(n).ok_or_else(|| ForcingError::UnknownName(n.clone())))
            .collect()
    }

    /// `self` followed by `other`, which must start where `self` ends.
    pub fn concat(&self, other: &ForcingTrail) -> ForcingTrail {
        assert_eq!(self.last(), other.first(), "trails do not meet");
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes[1..].iter().cloned());
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().copied());
        ForcingTrail { nodes, steps }
    }

    /// Distinct elements in order of first occurrence.
    pub fn distinct_nodes(&self) -> Vec<String> {
        let mut seen = std::collections::HashSet::new();
        self.nodes.iter().filter(|n| seen.insert(n.as_str())).cloned().collect()
    }
}

impl fmt::Display for ForcingTrail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nodes[0])?;
        for (s, n) in self.steps.iter().zip(&self.nodes[1..]) {
            write!(f, " {} {}", s.symbol(), n)?;
        }
        Ok(())
    }
}

/// A closed forcing trail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForcingCycle {
    trail: ForcingTrail,
}

impl ForcingCycle {
    pub fn new(trail: ForcingTrail) -> Result<Self, ForcingError> {
        if !trail.is_closed() || trail.is_empty() {
            return Err(ForcingError::MalformedCertificate(format!("`{trail}` is not a closed trail")));
        }
        Ok(ForcingCycle { trail })
    }

    pub fn from_indices(p: &Poset, nodes: &[usize]) -> Result<Self, ForcingError> {
        ForcingCycle::new(ForcingTrail::from_indices(p, nodes)?)
    }

    pub fn trail(&self) -> &ForcingTrail {
        &self.trail
    }

    pub fn value(&self) -> i64 {
        self.trail.val()
    }

    pub fn nodes(&self) -> &[String] {
        self.trail.nodes()
    }

    pub fn steps(&self) -> &[Step] {
        self.trail.steps()
    }
}

impl fmt::Display for ForcingCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.trail.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trichotomy {
    PositiveCycle(ForcingCycle),
    AllNegative,
    ZeroExists {
        witness: ForcingCycle,
        /// Indices of the elements lying on some value-0 cycle.
        pinned: Vec<usize>,
    },
}

impl Trichotomy {
    pub fn label(&self) -> &'static str {
        match self {
            Trichotomy::PositiveCycle(_) => "positive",
            Trichotomy::AllNegative => "negative",
            Trichotomy::ZeroExists { .. } => "zero",
        }
    }
}

fn weight(p: &Poset, u: usize, v: usize) -> Option<i64> {
    match p.relation(u, v) {
        Relation::Precedes => Some(1),
        Relation::Incomparable => Some(-1),
        _ => None,
    }
}

/// Longest-path potentials from an auxiliary source joined to every
/// element by a weight-0 arc, or a positive cycle.
fn potentials(p: &Poset) -> Result<Vec<i64>, ForcingCycle> {
    let n = p.len();
    let arcs: Vec<(usize, usize, i64)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter_map(|(u, v)| weight(p, u, v).map(|w| (u, v, w)))
        .collect();
    let mut d = vec![0i64; n];
    let mut pred = vec![usize::MAX; n];
    let mut last = None;
    // with the source there are n + 1 vertices, so n rounds settle all
    // distances unless a positive cycle exists
    for _ in 0..=n {
        last = None;
        for &(u, v, w) in &arcs {
            if d[u] + w > d[v] {
                d[v] = d[u] + w;
                pred[v] = u;
                last = Some(v);
            }
        }
        if last.is_none() {
            return Ok(d);
        }
    }
    let mut x = last.expect("still relaxing");
    for _ in 0..n {
        x = pred[x];
    }
    let mut walk = vec![x];
    let mut y = pred[x];
    while y != x {
        walk.push(y);
        y = pred[y];
    }
    walk.push(x);
    walk.reverse();
    let cycle = ForcingCycle::from_indices(p, &walk).expect("predecessor arcs are forcing steps");
    debug_assert!(cycle.value() > 0, "predecessor cycle {cycle} is not positive");
    Err(cycle)
}

/// Some positive forcing cycle, if one exists.
pub fn find_positive_cycle(p: &Poset) -> Option<ForcingCycle> {
    potentials(p).err()
}

/// Tight subgraph of a poset without positive cycles. Its strongly
/// connected components with at least two elements are exactly the sets
/// of elements lying on common value-0 cycles.
#[derive(Debug, Clone)]
pub struct ZeroCycleIndex {
    potential: Vec<i64>,
    tight: Vec<Vec<usize>>,
    component: Vec<usize>,
    component_size: Vec<usize>,
}

impl ZeroCycleIndex {
    pub fn new(p: &Poset) -> Result<Self, ForcingError> {
        let d = potentials(p).map_err(ForcingError::PositiveCycleExists)?;
        let n = p.len();
        let tight: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| weight(p, u, v).is_some_and(|w| d[u] + w == d[v]))
                    .collect()
            })
            .collect();
        // reachability-based components; n is small enough for O(n · arcs)
        let reach: Vec<Vec<bool>> = (0..n).map(|s| bfs_reach(&tight, s)).collect();
        let mut component = vec![usize::MAX; n];
        let mut component_size = Vec::new();
        for u in 0..n {
            if component[u] != usize::MAX {
                continue;
            }
            let id = component_size.len();
            let mut size = 0;
            for v in u..n {
                if component[v] == usize::MAX && reach[u][v] && reach[v][u] {
                    component[v] = id;
                    size += 1;
                }
            }
            component_size.push(size);
        }
        Ok(ZeroCycleIndex {
            potential: d,
            tight,
            component,
            component_size,
        })
    }

    pub fn potential(&self, x: usize) -> i64 {
        self.potential[x]
    }

    /// `x` lies on a value-0 cycle.
    pub fn on_zero_cycle(&self, x: usize) -> bool {
        self.component_size[self.component[x]] >= 2
    }

    pub fn same_zero_class(&self, x: usize, y: usize) -> bool {
        self.component[x] == self.component[y] && self.on_zero_cycle(x)
    }

    pub fn pinned(&self) -> Vec<usize> {
        (0..self.component.len()).filter(|&x| self.on_zero_cycle(x)).collect()
    }

    /// Shortest tight path from `from` to `to` inside their component.
    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let comp = self.component[from];
        let n = self.tight.len();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            for &v in &self.tight[u] {
                if self.component[v] != comp {
                    continue;
                }
                if v == to {
                    let mut path = vec![v];
                    let mut x = u;
                    while x != from {
                        path.push(x);
                        x = prev[x];
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// A value-0 cycle from the smallest target through all the others,
    /// visited in index order.
    pub fn cycle_through(&self, p: &Poset, targets: &[usize]) -> Result<ForcingCycle, ForcingError> {
        let mut sorted = targets.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let Some(&base) = sorted.first() else {
            return Err(ForcingError::NoSuchCycle);
        };
        if !sorted.iter().all(|&t| self.same_zero_class(base, t)) {
            return Err(ForcingError::NoSuchCycle);
        }
        let mut walk = vec![base];
        let mut visited = vec![false; p.len()];
        visited[base] = true;
        let mut cur = base;
        for &t in &sorted[1..] {
            if visited[t] {
                continue;
            }
            let path = self.path(cur, t).ok_or(ForcingError::NoSuchCycle)?;
            for &x in &path {
                visited[x] = true;
            }
            walk.extend(path);
            cur = t;
        }
        if cur == base {
            let first = *self.tight[base]
                .iter()
                .find(|&&v| self.component[v] == self.component[base])
                .ok_or(ForcingError::NoSuchCycle)?;
            walk.push(first);
            cur = first;
        }
        walk.extend(self.path(cur, base).ok_or(ForcingError::NoSuchCycle)?);
        let cycle = ForcingCycle::from_indices(p, &walk)?;
        debug_assert_eq!(cycle.value(), 0);
        Ok(cycle)
    }
}

fn bfs_reach(adj: &[Vec<usize>], s: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

pub fn trichotomy(p: &Poset) -> Trichotomy {
    match ZeroCycleIndex::new(p) {
        Err(ForcingError::PositiveCycleExists(c)) => Trichotomy::PositiveCycle(c),
        Err(e) => unreachable!("unexpected error {e}"),
        Ok(index) => {
            let pinned = index.pinned();
            match pinned.first() {
                None => Trichotomy::AllNegative,
                Some(&x) => Trichotomy::ZeroExists {
                    witness: index.cycle_through(p, &[x]).expect("x lies on a zero cycle"),
                    pinned,
                },
            }
        }
    }
}

/// One value-0 cycle visiting every target; see [`ZeroCycleIndex::cycle_through`].
pub fn zero_cycle_through(p: &Poset, targets: &[usize]) -> Result<ForcingCycle, ForcingError> {
    match ZeroCycleIndex::new(p) {
        Ok(index) => index.cycle_through(p, targets),
        Err(ForcingError::PositiveCycleExists(_)) => Err(ForcingError::NoSuchCycle),
        Err(e) => Err(e),
    }
}

/// Checks a certificate against `p`. `Ok(false)` means the certificate is
/// well formed but does not refute anything.
pub fn verify_certificate(p: &Poset, cert: &Certificate) -> Result<bool, ForcingError> {
    let cycle = cert.cycle();
    let trail = cycle.trail();
    if trail.indices(p).is_err() {
        return Err(ForcingError::MalformedCertificate("cycle names an unknown element".into()));
    }
    if trail.check(p).is_err() {
        return Ok(false);
    }
    match cert {
        Certificate::PositiveCycle(c) => Ok(c.value() > 0),
        Certificate::UnrepresentableZeroCycle {
            cycle,
            centers,
            allowed,
            distinct_intervals,
        } => {
            if cycle.value() != 0 {
                return Ok(false);
            }
            let members = trail.distinct_nodes();
            let mut c0 = None;
            for (name, v) in trail.nodes().iter().zip(trail.values()) {
                let c = centers
                    .get(name)
                    .ok_or_else(|| ForcingError::MalformedCertificate(format!("no center for `{name}`")))?;
                let base = c0.get_or_insert_with(|| c.clone());
                if *c != &*base + v {
                    return Ok(false);
                }
            }
            if centers.len() != members.len() {
                return Err(ForcingError::MalformedCertificate("centers for elements off the cycle".into()));
            }
            let idx: Vec<usize> = members.iter().map(|m| p.index_of(m).expect("checked")).collect();
            let cs: Vec<Dyadic> = members.iter().map(|m| centers[m].clone()).collect();
            Ok(!typing_exists(p, &idx, &cs, *allowed, *distinct_intervals))
        }
    }
}

/// Exhaustive search for types from `allowed` that make the intervals at
/// `centers` reproduce `p` on `elements`. Identical intervals are allowed
/// only for twins of `p`, and not at all when `distinct` is set.
pub fn typing_exists(p: &Poset, elements: &[usize], centers: &[Dyadic], allowed: TypeSet, distinct: bool) -> bool {
    find_typing(p, elements, centers, allowed, distinct).is_some()
}

/// Like [`typing_exists`], returning the types in input order.
pub fn find_typing(
    p: &Poset,
    elements: &[usize],
    centers: &[Dyadic],
    allowed: TypeSet,
    distinct: bool,
) -> Option<Vec<IntervalType>> {
    let k = elements.len();
    let one = Dyadic::from_int(1);
    // pairs not at gap exactly 1 are decided by the centers alone
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let gap = &centers[b] - &centers[a];
            if gap != one {
                let by_center = gap > one;
                if by_center != p.precedes(elements[a], elements[b]) {
                    return None;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| centers[a].cmp(&centers[b]).then(a.cmp(&b)));
    let types: Vec<IntervalType> = allowed.iter().collect();
    let mut assigned: Vec<Option<IntervalType>> = vec![None; k];
    let mut dead: HashMap<(usize, Vec<u8>), ()> = HashMap::new();

    struct Ctx<'a> {
        p: &'a Poset,
        elements: &'a [usize],
        centers: &'a [Dyadic],
        order: &'a [usize],
        types: &'a [IntervalType],
        distinct: bool,
    }

    // level signature: the types of all placed elements whose center is
    // within one unit of the next element; the rest cannot constrain it
    fn frontier(ctx: &Ctx, assigned: &[Option<IntervalType>], pos: usize) -> Vec<u8> {
        let next = &ctx.centers[ctx.order[pos]];
        let reach = next - 1;
        ctx.order[..pos]
            .iter()
            .filter(|&&a| ctx.centers[a] >= reach)
            .map(|&a| assigned[a].expect("placed") as u8)
            .collect()
    }

    fn go(
        ctx: &Ctx,
        pos: usize,
        assigned: &mut Vec<Option<IntervalType>>,
        dead: &mut HashMap<(usize, Vec<u8>), ()>,
    ) -> bool {
        if pos == ctx.order.len() {
            return true;
        }
        let key = (pos, frontier(ctx, assigned, pos));
        if dead.contains_key(&key) {
            return false;
        }
        let x = ctx.order[pos];
        for &t in ctx.types {
            let iv = PlacedInterval::new(ctx.centers[x].clone(), t);
            let ok = ctx.order[..pos].iter().all(|&y| {
                let ty = assigned[y].expect("placed");
                let jv = PlacedInterval::new(ctx.centers[y].clone(), ty);
                let (ex, ey) = (ctx.elements[x], ctx.elements[y]);
                if iv == jv && (ctx.distinct || !ctx.p.are_twins(ex, ey)) {
                    return false;
                }
                interval_precedes(&iv, &jv) == ctx.p.precedes(ex, ey)
                    && interval_precedes(&jv, &iv) == ctx.p.precedes(ey, ex)
            });
            if !ok {
                continue;
            }
            assigned[x] = Some(t);
            if go(ctx, pos + 1, assigned, dead) {
                return true;
            }
            assigned[x] = None;
        }
        dead.insert(key, ());
        false
    }

    let ctx = Ctx {
        p,
        elements,
        centers,
        order: &order,
        types: &types,
        distinct,
    };
    if go(&ctx, 0, &mut assigned, &mut dead) {
        Some(assigned.into_iter().map(|t| t.expect("complete")).collect())
    } else {
        None
    }
}

/// Largest value of a forcing trail from `u` to `v` with at least one
/// step, for every pair; `None` where no trail exists. Requires that `p`
/// has no positive cycle.
#[allow(clippy::needless_range_loop)]
pub fn longest_trail_values(p: &Poset) -> Vec<Vec<Option<i64>>> {
    let n = p.len();
    let mut d: Vec<Vec<Option<i64>>> = (0..n).map(|u| (0..n).map(|v| weight(p, u, v)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    let cand = ik + kj;
                    if d[i][j].map_or(true, |cur| cand > cur) {
                        d[i][j] = Some(cand);
                    }
                }
            }
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterBoundViolation {
    /// `c(v) − c(u)` is below the best trail value from `u` to `v`.
    TrailBound { from: String, to: String, trail_value: i64, gap: Dyadic },
    /// `u` and `v` share a value-0 cycle but their gap is not the forced one.
    NotPinned { from: String, to: String, forced: i64, gap: Dyadic },
}

/// Checks the center constraints every representation must satisfy:
/// `c(v) − c(u) ≥ val` for every trail from `u` to `v`, with equality when
/// `u` and `v` lie on a common value-0 cycle.
pub fn check_center_bounds(p: &Poset, centers: &BTreeMap<String, Dyadic>) -> Vec<CenterBoundViolation> {
    let d = longest_trail_values(p);
    let n = p.len();
    let c: Vec<&Dyadic> = p.names().iter().map(|x| &centers[x]).collect();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let Some(duv) = d[u][v] else { continue };
            let gap = c[v] - c[u];
            if gap < Dyadic::from_int(duv) {
                out.push(CenterBoundViolation::TrailBound {
                    from: p.name(u).to_string(),
                    to: p.name(v).to_string(),
                    trail_value: duv,
                    gap: gap.clone(),
                });
            }
            if d[v][u].is_some_and(|dvu| duv + dvu == 0) && gap != Dyadic::from_int(duv) {
                out.push(CenterBoundViolation::NotPinned {
                    from: p.name(u).to_string(),
                    to: p.name(v).to_string(),
                    forced: duv,
                    gap,
                });
            }
        }
    }
    out
}
