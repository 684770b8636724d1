//! Choosing interval types for elements whose centers are already fixed.
//!
//! Centers come from a value-0 cycle, so they occupy consecutive integer
//! offsets `m, m+1, …, M`. Only pairs exactly one unit apart depend on
//! types, so a left-to-right sweep over type-assignment nodes per center
//! decides the question.

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::poset::Poset;
use crate::representation::{gap_one_precedes, precedes, IntervalType, PlacedInterval, TypeSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignTypesError {
    #[error("no elements to type")]
    EmptyInput,
    #[error("centers {0} and {1} are not an integer distance apart")]
    CenterGapInvalid(Dyadic, Dyadic),
    #[error("no element has center {0}, between occupied centers")]
    MissingLevel(Dyadic),
    #[error("{given} centers for {expected} elements")]
    LengthMismatch { given: usize, expected: usize },
    #[error("brute force is limited to {max} elements, got {requested}")]
    SizeLimitExceeded { requested: usize, max: usize },
}

/// Why no types exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssignFailure {
    /// More elements share a center than there are types.
    TooManyAtCenter { center: Dyadic, count: usize },
    /// No node at this center survives the sweep.
    LevelEmpty { center: Dyadic },
    /// Two elements are related in a way their centers alone rule out.
    CenterConflict { x: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssignOutcome {
    /// Types indexed like the elements of `Q`.
    Success(Vec<IntervalType>),
    Failure(AssignFailure),
}

impl AssignOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, AssignOutcome::Success(_))
    }
}

/// Elements of `Q` sharing one center, in `Q` index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterGroup {
    pub center: Dyadic,
    pub members: Vec<usize>,
}

impl CenterGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeNode {
    pub assignment: Vec<IntervalType>,
    pub back: Vec<usize>,
    pub forward: Vec<usize>,
    pub alive: bool,
}

/// The node lists after the sweep.
#[derive(Debug, Clone)]
pub struct TypeLevels {
    pub groups: Vec<CenterGroup>,
    pub nodes: Vec<Vec<TypeNode>>,
}

impl TypeLevels {
    /// Number of back-pointer paths from a surviving node at the top center
    /// to the bottom center.
    pub fn path_count(&self) -> u128 {
        let Some(first) = self.nodes.first() else { return 0 };
        let mut counts: Vec<u128> = first.iter().map(|n| u128::from(n.alive)).collect();
        for level in &self.nodes[1..] {
            counts = level
                .iter()
                .map(|n| if n.alive { n.back.iter().map(|&b| counts[b]).sum() } else { 0 })
                .collect();
        }
        counts.iter().sum()
    }

    fn surviving(&self) -> bool {
        self.nodes.iter().all(|l| l.iter().any(|n| n.alive))
    }

    /// Follows the smallest back pointer from the smallest surviving top node.
    fn back_walk(&self, n: usize) -> Vec<IntervalType> {
        let mut types = vec![IntervalType::A; n];
        let top = self.nodes.len() - 1;
        let mut cur = self.nodes[top]
            .iter()
            .position(|x| x.alive)
            .expect("top level survived");
        for j in (0..=top).rev() {
            let node = &self.nodes[j][cur];
            for (&m, &t) in self.groups[j].members.iter().zip(&node.assignment) {
                types[m] = t;
            }
            if j > 0 {
                cur = *node.back.iter().min().expect("surviving nodes have back links");
            }
        }
        types
    }
}

/// Compatibility of assignments for two consecutive centers: with `g1` at
/// center j and `g2` at center j+1 the intervals reproduce `q` on all
/// these elements.
pub fn compatible(q: &Poset, g1: &CenterGroup, a1: &[IntervalType], g2: &CenterGroup, a2: &[IntervalType]) -> bool {
    g1.members.iter().zip(a1).all(|(&x, &tx)| {
        g2.members
            .iter()
            .zip(a2)
            .all(|(&y, &ty)| !q.precedes(y, x) && gap_one_precedes(tx, ty) == q.precedes(x, y))
    })
}

/// Groups the elements by center, lowest first, and checks that the
/// centers fill consecutive integer offsets.
pub fn center_groups(centers: &[Dyadic]) -> Result<Vec<CenterGroup>, AssignTypesError> {
    if centers.is_empty() {
        return Err(AssignTypesError::EmptyInput);
    }
    let m = centers.iter().min().expect("non-empty");
    let mut offsets = Vec::with_capacity(centers.len());
    for c in centers {
        let off = c - m;
        let Some(k) = off.to_i64() else {
            return Err(AssignTypesError::CenterGapInvalid(m.clone(), c.clone()));
        };
        offsets.push(k as usize);
    }
    let top = *offsets.iter().max().expect("non-empty");
    let mut groups: Vec<CenterGroup> = (0..=top)
        .map(|k| CenterGroup {
            center: m + k as i64,
            members: Vec::new(),
        })
        .collect();
    for (x, &k) in offsets.iter().enumerate() {
        groups[k].members.push(x);
    }
    if let Some(g) = groups.iter().find(|g| g.is_empty()) {
        return Err(AssignTypesError::MissingLevel(g.center.clone()));
    }
    Ok(groups)
}

fn check_center_only_pairs(q: &Poset, centers: &[Dyadic]) -> Option<AssignFailure> {
    let one = Dyadic::from_int(1);
    for x in 0..q.len() {
        for y in 0..q.len() {
            if x == y {
                continue;
            }
            let gap = &centers[y] - &centers[x];
            let ok = if gap == one {
                !q.precedes(y, x)
            } else {
                (gap > one) == q.precedes(x, y)
            };
            if !ok {
                return Some(AssignFailure::CenterConflict { x, y });
            }
        }
    }
    None
}

/// Ordered lists of `t` distinct members of `s`, lexicographically.
fn injective_lists(s: TypeSet, t: usize) -> Vec<Vec<IntervalType>> {
    fn go(types: &[IntervalType], t: usize, cur: &mut Vec<IntervalType>, out: &mut Vec<Vec<IntervalType>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for &ty in types {
            if !cur.contains(&ty) {
                cur.push(ty);
                go(types, t, cur, out);
                cur.pop();
            }
        }
    }
    let types: Vec<IntervalType> = s.iter().collect();
    let mut out = Vec::new();
    go(&types, t, &mut Vec::with_capacity(t), &mut out);
    out
}

/// Runs the sweep and returns the node lists, or where it stopped.
pub fn build_levels(q: &Poset, centers: &[Dyadic], s: TypeSet) -> Result<Result<TypeLevels, AssignFailure>, AssignTypesError> {
    if centers.len() != q.len() {
        return Err(AssignTypesError::LengthMismatch {
            given: centers.len(),
            expected: q.len(),
        });
    }
    let groups = center_groups(centers)?;
    if let Some(g) = groups.iter().find(|g| g.len() > s.len()) {
        return Ok(Err(AssignFailure::TooManyAtCenter {
            center: g.center.clone(),
            count: g.len(),
        }));
    }
    if let Some(f) = check_center_only_pairs(q, centers) {
        return Ok(Err(f));
    }
    let mut nodes: Vec<Vec<TypeNode>> = groups
        .iter()
        .map(|g| {
            injective_lists(s, g.len())
                .into_iter()
                .map(|assignment| TypeNode {
                    assignment,
                    back: Vec::new(),
                    forward: Vec::new(),
                    alive: true,
                })
                .collect()
        })
        .collect();
    for j in 0..groups.len().saturating_sub(1) {
        let (lower, upper) = nodes.split_at_mut(j + 1);
        let (lower, upper) = (&mut lower[j], &mut upper[0]);
        for (a, t1) in lower.iter_mut().enumerate() {
            if !t1.alive {
                continue;
            }
            for (b, t2) in upper.iter_mut().enumerate() {
                if compatible(q, &groups[j], &t1.assignment, &groups[j + 1], &t2.assignment) {
                    t1.forward.push(b);
                    t2.back.push(a);
                }
            }
        }
        for t2 in upper.iter_mut() {
            if t2.back.is_empty() {
                t2.alive = false;
            }
        }
        if upper.iter().all(|t| !t.alive) {
            return Ok(Err(AssignFailure::LevelEmpty {
                center: groups[j + 1].center.clone(),
            }));
        }
    }
    Ok(Ok(TypeLevels { groups, nodes }))
}

/// Types for the elements of `q` at the given centers, or the reason none
/// exist. Elements sharing a center always receive distinct types.
pub fn assign_types(q: &Poset, centers: &[Dyadic], s: TypeSet) -> Result<AssignOutcome, AssignTypesError> {
    Ok(match build_levels(q, centers, s)? {
        Err(f) => AssignOutcome::Failure(f),
        Ok(levels) => {
            debug_assert!(levels.surviving());
            AssignOutcome::Success(levels.back_walk(q.len()))
        }
    })
}

pub const BRUTE_FORCE_MAX: usize = 12;

/// Tries every function from the elements of `q` to `s`. With `distinct`
/// set, equal center and type on two elements is not allowed.
pub fn brute_force_types(
    q: &Poset,
    centers: &[Dyadic],
    s: TypeSet,
    distinct: bool,
) -> Result<Option<Vec<IntervalType>>, AssignTypesError> {
    let n = q.len();
    if n > BRUTE_FORCE_MAX {
        return Err(AssignTypesError::SizeLimitExceeded {
            requested: n,
            max: BRUTE_FORCE_MAX,
        });
    }
    if centers.len() != n {
        return Err(AssignTypesError::LengthMismatch {
            given: centers.len(),
            expected: n,
        });
    }
    if n == 0 {
        return Err(AssignTypesError::EmptyInput);
    }
    let types: Vec<IntervalType> = s.iter().collect();
    let k = types.len();
    let mut digits = vec![0usize; n];
    loop {
        let ivs: Vec<PlacedInterval> = (0..n)
            .map(|x| PlacedInterval::new(centers[x].clone(), types[digits[x]]))
            .collect();
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                x == y || (precedes(&ivs[x], &ivs[y]) == q.precedes(x, y) && !(distinct && ivs[x] == ivs[y]))
            })
        });
        if ok {
            return Ok(Some(ivs.into_iter().map(|iv| iv.ty).collect()));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
