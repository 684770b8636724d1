//! Typed unit intervals and the comparability rule between them.
//!
//! Every interval has length 2, so only the center is stored:
//! `L = c − 1` and `R = c + 1`.

mod render;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::poset::{Poset, PosetError};

pub use render::{render, RenderFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntervalType {
    A,
    B,
    C,
    D,
}

impl IntervalType {
    pub const ALL: [IntervalType; 4] = [IntervalType::A, IntervalType::B, IntervalType::C, IntervalType::D];

    pub fn endpoint_open(self) -> bool {
        matches!(self, IntervalType::B | IntervalType::D)
    }

    pub fn center_open(self) -> bool {
        matches!(self, IntervalType::B | IntervalType::C)
    }

    pub fn letter(self) -> char {
        match self {
            IntervalType::A => 'A',
            IntervalType::B => 'B',
            IntervalType::C => 'C',
            IntervalType::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<IntervalType> {
        match c.to_ascii_uppercase() {
            'A' => Some(IntervalType::A),
            'B' => Some(IntervalType::B),
            'C' => Some(IntervalType::C),
            'D' => Some(IntervalType::D),
            _ => None,
        }
    }

    /// C ↔ D, A and B fixed.
    pub fn swap_cd(self) -> IntervalType {
        match self {
            IntervalType::C => IntervalType::D,
            IntervalType::D => IntervalType::C,
            t => t,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for IntervalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A subset of `{A, B, C, D}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeSet(u8);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeSetError {
    #[error("type set is empty")]
    Empty,
    #[error("`{0}` is not one of A, B, C, D")]
    InvalidLetter(char),
    #[error("type `{0}` listed twice")]
    Repeated(char),
}

impl TypeSet {
    pub const EMPTY: TypeSet = TypeSet(0);
    pub const ALL: TypeSet = TypeSet(0b1111);

    pub fn from_types(types: &[IntervalType]) -> TypeSet {
        TypeSet(types.iter().fold(0, |acc, t| acc | t.bit()))
    }

    pub fn singleton(t: IntervalType) -> TypeSet {
        TypeSet(t.bit())
    }

    /// The 15 non-empty subsets, by size and then alphabetically.
    pub fn all_nonempty() -> Vec<TypeSet> {
        let mut sets: Vec<TypeSet> = (1u8..16).map(TypeSet).collect();
        sets.sort_by_key(|s| (s.len(), s.letters()));
        sets
    }

    pub fn contains(self, t: IntervalType) -> bool {
        self.0 & t.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: TypeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: TypeSet) -> TypeSet {
        TypeSet(self.0 | other.0)
    }

    pub fn with(self, t: IntervalType) -> TypeSet {
        TypeSet(self.0 | t.bit())
    }

    pub fn iter(self) -> impl Iterator<Item = IntervalType> {
        IntervalType::ALL.into_iter().filter(move |&t| self.contains(t))
    }

    pub fn swap_cd(self) -> TypeSet {
        TypeSet::from_types(&self.iter().map(IntervalType::swap_cd).collect::<Vec<_>>())
    }

    pub fn letters(self) -> String {
        self.iter().map(IntervalType::letter).collect()
    }

    pub fn bits(self) -> u8 {
        self.0
    }
}

impl FromStr for TypeSet {
    type Err = TypeSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = TypeSet::EMPTY;
        for c in s.trim().chars() {
            let t = IntervalType::from_letter(c).ok_or(TypeSetError::InvalidLetter(c))?;
            if set.contains(t) {
                return Err(TypeSetError::Repeated(c));
            }
            set = set.with(t);
        }
        if set.is_empty() {
            return Err(TypeSetError::Empty);
        }
        Ok(set)
    }
}

impl fmt::Display for TypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters())
    }
}

impl fmt::Debug for TypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeSet({})", self.letters())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlacedInterval {
    pub center: Dyadic,
    #[serde(rename = "type")]
    pub ty: IntervalType,
}

impl PlacedInterval {
    pub fn new(center: impl Into<Dyadic>, ty: IntervalType) -> Self {
        PlacedInterval {
            center: center.into(),
            ty,
        }
    }

    pub fn left(&self) -> Dyadic {
        &self.center - 1
    }

    pub fn right(&self) -> Dyadic {
        &self.center + 1
    }
}

/// `i ≺ j` for two placed intervals.
pub fn precedes(i: &PlacedInterval, j: &PlacedInterval) -> bool {
    let right = i.right();
    match right.cmp(&j.center) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            (i.ty.endpoint_open() || j.ty.center_open()) && (j.ty.endpoint_open() || i.ty.center_open())
        }
    }
}

/// The same predicate phrased by center gap: below 1 incomparable, above 1
/// ordered, exactly 1 decided by the types.
pub fn center_rule(i: &PlacedInterval, j: &PlacedInterval) -> bool {
    let gap = &j.center - &i.center;
    let one = Dyadic::from_int(1);
    if gap < one {
        false
    } else if gap > one {
        true
    } else {
        gap_one_precedes(i.ty, j.ty)
    }
}

/// Whether an interval of type `a` precedes one of type `b` placed one unit
/// to its right.
pub fn gap_one_precedes(a: IntervalType, b: IntervalType) -> bool {
    use IntervalType::*;
    matches!((a, b), (B, _) | (_, B) | (C, C) | (D, D))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("element sets differ: missing {missing:?}, extra {extra:?}")]
    ElementMismatch { missing: Vec<String>, extra: Vec<String> },
    #[error("element `{0}` appears in more than one representation")]
    NameCollision(String),
    #[error("induced relation is not transitive at {0} < {1} < {2}")]
    NonTransitiveWitness(String, String, String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Result of checking a representation against a poset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Ordered pairs `(x, y)` where the intervals and the poset disagree on
    /// whether `x ≺ y`.
    pub mismatches: Vec<(String, String)>,
    /// Elements whose type lies outside the allowed set.
    pub type_violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty() && self.type_violations.is_empty()
    }
}

/// An assignment of typed intervals to named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub intervals: BTreeMap<String, PlacedInterval>,
    pub allowed: TypeSet,
}

impl Representation {
    pub fn new(allowed: TypeSet) -> Self {
        Representation {
            intervals: BTreeMap::new(),
            allowed,
        }
    }

    pub fn from_intervals<I, S>(allowed: TypeSet, items: I) -> Self
    where
        I: IntoIterator<Item = (S, PlacedInterval)>,
        S: Into<String>,
    {
        Representation {
            intervals: items.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            allowed,
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, interval: PlacedInterval) {
        self.intervals.insert(name.into(), interval);
    }

    pub fn get(&self, name: &str) -> Option<&PlacedInterval> {
        self.intervals.get(name)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn center(&self, name: &str) -> Option<&Dyadic> {
        self.intervals.get(name).map(|i| &i.center)
    }

    pub fn min_center(&self) -> Option<&Dyadic> {
        self.intervals.values().map(|i| &i.center).min()
    }

    pub fn max_center(&self) -> Option<&Dyadic> {
        self.intervals.values().map(|i| &i.center).max()
    }

    /// Types actually used.
    pub fn used_types(&self) -> TypeSet {
        TypeSet::from_types(&self.intervals.values().map(|i| i.ty).collect::<Vec<_>>())
    }

    fn check_elements<S: AsRef<str>>(&self, elements: &[S]) -> Result<(), RepresentationError> {
        let missing: Vec<String> = elements
            .iter()
            .map(|e| e.as_ref())
            .filter(|e| !self.intervals.contains_key(*e))
            .map(str::to_string)
            .collect();
        let wanted: std::collections::HashSet<&str> = elements.iter().map(|e| e.as_ref()).collect();
        let extra: Vec<String> = self
            .intervals
            .keys()
            .filter(|k| !wanted.contains(k.as_str()))
            .cloned()
            .collect();
        if missing.is_empty() && extra.is_empty() {
            Ok(())
        } else {
            Err(RepresentationError::ElementMismatch { missing, extra })
        }
    }

    /// The poset defined by the intervals on `elements`, in that order.
    pub fn induced_poset<S: AsRef<str>>(&self, elements: &[S]) -> Result<Poset, RepresentationError> {
        let n = elements.len();
        let ivs = elements
            .iter()
            .map(|e| {
                self.intervals.get(e.as_ref()).ok_or_else(|| RepresentationError::ElementMismatch {
                    missing: vec![e.as_ref().to_string()],
                    extra: Vec::new(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut strict = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                strict[a * n + b] = a != b && precedes(ivs[a], ivs[b]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !strict[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if strict[b * n + c] && !strict[a * n + c] {
                        let name = |k: usize| elements[k].as_ref().to_string();
                        return Err(RepresentationError::NonTransitiveWitness(name(a), name(b), name(c)));
                    }
                }
            }
        }
        let names = elements.iter().map(|e| e.as_ref().to_string()).collect();
        Ok(Poset::from_matrix(names, &strict)?)
    }

    /// Compares the intervals with `p` pair by pair and checks types against
    /// `allowed`.
    pub fn validate(&self, p: &Poset, allowed: TypeSet) -> Result<ValidationReport, RepresentationError> {
        self.check_elements(p.names())?;
        let ivs: Vec<&PlacedInterval> = p.names().iter().map(|e| &self.intervals[e]).collect();
        let mut report = ValidationReport::default();
        for (i, iv) in ivs.iter().enumerate() {
            if !allowed.contains(iv.ty) {
                report.type_violations.push(p.name(i).to_string());
            }
        }
        for a in 0..p.len() {
            for b in 0..p.len() {
                if a != b && precedes(ivs[a], ivs[b]) != p.precedes(a, b) {
                    report.mismatches.push((p.name(a).to_string(), p.name(b).to_string()));
                }
            }
        }
        Ok(report)
    }

    /// Pairs of elements carrying the same center and type.
    pub fn identical_pairs(&self) -> Vec<(String, String)> {
        let entries: Vec<(&String, &PlacedInterval)> = self.intervals.iter().collect();
        let mut out = Vec::new();
        for (k, (a, ia)) in entries.iter().enumerate() {
            for (b, ib) in &entries[k + 1..] {
                if ia == ib {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// Every C becomes D and vice versa, centers unchanged.
    pub fn cd_swap(&self) -> Representation {
        Representation {
            intervals: self
                .intervals
                .iter()
                .map(|(k, v)| (k.clone(), PlacedInterval::new(v.center.clone(), v.ty.swap_cd())))
                .collect(),
            allowed: self.allowed.swap_cd(),
        }
    }

    pub fn translated(&self, offset: &Dyadic) -> Representation {
        Representation {
            intervals: self
                .intervals
                .iter()
                .map(|(k, v)| (k.clone(), PlacedInterval::new(&v.center + offset, v.ty)))
                .collect(),
            allowed: self.allowed,
        }
    }

    /// Negates every center; the induced poset is the dual.
    pub fn reflected(&self) -> Representation {
        Representation {
            intervals: self
                .intervals
                .iter()
                .map(|(k, v)| (k.clone(), PlacedInterval::new(-&v.center, v.ty)))
                .collect(),
            allowed: self.allowed,
        }
    }
}

/// Lays the representations out left to right; each one starts two units
/// after the previous one ends, so every cross pair is ordered.
pub fn concatenate(reps: &[Representation]) -> Result<Representation, RepresentationError> {
    let mut out = Representation::new(TypeSet::EMPTY);
    let mut prev_max: Option<Dyadic> = None;
    for r in reps {
        out.allowed = out.allowed.union(r.allowed);
        let Some(min) = r.min_center() else { continue };
        let shifted = match &prev_max {
            None => r.clone(),
            Some(m) => r.translated(&(&(m + 2) - min)),
        };
        for (name, iv) in shifted.intervals {
            if out.intervals.contains_key(&name) {
                return Err(RepresentationError::NameCollision(name));
            }
            out.intervals.insert(name, iv);
        }
        prev_max = out.max_center().cloned();
    }
    Ok(out)
}
