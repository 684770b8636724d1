//! Verdicts for all fifteen type sets, and the forbidden-subposet
//! characterizations they are checked against.

pub mod census;

use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::poset::{catalog, contains_induced, Poset, PosetError};
use crate::recognizer::{recognize_with, Outcome, RecognizeError, RecognizeOptions};
use crate::representation::TypeSet;

pub use census::{census, Census, CensusFilter, CensusRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("poset has twins `{0}` and `{1}`")]
    NotTwinFree(String, String),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Outcome of recognition for each non-empty type set, in the order of
/// [`TypeSet::all_nonempty`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    pub entries: Vec<(TypeSet, Outcome)>,
}

impl ClassProfile {
    pub fn verdict(&self, s: TypeSet) -> bool {
        self.entries
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, o)| o.is_represented())
            .expect("every non-empty type set is classified")
    }

    pub fn verdict_str(&self, s: &str) -> bool {
        self.verdict(s.parse().expect("valid type set"))
    }

    pub fn verdicts(&self) -> Vec<(TypeSet, bool)> {
        self.entries.iter().map(|(s, o)| (*s, o.is_represented())).collect()
    }

    pub fn all(&self, value: bool) -> bool {
        self.entries.iter().all(|(_, o)| o.is_represented() == value)
    }

    /// Breaches of monotonicity, C/D symmetry and singleton equality.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (s, _) in &self.entries {
            let v = self.verdict(*s);
            if self.verdict(s.swap_cd()) != v {
                out.push(format!("{s} and {} differ", s.swap_cd()));
            }
            for (t, _) in &self.entries {
                if s.is_subset(*t) && v && !self.verdict(*t) {
                    out.push(format!("{s} holds but {t} does not"));
                }
            }
        }
        let singles: Vec<bool> = ["A", "B", "C", "D"].iter().map(|s| self.verdict_str(s)).collect();
        if singles.iter().any(|&b| b != singles[0]) {
            out.push(format!("singleton verdicts differ: {singles:?}"));
        }
        out
    }

    /// Membership among the classes with two types (`AB`, `AC`, `BC`, `CD`)
    /// and with three (`ABC`, `ACD`, `BCD`), as `AB.AC|ABC`.
    pub fn region(&self) -> String {
        let part = |names: &[&str]| {
            let inside: Vec<&str> = names.iter().copied().filter(|s| self.verdict_str(s)).collect();
            if inside.is_empty() {
                "none".to_string()
            } else {
                inside.join(".")
            }
        };
        format!("{}|{}", part(&["AB", "AC", "BC", "CD"]), part(&["ABC", "ACD", "BCD"]))
    }
}

pub fn classify(p: &Poset) -> Result<ClassProfile, ClassifierError> {
    classify_with(p, RecognizeOptions::default())
}

/// Recognizes `p` for all fifteen type sets, in parallel.
pub fn classify_with(p: &Poset, opts: RecognizeOptions) -> Result<ClassProfile, ClassifierError> {
    let entries = TypeSet::all_nonempty()
        .into_par_iter()
        .map(|s| recognize_with(p, s, opts).map(|r| (s, r.outcome)))
        .collect::<Result<Vec<_>, _>>()?;
    let profile = ClassProfile { entries };
    let broken = profile.invariant_violations();
    debug_assert!(broken.is_empty(), "{p:?}: {broken:?}");
    if !broken.is_empty() {
        log::error!("class invariants fail for {p:?}: {broken:?}");
    }
    Ok(profile)
}

/// Same as [`classify_with`] without the thread pool.
pub fn classify_sequential(p: &Poset, opts: RecognizeOptions) -> Result<ClassProfile, ClassifierError> {
    let entries = TypeSet::all_nonempty()
        .into_iter()
        .map(|s| recognize_with(p, s, opts).map(|r| (s, r.outcome)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClassProfile { entries })
}

fn pattern(name: &str) -> &'static Poset {
    static PATTERNS: OnceLock<Vec<(String, Poset)>> = OnceLock::new();
    let all = PATTERNS.get_or_init(|| {
        ["2+2", "3+1", "4+1", "3+1+1", "Z", "D", "Y", "Y_dual", "H"]
            .iter()
            .map(|n| (n.to_string(), catalog(n).expect("catalog name")))
            .collect()
    });
    &all.iter().find(|(n, _)| n == name).expect("known pattern").1
}

pub fn contains_pattern(p: &Poset, name: &str) -> bool {
    contains_induced(p, pattern(name)).is_some()
}

/// No induced 2+2.
pub fn is_interval_order(p: &Poset) -> bool {
    !contains_pattern(p, "2+2")
}

/// No induced 2+2 and no induced 3+1.
pub fn is_unit_interval_order(p: &Poset) -> bool {
    is_interval_order(p) && !contains_pattern(p, "3+1")
}

fn require_twin_free(p: &Poset) -> Result<(), ClassifierError> {
    let tp = p.twin_partition();
    match tp.classes.iter().find(|c| c.len() > 1) {
        Some(c) => Err(ClassifierError::NotTwinFree(p.name(c[0]).to_string(), p.name(c[1]).to_string())),
        None => Ok(()),
    }
}

/// Interval order containing none of 4+1, 3+1+1, Z, D, Y and the dual of Y.
pub fn ab_characterization(p: &Poset) -> Result<bool, ClassifierError> {
    require_twin_free(p)?;
    Ok(is_interval_order(p)
        && ["4+1", "3+1+1", "Z", "D", "Y", "Y_dual"]
            .iter()
            .all(|n| !contains_pattern(p, n)))
}

pub fn venn_region(p: &Poset) -> Result<String, ClassifierError> {
    require_twin_free(p)?;
    Ok(classify(p)?.region())
}
