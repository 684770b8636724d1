//! Deciding whether a poset has a representation with a given type set.
//!
//! Twins are merged, the poset is split into inseparable blocks, and each
//! block goes through passes of bound narrowing. Every pass pins the
//! centers of the elements on value-0 cycles through its starting element
//! and types them; a bound conflict yields a positive forcing cycle.

pub mod pass;

use std::collections::BTreeMap;

use log::{debug, warn};
use thiserror::Error;

use crate::assign_types::{assign_types, AssignOutcome};
use crate::certificate::Certificate;
use crate::dyadic::Dyadic;
use crate::forcing::{find_positive_cycle, ForcingCycle, ForcingError, ZeroCycleIndex};
use crate::poset::Poset;
use crate::representation::{concatenate, PlacedInterval, Representation, TypeSet};

pub use pass::{Change, LoopOutcome, PassState, TraceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("the set of allowed types is empty")]
    EmptyTypeSet,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// How twins are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwinPolicy {
    /// Twins are recognized as one element and then share its interval.
    #[default]
    Merge,
    /// No two elements may share both center and type.
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecognizeOptions {
    pub twins: TwinPolicy,
}

impl RecognizeOptions {
    pub fn distinct() -> Self {
        RecognizeOptions {
            twins: TwinPolicy::Distinct,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Represented(Representation),
    Refuted(Certificate),
}

impl Outcome {
    pub fn is_represented(&self) -> bool {
        matches!(self, Outcome::Represented(_))
    }

    pub fn representation(&self) -> Option<&Representation> {
        match self {
            Outcome::Represented(r) => Some(r),
            Outcome::Refuted(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Refuted(c) => Some(c),
            Outcome::Represented(_) => None,
        }
    }
}

/// What one pass fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassRecord {
    pub block: usize,
    pub r: usize,
    pub start: String,
    /// Elements whose centers were fixed, with those centers.
    pub fixed: Vec<(String, Dyadic)>,
    /// The value-0 cycle through them, when there are at least two.
    pub cycle: Option<ForcingCycle>,
    pub narrowing_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub outcome: Outcome,
    pub passes: Vec<PassRecord>,
}

pub fn recognize(p: &Poset, s: TypeSet) -> Result<Outcome, RecognizeError> {
    recognize_with(p, s, RecognizeOptions::default()).map(|r| r.outcome)
}

pub fn recognize_with(p: &Poset, s: TypeSet, opts: RecognizeOptions) -> Result<Recognition, RecognizeError> {
    if s.is_empty() {
        return Err(RecognizeError::EmptyTypeSet);
    }
    let distinct = opts.twins == TwinPolicy::Distinct;
    let (base, twins) = if distinct {
        (p.clone(), None)
    } else {
        let (q, tp) = p.twin_quotient();
        (q, Some(tp))
    };
    let mut passes = Vec::new();
    let mut reps = Vec::new();
    for (b, block) in base.block_decomposition().blocks.iter().enumerate() {
        let bp = base.induced(block);
        match recognize_block(&bp, s, distinct, b, &mut passes)? {
            Ok(rep) => reps.push(rep),
            Err(cert) => {
                return Ok(Recognition {
                    outcome: Outcome::Refuted(cert),
                    passes,
                })
            }
        }
    }
    let mut rep = concatenate(&reps).map_err(|e| RecognizeError::Internal(e.to_string()))?;
    rep.allowed = s;
    if let Some(tp) = twins {
        for class in &tp.classes {
            let iv = rep.intervals[p.name(class[0])].clone();
            for &x in &class[1..] {
                rep.insert(p.name(x), iv.clone());
            }
        }
    }
    Ok(Recognition {
        outcome: Outcome::Represented(rep),
        passes,
    })
}

/// Relations of `x` and `y` are decided by the centers alone.
pub fn type_independent(x: usize, y: usize, cx: &Dyadic, cy: &Dyadic, p: &Poset) -> bool {
    let one = Dyadic::from_int(1);
    if p.precedes(x, y) {
        &(cx + 1) < cy
    } else if p.precedes(y, x) {
        &(cy + 1) < cx
    } else {
        (cx - cy).abs() < one
    }
}

/// The pass algorithm on one inseparable block.
fn recognize_block(
    bp: &Poset,
    s: TypeSet,
    distinct: bool,
    block: usize,
    passes: &mut Vec<PassRecord>,
) -> Result<Result<Representation, Certificate>, RecognizeError> {
    let n = bp.len();
    let big = n as i64 + 1;
    let mut lower = vec![Dyadic::from_int(-big); n];
    let mut upper = vec![Dyadic::from_int(big); n];
    let mut center: Vec<Option<Dyadic>> = vec![None; n];
    let mut rep = Representation::new(s);
    let mut zero_index: Option<ZeroCycleIndex> = None;
    lower[0] = Dyadic::zero();
    upper[0] = Dyadic::zero();

    for r in 0..n {
        let active: Vec<usize> = (0..n).filter(|&x| center[x].is_none()).collect();
        if active.is_empty() {
            break;
        }
        let v0 = active[0];
        let mut state = PassState::new(
            bp,
            r,
            active.clone(),
            active.iter().map(|&x| lower[x].clone()).collect(),
            active.iter().map(|&x| upper[x].clone()).collect(),
        );
        let outcome = match state.initial_conflict() {
            Some(m) => LoopOutcome::Conflict(m),
            None => state.labeling_loop(),
        };
        let settled = match outcome {
            LoopOutcome::Conflict(m) => {
                if r > 0 {
                    warn!("bound conflict at `{}` in pass {r}", bp.name(active[m]));
                }
                return Ok(Err(Certificate::PositiveCycle(conflict_cycle(bp, &state, m)?)));
            }
            LoopOutcome::Settled(settled) => settled,
        };
        for (k, &x) in active.iter().enumerate() {
            lower[x] = state.lower[k].clone();
            upper[x] = state.upper[k].clone();
        }
        if r == 0 {
            let finite = Dyadic::from_int(-big);
            if active.iter().any(|&x| lower[x] == finite || upper[x] == -finite.clone()) {
                return Err(RecognizeError::Internal("bounds stayed infinite after pass 0 on an inseparable block".into()));
            }
        }
        let fixed: Vec<usize> = settled.iter().map(|&k| active[k]).collect();
        for &x in &fixed {
            center[x] = Some(lower[x].clone());
        }

        let mut record = PassRecord {
            block,
            r,
            start: bp.name(v0).to_string(),
            fixed: fixed
                .iter()
                .map(|&x| (bp.name(x).to_string(), lower[x].clone()))
                .collect(),
            cycle: None,
            narrowing_steps: state.steps_run,
        };
        debug!("pass {r} from `{}` fixed {} elements", bp.name(v0), fixed.len());

        if fixed.len() == 1 {
            let ty = s.iter().next().expect("non-empty type set");
            rep.insert(bp.name(v0), PlacedInterval::new(lower[v0].clone(), ty));
        } else {
            if zero_index.is_none() {
                zero_index = Some(ZeroCycleIndex::new(bp).map_err(|e| match e {
                    ForcingError::PositiveCycleExists(c) => {
                        RecognizeError::Internal(format!("positive cycle {c} survived narrowing"))
                    }
                    e => RecognizeError::Internal(e.to_string()),
                })?);
            }
            let index = zero_index.as_ref().expect("just built");
            let cycle = index
                .cycle_through(bp, &fixed)
                .map_err(|e| RecognizeError::Internal(format!("pass {r}: {e}")))?;
            for &x in &fixed {
                let forced = &lower[v0] + (index.potential(x) - index.potential(v0));
                if lower[x] != forced {
                    return Err(RecognizeError::Internal(format!(
                        "pass {r}: `{}` pinned at {} but its cycle forces {forced}",
                        bp.name(x),
                        lower[x]
                    )));
                }
            }
            let members = cycle.trail().distinct_nodes();
            if members.len() != fixed.len() {
                return Err(RecognizeError::Internal(format!(
                    "pass {r}: value-0 cycle has {} elements, {} were pinned",
                    members.len(),
                    fixed.len()
                )));
            }
            let q = bp
                .induced_by_names(&members)
                .map_err(|e| RecognizeError::Internal(e.to_string()))?;
            let q_centers: Vec<Dyadic> = members
                .iter()
                .map(|m| lower[bp.index_of(m).expect("member of block")].clone())
                .collect();
            let outcome = assign_types(&q, &q_centers, s).map_err(|e| RecognizeError::Internal(e.to_string()))?;
            match outcome {
                AssignOutcome::Success(types) => {
                    for (k, name) in members.iter().enumerate() {
                        rep.insert(name.clone(), PlacedInterval::new(q_centers[k].clone(), types[k]));
                    }
                }
                AssignOutcome::Failure(why) => {
                    debug!("pass {r}: no types ({why:?})");
                    let centers: BTreeMap<String, Dyadic> = members.iter().cloned().zip(q_centers).collect();
                    record.cycle = Some(cycle.clone());
                    passes.push(record);
                    return Ok(Err(Certificate::UnrepresentableZeroCycle {
                        cycle,
                        centers,
                        allowed: s,
                        distinct_intervals: distinct,
                    }));
                }
            }
            record.cycle = Some(cycle);
        }
        passes.push(record);

        if let Some(&next) = active.iter().find(|&&x| center[x].is_none()) {
            let c = &lower[next] + &Dyadic::half_pow(r as u32 + 1);
            debug_assert!(c < upper[next]);
            lower[next] = c.clone();
            upper[next] = c;
        }
    }
    Ok(Ok(rep))
}

/// Positive cycle after a bound conflict: from the trackers when they
/// lead back to the start, otherwise by direct search.
fn conflict_cycle(bp: &Poset, state: &PassState, m: usize) -> Result<ForcingCycle, RecognizeError> {
    match state.trace_certificate(m) {
        Ok(c) => Ok(c),
        Err(e) => {
            warn!("trace from `{}` in pass {} failed ({e:?}); searching directly", bp.name(state.active[m]), state.r);
            find_positive_cycle(bp)
                .ok_or_else(|| RecognizeError::Internal("bound conflict without a positive cycle".into()))
        }
    }
}
