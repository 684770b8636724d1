//! One pass of bound narrowing.

use std::collections::BTreeSet;

use crate::dyadic::Dyadic;
use crate::forcing::ForcingCycle;
use crate::poset::{Poset, Relation};

/// Which bounds of `v_j` a narrowing step changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Change {
    pub lower: bool,
    pub upper: bool,
}

impl Change {
    pub fn any(self) -> bool {
        self.lower || self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopOutcome {
    /// Positions whose bounds met, always including position 0.
    Settled(Vec<usize>),
    /// The lower bound of this position passed its upper bound.
    Conflict(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceError {
    /// A tracker chain stopped at an element whose bound never changed.
    Broken { at: usize },
    /// The traced cycle does not have positive value.
    NotPositive(i64),
}

/// State of pass `r`. Elements are addressed by position: position 0 is
/// the pass's starting element `v_0`, positions `1..=n_r` the others.
#[derive(Debug, Clone)]
pub struct PassState<'a> {
    pub r: usize,
    p: &'a Poset,
    /// `active[k]` is the poset element at position k.
    pub active: Vec<usize>,
    pub lower: Vec<Dyadic>,
    pub upper: Vec<Dyadic>,
    pub f: Vec<Option<usize>>,
    pub g: Vec<Option<usize>>,
    /// Zero entries of M with both indices in `1..=n_r`.
    pending: BTreeSet<(usize, usize)>,
    pub steps_run: usize,
}

impl<'a> PassState<'a> {
    /// Sets up pass `r` and runs the narrowing step from `v_0` to every
    /// other position. `lower[0] == upper[0]` must hold.
    pub fn new(p: &'a Poset, r: usize, active: Vec<usize>, lower: Vec<Dyadic>, upper: Vec<Dyadic>) -> Self {
        let n = active.len();
        assert!(n >= 1 && lower.len() == n && upper.len() == n);
        assert_eq!(lower[0], upper[0], "v_0 must have a fixed center");
        let pending = (1..n)
            .flat_map(|i| (1..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let mut state = PassState {
            r,
            p,
            active,
            lower,
            upper,
            f: vec![None; n],
            g: vec![None; n],
            pending,
            steps_run: 0,
        };
        for j in 1..n {
            state.narrowing_step(0, j);
        }
        state
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn in_conflict(&self, j: usize) -> bool {
        self.lower[j] > self.upper[j]
    }

    /// Procedure NS for the ordered pair of positions `(i, j)`.
    pub fn narrowing_step(&mut self, i: usize, j: usize) -> Change {
        debug_assert!(i != j || i == 0);
        self.steps_run += 1;
        let mut change = Change::default();
        let (x, y) = (self.active[i], self.active[j]);
        let rel = self.p.relation(x, y);
        let new_lower = match rel {
            Relation::Precedes => Some(&self.lower[i] + 1),
            Relation::Incomparable => Some(&self.lower[i] - 1),
            _ => None,
        };
        if let Some(l) = new_lower {
            if self.lower[j] < l {
                self.bump_check(j, &l, true);
                self.lower[j] = l;
                self.f[j] = Some(i);
                change.lower = true;
            }
        }
        let new_upper = match rel {
            Relation::Succeeds => Some(&self.upper[i] - 1),
            Relation::Incomparable => Some(&self.upper[i] + 1),
            _ => None,
        };
        if let Some(u) = new_upper {
            if self.upper[j] > u {
                self.bump_check(j, &u, false);
                self.upper[j] = u;
                self.g[j] = Some(i);
                change.upper = true;
            }
        }
        change
    }

    // after its first change in a pass every bound moves by at least 1
    fn bump_check(&self, j: usize, new: &Dyadic, is_lower: bool) {
        if cfg!(debug_assertions) {
            let (tracker, old) = if is_lower {
                (&self.f[j], &self.lower[j])
            } else {
                (&self.g[j], &self.upper[j])
            };
            if tracker.is_some() {
                let moved = if is_lower { new - old } else { old - new };
                debug_assert!(moved >= Dyadic::from_int(1), "bound moved by {moved}");
            }
        }
    }

    /// Runs narrowing steps on zero entries of M, smallest pair first,
    /// until none remain or a bound conflict appears.
    pub fn labeling_loop(&mut self) -> LoopOutcome {
        let n = self.len();
        while let Some((i, j)) = self.pending.pop_first() {
            let change = self.narrowing_step(i, j);
            if self.in_conflict(j) {
                return LoopOutcome::Conflict(j);
            }
            if change.any() {
                for k in 1..n {
                    if k != j {
                        self.pending.insert((j, k));
                        self.pending.insert((k, j));
                    }
                }
            }
        }
        LoopOutcome::Settled((0..n).filter(|&k| self.lower[k] == self.upper[k]).collect())
    }

    /// Checks for a conflict left by the initial steps from `v_0`.
    pub fn initial_conflict(&self) -> Option<usize> {
        (1..self.len()).find(|&j| self.in_conflict(j))
    }

    /// Builds a positive cycle from the trackers after a conflict at
    /// position `m`: the reversed `f`-chain is a trail from `v_0` to `v_m`,
    /// the `g`-chain a trail from `v_m` back to `v_0`. A repeated position
    /// in either chain closes a cycle by itself.
    pub fn trace_certificate(&self, m: usize) -> Result<ForcingCycle, TraceError> {
        let to_cycle = |positions: &[usize]| {
            let elems: Vec<usize> = positions.iter().map(|&k| self.active[k]).collect();
            let c = ForcingCycle::from_indices(self.p, &elems).map_err(|_| TraceError::Broken { at: positions[0] })?;
            if c.value() > 0 {
                Ok(c)
            } else {
                Err(TraceError::NotPositive(c.value()))
            }
        };

        let chain = |tracker: &[Option<usize>]| -> Result<Result<Vec<usize>, Vec<usize>>, TraceError> {
            // Ok(chain ending at 0) or Err(closed segment)
            let mut seq = vec![m];
            let mut seen = vec![usize::MAX; self.len()];
            seen[m] = 0;
            let mut cur = m;
            while cur != 0 {
                let next = tracker[cur].ok_or(TraceError::Broken { at: self.active[cur] })?;
                if seen[next] != usize::MAX {
                    let mut seg = seq[seen[next]..].to_vec();
                    seg.push(next);
                    return Ok(Err(seg));
                }
                seen[next] = seq.len();
                seq.push(next);
                cur = next;
            }
            Ok(Ok(seq))
        };

        let t = match chain(&self.f)? {
            Ok(mut seq) => {
                seq.reverse();
                seq
            }
            Err(mut seg) => {
                seg.reverse();
                return to_cycle(&seg);
            }
        };
        let rr = match chain(&self.g)? {
            Ok(seq) => seq,
            Err(seg) => return to_cycle(&seg),
        };
        let mut cycle = t;
        cycle.extend_from_slice(&rr[1..]);
        to_cycle(&cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    fn start(p: &Poset) -> PassState<'_> {
        let n = p.len() as i64;
        let mut lower = vec![Dyadic::from_int(-n - 1); p.len()];
        let mut upper = vec![Dyadic::from_int(n + 1); p.len()];
        lower[0] = Dyadic::zero();
        upper[0] = Dyadic::zero();
        PassState::new(p, 0, (0..p.len()).collect(), lower, upper)
    }

    #[test]
    fn first_steps() {
        let c2 = Poset::chain(2);
        let s = start(&c2);
        assert_eq!(s.lower[1], Dyadic::from_int(1));
        assert_eq!(s.f[1], Some(0));

        let a2 = Poset::antichain(2);
        let mut s = start(&a2);
        assert_eq!(s.lower[1], Dyadic::from_int(-1));
        assert_eq!(s.upper[1], Dyadic::from_int(1));
        assert!(!s.narrowing_step(0, 1).any());
        assert_eq!(s.labeling_loop(), LoopOutcome::Settled(vec![0]));
    }

    #[test]
    fn two_plus_two_pass_zero() {
        let tt = catalog("2+2").unwrap();
        let mut s = start(&tt);
        assert_eq!(s.labeling_loop(), LoopOutcome::Settled(vec![0, 1, 2, 3]));
        let expect: Vec<Dyadic> = [0, 1, 0, 1].into_iter().map(Dyadic::from_int).collect();
        assert_eq!(s.lower, expect);
        assert_eq!(s.upper, expect);
    }

    #[test]
    fn four_plus_one_conflicts() {
        let p = catalog("4+1").unwrap();
        let mut s = start(&p);
        let LoopOutcome::Conflict(m) = s.labeling_loop() else {
            panic!("4+1 must fail in pass 0");
        };
        assert!(s.in_conflict(m));
        if let Ok(c) = s.trace_certificate(m) {
            assert!(c.value() > 0);
        }
    }
}
