//! Refutation certificates.

use std::collections::BTreeMap;

use crate::dyadic::Dyadic;
use crate::forcing::ForcingCycle;
use crate::representation::TypeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A forcing cycle of positive value: no representation for any type set.
    PositiveCycle(ForcingCycle),
    /// A value-0 cycle whose elements have forced relative centers, and no
    /// choice of types from `allowed` realizes the poset they induce.
    UnrepresentableZeroCycle {
        cycle: ForcingCycle,
        centers: BTreeMap<String, Dyadic>,
        allowed: TypeSet,
        /// When set, no two elements may share both center and type.
        /// Otherwise only twins of the input poset may.
        distinct_intervals: bool,
    },
}

impl Certificate {
    pub fn cycle(&self) -> &ForcingCycle {
        match self {
            Certificate::PositiveCycle(c) => c,
            Certificate::UnrepresentableZeroCycle { cycle, .. } => cycle,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::PositiveCycle(_) => "positive_cycle",
            Certificate::UnrepresentableZeroCycle { .. } => "unrepresentable_zero_cycle",
        }
    }

    /// True when the certificate refutes every type set.
    pub fn is_universal(&self) -> bool {
        matches!(self, Certificate::PositiveCycle(_))
    }
}
