//! Recognition of posets representable by typed unit intervals.
//!
//! Each element gets a length-2 interval whose endpoints and center are
//! open or closed according to one of four types `A`, `B`, `C`, `D`.
//! [`recognize`] decides membership for a set of allowed types and returns
//! either a representation or a checkable certificate.

pub mod assign_types;
pub mod certificate;
pub mod classifier;
pub mod dyadic;
pub mod forcing;
pub mod io;
pub mod poset;
pub mod recognizer;
pub mod representation;

pub use certificate::Certificate;
pub use classifier::{classify, classify_with, ClassProfile};
pub use dyadic::Dyadic;
pub use forcing::{ForcingCycle, ForcingTrail, Step, Trichotomy};
pub use poset::{Poset, PosetError};
pub use recognizer::{recognize, recognize_with, Outcome, RecognizeOptions, TwinPolicy};
pub use representation::{IntervalType, PlacedInterval, Representation, TypeSet};
