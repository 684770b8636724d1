//! Finite strict partial orders with named elements.
//!
//! Elements are addressed by their index into [`Poset::names`]; every derived
//! structure (twin classes, blocks, embeddings, trails) refers to elements
//! that way, and names are only used at the edges (files, certificates).

mod catalog;
mod enumerate;
mod iso;
mod structure;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use catalog::{catalog, CATALOG_NAMES};
pub use enumerate::{enumerate_posets, MAX_ENUMERATION_SIZE};
pub use iso::{canonical_form, contains_induced, is_isomorphic, CanonicalForm};
pub use structure::{BlockDecomposition, TwinPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("element `{0}` listed more than once")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownName(String),
    #[error("relation is not antisymmetric: `{0}` and `{1}` precede each other after closure")]
    CycleDetected(String, String),
    #[error("unknown catalog poset `{0}`")]
    UnknownCatalogName(String),
    #[error("size {requested} exceeds the supported maximum of {max}")]
    SizeLimitExceeded { requested: usize, max: usize },
}

/// How two elements of a poset relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    Precedes,
    Succeeds,
    Incomparable,
}

/// A finite poset `(X, ≺)` with a dense strict relation matrix.
///
/// Immutable after construction; every constructor checks irreflexivity,
/// antisymmetry and transitivity.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // strict[i * n + j] is true iff i ≺ j
    strict: Vec<bool>,
}

impl Poset {
    /// Builds the transitive closure of `pairs` over `elements`.
    pub fn from_relations<E, A, B>(elements: &[E], pairs: &[(A, B)]) -> Result<Poset, PosetError>
    where
        E: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = build_index(&names)?;
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| PosetError::UnknownName(name.to_string()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::closure_of(names, index, &idx_pairs)
    }

    /// Same as [`Poset::from_relations`] with pairs given by index.
    pub fn from_index_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let index = build_index(&names)?;
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= names.len() {
                    return Err(PosetError::UnknownName(format!("#{x}")));
                }
            }
        }
        Self::closure_of(names, index, pairs)
    }

    /// Builds a poset from a relation matrix, closing it transitively.
    pub fn from_matrix(names: Vec<String>, strict: &[bool]) -> Result<Poset, PosetError> {
        let n = names.len();
        assert_eq!(strict.len(), n * n, "matrix size does not match element count");
        let index = build_index(&names)?;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| strict[i * n + j])
            .collect();
        Self::closure_of(names, index, &pairs)
    }

    fn closure_of(
        names: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let n = names.len();
        let mut strict = vec![false; n * n];
        for &(a, b) in pairs {
            strict[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if strict[i * n + k] {
                    for j in 0..n {
                        if strict[k * n + j] {
                            strict[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if strict[i * n + i] {
                // find a partner on the cycle for the error message
                let partner = (0..n)
                    .find(|&j| j != i && strict[i * n + j] && strict[j * n + i])
                    .unwrap_or(i);
                return Err(PosetError::CycleDetected(names[i].clone(), names[partner].clone()));
            }
        }
        let p = Poset { names, index, strict };
        debug_assert!(p.invariants_hold());
        Ok(p)
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_index_pairs(default_names(n), &pairs).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_index_pairs(default_names(n), &[]).expect("antichain is a poset")
    }

    pub fn empty() -> Poset {
        Poset::antichain(0)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn index_of_checked(&self, name: &str) -> Result<usize, PosetError> {
        self.index_of(name)
            .ok_or_else(|| PosetError::UnknownName(name.to_string()))
    }

    /// `i ≺ j`.
    #[inline]
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.strict[i * self.names.len() + j]
    }

    /// `i ∥ j`: distinct and incomparable.
    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.precedes(i, j) && !self.precedes(j, i)
    }

    pub fn relation(&self, i: usize, j: usize) -> Relation {
        if i == j {
            Relation::Equal
        } else if self.precedes(i, j) {
            Relation::Precedes
        } else if self.precedes(j, i) {
            Relation::Succeeds
        } else {
            Relation::Incomparable
        }
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.precedes(i, j))
    }

    pub fn predecessors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.precedes(j, i))
    }

    pub fn up_degree(&self, i: usize) -> usize {
        self.successors(i).count()
    }

    pub fn down_degree(&self, i: usize) -> usize {
        self.predecessors(i).count()
    }

    /// Number of pairs `(i, j)` with `i ≺ j`.
    pub fn comparable_pairs(&self) -> usize {
        self.strict.iter().filter(|&&b| b).count()
    }

    /// All pairs `(i, j)` with `i ≺ j`, row-major.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.precedes(i, j))
            .collect()
    }

    /// The cover relation (Hasse diagram edges), row-major.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| !(0..n).any(|k| self.precedes(i, k) && self.precedes(k, j)))
            .collect()
    }

    /// The subposet induced on `subset`, keeping the order given.
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let m = subset.len();
        let names: Vec<String> = subset.iter().map(|&i| self.names[i].clone()).collect();
        let index = build_index(&names).expect("induced subset must not repeat elements");
        let mut strict = vec![false; m * m];
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                strict[a * m + b] = self.precedes(i, j);
            }
        }
        Poset { names, index, strict }
    }

    pub fn induced_by_names<S: AsRef<str>>(&self, subset: &[S]) -> Result<Poset, PosetError> {
        let idx = subset
            .iter()
            .map(|s| self.index_of_checked(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = std::collections::HashSet::new();
        for (s, &i) in subset.iter().zip(&idx) {
            if !seen.insert(i) {
                return Err(PosetError::DuplicateElement(s.as_ref().to_string()));
            }
        }
        Ok(self.induced(&idx))
    }

    /// Reverses every relation.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut strict = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                strict[j * n + i] = self.precedes(i, j);
            }
        }
        Poset {
            names: self.names.clone(),
            index: self.index.clone(),
            strict,
        }
    }

    /// Same relation under new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset, PosetError> {
        assert_eq!(names.len(), self.len());
        let index = build_index(&names)?;
        Ok(Poset {
            names,
            index,
            strict: self.strict.clone(),
        })
    }

    /// Reorders elements: position `k` of the result holds element `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Poset {
        assert_eq!(order.len(), self.len());
        self.induced(order)
    }

    /// Disjoint union; names of `other` must not collide with ours.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset, PosetError> {
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let offset = self.len();
        let mut pairs = self.strict_pairs();
        pairs.extend(other.strict_pairs().into_iter().map(|(a, b)| (a + offset, b + offset)));
        Poset::from_index_pairs(names, &pairs)
    }

    /// Ordinal sum: every element of `self` below every element of `other`.
    pub fn ordinal_sum(&self, other: &Poset) -> Result<Poset, PosetError> {
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let offset = self.len();
        let mut pairs = self.strict_pairs();
        pairs.extend(other.strict_pairs().into_iter().map(|(a, b)| (a + offset, b + offset)));
        for i in 0..self.len() {
            for j in 0..other.len() {
                pairs.push((i, j + offset));
            }
        }
        Poset::from_index_pairs(names, &pairs)
    }

    /// Irreflexive, antisymmetric, transitive.
    pub fn invariants_hold(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if self.precedes(i, i) {
                return false;
            }
            for j in 0..n {
                if self.precedes(i, j) && self.precedes(j, i) {
                    return false;
                }
                if self.precedes(i, j) {
                    for k in 0..n {
                        if self.precedes(j, k) && !self.precedes(i, k) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        write!(f, "Poset({:?}; {})", self.names, covers.join(", "))
    }
}

/// Names `e0, e1, …` used by generated posets.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn build_index(names: &[String]) -> Result<HashMap<String, usize>, PosetError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}
