//! Singular-class structure of an M-matrix: the classes `S_i` ordered by
//! their largest vertex `mu_i`, the intervals `T_i` (vertices at or above
//! `mu_i` bounded by something with access to `S_i`) and `F_i` (bounded by
//! something accessed from `S_i`), the LU existence predicates, and the
//! bounds on subdiagonal nonzeros of admissible upper factors.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::digraph::{closure_of, singular_classes_of, AccessClosure, ClassList, DiGraph};
use crate::error::Result;
use crate::matrix::{MMatrix, Tolerances};

/// Closed integer interval `[start, end]`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn singleton(v: usize) -> Self {
        Interval { start: v, end: v }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.start <= v && v <= self.end
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.start <= self.start && self.end <= other.end
    }

    pub fn to_vec(&self) -> Vec<usize> {
        (self.start..=self.end).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SingularStructure {
    n: usize,
    /// Singular classes, ascending within, ordered by `mu`.
    pub classes: Vec<Vec<usize>>,
    pub mu: Vec<usize>,
    pub t: Vec<Interval>,
    pub f: Vec<Interval>,
    pub closure: AccessClosure,
    /// All classes of `G(A)`, with singular flags.
    pub all_classes: ClassList,
}

impl SingularStructure {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of singular classes.
    pub fn m(&self) -> usize {
        self.mu.len()
    }

    /// Index `i` of the singular class containing vertex `v`, if any.
    pub fn singular_class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&v).is_ok())
    }

    pub fn is_mu(&self, v: usize) -> bool {
        self.mu.binary_search(&v).is_ok()
    }

    /// `R_i = { j > mu_i : j has access to mu_i }`.
    pub fn r_sets(&self) -> Vec<Vec<usize>> {
        self.mu
            .iter()
            .map(|&mu| {
                (mu + 1..self.n)
                    .filter(|&j| self.closure.reaches(j, mu))
                    .collect()
            })
            .collect()
    }

    /// The spur pattern for the LU with nonsingular `L`:
    /// `{ (j, mu_i) : j > mu_i, j has access to mu_i }`.
    pub fn spur_pattern(&self) -> BTreeSet<(usize, usize)> {
        self.r_sets()
            .into_iter()
            .zip(&self.mu)
            .flat_map(|(r, &mu)| r.into_iter().map(move |j| (j, mu)))
            .collect()
    }
}

/// Computes `S_i`, `mu_i`, `T_i`, `F_i` from the access closure of `G(A)`.
pub fn singular_structure(a: &MMatrix, tol: &Tolerances) -> Result<SingularStructure> {
    let all_classes = singular_classes_of(a, tol)?;
    let closure = closure_of(&DiGraph::of_matrix(a));
    Ok(structure_from_parts(a.n(), all_classes, closure))
}

pub(crate) fn structure_from_parts(
    n: usize,
    all_classes: ClassList,
    closure: AccessClosure,
) -> SingularStructure {
    let mut classes: Vec<Vec<usize>> = all_classes
        .singular_classes()
        .into_iter()
        .map(|c| c.to_vec())
        .collect();
    classes.sort_by_key(|c| *c.last().expect("classes are nonempty"));
    let mu: Vec<usize> = classes.iter().map(|c| *c.last().unwrap()).collect();
    // Access to/from S_i is the same as to/from mu_i since S_i is a class.
    let t = mu
        .iter()
        .map(|&m| Interval {
            start: m,
            end: (m..n).rev().find(|&j| closure.reaches(j, m)).unwrap_or(m),
        })
        .collect();
    let f = mu
        .iter()
        .map(|&m| Interval {
            start: m,
            end: (m..n).rev().find(|&j| closure.reaches(m, j)).unwrap_or(m),
        })
        .collect();
    SingularStructure {
        n,
        classes,
        mu,
        t,
        f,
        closure,
        all_classes,
    }
}

/// `T_i = {mu_i}` for every `i`: an LU with nonsingular lower factor exists.
pub fn varga_cai_condition(s: &SingularStructure) -> bool {
    s.t.iter().zip(&s.mu).all(|(t, &m)| *t == Interval::singleton(m))
}

/// `T_i = {mu_i}` or `F_i = {mu_i}` for every `i`: a triangular LU into
/// (possibly singular) M-matrices exists.
pub fn lu_existence_condition(s: &SingularStructure) -> bool {
    s.mu
        .iter()
        .enumerate()
        .all(|(i, &m)| s.t[i] == Interval::singleton(m) || s.f[i] == Interval::singleton(m))
}

/// `(|R|, sum |R_i|)`: lower bound on the subdiagonal nonzeros of any
/// admissible upper factor, and the count the spur LU can reach.
pub fn subdiagonal_bounds(s: &SingularStructure) -> (usize, usize) {
    let r = s.r_sets();
    let upper = r.iter().map(Vec::len).sum();
    let union: BTreeSet<usize> = r.into_iter().flatten().collect();
    (union.len(), upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn iv(a: usize, b: usize) -> Interval {
        Interval {
            start: a - 1,
            end: b - 1,
        }
    }

    fn st(a: &MMatrix) -> SingularStructure {
        singular_structure(a, &Tolerances::default()).unwrap()
    }

    #[test]
    fn ex23_tables() {
        let s = st(&fixtures::a_ex23());
        assert_eq!(s.classes, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(s.t, vec![iv(1, 1), iv(2, 3), iv(3, 3)]);
        // 3 -> 2 -> 4, so 4 is accessed from S_3.
        assert_eq!(s.f, vec![iv(1, 4), iv(2, 4), iv(3, 4)]);
    }

    #[test]
    fn eg2_tables() {
        let s = st(&fixtures::a_eg2());
        assert_eq!(s.mu, vec![1, 3, 5]);
        assert_eq!(s.t, vec![iv(2, 2), iv(4, 7), iv(6, 7)]);
        assert_eq!(s.f, vec![iv(2, 5), iv(4, 4), iv(6, 6)]);
        assert!(!varga_cai_condition(&s));
        // T_1, F_2 and F_3 are singletons.
        assert!(lu_existence_condition(&s));
    }

    #[test]
    fn eg3_tables() {
        let s = st(&fixtures::a_eg3());
        assert_eq!(s.mu, vec![1, 4, 5, 6, 7]);
        assert_eq!(s.f, vec![iv(2, 6), iv(5, 6), iv(6, 6), iv(7, 8), iv(8, 8)]);
        // Every T_i starts at mu_i.
        assert_eq!(s.t, vec![iv(2, 8), iv(5, 8), iv(6, 8), iv(7, 7), iv(8, 8)]);
    }

    #[test]
    fn existence_predicates() {
        let s = st(&fixtures::a_eg());
        assert!(!varga_cai_condition(&s));
        assert!(lu_existence_condition(&s));

        // Spurs (3,2), (4,2), ... mean vertices above mu_1 reach S_1.
        let s = st(&fixtures::a_43());
        assert_eq!(s.t[0], iv(2, 5));
        assert!(!varga_cai_condition(&s));

        let s = st(&MMatrix::identity(3));
        assert_eq!(s.m(), 0);
        assert!(varga_cai_condition(&s));
        assert!(lu_existence_condition(&s));
        assert_eq!(subdiagonal_bounds(&s), (0, 0));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(subdiagonal_bounds(&st(&fixtures::a_45())), (2, 3));
        assert_eq!(subdiagonal_bounds(&st(&fixtures::b_45())), (2, 3));
        assert_eq!(subdiagonal_bounds(&st(&fixtures::a_43())), (5, 6));
    }

    #[test]
    fn spur_pattern_of_a43() {
        let chi: Vec<_> = st(&fixtures::a_43())
            .spur_pattern()
            .into_iter()
            .map(|(j, k)| (j + 1, k + 1))
            .collect();
        assert_eq!(chi, vec![(3, 2), (4, 2), (5, 2), (5, 4), (7, 6), (8, 6)]);
    }

    #[test]
    fn requires_m_matrix() {
        let a = MMatrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(singular_structure(&a, &Tolerances::default()).is_err());
    }
}
