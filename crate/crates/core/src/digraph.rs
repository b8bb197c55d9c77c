//! Directed graph of a matrix, its strongly connected classes, the access
//! closure, and detection of singular classes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{is_singular_block, MMatrix, Tolerances};
use crate::par::{map_range, Execution};

/// Directed graph on `0..n`; self-loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl DiGraph {
    /// Builds a graph from an edge list; duplicate edges are collapsed.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); n];
        for (i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            sets[i].insert(j);
        }
        Ok(DiGraph {
            n,
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// `(i, j)` is an edge iff `a_ij` is not structurally zero.
    pub fn of_matrix(a: &MMatrix) -> Self {
        let n = a.n();
        let thr = a.zero_threshold();
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| a.get(i, j).abs() > thr).collect())
            .collect();
        DiGraph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, succ)| succ.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut adj = vec![Vec::new(); self.n];
        for (i, j) in self.edges() {
            adj[j].push(i);
        }
        for succ in &mut adj {
            succ.sort_unstable();
        }
        DiGraph { n: self.n, adj }
    }

    /// Vertices reachable from `src` (including `src`), as a bitset.
    fn reach_bits(&self, src: usize) -> Vec<u64> {
        let words = self.n.div_ceil(64);
        let mut seen = vec![0u64; words];
        let mut stack = vec![src];
        seen[src / 64] |= 1 << (src % 64);
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                let (q, r) = (w / 64, w % 64);
                if seen[q] & (1 << r) == 0 {
                    seen[q] |= 1 << r;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Reflexive-transitive access relation: `reaches(i, j)` iff there is a
/// (possibly empty) path from `i` to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessClosure {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AccessClosure {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] & (1 << (j % 64)) != 0
    }

    /// Vertices accessed from `i`, ascending.
    pub fn reached_from(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.reaches(i, j)).collect()
    }

    /// Vertices having access to `j`, ascending.
    pub fn reaching(&self, j: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.reaches(i, j)).collect()
    }

    /// Closure of the reversed graph.
    pub fn transposed(&self) -> AccessClosure {
        let rows: Vec<Vec<bool>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.reaches(j, i)).collect())
            .collect();
        AccessClosure::from_rows(&rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.reaches(i, j)).collect())
            .collect()
    }

    fn from_rows(rows: &[Vec<bool>]) -> AccessClosure {
        let n = rows.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        AccessClosure { n, words, bits }
    }
}

/// Strongly connected classes, optionally flagged singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassList {
    /// Each class ascending; list ordered by smallest vertex.
    pub classes: Vec<Vec<usize>>,
    /// `None` until [`mark_singular_classes`] has run.
    pub singular: Option<Vec<bool>>,
    class_of: Vec<usize>,
}

impl ClassList {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing vertex `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// The singular classes, in list order. Empty if unmarked.
    pub fn singular_classes(&self) -> Vec<&[usize]> {
        match &self.singular {
            Some(flags) => self
                .classes
                .iter()
                .zip(flags)
                .filter(|(_, &s)| s)
                .map(|(c, _)| c.as_slice())
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Strongly connected components (Tarjan).
pub fn classes_of(g: &DiGraph) -> ClassList {
    let n = g.n;
    let mut st = Tarjan {
        next: 0,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.index[v] == usize::MAX {
            st.visit(g, v);
        }
    }
    let mut classes = st.comps;
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_unstable_by_key(|c| c[0]);
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = k;
        }
    }
    ClassList {
        classes,
        singular: None,
        class_of,
    }
}

struct Tarjan {
    next: usize,
    index: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

impl Tarjan {
    // Iterative DFS; the explicit frame stack holds (vertex, next successor slot).
    fn visit(&mut self, g: &DiGraph, root: usize) {
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        self.open(root);
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if let Some(&w) = g.adj[v].get(frame.1) {
                frame.1 += 1;
                if self.index[w] == usize::MAX {
                    self.open(w);
                    frames.push((w, 0));
                } else if self.on_stack[w] {
                    self.low[v] = self.low[v].min(self.index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                self.low[parent] = self.low[parent].min(self.low[v]);
            }
            if self.low[v] == self.index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = self.stack.pop().expect("tarjan stack underflow");
                    self.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                self.comps.push(comp);
            }
        }
    }

    fn open(&mut self, v: usize) {
        self.index[v] = self.next;
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
    }
}

/// Access closure, one graph search per source vertex.
pub fn closure_of(g: &DiGraph) -> AccessClosure {
    closure_of_with(g, Execution::default())
}

pub fn closure_of_with(g: &DiGraph, exec: Execution) -> AccessClosure {
    let n = g.n;
    let words = n.div_ceil(64);
    let rows = map_range(n, exec, |src| g.reach_bits(src));
    let mut bits = Vec::with_capacity(n * words);
    for row in rows {
        bits.extend(row);
    }
    AccessClosure { n, words, bits }
}

/// Flags each class `J` singular iff `sigma_min(A_JJ) <= sing_tol * max(1, ||A_JJ||_inf)`.
pub fn mark_singular_classes(a: &MMatrix, c: &ClassList, tol: &Tolerances) -> Result<ClassList> {
    if c.class_of.len() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: c.class_of.len(),
        });
    }
    if !a.is_m_matrix(tol) {
        return Err(Error::NotMMatrix);
    }
    let flags = c
        .classes
        .iter()
        .map(|class| is_singular_block(&a.principal(class), tol))
        .collect();
    Ok(ClassList {
        classes: c.classes.clone(),
        singular: Some(flags),
        class_of: c.class_of.clone(),
    })
}

/// Classes of `G(A)` with singular flags set.
pub fn singular_classes_of(a: &MMatrix, tol: &Tolerances) -> Result<ClassList> {
    mark_singular_classes(a, &classes_of(&DiGraph::of_matrix(a)), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn one_based(classes: &[Vec<usize>]) -> Vec<Vec<usize>> {
        classes
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect()
    }

    #[test]
    fn digraph_of_examples() {
        let g = DiGraph::of_matrix(&fixtures::a_ex23());
        let edges: Vec<_> = g.edges().map(|(i, j)| (i + 1, j + 1)).collect();
        assert_eq!(edges, vec![(1, 2), (2, 4), (3, 2), (4, 4)]);

        assert_eq!(DiGraph::of_matrix(&MMatrix::zeros(3)).edge_count(), 0);
        let g = DiGraph::of_matrix(&MMatrix::identity(3));
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn classes_examples() {
        let c = classes_of(&DiGraph::of_matrix(&fixtures::a_ex23()));
        assert_eq!(one_based(&c.classes), vec![vec![1], vec![2], vec![3], vec![4]]);

        let c = classes_of(&DiGraph::of_matrix(&fixtures::a_eg2()));
        let c1 = one_based(&c.classes);
        assert!(c1.contains(&vec![1, 2]));
        assert!(c1.contains(&vec![3, 4]));

        let g = DiGraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        assert_eq!(classes_of(&g).classes, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn closure_examples() {
        let cl = closure_of(&DiGraph::of_matrix(&fixtures::a_ex23()));
        // 1-based: 3 -> 2, 4; 2 -> 4; 1 -> 2, 4.
        assert_eq!(cl.reached_from(2), vec![1, 2, 3]);
        assert_eq!(cl.reached_from(1), vec![1, 3]);
        assert_eq!(cl.reached_from(0), vec![0, 1, 3]);
        assert_eq!(cl.reached_from(3), vec![3]);

        let cl = closure_of(&DiGraph::new(2, []).unwrap());
        assert_eq!(cl.to_rows(), vec![vec![true, false], vec![false, true]]);

        let cl = closure_of(&DiGraph::new(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(
            cl.to_rows(),
            vec![
                vec![true, true, true],
                vec![false, true, true],
                vec![false, false, true]
            ]
        );
    }

    #[test]
    fn singular_class_examples() {
        let tol = Tolerances::default();
        let c = singular_classes_of(&fixtures::a_eg2(), &tol).unwrap();
        let s: Vec<Vec<usize>> = c.singular_classes().iter().map(|c| c.to_vec()).collect();
        assert_eq!(one_based(&s), vec![vec![1, 2], vec![3, 4], vec![6]]);

        let c = singular_classes_of(&fixtures::a_eg3(), &tol).unwrap();
        let s: Vec<Vec<usize>> = c.singular_classes().iter().map(|c| c.to_vec()).collect();
        assert_eq!(
            one_based(&s),
            vec![vec![2], vec![3, 5], vec![6], vec![7], vec![8]]
        );

        let c = singular_classes_of(&MMatrix::identity(3), &tol).unwrap();
        assert!(c.singular_classes().is_empty());
    }

    #[test]
    fn marking_requires_m_matrix() {
        let a = MMatrix::from_rows(&[[0.0, -2.0], [-2.0, 0.0]]);
        let c = classes_of(&DiGraph::of_matrix(&a));
        assert_eq!(
            mark_singular_classes(&a, &c, &Tolerances::default()),
            Err(Error::NotMMatrix)
        );
    }

    #[test]
    fn rejects_out_of_range_edges() {
        assert!(DiGraph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn closure_policies_agree() {
        let edges: Vec<_> = (0..199).map(|i| (i, (i * 7 + 3) % 200)).collect();
        let g = DiGraph::new(200, edges).unwrap();
        assert_eq!(
            closure_of_with(&g, Execution::Sequential),
            closure_of_with(&g, Execution::Parallel)
        );
    }
}
