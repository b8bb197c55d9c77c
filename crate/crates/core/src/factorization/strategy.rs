use std::collections::BTreeSet;

use super::{Permutation, SplitJK};
use crate::error::{Error, Result};
use crate::structure::SingularStructure;

/// Chooses `(J, K)` greedily to keep blocks small.
///
/// Takes the lowest unassigned class `i`; puts it in `J` if `|F_i| < |T_i|`,
/// otherwise in `K`. Classes whose `F_j` (resp. `T_j`) already lies inside
/// the chosen set follow `i` to the same side.
pub fn strategy_min_blocks(s: &SingularStructure) -> SplitJK {
    let mut remaining: BTreeSet<usize> = (0..s.m()).collect();
    let mut split = SplitJK::default();
    while let Some(i) = remaining.pop_first() {
        if s.f[i].len() < s.t[i].len() {
            split.j.insert(i);
            let covered: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&j| s.f[j].is_subset_of(&s.f[i]))
                .collect();
            for j in covered {
                remaining.remove(&j);
                split.j.insert(j);
            }
        } else {
            split.k.insert(i);
            let covered: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&j| s.t[j].is_subset_of(&s.t[i]))
                .collect();
            for j in covered {
                remaining.remove(&j);
                split.k.insert(j);
            }
        }
    }
    split
}

/// Symmetric permutation after which every `F_i = {mu_i}`.
///
/// Non-`mu` indices keep their relative order at the front; the `mu_i` go to
/// the tail, each placed after every `mu_j` it has access to. Ties are broken
/// by ascending original index.
pub fn strategy_permutation(s: &SingularStructure) -> Result<Permutation> {
    let m = s.m();
    // indegree[i] = number of other mu_j that mu_i has access to.
    let mut indegree: Vec<usize> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && s.closure.reaches(s.mu[i], s.mu[j]))
                .count()
        })
        .collect();
    let mut ready: BTreeSet<usize> = (0..m).filter(|&i| indegree[i] == 0).collect();
    let mut tail = Vec::with_capacity(m);
    while let Some(j) = ready.pop_first() {
        tail.push(s.mu[j]);
        for i in 0..m {
            if i != j && indegree[i] > 0 && s.closure.reaches(s.mu[i], s.mu[j]) {
                indegree[i] -= 1;
                if indegree[i] == 0 {
                    ready.insert(i);
                }
            }
        }
    }
    if tail.len() != m {
        let stuck = (0..m).filter(|&i| indegree[i] > 0).map(|i| s.mu[i]).collect();
        return Err(Error::CyclicAccessAmongMu(stuck));
    }
    let mut order: Vec<usize> = (0..s.n()).filter(|&v| !s.is_mu(v)).collect();
    order.extend(tail);
    Permutation::from_order(order)
}
