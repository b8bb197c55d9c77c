//! Order-preserving partitions of `0..n`, the refinement lattice, the block
//! triangular self-partitions of a matrix, and finest encompassing partitions.
//!
//! An order-preserving partition is a sequence of consecutive intervals, so it
//! is stored as its set of cut points: `cuts[k]` means a block boundary lies
//! between positions `k` and `k + 1`. More cuts means a finer partition.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::MMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    n: usize,
    cuts: Vec<bool>,
}

impl OrderedPartition {
    /// `({0}, {1}, ..., {n-1})`, the minimal element of the lattice.
    pub fn singletons(n: usize) -> Self {
        OrderedPartition {
            n,
            cuts: vec![true; n.saturating_sub(1)],
        }
    }

    /// `({0, ..., n-1})`, the maximal element.
    pub fn whole(n: usize) -> Self {
        OrderedPartition {
            n,
            cuts: vec![false; n.saturating_sub(1)],
        }
    }

    /// Validates that `blocks` are nonempty consecutive intervals covering `0..n` in order.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut cuts = vec![false; n.saturating_sub(1)];
        let mut next = 0;
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &v in block {
                if v != next {
                    return Err(Error::InvalidPartition(format!(
                        "block {b} breaks order at index {v} (expected {next})"
                    )));
                }
                next += 1;
            }
            if next < n && b + 1 < blocks.len() {
                cuts[next - 1] = true;
            }
        }
        if next != n {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {next} of {n} indices"
            )));
        }
        Ok(OrderedPartition { n, cuts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_cut_after(&self, k: usize) -> bool {
        self.cuts[k]
    }

    pub fn num_blocks(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            1 + self.cuts.iter().filter(|&&c| c).count()
        }
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        for v in 0..self.n {
            cur.push(v);
            if v + 1 == self.n || self.cuts[v] {
                out.push(std::mem::take(&mut cur));
            }
        }
        out
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.cuts[..v].iter().filter(|&&c| c).count()
    }

    /// True iff the whole of `set` lies inside one block.
    pub fn encompasses(&self, set: &[usize]) -> bool {
        match (set.iter().min(), set.iter().max()) {
            (Some(&lo), Some(&hi)) => !self.cuts[lo..hi].iter().any(|&c| c),
            _ => true,
        }
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for OrderedPartition {
    /// 1-based set notation, e.g. `({1,2},{3})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|v| (v + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Greatest lower bound: blocks are the nonempty pairwise intersections.
pub fn glb(p1: &OrderedPartition, p2: &OrderedPartition) -> Result<OrderedPartition> {
    p1.check_same_n(p2)?;
    Ok(OrderedPartition {
        n: p1.n,
        cuts: p1.cuts.iter().zip(&p2.cuts).map(|(a, b)| *a || *b).collect(),
    })
}

/// Least upper bound: the finest partition both inputs refine.
pub fn lub(p1: &OrderedPartition, p2: &OrderedPartition) -> Result<OrderedPartition> {
    p1.check_same_n(p2)?;
    Ok(OrderedPartition {
        n: p1.n,
        cuts: p1.cuts.iter().zip(&p2.cuts).map(|(a, b)| *a && *b).collect(),
    })
}

/// True iff every block of `p1` lies in some block of `p2`.
pub fn is_refinement(p1: &OrderedPartition, p2: &OrderedPartition) -> Result<bool> {
    p1.check_same_n(p2)?;
    Ok(p1.cuts.iter().zip(&p2.cuts).all(|(a, b)| *a || !*b))
}

/// True iff `X_{v_i, v_i^+}` is structurally zero for every block `v_i`.
pub fn is_block_lower_triangular(x: &MMatrix, p: &OrderedPartition) -> bool {
    let pattern = x.pattern();
    (0..x.n()).all(|i| {
        let b = p.block_of(i);
        (0..x.n()).all(|j| !pattern[i][j] || p.block_of(j) <= b)
    })
}

/// True iff `X_{v_i^+, v_i}` is structurally zero for every block `v_i`.
pub fn is_block_upper_triangular(x: &MMatrix, p: &OrderedPartition) -> bool {
    is_block_lower_triangular(&x.transpose(), p)
}

/// The finest order-preserving partition for which `x` is block lower triangular.
///
/// A cut after position `k` is admissible iff `X[0..=k, k+1..n]` is
/// structurally zero; cuts are independent, so the meet keeps every one.
pub fn block_lower_self_partition(x: &MMatrix) -> OrderedPartition {
    let n = x.n();
    let pattern = x.pattern();
    // Rightmost nonzero column seen in rows 0..=k.
    let mut reach = 0usize;
    let mut cuts = vec![false; n - 1];
    for k in 0..n - 1 {
        if let Some(last) = pattern[k].iter().rposition(|&b| b) {
            reach = reach.max(last);
        }
        cuts[k] = reach <= k;
    }
    OrderedPartition { n, cuts }
}

/// The finest order-preserving partition for which `x` is block upper triangular.
pub fn block_upper_self_partition(x: &MMatrix) -> OrderedPartition {
    block_lower_self_partition(&x.transpose())
}

/// Finest order-preserving partition of `0..n` in which every set lies in one block.
pub fn finest_encompassing<S: AsRef<[usize]>>(sets: &[S], n: usize) -> Result<OrderedPartition> {
    let mut cuts = vec![true; n.saturating_sub(1)];
    for set in sets {
        let set = set.as_ref();
        if let Some(&bad) = set.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        if let (Some(&lo), Some(&hi)) = (set.iter().min(), set.iter().max()) {
            for c in &mut cuts[lo..hi] {
                *c = false;
            }
        }
    }
    Ok(OrderedPartition { n, cuts })
}

/// Helpers on index sets, mirroring `max(J)`, `min(J)`, `J+`, `J-` and `J'`.
pub mod index_set {
    pub fn max(set: &[usize]) -> Option<usize> {
        set.iter().copied().max()
    }

    pub fn min(set: &[usize]) -> Option<usize> {
        set.iter().copied().min()
    }

    /// Indices in `0..n` strictly above `max(set)`.
    pub fn above(set: &[usize], n: usize) -> Vec<usize> {
        match max(set) {
            Some(m) => (m + 1..n).collect(),
            None => (0..n).collect(),
        }
    }

    /// Indices strictly below `min(set)`.
    pub fn below(set: &[usize]) -> Vec<usize> {
        match min(set) {
            Some(m) => (0..m).collect(),
            None => Vec::new(),
        }
    }

    /// Indices in `0..n` not in `set`.
    pub fn complement(set: &[usize], n: usize) -> Vec<usize> {
        let mut mark = vec![false; n];
        for &v in set {
            mark[v] = true;
        }
        (0..n).filter(|&v| !mark[v]).collect()
    }
}
