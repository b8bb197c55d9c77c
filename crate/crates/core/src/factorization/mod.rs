//! Constructive factorizations of M-matrices and the split/permutation
//! strategies that feed them.
//!
//! * [`factor_lu_partitioned`]: block LU with a chosen placement of the
//!   singular classes between `L` and `U`.
//! * [`factor_lu_spurs`]: LU with `L` unit lower triangular and `U` upper
//!   triangular except for spurs below the diagonal in the `mu_i` columns.
//! * [`factor_lbu`]: `A = L B U` with `L`, `U` nonsingular triangular and a
//!   sparse block-diagonal middle factor.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{MMatrix, Tolerances};
use crate::partitions::{finest_encompassing, OrderedPartition};
use crate::structure::singular_structure;

mod block_lu;
mod spurs;
mod strategy;

pub use block_lu::factor_lu_partitioned;
pub use spurs::{factor_lbu, factor_lu_spurs, lbu_pattern};
pub use strategy::{strategy_min_blocks, strategy_permutation};

/// A partition `(J, K)` of the singular-class indices `0..m`: classes in `J`
/// are meant to end up singular classes of `L`, those in `K` of `U`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SplitJK {
    pub j: BTreeSet<usize>,
    pub k: BTreeSet<usize>,
}

impl SplitJK {
    pub fn new(j: impl IntoIterator<Item = usize>, k: impl IntoIterator<Item = usize>) -> Self {
        SplitJK {
            j: j.into_iter().collect(),
            k: k.into_iter().collect(),
        }
    }

    /// Every class placed in `L`.
    pub fn all_in_l(m: usize) -> Self {
        SplitJK::new(0..m, [])
    }

    /// Checks that `J` and `K` partition `0..m`.
    pub fn validate(&self, m: usize) -> Result<()> {
        let bad = |reason: String| Err(Error::BadSplit { m, reason });
        if let Some(&i) = self.j.intersection(&self.k).next() {
            return bad(format!("class {i} is in both J and K"));
        }
        if let Some(&i) = self.j.iter().chain(&self.k).find(|&&i| i >= m) {
            return bad(format!("class index {i} out of range"));
        }
        if self.j.len() + self.k.len() != m {
            return bad("J and K do not cover every class".into());
        }
        Ok(())
    }
}

/// Admissible positions of nonzeros outside the triangle of a factor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SpurPattern {
    pub chi: BTreeSet<(usize, usize)>,
}

impl SpurPattern {
    pub fn contains(&self, j: usize, k: usize) -> bool {
        self.chi.contains(&(j, k))
    }

    pub fn len(&self) -> usize {
        self.chi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chi.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorizationKind {
    BlockLU,
    SpurLU,
    LBU,
}

#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub kind: FactorizationKind,
    pub l: MMatrix,
    pub u: MMatrix,
    /// Middle factor, LBU only.
    pub b: Option<MMatrix>,
    pub chi: Option<SpurPattern>,
    /// The split the factorization was asked to realize (block LU only).
    pub split: Option<SplitJK>,
    /// Claimed bound on the block lower triangular self-partition of `L`.
    pub psi: OrderedPartition,
    /// Claimed bound on the block upper triangular self-partition of `U`.
    pub upsilon: OrderedPartition,
}

impl FactorizationResult {
    /// Wraps externally supplied factors of `a` together with the claims the
    /// matching algorithm would make, so they can be checked by `verify`.
    pub fn from_factors(
        a: &MMatrix,
        kind: FactorizationKind,
        l: MMatrix,
        u: MMatrix,
        b: Option<MMatrix>,
        split: Option<SplitJK>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let s = singular_structure(a, tol)?;
        let n = a.n();
        let encompass = |sets: Vec<Vec<usize>>| finest_encompassing(&sets, n);
        let (chi, psi, upsilon) = match kind {
            FactorizationKind::BlockLU => match &split {
                Some(sp) => {
                    sp.validate(s.m())?;
                    (
                        None,
                        encompass(sp.j.iter().map(|&i| s.f[i].to_vec()).collect())?,
                        encompass(sp.k.iter().map(|&i| s.t[i].to_vec()).collect())?,
                    )
                }
                None => (None, OrderedPartition::whole(n), OrderedPartition::whole(n)),
            },
            FactorizationKind::SpurLU => (
                Some(SpurPattern {
                    chi: s.spur_pattern(),
                }),
                OrderedPartition::singletons(n),
                encompass(s.t.iter().map(|t| t.to_vec()).collect())?,
            ),
            FactorizationKind::LBU => (
                Some(lbu_pattern(&s)),
                OrderedPartition::singletons(n),
                OrderedPartition::singletons(n),
            ),
        };
        Ok(FactorizationResult {
            kind,
            l,
            u,
            b,
            chi,
            split: if kind == FactorizationKind::BlockLU { split } else { None },
            psi,
            upsilon,
        })
    }

    /// `L U` or `L B U`.
    pub fn product(&self) -> MMatrix {
        let lu = match &self.b {
            Some(b) => self.l.entries() * b.entries() * self.u.entries(),
            None => self.l.entries() * self.u.entries(),
        };
        MMatrix::with_zero_tol(lu, self.l.zero_tol()).expect("factors are square")
    }
}

/// A permutation of `0..n`, stored as `order[new_position] = old_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
        }
    }

    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            seen[v] = true;
        }
        Ok(Permutation { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Permutation matrix with `P[new, order[new]] = 1`.
    pub fn matrix(&self) -> MMatrix {
        let n = self.order.len();
        let p = DMatrix::from_fn(n, n, |r, c| if self.order[r] == c { 1.0 } else { 0.0 });
        MMatrix::new(p).expect("nonempty permutation")
    }

    /// `P A P^T`, i.e. entry `(r, c)` is `a[order[r], order[c]]`.
    pub fn apply_symmetric(&self, a: &MMatrix) -> Result<MMatrix> {
        if a.n() != self.order.len() {
            return Err(Error::DimensionMismatch {
                expected: self.order.len(),
                found: a.n(),
            });
        }
        let m = a.submatrix(&self.order, &self.order);
        MMatrix::with_zero_tol(m, a.zero_tol())
    }
}
