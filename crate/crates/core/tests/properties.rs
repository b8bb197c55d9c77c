mod common;

use common::*;
use mlu_core::batch::{factor, FactorMode};
use mlu_core::partitions::{
    block_lower_self_partition, block_upper_self_partition, finest_encompassing, glb,
    is_refinement, lub,
};
use mlu_core::random::{random_corpus, random_m_matrix};
use mlu_core::{
    lu_existence_condition, singular_structure, strategy_permutation, subdiagonal_bounds, sweep,
    verify, Execution, MMatrix, OrderedPartition, Tolerances,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn m_matrix(seed: u64, max_n: usize) -> MMatrix {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let singular = r.gen_bool(0.7);
    random_m_matrix(&mut r, n, singular)
}

fn partition_from_mask(n: usize, mask: u32) -> OrderedPartition {
    let mut blocks = vec![vec![0]];
    for k in 1..n {
        if mask & (1 << (k - 1)) != 0 {
            blocks.push(vec![k]);
        } else {
            blocks.last_mut().unwrap().push(k);
        }
    }
    OrderedPartition::from_blocks(n, &blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn m_matrix_test_matches_constructed_radius(seed in any::<u64>(), n in 1usize..9) {
        let mut r = rng(seed);
        let rho = [0.5, 1.0, 3.0][r.gen_range(0..3)];
        let p = nonneg_with_radius(&mut r, n, rho);
        let shift = |alpha: f64| MMatrix::new(DMatrix::identity(n, n) * alpha - &p).unwrap();
        // Only the diagonal of alpha I - P is affected by the shift, so both
        // stay Z-matrices; the verdict flips around alpha = rho.
        prop_assert!(shift(rho * 1.01).is_m_matrix(&tol()));
        prop_assert!(shift(rho).is_m_matrix(&tol()));
        prop_assert!(!shift(rho * 0.99).is_m_matrix(&tol()));
    }

    #[test]
    fn schur_step_keeps_m_matrices(seed in any::<u64>()) {
        let a = m_matrix(seed, 8);
        prop_assume!(a.n() > 1);
        if let Some(p) = (0..a.n()).find(|&i| !a.is_zero_at(i, i)) {
            let s = a.schur_step(p).unwrap();
            prop_assert_eq!(s.n(), a.n() - 1);
            prop_assert!(s.is_z_matrix());
            prop_assert!(s.is_m_matrix(&tol()));
        }
    }

    #[test]
    fn z_of_both_signs_means_diagonal(vals in proptest::collection::vec(-2i8..3, 16), n in 1usize..5) {
        let a = MMatrix::new(DMatrix::from_fn(n, n, |i, j| vals[i * 4 + j] as f64)).unwrap();
        let neg = MMatrix::new(-a.entries().clone()).unwrap();
        if a.is_z_matrix() && neg.is_z_matrix() {
            for i in 0..n {
                for j in 0..n {
                    prop_assert!(i == j || a.get(i, j) == 0.0);
                }
            }
        }
    }

    #[test]
    fn structure_matches_definition(seed in any::<u64>()) {
        let a = m_matrix(seed, 10);
        let s = singular_structure(&a, &tol()).unwrap();
        let o = structure_oracle(&a);
        prop_assert_eq!(&s.classes, &o.classes);
        prop_assert_eq!(&s.mu, &o.mu);
        let t: Vec<Vec<usize>> = s.t.iter().map(|x| x.to_vec()).collect();
        let f: Vec<Vec<usize>> = s.f.iter().map(|x| x.to_vec()).collect();
        prop_assert_eq!(t, o.t);
        prop_assert_eq!(f, o.f);
    }

    #[test]
    fn transpose_swaps_t_and_f(seed in any::<u64>()) {
        let a = m_matrix(seed, 10);
        let s = singular_structure(&a, &tol()).unwrap();
        let st = singular_structure(&a.transpose(), &tol()).unwrap();
        prop_assert_eq!(&s.classes, &st.classes);
        prop_assert_eq!(&s.f, &st.t);
        prop_assert_eq!(&s.t, &st.f);
    }

    #[test]
    fn nested_sets_follow_access(seed in any::<u64>()) {
        let a = m_matrix(seed, 10);
        let s = singular_structure(&a, &tol()).unwrap();
        for i in 0..s.m() {
            for j in i + 1..s.m() {
                if s.closure.reaches(s.mu[i], s.mu[j]) {
                    prop_assert!(s.f[j].is_subset_of(&s.f[i]));
                }
                if s.closure.reaches(s.mu[j], s.mu[i]) {
                    prop_assert!(s.t[j].is_subset_of(&s.t[i]));
                }
            }
        }
    }

    #[test]
    fn bounds_are_ordered_and_match_r_sets(seed in any::<u64>()) {
        let a = m_matrix(seed, 10);
        let s = singular_structure(&a, &tol()).unwrap();
        let (lo, hi) = subdiagonal_bounds(&s);
        prop_assert!(lo <= hi);
        let reach = floyd_warshall(a.n(), &edges_of(&a));
        let r: Vec<Vec<usize>> = s.mu.iter()
            .map(|&m| (m + 1..a.n()).filter(|&j| reach[j][m]).collect())
            .collect();
        let union: std::collections::BTreeSet<usize> = r.iter().flatten().copied().collect();
        prop_assert_eq!(lo, union.len());
        prop_assert_eq!(hi, r.iter().map(Vec::len).sum::<usize>());
        if s.m() == 0 {
            prop_assert_eq!((lo, hi), (0, 0));
        }
    }

    #[test]
    fn permutation_makes_every_f_trivial(seed in any::<u64>()) {
        let a = m_matrix(seed, 10);
        let s = singular_structure(&a, &tol()).unwrap();
        let p = strategy_permutation(&s).unwrap();
        let pa = p.apply_symmetric(&a).unwrap();
        let sp = singular_structure(&pa, &tol()).unwrap();
        for (f, &m) in sp.f.iter().zip(&sp.mu) {
            prop_assert_eq!(f.to_vec(), vec![m]);
        }
        prop_assert!(lu_existence_condition(&sp));
        let explicit = p.matrix().entries() * a.entries() * p.matrix().entries().transpose();
        prop_assert_eq!(&explicit, pa.entries());
    }

    #[test]
    fn every_mode_factors_and_verifies(seed in any::<u64>()) {
        let a = m_matrix(seed, 12);
        for mode in FactorMode::ALL {
            let (target, r) = factor(&a, mode, &tol()).unwrap();
            let rep = verify(&target, &r, &tol()).unwrap();
            prop_assert!(rep.overall, "{:?} {:#?}", mode, rep.failures());
        }
    }

    #[test]
    fn perturbed_factors_are_rejected(seed in any::<u64>(), which in 0usize..2) {
        let a = m_matrix(seed, 8);
        let (_, mut r) = factor(&a, FactorMode::LuMinBlocks, &tol()).unwrap();
        let n = a.n();
        let (lm, um) = (r.l.entries().clone(), r.u.entries().clone());
        // Entry (i, k) of L only reaches the product through row k of U, and
        // entry (k, j) of U through column k of L; pick one that does.
        let weight = |k: usize| if which == 0 { um.row(k).amax() } else { lm.column(k).amax() };
        let mut x = if which == 0 { lm.clone() } else { um.clone() };
        let mut best = None;
        for i in 0..n {
            for j in 0..n {
                let k = if which == 0 { j } else { i };
                let w = x[(i, j)].abs().max(1.0) * weight(k);
                if w > 0.0 && best.is_none_or(|(_, _, bw)| w > bw) {
                    best = Some((i, j, w));
                }
            }
        }
        let Some((bi, bj, _)) = best else { return Ok(()); };
        x[(bi, bj)] += if x[(bi, bj)] == 0.0 { -1.0 } else { 0.5 * x[(bi, bj)] };
        let x = MMatrix::new(x).unwrap();
        if which == 0 { r.l = x } else { r.u = x }
        let rep = verify(&a, &r, &tol()).unwrap();
        prop_assert!(!rep.check("product_identity").unwrap().passed);
        prop_assert!(!rep.overall);
    }

    #[test]
    fn positive_off_diagonal_breaks_z_pattern(seed in any::<u64>()) {
        let a = m_matrix(seed, 8);
        prop_assume!(a.n() > 1);
        let (_, mut r) = factor(&a, FactorMode::LuSpurs, &tol()).unwrap();
        let mut l = r.l.entries().clone();
        l[(a.n() - 1, 0)] = 1.0;
        r.l = MMatrix::new(l).unwrap();
        let rep = verify(&a, &r, &tol()).unwrap();
        prop_assert!(!rep.check("z_pattern_L").unwrap().passed);
    }

    #[test]
    fn lattice_operations(n in 1usize..9, m1 in any::<u32>(), m2 in any::<u32>()) {
        let p1 = partition_from_mask(n, m1);
        let p2 = partition_from_mask(n, m2);
        let g = glb(&p1, &p2).unwrap();
        let l = lub(&p1, &p2).unwrap();
        prop_assert!(is_refinement(&g, &p1).unwrap() && is_refinement(&g, &p2).unwrap());
        prop_assert!(is_refinement(&p1, &l).unwrap() && is_refinement(&p2, &l).unwrap());
        prop_assert_eq!(is_refinement(&p1, &p2).unwrap(), glb(&p1, &p2).unwrap() == p1);
    }

    #[test]
    fn finest_encompassing_is_finest(n in 1usize..9, raw in proptest::collection::vec((0usize..8, 0usize..8), 0..4)) {
        let sets: Vec<Vec<usize>> = raw.iter()
            .map(|&(a, b)| { let (a, b) = (a % n, b % n); (a.min(b)..=a.max(b)).collect() })
            .collect();
        let p = finest_encompassing(&sets, n).unwrap();
        for s in &sets {
            prop_assert!(p.encompasses(s));
        }
        for mask in 0u32..1 << (n - 1) {
            let q = partition_from_mask(n, mask);
            if sets.iter().all(|s| q.encompasses(s)) {
                prop_assert!(is_refinement(&p, &q).unwrap());
            }
        }
    }

    #[test]
    fn self_partitions_are_transposes(seed in any::<u64>()) {
        let a = m_matrix(seed, 10);
        prop_assert_eq!(block_upper_self_partition(&a), block_lower_self_partition(&a.transpose()));
    }
}

#[test]
fn sweep_is_policy_independent() {
    let corpus = random_corpus(&mut rng(11), 60, 10);
    let seq = sweep(&corpus, &FactorMode::ALL, &tol(), Execution::Sequential);
    let par = sweep(&corpus, &FactorMode::ALL, &tol(), Execution::Parallel);
    assert_eq!(seq.len(), corpus.len() * FactorMode::ALL.len());
    for (a, b) in seq.iter().zip(&par) {
        assert_eq!((a.index, a.mode, a.passed), (b.index, b.mode, b.passed));
        assert!(a.passed, "{a:?}");
    }
}
