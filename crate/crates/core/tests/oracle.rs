mod common;

use std::collections::{BTreeMap, BTreeSet};

use quasiflag::oracle::{
    enumerate_fiber_chains, enumerate_lattices, fiber_point_count, fiber_point_count_in_flag, ConstMatrix,
    Lattice, OracleConfig, PrimeField,
};
use quasiflag::{GammaVec, TriangleArray};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::Truncated;

fn gv(c: &[u32]) -> GammaVec {
    GammaVec::from_coeffs(c.to_vec()).unwrap()
}

fn rows(mu: &TriangleArray) -> Vec<Vec<u32>> {
    mu.rows()
}

#[test]
fn canonical_forms_match_stable_subspaces() {
    let field = PrimeField::new(2).unwrap();
    for k in 1..=3 {
        for c in 0..=2u32 {
            let depth = c as usize + 1;
            let lattices = enumerate_lattices(field, k, c, 1 << 20).unwrap();
            let distinct: BTreeSet<_> = lattices.iter().collect();
            assert_eq!(distinct.len(), lattices.len(), "duplicates at k={k} c={c}");
            for l in &lattices {
                assert_eq!(&l.canonicalize(depth).unwrap(), l);
                assert_eq!(&l.canonicalize(depth + 3).unwrap(), l);
            }
            let ours: BTreeSet<Vec<Vec<u32>>> = lattices.iter().map(|l| common::lattice_annihilator(l, depth)).collect();
            assert_eq!(ours.len(), lattices.len(), "two canonical forms with the same module at k={k} c={c}");
            let theirs: BTreeSet<Vec<Vec<u32>>> =
                Truncated { k, depth }.stable_annihilators(c as usize, 2).into_iter().collect();
            assert_eq!(ours, theirs, "k={k} c={c}");
        }
    }
}

#[test]
fn random_generators_reduce_to_enumerated_forms() {
    // generating sets drawn at random; whenever the generated module has
    // small colength its canonical form must be one of the enumerated ones
    let field = PrimeField::new(2).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for k in 1..=3usize {
        let known: BTreeSet<Lattice> = (0..=2).flat_map(|c| enumerate_lattices(field, k, c, 1 << 20).unwrap()).collect();
        let mut hits = 0;
        for _ in 0..400 {
            let gens: Vec<Vec<Vec<u32>>> = (0..k + 1)
                .map(|_| {
                    (0..k)
                        .map(|_| {
                            let mut p: Vec<u32> = (0..3).map(|_| rng.gen_range(0..2)).collect();
                            while p.last() == Some(&0) {
                                p.pop();
                            }
                            p
                        })
                        .collect()
                })
                .collect();
            let Ok(l) = Lattice::from_generators(field, k, &gens, 8) else {
                continue;
            };
            if l.colength() <= 2 {
                hits += 1;
                assert!(known.contains(&l), "{l:?}");
                for g in &gens {
                    assert!(l.contains_vector(g));
                }
            }
        }
        assert!(hits > 0);
    }
}

#[test]
fn fiber_counts_match_subspace_oracle() {
    let cases: &[(&[u32], u32)] =
        &[(&[1], 2), (&[2], 3), (&[1, 1], 2), (&[1, 1], 3), (&[2, 1], 2), (&[1, 2], 2), (&[2, 2], 2), (&[1, 1, 1], 2)];
    for &(c, q) in cases {
        let ours = fiber_point_count(&gv(c), q, &OracleConfig::default()).unwrap();
        let theirs = common::subspace_fiber(c, q);
        assert_eq!(ours.total, theirs.total, "{c:?} q={q}");
        let buckets: BTreeMap<Vec<Vec<u32>>, u64> = ours.buckets.iter().map(|(m, &n)| (rows(m), n)).collect();
        assert_eq!(buckets, theirs.buckets, "{c:?} q={q}");
    }
}

#[test]
fn documented_fiber_examples() {
    let cfg = OracleConfig::default();
    let count = fiber_point_count(&gv(&[1, 1]), 2, &cfg).unwrap();
    assert_eq!(count.total, 3);
    let buckets: Vec<(Vec<Vec<u32>>, u64)> = count.buckets.iter().map(|(m, &n)| (rows(m), n)).collect();
    assert_eq!(buckets, vec![(vec![vec![1], vec![0, 1]], 1), (vec![vec![1], vec![1, 1]], 2)]);
    assert_eq!(fiber_point_count(&gv(&[2, 2]), 2, &cfg).unwrap().total, 7);
    let big = OracleConfig { max_q: 5, ..cfg };
    assert_eq!(fiber_point_count(&gv(&[3]), 5, &big).unwrap().total, 1);
    let zero = fiber_point_count(&gv(&[0, 0]), 2, &cfg).unwrap();
    assert_eq!(zero.total, 1);
    assert!(zero.buckets.keys().all(|m| m.flat().iter().all(|&x| x == 0)));
}

#[test]
fn chains_land_in_m_gamma() {
    let cfg = OracleConfig::default();
    for c in [&[1u32, 1][..], &[2, 1], &[1, 1, 1]] {
        let gamma = gv(c);
        let trunc = cfg.truncation(&gamma);
        for chain in enumerate_fiber_chains(&gamma, 2, &cfg).unwrap() {
            assert_eq!(chain.gamma(), gamma);
            let mu = chain.mu_invariants(trunc).unwrap();
            assert_eq!(mu.diagonal(), gamma);
            assert!(quasiflag::mu_to_kappa(&mu, &gamma).is_ok());
        }
    }
}

fn random_lower_triangular(field: PrimeField, k: usize, rng: &mut StdRng) -> ConstMatrix {
    let q = field.order();
    let rows = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => rng.gen_range(0..q),
                    std::cmp::Ordering::Equal => rng.gen_range(1..q),
                    std::cmp::Ordering::Greater => 0,
                })
                .collect()
        })
        .collect();
    ConstMatrix::new(field, rows).unwrap()
}

#[test]
fn counts_are_flag_independent() {
    let cfg = OracleConfig::default();
    let mut rng = StdRng::seed_from_u64(2024);
    for (c, q) in [(&[1u32, 1][..], 2u32), (&[1, 1], 3), (&[2, 1], 3), (&[1, 2], 2), (&[1, 1, 1], 2)] {
        let gamma = gv(c);
        let field = PrimeField::new(q).unwrap();
        let base = fiber_point_count(&gamma, q, &cfg).unwrap();
        for _ in 0..3 {
            let g = random_lower_triangular(field, c.len(), &mut rng);
            let moved = fiber_point_count_in_flag(&gamma, q, &g, &cfg).unwrap();
            assert_eq!(moved, base, "{c:?} q={q} g={g:?}");
        }
    }
}

#[test]
fn larger_truncation_changes_nothing() {
    let base = OracleConfig::default();
    let wide = OracleConfig { extra_truncation: 2, ..base };
    for (c, q) in [(&[1u32, 1][..], 2u32), (&[2, 1], 2), (&[2, 2], 2), (&[1, 2], 3), (&[1, 1, 1], 2)] {
        let gamma = gv(c);
        assert_eq!(
            fiber_point_count(&gamma, q, &base).unwrap(),
            fiber_point_count(&gamma, q, &wide).unwrap(),
            "{c:?} q={q}"
        );
    }
}

#[test]
fn oracle_caps() {
    let cfg = OracleConfig::default();
    assert!(fiber_point_count(&gv(&[1, 1]), 5, &cfg).unwrap_err().is_cap());
    assert!(fiber_point_count(&gv(&[3, 2]), 2, &cfg).unwrap_err().is_cap());
    assert!(fiber_point_count(&gv(&[1, 0, 0, 0]), 2, &cfg).unwrap_err().is_cap());
    assert!(!fiber_point_count(&gv(&[1, 1]), 4, &cfg).unwrap_err().is_cap());
}
