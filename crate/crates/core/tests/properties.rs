#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use proptest::prelude::*;

use clustercat::cluster::{denominator_vector, enumerate_seeds, matrix_from_quiver, mutate_matrix, mutate_seed, ExchangeMatrix, Seed};
use clustercat::mesh::linearize;
use clustercat::tilting::{enumerate_tilting_sets, exchange_graph};
use clustercat::triangle::exchange_triangles;
use clustercat::{almost_positive_roots, ClusterCategory, DynkinType, Orientation};

fn types() -> Vec<DynkinType> {
    vec![
        DynkinType::a(1),
        DynkinType::a(2),
        DynkinType::a(3),
        DynkinType::a(4),
        DynkinType::a(5),
        DynkinType::d(4),
        DynkinType::d(5),
    ]
}

/// A Dynkin type with every edge oriented by one bit of `flips`.
fn oriented(ty: DynkinType, flips: u32) -> Orientation {
    let arrows = ty
        .edges()
        .into_iter()
        .enumerate()
        .map(|(k, (i, j))| if flips >> k & 1 == 1 { (j, i) } else { (i, j) })
        .collect();
    Orientation::new(ty, arrows).unwrap()
}

fn arb_orientation() -> impl Strategy<Value = Orientation> {
    (0..types().len(), any::<u32>()).prop_map(|(t, flips)| oriented(types()[t], flips))
}

fn arb_skew(n: usize) -> impl Strategy<Value = ExchangeMatrix> {
    proptest::collection::vec(-2i64..3, n * (n - 1) / 2).prop_map(move |upper| {
        let mut b = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                b[i][j] = v;
                b[j][i] = -v;
            }
        }
        ExchangeMatrix::new(b).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ext_is_symmetric_and_serre_dual(q in arb_orientation()) {
        let cat = ClusterCategory::new(&q).unwrap();
        for x in 0..cat.len() {
            prop_assert_eq!(cat.ext1_c(x, x), 0);
            prop_assert_eq!(cat.tau_c_inv(cat.tau_c(x)), x);
            for y in 0..cat.len() {
                prop_assert_eq!(cat.ext1_c(x, y), cat.ext1_c(y, x));
                prop_assert_eq!(cat.ext1_c(x, y), cat.hom_c(y, cat.tau_c(x)));
            }
        }
    }

    #[test]
    fn objects_are_the_almost_positive_roots(q in arb_orientation()) {
        let cat = ClusterCategory::new(&q).unwrap();
        let got: BTreeSet<_> = (0..cat.len()).map(|x| cat.gamma(x)).collect();
        let want: BTreeSet<_> = almost_positive_roots(q.dynkin_type()).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn tilting_count_ignores_orientation(flips in any::<u32>(), t in 0..types().len()) {
        let ty = types()[t];
        let a = ClusterCategory::new(&oriented(ty, flips)).unwrap();
        let b = ClusterCategory::new(&Orientation::linear(ty)).unwrap();
        let sa = enumerate_tilting_sets(&a).unwrap();
        prop_assert_eq!(sa.len(), enumerate_tilting_sets(&b).unwrap().len());
        let g = exchange_graph(&sa);
        prop_assert!(g.is_regular(ty.rank()) && g.is_connected());
    }

    #[test]
    fn mesh_hom_matches_hammocks(flips in any::<u32>(), t in 0..4usize) {
        let ty = types()[t];
        let cat = ClusterCategory::new(&oriented(ty, flips)).unwrap();
        let lc = linearize(cat.cluster_quiver().quiver()).unwrap();
        for x in 0..cat.len() {
            for y in 0..cat.len() {
                prop_assert_eq!(lc.hom_dim(x, y), cat.hom_c(x, y) as usize);
            }
        }
    }

    #[test]
    fn exchange_triangle_middles_avoid_the_exchanged_pair(q in arb_orientation()) {
        let cat = ClusterCategory::new(&q).unwrap();
        for x in 0..cat.len() {
            for y in 0..cat.len() {
                if x != y && cat.ext1_c(x, y) == 1 {
                    let t = exchange_triangles(&cat, x, y).unwrap();
                    for s in t.b.iter().chain(&t.b_prime) {
                        prop_assert!(*s != x && *s != y);
                        prop_assert_eq!(cat.ext1_c(*s, x) + cat.ext1_c(*s, y), 0);
                    }
                    prop_assert!(t.b.iter().all(|s| !t.b_prime.contains(s)));
                }
            }
        }
    }

    #[test]
    fn matrix_mutation_is_an_involution(b in (1usize..6).prop_flat_map(arb_skew), k in 0usize..6) {
        let k = k % b.len();
        let once = mutate_matrix(&b, k).unwrap();
        prop_assert_eq!(mutate_matrix(&once, k).unwrap(), b);
    }

    #[test]
    fn random_mutation_paths_stay_laurent(q in arb_orientation(), path in proptest::collection::vec(0usize..5, 0..12)) {
        let n = q.rank();
        let mut s = Seed::initial(matrix_from_quiver(&q));
        for k in path {
            let k = k % n;
            let next = mutate_seed(&s, k).unwrap();
            prop_assert_eq!(next.variables[k].mul(&s.variables[k]).div_exact(&s.variables[k]), Some(next.variables[k].clone()));
            prop_assert_eq!(mutate_seed(&next, k).unwrap(), s.clone());
            s = next;
        }
        let roots: BTreeSet<_> = almost_positive_roots(q.dynkin_type()).into_iter().collect();
        for v in &s.variables {
            prop_assert!(roots.contains(&denominator_vector(v)));
            prop_assert!(v.terms().all(|(_, c)| c > &0.into()));
        }
    }
}

#[test]
fn cluster_count_ignores_orientation() {
    for ty in [DynkinType::a(4), DynkinType::d(4)] {
        let counts: BTreeSet<usize> = (0..8u32)
            .map(|f| {
                enumerate_seeds(&Seed::initial(matrix_from_quiver(&oriented(ty, f))), 1000)
                    .unwrap()
                    .clusters
                    .len()
            })
            .collect();
        assert_eq!(counts.len(), 1, "{ty}");
    }
}
