use coxk_core::{
    cluster_map, cokernel_mod, k_groups_mod, kernel_mod, snf, verify_report, FinAbGroup, GroupOrder, IntMatrix, Quiver,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// Random acyclic quiver: arrows only go from lower to higher position,
/// then the vertex labels are shuffled so positions are not sorted.
fn dag() -> impl Strategy<Value = Quiver> {
    (1usize..=8)
        .prop_flat_map(|v| {
            let pairs = v * (v - 1) / 2;
            (Just(v), prop::collection::vec(0u8..=3, pairs), Just((1..=v as u64).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(v, mult, labels)| {
            let mut arrows = Vec::new();
            let mut k = 0;
            for i in 0..v {
                for j in i + 1..v {
                    for _ in 0..mult[k] {
                        arrows.push((labels[i], labels[j]));
                    }
                    k += 1;
                }
            }
            let mut order = labels.clone();
            order.sort_unstable();
            Quiver::new(order, &arrows).unwrap()
        })
}

fn count_paths(q: &Quiver, from: usize, to: usize) -> u64 {
    if from == to {
        return 1;
    }
    q.arrow_indices().iter().filter(|&&(s, _)| s == from).map(|&(_, t)| count_paths(q, t, to)).sum()
}

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::from_entries(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn square(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * n)
            .prop_map(move |e| IntMatrix::from_entries(n, n, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

/// Kernel of `x ↦ Mx` on `(ℤ/N)^cols` by enumeration, as a group:
/// its isomorphism type is pinned down by `|G[d]|` for every `d | N`.
fn brute_kernel_counts(m: &IntMatrix, n: i64) -> Vec<usize> {
    let cols = m.cols();
    let vals: Vec<i64> = m.entries().iter().map(|x| x.to_i64().unwrap()).collect();
    let mut kernel = Vec::new();
    let total = (n as usize).pow(cols as u32);
    for code in 0..total {
        let mut x = vec![0i64; cols];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = (c % n as usize) as i64;
            c /= n as usize;
        }
        let zero = (0..m.rows()).all(|i| (0..cols).map(|j| vals[i * cols + j] * x[j]).sum::<i64>().rem_euclid(n) == 0);
        if zero {
            kernel.push(x);
        }
    }
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| kernel.iter().filter(|x| x.iter().all(|&xi| (xi * d) % n == 0)).count())
        .collect()
}

fn group_counts(g: &FinAbGroup, n: i64) -> Vec<usize> {
    assert!(g.is_finite());
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| g.torsion().iter().map(|t| t.gcd(&BigUint::from(d as u64)).to_usize().unwrap()).product())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cartan_counts_paths(q in dag()) {
        let c = q.cartan_matrix().unwrap();
        let v = q.vertex_count();
        for i in 0..v {
            for j in 0..v {
                prop_assert_eq!(c[(i, j)].clone(), BigInt::from(count_paths(&q, i, j)));
            }
        }
        prop_assert_eq!(c.determinant(), BigInt::from(1));
    }

    #[test]
    fn coxeter_determinant_and_relabelling(q in dag(), seed in any::<u64>()) {
        let phi = q.coxeter_matrix().unwrap();
        let v = q.vertex_count();
        let sign = if v % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(phi.determinant(), BigInt::from(sign));

        let mut perm: Vec<usize> = (0..v).collect();
        let mut s = seed;
        for i in (1..v).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = IntMatrix::permutation(&perm);
        let relabelled = q.permuted(&perm).coxeter_matrix().unwrap();
        prop_assert_eq!(relabelled, p.mul(&phi).mul(&p.transpose()));
    }

    #[test]
    fn cluster_map_reports_are_consistent(q in dag(), m in 0u32..4, l in prop::sample::select(vec![2u64, 3, 5]), nu in 1u32..3) {
        let r = k_groups_mod(&q, m, l, nu).unwrap();
        prop_assert_eq!(&r.map_matrix, &cluster_map(&q, m).unwrap());
        for c in verify_report(&r) {
            prop_assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn snf_is_a_valid_decomposition(m in matrix(6, 20)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.determinant().abs(), BigInt::from(1));
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for (i, d) in s.invariant_factors.iter().enumerate() {
            prop_assert!(d.is_positive());
            prop_assert_eq!(&s.d[(i, i)], d);
        }
        prop_assert_eq!(snf(&m.transpose()).invariant_factors, s.invariant_factors);
    }

    #[test]
    fn kernel_and_cokernel_match_enumeration(m in matrix(3, 9), n in 2i64..=6) {
        let big = BigInt::from(n);
        let k = kernel_mod(&m, &big).unwrap();
        prop_assert_eq!(group_counts(&k, n), brute_kernel_counts(&m, n));
        // cokernel of M is dual to the kernel of Mᵀ
        let c = cokernel_mod(&m, &big).unwrap();
        prop_assert_eq!(group_counts(&c, n), brute_kernel_counts(&m.transpose(), n));
    }

    #[test]
    fn square_maps_have_equal_kernel_and_cokernel_orders(m in square(6, 20), n in 2i64..=12) {
        let big = BigInt::from(n);
        let k = kernel_mod(&m, &big).unwrap().order();
        let c = cokernel_mod(&m, &big).unwrap().order();
        prop_assert!(matches!(k, GroupOrder::Finite(_)));
        prop_assert_eq!(k, c);
    }
}
