use distspec_core::enumeration::{canonical_form, enumerate_filtered};
use distspec_core::families::{make_k_ab, make_k_double_prime, make_k_prime, make_path, make_tree_t};
use distspec_core::graph::{parse_graph6, write_graph6, Graph};
use distspec_core::poly::decimal_width;
use distspec_core::quotient::{psi, quotient_kdoubleprime, quotient_kpq, quotient_kprime};
use distspec_core::spectra::{char_poly_exact, symmetric_eigenvalues, Matrix};
use proptest::prelude::*;

fn least_complement(g: &Graph) -> f64 {
    symmetric_eigenvalues(&Matrix::distance(&g.complement()).unwrap()).unwrap().least()
}

#[test]
fn labeled_counts_match_independent_count() {
    // Counted separately by brute force over all edge subsets.
    for (n, expected) in [(5, 60), (6, 3_240)] {
        assert_eq!(enumerate_filtered(n, |_| {}).unwrap(), expected);
    }
}

#[test]
fn balanced_split_root_is_least_eigenvalue() {
    for (p, q) in [(4, 3), (4, 4), (5, 4), (6, 5)] {
        let root = psi(p, q).unwrap().least_real_root(&decimal_width(12)).unwrap().midpoint();
        let lambda = least_complement(&make_k_ab(p, q).unwrap().graph);
        assert!((root - lambda).abs() < 1e-8, "({p},{q}): {root} vs {lambda}");
    }
}

#[test]
fn quotients_are_equitable_on_the_full_matrix() {
    for n in 7..=11 {
        let kp = make_k_prime(n).unwrap().graph;
        quotient_kprime(n).unwrap().verify_against(n, &kp.complement().bfs_distances().unwrap().to_i64()).unwrap();
        let kd = make_k_double_prime(n).unwrap().graph;
        quotient_kdoubleprime(n).unwrap().verify_against(n, &kd.complement().bfs_distances().unwrap().to_i64()).unwrap();
    }
    let g = make_k_ab(5, 3).unwrap().graph;
    quotient_kpq(5, 3).unwrap().verify_against(8, &g.complement().bfs_distances().unwrap().to_i64()).unwrap();
}

#[test]
fn tree_t_least_eigenvalue_below_bound() {
    let t = make_tree_t().graph;
    let p = char_poly_exact(5, &t.bfs_distances().unwrap().to_i64()).unwrap();
    let r = p.least_real_root(&decimal_width(10)).unwrap();
    assert!(r.midpoint() < -3.8);
    let jacobi = symmetric_eigenvalues(&Matrix::distance(&t).unwrap()).unwrap().least();
    assert!((r.midpoint() - jacobi).abs() < 1e-9);
}

#[test]
fn path_complement_round_trips_through_graph6() {
    let g = make_path(9).unwrap().graph.complement();
    let s = write_graph6(&g).unwrap();
    assert_eq!(parse_graph6(&s).unwrap(), g);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(n in 5usize..=9, bits in any::<u64>(), seed in any::<u64>()) {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits >> (k % 64) & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
                k += 1;
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn complement_spectrum_sums_to_zero_trace(n in 5usize..=10, bits in any::<u64>()) {
        let mut g = make_path(n).unwrap().graph;
        for (k, (i, j)) in (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).enumerate() {
            if bits >> (k % 64) & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
        }
        let m = Matrix::distance(&g).unwrap();
        let s = symmetric_eigenvalues(&m).unwrap();
        prop_assert!(s.sum().abs() < 1e-8 * n as f64 * m.data().iter().fold(1.0f64, |a, &b| a.max(b)));
    }
}
