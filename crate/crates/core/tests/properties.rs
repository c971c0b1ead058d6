use std::collections::BTreeSet;

use lefschetz::census::{census, CensusOptions};
use lefschetz::engine::{mult_matrix, wlp_report, Characteristic};
use lefschetz::flag::{permutations, Graph};
use lefschetz::linalg::{rank_mod_p, rank_rational, solve_integer, IntMatrix};
use lefschetz::monomial::{Algebra, Monomial, MonomialIdeal};
use lefschetz::tensor::FailureWindow;
use lefschetz::topology::SkeletonComplex;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

const Q: Characteristic = Characteristic::Zero;

fn algebra(ideal: MonomialIdeal) -> Algebra {
    Algebra::new(ideal).unwrap()
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| (0..1u64 << (n * (n - 1) / 2)).prop_map(move |c| Graph::from_code(n, c)))
}

/// Artinian monomial ideals in up to three variables: pure powers plus a
/// few mixed generators.
fn artinian_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=3)
        .prop_flat_map(|n| (prop::collection::vec(1u16..=3, n), prop::collection::vec(prop::collection::vec(0u16..3, n), 0..4)))
        .prop_map(|(powers, extra)| {
            let n = powers.len();
            let pure = (0..n).map(|i| (0..n).map(|k| if k == i { powers[i] } else { 0 }).collect::<Vec<_>>());
            let gens: Vec<Vec<u16>> = pure.chain(extra.into_iter().filter(|g| g.iter().any(|&e| e > 0))).collect();
            MonomialIdeal::from_exponents(n, gens).unwrap()
        })
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn graph_algebras() -> impl Iterator<Item = (Graph, Algebra)> {
    (1..=6usize)
        .flat_map(|n| (0..1u64 << (n * (n - 1) / 2)).map(move |c| Graph::from_code(n, c)))
        .map(|g| {
            let a = algebra(g.to_ideal());
            (g, a)
        })
}

#[test]
fn hilbert_function_is_shifted_f_vector() {
    for (g, alg) in graph_algebras() {
        let f = g.f_vector();
        let h = alg.hilbert_function();
        for i in 0..=h.socle_degree() + 1 {
            assert_eq!(h.get(i), f.faces(i as isize - 1), "{:?} degree {i}", g.edges());
        }
    }
}

#[test]
fn large_prime_matches_rationals() {
    for (_, alg) in graph_algebras().filter(|(g, _)| g.num_vertices() <= 5) {
        for i in 0..=alg.socle_degree() {
            let m = mult_matrix(&alg, i, 1);
            assert_eq!(rank_mod_p(&m, 1_000_000_007).unwrap(), rank_rational(&m));
        }
    }
}

fn incidences(rows: &[Vec<usize>], cols: &[Vec<usize>], m: &IntMatrix) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            if !m.row(r)[c].is_zero() {
                assert_eq!(m.row(r)[c], BigInt::from(1));
                out.insert((row.clone(), col.clone()));
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn generators_are_minimal(ideal in artinian_ideal()) {
        let gens = ideal.generators();
        for (a, x) in gens.iter().enumerate() {
            for (b, y) in gens.iter().enumerate() {
                prop_assert!(a == b || !x.divides(y));
            }
        }
        let padded = gens.iter().map(|g| g.mul_var(0)).chain(gens.iter().cloned());
        prop_assert_eq!(MonomialIdeal::new(ideal.num_vars(), padded).unwrap(), ideal.clone());
    }

    #[test]
    fn tensor_hilbert_is_product(a in artinian_ideal(), b in artinian_ideal()) {
        let (ha, hb) = (algebra(a.clone()).hilbert_function(), algebra(b.clone()).hilbert_function());
        prop_assert_eq!(algebra(a.tensor(&b)).hilbert_function(), ha.product(&hb));
    }

    #[test]
    fn truncation_keeps_a_prefix(ideal in artinian_ideal(), i in 0usize..5) {
        let h = algebra(ideal.clone()).hilbert_function();
        let t = algebra(ideal.truncate(i)).hilbert_function();
        let keep = h.values().len().min(i + 2);
        prop_assert_eq!(t.values(), &h.values()[..keep]);
    }

    #[test]
    fn truncation_is_transparent_below(ideal in artinian_ideal(), i in 0usize..5) {
        let full = wlp_report(&algebra(ideal.clone()), Q);
        let cut = wlp_report(&algebra(ideal.truncate(i)), Q);
        for k in 0..=i {
            prop_assert_eq!(full.record(k), cut.record(k));
        }
    }

    #[test]
    fn socle_is_annihilated(ideal in artinian_ideal()) {
        let alg = algebra(ideal.clone());
        let n = alg.num_vars();
        let socle = alg.socle();
        for m in &socle {
            prop_assert!((0..n).all(|j| ideal.contains(&m.mul_var(j))));
        }
        let top = alg.basis(alg.socle_degree());
        prop_assert!(top.iter().all(|m| socle.contains(m)));
        prop_assert_eq!(alg.is_level(), socle.iter().all(|m| m.degree() == alg.socle_degree()));
    }

    #[test]
    fn graph_round_trips(g in graph()) {
        prop_assert_eq!(Graph::from_quadratic_ideal(&g.to_ideal()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_code(g.num_vertices(), g.code()), g.clone());
    }

    #[test]
    fn canonical_code_ignores_labels(g in graph(), pick in any::<prop::sample::Index>()) {
        let perms = permutations(g.num_vertices());
        let h = g.permuted(&perms[pick.index(perms.len())]);
        prop_assert_eq!(h.canonical_code(), g.canonical_code());
        prop_assert_eq!(algebra(h.to_ideal()).hilbert_function(), algebra(g.to_ideal()).hilbert_function());
    }

    #[test]
    fn colon_ideals_are_links(g in graph(), pick in any::<prop::sample::Index>()) {
        let n = g.num_vertices();
        let ideal = g.to_ideal();
        let v = pick.index(n);
        let hilbert = |i: MonomialIdeal| algebra(i).hilbert_function();
        let link = g.link_vertex(v).unwrap().graph;
        prop_assert_eq!(hilbert(ideal.colon(&Monomial::variable(n, v)).unwrap()), hilbert(link.to_ideal()));
        let plus = MonomialIdeal::new(n, ideal.generators().iter().cloned().chain([Monomial::variable(n, v)])).unwrap();
        prop_assert_eq!(hilbert(plus), hilbert(g.delete_star_vertex(v).unwrap().graph.to_ideal()));
        if !g.edges().is_empty() {
            let (a, b) = g.edges()[pick.index(g.num_edges())];
            let colon = ideal.colon(&Monomial::squarefree(n, &[a, b])).unwrap();
            prop_assert_eq!(hilbert(colon), hilbert(g.link_edge(a, b).unwrap().graph.to_ideal()));
        }
    }

    #[test]
    fn multiplication_is_the_transposed_boundary(g in graph(), i in 1usize..4) {
        let alg = algebra(g.to_ideal());
        let cx = SkeletonComplex::new(&g, i);
        let support = |deg: usize| alg.basis(deg).iter().map(Monomial::support).collect::<Vec<_>>();
        let via_algebra = incidences(&support(i + 1), &support(i), &mult_matrix(&alg, i, 1));
        let flipped: BTreeSet<_> = incidences(cx.lower_faces(), cx.upper_faces(), cx.lift())
            .into_iter()
            .map(|(lo, up)| (up, lo))
            .collect();
        prop_assert_eq!(via_algebra, flipped);
    }

    #[test]
    fn boundary_squares_to_zero_mod_two(g in graph(), i in 1usize..4) {
        let lower = SkeletonComplex::new(&g, i);
        let upper = SkeletonComplex::new(&g, i + 1);
        let composite = lower.lift().mul(upper.lift());
        prop_assert!(composite.entries().iter().all(|x: &BigInt| (x % 2u32).is_zero()));
    }

    #[test]
    fn reduction_never_raises_rank(m in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assert!(rank_mod_p(&m, p).unwrap() <= rank_rational(&m));
    }

    #[test]
    fn integer_solutions_solve(m in small_matrix(), seed in prop::collection::vec(-4i64..=4, 5)) {
        let x: Vec<BigInt> = seed.iter().take(m.cols()).map(|&v| BigInt::from(v)).collect();
        let b = m.mul_vec(&x);
        let y = solve_integer(&m, &b).expect("b is in the image by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn reports_are_deterministic(g in graph(), p in prop::sample::select(vec![0u64, 2, 3])) {
        let ch = Characteristic::new(p).unwrap();
        let alg = algebra(g.to_ideal());
        prop_assert_eq!(wlp_report(&alg, ch), wlp_report(&alg, ch));
    }

    #[test]
    fn tensor_failures_cover_factor_windows(a in artinian_ideal(), b in artinian_ideal()) {
        let wa = FailureWindow::from_report(&wlp_report(&algebra(a.clone()), Q));
        let wb = FailureWindow::from_report(&wlp_report(&algebra(b.clone()), Q));
        let product = FailureWindow::from_report(&wlp_report(&algebra(a.tensor(&b)), Q));
        prop_assert!(wa.combine(&wb).is_subset(&product));
    }
}

#[test]
fn census_independent_of_worker_count() {
    let one = census(&CensusOptions { jobs: 1, ..CensusOptions::new(5) }).unwrap();
    let three = census(&CensusOptions { jobs: 3, ..CensusOptions::new(5) }).unwrap();
    assert_eq!(one, three);
}
