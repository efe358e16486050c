mod common;

use chipfire::{
    canonical_form, enumerate_positive_rank_classes, equivalent, fire_set, gonality_exact_small,
    gonality_upper_bound, has_positive_rank, indep_divisor, max_independent_sets,
    poorest_row_chips, queen_alpha_formula, queen_gonality_formula, row_equitable_representative,
    toroidal_alpha_formula, toroidal_gonality_formula, verify_correspondence, CorrespondenceMode,
    Divisor, GonalityMethod, Graph, Limits, VertexSet,
};
use common::{effective_divisors, LaplacianOracle};

fn fixture_pair() -> (Divisor, Divisor) {
    (
        Divisor::new(vec![2, -1, -1, 0, 0, 2]),
        Divisor::new(vec![0, 0, 0, 1, 1, 0]),
    )
}

#[test]
fn fixture_firing_and_gonality() {
    let g = Graph::capped_ladder();
    let (d, d_prime) = fixture_pair();
    assert!(!d.is_effective());
    assert_eq!(d.degree(), 2);
    let both_ends = VertexSet::from_vertices(6, [0, 5]);
    assert_eq!(fire_set(&g, &d, &both_ends).unwrap(), d_prime);
    assert!(equivalent(&g, &d, &d_prime).unwrap());
    assert!(has_positive_rank(&g, &d_prime).unwrap());
    for v in 0..6 {
        assert!(!has_positive_rank(&g, &Divisor::unit(6, v)).unwrap());
    }
    let limits = Limits::default();
    assert!(enumerate_positive_rank_classes(&g, 1, &limits).unwrap().is_empty());
    let report = gonality_exact_small(&g, &limits).unwrap();
    assert_eq!(report.value, 2);
    assert_eq!(report.method, GonalityMethod::ExactSearch);
}

#[test]
fn exact_gonality_agrees_with_formulas_on_small_boards() {
    let limits = Limits::default();
    let cases = [
        (Graph::queen(2, 2).unwrap(), 3),
        (Graph::queen(3, 3).unwrap(), 7),
        (Graph::toroidal_queen(2, 2).unwrap(), 3),
        (Graph::toroidal_queen(3, 3).unwrap(), 8),
        (Graph::complete(4).unwrap(), 3),
    ];
    for (g, want) in cases {
        let report = gonality_exact_small(&g, &limits).unwrap();
        assert_eq!(report.value, want, "{:?}", g.grid());
        let witness = report.witness.expect("witness");
        assert_eq!(witness.degree() as u64, want);
        assert!(has_positive_rank(&g, &witness).unwrap());
    }
    assert_eq!(queen_gonality_formula(2, 2).unwrap(), 3);
    assert_eq!(queen_gonality_formula(3, 3).unwrap(), 7);
    assert_eq!(toroidal_gonality_formula(2, 2).unwrap(), 3);
    assert_eq!(toroidal_gonality_formula(3, 3).unwrap(), 8);
}

#[test]
fn upper_bounds_carry_positive_rank_witnesses() {
    let limits = Limits::default();
    for (g, want) in [
        (Graph::queen(3, 3).unwrap(), 7),
        (Graph::toroidal_queen(5, 5).unwrap(), 20),
        (Graph::complete(4).unwrap(), 3),
        (Graph::queen(5, 4).unwrap(), 16),
    ] {
        let report = gonality_upper_bound(&g, &limits).unwrap();
        assert_eq!(report.value, want);
        assert_eq!(report.method, GonalityMethod::UpperBoundOnly);
        let witness = report.witness.unwrap();
        assert_eq!(witness.degree() as u64, want);
        assert!(has_positive_rank(&g, &witness).unwrap());
    }
}

#[test]
fn formula_tables() {
    for (m, n, want) in [(8, 8, 56), (3, 3, 7), (5, 4, 16), (4, 5, 16), (2, 2, 3)] {
        assert_eq!(queen_gonality_formula(m, n).unwrap(), want);
    }
    for (m, n, want) in [(5, 5, 20), (4, 4, 14), (4, 6, 22), (6, 6, 32), (7, 7, 42)] {
        assert_eq!(toroidal_gonality_formula(m, n).unwrap(), want);
    }
    for n in 2..=12usize {
        for m in n..=12 {
            let mn = (m * n) as u64;
            assert_eq!(queen_gonality_formula(m, n).unwrap(), mn - queen_alpha_formula(m, n).unwrap() as u64);
            assert_eq!(
                toroidal_gonality_formula(m, n).unwrap(),
                mn - toroidal_alpha_formula(m, n).unwrap() as u64
            );
        }
    }
    assert!(queen_gonality_formula(1, 4).is_err());
    assert!(toroidal_gonality_formula(4, 1).is_err());
}

#[test]
fn independent_set_counts() {
    let q44 = max_independent_sets(&Graph::queen(4, 4).unwrap(), 144).unwrap();
    assert_eq!((q44.alpha, q44.sets.len()), (4, 2));
    let q88 = max_independent_sets(&Graph::queen(8, 8).unwrap(), 144).unwrap();
    assert_eq!((q88.alpha, q88.sets.len()), (8, 92));
    let tq33 = max_independent_sets(&Graph::toroidal_queen(3, 3).unwrap(), 144).unwrap();
    assert_eq!((tq33.alpha, tq33.sets.len()), (1, 9));
}

#[test]
fn queen_alpha_formula_matches_search() {
    for m in 2..=7 {
        for n in 2..=7 {
            let g = Graph::queen(m, n).unwrap();
            let alpha = max_independent_sets(&g, 144).unwrap().alpha;
            assert_eq!(alpha, queen_alpha_formula(m, n).unwrap(), "Q{m},{n}");
            assert!(alpha <= m.min(n));
        }
    }
}

#[test]
fn toroidal_alpha_formula_matches_search_on_square_boards() {
    for n in 2..=7 {
        let g = Graph::toroidal_queen(n, n).unwrap();
        let alpha = max_independent_sets(&g, 144).unwrap().alpha;
        assert_eq!(alpha, toroidal_alpha_formula(n, n).unwrap(), "TQ{n},{n}");
    }
}

#[test]
fn indicator_divisors() {
    let q22 = Graph::queen(2, 2).unwrap();
    let d = indep_divisor(&q22, &VertexSet::from_vertices(4, [2])).unwrap();
    assert_eq!(d.values, vec![1, 1, 0, 1]);
    let q88 = Graph::queen(8, 8).unwrap();
    let all_ones = indep_divisor(&q88, &VertexSet::new(64)).unwrap();
    assert_eq!(all_ones.degree(), 64);
    assert!(indep_divisor(&q22, &VertexSet::from_vertices(4, [0, 3])).is_err());
}

#[test]
fn correspondence_on_three_by_three_boards() {
    let limits = Limits::default();
    let q33 = Graph::queen(3, 3).unwrap();
    let report = verify_correspondence(&q33, 7, CorrespondenceMode::Full, &limits).unwrap();
    assert!(report.matched);
    assert_eq!(report.class_reps.as_ref().unwrap().len(), report.mis_list.len());

    let tq33 = Graph::toroidal_queen(3, 3).unwrap();
    let report = verify_correspondence(&tq33, 8, CorrespondenceMode::Full, &limits).unwrap();
    assert!(report.matched);
    let reps = report.class_reps.unwrap();
    assert_eq!(reps.len(), 9);
    assert!(report.mis_list.iter().all(|s| s.len() == 1));

    assert!(enumerate_positive_rank_classes(&Graph::queen(2, 2).unwrap(), 2, &limits)
        .unwrap()
        .is_empty());
}

#[test]
fn complete_graph_classes_by_enumeration() {
    // K9 at degree 8: each positive-rank class is represented by the all-ones
    // divisor off one vertex, and these are pairwise inequivalent
    let g = Graph::complete(9).unwrap();
    let oracle = LaplacianOracle::new(&g);
    let singles: Vec<Divisor> = (0..9)
        .map(|v| {
            let mut d = Divisor::new(vec![1; 9]);
            d[v] = 0;
            d
        })
        .collect();
    for (i, a) in singles.iter().enumerate() {
        for b in &singles[i + 1..] {
            assert!(!oracle.equivalent(a, b));
        }
    }
    let classes = enumerate_positive_rank_classes(&g, 8, &Limits::default()).unwrap();
    assert_eq!(classes.len(), 9);
    for rep in &classes {
        assert_eq!(singles.iter().filter(|s| oracle.equivalent(s, rep)).count(), 1);
    }
}

#[test]
fn eight_queens_give_distinct_positive_rank_classes() {
    let g = Graph::queen(8, 8).unwrap();
    let limits = Limits::default();
    let report = verify_correspondence(&g, 56, CorrespondenceMode::InjectivityOnly, &limits).unwrap();
    assert_eq!(report.mis_list.len(), 92);
    assert!(report.injective);
    assert!(report.images_positive_rank);
    assert!(report.matched);
    for s in report.mis_list.iter().take(4) {
        let d = indep_divisor(&g, s.vertices()).unwrap();
        assert_eq!(d.degree(), 56);
        assert_eq!(poorest_row_chips(&g, &d).unwrap(), 7);
    }
}

#[test]
fn four_queens_placements_are_not_equivalent() {
    let g = Graph::queen(4, 4).unwrap();
    let mis = max_independent_sets(&g, 144).unwrap();
    let a = indep_divisor(&g, mis.sets[0].vertices()).unwrap();
    let b = indep_divisor(&g, mis.sets[1].vertices()).unwrap();
    assert!(!equivalent(&g, &a, &b).unwrap());
    assert_ne!(canonical_form(&g, &a).unwrap(), canonical_form(&g, &b).unwrap());
    assert!(!LaplacianOracle::new(&g).equivalent(&a, &b));
}

#[test]
fn row_equitable_examples() {
    let limits = Limits::default();
    let q44 = Graph::queen(4, 4).unwrap();
    let mis = max_independent_sets(&q44, 144).unwrap();
    let d = indep_divisor(&q44, mis.sets[0].vertices()).unwrap();
    let rep = row_equitable_representative(&q44, &d, &limits).unwrap();
    assert_eq!(rep, d);
    assert_eq!(poorest_row_chips(&q44, &rep).unwrap(), 3);

    let zero = Divisor::zero(16);
    assert_eq!(row_equitable_representative(&q44, &zero, &limits).unwrap(), zero);
    let mut stacked = Divisor::zero(16);
    stacked[5] = 4;
    assert_eq!(poorest_row_chips(&q44, &stacked).unwrap(), 0);
    assert!(poorest_row_chips(&Graph::complete(4).unwrap(), &zero.clone()).is_err());
}

#[test]
fn all_ones_on_q33_is_row_equitable() {
    let g = Graph::queen(3, 3).unwrap();
    let d = Divisor::new(vec![1; 9]);
    // oracle: scan every effective divisor of degree 9 equivalent to d
    let oracle = LaplacianOracle::new(&g);
    let row_min = |v: &[i64]| (0..3).map(|r| v[3 * r..3 * r + 3].iter().sum::<i64>()).min().unwrap();
    let mut best: Option<Vec<i64>> = None;
    for e in effective_divisors(9, 9) {
        if !oracle.equivalent(&Divisor::new(e.clone()), &d) {
            continue;
        }
        best = match best {
            Some(b) if (row_min(&b), std::cmp::Reverse(&b)) >= (row_min(&e), std::cmp::Reverse(&e)) => Some(b),
            _ => Some(e),
        };
    }
    let frozen = vec![1i64; 9];
    assert_eq!(best.unwrap(), frozen);
    let got = row_equitable_representative(&g, &d, &Limits::default()).unwrap();
    assert_eq!(got.values, frozen);
}
