//! Brute-force oracles for the counting claims. Nothing here goes through the
//! multiset enumerator: cells are exponent vectors built by nested loops.

use polygraph_core::counterexample::{build_paper_objects, cardinality_table, PaperScene};
use polygraph_core::{check_pullback_square, enumerate_cells, Computad2};

/// Exponent vectors of length `g` summing to `n`.
fn exponent_vectors(g: usize, n: usize) -> Vec<Vec<usize>> {
    if g == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in exponent_vectors(g - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct OracleRow {
    product_cells: usize,
    pullback_elements: usize,
    image: usize,
    max_fiber: usize,
    fiber_over_mixed_pair: usize,
}

/// Product generators are ordered <a1,b1>, <a1,b2>, <a2,b1>, <a2,b2>; the A
/// projection counts (a1, a2) and the B projection counts (b1, b2).
fn oracle_row(n: usize) -> OracleRow {
    let cells = exponent_vectors(4, n);
    let mut fibers = std::collections::HashMap::new();
    for e in &cells {
        let a = (e[0] + e[1], e[2] + e[3]);
        let b = (e[0] + e[2], e[1] + e[3]);
        *fibers.entry((a, b)).or_insert(0usize) += 1;
    }
    // α and β send everything of degree n to c^n, so every pair of degree-n cells is compatible
    let pullback_elements = exponent_vectors(2, n).len() * exponent_vectors(2, n).len();
    OracleRow {
        product_cells: cells.len(),
        pullback_elements,
        image: fibers.len(),
        max_fiber: fibers.values().copied().max().unwrap_or(0),
        fiber_over_mixed_pair: fibers.get(&((1, 1), (1, 1))).copied().unwrap_or(0),
    }
}

#[test]
fn oracle_closed_forms() {
    for n in 0..=5 {
        let row = oracle_row(n);
        assert_eq!(row.product_cells, (n + 1) * (n + 2) * (n + 3) / 6);
        assert_eq!(row.pullback_elements, (n + 1) * (n + 1));
        assert_eq!(row.image, row.pullback_elements, "surjective at {n}");
        assert_eq!(
            row.max_fiber > 1,
            n >= 2,
            "non-injective exactly from degree 2"
        );
    }
    assert_eq!(oracle_row(2).fiber_over_mixed_pair, 2);
}

#[test]
fn cardinality_table_matches_oracle() {
    let scene = build_paper_objects();
    let table = cardinality_table(&scene, 5).unwrap();
    for (n, row) in table.iter().enumerate() {
        let oracle = oracle_row(n);
        assert_eq!(row.degree, n);
        assert_eq!(row.product_cells, oracle.product_cells, "degree {n}");
        assert_eq!(
            row.pullback_elements, oracle.pullback_elements,
            "degree {n}"
        );
        assert_eq!(row.comparison_image, oracle.image, "degree {n}");
        assert_eq!(row.max_fiber, oracle.max_fiber, "degree {n}");
    }
}

#[test]
fn enumeration_matches_binomial_counts() {
    for g in 0..=4 {
        let names: Vec<String> = (0..g).map(|i| format!("g{i}")).collect();
        let k = Computad2::eh_bouquet("x", names.iter().cloned()).unwrap();
        let graded = enumerate_cells(&k, 5).unwrap();
        for (n, cells) in graded.iter().enumerate() {
            let expected = if g == 0 {
                usize::from(n == 0)
            } else {
                binomial(n + g - 1, g - 1)
            };
            assert_eq!(cells.len(), expected, "g = {g}, n = {n}");
            assert_eq!(cells.len(), exponent_vectors(g, n).len());
        }
    }
}

#[test]
fn enumeration_of_product_by_degree() {
    let scene = build_paper_objects();
    let counts: Vec<usize> = enumerate_cells(&scene.product.computad, 2)
        .unwrap()
        .iter()
        .map(Vec::len)
        .collect();
    assert_eq!(counts, [1, 4, 10]);
}

#[test]
fn pullback_pairs_of_degree_two() {
    // pullback of the two cell maps into C, restricted to degree exactly 2
    let scene = build_paper_objects();
    let square = scene.cell_square(2).unwrap();
    let pb = polygraph_core::pullback(square.right(), square.bottom()).unwrap();
    let deg2 = pb
        .object
        .iter()
        .filter(|(x, y)| x.degree() == 2 && y.degree() == 2)
        .count();
    assert_eq!(deg2, 9);
}

#[test]
fn single_generator_variants_are_pullbacks() {
    for (a, b) in [
        (&["a1"][..], &["b1", "b2"][..]),
        (&["a1", "a2"][..], &["b1"][..]),
        (&["a1"][..], &["b1"][..]),
    ] {
        let scene = PaperScene::with_generators(a, b).unwrap();
        for k in 0..=5 {
            let report = check_pullback_square(&scene.cell_square(k).unwrap());
            assert!(report.is_pullback, "{a:?} x {b:?} at k = {k}");
        }
    }
}
