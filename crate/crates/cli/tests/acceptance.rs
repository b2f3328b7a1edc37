//! Acceptance suite. Runs without the libtest harness so that one PASS/FAIL
//! line per criterion is always printed; exits non-zero if any fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use polygraph_cli::random::{selftest, MAX_DEPTH};
use polygraph_core::counterexample::{
    build_paper_objects, cardinality_table, verify_reductions, PaperScene,
};
use polygraph_core::enumerate::{
    mediating_graph_morphisms, mediating_morphisms, small_computads, small_graphs,
};
use polygraph_core::{
    all_graph_morphisms, all_morphisms, check_pullback_square, graph_product, is_mono,
    mono_reduction_check, pi2_inclusion_bounded, pi2_on_morphism_bounded, product2, pullback2,
    Boundary2, Computad2, Computad2Morphism, EHNormalForm, Graph, Multiset, Path,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cell(gens: &[&str]) -> EHNormalForm {
    EHNormalForm::new("<x,x>", gens.iter().copied().collect::<Multiset>())
}

fn counterexample_replication() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_polygraph"))
        .args([
            "verify-counterexample",
            "--max-degree",
            "3",
            "--format",
            "json",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        out.status.code() == Some(0),
        format!("exit status {:?}", out.status),
    )?;
    ensure(
        elapsed < Duration::from_secs(5),
        format!("took {elapsed:?}"),
    )?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["is_pullback"] == false, "square reported as a pullback")?;
    let expected = serde_json::json!([["<a1,b1>", "<a2,b2>"], ["<a1,b2>", "<a2,b1>"]]);
    ensure(
        v["witness"] == expected,
        format!("witness {}", v["witness"]),
    )?;
    ensure(
        v["projections_agree"] == true,
        "report says projections differ",
    )?;

    // recompute the projections of the witness independently of the report
    let s = build_paper_objects();
    let (p, q) = (cell(&["<a1,b1>", "<a2,b2>"]), cell(&["<a1,b2>", "<a2,b1>"]));
    let pa = s.product.left.cell_map(3).map_err(|e| e.to_string())?;
    let pb = s.product.right.cell_map(3).map_err(|e| e.to_string())?;
    ensure(p != q, "witness cells coincide")?;
    ensure(pa.apply(&p) == pa.apply(&q), "A-projections differ")?;
    ensure(pb.apply(&p) == pb.apply(&q), "B-projections differ")?;
    Ok(format!(
        "exit 0 in {} ms, witness exact",
        elapsed.as_millis()
    ))
}

fn product_structure() -> Check {
    let s = build_paper_objects();
    let k = &product2(&s.a, &s.b).computad;
    ensure(k.skeleton().vertices().len() == 1, "expected one vertex")?;
    ensure(k.skeleton().edges().is_empty(), "expected no edges")?;
    let names: Vec<&str> = k.indets2().iter().map(String::as_str).collect();
    ensure(
        names == ["<a1,b1>", "<a1,b2>", "<a2,b1>", "<a2,b2>"],
        format!("2-indets {names:?}"),
    )?;
    Ok("1 vertex, 4 two-indets <ai,bj>".into())
}

/// Counts of degree-n exponent vectors over `g` generators.
fn exponent_vectors(g: usize, n: usize) -> Vec<Vec<usize>> {
    if g == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=n)
        .flat_map(|first| {
            exponent_vectors(g - 1, n - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn cardinality_table_check() -> Check {
    let s = build_paper_objects();
    let table = cardinality_table(&s, 5).map_err(|e| e.to_string())?;
    for (n, row) in table.iter().enumerate() {
        // oracle: product cells are exponent vectors on <a1,b1>,<a1,b2>,<a2,b1>,<a2,b2>
        // keyed by (counts of a1, a2) and (counts of b1, b2)
        let mut fibers = HashMap::new();
        for e in exponent_vectors(4, n) {
            let key = ((e[0] + e[1], e[2] + e[3]), (e[0] + e[2], e[1] + e[3]));
            *fibers.entry(key).or_insert(0usize) += 1;
        }
        let product = exponent_vectors(4, n).len();
        let pullback = exponent_vectors(2, n).len().pow(2);
        ensure(
            product == (n + 1) * (n + 2) * (n + 3) / 6,
            "oracle product count",
        )?;
        ensure(pullback == (n + 1) * (n + 1), "oracle pullback count")?;
        ensure(
            row.product_cells == product && row.pullback_elements == pullback,
            format!("degree {n}: {row:?}"),
        )?;
        ensure(
            row.comparison_image == fibers.len() && row.is_surjective(),
            format!("degree {n}: not surjective"),
        )?;
        ensure(
            row.is_injective() == (n < 2),
            format!("degree {n}: injectivity {}", row.is_injective()),
        )?;
    }
    // fibre over ({a1,a2}, {b1,b2}) at degree 2
    let sq = s.cell_square(2).map_err(|e| e.to_string())?;
    let x = EHNormalForm::new("x", ["a1", "a2"].into_iter().collect());
    let y = EHNormalForm::new("x", ["b1", "b2"].into_iter().collect());
    let fiber = sq
        .top()
        .dom()
        .iter()
        .filter(|p| sq.top().apply(p) == Some(&x) && sq.left().apply(p) == Some(&y))
        .count();
    ensure(
        fiber == 2,
        format!("fibre over the mixed pair has {fiber} cells"),
    )?;
    Ok("n = 0..5 match the oracle; fibre 2 at n = 2".into())
}

fn reduction_chain() -> Check {
    let s = build_paper_objects();
    let m = pi2_inclusion_bounded(&s.c, 3).map_err(|e| e.to_string())?;
    ensure(is_mono(&m), "bounded Pi2 of the inclusion is not injective")?;
    let square = s.pi2_square(3).map_err(|e| e.to_string())?;
    ensure(
        mono_reduction_check(&square, &m).map_err(|e| e.to_string())?,
        "verdict changes along the inclusion",
    )?;
    let pb = pullback2(&s.alpha, &s.beta).map_err(|e| e.to_string())?;
    ensure(
        pb.computad == s.product.computad,
        "pullback apex differs from A x B",
    )?;
    ensure(
        pb.left == s.product.left && pb.right == s.product.right,
        "pullback legs differ from the projections",
    )?;
    let r = verify_reductions(3).map_err(|e| e.to_string())?;
    ensure(r.inner_outer_pullbacks, "inner or outer square differs")?;
    Ok("mono, reduction and pullback2 = product2 at k = 3".into())
}

fn two_vertex_eh() -> Computad2 {
    let id = |v: &str| Boundary2::identity(Path::identity(v));
    Computad2::new(
        Graph::discrete(["x", "y"]).unwrap(),
        ["a", "b", "c"]
            .map(|g| (g.to_string(), id("x")))
            .into_iter()
            .chain(["d", "e"].map(|g| (g.to_string(), id("y")))),
    )
    .unwrap()
}

fn eckmann_hilton_suite() -> Check {
    let mut terms = 0;
    for (seed, k) in [
        (1, build_paper_objects().product.computad),
        (2, two_vertex_eh()),
    ] {
        let r = selftest(&k, seed, 300).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{:?}", r.failures.first()))?;
        ensure(r.rewrites_checked > 0, "no rewrites exercised")?;
        terms += r.terms;
    }
    ensure(terms >= 500, "too few terms")?;
    Ok(format!(
        "{terms} random terms of depth <= {MAX_DEPTH}, zero failures"
    ))
}

fn loop_computad() -> Computad2 {
    let g = Graph::new(["x"], [("l".to_string(), "x".to_string(), "x".to_string())]).unwrap();
    let l = g.path("x", ["l"]).unwrap();
    Computad2::new(
        g,
        [
            ("s".to_string(), Boundary2::identity(l)),
            ("t".to_string(), Boundary2::identity(Path::identity("x"))),
        ],
    )
    .unwrap()
}

fn arrow_computad() -> Computad2 {
    let g = Graph::new(
        ["u", "w"],
        [("f".to_string(), "u".to_string(), "w".to_string())],
    )
    .unwrap();
    let f = g.path("u", ["f"]).unwrap();
    Computad2::new(g, [("r".to_string(), Boundary2::identity(f))]).unwrap()
}

fn universal_properties() -> Check {
    let s = build_paper_objects();
    let factors = [s.a.clone(), s.b.clone(), loop_computad(), arrow_computad()];
    let tests = small_computads(2);
    let mut cones = 0;
    for a in &factors {
        for b in &factors {
            let prod = product2(a, b);
            for t in &tests {
                for f in all_morphisms(t, a) {
                    for g in all_morphisms(t, b) {
                        let n = mediating_morphisms(&f, &g, &prod).len();
                        ensure(
                            n == 1,
                            format!(
                                "{n} mediators for a cone into {:?}",
                                prod.computad.indets2()
                            ),
                        )?;
                        cones += 1;
                    }
                }
            }
        }
    }
    let mut graph_cones = 0;
    let graphs = small_graphs(2, 2);
    for g in factors.iter().map(Computad2::skeleton) {
        for h in factors.iter().map(Computad2::skeleton) {
            let prod = graph_product(g, h);
            for t in &graphs {
                for f1 in all_graph_morphisms(t, g) {
                    for f2 in all_graph_morphisms(t, h) {
                        let n = mediating_graph_morphisms(&f1, &f2, &prod).len();
                        ensure(n == 1, format!("{n} graph mediators"))?;
                        graph_cones += 1;
                    }
                }
            }
        }
    }
    ensure(cones > 0 && graph_cones > 0, "no cones enumerated")?;
    Ok(format!(
        "{cones} computad cones, {graph_cones} graph cones, unique mediators"
    ))
}

fn functoriality() -> Check {
    let s = build_paper_objects();
    let id_c = Computad2Morphism::identity(s.c.computad().clone());
    let maps = [&s.alpha, &s.beta, &s.product.left, &s.product.right, &id_c];
    let mut checked = 0;
    for k in 0..=3 {
        for f in maps {
            let id = Computad2Morphism::identity(f.source().clone());
            let image = pi2_on_morphism_bounded(&id, k).map_err(|e| e.to_string())?;
            ensure(
                image.indices().iter().enumerate().all(|(i, &j)| i == j),
                "identity not preserved",
            )?;
            for g in maps {
                let Ok(gf) = f.then(g) else { continue };
                let whole = pi2_on_morphism_bounded(&gf, k).map_err(|e| e.to_string())?;
                let parts = pi2_on_morphism_bounded(f, k)
                    .and_then(|x| x.then(&pi2_on_morphism_bounded(g, k)?))
                    .map_err(|e| e.to_string())?;
                ensure(whole == parts, format!("composition fails at k = {k}"))?;
                checked += 1;
            }
        }
    }
    ensure(
        checked == 4 * 5,
        format!("expected 20 composable pairs, saw {checked}"),
    )?;
    Ok("identities and 5 composable pairs at k = 0..3".into())
}

fn negative_control() -> Check {
    for (a, b) in [
        (&["a1"][..], &["b1", "b2"][..]),
        (&["a1", "a2"][..], &["b1"][..]),
        (&["a1"][..], &["b1"][..]),
    ] {
        let scene = PaperScene::with_generators(a, b).map_err(|e| e.to_string())?;
        for k in 0..=5 {
            let sq = scene.cell_square(k).map_err(|e| e.to_string())?;
            ensure(
                check_pullback_square(&sq).is_pullback,
                format!("{a:?} x {b:?} at k = {k}"),
            )?;
        }
    }
    Ok("single-indet variants are pullbacks for k = 0..5".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("counterexample replication", counterexample_replication),
        ("product structure", product_structure),
        ("cardinality table", cardinality_table_check),
        ("reduction chain", reduction_chain),
        ("Eckmann-Hilton properties", eckmann_hilton_suite),
        ("universal properties", universal_properties),
        ("functoriality", functoriality),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
