//! Exhaustive enumeration of tiny presentations, for checking universal
//! properties by brute force.

use itertools::Itertools;

use crate::cells2::Boundary2;
use crate::computad::{all_morphisms, Computad2, Computad2Morphism, Span2};
use crate::freecat::{all_graph_morphisms, Graph, GraphMorphism, GraphProduct, Path};

/// Every graph on vertices `t0..` with at most `max_vertices` vertices (at least
/// one) and at most `max_edges` labelled edges `e0..`.
pub fn small_graphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for nv in 1..=max_vertices {
        let vertices: Vec<String> = (0..nv).map(|i| format!("t{i}")).collect();
        let endpoint_pairs: Vec<(usize, usize)> = (0..nv).cartesian_product(0..nv).collect();
        for ne in 0..=max_edges {
            let choices = (0..ne)
                .map(|_| endpoint_pairs.iter())
                .multi_cartesian_product();
            let choices: Vec<Vec<&(usize, usize)>> = if ne == 0 {
                vec![Vec::new()]
            } else {
                choices.collect()
            };
            for ends in choices {
                let edges = ends.iter().enumerate().map(|(i, &&(s, t))| {
                    (format!("e{i}"), vertices[s].clone(), vertices[t].clone())
                });
                out.push(Graph::new(vertices.clone(), edges).expect("endpoints exist"));
            }
        }
    }
    out
}

/// Every 2-computad over [`small_graphs`] with at most `max_indets` 2-indets
/// `s0..` whose boundaries are parallel paths of length at most one. Indets are
/// chosen as a multiset of boundaries, so relabellings are not repeated.
pub fn small_computads(max_per_dimension: usize) -> Vec<Computad2> {
    let mut out = Vec::new();
    for g in small_graphs(max_per_dimension, max_per_dimension) {
        let mut short_paths: Vec<Path> = g.vertices().iter().map(Path::identity).collect();
        for e in g.edges() {
            let (s, _) = g.endpoints(e).expect("edge of g");
            short_paths.push(g.path(&s.clone(), [e.clone()]).expect("one-edge path"));
        }
        let boundaries: Vec<Boundary2> = short_paths
            .iter()
            .cartesian_product(&short_paths)
            .filter_map(|(p, q)| Boundary2::new(p.clone(), q.clone()).ok())
            .collect();
        for n in 0..=max_per_dimension {
            let combos: Vec<Vec<&Boundary2>> = if n == 0 {
                vec![Vec::new()]
            } else {
                boundaries.iter().combinations_with_replacement(n).collect()
            };
            for combo in combos {
                let gens = combo
                    .into_iter()
                    .enumerate()
                    .map(|(i, b)| (format!("s{i}"), b.clone()));
                out.push(Computad2::new(g.clone(), gens).expect("boundaries lie in g"));
            }
        }
    }
    out
}

/// All `h: T → A × B` with `π_A ∘ h = f` and `π_B ∘ h = g`.
pub fn mediating_morphisms(
    f: &Computad2Morphism,
    g: &Computad2Morphism,
    product: &Span2,
) -> Vec<Computad2Morphism> {
    all_morphisms(f.source(), &product.computad)
        .into_iter()
        .filter(|h| {
            h.then(&product.left).is_ok_and(|x| x == *f)
                && h.then(&product.right).is_ok_and(|y| y == *g)
        })
        .collect()
}

/// All `h: T → G × H` commuting with both projections.
pub fn mediating_graph_morphisms(
    f: &GraphMorphism,
    g: &GraphMorphism,
    product: &GraphProduct,
) -> Vec<GraphMorphism> {
    all_graph_morphisms(f.source(), &product.graph)
        .into_iter()
        .filter(|h| {
            h.then(&product.proj_left).is_ok_and(|x| x == *f)
                && h.then(&product.proj_right).is_ok_and(|y| y == *g)
        })
        .collect()
}
