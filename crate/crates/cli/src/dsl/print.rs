use std::fmt::Write;

use polygraph_core::{Com3Object, Computad2, Computad2Morphism};

use super::{Definition, DslDocument};

fn list<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join(", ")
}

pub fn print_computad2(name: &str, k: &Computad2) -> String {
    let g = k.skeleton();
    let edges = g.edges().iter().map(|e| {
        let (s, t) = g.endpoints(e).expect("edge of the skeleton");
        format!("{e}: {s} -> {t}")
    });
    let gens = k
        .generators()
        .map(|(n, b)| format!("{n}: {} => {}", b.src, b.tgt));
    format!(
        "computad2 {name} {{\n  objects: {};\n  edges: {};\n  gens2: {};\n}}\n",
        list(g.vertices().iter().cloned()),
        list(edges),
        list(gens)
    )
}

pub fn print_com3(name: &str, over: &str, m: &Com3Object) -> String {
    let gens = m
        .generators()
        .map(|(n, p)| format!("{n}: {} => {}", p.first.to_term(), p.second.to_term()));
    format!("com3 {name} over {over} {{\n  gens3: {};\n}}\n", list(gens))
}

pub fn print_morphism(name: &str, source: &str, target: &str, f: &Computad2Morphism) -> String {
    let g = f.on_graph();
    let arrows = |pairs: Vec<(&String, &String)>| {
        list(pairs.into_iter().map(|(a, b)| format!("{a} -> {b}")))
    };
    format!(
        "morphism {name} : {source} -> {target} {{\n  vertices: {};\n  edges: {};\n  gens2: {};\n}}\n",
        arrows(g.on_vertices().graph().collect()),
        arrows(g.on_edges().graph().collect()),
        arrows(f.on_indets2().graph().collect()),
    )
}

/// Prints every definition; the output parses back to an equal document.
pub fn print_document(doc: &DslDocument) -> String {
    let mut out = String::new();
    for (i, (name, def)) in doc.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let text = match def {
            Definition::Computad2(k) => print_computad2(name, k),
            Definition::Com3 { over, object } => print_com3(name, over, object),
            Definition::Morphism {
                source,
                target,
                morphism,
            } => print_morphism(name, source, target, morphism),
        };
        write!(out, "{text}").expect("writing to a string");
    }
    out
}
