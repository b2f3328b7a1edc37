//! A small text format for presentations.
//!
//! ```text
//! computad2 A {
//!   objects: x;
//!   gens2: a1: id(x) => id(x), a2: id(x) => id(x);
//! }
//! com3 M over A { gens3: u: v(a1, a2) => h(a2, a1); }
//! morphism swap : A -> A { vertices: x -> x; gens2: a1 -> a2, a2 -> a1; }
//! ```
//!
//! Sections are optional, may be empty, and may appear at most once per block.
//! Paths are `id(x)` or edges in diagrammatic order; cell terms are names,
//! `id(path)`, `v(s, t)` and `h(s, t)`.

mod lexer;
mod parser;
mod print;

use std::fmt;

use indexmap::IndexMap;
use polygraph_core::counterexample::build_paper_objects;
use polygraph_core::{
    normalize, Boundary2, Cell2Term, Com3Object, Computad2, Computad2Morphism, Error, Graph,
    ParallelPair2, Path,
};

pub use parser::{parse_items, parse_term, ItemAst, Name, PathAst, TermAst};
pub use print::{print_com3, print_computad2, print_document, print_morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DslError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: unknown name `{name}`")]
    UnknownReference { pos: Pos, name: String },
    #[error("{pos}: `{name}` is already defined")]
    Duplicate { pos: Pos, name: String },
    #[error("{pos}: in `{name}`: {source}")]
    Validation {
        pos: Pos,
        name: String,
        source: Error,
    },
}

impl DslError {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        DslError::Syntax {
            pos,
            message: message.into(),
        }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            DslError::Syntax { pos, .. }
            | DslError::UnknownReference { pos, .. }
            | DslError::Duplicate { pos, .. }
            | DslError::Validation { pos, .. } => Some(*pos),
        }
    }

    /// The core error behind a validation failure, if any.
    pub fn core_error(&self) -> Option<&Error> {
        match self {
            DslError::Validation { source, .. } => Some(source),
            _ => None,
        }
    }

    fn unknown(name: &Name) -> Self {
        DslError::UnknownReference {
            pos: name.pos,
            name: name.text.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definition {
    Computad2(Computad2),
    Com3 {
        over: String,
        object: Com3Object,
    },
    Morphism {
        source: String,
        target: String,
        morphism: Box<Computad2Morphism>,
    },
}

/// Named definitions in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DslDocument {
    defs: IndexMap<String, Definition>,
}

impl DslDocument {
    pub fn new() -> Self {
        DslDocument::default()
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.defs.get(name)
    }

    pub fn computad(&self, name: &str) -> Option<&Computad2> {
        match self.defs.get(name)? {
            Definition::Computad2(k) => Some(k),
            _ => None,
        }
    }

    pub fn com3(&self, name: &str) -> Option<&Com3Object> {
        match self.defs.get(name)? {
            Definition::Com3 { object, .. } => Some(object),
            _ => None,
        }
    }

    pub fn morphism(&self, name: &str) -> Option<&Computad2Morphism> {
        match self.defs.get(name)? {
            Definition::Morphism { morphism, .. } => Some(morphism),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Definition)> + '_ {
        self.defs.iter()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Adds a definition; returns false (and changes nothing) if the name is taken.
    pub fn insert(&mut self, name: impl Into<String>, def: Definition) -> bool {
        let name = name.into();
        if self.defs.contains_key(&name) {
            return false;
        }
        self.defs.insert(name, def);
        true
    }

    /// Adds every definition of `other`, failing on the first clash.
    pub fn merge(&mut self, other: DslDocument) -> Result<(), String> {
        for (name, def) in other.defs {
            if !self.insert(name.clone(), def) {
                return Err(name);
            }
        }
        Ok(())
    }
}

/// The objects and maps of the product counterexample, under fixed names:
/// `paper_A`, `paper_B`, `paper_C`, `paper_alpha: paper_A -> paper_C` and
/// `paper_beta: paper_B -> paper_C`.
pub fn builtins() -> DslDocument {
    let scene = build_paper_objects();
    let mut doc = DslDocument::new();
    doc.insert("paper_A", Definition::Computad2(scene.a));
    doc.insert("paper_B", Definition::Computad2(scene.b));
    doc.insert("paper_C", Definition::Computad2(scene.c.computad().clone()));
    doc.insert(
        "paper_alpha",
        Definition::Morphism {
            source: "paper_A".into(),
            target: "paper_C".into(),
            morphism: Box::new(scene.alpha),
        },
    );
    doc.insert(
        "paper_beta",
        Definition::Morphism {
            source: "paper_B".into(),
            target: "paper_C".into(),
            morphism: Box::new(scene.beta),
        },
    );
    doc
}

/// Parses and checks `src`. Names may refer to earlier definitions in the same
/// text or to anything in `context`; new names must not clash with either.
pub fn parse_document(src: &str, context: &DslDocument) -> Result<DslDocument, DslError> {
    let mut doc = DslDocument::new();
    for item in parse_items(src)? {
        let name = item.name().clone();
        if context.get(&name.text).is_some() || doc.get(&name.text).is_some() {
            return Err(DslError::Duplicate {
                pos: name.pos,
                name: name.text,
            });
        }
        let def = resolve_item(&item, &Scope { doc: &doc, context })?;
        doc.insert(name.text, def);
    }
    Ok(doc)
}

struct Scope<'a> {
    doc: &'a DslDocument,
    context: &'a DslDocument,
}

impl Scope<'_> {
    fn computad(&self, name: &Name) -> Result<&Computad2, DslError> {
        self.doc
            .computad(&name.text)
            .or_else(|| self.context.computad(&name.text))
            .ok_or_else(|| DslError::unknown(name))
    }
}

fn resolve_item(item: &ItemAst, scope: &Scope<'_>) -> Result<Definition, DslError> {
    let owner = item.name();
    let invalid = |pos: Pos| {
        let name = owner.text.clone();
        move |source: Error| DslError::Validation { pos, name, source }
    };
    match item {
        ItemAst::Computad2 {
            objects,
            edges,
            gens2,
            ..
        } => {
            let graph = Graph::new(
                objects.iter().map(|o| o.text.clone()),
                edges
                    .iter()
                    .map(|(e, s, t)| (e.text.clone(), s.text.clone(), t.text.clone())),
            )
            .map_err(invalid(owner.pos))?;
            let gens = gens2
                .iter()
                .map(|(g, s, t)| {
                    let s = resolve_path(s, &graph, owner)?;
                    let t = resolve_path(t, &graph, owner)?;
                    let b = Boundary2::new(s, t).map_err(invalid(g.pos))?;
                    Ok((g.text.clone(), b))
                })
                .collect::<Result<Vec<_>, DslError>>()?;
            Computad2::new(graph, gens)
                .map(Definition::Computad2)
                .map_err(invalid(owner.pos))
        }
        ItemAst::Com3 { over, gens3, .. } => {
            let base = scope.computad(over)?;
            let gens = gens3
                .iter()
                .map(|(g, s, t)| {
                    let cell = |term: &TermAst| {
                        let t = resolve_term(term, base, owner)?;
                        normalize(&t, base).map_err(invalid(term.pos()))
                    };
                    let pair = ParallelPair2::new(cell(s)?, cell(t)?).map_err(invalid(g.pos))?;
                    Ok((g.text.clone(), pair))
                })
                .collect::<Result<Vec<_>, DslError>>()?;
            let object = Com3Object::new(base.clone(), gens).map_err(invalid(owner.pos))?;
            Ok(Definition::Com3 {
                over: over.text.clone(),
                object,
            })
        }
        ItemAst::Morphism {
            source,
            target,
            vertices,
            edges,
            gens2,
            ..
        } => {
            let src = scope.computad(source)?;
            let tgt = scope.computad(target)?;
            let table = |pairs: &[(Name, Name)],
                         known_src: &dyn Fn(&str) -> bool,
                         known_tgt: &dyn Fn(&str) -> bool| {
                let mut out = IndexMap::new();
                for (from, to) in pairs {
                    if !known_src(&from.text) {
                        return Err(DslError::unknown(from));
                    }
                    if !known_tgt(&to.text) {
                        return Err(DslError::unknown(to));
                    }
                    if out.insert(from.text.clone(), to.text.clone()).is_some() {
                        return Err(DslError::Duplicate {
                            pos: from.pos,
                            name: from.text.clone(),
                        });
                    }
                }
                Ok(out)
            };
            let (sg, tg) = (src.skeleton(), tgt.skeleton());
            let vmap = table(vertices, &|v| sg.has_vertex(v), &|v| tg.has_vertex(v))?;
            let emap = table(edges, &|e| sg.edges().contains(&e.to_string()), &|e| {
                tg.edges().contains(&e.to_string())
            })?;
            let gmap = table(gens2, &|g| src.indets2().contains(&g.to_string()), &|g| {
                tgt.indets2().contains(&g.to_string())
            })?;
            let morphism =
                Computad2Morphism::from_maps(src.clone(), tgt.clone(), &vmap, &emap, &gmap)
                    .map_err(invalid(owner.pos))?;
            Ok(Definition::Morphism {
                source: source.text.clone(),
                target: target.text.clone(),
                morphism: Box::new(morphism),
            })
        }
    }
}

fn resolve_path(p: &PathAst, graph: &Graph, owner: &Name) -> Result<Path, DslError> {
    let invalid = |source| DslError::Validation {
        pos: p.pos(),
        name: owner.text.clone(),
        source,
    };
    match p {
        PathAst::Identity(v) => {
            if !graph.has_vertex(&v.text) {
                return Err(DslError::unknown(v));
            }
            graph.identity(&v.text).map_err(invalid)
        }
        PathAst::Edges(es) => {
            // `id(x)` inside a term may also be written with a bare vertex name
            if let [single] = es.as_slice() {
                if graph.has_vertex(&single.text) && !graph.edges().contains(&single.text) {
                    return Ok(Path::identity(single.text.clone()));
                }
            }
            for e in es {
                if !graph.edges().contains(&e.text) {
                    return Err(DslError::unknown(e));
                }
            }
            let start = graph.endpoints(&es[0].text).map_err(invalid)?.0.clone();
            graph
                .path(&start, es.iter().map(|e| e.text.clone()))
                .map_err(invalid)
        }
    }
}

/// Resolves a term against the generators and skeleton of `k`.
pub fn resolve_term(t: &TermAst, k: &Computad2, owner: &Name) -> Result<Cell2Term, DslError> {
    Ok(match t {
        TermAst::Gen(g) => {
            if !k.indets2().contains(&g.text) {
                return Err(DslError::unknown(g));
            }
            Cell2Term::gen(g.text.clone())
        }
        TermAst::Id(p, _) => Cell2Term::id(resolve_path(p, k.skeleton(), owner)?),
        TermAst::V(a, b, _) => resolve_term(a, k, owner)?.v(resolve_term(b, k, owner)?),
        TermAst::H(a, b, _) => resolve_term(a, k, owner)?.h(resolve_term(b, k, owner)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "
        computad2 K {
          objects: x, y;
          edges: f: x -> y, g: y -> x;
          gens2: s: f g => f g, t: id(x) => id(x);
        }
        computad2 E { objects: x; gens2: a: id(x) => id(x), b: id(x) => id(x); }
        com3 M over E { gens3: u: v(a, b) => h(b, a), w: id(id(x)) => a; }
        morphism swap : E -> E { vertices: x -> x; gens2: a -> b, b -> a; }
    ";

    #[test]
    fn resolves_all_kinds() {
        let doc = parse_document(SRC, &builtins()).unwrap();
        assert_eq!(doc.len(), 4);
        assert_eq!(doc.computad("K").unwrap().indets2().len(), 2);
        let m = doc.com3("M").unwrap();
        let u = m.boundary_of("u").unwrap();
        assert_eq!(u.first, u.second, "EH identifies the two composites");
        assert_eq!(doc.morphism("swap").unwrap().indet("a").unwrap(), "b");
    }

    #[test]
    fn builtins_are_visible() {
        let doc = parse_document(
            "morphism f : paper_A -> paper_B { vertices: x -> x; gens2: a1 -> b1, a2 -> b2; }",
            &builtins(),
        )
        .unwrap();
        assert!(doc.morphism("f").is_some());
        let err = parse_document("computad2 paper_A { }", &builtins()).unwrap_err();
        assert!(matches!(err, DslError::Duplicate { .. }));
    }

    #[test]
    fn reference_errors_have_positions() {
        let err = parse_document("com3 M over Nope { }", &DslDocument::new()).unwrap_err();
        assert_eq!(
            err,
            DslError::UnknownReference {
                pos: Pos { line: 1, col: 13 },
                name: "Nope".into()
            }
        );
        let err = parse_document(
            "computad2 K { objects: x; gens2: s: id(x) => id(z); }",
            &DslDocument::new(),
        )
        .unwrap_err();
        assert!(matches!(err, DslError::UnknownReference { ref name, .. } if name == "z"));
    }

    #[test]
    fn validation_errors_wrap_core_errors() {
        let err = parse_document(
            "computad2 K { objects: x, y; edges: f: x -> y; gens2: s: f => id(x); }",
            &DslDocument::new(),
        )
        .unwrap_err();
        assert!(matches!(err.core_error(), Some(Error::NotParallel(..))));
        let err = parse_document(
            "computad2 K { objects: x; edges: l: x -> x; gens2: s: l => l; }\ncom3 M over K { }",
            &DslDocument::new(),
        )
        .unwrap_err();
        assert!(matches!(err.core_error(), Some(Error::NotEHClass(_))));
        assert_eq!(err.pos().unwrap().line, 2);
    }

    #[test]
    fn morphism_must_preserve_boundaries() {
        let err = parse_document(
            "computad2 K { objects: x; edges: l: x -> x; gens2: s: l => l, t: id(x) => id(x); }
             morphism f : K -> K { vertices: x -> x; edges: l -> l; gens2: s -> t, t -> t; }",
            &DslDocument::new(),
        )
        .unwrap_err();
        assert!(matches!(
            err.core_error(),
            Some(Error::NotComputadMorphism(_))
        ));
    }

    #[test]
    fn shipped_files() {
        let a =
            parse_document(include_str!("../../data/paper_A.cpd"), &DslDocument::new()).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.computad("A").unwrap().indets2().len(), 2);
        assert!(parse_document("", &DslDocument::new()).unwrap().is_empty());
        let mut scope = builtins();
        for src in [
            include_str!("../../data/paper_A.cpd"),
            include_str!("../../data/paper_B.cpd"),
            include_str!("../../data/cospan.cpd"),
        ] {
            let doc = parse_document(src, &scope).unwrap();
            scope.merge(doc).unwrap();
        }
        // the file versions agree with the builtins up to renaming A, B, C
        assert_eq!(
            scope
                .morphism("alpha")
                .unwrap()
                .cell_map(2)
                .unwrap()
                .indices(),
            scope
                .morphism("paper_alpha")
                .unwrap()
                .cell_map(2)
                .unwrap()
                .indices()
        );
    }

    #[test]
    fn non_parallel_boundary_is_rejected() {
        let err = parse_document(
            "computad2 K { objects: x, y; gens2: a1: id(x) => id(y); }",
            &DslDocument::new(),
        )
        .unwrap_err();
        assert!(matches!(err, DslError::Validation { ref name, .. } if name == "K"));
        assert_eq!(err.pos(), Some(Pos { line: 1, col: 37 }));
    }
}
