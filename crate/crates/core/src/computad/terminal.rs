//! The terminal 2-computad and what we need of it.
//!
//! It has one vertex `x`, one loop `xi`, 1-cells indexed by their length, and
//! one 2-indet for every pair of lengths. It is never materialized: only its
//! skeleton, its indexing of 2-indets, maps into it, and finite subcomputads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use super::{paired, Computad2, Computad2Morphism, ParallelPair2, Span2};
use crate::cells2::{is_eh_class, Boundary2, Degree};
use crate::error::{Error, Result};
use crate::finset::{FinSet, SetFun};
use crate::freecat::{Graph, Path};

/// A 2-indet of the terminal computad: source length and target length.
pub type TerminalIndet = (usize, usize);

/// Handle on the terminal 2-computad.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Terminal2Handle;

impl Terminal2Handle {
    pub const VERTEX: &'static str = "x";
    pub const EDGE: &'static str = "xi";
    /// The only 2-indet between identities.
    pub const C: TerminalIndet = (0, 0);

    pub fn skeleton(&self) -> Graph {
        Graph::new(
            [Self::VERTEX],
            [(Self::EDGE.into(), Self::VERTEX.into(), Self::VERTEX.into())],
        )
        .expect("one vertex with a loop")
    }

    /// The 1-cell `xi^n`.
    pub fn one_cell(&self, length: usize) -> Path {
        self.skeleton()
            .path(Self::VERTEX, std::iter::repeat_n(Self::EDGE, length))
            .expect("loops compose")
    }

    /// Name used when a 2-indet is materialized in a subcomputad.
    pub fn indet_label(&self, indet: TerminalIndet) -> String {
        match indet {
            Self::C => "c".to_owned(),
            (i, j) => format!("c_{i}_{j}"),
        }
    }

    pub fn indet_boundary(&self, (i, j): TerminalIndet) -> Boundary2 {
        Boundary2::new(self.one_cell(i), self.one_cell(j)).expect("all loops are parallel")
    }
}

/// The unique map from a 2-computad to the terminal one.
///
/// Vertices go to `x`, edges to `xi`, paths to their length, and a 2-indet to
/// the pair of lengths of its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapToTerminal {
    source: Computad2,
    indets: IndexMap<String, TerminalIndet>,
}

impl MapToTerminal {
    pub fn source(&self) -> &Computad2 {
        &self.source
    }

    pub fn vertex(&self, _v: &str) -> &'static str {
        Terminal2Handle::VERTEX
    }

    pub fn edge(&self, _e: &str) -> &'static str {
        Terminal2Handle::EDGE
    }

    pub fn path(&self, p: &Path) -> usize {
        p.len()
    }

    pub fn indet(&self, name: &str) -> Option<TerminalIndet> {
        self.indets.get(name).copied()
    }

    pub fn indets(&self) -> impl Iterator<Item = (&String, TerminalIndet)> + '_ {
        self.indets.iter().map(|(k, &v)| (k, v))
    }
}

pub fn bang_map(a: &Computad2) -> MapToTerminal {
    MapToTerminal {
        source: a.clone(),
        indets: a
            .generators()
            .map(|(g, b)| (g.clone(), (b.src.len(), b.tgt.len())))
            .collect(),
    }
}

/// A finite subcomputad of the terminal one, with its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subterminal {
    computad: Computad2,
    // generator label -> indet of the terminal computad
    inclusion: IndexMap<String, TerminalIndet>,
}

impl Subterminal {
    pub fn computad(&self) -> &Computad2 {
        &self.computad
    }

    pub fn generators(&self) -> impl Iterator<Item = (&String, TerminalIndet)> + '_ {
        self.inclusion.iter().map(|(k, &v)| (k, v))
    }

    pub fn include(&self, label: &str) -> Option<TerminalIndet> {
        self.inclusion.get(label).copied()
    }

    fn label_of(&self, indet: TerminalIndet) -> Option<&String> {
        self.inclusion
            .iter()
            .find(|(_, &v)| v == indet)
            .map(|(k, _)| k)
    }
}

/// The subcomputad generated by the given 2-indets, listed in sorted order.
pub fn subcomputad_generated<I>(handle: &Terminal2Handle, gens: I) -> Subterminal
where
    I: IntoIterator<Item = TerminalIndet>,
{
    let gens: BTreeSet<TerminalIndet> = gens.into_iter().collect();
    let needs_loop = gens.iter().any(|&(i, j)| i > 0 || j > 0);
    let skeleton = if needs_loop {
        handle.skeleton()
    } else {
        Graph::discrete([Terminal2Handle::VERTEX]).expect("one vertex")
    };
    let inclusion: IndexMap<String, TerminalIndet> =
        gens.iter().map(|&g| (handle.indet_label(g), g)).collect();
    let computad = Computad2::new(
        skeleton,
        gens.iter()
            .map(|&g| (handle.indet_label(g), handle.indet_boundary(g))),
    )
    .expect("loop paths lie in the skeleton");
    Subterminal {
        computad,
        inclusion,
    }
}

/// Factors a map into the terminal computad through a subcomputad.
pub fn factor_through(m: &Subterminal, f: &MapToTerminal) -> Result<Computad2Morphism> {
    let source = f.source.clone();
    let target = m.computad.clone();
    let vertices: IndexMap<String, String> = source
        .skeleton()
        .vertices()
        .iter()
        .map(|v| (v.clone(), Terminal2Handle::VERTEX.to_owned()))
        .collect();
    if let Some(e) = source.skeleton().edges().iter().next() {
        if target.skeleton().edges().is_empty() {
            return Err(Error::NotInImage(e.clone()));
        }
    }
    let edges: IndexMap<String, String> = source
        .skeleton()
        .edges()
        .iter()
        .map(|e| (e.clone(), Terminal2Handle::EDGE.to_owned()))
        .collect();
    let indets = f
        .indets()
        .map(|(g, image)| {
            m.label_of(image)
                .map(|label| (g.clone(), label.clone()))
                .ok_or_else(|| Error::NotInImage(g.clone()))
        })
        .collect::<Result<IndexMap<_, _>>>()?;
    Computad2Morphism::from_maps(source, target, &vertices, &edges, &indets)
}

/// Pullback of two maps into the terminal computad: generator pairs with the
/// same boundary lengths.
pub fn pullback2_over_terminal(f: &MapToTerminal, g: &MapToTerminal) -> Span2 {
    paired(
        &f.source,
        &g.source,
        |_, _| true,
        |_, _| true,
        |a, b| f.indet(a) == g.indet(b),
    )
}

/// A cell of the terminal computad reached through an Eckmann–Hilton subcomputad:
/// a multiset of terminal 2-indets at `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TerminalCell(pub BTreeMap<TerminalIndet, usize>);

impl fmt::Display for TerminalCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|((i, j), n)| format!("<{i},{j}>^{n}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The parallel-pair functor applied to the inclusion `m`, on cells of degree
/// at most `max_degree`.
///
/// The codomain is the set of parallel pairs of the terminal computad that are
/// reachable through `m`.
pub fn pi2_inclusion_bounded(
    m: &Subterminal,
    max_degree: Degree,
) -> Result<SetFun<ParallelPair2, (TerminalCell, TerminalCell)>> {
    if !is_eh_class(&m.computad) {
        return Err(Error::NotEHClass(
            "the subcomputad has generators on non-identity 1-cells".into(),
        ));
    }
    let dom = super::pi2_bounded(&m.computad, max_degree)?;
    let image = |cell: &crate::cells2::EHNormalForm| -> Option<TerminalCell> {
        let mut out = BTreeMap::new();
        for (g, n) in cell.content.entries() {
            *out.entry(m.include(g)?).or_insert(0) += n;
        }
        Some(TerminalCell(out))
    };
    let pairs: Vec<(TerminalCell, TerminalCell)> = dom
        .iter()
        .map(|p| Some((image(&p.first)?, image(&p.second)?)))
        .collect::<Option<_>>()
        .ok_or(Error::NotInImage("generator outside the inclusion".into()))?;
    let cod: FinSet<_> = pairs.iter().cloned().collect();
    SetFun::try_new(dom.clone(), cod, |p| {
        dom.index_of(p).map(|i| pairs[i].clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::is_mono;

    #[test]
    fn c_is_the_identity_endo_indet() {
        let t = Terminal2Handle;
        assert_eq!(t.indet_label(Terminal2Handle::C), "c");
        assert_eq!(
            t.indet_boundary(Terminal2Handle::C),
            Boundary2::identity(Path::identity("x"))
        );
        assert_eq!(t.one_cell(3).len(), 3);
    }

    #[test]
    fn bang_sends_generators_to_length_pairs() {
        let a = Computad2::eh_bouquet("x", ["a1", "a2"]).unwrap();
        let bang = bang_map(&a);
        assert_eq!(bang.indet("a1"), Some((0, 0)));
        assert_eq!(bang.path(&Path::identity("x")), 0);

        let g = Terminal2Handle.skeleton();
        let k = Computad2::new(
            g.clone(),
            [(
                "s".into(),
                Boundary2::new(
                    g.path("x", ["xi", "xi"]).unwrap(),
                    g.path("x", ["xi", "xi", "xi"]).unwrap(),
                )
                .unwrap(),
            )],
        )
        .unwrap();
        assert_eq!(bang_map(&k).indet("s"), Some((2, 3)));
    }

    #[test]
    fn generated_subcomputads() {
        let t = Terminal2Handle;
        let c = subcomputad_generated(&t, [(0, 0)]);
        assert_eq!(c.computad().skeleton().edges().len(), 0);
        assert_eq!(c.computad().indets2().to_vec(), ["c"]);
        assert!(is_eh_class(c.computad()));

        let empty = subcomputad_generated(&t, []);
        assert_eq!(empty.computad().skeleton().vertices().to_vec(), ["x"]);
        assert!(empty.computad().indets2().is_empty());

        let k = subcomputad_generated(&t, [(1, 2)]);
        assert_eq!(k.computad().skeleton().edges().to_vec(), ["xi"]);
        let b = k.computad().boundary_of("c_1_2").unwrap();
        assert_eq!(b.src.to_string(), "xi");
        assert_eq!(b.tgt.to_string(), "xi xi");
    }

    #[test]
    fn factorization() {
        let t = Terminal2Handle;
        let c = subcomputad_generated(&t, [Terminal2Handle::C]);
        let a = Computad2::eh_bouquet("x", ["a1", "a2"]).unwrap();
        let alpha = factor_through(&c, &bang_map(&a)).unwrap();
        assert_eq!(alpha.indet("a1").unwrap(), "c");
        assert_eq!(alpha.indet("a2").unwrap(), "c");

        let own = factor_through(&c, &bang_map(c.computad())).unwrap();
        assert_eq!(own, Computad2Morphism::identity(c.computad().clone()));

        let loopy = subcomputad_generated(&t, [(1, 1)]);
        assert_eq!(
            factor_through(&c, &bang_map(loopy.computad())).unwrap_err(),
            Error::NotInImage("xi".into())
        );
        let mixed = subcomputad_generated(&t, [(0, 0), (1, 1)]);
        let only_c = subcomputad_generated(&t, [(0, 0), (2, 2)]);
        assert_eq!(
            factor_through(&only_c, &bang_map(mixed.computad())).unwrap_err(),
            Error::NotInImage("c_1_1".into())
        );
    }

    #[test]
    fn inclusion_is_mono_on_bounded_pairs() {
        let c = subcomputad_generated(&Terminal2Handle, [Terminal2Handle::C]);
        let m = pi2_inclusion_bounded(&c, 3).unwrap();
        assert_eq!(m.dom().len(), 16);
        assert!(is_mono(&m));
    }
}
