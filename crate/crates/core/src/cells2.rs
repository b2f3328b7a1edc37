//! 2-cells of the free 2-category on a 2-computad.
//!
//! Terms are built from generators, identities on 1-cells, and vertical and
//! horizontal composition. Equality of cells is decided only in the
//! Eckmann–Hilton fragment: no 1-indets and every 2-indet an endomorphism of an
//! identity 1-cell. There interchange forces all composites to commute, so a
//! cell is determined by its vertex and the multiset of generators it uses.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::computad::Computad2;
use crate::error::{Error, Result};
use crate::freecat::{path_compose, Path};

/// Total number of generator occurrences in a cell.
pub type Degree = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cell2Term {
    Gen(String),
    Id1(Path),
    VComp(Box<Cell2Term>, Box<Cell2Term>),
    HComp(Box<Cell2Term>, Box<Cell2Term>),
}

impl Cell2Term {
    pub fn gen(name: impl Into<String>) -> Self {
        Cell2Term::Gen(name.into())
    }

    pub fn id(path: Path) -> Self {
        Cell2Term::Id1(path)
    }

    /// Vertical composite, `self` first.
    pub fn v(self, other: Cell2Term) -> Self {
        Cell2Term::VComp(Box::new(self), Box::new(other))
    }

    /// Horizontal composite, `self` on the left.
    pub fn h(self, other: Cell2Term) -> Self {
        Cell2Term::HComp(Box::new(self), Box::new(other))
    }

    pub fn depth(&self) -> usize {
        match self {
            Cell2Term::Gen(_) | Cell2Term::Id1(_) => 1,
            Cell2Term::VComp(a, b) | Cell2Term::HComp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn collect_generators(&self, out: &mut Multiset) {
        match self {
            Cell2Term::Gen(name) => out.insert(name.clone(), 1),
            Cell2Term::Id1(_) => {}
            Cell2Term::VComp(a, b) | Cell2Term::HComp(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
        }
    }
}

impl fmt::Display for Cell2Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell2Term::Gen(name) => f.write_str(name),
            Cell2Term::Id1(p) => write!(f, "id({p})"),
            Cell2Term::VComp(a, b) => write!(f, "v({a}, {b})"),
            Cell2Term::HComp(a, b) => write!(f, "h({a}, {b})"),
        }
    }
}

/// Source and target 1-cells of a 2-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Boundary2 {
    pub src: Path,
    pub tgt: Path,
}

impl Boundary2 {
    pub fn new(src: Path, tgt: Path) -> Result<Self> {
        if !src.is_parallel_to(&tgt) {
            return Err(Error::NotParallel(
                format!("{src}: {} -> {}", src.source(), src.target()),
                format!("{tgt}: {} -> {}", tgt.source(), tgt.target()),
            ));
        }
        Ok(Boundary2 { src, tgt })
    }

    /// The boundary of an identity 2-cell.
    pub fn identity(path: Path) -> Self {
        Boundary2 {
            src: path.clone(),
            tgt: path,
        }
    }

    pub fn is_identity_on_vertex(&self) -> bool {
        self.src.is_identity() && self.tgt.is_identity()
    }
}

impl fmt::Display for Boundary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.src, self.tgt)
    }
}

/// Type-checks `t` against `k` and returns its boundary.
pub fn boundary(t: &Cell2Term, k: &Computad2) -> Result<Boundary2> {
    match t {
        Cell2Term::Gen(name) => k
            .boundary_of(name)
            .cloned()
            .ok_or_else(|| Error::UnknownGenerator(name.clone())),
        Cell2Term::Id1(p) => {
            if !k.skeleton().contains_path(p) {
                return Err(
                    match p.edges().iter().find(|e| !k.skeleton().edges().contains(e)) {
                        Some(e) => Error::UnknownEdge(e.clone()),
                        None => Error::UnknownVertex(p.source().to_owned()),
                    },
                );
            }
            Ok(Boundary2::identity(p.clone()))
        }
        Cell2Term::VComp(a, b) => {
            let ba = boundary(a, k)?;
            let bb = boundary(b, k)?;
            if ba.tgt != bb.src {
                return Err(Error::IllTypedVComp {
                    left: ba.tgt.to_string(),
                    right: bb.src.to_string(),
                });
            }
            Ok(Boundary2 {
                src: ba.src,
                tgt: bb.tgt,
            })
        }
        Cell2Term::HComp(a, b) => {
            let ba = boundary(a, k)?;
            let bb = boundary(b, k)?;
            let ill = || Error::IllTypedHComp {
                left: ba.to_string(),
                right: bb.to_string(),
            };
            let src = path_compose(&ba.src, &bb.src).map_err(|_| ill())?;
            let tgt = path_compose(&ba.tgt, &bb.tgt).map_err(|_| ill())?;
            Ok(Boundary2 { src, tgt })
        }
    }
}

/// True iff `k` has no 1-indets and every 2-indet sits on an identity 1-cell.
pub fn is_eh_class(k: &Computad2) -> bool {
    eh_violation(k).is_none()
}

pub(crate) fn eh_violation(k: &Computad2) -> Option<String> {
    if let Some(e) = k.skeleton().edges().iter().next() {
        return Some(format!("has 1-indet `{e}`"));
    }
    k.generators()
        .find(|(_, b)| !b.is_identity_on_vertex())
        .map(|(name, b)| format!("2-indet `{name}` has boundary {b}"))
}

fn require_eh(k: &Computad2) -> Result<()> {
    match eh_violation(k) {
        Some(reason) => Err(Error::NotEHClass(reason)),
        None => Ok(()),
    }
}

/// A finite multiset of generator names, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset(BTreeMap<String, usize>);

impl Multiset {
    pub fn new() -> Self {
        Multiset::default()
    }

    pub fn insert(&mut self, name: String, count: usize) {
        if count > 0 {
            *self.0.entry(name).or_insert(0) += count;
        }
    }

    pub fn degree(&self) -> Degree {
        self.0.values().sum()
    }

    pub fn count(&self, name: &str) -> usize {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct names with their multiplicities, in sorted order.
    pub fn entries(&self) -> impl Iterator<Item = (&String, usize)> + '_ {
        self.0.iter().map(|(k, &v)| (k, v))
    }

    /// Every occurrence, in sorted order.
    pub fn occurrences(&self) -> impl Iterator<Item = &String> + '_ {
        self.0.iter().flat_map(|(k, &v)| std::iter::repeat_n(k, v))
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (k, v) in other.entries() {
            out.insert(k.clone(), v);
        }
        out
    }

    /// Image under a relabelling of generators.
    pub fn map_names(&self, mut f: impl FnMut(&str) -> Option<String>) -> Option<Multiset> {
        let mut out = Multiset::new();
        for (k, v) in self.entries() {
            out.insert(f(k)?, v);
        }
        Some(out)
    }
}

impl<S: Into<String>> FromIterator<S> for Multiset {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for name in iter {
            m.insert(name.into(), 1);
        }
        m
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.occurrences().join(", "))
    }
}

/// Serialized as the sorted list of occurrences.
impl Serialize for Multiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.degree()))?;
        for name in self.occurrences() {
            seq.serialize_element(name)?;
        }
        seq.end()
    }
}

/// Canonical form of a cell in the Eckmann–Hilton fragment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EHNormalForm {
    pub vertex: String,
    pub content: Multiset,
}

impl EHNormalForm {
    pub fn identity(vertex: impl Into<String>) -> Self {
        EHNormalForm {
            vertex: vertex.into(),
            content: Multiset::new(),
        }
    }

    pub fn new(vertex: impl Into<String>, content: Multiset) -> Self {
        EHNormalForm {
            vertex: vertex.into(),
            content,
        }
    }

    pub fn degree(&self) -> Degree {
        self.content.degree()
    }

    /// A term denoting this cell: a left-nested vertical composite of its generators.
    pub fn to_term(&self) -> Cell2Term {
        self.content
            .occurrences()
            .map(|g| Cell2Term::gen(g.clone()))
            .reduce(Cell2Term::v)
            .unwrap_or_else(|| Cell2Term::id(Path::identity(self.vertex.clone())))
    }
}

impl fmt::Display for EHNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.content.fmt(f)
    }
}

/// Normal form of a well-typed term of an Eckmann–Hilton class computad.
pub fn normalize(t: &Cell2Term, k: &Computad2) -> Result<EHNormalForm> {
    require_eh(k)?;
    let b = boundary(t, k)?;
    let mut content = Multiset::new();
    t.collect_generators(&mut content);
    Ok(EHNormalForm {
        vertex: b.src.source().to_owned(),
        content,
    })
}

/// Whether two terms of `k` denote the same cell.
pub fn eq_cells(t: &Cell2Term, u: &Cell2Term, k: &Computad2) -> Result<bool> {
    Ok(normalize(t, k)? == normalize(u, k)?)
}

/// All cells of degree at most `max_degree`, grouped by degree.
///
/// Within a degree, vertices come in skeleton order and multisets in
/// lexicographic order of their sorted occurrence lists, generators ordered as
/// declared.
pub fn enumerate_cells(k: &Computad2, max_degree: Degree) -> Result<Vec<Vec<EHNormalForm>>> {
    require_eh(k)?;
    let by_vertex: Vec<(&String, Vec<&String>)> = k
        .skeleton()
        .vertices()
        .iter()
        .map(|v| {
            let gens = k
                .generators()
                .filter(|(_, b)| b.src.source() == v)
                .map(|(name, _)| name)
                .collect();
            (v, gens)
        })
        .collect();
    Ok((0..=max_degree)
        .map(|d| {
            by_vertex
                .iter()
                .flat_map(|(v, gens)| {
                    gens_of_degree(gens, d)
                        .into_iter()
                        .map(move |content| EHNormalForm::new(v.as_str(), content))
                })
                .collect()
        })
        .collect())
}

fn gens_of_degree(gens: &[&String], d: Degree) -> Vec<Multiset> {
    if d == 0 {
        return vec![Multiset::new()];
    }
    gens.iter()
        .copied()
        .combinations_with_replacement(d)
        .map(|combo| combo.into_iter().cloned().collect())
        .collect()
}

/// Every term reachable from `t` by one rewrite that is sound in the
/// Eckmann–Hilton fragment: exchanging `v` and `h`, commuting, reassociating,
/// interchange in either direction, and dropping identity units.
pub fn eh_rewrites(t: &Cell2Term) -> Vec<Cell2Term> {
    use Cell2Term::*;
    let mut out = Vec::new();
    match t {
        VComp(a, b) => {
            out.push(HComp(a.clone(), b.clone()));
            out.push(VComp(b.clone(), a.clone()));
            if let VComp(a1, a2) = a.as_ref() {
                out.push(VComp(a1.clone(), Box::new(VComp(a2.clone(), b.clone()))));
            }
            if let (HComp(p, q), HComp(r, s)) = (a.as_ref(), b.as_ref()) {
                // v(h(p,q), h(r,s)) = h(v(p,r), v(q,s))
                out.push(HComp(
                    Box::new(VComp(p.clone(), r.clone())),
                    Box::new(VComp(q.clone(), s.clone())),
                ));
            }
            if matches!(a.as_ref(), Id1(_)) {
                out.push(b.as_ref().clone());
            }
            if matches!(b.as_ref(), Id1(_)) {
                out.push(a.as_ref().clone());
            }
        }
        HComp(a, b) => {
            out.push(VComp(a.clone(), b.clone()));
            out.push(HComp(b.clone(), a.clone()));
            if let HComp(a1, a2) = a.as_ref() {
                out.push(HComp(a1.clone(), Box::new(HComp(a2.clone(), b.clone()))));
            }
            if let (VComp(p, r), VComp(q, s)) = (a.as_ref(), b.as_ref()) {
                out.push(VComp(
                    Box::new(HComp(p.clone(), q.clone())),
                    Box::new(HComp(r.clone(), s.clone())),
                ));
            }
            if matches!(a.as_ref(), Id1(p) if p.is_identity()) {
                out.push(b.as_ref().clone());
            }
            if matches!(b.as_ref(), Id1(p) if p.is_identity()) {
                out.push(a.as_ref().clone());
            }
        }
        Gen(_) | Id1(_) => {}
    }
    match t {
        VComp(a, b) | HComp(a, b) => {
            let rebuild = |x: Cell2Term, y: Cell2Term| match t {
                VComp(..) => VComp(Box::new(x), Box::new(y)),
                _ => HComp(Box::new(x), Box::new(y)),
            };
            for a2 in eh_rewrites(a) {
                out.push(rebuild(a2, b.as_ref().clone()));
            }
            for b2 in eh_rewrites(b) {
                out.push(rebuild(a.as_ref().clone(), b2));
            }
        }
        Gen(_) | Id1(_) => {}
    }
    out
}
