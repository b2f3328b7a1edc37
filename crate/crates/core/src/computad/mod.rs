//! 2-computads presented by a graph and 2-indets, their morphisms, binary
//! products and pullbacks, and the parallel-pair functor on bounded cell sets.

mod com3;
mod terminal;

pub use com3::{i2, product3, tr2, Com3Object};
pub use terminal::{
    bang_map, factor_through, pi2_inclusion_bounded, pullback2_over_terminal,
    subcomputad_generated, MapToTerminal, Subterminal, Terminal2Handle, TerminalCell,
};

use indexmap::IndexMap;
use serde::Serialize;

use crate::cells2::{enumerate_cells, Boundary2, Degree, EHNormalForm};
use crate::error::{Error, Result};
use crate::finset::{FinSet, SetFun};
use crate::freecat::{
    all_graph_morphisms, graph_product, pair_label, pair_paths, Graph, GraphMorphism,
};

/// A 2-computad: a graph of 0- and 1-indets plus 2-indets with parallel path boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computad2 {
    skeleton: Graph,
    indets2: FinSet<String>,
    boundary2: Vec<Boundary2>,
}

impl Computad2 {
    pub fn new<I>(skeleton: Graph, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Boundary2)>,
    {
        let gens: Vec<_> = gens.into_iter().collect();
        validate_computad2(&skeleton, &gens)?;
        let indets2 = FinSet::from_distinct(gens.iter().map(|(n, _)| n.clone()))?;
        Ok(Computad2 {
            skeleton,
            indets2,
            boundary2: gens.into_iter().map(|(_, b)| b).collect(),
        })
    }

    /// One vertex, no edges, and every generator an endomorphism of the identity.
    pub fn eh_bouquet<I>(vertex: &str, gens: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let id = Boundary2::identity(crate::freecat::Path::identity(vertex));
        Computad2::new(
            Graph::discrete([vertex])?,
            gens.into_iter().map(|g| (g.into(), id.clone())),
        )
    }

    pub fn skeleton(&self) -> &Graph {
        &self.skeleton
    }

    pub fn indets2(&self) -> &FinSet<String> {
        &self.indets2
    }

    pub fn boundary_of(&self, name: &str) -> Option<&Boundary2> {
        self.indets2
            .index_of(&name.to_owned())
            .map(|i| &self.boundary2[i])
    }

    /// Generators with their boundaries, in declaration order.
    pub fn generators(&self) -> impl Iterator<Item = (&String, &Boundary2)> + '_ {
        self.indets2.iter().zip(&self.boundary2)
    }

    /// All cells of degree at most `max_degree` as one finite set, graded order.
    pub fn cells_up_to(&self, max_degree: Degree) -> Result<FinSet<EHNormalForm>> {
        Ok(enumerate_cells(self, max_degree)?
            .into_iter()
            .flatten()
            .collect())
    }
}

/// Checks that every boundary path lies in `skeleton` and that each pair is parallel.
///
/// The error names the first offending generator.
pub fn validate_computad2(skeleton: &Graph, gens: &[(String, Boundary2)]) -> Result<()> {
    for (name, b) in gens {
        let invalid = |reason: String| Error::InvalidComputad {
            indet: name.clone(),
            reason,
        };
        for p in [&b.src, &b.tgt] {
            if !skeleton.contains_path(p) {
                return Err(invalid(format!("{p} is not a path of the skeleton")));
            }
        }
        if !b.src.is_parallel_to(&b.tgt) {
            return Err(invalid(format!("{} and {} are not parallel", b.src, b.tgt)));
        }
    }
    Ok(())
}

/// A morphism of 2-computads: a graph morphism plus an indet-to-indet map
/// preserving boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computad2Morphism {
    source: Computad2,
    target: Computad2,
    on_graph: GraphMorphism,
    on_indets2: SetFun<String, String>,
}

impl Computad2Morphism {
    pub fn new(
        source: Computad2,
        target: Computad2,
        on_graph: GraphMorphism,
        on_indets2: SetFun<String, String>,
    ) -> Result<Self> {
        let fail = |msg: String| Err(Error::NotComputadMorphism(msg));
        if *on_graph.source() != source.skeleton || *on_graph.target() != target.skeleton {
            return fail("graph part has the wrong type".into());
        }
        if *on_indets2.dom() != source.indets2 || *on_indets2.cod() != target.indets2 {
            return fail("indet part has the wrong type".into());
        }
        for ((name, b), image) in source.generators().zip(on_indets2.indices()) {
            let target_b = &target.boundary2[*image];
            let src = on_graph.apply_path(&b.src)?;
            let tgt = on_graph.apply_path(&b.tgt)?;
            if src != target_b.src || tgt != target_b.tgt {
                let image_name = target.indets2.get(*image).unwrap();
                return fail(format!(
                    "`{name}` has boundary {src} => {tgt} after mapping, but `{image_name}` has {target_b}"
                ));
            }
        }
        Ok(Computad2Morphism {
            source,
            target,
            on_graph,
            on_indets2,
        })
    }

    /// Builds a morphism from name-to-name tables for vertices, edges and 2-indets.
    pub fn from_maps(
        source: Computad2,
        target: Computad2,
        vertices: &IndexMap<String, String>,
        edges: &IndexMap<String, String>,
        indets: &IndexMap<String, String>,
    ) -> Result<Self> {
        let on_graph = GraphMorphism::from_maps(
            source.skeleton.clone(),
            target.skeleton.clone(),
            vertices,
            edges,
        )?;
        let on_indets2 = SetFun::try_new(source.indets2.clone(), target.indets2.clone(), |g| {
            indets.get(g).cloned()
        })?;
        Computad2Morphism::new(source, target, on_graph, on_indets2)
    }

    pub fn identity(k: Computad2) -> Self {
        Computad2Morphism {
            on_graph: GraphMorphism::identity(k.skeleton.clone()),
            on_indets2: SetFun::<String, String>::identity(k.indets2.clone()),
            source: k.clone(),
            target: k,
        }
    }

    pub fn source(&self) -> &Computad2 {
        &self.source
    }

    pub fn target(&self) -> &Computad2 {
        &self.target
    }

    pub fn on_graph(&self) -> &GraphMorphism {
        &self.on_graph
    }

    pub fn on_indets2(&self) -> &SetFun<String, String> {
        &self.on_indets2
    }

    pub fn indet(&self, name: &str) -> Option<&String> {
        self.on_indets2.apply(&name.to_owned())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Computad2Morphism) -> Result<Computad2Morphism> {
        if self.target != other.source {
            return Err(Error::DomainMismatch("composite of computad morphisms"));
        }
        Ok(Computad2Morphism {
            source: self.source.clone(),
            target: other.target.clone(),
            on_graph: self.on_graph.then(&other.on_graph)?,
            on_indets2: self.on_indets2.then(&other.on_indets2)?,
        })
    }

    /// Image of a normal form; degree is preserved since indets go to indets.
    pub fn apply_cell(&self, cell: &EHNormalForm) -> Option<EHNormalForm> {
        let vertex = self.on_graph.vertex(&cell.vertex)?.clone();
        let content = cell.content.map_names(|g| self.indet(g).cloned())?;
        Some(EHNormalForm::new(vertex, content))
    }

    /// The induced map on cells of degree at most `max_degree`.
    pub fn cell_map(&self, max_degree: Degree) -> Result<SetFun<EHNormalForm, EHNormalForm>> {
        let dom = self.source.cells_up_to(max_degree)?;
        let cod = self.target.cells_up_to(max_degree)?;
        SetFun::try_new(dom, cod, |c| self.apply_cell(c))
    }
}

/// True iff the raw tables define a morphism `a → b` of 2-computads.
pub fn is_computad2_morphism(
    vertices: &IndexMap<String, String>,
    edges: &IndexMap<String, String>,
    indets: &IndexMap<String, String>,
    a: &Computad2,
    b: &Computad2,
) -> bool {
    Computad2Morphism::from_maps(a.clone(), b.clone(), vertices, edges, indets).is_ok()
}

/// Every morphism `a → b`, by brute force. Only sensible for tiny presentations.
pub fn all_morphisms(a: &Computad2, b: &Computad2) -> Vec<Computad2Morphism> {
    let indet_maps = crate::finset::all_functions(&a.indets2, &b.indets2);
    all_graph_morphisms(&a.skeleton, &b.skeleton)
        .into_iter()
        .flat_map(|g| {
            indet_maps.iter().filter_map(move |fi| {
                Computad2Morphism::new(a.clone(), b.clone(), g.clone(), fi.clone()).ok()
            })
        })
        .collect()
}

/// Two cells with the same source and the same target.
///
/// In the Eckmann–Hilton fragment this just means they sit at the same vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParallelPair2 {
    pub first: EHNormalForm,
    pub second: EHNormalForm,
}

impl ParallelPair2 {
    pub fn new(first: EHNormalForm, second: EHNormalForm) -> Result<Self> {
        if first.vertex != second.vertex {
            return Err(Error::NotParallel(first.vertex, second.vertex));
        }
        Ok(ParallelPair2 { first, second })
    }
}

/// Parallel pairs of cells of degree at most `max_degree`.
pub fn pi2_bounded(a: &Computad2, max_degree: Degree) -> Result<FinSet<ParallelPair2>> {
    let cells = a.cells_up_to(max_degree)?;
    Ok(cells
        .iter()
        .flat_map(|c1| {
            cells
                .iter()
                .filter(move |c2| c2.vertex == c1.vertex)
                .map(move |c2| ParallelPair2 {
                    first: c1.clone(),
                    second: c2.clone(),
                })
        })
        .collect())
}

/// The parallel-pair functor on a morphism, restricted to degree at most `max_degree`.
pub fn pi2_on_morphism_bounded(
    f: &Computad2Morphism,
    max_degree: Degree,
) -> Result<SetFun<ParallelPair2, ParallelPair2>> {
    let dom = pi2_bounded(&f.source, max_degree)?;
    let cod = pi2_bounded(&f.target, max_degree)?;
    SetFun::try_new(dom, cod, |p| {
        Some(ParallelPair2 {
            first: f.apply_cell(&p.first)?,
            second: f.apply_cell(&p.second)?,
        })
    })
}

/// A computad together with two legs out of it, for products and pullbacks.
#[derive(Clone, Debug)]
pub struct Span2 {
    pub computad: Computad2,
    pub left: Computad2Morphism,
    pub right: Computad2Morphism,
}

pub fn product2(a: &Computad2, b: &Computad2) -> Span2 {
    paired(a, b, |_, _| true, |_, _| true, |_, _| true)
}

/// Pullback of the cospan `alpha: A → C ← B: beta`, as a sub-presentation of `A × B`.
pub fn pullback2(alpha: &Computad2Morphism, beta: &Computad2Morphism) -> Result<Span2> {
    if alpha.target != beta.target {
        return Err(Error::CodomainMismatch);
    }
    Ok(paired(
        &alpha.source,
        &beta.source,
        |u, v| alpha.on_graph.vertex(u) == beta.on_graph.vertex(v),
        |e, f| alpha.on_graph.edge(e) == beta.on_graph.edge(f),
        |g, h| alpha.indet(g) == beta.indet(h),
    ))
}

// Sub-presentation of the product on the pairs accepted by the three filters.
// Generator pairs additionally need boundary pairs that are paths of the product.
fn paired(
    a: &Computad2,
    b: &Computad2,
    keep_vertex: impl Fn(&str, &str) -> bool,
    keep_edge: impl Fn(&str, &str) -> bool,
    keep_gen: impl Fn(&str, &str) -> bool,
) -> Span2 {
    let full = graph_product(&a.skeleton, &b.skeleton);
    let (ga, gb) = (&a.skeleton, &b.skeleton);

    let mut vertices = Vec::new();
    let mut vertex_pairs = IndexMap::new();
    for u in ga.vertices() {
        for v in gb.vertices() {
            if keep_vertex(u, v) {
                let label = pair_label(u, v);
                vertex_pairs.insert(label.clone(), (u.clone(), v.clone()));
                vertices.push(label);
            }
        }
    }
    let mut edges = Vec::new();
    let mut edge_pairs = IndexMap::new();
    for e in ga.edges() {
        for f in gb.edges() {
            let label = pair_label(e, f);
            let (s, t) = full.graph.endpoints(&label).expect("edge of the product");
            if keep_edge(e, f) && vertex_pairs.contains_key(s) && vertex_pairs.contains_key(t) {
                edges.push((label.clone(), s.clone(), t.clone()));
                edge_pairs.insert(label, (e.clone(), f.clone()));
            }
        }
    }
    let skeleton = Graph::new(vertices, edges).expect("sub-graph of the product graph");

    let mut gens = Vec::new();
    let mut gen_pairs = IndexMap::new();
    for (g, bg) in a.generators() {
        for (h, bh) in b.generators() {
            if !keep_gen(g, h) {
                continue;
            }
            let (Ok(src), Ok(tgt)) = (pair_paths(&bg.src, &bh.src), pair_paths(&bg.tgt, &bh.tgt))
            else {
                continue;
            };
            if !skeleton.contains_path(&src) || !skeleton.contains_path(&tgt) {
                continue;
            }
            let label = pair_label(g, h);
            gens.push((label.clone(), Boundary2 { src, tgt }));
            gen_pairs.insert(label, (g.clone(), h.clone()));
        }
    }
    let computad = Computad2::new(skeleton, gens).expect("paired boundaries are parallel");

    let leg = |target: &Computad2, pick: fn(&(String, String)) -> &String| {
        let table = |pairs: &IndexMap<String, (String, String)>| -> IndexMap<String, String> {
            pairs
                .iter()
                .map(|(k, p)| (k.clone(), pick(p).clone()))
                .collect()
        };
        Computad2Morphism::from_maps(
            computad.clone(),
            target.clone(),
            &table(&vertex_pairs),
            &table(&edge_pairs),
            &table(&gen_pairs),
        )
        .expect("projections of a product are morphisms")
    };
    let left = leg(a, |p| &p.0);
    let right = leg(b, |p| &p.1);
    Span2 {
        computad,
        left,
        right,
    }
}
