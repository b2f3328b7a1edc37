//! Graphs and the free categories they generate.
//!
//! A [`Graph`] is a 1-computad presentation: its edges are the 1-indets and
//! its 1-cells are [`Path`]s. Morphisms send vertices to vertices and edges to
//! edges.

use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{FinSet, SetFun};

/// Label of a pair of labels, as used for every product construction.
pub fn pair_label(left: &str, right: &str) -> String {
    format!("<{left},{right}>")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: FinSet<String>,
    edges: FinSet<String>,
    src: SetFun<String, String>,
    tgt: SetFun<String, String>,
}

impl Graph {
    /// Builds a graph from vertex names and `(edge, source, target)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices = FinSet::from_distinct(vertices.into_iter().map(Into::into))?;
        let edges: Vec<_> = edges.into_iter().collect();
        for (_, s, t) in &edges {
            for v in [s, t] {
                if !vertices.contains(v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
            }
        }
        let names = FinSet::from_distinct(edges.iter().map(|(e, _, _)| e.clone()))?;
        let src = SetFun::from_indices(
            names.clone(),
            vertices.clone(),
            edges
                .iter()
                .map(|(_, s, _)| vertices.index_of(s).unwrap())
                .collect(),
        );
        let tgt = SetFun::from_indices(
            names.clone(),
            vertices.clone(),
            edges
                .iter()
                .map(|(_, _, t)| vertices.index_of(t).unwrap())
                .collect(),
        );
        Ok(Graph {
            vertices,
            edges: names,
            src,
            tgt,
        })
    }

    /// A graph with the given vertices and no edges.
    pub fn discrete<V>(vertices: V) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
    {
        Graph::new(vertices, std::iter::empty())
    }

    pub fn vertices(&self) -> &FinSet<String> {
        &self.vertices
    }

    pub fn edges(&self) -> &FinSet<String> {
        &self.edges
    }

    pub fn src(&self) -> &SetFun<String, String> {
        &self.src
    }

    pub fn tgt(&self) -> &SetFun<String, String> {
        &self.tgt
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(&v.to_owned())
    }

    pub fn endpoints(&self, edge: &str) -> Result<(&String, &String)> {
        let e = edge.to_owned();
        match (self.src.apply(&e), self.tgt.apply(&e)) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => Err(Error::UnknownEdge(edge.to_owned())),
        }
    }

    pub fn identity(&self, vertex: &str) -> Result<Path> {
        if !self.has_vertex(vertex) {
            return Err(Error::UnknownVertex(vertex.to_owned()));
        }
        Ok(Path::identity(vertex))
    }

    /// The path that starts at `start` and follows `edges` in order.
    pub fn path<I>(&self, start: &str, edges: I) -> Result<Path>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let mut path = self.identity(start)?;
        for e in edges {
            let e = e.into();
            let (s, t) = self.endpoints(&e)?;
            if *s != path.target {
                return Err(Error::NotComposable {
                    left_end: path.target,
                    right_start: s.clone(),
                });
            }
            path.target = t.clone();
            path.edges.push(e);
        }
        Ok(path)
    }

    /// True iff every edge of `path` belongs to this graph and the endpoints match.
    pub fn contains_path(&self, path: &Path) -> bool {
        self.path(&path.source, path.edges.iter().cloned())
            .is_ok_and(|p| p == *path)
    }
}

/// A 1-cell of the free category on a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    source: String,
    target: String,
    edges: Vec<String>,
}

impl Path {
    pub fn identity(vertex: impl Into<String>) -> Self {
        let v = vertex.into();
        Path {
            source: v.clone(),
            target: v,
            edges: Vec::new(),
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "id({})", self.source)
        } else {
            write!(f, "{}", self.edges.join(" "))
        }
    }
}

/// Concatenation, `p` first.
pub fn path_compose(p: &Path, q: &Path) -> Result<Path> {
    if p.target != q.source {
        return Err(Error::NotComposable {
            left_end: p.target.clone(),
            right_start: q.source.clone(),
        });
    }
    let mut edges = p.edges.clone();
    edges.extend(q.edges.iter().cloned());
    Ok(Path {
        source: p.source.clone(),
        target: q.target.clone(),
        edges,
    })
}

/// Synchronous pairing of two paths of equal length into the product graph.
pub fn pair_paths(p: &Path, q: &Path) -> Result<Path> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(Path {
        source: pair_label(&p.source, &q.source),
        target: pair_label(&p.target, &q.target),
        edges: p
            .edges
            .iter()
            .zip(&q.edges)
            .map(|(e, f)| pair_label(e, f))
            .collect(),
    })
}

/// A graph morphism together with its source and target graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    source: Graph,
    target: Graph,
    on_vertices: SetFun<String, String>,
    on_edges: SetFun<String, String>,
}

impl GraphMorphism {
    pub fn new(
        source: Graph,
        target: Graph,
        on_vertices: SetFun<String, String>,
        on_edges: SetFun<String, String>,
    ) -> Result<Self> {
        if *on_vertices.dom() != source.vertices || *on_vertices.cod() != target.vertices {
            return Err(Error::NotGraphMorphism(
                "vertex map has the wrong type".into(),
            ));
        }
        if *on_edges.dom() != source.edges || *on_edges.cod() != target.edges {
            return Err(Error::NotGraphMorphism(
                "edge map has the wrong type".into(),
            ));
        }
        for (e, fe) in on_edges.graph() {
            let (s, t) = source.endpoints(e)?;
            let (fs, ft) = target.endpoints(fe)?;
            if on_vertices.apply(s) != Some(fs) || on_vertices.apply(t) != Some(ft) {
                return Err(Error::NotGraphMorphism(format!(
                    "edge `{e}` is sent to `{fe}` with mismatched endpoints"
                )));
            }
        }
        Ok(GraphMorphism {
            source,
            target,
            on_vertices,
            on_edges,
        })
    }

    /// Builds a morphism from name-to-name tables.
    pub fn from_maps(
        source: Graph,
        target: Graph,
        vertices: &IndexMap<String, String>,
        edges: &IndexMap<String, String>,
    ) -> Result<Self> {
        let on_vertices = SetFun::try_new(source.vertices.clone(), target.vertices.clone(), |v| {
            vertices.get(v).cloned()
        })?;
        let on_edges = SetFun::try_new(source.edges.clone(), target.edges.clone(), |e| {
            edges.get(e).cloned()
        })?;
        GraphMorphism::new(source, target, on_vertices, on_edges)
    }

    pub fn identity(graph: Graph) -> Self {
        GraphMorphism {
            on_vertices: SetFun::<String, String>::identity(graph.vertices.clone()),
            on_edges: SetFun::<String, String>::identity(graph.edges.clone()),
            source: graph.clone(),
            target: graph,
        }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn on_vertices(&self) -> &SetFun<String, String> {
        &self.on_vertices
    }

    pub fn on_edges(&self) -> &SetFun<String, String> {
        &self.on_edges
    }

    pub fn vertex(&self, v: &str) -> Option<&String> {
        self.on_vertices.apply(&v.to_owned())
    }

    pub fn edge(&self, e: &str) -> Option<&String> {
        self.on_edges.apply(&e.to_owned())
    }

    /// Image of a path of the source graph.
    pub fn apply_path(&self, path: &Path) -> Result<Path> {
        let source = self
            .vertex(&path.source)
            .ok_or_else(|| Error::UnknownVertex(path.source.clone()))?;
        let edges = path
            .edges
            .iter()
            .map(|e| {
                self.edge(e)
                    .cloned()
                    .ok_or_else(|| Error::UnknownEdge(e.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.target.path(source, edges)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphMorphism) -> Result<GraphMorphism> {
        if self.target != other.source {
            return Err(Error::DomainMismatch("composite of graph morphisms"));
        }
        Ok(GraphMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            on_vertices: self.on_vertices.then(&other.on_vertices)?,
            on_edges: self.on_edges.then(&other.on_edges)?,
        })
    }
}

/// True iff the raw tables define a graph morphism `g → h`.
pub fn is_graph_morphism(
    vertices: &IndexMap<String, String>,
    edges: &IndexMap<String, String>,
    g: &Graph,
    h: &Graph,
) -> bool {
    GraphMorphism::from_maps(g.clone(), h.clone(), vertices, edges).is_ok()
}

/// Every graph morphism `g → h`, by brute force over vertex and edge tables.
pub fn all_graph_morphisms(g: &Graph, h: &Graph) -> Vec<GraphMorphism> {
    let vertex_maps = crate::finset::all_functions(&g.vertices, &h.vertices);
    let edge_maps = crate::finset::all_functions(&g.edges, &h.edges);
    vertex_maps
        .iter()
        .flat_map(|fv| {
            edge_maps.iter().filter_map(move |fe| {
                GraphMorphism::new(g.clone(), h.clone(), fv.clone(), fe.clone()).ok()
            })
        })
        .collect()
}

/// A product graph with its two projections.
#[derive(Clone, Debug)]
pub struct GraphProduct {
    pub graph: Graph,
    pub proj_left: GraphMorphism,
    pub proj_right: GraphMorphism,
}

pub fn graph_product(g: &Graph, h: &Graph) -> GraphProduct {
    let vertex_pairs: Vec<(usize, usize)> = (0..g.vertices.len())
        .flat_map(|i| (0..h.vertices.len()).map(move |j| (i, j)))
        .collect();
    let edge_pairs: Vec<(usize, usize)> = (0..g.edges.len())
        .flat_map(|i| (0..h.edges.len()).map(move |j| (i, j)))
        .collect();
    let vlabel = |&(i, j): &(usize, usize)| {
        pair_label(g.vertices.get(i).unwrap(), h.vertices.get(j).unwrap())
    };
    let graph = Graph::new(
        vertex_pairs.iter().map(vlabel),
        edge_pairs.iter().map(|&(i, j)| {
            (
                pair_label(g.edges.get(i).unwrap(), h.edges.get(j).unwrap()),
                vlabel(&(g.src.apply_index(i), h.src.apply_index(j))),
                vlabel(&(g.tgt.apply_index(i), h.tgt.apply_index(j))),
            )
        }),
    )
    .expect("pair labels of distinct elements are distinct");

    let project = |target: &Graph, pick: fn(&(usize, usize)) -> usize| GraphMorphism {
        source: graph.clone(),
        target: target.clone(),
        on_vertices: SetFun::from_indices(
            graph.vertices.clone(),
            target.vertices.clone(),
            vertex_pairs.iter().map(pick).collect(),
        ),
        on_edges: SetFun::from_indices(
            graph.edges.clone(),
            target.edges.clone(),
            edge_pairs.iter().map(pick).collect(),
        ),
    };
    let proj_left = project(g, |p| p.0);
    let proj_right = project(h, |p| p.1);
    GraphProduct {
        graph,
        proj_left,
        proj_right,
    }
}
