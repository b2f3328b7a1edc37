//! Finite sets and functions between them.
//!
//! Everything here is the Set-level machinery behind the bounded checks: canonical
//! pullbacks, injectivity, and pullback verification of commuting squares with
//! explicit witnesses when the verdict is negative.

use std::collections::HashMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// Anything that can be stored in a [`FinSet`].
pub trait Element: Clone + Eq + Hash + Debug {}

impl<T: Clone + Eq + Hash + Debug> Element for T {}

/// A finite set with a fixed (insertion) order.
///
/// Cloning is cheap; the elements are shared.
#[derive(Clone)]
pub struct FinSet<T: Element> {
    elements: Arc<IndexSet<T>>,
}

impl<T: Element> FinSet<T> {
    pub fn empty() -> Self {
        FinSet {
            elements: Arc::new(IndexSet::new()),
        }
    }

    /// Builds a set from distinct elements, rejecting duplicates.
    pub fn from_distinct<I: IntoIterator<Item = T>>(iter: I) -> Result<Self> {
        let mut elements = IndexSet::new();
        for x in iter {
            if elements.contains(&x) {
                return Err(Error::DuplicateElement(format!("{x:?}")));
            }
            elements.insert(x);
        }
        Ok(FinSet {
            elements: Arc::new(elements),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elements.contains(x)
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.elements.get_index_of(x)
    }

    pub fn get(&self, index: usize) -> Option<&T> {
        self.elements.get_index(index)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &T> + '_ {
        self.elements.iter()
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.elements.iter().cloned().collect()
    }
}

/// Duplicates are dropped, keeping the first occurrence.
impl<T: Element> FromIterator<T> for FinSet<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        FinSet {
            elements: Arc::new(iter.into_iter().collect()),
        }
    }
}

/// Two finite sets are equal when they list the same elements in the same order.
impl<T: Element> PartialEq for FinSet<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.elements, &other.elements)
            || self.elements.iter().eq(other.elements.iter())
    }
}

impl<T: Element> Eq for FinSet<T> {}

impl<T: Element> Debug for FinSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

impl<'a, T: Element> IntoIterator for &'a FinSet<T> {
    type Item = &'a T;
    type IntoIter = indexmap::set::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// A total function between finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFun<A: Element, B: Element> {
    dom: FinSet<A>,
    cod: FinSet<B>,
    // map[i] is the codomain index of the image of dom[i]
    map: Vec<usize>,
}

impl<A: Element, B: Element> SetFun<A, B> {
    /// Tabulates `f` on `dom`; every value must lie in `cod`.
    pub fn new(dom: FinSet<A>, cod: FinSet<B>, f: impl Fn(&A) -> B) -> Result<Self> {
        let map = dom
            .iter()
            .map(|x| {
                let y = f(x);
                cod.index_of(&y).ok_or_else(|| Error::OutsideCodomain {
                    element: format!("{x:?}"),
                    value: format!("{y:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFun { dom, cod, map })
    }

    /// Like [`SetFun::new`] for a partial rule; a missing value is an error.
    pub fn try_new(dom: FinSet<A>, cod: FinSet<B>, f: impl Fn(&A) -> Option<B>) -> Result<Self> {
        let map = dom
            .iter()
            .map(|x| {
                let y = f(x).ok_or_else(|| Error::NotInDomain(format!("{x:?}")))?;
                cod.index_of(&y).ok_or_else(|| Error::OutsideCodomain {
                    element: format!("{x:?}"),
                    value: format!("{y:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFun { dom, cod, map })
    }

    pub fn identity(set: FinSet<A>) -> SetFun<A, A> {
        let map = (0..set.len()).collect();
        SetFun {
            dom: set.clone(),
            cod: set,
            map,
        }
    }

    pub(crate) fn from_indices(dom: FinSet<A>, cod: FinSet<B>, map: Vec<usize>) -> Self {
        debug_assert_eq!(dom.len(), map.len());
        debug_assert!(map.iter().all(|&j| j < cod.len()));
        SetFun { dom, cod, map }
    }

    pub fn dom(&self) -> &FinSet<A> {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet<B> {
        &self.cod
    }

    pub fn apply(&self, x: &A) -> Option<&B> {
        let i = self.dom.index_of(x)?;
        self.cod.get(self.map[i])
    }

    /// Image of the `i`-th domain element, as a codomain index.
    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then<C: Element>(&self, other: &SetFun<B, C>) -> Result<SetFun<A, C>> {
        if self.cod != other.dom {
            return Err(Error::DomainMismatch("composite of functions"));
        }
        let map = self.map.iter().map(|&j| other.map[j]).collect();
        Ok(SetFun {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map,
        })
    }

    pub fn graph(&self) -> impl Iterator<Item = (&A, &B)> + '_ {
        self.dom
            .iter()
            .zip(&self.map)
            .map(|(x, &j)| (x, self.cod.get(j).expect("index in range")))
    }
}

impl<A: Element, B: Element> Debug for SetFun<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.graph()).finish()
    }
}

/// True iff `f` is injective.
pub fn is_mono<A: Element, B: Element>(f: &SetFun<A, B>) -> bool {
    let mut seen = vec![false; f.cod.len()];
    for &j in &f.map {
        if std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    true
}

/// True iff `f` is surjective.
pub fn is_epi<A: Element, B: Element>(f: &SetFun<A, B>) -> bool {
    let mut seen = vec![false; f.cod.len()];
    for &j in &f.map {
        seen[j] = true;
    }
    seen.into_iter().all(|hit| hit)
}

/// Every function from `dom` to `cod`, in lexicographic order of the index tables.
pub fn all_functions<A: Element, B: Element>(
    dom: &FinSet<A>,
    cod: &FinSet<B>,
) -> Vec<SetFun<A, B>> {
    let tables = (0..dom.len())
        .map(|_| 0..cod.len())
        .multi_cartesian_product_or_unit();
    tables
        .into_iter()
        .map(|map| SetFun::from_indices(dom.clone(), cod.clone(), map))
        .collect()
}

trait MultiProductOrUnit {
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<usize>>;
}

impl<I: Iterator<Item = std::ops::Range<usize>>> MultiProductOrUnit for I {
    // itertools yields nothing for an empty family; the empty product has one element
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<usize>> {
        let ranges: Vec<_> = self.collect();
        if ranges.is_empty() {
            return vec![Vec::new()];
        }
        itertools::Itertools::multi_cartesian_product(ranges.into_iter()).collect()
    }
}

/// The canonical pullback `{(x, y) | f(x) = g(y)}` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback<X: Element, Y: Element> {
    pub object: FinSet<(X, Y)>,
    pub proj1: SetFun<(X, Y), X>,
    pub proj2: SetFun<(X, Y), Y>,
}

/// Canonical pullback of the cospan `f: X → Z ← Y: g`, ordered by `x` then `y`.
pub fn pullback<X: Element, Y: Element, Z: Element>(
    f: &SetFun<X, Z>,
    g: &SetFun<Y, Z>,
) -> Result<Pullback<X, Y>> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch);
    }
    let index = pullback_indices(f, g);
    let object: FinSet<(X, Y)> = index
        .iter()
        .map(|&(i, j)| {
            (
                f.dom.get(i).expect("in range").clone(),
                g.dom.get(j).expect("in range").clone(),
            )
        })
        .collect();
    let proj1 = SetFun::from_indices(
        object.clone(),
        f.dom.clone(),
        index.iter().map(|&(i, _)| i).collect(),
    );
    let proj2 = SetFun::from_indices(
        object.clone(),
        g.dom.clone(),
        index.iter().map(|&(_, j)| j).collect(),
    );
    Ok(Pullback {
        object,
        proj1,
        proj2,
    })
}

fn pullback_indices<X: Element, Y: Element, Z: Element>(
    f: &SetFun<X, Z>,
    g: &SetFun<Y, Z>,
) -> Vec<(usize, usize)> {
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); g.cod.len()];
    for (j, &z) in g.map.iter().enumerate() {
        fibres[z].push(j);
    }
    f.map
        .iter()
        .enumerate()
        .flat_map(|(i, &z)| fibres[z].iter().map(move |&j| (i, j)))
        .collect()
}

/// A commuting square
///
/// ```text
///   P --top--> X
///   |          |
///  left      right
///   v          v
///   Y --bot--> Z
/// ```
#[derive(Clone, Debug)]
pub struct SetSquare<P: Element, X: Element, Y: Element, Z: Element> {
    top: SetFun<P, X>,
    left: SetFun<P, Y>,
    right: SetFun<X, Z>,
    bottom: SetFun<Y, Z>,
}

impl<P: Element, X: Element, Y: Element, Z: Element> SetSquare<P, X, Y, Z> {
    /// Checks that the four maps line up and that the square commutes.
    pub fn new(
        top: SetFun<P, X>,
        left: SetFun<P, Y>,
        right: SetFun<X, Z>,
        bottom: SetFun<Y, Z>,
    ) -> Result<Self> {
        if top.dom != left.dom {
            return Err(Error::DomainMismatch("top and left must share the apex"));
        }
        if top.cod != right.dom {
            return Err(Error::DomainMismatch(
                "top must land in the domain of right",
            ));
        }
        if left.cod != bottom.dom {
            return Err(Error::DomainMismatch(
                "left must land in the domain of bottom",
            ));
        }
        if right.cod != bottom.cod {
            return Err(Error::CodomainMismatch);
        }
        for p in 0..top.dom.len() {
            if right.map[top.map[p]] != bottom.map[left.map[p]] {
                let label = top.dom.get(p).expect("in range");
                return Err(Error::NotCommuting(format!("{label:?}")));
            }
        }
        Ok(SetSquare {
            top,
            left,
            right,
            bottom,
        })
    }

    pub fn top(&self) -> &SetFun<P, X> {
        &self.top
    }

    pub fn left(&self) -> &SetFun<P, Y> {
        &self.left
    }

    pub fn right(&self) -> &SetFun<X, Z> {
        &self.right
    }

    pub fn bottom(&self) -> &SetFun<Y, Z> {
        &self.bottom
    }

    /// The same square with the two lower legs post-composed by `m`.
    pub fn extend_by<W: Element>(&self, m: &SetFun<Z, W>) -> Result<SetSquare<P, X, Y, W>> {
        SetSquare::new(
            self.top.clone(),
            self.left.clone(),
            self.right.then(m)?,
            self.bottom.then(m)?,
        )
    }
}

/// Outcome of [`check_pullback_square`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackReport<P, X, Y> {
    pub is_pullback: bool,
    /// Two distinct apex elements with the same image under both legs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collision: Option<(P, P)>,
    /// A compatible pair that the apex does not reach.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing: Option<(X, Y)>,
}

/// Decides whether a commuting square is a pullback.
///
/// The comparison map from the apex into the canonical pullback must be a
/// bijection. Witnesses are the first ones in enumeration order: the collision
/// is the pair `(p, q)` with the smallest `p` and then the smallest `q`, and the
/// missing element is the first unreached pair of the canonical pullback.
pub fn check_pullback_square<P: Element, X: Element, Y: Element, Z: Element>(
    square: &SetSquare<P, X, Y, Z>,
) -> PullbackReport<P, X, Y> {
    let index = pullback_indices(&square.right, &square.bottom);
    let mut position: HashMap<(usize, usize), usize> = HashMap::with_capacity(index.len());
    for (n, &pair) in index.iter().enumerate() {
        position.insert(pair, n);
    }

    let apex = square.top.dom();
    let mut first_hit: Vec<Option<usize>> = vec![None; index.len()];
    let mut collision: Option<(usize, usize)> = None;
    for p in 0..apex.len() {
        let key = (square.top.map[p], square.left.map[p]);
        let n = position[&key];
        match first_hit[n] {
            None => first_hit[n] = Some(p),
            Some(earlier) => {
                // groups are disjoint, so the lexicographically least pair has the least first entry
                if collision.is_none_or(|(c, _)| earlier < c) {
                    collision = Some((earlier, p));
                }
            }
        }
    }
    let missing = first_hit.iter().position(Option::is_none).map(|n| {
        let (i, j) = index[n];
        (
            square.right.dom.get(i).expect("in range").clone(),
            square.bottom.dom.get(j).expect("in range").clone(),
        )
    });
    let collision = collision.map(|(p, q)| {
        (
            apex.get(p).expect("in range").clone(),
            apex.get(q).expect("in range").clone(),
        )
    });
    PullbackReport {
        is_pullback: collision.is_none() && missing.is_none(),
        collision,
        missing,
    }
}

/// Checks that a square and its extension along the injection `m` agree on being a pullback.
///
/// Post-composing the lower legs with a mono does not change the canonical
/// pullback, so this is expected to hold for every input.
pub fn mono_reduction_check<P: Element, X: Element, Y: Element, Z: Element, W: Element>(
    inner: &SetSquare<P, X, Y, Z>,
    m: &SetFun<Z, W>,
) -> Result<bool> {
    if m.dom != inner.right.cod {
        return Err(Error::DomainMismatch(
            "m must start at the corner of the square",
        ));
    }
    if !is_mono(m) {
        return Err(Error::NotMono);
    }
    let outer = inner.extend_by(m)?;
    Ok(check_pullback_square(inner).is_pullback == check_pullback_square(&outer).is_pullback)
}
