//! 3-computads presented as a 2-computad plus 3-indets with parallel-pair boundaries.

use indexmap::IndexMap;

use super::{product2, Computad2, ParallelPair2};
use crate::cells2::{eh_violation, normalize, Cell2Term, EHNormalForm, Multiset};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::freecat::pair_label;

/// A 3-computad over an Eckmann–Hilton base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Com3Object {
    base: Computad2,
    indets3: FinSet<String>,
    boundary3: Vec<ParallelPair2>,
}

impl Com3Object {
    pub fn new<I>(base: Computad2, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, ParallelPair2)>,
    {
        if let Some(reason) = eh_violation(&base) {
            return Err(Error::NotEHClass(reason));
        }
        let gens: Vec<_> = gens.into_iter().collect();
        for (name, pair) in &gens {
            for cell in [&pair.first, &pair.second] {
                check_cell(&base, cell).map_err(|reason| Error::InvalidCom3 {
                    indet: name.clone(),
                    reason,
                })?;
            }
        }
        let indets3 = FinSet::from_distinct(gens.iter().map(|(n, _)| n.clone()))?;
        Ok(Com3Object {
            base,
            indets3,
            boundary3: gens.into_iter().map(|(_, p)| p).collect(),
        })
    }

    /// Builds the object from boundary terms, normalizing them against `base`.
    pub fn from_terms<I>(base: Computad2, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Cell2Term, Cell2Term)>,
    {
        let gens = gens
            .into_iter()
            .map(|(name, s, t)| {
                let pair = ParallelPair2::new(normalize(&s, &base)?, normalize(&t, &base)?)
                    .map_err(|e| Error::InvalidCom3 {
                        indet: name.clone(),
                        reason: e.to_string(),
                    })?;
                Ok((name, pair))
            })
            .collect::<Result<Vec<_>>>()?;
        Com3Object::new(base, gens)
    }

    pub fn base(&self) -> &Computad2 {
        &self.base
    }

    pub fn indets3(&self) -> &FinSet<String> {
        &self.indets3
    }

    pub fn boundary_of(&self, name: &str) -> Option<&ParallelPair2> {
        self.indets3
            .index_of(&name.to_owned())
            .map(|i| &self.boundary3[i])
    }

    pub fn generators(&self) -> impl Iterator<Item = (&String, &ParallelPair2)> + '_ {
        self.indets3.iter().zip(&self.boundary3)
    }
}

fn check_cell(base: &Computad2, cell: &EHNormalForm) -> std::result::Result<(), String> {
    if !base.skeleton().has_vertex(&cell.vertex) {
        return Err(format!("unknown vertex `{}`", cell.vertex));
    }
    for (g, _) in cell.content.entries() {
        let b = base
            .boundary_of(g)
            .ok_or_else(|| format!("unknown 2-generator `{g}`"))?;
        if b.src.source() != cell.vertex {
            return Err(format!("`{g}` does not live at `{}`", cell.vertex));
        }
    }
    Ok(())
}

/// Forgets the 3-indets.
pub fn tr2(m: &Com3Object) -> Computad2 {
    m.base.clone()
}

/// The 3-computad with no 3-indets over `a`.
pub fn i2(a: &Computad2) -> Result<Com3Object> {
    Com3Object::new(a.clone(), [])
}

/// Binary product of 3-computads.
///
/// A pair of 3-indets survives when both its source cells and its target
/// cells can be paired into a cell of the product base, which in this fragment
/// means equal degrees. The pairing zips the sorted occurrence lists.
pub fn product3(m: &Com3Object, n: &Com3Object) -> Result<Com3Object> {
    let base = product2(&m.base, &n.base).computad;
    let mut gens = IndexMap::new();
    for (u, bu) in m.generators() {
        for (v, bv) in n.generators() {
            let (Some(first), Some(second)) = (
                realize_pair(&bu.first, &bv.first),
                realize_pair(&bu.second, &bv.second),
            ) else {
                continue;
            };
            gens.insert(pair_label(u, v), ParallelPair2::new(first, second)?);
        }
    }
    Com3Object::new(base, gens)
}

fn realize_pair(a: &EHNormalForm, b: &EHNormalForm) -> Option<EHNormalForm> {
    if a.degree() != b.degree() {
        return None;
    }
    let content: Multiset = a
        .content
        .occurrences()
        .zip(b.content.occurrences())
        .map(|(x, y)| pair_label(x, y))
        .collect();
    Some(EHNormalForm::new(pair_label(&a.vertex, &b.vertex), content))
}
