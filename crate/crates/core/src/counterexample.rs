//! The parallel-pair functor on 2-computads does not preserve binary products.
//!
//! Take `A` with two 2-indets `a1, a2` and `B` with `b1, b2`, all on the
//! identity of a single vertex, and let `C` be the subcomputad of the terminal
//! 2-computad generated by its identity endo-indet `c`. Both `A` and `B` map to
//! `C`, and `A × B` is the pullback over `C` (and over the terminal object).
//! Applying the parallel-pair functor, the resulting square of sets is a
//! pullback iff the square of 2-cells
//!
//! ```text
//!   (A×B)_2 --(π_A)_2--> A_2
//!      |                  |
//!   (π_B)_2             α_2
//!      v                  v
//!     B_2 -----β_2-----> C_2
//! ```
//!
//! is one, and it is not: `<a1,b1>∘<a2,b2>` and `<a1,b2>∘<a2,b1>` are distinct
//! cells with the same two projections. Every map involved preserves degree,
//! so the checks below run on cells of bounded degree without losing anything.

use std::collections::HashMap;

use serde::Serialize;

use crate::cells2::{enumerate_cells, Degree, EHNormalForm};
use crate::computad::{
    bang_map, factor_through, pi2_inclusion_bounded, pi2_on_morphism_bounded, product2, pullback2,
    pullback2_over_terminal, subcomputad_generated, Computad2, Computad2Morphism, MapToTerminal,
    Span2, Subterminal, Terminal2Handle,
};
use crate::error::{Error, Result};
use crate::finset::{
    check_pullback_square, is_mono, mono_reduction_check, PullbackReport, SetSquare,
};

/// The objects and maps of the construction.
#[derive(Clone, Debug)]
pub struct PaperScene {
    pub a: Computad2,
    pub b: Computad2,
    pub c: Subterminal,
    pub product: Span2,
    pub alpha: Computad2Morphism,
    pub beta: Computad2Morphism,
    pub bang_a: MapToTerminal,
    pub bang_b: MapToTerminal,
}

impl PaperScene {
    /// The same construction with arbitrary generator names on each factor.
    pub fn with_generators(a_gens: &[&str], b_gens: &[&str]) -> Result<Self> {
        let a = Computad2::eh_bouquet(Terminal2Handle::VERTEX, a_gens.iter().copied())?;
        let b = Computad2::eh_bouquet(Terminal2Handle::VERTEX, b_gens.iter().copied())?;
        let c = subcomputad_generated(&Terminal2Handle, [Terminal2Handle::C]);
        let bang_a = bang_map(&a);
        let bang_b = bang_map(&b);
        let alpha = factor_through(&c, &bang_a)?;
        let beta = factor_through(&c, &bang_b)?;
        let product = product2(&a, &b);
        Ok(PaperScene {
            a,
            b,
            c,
            product,
            alpha,
            beta,
            bang_a,
            bang_b,
        })
    }

    /// The square of 2-cells of degree at most `max_degree`.
    pub fn cell_square(
        &self,
        max_degree: Degree,
    ) -> Result<SetSquare<EHNormalForm, EHNormalForm, EHNormalForm, EHNormalForm>> {
        SetSquare::new(
            self.product.left.cell_map(max_degree)?,
            self.product.right.cell_map(max_degree)?,
            self.alpha.cell_map(max_degree)?,
            self.beta.cell_map(max_degree)?,
        )
    }

    /// The parallel-pair functor applied to the inner square of the construction.
    pub fn pi2_square(
        &self,
        max_degree: Degree,
    ) -> Result<
        SetSquare<
            crate::computad::ParallelPair2,
            crate::computad::ParallelPair2,
            crate::computad::ParallelPair2,
            crate::computad::ParallelPair2,
        >,
    > {
        SetSquare::new(
            pi2_on_morphism_bounded(&self.product.left, max_degree)?,
            pi2_on_morphism_bounded(&self.product.right, max_degree)?,
            pi2_on_morphism_bounded(&self.alpha, max_degree)?,
            pi2_on_morphism_bounded(&self.beta, max_degree)?,
        )
    }
}

pub fn build_paper_objects() -> PaperScene {
    PaperScene::with_generators(&["a1", "a2"], &["b1", "b2"]).expect("closed-form construction")
}

/// Counts for the cells of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: Degree,
    /// Cells of `A × B` of this degree.
    pub product_cells: usize,
    /// Elements of the canonical pullback of `α_2, β_2` of this degree.
    pub pullback_elements: usize,
    /// How many of those the comparison map reaches.
    pub comparison_image: usize,
    /// Largest fibre of the comparison map.
    pub max_fiber: usize,
}

impl DegreeRow {
    pub fn is_surjective(&self) -> bool {
        self.comparison_image == self.pullback_elements
    }

    pub fn is_injective(&self) -> bool {
        self.max_fiber <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub degree_bound: Degree,
    pub star3_report: PullbackReport<EHNormalForm, EHNormalForm, EHNormalForm>,
    pub witness: Option<(EHNormalForm, EHNormalForm)>,
    pub projections_agree: bool,
    pub mono_check: bool,
    pub reduction_check: bool,
    pub cardinality_table: Vec<DegreeRow>,
}

impl CounterexampleReport {
    /// The report certifies non-preservation of the product.
    pub fn confirmed(&self) -> bool {
        !self.star3_report.is_pullback
            && self.witness.is_some()
            && self.projections_agree
            && self.mono_check
            && self.reduction_check
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    /// The parallel-pair image of the inclusion of `C` is injective.
    pub mono_check: bool,
    /// Extending the square along that injection does not change the verdict.
    pub reduction_check: bool,
    /// `A × B` is the pullback over `C` and over the terminal computad.
    pub inner_outer_pullbacks: bool,
}

/// Checks the cell square on cells of degree at most `max_degree` and extracts
/// the colliding pair.
pub fn verify_counterexample(max_degree: Degree) -> Result<CounterexampleReport> {
    verify_scene(&build_paper_objects(), max_degree)
}

/// [`verify_counterexample`] for an arbitrary scene.
pub fn verify_scene(scene: &PaperScene, max_degree: Degree) -> Result<CounterexampleReport> {
    if max_degree < 2 {
        return Err(Error::DegreeTooSmall(max_degree));
    }
    let square = scene.cell_square(max_degree)?;
    let star3_report = check_pullback_square(&square);
    let witness = star3_report.collision.clone();
    let projections_agree = witness.as_ref().is_some_and(|(p, q)| {
        square.top().apply(p) == square.top().apply(q)
            && square.left().apply(p) == square.left().apply(q)
    });
    let reductions = verify_scene_reductions(scene, max_degree)?;
    Ok(CounterexampleReport {
        degree_bound: max_degree,
        star3_report,
        witness,
        projections_agree,
        mono_check: reductions.mono_check,
        reduction_check: reductions.reduction_check,
        cardinality_table: cardinality_table(scene, max_degree)?,
    })
}

pub fn verify_reductions(max_degree: Degree) -> Result<ReductionReport> {
    verify_scene_reductions(&build_paper_objects(), max_degree)
}

pub fn verify_scene_reductions(scene: &PaperScene, max_degree: Degree) -> Result<ReductionReport> {
    let m = pi2_inclusion_bounded(&scene.c, max_degree)?;
    let mono_check = is_mono(&m);
    let reduction_check = mono_check && mono_reduction_check(&scene.pi2_square(max_degree)?, &m)?;

    let over_c = pullback2(&scene.alpha, &scene.beta)?;
    let over_terminal = pullback2_over_terminal(&scene.bang_a, &scene.bang_b);
    let same = |s: &Span2| {
        s.computad == scene.product.computad
            && s.left == scene.product.left
            && s.right == scene.product.right
    };
    Ok(ReductionReport {
        mono_check,
        reduction_check,
        inner_outer_pullbacks: same(&over_c) && same(&over_terminal),
    })
}

/// Per-degree sizes of the cell square's apex, its canonical pullback, and the
/// comparison map between them.
pub fn cardinality_table(scene: &PaperScene, max_degree: Degree) -> Result<Vec<DegreeRow>> {
    let square = scene.cell_square(max_degree)?;
    let product_by_degree = enumerate_cells(&scene.product.computad, max_degree)?;
    let a_cells = enumerate_cells(&scene.a, max_degree)?;
    let b_cells = enumerate_cells(&scene.b, max_degree)?;
    (0..=max_degree)
        .map(|n| {
            // α and β send every cell of degree n to c^n
            let mut fibers: HashMap<(&EHNormalForm, &EHNormalForm), usize> = HashMap::new();
            for p in &product_by_degree[n] {
                let x = square.top().apply(p).expect("apex cell");
                let y = square.left().apply(p).expect("apex cell");
                *fibers.entry((x, y)).or_insert(0) += 1;
            }
            let pullback_elements = a_cells[n]
                .iter()
                .flat_map(|x| b_cells[n].iter().map(move |y| (x, y)))
                .filter(|(x, y)| square.right().apply(x) == square.bottom().apply(y))
                .count();
            Ok(DegreeRow {
                degree: n,
                product_cells: product_by_degree[n].len(),
                pullback_elements,
                comparison_image: fibers.len(),
                max_fiber: fibers.values().copied().max().unwrap_or(0),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(gs: &[&str]) -> EHNormalForm {
        EHNormalForm::new("<x,x>", gs.iter().copied().collect())
    }

    #[test]
    fn scene_objects() {
        let s = build_paper_objects();
        assert_eq!(s.a.indets2().to_vec(), ["a1", "a2"]);
        assert!(s.a.skeleton().edges().is_empty());
        assert_eq!(s.a.skeleton().vertices().len(), 1);
        assert_eq!(
            s.product.computad.indets2().to_vec(),
            ["<a1,b1>", "<a1,b2>", "<a2,b1>", "<a2,b2>"]
        );
        assert_eq!(s.alpha.indet("a1").unwrap(), "c");
        assert_eq!(s.alpha.indet("a2").unwrap(), "c");
    }

    #[test]
    fn witness_at_degree_two() {
        let r = verify_counterexample(2).unwrap();
        assert!(!r.star3_report.is_pullback);
        assert_eq!(
            r.witness,
            Some((cell(&["<a1,b1>", "<a2,b2>"]), cell(&["<a1,b2>", "<a2,b1>"])))
        );
        assert!(r.projections_agree);
        assert_eq!(r.cardinality_table[2].product_cells, 10);
        assert_eq!(r.cardinality_table[2].pullback_elements, 9);
    }

    #[test]
    fn witness_is_stable_at_degree_three() {
        let r2 = verify_counterexample(2).unwrap();
        let r3 = verify_counterexample(3).unwrap();
        assert_eq!(r2.witness, r3.witness);
        assert_eq!(r3.cardinality_table[3].product_cells, 20);
        assert_eq!(r3.cardinality_table[3].pullback_elements, 16);
        assert!(r3.confirmed());
    }

    #[test]
    fn degree_bound_must_reach_the_witness() {
        assert_eq!(
            verify_counterexample(1).unwrap_err(),
            Error::DegreeTooSmall(1)
        );
    }

    #[test]
    fn reductions_hold() {
        let r = verify_reductions(3).unwrap();
        assert!(r.mono_check);
        assert!(r.reduction_check);
        assert!(r.inner_outer_pullbacks);
        assert!(verify_reductions(2).unwrap().reduction_check);
    }

    #[test]
    fn single_generator_factor_gives_a_pullback() {
        let s = PaperScene::with_generators(&["a1"], &["b1", "b2"]).unwrap();
        for k in 0..=5 {
            assert!(
                check_pullback_square(&s.cell_square(k).unwrap()).is_pullback,
                "k = {k}"
            );
        }
    }
}
