//! Computads up to dimension 3 with decidable cell equality in the
//! Eckmann–Hilton fragment.
//!
//! The crate builds 2-computads from presentations, computes their products
//! and pullbacks, enumerates cells by degree, applies the parallel-pair functor
//! on bounded cell sets, and checks pullback squares in finite sets. The
//! [`counterexample`] module uses all of this to show that the parallel-pair
//! functor on 2-computads does not preserve binary products.

pub mod cells2;
pub mod computad;
pub mod counterexample;
pub mod enumerate;
pub mod error;
pub mod finset;
pub mod freecat;

pub use cells2::{
    boundary, enumerate_cells, eq_cells, is_eh_class, normalize, Boundary2, Cell2Term, Degree,
    EHNormalForm, Multiset,
};
pub use computad::{
    all_morphisms, bang_map, factor_through, i2, is_computad2_morphism, pi2_bounded,
    pi2_inclusion_bounded, pi2_on_morphism_bounded, product2, product3, pullback2,
    pullback2_over_terminal, subcomputad_generated, tr2, validate_computad2, Com3Object, Computad2,
    Computad2Morphism, MapToTerminal, ParallelPair2, Span2, Subterminal, Terminal2Handle,
    TerminalCell,
};
pub use error::{Error, Result};
pub use finset::{
    all_functions, check_pullback_square, is_epi, is_mono, mono_reduction_check, pullback, FinSet,
    PullbackReport, SetFun, SetSquare,
};
pub use freecat::{
    all_graph_morphisms, graph_product, is_graph_morphism, pair_paths, path_compose, Graph,
    GraphMorphism, GraphProduct, Path,
};
