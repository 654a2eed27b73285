//! Clique-colorings of perfect graphs.
//!
//! A clique-coloring assigns colors to vertices so that no maximal clique
//! with at least two vertices is monochromatic. This crate builds the
//! expansion towers of perfect graphs that need many colors, computes and
//! verifies clique-colorings, decides perfection on small graphs, and
//! evaluates the probabilistic bounds behind the construction.

pub mod bitset;
pub mod bounds;
pub mod cliques;
pub mod coloring;
pub mod combinatorics;
pub mod error;
pub mod expansion;
pub mod generators;
pub mod graph;
pub mod lemma6;
pub mod perfection;
pub mod rng;

pub use bitset::BitSet;
pub use coloring::{
    clique_chromatic_number, construct_tower_coloring, verify_clique_coloring, CliqueChromatic,
    CliqueColoring, ColoringVerdict,
};
pub use error::{Error, Result};
pub use expansion::{
    build_tower, expand_at_clique, universal_expansion, ExpansionSpec, Petal, TowerRequest,
    TowerTrace,
};
pub use graph::{glue_along_clique, Graph, GraphBuilder};
pub use perfection::{find_clique_cutset, is_perfect, Method as PerfectionMethod, PerfectionVerdict};
