//! Weight systems on chord diagrams, 4-invariants of graphs and
//! delta-matroids, and the Hopf algebras they live on.

pub mod acceptance;
pub mod deltamatroids;
pub mod diagrams;
pub mod graphs;
pub mod hopf;
pub mod invariants;
pub mod lie;
pub mod poly;
pub mod ribbon;

pub use diagrams::{ChordDiagram, Permutation, Share};
pub use graphs::FramedGraph;
pub use poly::{parse_poly, MPoly, Monomial, PolyError, Rat, TruncSeries, Var};
pub use ribbon::RibbonGraph;
