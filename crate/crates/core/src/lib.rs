//! Egalitarian and Owen-type values for cooperative games with a priori
//! unions.
//!
//! The game model ([`TuGame`], [`Partition`], [`UnionGame`]) and every value
//! are generic over a [`Scalar`]. Use the [`Rational`] aliases for exact
//! results; the axiom checkers in [`axioms`] decide identities with `==` and
//! are only meaningful for exact scalars.

pub mod allocation;
pub mod axioms;
pub mod base;
pub mod coalition;
pub mod coalitional;
pub mod document;
pub mod error;
pub mod game;
pub mod partition;
pub mod rational;
pub mod scalar;
pub mod search;

pub use allocation::Allocation;
pub use axioms::{Axiom, AxiomReport, Verdict, Witness};

pub use base::{banzhaf, ed, esd, shapley, Base, BaseValue};
pub use coalition::{Coalition, MAX_PLAYERS};
pub use coalitional::{
    banzhaf_owen, ed_u, esd1_u, esd2_u, esd3_u, esd4_u, esd5_u, esd5_weight, modified_game, owen,
    owen_procedure, reduced_game, CoalitionalValue,
};

pub use document::{
    parse_game, serialize_game, DocumentError, DocumentMode, GameDocument, ValidationReason,
};
pub use error::GameError;
pub use game::{TuGame, WorthMode};
pub use partition::{Partition, UnionGame};
pub use scalar::Scalar;
pub use search::{
    axiom_matrix, claimed, known_discrepancy, search_counterexample, sweep_counterexample,
    sweep_spaces, AxiomMatrix, CellStatus, MatrixCell, SearchError, SearchSpace, WorthRange,
};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// A game with exact worths.
pub type Game = TuGame<Rational>;
/// A game with a priori unions and exact worths.
pub type Coalitional = UnionGame<Rational>;
/// An exact payoff vector.
pub type Payoffs = Allocation<Rational>;

pub type GameF64 = TuGame<f64>;
pub type CoalitionalF64 = UnionGame<f64>;
pub type PayoffsF64 = Allocation<f64>;
