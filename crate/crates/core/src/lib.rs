//! Exact computations around Andrews-Curtis style moves on two-generator
//! presentations: free-group words, Laurent polynomials in `X`, `Y`, the
//! winding invariant of a commutator word, Fox derivatives, matrices over
//! `Z[X^±1, Y^±1]`, and normal-closure certificates.

pub mod certificates;
pub mod counterexample;
mod exec;
pub mod foxcalc;
pub mod laurent;
pub mod matrices;
pub mod presentations;
pub mod report;
pub mod sampling;
pub mod winding;
pub mod words;

pub use certificates::{Certificate, CertificateBounds, Congruence, Sign, Step};
pub use exec::Execution;
pub use foxcalc::{boundary_d2, fox_derivative, GroupRingElement};
pub use laurent::{parse_laurent, LaurentPoly};
pub use matrices::{evans_matrix, GEFactor, LaurentMatrix};
pub use presentations::{Endomorphism, Move, Presentation, SearchBounds, SearchOutcome};
pub use winding::{lambda_vector, winding_grid_oracle, winding_invariant};
pub use words::{parse_word, Generator, Letter, Word};
