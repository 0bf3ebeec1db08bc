//! Spectral analysis of digraphs.
//!
//! Computes singular values and trace norms of the adjacency, Laplacian
//! and signless Laplacian matrices of digraphs, evaluates closed-form
//! spectra for directed paths, directed cycles and oriented stars, and
//! searches small orders exhaustively for cospectral mates.

pub mod arclist;
pub mod closed_forms;
pub mod determination;
pub mod digraph;
pub mod eigen;
pub mod enumerate;
pub mod fixtures;
pub mod iso;
pub mod matrix;
pub mod verify;

pub use digraph::{Digraph, DigraphError};
pub use eigen::{MatrixKind, SingularSpectrum};
pub use matrix::Matrix;
