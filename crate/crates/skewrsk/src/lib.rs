//! Skew RSK dynamics, cylindric growth, crystals and the identities they prove.

pub mod biword;
pub mod crystal;
pub mod cylinder;
pub mod golden;
pub mod greene;
pub mod knuth;
pub mod leading;
pub mod error;
pub mod gen;
pub mod partition;
pub mod rmatrix;
pub mod rowcoord;
pub mod scattering;
pub mod symfunc;
pub mod rsk;
pub mod tableau;
pub mod vst;

pub use biword::{CylinderPoint, Entry, MatrixBar, WeightedBiword};
pub use error::{Error, Result};
pub use partition::{rectangular_decomposition, Partition, RectBlock};
pub use rowcoord::{kernel, kernel_pair, overlap, rc_decode, rc_encode, RowCoordMatrix};
pub use tableau::{Letter, ReadingMode, Row, SkewTableau};
pub use vst::{ColumnTensor, Vst};
pub use rsk::{iota1, iota1_inverse, iota2, iota2_inverse, run_dynamics, skew_rsk, skew_rsk_inverse, stabilize_backward, stabilize_forward, TableauPair};
