//! Constructions on approximation tables: the layer decomposition of n-c.e.
//! sets, c.e. sets with prescribed limsup density, nested c.e. pairs, the
//! modulus and density transfer, and the stagewise transfer certificate.

mod cebuild;
mod certificate;
mod decompose;
mod modulus;
mod pair;
mod transfer;

pub use cebuild::{build_ce_density, van_der_corput_order, BlockSchedule};
pub use certificate::{certify_fce, ElementRecord, TransferCertificate};
pub use decompose::{decompose_nce, Decomposition};
pub use modulus::{modulus, LevelRecord, ModulusPrefix, ModulusStop};
pub use pair::{build_difference_pair, DifferencePair};
pub use transfer::{transfer, TrackingRow, Transfer};
