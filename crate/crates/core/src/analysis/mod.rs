//! Checks of symmetry claims on constructed diagrams, and identification.

mod batch;
mod catalog;
mod certificate;
mod checks;
mod sqrt;

pub use batch::{
    batch_verify, evaluate, manifest_entries, BatchOptions, BatchReport, BatchRow, BatchSummary, Built, Kind,
    RowStatus, Source,
};
pub use catalog::{identify, Candidate, Catalog, CatalogEntry, Chirality, Fingerprint};
pub use certificate::{certify_spa, CertificateFailure, SymmetryCertificate};
pub use checks::{check_amphicheiral_necessary, check_union_det, AmphicheiralReport};
pub use sqrt::{poly_sqrt, sqrt_up_to_units};
