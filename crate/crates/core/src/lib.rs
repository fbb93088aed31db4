//! Enumeration and classification of dessins d'enfants on a fixed bipartite
//! graph.

pub mod bgraph;
pub mod classify;
pub mod dessin;
pub mod graphgenus;
pub mod io;
pub mod perm;
pub mod permgroup;
pub mod rotation;
mod serde_biguint;

pub use bgraph::{
    parse_bipartite, parse_plain, BipartiteGraph, EdgeActionGroup, GraphError, GraphPassport,
    PlainGraph,
};
pub use classify::{
    analyze, classify, ClassificationReport, ClassifyError, ClassifyOptions, DessinRecord,
    MirrorStatus, PairAnalysis,
};
pub use dessin::{DessinError, DessinInvariants, DessinPassport, MonodromyFingerprint};
pub use graphgenus::{genus_histogram, genus_range, GenusError, GenusRange};
pub use io::{parse_report, serialize_report, Format, ReportDocument, ReportError};
pub use perm::{CycleType, PermError, Permutation};
pub use permgroup::{GroupError, PermGroup, DEFAULT_ELEMENT_CAP};
pub use rotation::{RotationError, RotationPair, RotationSpace};
