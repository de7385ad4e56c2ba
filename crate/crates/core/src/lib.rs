//! Ice-quiver mutation and maximal green sequences for the quivers of the
//! twice-punctured genus-`n` torus.
//!
//! * [`quiver`]: exchange matrices, mutation, framing, vertex colors.
//! * [`family`]: the torus quivers `Q_{T_n}`, the oriented cycle, and the
//!   named sequences `σ_i`, `τ_i`, the cycle sequence and the full
//!   maximal green sequence of length `24n - 4`.
//! * [`engine`]: replaying sequences with color traces, maximality reports.
//! * [`search`]: bounded exhaustive search, used as an independent check.
//! * [`format`]: JSON quiver documents and Graphviz output.
//! * [`server`]: the HTTP session API behind the browser explorer.

pub mod engine;
pub mod error;
pub mod family;
pub mod format;
pub mod labels;
pub mod quiver;
pub mod search;
pub mod server;

pub use engine::{apply_sequence, check_sequence, coframe_check, coframe_permutation, Mode, SequenceReport, Trace};
pub use error::{EngineError, FamilyError, FormatError, QuiverError};
pub use family::{
    build_cycle_quiver, build_torus_quiver, cycle_sequence, theorem_sequence, CycleFamily, Family,
    MutationSequence, Provenance, TorusFamily, VertexLabel,
};
pub use format::{deserialize, serialize, to_dot};
pub use labels::LabelMap;
pub use quiver::{Arrow, IceQuiver, VertexColor};
pub use search::{search_mgs, SearchMode, SearchReport};
