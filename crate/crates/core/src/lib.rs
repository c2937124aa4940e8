//! Triangular line graphs: the operator, preimage search and certificates,
//! the gadget library and the 3-SAT reduction built from it.

pub mod error;
pub mod gadget;
pub mod graph;
pub mod io;
pub mod iso;
pub mod le;
pub mod sat;
pub mod search;
pub mod tlg;

pub use error::{GadgetError, GraphError, ParseError, SatError, SearchError, WitnessError};
pub use gadget::{GadgetBlueprint, SubGadget, Template};
pub use graph::{Graph, Triangle, VertexLabel};
pub use sat::{Assignment, CnfFormula, Decision, ReductionOutput};
pub use search::{SearchLimits, TlgDecision};
pub use tlg::{triangular_line_graph, verify_certificate, PreimageWitness, TlgResult};
