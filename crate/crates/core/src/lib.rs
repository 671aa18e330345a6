//! Perfect state transfer on graphs with switchable edges.
//!
//! The crate simulates continuous-time quantum walks on simple graphs,
//! composes perfect transfers of small gadgets into schedules, builds and
//! certifies larger networks, and solves and verifies multi-token routing
//! problems.

pub mod builder;
pub mod catalog;
pub mod engineering;
pub mod graph;
pub mod hilbert;
pub mod io;
pub mod routing;
pub mod spectral;

pub use builder::{
    certify_network, ppst_exact, ppst_upper_bound, procedure1, procedure2, GadgetLibrary, NetworkCertificate,
    Placement, PlacementIndex, PstNumberCertificate,
};
pub use engineering::{
    correct_durations, round_unitary_entry, simulate_schedule, Gadget, GadgetKind, Round, Schedule, TokenState,
    TransportTrace,
};
pub use graph::{disjoint_union, glue, mask, metrics, Graph, GraphError, GraphMetrics, SubgraphMask, VertexId};
pub use hilbert::{build_xy_hamiltonian, cross_check, CrossCheck};
pub use routing::{
    classical_feasible, render_table, solve, verify_table, Cell, Itinerary, Net, RoutingError, RoutingProblem,
    RoutingTable, SolveMode, VerificationReport,
};
pub use spectral::{
    amplitude, check_pst, find_pst_pairs, find_pst_time, AmplitudeReport, PstCertificate, DEFAULT_TOLERANCE,
};
