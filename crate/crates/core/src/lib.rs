//! Step-checked Ford-Fulkerson tutoring engine.
//!
//! The crate models flow networks with integer capacities, computes residual
//! graphs and augmentations, finds augmenting paths with three strategies
//! (random DFS, shortest, widest), verifies minimum cuts, and wraps all of it
//! in [`session::SessionState`], a state machine that checks every step a
//! student takes while running the algorithm by hand.
//!
//! ```
//! use flowtutor::fixtures::diamond;
//! use flowtutor::strategy::{solve, Strategy};
//! use flowtutor::cut::find_min_cut;
//!
//! let net = diamond();
//! assert_eq!(solve(&net, Strategy::Shortest).unwrap().value, 5);
//! assert_eq!(find_min_cut(&net).unwrap().capacity, 5);
//! ```

pub mod cut;
pub mod edgelist;
pub mod fixtures;
pub mod flow;
pub mod layout;
pub mod network;
pub mod session;
pub mod strategy;

pub use cut::{cut_capacity, find_min_cut, validate_cut, Cut, CutVerdict};
pub use edgelist::{parse_edgelist, serialize_edgelist};
pub use flow::{augment, bottleneck, check_flow, flow_value, residual_graph, Flow, Path, ResidualGraph};
pub use network::{validate_network, Capacity, FlowNetwork, NodeId};
pub use session::{apply_action, new_session, Action, SessionState, Snapshot, StepFeedback};
pub use strategy::{solve, SolveResult, Strategy, StrategyName};
