//! Network gateway and command line for the flowtutor session engine.
//!
//! [`gateway::Gateway::route`] is the transport-independent core: it maps a
//! [`protocol::Request`] to a [`protocol::Response`] against an in-memory
//! [`store::SessionStore`]. [`http`] binds it to axum and [`cli`] wraps the
//! whole thing in a `flowtutor` binary.

pub mod cli;
pub mod gateway;
pub mod http;
pub mod protocol;
pub mod store;

pub use gateway::Gateway;
pub use protocol::{GatewayError, Request, Response};
