//! Interactive day-by-day games over a scenario.
//!
//! A session is an append-only event log; its state is a fold over the
//! events. [`SessionService`] holds many sessions and answers the JSON
//! request protocol in [`protocol`], which every transport shares.

pub mod protocol;
mod service;
mod state;

pub use protocol::{Mode, Request, Response, ScenarioSpec, SequenceSpec};
pub use service::{load_log, ServiceConfig, SessionService, ENABLE_REVEAL_ENV, SESSION_DIR_ENV};
pub use state::{DecisionEntry, Event, HistoryEntry, Session};
