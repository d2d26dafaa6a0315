//! Transport-independent request routing.

use std::time::Duration;

use flowtutor::{Action, SessionState};

use crate::protocol::{decode_action, decode_request, GatewayError, Request, Response};
use crate::store::{Entry, SessionStore};

#[derive(Debug, Default)]
pub struct Gateway {
    store: SessionStore,
}

impl Gateway {
    pub fn new(idle_timeout: Duration) -> Self {
        Gateway {
            store: SessionStore::new(idle_timeout),
        }
    }

    pub fn store(&self) -> &SessionStore {
        &self.store
    }

    pub fn route(&self, request: Request) -> Result<Response, GatewayError> {
        match request {
            Request::Health => Ok(Response::Health {
                status: "ok".to_string(),
                sessions: self.store.len(),
            }),
            Request::CreateSession { seed } => {
                let seed = seed.unwrap_or_else(|| uuid::Uuid::new_v4().as_u64_pair().0);
                let id = self.store.create(seed);
                self.session(&id, |e| Ok(snapshot_reply(&id, e)))
            }
            Request::GetSnapshot { session_id } => self.session(&session_id, |e| Ok(snapshot_reply(&session_id, e))),
            Request::PostAction {
                session_id,
                action,
                expected_revision,
            } => {
                let action = decode_action(action)?;
                self.act(&session_id, &action, expected_revision)
            }
            Request::ImportEdgelist {
                session_id,
                text,
                expected_revision,
            } => self.act(&session_id, &Action::ImportGraph { text }, expected_revision),
            Request::ExportEdgelist { session_id } => self.session(&session_id, |e| {
                Ok(Response::Edgelist {
                    session_id: session_id.clone(),
                    revision: e.revision,
                    text: flowtutor::serialize_edgelist(&e.state.net),
                })
            }),
        }
    }

    /// Parses a JSON request body and routes it.
    pub fn route_json(&self, body: &str) -> Result<Response, GatewayError> {
        self.route(decode_request(body)?)
    }

    /// Copy of a session's full state, for inspection.
    pub fn state(&self, session_id: &str) -> Option<SessionState> {
        self.store.with_session(session_id, |e| e.state.clone())
    }

    fn session(
        &self,
        id: &str,
        f: impl FnOnce(&mut Entry) -> Result<Response, GatewayError>,
    ) -> Result<Response, GatewayError> {
        self.store.with_session(id, f).unwrap_or_else(|| {
            Err(GatewayError::NotFound {
                session_id: id.to_string(),
            })
        })
    }

    fn act(&self, id: &str, action: &Action, expected: Option<u64>) -> Result<Response, GatewayError> {
        self.session(id, |entry| {
            if let Some(expected) = expected.filter(|&r| r != entry.revision) {
                return Err(GatewayError::Conflict {
                    expected,
                    current: entry.revision,
                });
            }
            let feedback = entry.state.apply(action);
            if feedback.accepted && !feedback.changed.is_empty() {
                entry.revision += 1;
            }
            Ok(Response::Step {
                session_id: id.to_string(),
                revision: entry.revision,
                accepted: feedback.accepted,
                messages: feedback.messages(),
                findings: feedback.findings,
                changed: feedback.changed,
                snapshot: entry.state.snapshot(),
            })
        })
    }
}

fn snapshot_reply(id: &str, e: &Entry) -> Response {
    Response::Session {
        session_id: id.to_string(),
        revision: e.revision,
        snapshot: e.state.snapshot(),
    }
}
