//! Wire messages. Field names here are a published contract; the golden file
//! in `schema/` pins them.

use flowtutor::session::{Finding, Snapshot};
use flowtutor::Action;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One gateway request. Over HTTP each endpoint builds one of these; the
/// `/rpc` endpoint accepts them directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Request {
    CreateSession {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    GetSnapshot {
        session_id: String,
    },
    /// `action` stays raw JSON until routing so that a malformed action is
    /// reported with the path of the offending field.
    PostAction {
        session_id: String,
        action: serde_json::Value,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_revision: Option<u64>,
    },
    ImportEdgelist {
        session_id: String,
        text: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected_revision: Option<u64>,
    },
    ExportEdgelist {
        session_id: String,
    },
    Health,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reply", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Response {
    Session {
        session_id: String,
        revision: u64,
        snapshot: Snapshot,
    },
    Step {
        session_id: String,
        revision: u64,
        accepted: bool,
        findings: Vec<Finding>,
        /// `findings` rendered as text, in the same order.
        messages: Vec<String>,
        /// Top-level snapshot fields the step changed.
        changed: Vec<String>,
        snapshot: Snapshot,
    },
    Edgelist {
        session_id: String,
        revision: u64,
        text: String,
    },
    Health {
        status: String,
        sessions: usize,
    },
}

impl Response {
    pub fn revision(&self) -> Option<u64> {
        match self {
            Response::Session { revision, .. }
            | Response::Step { revision, .. }
            | Response::Edgelist { revision, .. } => Some(*revision),
            Response::Health { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "error", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum GatewayError {
    #[error("no session {session_id}")]
    NotFound { session_id: String },
    /// `field` is a dotted path into the request body, `.` for the body
    /// itself.
    #[error("bad request at {field}: {message}")]
    BadRequest { field: String, message: String },
    #[error("stale revision {expected}; session is at {current}")]
    Conflict { expected: u64, current: u64 },
}

impl GatewayError {
    /// HTTP status code for the error.
    pub fn status(&self) -> u16 {
        match self {
            GatewayError::NotFound { .. } => 404,
            GatewayError::BadRequest { .. } => 400,
            GatewayError::Conflict { .. } => 409,
        }
    }
}

/// Deserializes an [`Action`], naming the failing field as `action.<name>`.
pub fn decode_action(value: serde_json::Value) -> Result<Action, GatewayError> {
    decode_tagged(value, "type", "action")
}

/// Parses a [`Request`] body, naming the failing field.
pub fn decode_request(body: &str) -> Result<Request, GatewayError> {
    let value: serde_json::Value = serde_json::from_str(body).map_err(|e| bad_field("", ".", &e))?;
    decode_tagged(value, "op", "")
}

/// Deserializes an internally tagged enum, naming the failing field.
///
/// serde buffers internally tagged enums, which loses the path of the
/// failing field; it is recovered by checking the tag first and, for type
/// errors, by finding the field whose removal changes the error.
fn decode_tagged<T: serde::de::DeserializeOwned>(
    value: serde_json::Value,
    tag: &str,
    prefix: &str,
) -> Result<T, GatewayError> {
    let err = match serde_json::from_value::<T>(value.clone()) {
        Ok(v) => return Ok(v),
        Err(e) => e,
    };
    let message = err.to_string();
    let at = |field: &str| GatewayError::BadRequest {
        field: if prefix.is_empty() {
            field.to_string()
        } else {
            format!("{prefix}.{field}")
        },
        message: message.clone(),
    };
    let Some(obj) = value.as_object() else {
        return Err(bad_field(prefix, ".", &err));
    };
    if !obj.get(tag).is_some_and(|t| t.is_string()) || message.starts_with("unknown variant") {
        return Err(at(tag));
    }
    if let Some(name) = message
        .strip_prefix("missing field `")
        .and_then(|r| r.split('`').next())
    {
        return Err(at(name));
    }
    for key in obj.keys().filter(|k| *k != tag) {
        let mut probe = obj.clone();
        probe.remove(key);
        match serde_json::from_value::<T>(serde_json::Value::Object(probe)) {
            Ok(_) => return Err(at(key)),
            Err(e) if e.to_string().starts_with(&format!("missing field `{key}`")) => return Err(at(key)),
            Err(_) => {}
        }
    }
    Err(bad_field(prefix, ".", &err))
}

/// Parses a JSON body as `T`, naming the failing field on error.
pub fn decode_str<T: serde::de::DeserializeOwned>(body: &str) -> Result<T, GatewayError> {
    let de = &mut serde_json::Deserializer::from_str(body);
    serde_path_to_error::deserialize(de).map_err(|e| bad_field("", &e.path().to_string(), e.inner()))
}

fn bad_field(prefix: &str, path: &str, inner: &serde_json::Error) -> GatewayError {
    let field = match (prefix, path) {
        ("", p) => p.to_string(),
        (pre, "") | (pre, ".") => pre.to_string(),
        (pre, p) => format!("{pre}.{p}"),
    };
    GatewayError::BadRequest {
        field,
        message: inner.to_string(),
    }
}
