//! HTTP binding of the gateway.
//!
//! | method | path                       | body                              |
//! |--------|----------------------------|-----------------------------------|
//! | GET    | `/health`                  |                                   |
//! | POST   | `/sessions`                | optional `{"seed": n}`            |
//! | GET    | `/sessions/{id}`           |                                   |
//! | POST   | `/sessions/{id}/actions`   | `{"action": {...}, "expectedRevision"?: n}` |
//! | GET    | `/sessions/{id}/edgelist`  | returns `text/plain`              |
//! | PUT    | `/sessions/{id}/edgelist`  | edgelist text; `?expectedRevision=n` |
//! | POST   | `/rpc`                     | any [`Request`]                   |

use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;

use crate::gateway::Gateway;
use crate::protocol::{decode_str, GatewayError, Request, Response};

type Shared = Arc<Gateway>;

pub fn router(gateway: Shared) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(snapshot))
        .route("/sessions/{id}/actions", post(action))
        .route("/sessions/{id}/edgelist", get(export).put(import))
        .route("/rpc", post(rpc))
        .with_state(gateway)
}

fn reply(result: Result<Response, GatewayError>) -> HttpResponse {
    match result {
        Ok(r) => Json(r).into_response(),
        Err(e) => {
            let status = StatusCode::from_u16(e.status()).unwrap_or(StatusCode::BAD_REQUEST);
            (status, Json(e)).into_response()
        }
    }
}

async fn health(State(g): State<Shared>) -> HttpResponse {
    reply(g.route(Request::Health))
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CreateBody {
    #[serde(default)]
    seed: Option<u64>,
}

async fn create(State(g): State<Shared>, body: String) -> HttpResponse {
    let parsed = if body.trim().is_empty() {
        Ok(CreateBody::default())
    } else {
        decode_str::<CreateBody>(&body)
    };
    match parsed {
        Ok(CreateBody { seed }) => {
            let mut res = reply(g.route(Request::CreateSession { seed }));
            *res.status_mut() = StatusCode::CREATED;
            res
        }
        Err(e) => reply(Err(e)),
    }
}

async fn snapshot(State(g): State<Shared>, Path(id): Path<String>) -> HttpResponse {
    reply(g.route(Request::GetSnapshot { session_id: id }))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ActionBody {
    action: serde_json::Value,
    #[serde(default)]
    expected_revision: Option<u64>,
}

async fn action(State(g): State<Shared>, Path(id): Path<String>, body: String) -> HttpResponse {
    reply(decode_str::<ActionBody>(&body).and_then(|b| {
        g.route(Request::PostAction {
            session_id: id,
            action: b.action,
            expected_revision: b.expected_revision,
        })
    }))
}

async fn export(State(g): State<Shared>, Path(id): Path<String>) -> HttpResponse {
    match g.route(Request::ExportEdgelist { session_id: id }) {
        Ok(Response::Edgelist { text, revision, .. }) => (
            [
                (header::CONTENT_TYPE, "text/plain; charset=utf-8".to_string()),
                (header::ETAG, format!("\"{revision}\"")),
            ],
            text,
        )
            .into_response(),
        other => reply(other),
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ImportQuery {
    expected_revision: Option<u64>,
}

async fn import(
    State(g): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<ImportQuery>,
    text: String,
) -> HttpResponse {
    reply(g.route(Request::ImportEdgelist {
        session_id: id,
        text,
        expected_revision: q.expected_revision,
    }))
}

async fn rpc(State(g): State<Shared>, body: String) -> HttpResponse {
    reply(g.route_json(&body))
}
