//! HTTP transport. Every route builds the same JSON request the stdio
//! transport accepts and returns the same envelope.

use std::io;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::Router;
use serde_json::{Map, Value};
use witchbayes::session::protocol::ErrorBody;
use witchbayes::session::{Response, SessionService};

type Shared = Arc<SessionService>;

pub fn serve(service: SessionService, bind: &str) -> io::Result<()> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(bind).await?;
        // The first stdout line announces the address; tests bind port 0.
        println!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(service))).await
    })
}

pub fn router(service: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id/:op", post(command))
        .route("/sessions/:id/:op", get(query))
        .route("/rpc", post(rpc))
        .with_state(service)
}

fn reply(resp: Response) -> HttpResponse {
    let status = StatusCode::from_u16(resp.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [("content-type", "application/json")], resp.to_json()).into_response()
}

fn body_object(body: &[u8]) -> Result<Map<String, Value>, Response> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(Map::new());
    }
    match serde_json::from_slice(body) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Response::err(ErrorBody::bad_request("request body must be a JSON object"))),
        Err(e) => Err(Response::err(ErrorBody::bad_request(e.to_string()))),
    }
}

fn dispatch(service: &SessionService, op: &str, session: Option<String>, body: &[u8]) -> HttpResponse {
    let mut fields = match body_object(body) {
        Ok(map) => map,
        Err(resp) => return reply(resp),
    };
    fields.insert("op".into(), Value::String(op.into()));
    if let Some(id) = session {
        fields.insert("session".into(), Value::String(id));
    }
    reply(service.handle_json(&Value::Object(fields).to_string()))
}

async fn create(State(service): State<Shared>, body: Bytes) -> HttpResponse {
    dispatch(&service, "create_session", None, &body)
}

async fn command(State(service): State<Shared>, Path((id, op)): Path<(String, String)>, body: Bytes) -> HttpResponse {
    match op.as_str() {
        "observe" | "next_day" | "serve" | "what_if" | "reset" => dispatch(&service, &op, Some(id), &body),
        _ => not_found(&op),
    }
}

async fn query(State(service): State<Shared>, Path((id, op)): Path<(String, String)>) -> HttpResponse {
    match op.as_str() {
        "state" | "network" | "reveal" => dispatch(&service, &op, Some(id), b""),
        _ => not_found(&op),
    }
}

async fn rpc(State(service): State<Shared>, body: Bytes) -> HttpResponse {
    match std::str::from_utf8(&body) {
        Ok(text) => reply(service.handle_json(text)),
        Err(e) => reply(Response::err(ErrorBody::bad_request(e.to_string()))),
    }
}

fn not_found(op: &str) -> HttpResponse {
    reply(Response::err(ErrorBody::new(404, "unknown_route", format!("no operation {op:?}"))))
}
