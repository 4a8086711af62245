use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use super::protocol::{ErrorBody, Request, Response};
use super::state::{Event, Session};

/// Environment variable naming the directory for session event logs.
pub const SESSION_DIR_ENV: &str = "WITCHES_SESSION_DIR";
/// Environment variable that enables the `reveal` debug request when set to `1`.
pub const ENABLE_REVEAL_ENV: &str = "WITCHES_ENABLE_REVEAL";

#[derive(Clone, Debug, Default)]
pub struct ServiceConfig {
    /// Append-only `<id>.jsonl` event logs live here when set.
    pub log_dir: Option<PathBuf>,
    pub enable_reveal: bool,
}

impl ServiceConfig {
    pub fn from_env() -> Self {
        ServiceConfig {
            log_dir: std::env::var_os(SESSION_DIR_ENV).map(PathBuf::from),
            enable_reveal: std::env::var(ENABLE_REVEAL_ENV).is_ok_and(|v| v == "1"),
        }
    }
}

struct Store {
    sessions: BTreeMap<String, Arc<Mutex<Session>>>,
    next_id: u64,
}

/// Session store and request dispatcher. Sessions are independent; the
/// commands of one session run one at a time under its own lock.
pub struct SessionService {
    config: ServiceConfig,
    store: Mutex<Store>,
}

fn io_error(e: std::io::Error) -> ErrorBody {
    ErrorBody::new(500, "io", e.to_string())
}

impl SessionService {
    /// Creates the service, replaying any event logs already in the log
    /// directory.
    pub fn new(config: ServiceConfig) -> Result<Self, ErrorBody> {
        let mut store = Store { sessions: BTreeMap::new(), next_id: 1 };
        if let Some(dir) = &config.log_dir {
            fs::create_dir_all(dir).map_err(io_error)?;
            let mut paths: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(io_error)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
                .collect();
            paths.sort();
            for path in paths {
                let session = load_log(&path)?;
                if let Some(n) = session.id().strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
                    store.next_id = store.next_id.max(n + 1);
                }
                store.sessions.insert(session.id().to_string(), Arc::new(Mutex::new(session)));
            }
        }
        Ok(SessionService { config, store: Mutex::new(store) })
    }

    pub fn in_memory() -> Self {
        SessionService::new(ServiceConfig::default()).expect("no log directory to read")
    }

    pub fn session_ids(&self) -> Vec<String> {
        self.store.lock().expect("store lock").sessions.keys().cloned().collect()
    }

    /// Parses one JSON request and dispatches it; malformed input is a 400.
    pub fn handle_json(&self, text: &str) -> Response {
        match serde_json::from_str::<Request>(text) {
            Ok(req) => self.handle(req),
            Err(e) => Response::err(ErrorBody::bad_request(e.to_string())),
        }
    }

    pub fn handle(&self, req: Request) -> Response {
        match self.dispatch(req) {
            Ok(resp) => resp,
            Err(e) => Response::err(e),
        }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ErrorBody> {
        let store = self.store.lock().expect("store lock");
        store.sessions.get(id).cloned().ok_or_else(|| ErrorBody::unknown_session(id))
    }

    fn persist(&self, id: &str, event: &Event) -> Result<(), ErrorBody> {
        let Some(dir) = &self.config.log_dir else {
            return Ok(());
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(log_path(dir, id))
            .map_err(io_error)?;
        let line = serde_json::to_string(event).expect("event serializes");
        writeln!(file, "{line}").map_err(io_error)
    }

    /// Applies `event` and appends it to the log, under the session lock.
    fn command(&self, id: &str, event: Event) -> Result<Response, ErrorBody> {
        let handle = self.session(id)?;
        let mut session = handle.lock().expect("session lock");
        session.apply(event.clone())?;
        self.persist(id, &event)?;
        Ok(Response::ok(session.state_view()?))
    }

    fn dispatch(&self, req: Request) -> Result<Response, ErrorBody> {
        match req {
            Request::CreateSession { scenario, mode, seed } => {
                let scenario = scenario.resolve()?;
                let mut store = self.store.lock().expect("store lock");
                let n = store.next_id;
                let id = format!("s{n:04}");
                // the session number doubles as the default seed
                let seed = match mode {
                    super::Mode::Simulated => Some(seed.unwrap_or(n)),
                    super::Mode::Manual => seed,
                };
                let session = Session::create(id.clone(), scenario, mode, seed);
                self.persist(&id, &session.events()[0])?;
                let view = session.state_view()?;
                store.next_id += 1;
                store.sessions.insert(id, Arc::new(Mutex::new(session)));
                Ok(Response::ok(view))
            }
            Request::Observe { session, hat } => self.command(&session, Event::Observed { hat }),
            Request::NextDay { session } => self.command(&session, Event::DayStarted),
            Request::Reset { session } => self.command(&session, Event::Reset),
            Request::Serve { session: id, food } => {
                let handle = self.session(&id)?;
                let mut session = handle.lock().expect("session lock");
                let outcome = session.apply_serve(&food)?;
                self.persist(&id, &Event::Served { food })?;
                Ok(Response::ok(outcome))
            }
            Request::State { session } => {
                let handle = self.session(&session)?;
                let view = handle.lock().expect("session lock").state_view()?;
                Ok(Response::ok(view))
            }
            Request::WhatIf { session, suffix } => {
                let handle = self.session(&session)?;
                let session = handle.lock().expect("session lock");
                let suffix = suffix.resolve(session.scenario())?;
                Ok(Response::ok(session.what_if(&suffix)?))
            }
            Request::Network { session } => {
                let handle = self.session(&session)?;
                let diagram = handle.lock().expect("session lock").network()?;
                Ok(Response::ok(diagram))
            }
            Request::Reveal { session } => {
                if !self.config.enable_reveal {
                    return Err(ErrorBody::new(403, "forbidden", "reveal is disabled"));
                }
                let handle = self.session(&session)?;
                let view = handle.lock().expect("session lock").reveal();
                Ok(Response::ok(view))
            }
        }
    }
}

fn log_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.jsonl"))
}

/// Reads an event log and folds it into a session.
pub fn load_log(path: &Path) -> Result<Session, ErrorBody> {
    let file = fs::File::open(path).map_err(io_error)?;
    let events = BufReader::new(file)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|line| {
            let line = line.map_err(io_error)?;
            serde_json::from_str::<Event>(&line).map_err(|e| ErrorBody::bad_request(format!("{}: {e}", path.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Session::replay(&events)
}
