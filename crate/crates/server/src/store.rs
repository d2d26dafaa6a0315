//! In-memory session store with per-session locks and idle expiry.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use flowtutor::SessionState;

pub const DEFAULT_IDLE_TIMEOUT: Duration = Duration::from_secs(24 * 60 * 60);

#[derive(Debug)]
pub struct Entry {
    pub state: SessionState,
    /// Bumped every time an accepted action changes the snapshot.
    pub revision: u64,
    last_used: Instant,
}

#[derive(Debug)]
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Arc<Mutex<Entry>>>>,
    idle_timeout: Duration,
}

// A panic inside the engine cannot leave a half-applied action behind, since
// actions are applied to a copy; recovering a poisoned lock is therefore safe.
fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionStore {
    pub fn new(idle_timeout: Duration) -> Self {
        SessionStore {
            sessions: Mutex::new(HashMap::new()),
            idle_timeout,
        }
    }

    pub fn idle_timeout(&self) -> Duration {
        self.idle_timeout
    }

    pub fn create(&self, seed: u64) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let entry = Entry {
            state: SessionState::with_seed(seed),
            revision: 0,
            last_used: Instant::now(),
        };
        lock(&self.sessions).insert(id.clone(), Arc::new(Mutex::new(entry)));
        id
    }

    /// Runs `f` with exclusive access to the session, or returns `None` if
    /// it does not exist or has been idle too long.
    pub fn with_session<R>(&self, id: &str, f: impl FnOnce(&mut Entry) -> R) -> Option<R> {
        let cell = lock(&self.sessions).get(id).cloned()?;
        let mut entry = lock(&cell);
        let now = Instant::now();
        if now.duration_since(entry.last_used) > self.idle_timeout {
            drop(entry);
            self.remove_if_same(id, &cell);
            return None;
        }
        entry.last_used = now;
        Some(f(&mut entry))
    }

    fn remove_if_same(&self, id: &str, cell: &Arc<Mutex<Entry>>) {
        let mut sessions = lock(&self.sessions);
        if sessions.get(id).is_some_and(|c| Arc::ptr_eq(c, cell)) {
            sessions.remove(id);
        }
    }

    /// Drops every idle session and returns how many were dropped.
    pub fn purge_expired(&self) -> usize {
        let now = Instant::now();
        let mut sessions = lock(&self.sessions);
        let before = sessions.len();
        // A session locked by a running action is in use, so it is kept.
        sessions.retain(|_, cell| match cell.try_lock() {
            Ok(entry) => now.duration_since(entry.last_used) <= self.idle_timeout,
            Err(_) => true,
        });
        before - sessions.len()
    }

    pub fn len(&self) -> usize {
        lock(&self.sessions).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::new(DEFAULT_IDLE_TIMEOUT)
    }
}
