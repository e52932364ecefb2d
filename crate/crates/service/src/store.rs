//! In-memory session store with optional JSON snapshot persistence.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tangle_core::session::SessionRecord;
use tangle_core::{ProjRat, SessionError, TrickSession};
use thiserror::Error;
use tokio::sync::{Mutex, RwLock};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parsing {path}: {source}")]
    Format { path: PathBuf, source: serde_json::Error },
    #[error("replaying persisted session: {0}")]
    Replay(#[from] SessionError),
}

#[derive(Serialize, Deserialize)]
struct PersistedFile {
    sessions: Vec<SessionRecord>,
}

/// Sessions keyed by id. Each session has its own lock so mutations of one
/// session are serialized while different sessions proceed in parallel.
pub struct Store {
    sessions: RwLock<HashMap<String, Arc<Mutex<TrickSession>>>>,
    persist: Option<PathBuf>,
    // serializes snapshot writes
    write_lock: Mutex<()>,
}

impl Store {
    pub fn in_memory() -> Self {
        Self { sessions: RwLock::default(), persist: None, write_lock: Mutex::new(()) }
    }

    /// Opens a store backed by `path`, replaying any sessions already saved there.
    pub async fn open(path: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let path = path.into();
        let mut sessions = HashMap::new();
        match tokio::fs::read(&path).await {
            Ok(bytes) => {
                let file: PersistedFile = serde_json::from_slice(&bytes)
                    .map_err(|source| StoreError::Format { path: path.clone(), source })?;
                for record in file.sessions {
                    let session = TrickSession::replay(record)?;
                    sessions.insert(session.id().to_string(), Arc::new(Mutex::new(session)));
                }
                tracing::info!(count = sessions.len(), path = %path.display(), "restored sessions");
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(StoreError::Io { path, source }),
        }
        Ok(Self { sessions: RwLock::new(sessions), persist: Some(path), write_lock: Mutex::new(()) })
    }

    pub fn persist_path(&self) -> Option<&Path> {
        self.persist.as_deref()
    }

    pub async fn create(&self, seed: u64, start: Option<ProjRat>) -> Arc<Mutex<TrickSession>> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = match start {
            Some(x) => TrickSession::from_invariant(id.clone(), seed, x),
            None => TrickSession::new(id.clone(), seed),
        };
        let handle = Arc::new(Mutex::new(session));
        self.sessions.write().await.insert(id, handle.clone());
        handle
    }

    pub async fn get(&self, id: &str) -> Option<Arc<Mutex<TrickSession>>> {
        self.sessions.read().await.get(id).cloned()
    }

    /// Writes every session to the persistence file, if any. Callers must not
    /// hold a session lock.
    pub async fn save(&self) -> Result<(), StoreError> {
        let Some(path) = &self.persist else { return Ok(()) };
        let _guard = self.write_lock.lock().await;
        let handles: Vec<_> = self.sessions.read().await.values().cloned().collect();
        let mut sessions = Vec::with_capacity(handles.len());
        for h in handles {
            sessions.push(h.lock().await.record_view());
        }
        sessions.sort_by(|a, b| a.id.cmp(&b.id));
        let bytes = serde_json::to_vec_pretty(&PersistedFile { sessions })
            .map_err(|source| StoreError::Format { path: path.clone(), source })?;
        let tmp = path.with_extension("tmp");
        let io = |source| StoreError::Io { path: path.clone(), source };
        tokio::fs::write(&tmp, bytes).await.map_err(io)?;
        tokio::fs::rename(&tmp, path).await.map_err(io)?;
        Ok(())
    }
}
