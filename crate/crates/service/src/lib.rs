//! HTTP/JSON access to trick sessions.
//!
//! | method | path                      | body / query                 |
//! |--------|---------------------------|------------------------------|
//! | POST   | `/sessions`               | `{"seed", "fraction"?}`      |
//! | POST   | `/sessions/{id}/moves`    | `{"role", "move"}`           |
//! | POST   | `/sessions/{id}/reveal`   |                              |
//! | GET    | `/sessions/{id}`          | `?role=caller|assistant|magician|audience` |
//! | GET    | `/sessions/{id}/hint`     |                              |
//!
//! Every mutation and read answers with a role-gated session snapshot, except
//! the hint which answers `{"move": "T"|"R"}`. Errors are `{"error": ...}` with
//! 400 for malformed input, 404 for unknown sessions and 409 for phase or
//! role violations.

mod routes;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::http::HeaderValue;
use axum::Router;
use thiserror::Error;
use tower_http::cors::{Any, CorsLayer};

pub use routes::{ApiError, HintResponse};
pub use store::{Store, StoreError};

#[derive(Debug, Default, Clone)]
pub struct ServiceConfig {
    pub persist: Option<PathBuf>,
    /// Allowed browser origin; any origin when unset.
    pub cors_origin: Option<String>,
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("invalid CORS origin {0:?}")]
    Origin(String),
    #[error("server: {0}")]
    Io(#[from] std::io::Error),
}

pub fn router(store: Arc<Store>, cors_origin: Option<&str>) -> Result<Router, ServiceError> {
    let cors = match cors_origin {
        None => CorsLayer::new().allow_origin(Any),
        Some(origin) => {
            let value = HeaderValue::from_str(origin).map_err(|_| ServiceError::Origin(origin.to_string()))?;
            CorsLayer::new().allow_origin(value)
        }
    }
    .allow_methods(Any)
    .allow_headers(Any);
    Ok(routes::routes().with_state(store).layer(cors))
}

pub async fn build(config: &ServiceConfig) -> Result<Router, ServiceError> {
    let store = match &config.persist {
        Some(path) => Store::open(path).await?,
        None => Store::in_memory(),
    };
    router(Arc::new(store), config.cors_origin.as_deref())
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> Result<(), ServiceError> {
    let app = build(&config).await?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, app).await?;
    Ok(())
}
