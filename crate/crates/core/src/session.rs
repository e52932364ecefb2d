//! One performance of the trick as a phase-tracked state machine.
//!
//! ```text
//! Tangling --reveal--> Revealed --magician move--> Untangling --invariant 0--> Solved
//! ```
//!
//! Revealing an invariant of 0, or a magician move that lands on 0, passes
//! straight through to `Solved`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::projrat::ProjRat;
use crate::random;
use crate::solver;
use crate::tangle::{act, TangleState};
use crate::words::{Letter, Move};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Tangling,
    Revealed,
    Untangling,
    Solved,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Tangling => "tangling",
            Phase::Revealed => "revealed",
            Phase::Untangling => "untangling",
            Phase::Solved => "solved",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Caller,
    Assistant,
    Magician,
    Audience,
}

impl Role {
    /// Whether this role may see the current invariant in `phase`.
    pub fn sees_invariant(self, phase: Phase) -> bool {
        match self {
            Role::Assistant => true,
            Role::Magician => phase != Phase::Tangling,
            Role::Caller | Role::Audience => phase == Phase::Solved,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Caller => "caller",
            Role::Assistant => "assistant",
            Role::Magician => "magician",
            Role::Audience => "audience",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown role {0:?}")]
pub struct UnknownRole(pub String);

impl FromStr for Role {
    type Err = UnknownRole;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "caller" => Ok(Role::Caller),
            "assistant" => Ok(Role::Assistant),
            "magician" => Ok(Role::Magician),
            "audience" => Ok(Role::Audience),
            _ => Err(UnknownRole(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("wrong phase: cannot {action} while {phase}")]
    WrongPhase { action: &'static str, phase: Phase },
    #[error("inverse move {0} is not allowed during a performance")]
    InverseMove(Move),
    #[error("the {0} does not call moves")]
    RoleCannotMove(Role),
    #[error("invariant is already 0, nothing to untangle")]
    NothingToUntangle,
    #[error("the assistant may not stop before {required} caller moves (have {performed})")]
    TooEarlyToStop { required: usize, performed: usize },
    #[error("session record is inconsistent: {0}")]
    Corrupt(String),
}

/// When the assistant is allowed to call stop in scripted performances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopPolicy {
    pub min_caller_moves: usize,
}

impl Default for StopPolicy {
    fn default() -> Self {
        Self { min_caller_moves: 5 }
    }
}

impl StopPolicy {
    pub fn may_stop(&self, caller_moves: usize) -> bool {
        caller_moves >= self.min_caller_moves
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub role: Role,
    #[serde(rename = "move")]
    pub letter: Move,
    pub invariant: ProjRat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub role: Role,
    #[serde(rename = "move")]
    pub letter: Move,
    pub invariant: Option<ProjRat>,
}

/// What one role is allowed to see of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Snapshot {
    pub id: String,
    pub phase: Phase,
    pub invariant: Option<ProjRat>,
    pub move_log: Vec<SnapshotEntry>,
    pub revealed: Option<ProjRat>,
    pub synthetic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrickSession {
    id: String,
    phase: Phase,
    state: TangleState,
    revealed: Option<ProjRat>,
    move_log: Vec<LogEntry>,
    rng_seed: u64,
}

impl TrickSession {
    /// A fresh performance starting from the untangle.
    pub fn new(id: impl Into<String>, seed: u64) -> Self {
        Self {
            id: id.into(),
            phase: Phase::Tangling,
            state: TangleState::untangle(),
            revealed: None,
            move_log: Vec::new(),
            rng_seed: seed,
        }
    }

    /// A pre-built tangle presented with its fraction; untangling starts at once.
    ///
    /// The state has no history and is marked synthetic.
    pub fn from_invariant(id: impl Into<String>, seed: u64, x: ProjRat) -> Self {
        let phase = if x.is_zero() { Phase::Solved } else { Phase::Revealed };
        Self {
            id: id.into(),
            phase,
            state: TangleState::starting_at(x.clone()),
            revealed: Some(x),
            move_log: Vec::new(),
            rng_seed: seed,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn state(&self) -> &TangleState {
        &self.state
    }

    pub fn invariant(&self) -> &ProjRat {
        self.state.invariant()
    }

    pub fn revealed(&self) -> Option<&ProjRat> {
        self.revealed.as_ref()
    }

    pub fn move_log(&self) -> &[LogEntry] {
        &self.move_log
    }

    pub fn seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn caller_moves(&self) -> usize {
        self.move_log.iter().filter(|e| e.role == Role::Caller).count()
    }

    fn require(&self, action: &'static str, allowed: &[Phase]) -> Result<(), SessionError> {
        if allowed.contains(&self.phase) {
            Ok(())
        } else {
            Err(SessionError::WrongPhase { action, phase: self.phase })
        }
    }

    fn record(&mut self, role: Role, m: Move) -> &ProjRat {
        self.state.apply(m);
        self.move_log.push(LogEntry { role, letter: m, invariant: self.state.invariant().clone() });
        self.state.invariant()
    }

    pub fn caller_move(&mut self, m: Move) -> Result<&ProjRat, SessionError> {
        self.require("call a move", &[Phase::Tangling])?;
        if m.is_inverse() {
            return Err(SessionError::InverseMove(m));
        }
        Ok(self.record(Role::Caller, m))
    }

    /// The next move of the seeded random caller.
    pub fn random_caller_move(&mut self) -> Result<Move, SessionError> {
        let m = random::caller_move(self.rng_seed, self.caller_moves() as u64);
        self.caller_move(m)?;
        Ok(m)
    }

    /// The assistant calls stop and tells the magician the current invariant.
    pub fn reveal(&mut self) -> Result<ProjRat, SessionError> {
        self.require("reveal", &[Phase::Tangling])?;
        let x = self.state.invariant().clone();
        self.revealed = Some(x.clone());
        self.phase = if x.is_zero() { Phase::Solved } else { Phase::Revealed };
        Ok(x)
    }

    pub fn magician_move(&mut self, m: Move) -> Result<&ProjRat, SessionError> {
        self.require("untangle", &[Phase::Revealed, Phase::Untangling])?;
        if m.is_inverse() {
            return Err(SessionError::InverseMove(m));
        }
        self.record(Role::Magician, m);
        self.phase = if self.state.invariant().is_zero() { Phase::Solved } else { Phase::Untangling };
        Ok(self.state.invariant())
    }

    /// First letter of the magician's procedure from the current invariant.
    pub fn hint(&self) -> Result<Move, SessionError> {
        self.require("hint", &[Phase::Revealed, Phase::Untangling, Phase::Solved])?;
        solver::hint(self.state.invariant()).ok_or(SessionError::NothingToUntangle)
    }

    /// Dispatches a move by the role that calls it.
    pub fn perform(&mut self, role: Role, m: Move) -> Result<&ProjRat, SessionError> {
        match role {
            Role::Caller => self.caller_move(m),
            Role::Magician => self.magician_move(m),
            other => Err(SessionError::RoleCannotMove(other)),
        }
    }

    pub fn snapshot(&self, role: Role) -> Snapshot {
        let visible = role.sees_invariant(self.phase);
        let gate = |x: &ProjRat| visible.then(|| x.clone());
        Snapshot {
            id: self.id.clone(),
            phase: self.phase,
            invariant: gate(self.state.invariant()),
            move_log: self
                .move_log
                .iter()
                .map(|e| SnapshotEntry { role: e.role, letter: e.letter, invariant: gate(&e.invariant) })
                .collect(),
            revealed: self.revealed.as_ref().and_then(gate),
            synthetic: self.state.is_synthetic(),
        }
    }

    /// Replays the move log from the starting invariant and checks it
    /// reproduces every logged value and the current state.
    pub fn audit(&self) -> Result<(), SessionError> {
        let mut x = self.state.origin().clone();
        for (i, e) in self.move_log.iter().enumerate() {
            x = act(&x, e.letter);
            if x != e.invariant {
                return Err(SessionError::Corrupt(format!("entry {i} logs {} but replay gives {x}", e.invariant)));
            }
        }
        if &x != self.state.invariant() {
            return Err(SessionError::Corrupt(format!("state holds {} but replay gives {x}", self.state.invariant())));
        }
        self.state.check_bridge().map_err(|e| SessionError::Corrupt(e.to_string()))
    }

    /// The persisted form of this session.
    pub fn record_view(&self) -> SessionRecord {
        SessionRecord {
            id: self.id.clone(),
            seed: self.rng_seed,
            phase: self.phase,
            origin: self.state.origin().clone(),
            revealed: self.revealed.clone(),
            move_log: self.move_log.clone(),
        }
    }

    /// Rebuilds a session by replaying a record, rejecting any record that
    /// could not have been produced by the state machine.
    pub fn replay(record: SessionRecord) -> Result<Self, SessionError> {
        let corrupt = |m: &str| SessionError::Corrupt(format!("{}: {m}", record.id));
        let mut session = if record.origin.is_zero() {
            TrickSession::new(record.id.clone(), record.seed)
        } else {
            TrickSession::from_invariant(record.id.clone(), record.seed, record.origin.clone())
        };
        for e in &record.move_log {
            if e.role == Role::Magician && session.phase == Phase::Tangling {
                session.reveal()?;
            }
            session.perform(e.role, e.letter)?;
            if session.invariant() != &e.invariant {
                return Err(corrupt("logged invariant differs from replay"));
            }
        }
        if session.phase == Phase::Tangling && record.phase != Phase::Tangling {
            session.reveal()?;
        }
        if session.phase != record.phase {
            return Err(corrupt("phase differs from replay"));
        }
        if session.revealed != record.revealed {
            return Err(corrupt("revealed fraction differs from replay"));
        }
        Ok(session)
    }
}

/// Serializable session contents; the live state is recomputed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionRecord {
    pub id: String,
    pub seed: u64,
    pub phase: Phase,
    #[serde(default = "ProjRat::zero")]
    pub origin: ProjRat,
    pub revealed: Option<ProjRat>,
    pub move_log: Vec<LogEntry>,
}

/// A complete scripted performance: a seeded random caller makes
/// `tangle_len` moves, the assistant reveals, and the magician follows hints.
pub fn simulate(seed: u64, tangle_len: usize, policy: StopPolicy) -> Result<TrickSession, SessionError> {
    if !policy.may_stop(tangle_len) {
        return Err(SessionError::TooEarlyToStop { required: policy.min_caller_moves, performed: tangle_len });
    }
    let mut session = TrickSession::new(format!("sim-{seed}"), seed);
    for _ in 0..tangle_len {
        session.random_caller_move()?;
    }
    session.reveal()?;
    while session.phase() != Phase::Solved {
        let m = session.hint()?;
        session.magician_move(m)?;
    }
    Ok(session)
}
