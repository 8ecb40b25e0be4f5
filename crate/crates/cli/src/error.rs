use std::fmt;
use std::path::Path;

use linkhom::diagram::DiagramError;
use linkhom::group::{GroupError, WordError};
use linkhom::invariants::InvariantError;
use linkhom::moves::{MoveError, ScriptError};
use linkhom::LinkDiagram;
use serde::de::DeserializeOwned;

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Degenerate(String),
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::Degenerate(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::Degenerate(m) => write!(f, "degenerate geometry: {m}"),
            CliError::Mismatch(m) => write!(f, "oracle mismatch: {m}"),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Degenerate(_) => CliError::Degenerate(e.to_string()),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<ScriptError> for CliError {
    fn from(e: ScriptError) -> Self {
        match e.error {
            MoveError::Diagram(DiagramError::Degenerate(_)) => CliError::Degenerate(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Diagram(d) => d.into(),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Diagram(d) => d.into(),
            InvariantError::Script(s) => s.into(),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let at = e.path().to_string();
        CliError::Malformed(format!("{}: at {at}: {}", path.display(), e.inner()))
    })
}

/// Rejects closures from a group other than the surface's, naming the field.
pub fn check_groups(d: &LinkDiagram, prefix: &str) -> Result<(), CliError> {
    let want = d.surface.group();
    for (name, comp) in [("comp1", &d.comp1), ("comp2", &d.comp2)] {
        let found = comp.closure.group();
        if found != want {
            return Err(CliError::Malformed(format!(
                "at {prefix}{name}.closure: surface is {} but closure is in the {found} group",
                d.surface.group()
            )));
        }
    }
    Ok(())
}
