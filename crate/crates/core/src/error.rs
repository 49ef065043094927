use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfError {
    #[error("invalid argument identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("argument index {0} out of range")]
    UnknownIndex(usize),
    #[error("instance has {size} arguments, brute force is limited to {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("cannot shrink to {target} {what}: only {current} present")]
    AdaptTarget {
        what: &'static str,
        target: usize,
        current: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown instance format `{0}`")]
    UnknownFormat(String),
    #[error("line {line}: malformed header: {message}")]
    Header { line: usize, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: attack references undeclared argument `{id}`")]
    UndeclaredArgument { line: usize, id: String },
    #[error("line {line}: duplicate argument declaration `{id}`")]
    DuplicateArgument { line: usize, id: String },
    #[error("line {line}: extension mentions unknown argument `{id}`")]
    UnknownExtensionArgument { line: usize, id: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("extension is not conflict-free: `{attacker}` attacks `{target}`")]
    NotConflictFree { attacker: String, target: String },
    #[error("OUT argument #{0} has no attacker in IN")]
    UncoveredOut(usize),
    #[error("red groups are not consecutive in the OUT layer (source #{0})")]
    GroupsNotConsecutive(usize),
    #[error("drawing is not a permutation of layer {layer}: {message}")]
    InvalidDrawing {
        layer: &'static str,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("solution is not a valid ordering: {0}")]
    InvalidSolution(String),
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    UnsupportedVersion(u32),
    #[error("argument `{0}` appears in more than one layer")]
    DuplicateId(String),
    #[error("edge {source_id} -> {target} references an argument outside the layers")]
    UnknownId { source_id: String, target: String },
    #[error("edge {source_id} -> {target} is tagged {class} but joins {expected}")]
    ClassMismatch {
        source_id: String,
        target: String,
        class: String,
        expected: String,
    },
    #[error("display classes are inconsistent: {0}")]
    Annotations(String),
    #[error("invalid drawing: {0}")]
    Drawing(#[from] LayoutError),
    #[error("embedded report differs from the recount")]
    ReportMismatch,
}
