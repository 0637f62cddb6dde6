use thiserror::Error;

use crate::diagram::Color;

/// Errors raised while building or normalizing diagrams.
#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),

    #[error("diagram is not connected")]
    Disconnected,

    #[error("sector enumeration limit exceeded: i-deg {ideg} > limit {limit}")]
    EnumerationLimit { ideg: usize, limit: usize },

    #[error("truncation bounds differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("recoloring map is undefined on occurring color {0}")]
    UnmappedColor(Color),

    #[error("series has a nonzero empty-diagram coefficient; exp_union needs none")]
    ExpOnUnit,

    #[error("series must have empty-diagram coefficient 1, found {0}")]
    LogWithoutUnit(String),

    #[error("series contains strut monomials where none are allowed")]
    UnexpectedStrut,

    #[error("monomial is not in reduced normal form")]
    NotNormalForm,
}

/// Errors raised by contraction brackets and Gaussian integration.
#[derive(Debug, Error)]
pub enum PairingError {
    #[error("neither side of the bracket is substantial in the gluing colors")]
    NotSubstantial,

    #[error("strut matrix is not symmetric")]
    NotSymmetric,

    #[error("strut matrix is singular; the Gaussian is degenerate")]
    Singular,

    #[error("matrix indexed by {expected} colors, got {found}")]
    ColorMismatch { expected: String, found: String },

    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Errors raised by the top-substantial category operations.
#[derive(Debug, Error)]
pub enum TsError {
    #[error("arity mismatch: left element has source {left}, right element has target {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("truncation bounds differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("strut matrix has a nonzero entry in the plus/plus block at ({0}, {1})")]
    NotTopSubstantial(Color, Color),

    #[error("strut matrix colors do not match arities g={g}, f={f}")]
    BadMatrixShape { g: usize, f: usize },

    #[error("Y-part contains a strut monomial")]
    StrutInYPart,

    #[error("Y-part colored outside the declared arities: {0}")]
    ForeignColor(Color),

    #[error("element must have empty-diagram coefficient 1 to be invertible")]
    NotUnital,

    #[error(transparent)]
    Diagram(#[from] DiagramError),

    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// Parse errors for the textual notations, with a byte position.
#[derive(Debug, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct NotationError {
    pub pos: usize,
    pub msg: String,
}

impl NotationError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        NotationError {
            pos,
            msg: msg.into(),
        }
    }
}

/// Errors raised by the generator table machinery.
#[derive(Debug, Error)]
pub enum TableError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error(transparent)]
    Parse(#[from] NotationError),

    #[error("table entry `{name}` violates an invariant: {why}")]
    Invariant { name: String, why: String },

    #[error("table fails relation `{relation}`")]
    RelationFailure { relation: String },

    #[error(transparent)]
    Ts(#[from] TsError),
}

/// Errors raised by the cobordism expression language.
#[derive(Debug, Error)]
pub enum LangError {
    #[error(transparent)]
    Parse(#[from] NotationError),

    #[error("type error at byte {pos}: composition mismatch: top word of the later factor is {left_top}, bottom word of the earlier factor is {right_bottom}")]
    WordMismatch {
        pos: usize,
        left_top: String,
        right_bottom: String,
    },

    #[error("requested truncation {requested} exceeds the table truncation {table}")]
    TruncationTooLarge { requested: usize, table: usize },

    #[error(transparent)]
    Table(#[from] TableError),

    #[error(transparent)]
    Ts(#[from] TsError),
}
