use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: unknown chunk tag `{tag}`")]
    UnknownTag { line: usize, tag: String },

    #[error("invalid chunk tag `{0}`")]
    InvalidTag(String),

    #[error("invalid token: {0}")]
    InvalidToken(String),

    #[error("invalid sentence: {0}")]
    InvalidSentence(String),

    #[error("invalid chunk spans: {0}")]
    InvalidSpans(String),

    #[error("corpus mixes tagged and untagged sentences (sentence {sentence})")]
    MixedTagging { sentence: usize },

    #[error("corpus is not chunk-tagged (sentence {sentence})")]
    Untagged { sentence: usize },

    #[error("empty training corpus")]
    EmptyCorpus,

    #[error("tree syntax error at line {line}, column {column}: {message}")]
    TreeSyntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("corpus mismatch at sentence {sentence}{}: {message}", token.map(|t| format!(", token {t}")).unwrap_or_default())]
    Mismatch {
        sentence: usize,
        token: Option<usize>,
        message: String,
    },

    #[error("head rules line {line}: {message}")]
    HeadRules { line: usize, message: String },

    #[error("model line {line}: {message}")]
    Model { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
