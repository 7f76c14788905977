//! One-line bracketed chunk notation: `[NP He/PRP ] [VP reckons/VBZ ] ./.`
//!
//! Tokens are `word/POS`, split at the last slash. Chunks open with `[TYPE`
//! and close with a lone `]`.

use crate::chunk_model::{encode_bio, ChunkSpan, ChunkType};
use crate::conll_io::{Sentence, Token};
use crate::error::{Error, Result};

/// Render a tagged sentence; ill-formed tags are read with repair semantics.
pub fn format_brackets(sentence: &Sentence) -> Result<String> {
    let spans = sentence
        .chunks()
        .ok_or_else(|| Error::InvalidSentence("sentence has no chunk tags".into()))?;
    let mut spans = spans.iter().peekable();
    let mut parts = Vec::with_capacity(sentence.len() + 2);
    for (i, token) in sentence.tokens().iter().enumerate() {
        if let Some(span) = spans.peek().filter(|s| s.start == i) {
            parts.push(format!("[{}", span.chunk_type));
        }
        parts.push(format!("{}/{}", token.word(), token.pos()));
        if spans.peek().is_some_and(|s| s.end == i + 1) {
            parts.push("]".to_owned());
            spans.next();
        }
    }
    Ok(parts.join(" "))
}

pub fn parse_brackets(line: &str) -> Result<Sentence> {
    let bad = |message: String| Error::InvalidSentence(message);
    let mut tokens = Vec::new();
    let mut spans = Vec::new();
    let mut open: Option<(ChunkType, usize)> = None;
    for item in line.split_whitespace() {
        if item == "]" {
            let (chunk_type, start) = open
                .take()
                .ok_or_else(|| bad("`]` without an open chunk".into()))?;
            if start == tokens.len() {
                return Err(bad(format!("empty {chunk_type} chunk")));
            }
            spans.push(ChunkSpan::new(chunk_type, start, tokens.len()));
        } else if let Some(name) = item.strip_prefix('[').filter(|n| !n.contains('/')) {
            if let Some((t, _)) = open {
                return Err(bad(format!("`{item}` opened inside an open {t} chunk")));
            }
            let chunk_type = name
                .parse()
                .map_err(|_| bad(format!("unknown chunk type `{name}`")))?;
            open = Some((chunk_type, tokens.len()));
        } else {
            let (word, pos) = item
                .rsplit_once('/')
                .ok_or_else(|| bad(format!("token `{item}` is not word/POS")))?;
            tokens.push(Token::new(word, pos)?);
        }
    }
    if let Some((t, _)) = open {
        return Err(bad(format!("{t} chunk is never closed")));
    }
    let tags = encode_bio(&spans, tokens.len())?;
    Sentence::new(tokens, Some(tags))
}
