//! Three-column corpus format: `word POS [chunktag]`, one token per line,
//! sentences separated by blank lines.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::chunk_model::{decode_bio, BioTag, ChunkSpan};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    word: String,
    pos: String,
}

impl Token {
    /// Both fields must be non-empty and free of blanks, tabs and line breaks.
    pub fn new(word: impl Into<String>, pos: impl Into<String>) -> Result<Self> {
        let (word, pos) = (word.into(), pos.into());
        for (name, field) in [("word", &word), ("POS tag", &pos)] {
            if field.is_empty() {
                return Err(Error::InvalidToken(format!("empty {name}")));
            }
            if field.contains([' ', '\t', '\n', '\r']) {
                return Err(Error::InvalidToken(format!(
                    "{name} `{field}` contains whitespace"
                )));
            }
        }
        Ok(Token { word, pos })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn pos(&self) -> &str {
        &self.pos
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    tokens: Vec<Token>,
    tags: Option<Vec<BioTag>>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>, tags: Option<Vec<BioTag>>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::InvalidSentence("sentence has no tokens".into()));
        }
        if let Some(tags) = &tags {
            if tags.len() != tokens.len() {
                return Err(Error::InvalidSentence(format!(
                    "{} tokens but {} tags",
                    tokens.len(),
                    tags.len()
                )));
            }
        }
        Ok(Sentence { tokens, tags })
    }

    pub fn untagged(tokens: Vec<Token>) -> Result<Self> {
        Sentence::new(tokens, None)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn tags(&self) -> Option<&[BioTag]> {
        self.tags.as_deref()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Chunks decoded from the tags (repair semantics), or `None` if untagged.
    pub fn chunks(&self) -> Option<Vec<ChunkSpan>> {
        self.tags.as_deref().map(decode_bio)
    }

    /// Same tokens with a new tag sequence.
    pub fn with_tags(&self, tags: Vec<BioTag>) -> Result<Sentence> {
        Sentence::new(self.tokens.clone(), Some(tags))
    }

    pub fn without_tags(&self) -> Sentence {
        Sentence {
            tokens: self.tokens.clone(),
            tags: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
}

impl Corpus {
    pub fn new(sentences: Vec<Sentence>) -> Self {
        Corpus { sentences }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    /// Errors unless every sentence carries chunk tags.
    pub fn ensure_tagged(&self) -> Result<()> {
        match self.sentences.iter().position(|s| s.tags.is_none()) {
            Some(sentence) => Err(Error::Untagged { sentence }),
            None => Ok(()),
        }
    }
}

impl FromIterator<Sentence> for Corpus {
    fn from_iter<I: IntoIterator<Item = Sentence>>(iter: I) -> Self {
        Corpus::new(iter.into_iter().collect())
    }
}

struct PendingSentence {
    first_line: usize,
    columns: usize,
    tokens: Vec<Token>,
    tags: Vec<BioTag>,
}

impl PendingSentence {
    fn finish(self) -> Result<Sentence> {
        let tags = (self.columns == 3).then_some(self.tags);
        Sentence::new(self.tokens, tags).map_err(|e| Error::Malformed {
            line: self.first_line,
            message: e.to_string(),
        })
    }
}

pub fn read_corpus<R: BufRead>(input: R) -> Result<Corpus> {
    let mut sentences = Vec::new();
    let mut pending: Option<PendingSentence> = None;

    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split([' ', '\t']).filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            if let Some(p) = pending.take() {
                sentences.push(p.finish()?);
            }
            continue;
        }
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Malformed {
                line: line_no,
                message: format!("expected 2 or 3 columns, found {}", fields.len()),
            });
        }
        let sentence = pending.get_or_insert_with(|| PendingSentence {
            first_line: line_no,
            columns: fields.len(),
            tokens: Vec::new(),
            tags: Vec::new(),
        });
        if fields.len() != sentence.columns {
            return Err(Error::Malformed {
                line: line_no,
                message: format!(
                    "expected {} columns like the rest of the sentence, found {}",
                    sentence.columns,
                    fields.len()
                ),
            });
        }
        let token = Token::new(fields[0], fields[1]).map_err(|e| Error::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        sentence.tokens.push(token);
        if let Some(tag) = fields.get(2) {
            let tag = tag.parse().map_err(|_| Error::UnknownTag {
                line: line_no,
                tag: (*tag).to_owned(),
            })?;
            sentence.tags.push(tag);
        }
    }
    if let Some(p) = pending {
        sentences.push(p.finish()?);
    }
    Ok(Corpus::new(sentences))
}

pub fn read_corpus_str(input: &str) -> Result<Corpus> {
    read_corpus(input.as_bytes())
}

pub fn write_corpus(corpus: &Corpus) -> Result<String> {
    let tagged = corpus.sentences.first().is_some_and(|s| s.tags.is_some());
    let mut out = String::new();
    for (i, sentence) in corpus.sentences.iter().enumerate() {
        if sentence.tags.is_some() != tagged {
            return Err(Error::MixedTagging { sentence: i });
        }
        for (j, token) in sentence.tokens.iter().enumerate() {
            match &sentence.tags {
                Some(tags) => writeln!(out, "{} {} {}", token.word, token.pos, tags[j]),
                None => writeln!(out, "{} {}", token.word, token.pos),
            }
            .expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    Ok(out)
}
