//! Chunk types, chunk spans and the B/I/O tag codec.
//!
//! A chunk of type `X` is written as `B-X` on its first token and `I-X` on
//! every following token; tokens outside any chunk carry `O`. Decoding is
//! total: an `I-X` that does not continue a chunk of type `X` opens a new
//! chunk, which is also what [`repair_tags`] normalizes to.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The eleven chunk categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChunkType {
    NP,
    VP,
    PP,
    ADVP,
    SBAR,
    ADJP,
    PRT,
    CONJP,
    INTJ,
    LST,
    UCP,
}

impl ChunkType {
    pub const ALL: [ChunkType; 11] = [
        ChunkType::NP,
        ChunkType::VP,
        ChunkType::PP,
        ChunkType::ADVP,
        ChunkType::SBAR,
        ChunkType::ADJP,
        ChunkType::PRT,
        ChunkType::CONJP,
        ChunkType::INTJ,
        ChunkType::LST,
        ChunkType::UCP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChunkType::NP => "NP",
            ChunkType::VP => "VP",
            ChunkType::PP => "PP",
            ChunkType::ADVP => "ADVP",
            ChunkType::SBAR => "SBAR",
            ChunkType::ADJP => "ADJP",
            ChunkType::PRT => "PRT",
            ChunkType::CONJP => "CONJP",
            ChunkType::INTJ => "INTJ",
            ChunkType::LST => "LST",
            ChunkType::UCP => "UCP",
        }
    }
}

// Ordered by name so that reports and tie-breaks follow the text form.
impl Ord for ChunkType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl PartialOrd for ChunkType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ChunkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChunkType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChunkType::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidTag(s.to_owned()))
    }
}

/// A per-token chunk tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BioTag {
    Begin(ChunkType),
    Inside(ChunkType),
    Outside,
}

impl BioTag {
    pub fn chunk_type(self) -> Option<ChunkType> {
        match self {
            BioTag::Begin(t) | BioTag::Inside(t) => Some(t),
            BioTag::Outside => None,
        }
    }

    fn kind_char(self) -> char {
        match self {
            BioTag::Begin(_) => 'B',
            BioTag::Inside(_) => 'I',
            BioTag::Outside => 'O',
        }
    }

    /// Whether `self` may directly follow `prev` (`None` = sentence start)
    /// in a consistent sequence.
    pub fn may_follow(self, prev: Option<BioTag>) -> bool {
        match self {
            BioTag::Inside(t) => {
                matches!(prev, Some(BioTag::Begin(p) | BioTag::Inside(p)) if p == t)
            }
            _ => true,
        }
    }
}

// Same order as the text form: `B-*` < `I-*` < `O`, then by type name.
impl Ord for BioTag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_char()
            .cmp(&other.kind_char())
            .then_with(|| self.chunk_type().cmp(&other.chunk_type()))
    }
}

impl PartialOrd for BioTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BioTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BioTag::Begin(t) => write!(f, "B-{t}"),
            BioTag::Inside(t) => write!(f, "I-{t}"),
            BioTag::Outside => f.write_str("O"),
        }
    }
}

impl FromStr for BioTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "O" {
            return Ok(BioTag::Outside);
        }
        let invalid = || Error::InvalidTag(s.to_owned());
        let (kind, ty) = s.split_once('-').ok_or_else(invalid)?;
        let ty: ChunkType = ty.parse().map_err(|_| invalid())?;
        match kind {
            "B" => Ok(BioTag::Begin(ty)),
            "I" => Ok(BioTag::Inside(ty)),
            _ => Err(invalid()),
        }
    }
}

/// A typed chunk covering tokens `start..end` of a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChunkSpan {
    pub start: usize,
    pub end: usize,
    pub chunk_type: ChunkType,
}

impl ChunkSpan {
    pub fn new(chunk_type: ChunkType, start: usize, end: usize) -> Self {
        debug_assert!(start < end, "empty chunk span {start}..{end}");
        ChunkSpan {
            start,
            end,
            chunk_type,
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }
}

impl fmt::Display for ChunkSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}..{}", self.chunk_type, self.start, self.end)
    }
}

/// Check that spans are non-empty, sorted, disjoint and inside `0..len`.
pub fn validate_spans(spans: &[ChunkSpan], len: usize) -> Result<()> {
    let mut prev_end = 0;
    for (i, span) in spans.iter().enumerate() {
        if span.start >= span.end {
            return Err(Error::InvalidSpans(format!("span {i} ({span}) is empty")));
        }
        if span.end > len {
            return Err(Error::InvalidSpans(format!(
                "span {i} ({span}) exceeds sentence length {len}"
            )));
        }
        if span.start < prev_end {
            return Err(Error::InvalidSpans(format!(
                "span {i} ({span}) overlaps or precedes the previous span"
            )));
        }
        prev_end = span.end;
    }
    Ok(())
}

pub fn encode_bio(spans: &[ChunkSpan], sentence_length: usize) -> Result<Vec<BioTag>> {
    validate_spans(spans, sentence_length)?;
    let mut tags = vec![BioTag::Outside; sentence_length];
    for span in spans {
        tags[span.start] = BioTag::Begin(span.chunk_type);
        for tag in &mut tags[span.start + 1..span.end] {
            *tag = BioTag::Inside(span.chunk_type);
        }
    }
    Ok(tags)
}

pub fn decode_bio(tags: &[BioTag]) -> Vec<ChunkSpan> {
    let mut spans = Vec::new();
    let mut open: Option<(ChunkType, usize)> = None;
    for (i, &tag) in tags.iter().enumerate() {
        let continues = matches!((tag, open), (BioTag::Inside(t), Some((o, _))) if t == o);
        if continues {
            continue;
        }
        if let Some((t, start)) = open.take() {
            spans.push(ChunkSpan::new(t, start, i));
        }
        open = tag.chunk_type().map(|t| (t, i));
    }
    if let Some((t, start)) = open {
        spans.push(ChunkSpan::new(t, start, tags.len()));
    }
    spans
}

/// Rewrite every `I-X` that does not continue an `X` chunk as `B-X`.
pub fn repair_tags(tags: &[BioTag]) -> Vec<BioTag> {
    let mut prev = None;
    tags.iter()
        .map(|&tag| {
            let fixed = match tag {
                BioTag::Inside(t) if !tag.may_follow(prev) => BioTag::Begin(t),
                _ => tag,
            };
            prev = Some(fixed);
            fixed
        })
        .collect()
}

/// True when no `I-X` needs repair.
pub fn is_consistent(tags: &[BioTag]) -> bool {
    let mut prev = None;
    tags.iter().all(|&tag| {
        let ok = tag.may_follow(prev);
        prev = Some(tag);
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use BioTag::{Begin as B, Inside as I, Outside as O};
    use ChunkType::*;

    fn span(t: ChunkType, s: usize, e: usize) -> ChunkSpan {
        ChunkSpan::new(t, s, e)
    }

    #[test]
    fn encode_example_sentence_prefix() {
        let tags = encode_bio(&[span(NP, 0, 1), span(VP, 1, 2), span(NP, 2, 6)], 6).unwrap();
        assert_eq!(tags, vec![B(NP), B(VP), B(NP), I(NP), I(NP), I(NP)]);
    }

    #[test]
    fn encode_without_spans() {
        assert_eq!(encode_bio(&[], 3).unwrap(), vec![O, O, O]);
    }

    #[test]
    fn encode_adjacent_same_type() {
        let tags = encode_bio(&[span(VP, 0, 2), span(VP, 2, 3)], 3).unwrap();
        assert_eq!(tags, vec![B(VP), I(VP), B(VP)]);
    }

    #[test]
    fn encode_rejects_bad_spans() {
        assert!(encode_bio(&[span(NP, 0, 2), span(VP, 1, 3)], 3).is_err());
        assert!(encode_bio(&[span(NP, 2, 4)], 3).is_err());
        assert!(encode_bio(&[span(NP, 2, 3), span(VP, 0, 1)], 3).is_err());
    }

    #[test]
    fn decode_consistent() {
        assert_eq!(
            decode_bio(&[B(NP), I(NP), O, B(VP)]),
            vec![span(NP, 0, 2), span(VP, 3, 4)]
        );
    }

    #[test]
    fn decode_inside_after_outside_opens_chunk() {
        assert_eq!(decode_bio(&[O, I(NP), I(NP)]), vec![span(NP, 1, 3)]);
    }

    #[test]
    fn decode_inside_after_other_type_opens_chunk() {
        assert_eq!(
            decode_bio(&[I(NP), I(VP)]),
            vec![span(NP, 0, 1), span(VP, 1, 2)]
        );
    }

    #[test]
    fn repair_examples() {
        assert_eq!(repair_tags(&[O, I(NP), I(NP)]), vec![O, B(NP), I(NP)]);
        assert_eq!(repair_tags(&[I(PP)]), vec![B(PP)]);
        let consistent = vec![B(NP), I(NP), B(VP), O, B(PP)];
        assert_eq!(repair_tags(&consistent), consistent);
    }

    #[test]
    fn tag_text_form() {
        for tag in ["B-NP", "I-VP", "O", "B-CONJP", "I-UCP"] {
            assert_eq!(tag.parse::<BioTag>().unwrap().to_string(), tag);
        }
        for bad in ["b-NP", "B-np", "B-", "X-NP", "B-NX", "", "OO", "I_NP"] {
            assert!(bad.parse::<BioTag>().is_err(), "{bad}");
        }
    }

    #[test]
    fn tag_order_matches_text_order() {
        let mut tags: Vec<BioTag> = ChunkType::ALL
            .iter()
            .flat_map(|&t| [B(t), I(t)])
            .chain([O])
            .collect();
        let mut by_text = tags.clone();
        tags.sort();
        by_text.sort_by_key(|t| t.to_string());
        assert_eq!(tags, by_text);
    }
}
