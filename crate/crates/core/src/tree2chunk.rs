//! Tree-to-chunk conversion.
//!
//! Every constituent whose category maps to a chunk type contributes at most
//! one chunk per contiguous stretch of material in front of its head: the
//! chunk runs from the leftmost unclaimed token of the constituent up to and
//! including the head terminal. Head search descends into the head child
//! ("continuation"), which is how nested VPs fold into one verb cluster and
//! how `(NP (QP only $ 1.8 billion))` stays one NP. Children in front of the
//! head either join the chunk (terminals and absorbable phrases such as an
//! ADJP inside an NP) or break it: the material collected so far is closed
//! as a chunk and the breaking child is converted on its own. Everything
//! after the head is converted independently, so postmodifiers and
//! arguments never enter the chunk.
//!
//! Two special cases sit on top of that scheme:
//!
//! * a possessive marker (`POS`) inside an NP ends the chunk in front of it
//!   and starts the next NP chunk;
//! * inside a VP, punctuation in front of the head closes the chunk and
//!   stays outside; a phrase that would otherwise be absorbed but is cut
//!   off from the head by punctuation becomes a chunk of its own.

use std::fmt;

use crate::chunk_model::{encode_bio, validate_spans, ChunkSpan, ChunkType};
use crate::conll_io::{Corpus, Sentence, Token};
use crate::error::Result;
use crate::head_rules::{chunk_type_of, HeadRuleTable};
use crate::ptb_reader::{strip_null_elements, TreeNode, NULL_POS};

const PUNCTUATION: [&str; 8] = [",", ".", ":", "``", "''", "-LRB-", "-RRB-", NULL_POS];

const POSSESSIVE: &str = "POS";

fn is_punctuation(pos: &str) -> bool {
    PUNCTUATION.contains(&pos)
}

/// Head terminal of a constituent, as an index into its yield.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeadPosition {
    pub index: usize,
    /// No rule matched somewhere along the descent and the rightmost
    /// terminal was taken instead.
    pub fallback: bool,
}

/// Locate the head terminal of `node` by following head children down to a
/// terminal.
pub fn find_head(node: &TreeNode, rules: &HeadRuleTable) -> HeadPosition {
    let context = chunk_type_of(node.category());
    let mut node = node;
    let mut index = 0;
    loop {
        if node.is_terminal() {
            return HeadPosition {
                index,
                fallback: false,
            };
        }
        match rules.head_child(node, context) {
            Some(h) => {
                index += node.children()[..h]
                    .iter()
                    .map(TreeNode::yield_len)
                    .sum::<usize>();
                node = &node.children()[h];
            }
            None => {
                log::debug!("no head rule matched in {node}; using the rightmost terminal");
                return HeadPosition {
                    index: index + node.yield_len() - 1,
                    fallback: true,
                };
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkedSentence {
    pub tokens: Vec<Token>,
    pub spans: Vec<ChunkSpan>,
    /// Constituents that could not be converted as expected.
    pub diagnostics: Vec<String>,
}

impl ChunkedSentence {
    pub fn to_sentence(&self) -> Result<Sentence> {
        let tags = encode_bio(&self.spans, self.tokens.len())?;
        Sentence::new(self.tokens.clone(), Some(tags))
    }
}

/// Bracketed words, e.g. `[NP He ] [VP reckons ] .`
impl fmt::Display for ChunkedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut spans = self.spans.iter().peekable();
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if let Some(span) = spans.peek().filter(|s| s.start == i) {
                write!(f, "[{} ", span.chunk_type)?;
            }
            f.write_str(token.word())?;
            if spans.peek().is_some_and(|s| s.end == i + 1) {
                f.write_str(" ]")?;
                spans.next();
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Collector {
    range: Option<(usize, usize)>,
}

impl Collector {
    fn push(&mut self, start: usize, end: usize) {
        self.range = match self.range {
            None => Some((start, end)),
            Some((s, e)) => {
                debug_assert_eq!(e, start, "chunk material must be contiguous");
                Some((s, end))
            }
        };
    }
}

struct Extractor<'a> {
    rules: &'a HeadRuleTable,
    spans: Vec<ChunkSpan>,
    diagnostics: Vec<String>,
}

impl Extractor<'_> {
    fn close(&mut self, chunk_type: ChunkType, collector: &mut Collector) {
        if let Some((start, end)) = collector.range.take() {
            self.spans.push(ChunkSpan::new(chunk_type, start, end));
        }
    }

    /// A possessive marker nobody picked up becomes a one-word NP chunk.
    fn close_marker(&mut self, marker: Option<usize>) {
        if let Some(i) = marker {
            self.spans.push(ChunkSpan::new(ChunkType::NP, i, i + 1));
        }
    }

    /// Convert `node` on its own. Returns the position of a trailing
    /// possessive marker that should start the next NP chunk.
    fn convert(&mut self, node: &TreeNode, start: usize) -> Option<usize> {
        let TreeNode::Internal { label, children } = node else {
            return None;
        };
        if let Some(chunk_type) = chunk_type_of(&label.category) {
            if let Some(head) = self.rules.head_child(node, Some(chunk_type)) {
                let mut collector = Collector::default();
                return self.collect(node, start, head, chunk_type, &mut collector);
            }
            // SBARs without an overt complementizer are routine.
            if chunk_type != ChunkType::SBAR {
                self.diagnostics.push(format!(
                    "no head for {label} at token {start}; its own words stay outside chunks"
                ));
            }
        }
        self.convert_children(children, start)
    }

    fn convert_children(&mut self, children: &[TreeNode], start: usize) -> Option<usize> {
        let mut marker = None;
        let mut offset = start;
        for child in children {
            self.close_marker(marker.take());
            marker = self.convert(child, offset);
            offset += child.yield_len();
        }
        marker
    }

    /// Gather the chunk of `chunk_type` through `node`, whose head child is
    /// `head`, then convert the material after the head.
    fn collect(
        &mut self,
        node: &TreeNode,
        start: usize,
        head: usize,
        chunk_type: ChunkType,
        collector: &mut Collector,
    ) -> Option<usize> {
        let children = node.children();
        let mut offset = start;

        let split_off = |i: usize| {
            chunk_type == ChunkType::VP
                && children[i + 1..head]
                    .iter()
                    .any(|c| matches!(c, TreeNode::Terminal { pos, .. } if is_punctuation(pos)))
        };

        for (i, child) in children[..head].iter().enumerate() {
            let len = child.yield_len();
            match child {
                TreeNode::Terminal { pos, .. }
                    if chunk_type == ChunkType::VP && is_punctuation(pos) =>
                {
                    self.close(chunk_type, collector);
                }
                TreeNode::Terminal { pos, .. } => {
                    if chunk_type == ChunkType::NP && pos == POSSESSIVE {
                        self.close(chunk_type, collector);
                    }
                    collector.push(offset, offset + 1);
                }
                _ if self.rules.absorbable(child, chunk_type) && !split_off(i) => {
                    collector.push(offset, offset + len)
                }
                _ => {
                    self.close(chunk_type, collector);
                    let marker = self.convert(child, offset);
                    match (marker, chunk_type) {
                        (Some(m), ChunkType::NP) => collector.push(m, m + 1),
                        (m, _) => self.close_marker(m),
                    }
                }
            }
            offset += len;
        }

        let head_node = &children[head];
        let mut marker = match head_node {
            TreeNode::Terminal { .. } => {
                collector.push(offset, offset + 1);
                self.close(chunk_type, collector);
                None
            }
            TreeNode::Internal { label, children } => {
                match self.rules.head_child(head_node, Some(chunk_type)) {
                    Some(h) => self.collect(head_node, offset, h, chunk_type, collector),
                    None => {
                        self.diagnostics.push(format!(
                        "no head inside {label} at token {offset} while building a {chunk_type} chunk"
                    ));
                        self.close(chunk_type, collector);
                        self.convert_children(children, offset)
                    }
                }
            }
        };
        offset += head_node.yield_len();

        for child in &children[head + 1..] {
            self.close_marker(marker.take());
            match child {
                TreeNode::Terminal { pos, .. }
                    if chunk_type == ChunkType::NP && pos == POSSESSIVE =>
                {
                    marker = Some(offset);
                }
                TreeNode::Terminal { .. } => {}
                _ => marker = self.convert(child, offset),
            }
            offset += child.yield_len();
        }
        marker
    }
}

/// Convert a null-stripped tree into chunks over its yield.
pub fn extract_chunks(tree: &TreeNode, rules: &HeadRuleTable) -> Result<ChunkedSentence> {
    let tokens = tree.tokens()?;
    let mut extractor = Extractor {
        rules,
        spans: Vec::new(),
        diagnostics: Vec::new(),
    };
    let marker = extractor.convert(tree, 0);
    extractor.close_marker(marker);

    let mut spans = extractor.spans;
    spans.sort();
    debug_assert!(validate_spans(&spans, tokens.len()).is_ok(), "{spans:?}");
    Ok(ChunkedSentence {
        tokens,
        spans,
        diagnostics: extractor.diagnostics,
    })
}

/// Null-strip and chunk one tree; `None` if nothing survives stripping.
pub fn chunk_tree(tree: &TreeNode, rules: &HeadRuleTable) -> Result<Option<ChunkedSentence>> {
    strip_null_elements(tree)
        .map(|stripped| extract_chunks(&stripped, rules))
        .transpose()
}

/// Convert a sequence of trees into a chunk-tagged corpus. Trees that are
/// empty after null stripping are dropped.
pub fn chunk_corpus(trees: &[TreeNode], rules: &HeadRuleTable) -> Result<Corpus> {
    let mut sentences = Vec::with_capacity(trees.len());
    for (i, tree) in trees.iter().enumerate() {
        match chunk_tree(tree, rules)? {
            Some(chunked) => {
                for d in &chunked.diagnostics {
                    log::warn!("tree {i}: {d}");
                }
                sentences.push(chunked.to_sentence()?);
            }
            None => log::warn!("tree {i}: empty after removing null elements; dropped"),
        }
    }
    Ok(Corpus::new(sentences))
}
