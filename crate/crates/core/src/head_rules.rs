//! Head-finding rules: which child of a constituent is its head, and which
//! embedded constituents are assimilated into a chunk before its head.
//!
//! The default table ships as `assets/head_rules.txt`; any table in the same
//! format can be loaded with [`HeadRuleTable::parse`].

use std::collections::HashMap;
use std::fmt;

use crate::chunk_model::ChunkType;
use crate::error::{Error, Result};
use crate::ptb_reader::TreeNode;

const DEFAULT_RULES: &str = include_str!("../assets/head_rules.txt");

const VERB_TAGS: [&str; 7] = ["VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeadLabel {
    /// A terminal with this POS tag.
    Pos(String),
    /// A constituent with this category.
    Phrase(String),
    /// A clause whose first child is a VP.
    SubjectlessClause,
    AnyTerminal,
}

impl HeadLabel {
    fn parse(text: &str) -> HeadLabel {
        match text {
            "*" => HeadLabel::AnyTerminal,
            "@S/VP" => HeadLabel::SubjectlessClause,
            _ => match text.strip_prefix('@') {
                Some(cat) => HeadLabel::Phrase(cat.to_owned()),
                None => HeadLabel::Pos(text.to_owned()),
            },
        }
    }

    pub fn matches(&self, node: &TreeNode) -> bool {
        match (self, node) {
            (HeadLabel::Pos(tag), TreeNode::Terminal { pos, .. }) => tag == pos,
            (HeadLabel::AnyTerminal, TreeNode::Terminal { .. }) => true,
            (HeadLabel::Phrase(cat), TreeNode::Internal { label, .. }) => *cat == label.category,
            (HeadLabel::SubjectlessClause, TreeNode::Internal { label, children }) => {
                matches!(label.category.as_str(), "S" | "SQ")
                    && children
                        .first()
                        .is_some_and(|c| !c.is_terminal() && c.category() == "VP")
            }
            _ => false,
        }
    }
}

impl fmt::Display for HeadLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeadLabel::Pos(t) => f.write_str(t),
            HeadLabel::Phrase(c) => write!(f, "@{c}"),
            HeadLabel::SubjectlessClause => f.write_str("@S/VP"),
            HeadLabel::AnyTerminal => f.write_str("*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadPass {
    pub direction: Direction,
    /// Only search children up to and including the first one that cannot
    /// be absorbed into the chunk.
    pub prefix_only: bool,
    pub labels: Vec<HeadLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadRuleTable {
    heads: HashMap<String, Vec<HeadPass>>,
    absorb: HashMap<ChunkType, Vec<String>>,
}

impl Default for HeadRuleTable {
    fn default() -> Self {
        HeadRuleTable::parse(DEFAULT_RULES).expect("bundled head rules are valid")
    }
}

impl HeadRuleTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut heads: HashMap<String, Vec<HeadPass>> = HashMap::new();
        let mut absorb: HashMap<ChunkType, Vec<String>> = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::HeadRules {
                line: line_no,
                message,
            };
            // `#` is also a POS tag, so only whole lines are comments.
            if line.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [] => {}
                ["head", category, direction, labels @ ..] => {
                    let (direction, prefix_only) = match *direction {
                        "left" => (Direction::Leftmost, false),
                        "right" => (Direction::Rightmost, false),
                        "left-prefix" => (Direction::Leftmost, true),
                        "right-prefix" => (Direction::Rightmost, true),
                        other => return Err(err(format!("unknown direction `{other}`"))),
                    };
                    if labels.is_empty() {
                        return Err(err("head pass without labels".into()));
                    }
                    heads
                        .entry((*category).to_owned())
                        .or_default()
                        .push(HeadPass {
                            direction,
                            prefix_only,
                            labels: labels.iter().map(|l| HeadLabel::parse(l)).collect(),
                        });
                }
                ["absorb", category, cats @ ..] => {
                    let chunk_type: ChunkType = category
                        .parse()
                        .map_err(|_| err(format!("`{category}` is not a chunk type")))?;
                    let entry = absorb.entry(chunk_type).or_default();
                    for cat in cats {
                        let cat = cat.strip_prefix('@').ok_or_else(|| {
                            err(format!("absorbed category `{cat}` must start with `@`"))
                        })?;
                        entry.push(cat.to_owned());
                    }
                }
                [keyword, ..] => return Err(err(format!("unknown directive `{keyword}`"))),
            }
        }
        let table = HeadRuleTable { heads, absorb };
        table.validate()?;
        Ok(table)
    }

    /// Every chunk category needs head rules, and VP must admit verbs and
    /// common nouns as heads.
    pub fn validate(&self) -> Result<()> {
        for t in ChunkType::ALL {
            if !self.heads.contains_key(t.as_str()) {
                return Err(Error::Config(format!("no head rules for {t}")));
            }
        }
        let vp = &self.heads["VP"];
        let admits = |tag: &str| {
            vp.iter().any(|p| {
                p.labels
                    .iter()
                    .any(|l| matches!(l, HeadLabel::Pos(t) if t == tag))
            })
        };
        for tag in VERB_TAGS.iter().chain(&["NN"]) {
            if !admits(tag) {
                return Err(Error::Config(format!("VP head rules do not admit {tag}")));
            }
        }
        Ok(())
    }

    pub fn passes(&self, category: &str) -> Option<&[HeadPass]> {
        self.heads.get(category).map(Vec::as_slice)
    }

    /// Whether `node` can be assimilated whole into a chunk of type `context`.
    pub fn absorbable(&self, node: &TreeNode, context: ChunkType) -> bool {
        match node {
            TreeNode::Terminal { .. } => true,
            TreeNode::Internal { label, children } => {
                self.absorb
                    .get(&context)
                    .is_some_and(|cats| cats.contains(&label.category))
                    && children.iter().all(|c| self.absorbable(c, context))
            }
        }
    }

    /// Index of the head child of `node`, judged inside a chunk of type
    /// `context` (outside any chunk only terminals count as absorbable);
    /// `None` when no pass matches.
    pub fn head_child(&self, node: &TreeNode, context: Option<ChunkType>) -> Option<usize> {
        let children = node.children();
        let prefix_len = children
            .iter()
            .position(|c| match context {
                Some(ctx) => !self.absorbable(c, ctx),
                None => !c.is_terminal(),
            })
            .map_or(children.len(), |i| i + 1);
        self.passes(node.category())?.iter().find_map(|pass| {
            let limit = if pass.prefix_only {
                prefix_len
            } else {
                children.len()
            };
            let hit = |i: &usize| pass.labels.iter().any(|l| l.matches(&children[*i]));
            match pass.direction {
                Direction::Leftmost => (0..limit).find(hit),
                Direction::Rightmost => (0..limit).rev().find(hit),
            }
        })
    }
}

/// The chunk type a constituent category gives rise to, if any.
pub fn chunk_type_of(category: &str) -> Option<ChunkType> {
    Some(match category {
        "NP" | "WHNP" => ChunkType::NP,
        "VP" => ChunkType::VP,
        "PP" | "WHPP" => ChunkType::PP,
        "ADVP" | "WHADVP" => ChunkType::ADVP,
        "SBAR" => ChunkType::SBAR,
        "ADJP" | "WHADJP" => ChunkType::ADJP,
        "PRT" => ChunkType::PRT,
        "CONJP" => ChunkType::CONJP,
        "INTJ" => ChunkType::INTJ,
        "LST" => ChunkType::LST,
        "UCP" => ChunkType::UCP,
        _ => return None,
    })
}
