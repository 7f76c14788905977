//! Reader for bracketed Treebank II trees such as
//! `((S (NP-SBJ-3 (NNP Mr.) (NNP Icahn)) (VP ...) (. .)))`.

use std::fmt;

use crate::conll_io::Token;
use crate::error::{Error, Result};

/// POS tag of null elements (traces, empty complementizers, ...).
pub const NULL_POS: &str = "-NONE-";

/// A bracket label split into its parts, e.g. `NP-SBJ-3` or `PP-LOC=2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstituentLabel {
    pub category: String,
    /// Function tags in the order they were written.
    pub function_tags: Vec<String>,
    pub coindex: Option<u32>,
    /// `=n` gap index; parsed but not used for chunking.
    pub gap_index: Option<u32>,
}

impl ConstituentLabel {
    pub fn new(category: impl Into<String>) -> Self {
        ConstituentLabel {
            category: category.into(),
            function_tags: Vec::new(),
            coindex: None,
            gap_index: None,
        }
    }

    pub fn has_function_tag(&self, tag: &str) -> bool {
        self.function_tags.iter().any(|t| t == tag)
    }
}

impl fmt::Display for ConstituentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.category)?;
        for tag in &self.function_tags {
            write!(f, "-{tag}")?;
        }
        if let Some(i) = self.coindex {
            write!(f, "-{i}")?;
        }
        if let Some(i) = self.gap_index {
            write!(f, "={i}")?;
        }
        Ok(())
    }
}

/// Split a raw bracket label into category, function tags and indices.
///
/// Atomic tags of the form `-XYZ-` (`-NONE-`, `-LRB-`) are kept whole.
pub fn split_label(raw: &str) -> ConstituentLabel {
    if raw.len() > 2 && raw.starts_with('-') && raw.ends_with('-') {
        return ConstituentLabel::new(raw);
    }
    let cut = raw.find(['-', '=']).filter(|&i| i > 0).unwrap_or(raw.len());
    let mut label = ConstituentLabel::new(&raw[..cut]);
    let mut rest = &raw[cut..];
    while let Some(sep) = rest.chars().next() {
        rest = &rest[1..];
        let end = rest.find(['-', '=']).unwrap_or(rest.len());
        let part = &rest[..end];
        rest = &rest[end..];
        if part.is_empty() {
            continue;
        }
        match (sep, part.parse::<u32>()) {
            ('=', Ok(n)) => label.gap_index = Some(n),
            ('-', Ok(n)) => label.coindex = Some(n),
            _ => label.function_tags.push(part.to_owned()),
        }
    }
    label
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Internal {
        label: ConstituentLabel,
        children: Vec<TreeNode>,
    },
    Terminal {
        pos: String,
        word: String,
    },
}

impl TreeNode {
    pub fn internal(label: &str, children: Vec<TreeNode>) -> Self {
        assert!(
            !children.is_empty(),
            "internal node `{label}` needs children"
        );
        TreeNode::Internal {
            label: split_label(label),
            children,
        }
    }

    pub fn terminal(pos: &str, word: &str) -> Self {
        TreeNode::Terminal {
            pos: pos.to_owned(),
            word: word.to_owned(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, TreeNode::Terminal { .. })
    }

    /// Category of an internal node, POS tag of a terminal.
    pub fn category(&self) -> &str {
        match self {
            TreeNode::Internal { label, .. } => &label.category,
            TreeNode::Terminal { pos, .. } => pos,
        }
    }

    pub fn label(&self) -> Option<&ConstituentLabel> {
        match self {
            TreeNode::Internal { label, .. } => Some(label),
            TreeNode::Terminal { .. } => None,
        }
    }

    pub fn children(&self) -> &[TreeNode] {
        match self {
            TreeNode::Internal { children, .. } => children,
            TreeNode::Terminal { .. } => &[],
        }
    }

    /// Number of terminals in the yield.
    pub fn yield_len(&self) -> usize {
        match self {
            TreeNode::Terminal { .. } => 1,
            TreeNode::Internal { children, .. } => children.iter().map(TreeNode::yield_len).sum(),
        }
    }

    /// Terminals left to right as `(pos, word)`.
    pub fn terminals(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        self.collect_terminals(&mut out);
        out
    }

    fn collect_terminals<'a>(&'a self, out: &mut Vec<(&'a str, &'a str)>) {
        match self {
            TreeNode::Terminal { pos, word } => out.push((pos, word)),
            TreeNode::Internal { children, .. } => {
                for c in children {
                    c.collect_terminals(out);
                }
            }
        }
    }

    pub fn tokens(&self) -> Result<Vec<Token>> {
        self.terminals()
            .into_iter()
            .map(|(pos, word)| Token::new(word, pos))
            .collect()
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeNode::Terminal { pos, word } => write!(f, "({pos} {word})"),
            TreeNode::Internal { label, children } => {
                write!(f, "({label}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Remove `-NONE-` terminals and any constituent left without children.
pub fn strip_null_elements(tree: &TreeNode) -> Option<TreeNode> {
    match tree {
        TreeNode::Terminal { pos, .. } if pos == NULL_POS => None,
        TreeNode::Terminal { .. } => Some(tree.clone()),
        TreeNode::Internal { label, children } => {
            let children: Vec<TreeNode> = children.iter().filter_map(strip_null_elements).collect();
            (!children.is_empty()).then(|| TreeNode::Internal {
                label: label.clone(),
                children,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lexeme<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        let before = &self.input[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
        Error::TreeSyntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Next lexeme and its byte offset.
    fn next(&mut self) -> Option<(usize, Lexeme<'a>)> {
        let rest = &self.input[self.pos..];
        let skipped = rest.len() - rest.trim_start().len();
        self.pos += skipped;
        let start = self.pos;
        let rest = &self.input[start..];
        let first = rest.chars().next()?;
        let lexeme = match first {
            '(' => {
                self.pos += 1;
                Lexeme::Open
            }
            ')' => {
                self.pos += 1;
                Lexeme::Close
            }
            _ => {
                let len = rest
                    .find(|c: char| c == '(' || c == ')' || c.is_whitespace())
                    .unwrap_or(rest.len());
                self.pos += len;
                Lexeme::Atom(&rest[..len])
            }
        };
        Some((start, lexeme))
    }

    fn peek(&mut self) -> Option<(usize, Lexeme<'a>)> {
        let saved = self.pos;
        let next = self.next();
        self.pos = saved;
        next
    }

    /// Parse the body of a bracket whose `(` at `open` was just consumed.
    fn bracket(&mut self, open: usize) -> Result<Option<TreeNode>> {
        let label = match self.peek() {
            Some((_, Lexeme::Atom(a))) => {
                self.next();
                Some(a)
            }
            _ => None,
        };
        let mut children = Vec::new();
        let mut word = None;
        loop {
            match self.next() {
                None => {
                    return Err(self.error(open, "unbalanced parentheses: bracket never closed"))
                }
                Some((_, Lexeme::Close)) => break,
                Some((at, Lexeme::Open)) => match self.bracket(at)? {
                    Some(child) => children.push(child),
                    None => return Err(self.error(at, "empty constituent")),
                },
                Some((at, Lexeme::Atom(a))) => {
                    if word.is_some() || !children.is_empty() {
                        return Err(self.error(at, format!("unexpected word `{a}`")));
                    }
                    word = Some((at, a));
                }
            }
        }
        match (label, word) {
            (None, None) if children.is_empty() => Ok(None),
            (None, Some((at, _))) => Err(self.error(at, "terminal without a POS tag")),
            (None, None) if children.len() == 1 => Ok(children.pop()),
            (None, None) => Err(self.error(open, "unlabeled bracket with several children")),
            (Some(pos), Some((at, w))) => {
                if !children.is_empty() {
                    return Err(self.error(at, "terminal mixed with constituents"));
                }
                Ok(Some(TreeNode::terminal(pos, w)))
            }
            (Some(l), None) if children.is_empty() => {
                Err(self.error(open, format!("`{l}` has neither children nor a word")))
            }
            (Some(l), None) => Ok(Some(TreeNode::Internal {
                label: split_label(l),
                children,
            })),
        }
    }
}

/// Parse every top-level tree in `input`; an unlabeled outer wrapper
/// bracket around a single tree is dropped.
pub fn parse_trees(input: &str) -> Result<Vec<TreeNode>> {
    let mut parser = Parser { input, pos: 0 };
    let mut trees = Vec::new();
    while let Some((at, lexeme)) = parser.next() {
        match lexeme {
            Lexeme::Open => match parser.bracket(at)? {
                Some(tree) => trees.push(tree),
                None => return Err(parser.error(at, "empty constituent")),
            },
            Lexeme::Close => return Err(parser.error(at, "unbalanced parentheses: unexpected `)`")),
            Lexeme::Atom(a) => return Err(parser.error(at, format!("text `{a}` outside any tree"))),
        }
    }
    Ok(trees)
}

pub fn parse_tree(input: &str) -> Result<TreeNode> {
    let mut trees = parse_trees(input)?;
    match trees.len() {
        1 => Ok(trees.pop().unwrap()),
        n => Err(Error::TreeSyntax {
            line: 1,
            column: 1,
            message: format!("expected exactly one tree, found {n}"),
        }),
    }
}
