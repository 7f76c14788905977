//! Most-frequent-tag baseline: every POS tag gets the chunk tag it carries
//! most often in the training data.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::chunk_model::BioTag;
use crate::chunker::Chunker;
use crate::conll_io::{Corpus, Sentence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BaselineModel {
    table: BTreeMap<String, BioTag>,
}

impl BaselineModel {
    /// Tag for a POS tag; `O` when it was never seen.
    pub fn tag_for(&self, pos: &str) -> BioTag {
        self.table.get(pos).copied().unwrap_or(BioTag::Outside)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, BioTag)> {
        self.table.iter().map(|(p, t)| (p.as_str(), *t))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// `POS<TAB>tag` lines sorted by POS.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (pos, tag) in &self.table {
            writeln!(out, "{pos}\t{tag}").expect("writing to a String cannot fail");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let err = |message: String| Error::Model {
                line: idx + 1,
                message,
            };
            if line.trim().is_empty() {
                continue;
            }
            let Some((pos, tag)) = line.split_once('\t') else {
                return Err(err("expected `POS<TAB>tag`".into()));
            };
            let tag: BioTag = tag
                .trim_end()
                .parse()
                .map_err(|_| err(format!("unknown chunk tag `{tag}`")))?;
            if pos.is_empty() || table.insert(pos.to_owned(), tag).is_some() {
                return Err(err(format!("empty or repeated POS tag `{pos}`")));
            }
        }
        Ok(BaselineModel { table })
    }
}

pub fn train_baseline(train: &Corpus) -> Result<BaselineModel> {
    if train.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    train.ensure_tagged()?;
    let mut counts: HashMap<&str, HashMap<BioTag, usize>> = HashMap::new();
    for sentence in &train.sentences {
        for (token, tag) in sentence
            .tokens()
            .iter()
            .zip(sentence.tags().unwrap_or_default())
        {
            *counts
                .entry(token.pos())
                .or_default()
                .entry(*tag)
                .or_default() += 1;
        }
    }
    let table = counts
        .into_iter()
        .map(|(pos, by_tag)| {
            // Highest count wins; among equals the smaller tag text.
            let best = by_tag
                .into_iter()
                .max_by(|(ta, ca), (tb, cb)| ca.cmp(cb).then(tb.cmp(ta)))
                .map(|(t, _)| t)
                .expect("every counted POS has a tag");
            (pos.to_owned(), best)
        })
        .collect();
    Ok(BaselineModel { table })
}

impl Chunker for BaselineModel {
    fn tag(&self, sentence: &Sentence) -> Vec<BioTag> {
        sentence
            .tokens()
            .iter()
            .map(|t| self.tag_for(t.pos()))
            .collect()
    }
}
