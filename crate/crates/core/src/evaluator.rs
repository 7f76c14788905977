//! Exact-match chunk scoring: a predicted chunk counts as correct only when
//! a gold chunk has the same type, start and end.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::chunk_model::{decode_bio, repair_tags, ChunkSpan, ChunkType};
use crate::conll_io::Corpus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    beta: f64,
}

impl EvalConfig {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Config(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        Ok(EvalConfig { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { beta: 1.0 }
    }
}

/// Raw chunk counts; these add up across sentences and types.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChunkCounts {
    pub gold: usize,
    pub pred: usize,
    pub correct: usize,
}

impl ChunkCounts {
    pub fn add(&mut self, other: ChunkCounts) {
        self.gold += other.gold;
        self.pred += other.pred;
        self.correct += other.correct;
    }

    pub fn precision(&self) -> f64 {
        percent(self.correct, self.pred)
    }

    pub fn recall(&self) -> f64 {
        percent(self.correct, self.gold)
    }

    pub fn score(&self, beta: f64) -> TypeScore {
        let (p, r) = (self.precision(), self.recall());
        TypeScore {
            counts: *self,
            precision: p,
            recall: r,
            f: f_beta(p, r, beta),
        }
    }
}

fn percent(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// (β²+1)·P·R / (β²·P + R), or 0 when both rates are 0.
pub fn f_beta(precision: f64, recall: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * precision + recall;
    if denom == 0.0 {
        0.0
    } else {
        (b2 + 1.0) * precision * recall / denom
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeScore {
    pub counts: ChunkCounts,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Only types with at least one gold or predicted chunk.
    pub per_type: BTreeMap<ChunkType, TypeScore>,
    pub overall: TypeScore,
    /// Share of tokens whose (repaired) tags agree. Informational only: it
    /// is a poor proxy for chunk quality.
    pub token_accuracy: Option<f64>,
    pub beta: f64,
}

/// Per-type counts for one sentence.
pub fn count_chunks(gold: &[ChunkSpan], pred: &[ChunkSpan]) -> BTreeMap<ChunkType, ChunkCounts> {
    let mut counts: BTreeMap<ChunkType, ChunkCounts> = BTreeMap::new();
    for span in gold {
        counts.entry(span.chunk_type).or_default().gold += 1;
    }
    for span in pred {
        let entry = counts.entry(span.chunk_type).or_default();
        entry.pred += 1;
        // Spans within a sentence are disjoint, so a match is unique.
        if gold.contains(span) {
            entry.correct += 1;
        }
    }
    counts
}

fn check_aligned(gold: &Corpus, pred: &Corpus) -> Result<()> {
    if gold.len() != pred.len() {
        return Err(Error::Mismatch {
            sentence: gold.len().min(pred.len()),
            token: None,
            message: format!(
                "gold has {} sentences, prediction has {}",
                gold.len(),
                pred.len()
            ),
        });
    }
    for (i, (g, p)) in gold.sentences.iter().zip(&pred.sentences).enumerate() {
        if g.len() != p.len() {
            return Err(Error::Mismatch {
                sentence: i,
                token: None,
                message: format!("gold has {} tokens, prediction has {}", g.len(), p.len()),
            });
        }
        if let Some(j) = g.tokens().iter().zip(p.tokens()).position(|(a, b)| a != b) {
            let (a, b) = (&g.tokens()[j], &p.tokens()[j]);
            return Err(Error::Mismatch {
                sentence: i,
                token: Some(j),
                message: format!(
                    "gold `{} {}` vs prediction `{} {}`",
                    a.word(),
                    a.pos(),
                    b.word(),
                    b.pos()
                ),
            });
        }
    }
    Ok(())
}

pub fn evaluate(gold: &Corpus, pred: &Corpus, config: &EvalConfig) -> Result<EvalReport> {
    gold.ensure_tagged()?;
    pred.ensure_tagged()?;
    check_aligned(gold, pred)?;

    let mut totals: BTreeMap<ChunkType, ChunkCounts> = BTreeMap::new();
    let (mut agree, mut tokens) = (0usize, 0usize);
    for (g, p) in gold.sentences.iter().zip(&pred.sentences) {
        let (g_tags, p_tags) = (
            repair_tags(g.tags().unwrap_or_default()),
            repair_tags(p.tags().unwrap_or_default()),
        );
        agree += g_tags.iter().zip(&p_tags).filter(|(a, b)| a == b).count();
        tokens += g_tags.len();
        for (t, c) in count_chunks(&decode_bio(&g_tags), &decode_bio(&p_tags)) {
            totals.entry(t).or_default().add(c);
        }
    }

    let mut overall = ChunkCounts::default();
    for c in totals.values() {
        overall.add(*c);
    }
    Ok(EvalReport {
        per_type: totals
            .into_iter()
            .map(|(t, c)| (t, c.score(config.beta)))
            .collect(),
        overall: overall.score(config.beta),
        token_accuracy: (tokens > 0).then(|| percent(agree, tokens)),
        beta: config.beta,
    })
}

/// Round half-up to two decimals. The nudge keeps values such as 72.585,
/// which are stored slightly below their decimal form, rounding up.
pub fn round2(x: f64) -> f64 {
    (x * 100.0 + 0.5 + 1e-9).floor() / 100.0
}

fn fb_label(beta: f64) -> String {
    if beta == 1.0 {
        "FB1".to_owned()
    } else {
        format!("FB{beta}")
    }
}

/// Overall line followed by one line per chunk type, alphabetically.
pub fn format_report(report: &EvalReport) -> String {
    let fb = fb_label(report.beta);
    let o = &report.overall;
    let mut out = format!(
        "precision: {:.2}%; recall: {:.2}%; {fb}: {:.2}\n",
        round2(o.precision),
        round2(o.recall),
        round2(o.f)
    );
    let mut rows: Vec<(&str, &TypeScore)> = report
        .per_type
        .iter()
        .map(|(t, s)| (t.as_str(), s))
        .collect();
    rows.sort_by_key(|(name, _)| *name);
    for (name, s) in rows {
        writeln!(
            out,
            "{name:>6}: precision: {:6.2}%; recall: {:6.2}%; {fb}: {:6.2}  gold {} predicted {} correct {}",
            round2(s.precision),
            round2(s.recall),
            round2(s.f),
            s.counts.gold,
            s.counts.pred,
            s.counts.correct
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Flat `key=value` lines in full precision, for scripts.
pub fn format_key_values(report: &EvalReport) -> String {
    let mut out = format!("beta={}\n", report.beta);
    let mut put = |prefix: &str, s: &TypeScore| {
        for (k, v) in [
            ("gold", s.counts.gold.to_string()),
            ("predicted", s.counts.pred.to_string()),
            ("correct", s.counts.correct.to_string()),
            ("precision", s.precision.to_string()),
            ("recall", s.recall.to_string()),
            ("f", s.f.to_string()),
        ] {
            writeln!(out, "{prefix}.{k}={v}").expect("writing to a String cannot fail");
        }
    };
    put("overall", &report.overall);
    for (t, s) in &report.per_type {
        put(t.as_str(), s);
    }
    if let Some(acc) = report.token_accuracy {
        writeln!(out, "token_accuracy={acc}").expect("writing to a String cannot fail");
    }
    out
}
