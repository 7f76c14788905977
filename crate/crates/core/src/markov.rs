//! First-order Markov chunk tagger with Viterbi decoding.
//!
//! States are the chunk tags seen in training. Each token is observed as one
//! symbol: its (word, POS) pair when that pair occurred at least `cutoff`
//! times in training, otherwise its POS tag alone, and a shared unknown
//! symbol when even the POS tag is new. Transitions and emissions use add-k
//! smoothing; transitions into `I-X` from anything but `B-X`/`I-X` have
//! probability zero, so decoded sequences are always well formed.

use std::collections::{BTreeMap, HashMap};

use crate::chunk_model::{repair_tags, BioTag};
use crate::chunker::Chunker;
use crate::conll_io::{Corpus, Sentence, Token};
use crate::error::{Error, Result};

const HEADER: &str = "# shallow markov model v1";
const START: &str = "<START>";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovConfig {
    smoothing: f64,
    cutoff: usize,
}

impl MarkovConfig {
    pub fn new(smoothing: f64, cutoff: usize) -> Result<Self> {
        if !(smoothing.is_finite() && smoothing > 0.0) {
            return Err(Error::Config(format!(
                "smoothing must be positive and finite, got {smoothing}"
            )));
        }
        if cutoff == 0 {
            return Err(Error::Config("cutoff must be at least 1".into()));
        }
        Ok(MarkovConfig { smoothing, cutoff })
    }

    /// Never lexicalise: every token is observed through its POS tag.
    pub fn pos_only(smoothing: f64) -> Result<Self> {
        MarkovConfig::new(smoothing, usize::MAX)
    }

    pub fn smoothing(&self) -> f64 {
        self.smoothing
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
}

impl Default for MarkovConfig {
    fn default() -> Self {
        MarkovConfig {
            smoothing: 0.1,
            cutoff: 2,
        }
    }
}

/// What a token is observed as.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Observation {
    Word { word: String, pos: String },
    Pos(String),
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovModel {
    config: MarkovConfig,
    /// Sorted by tag text, which makes the tie-breaking order explicit.
    states: Vec<BioTag>,
    start: Vec<f64>,
    /// `transitions[prev][next]`
    transitions: Vec<Vec<f64>>,
    words: HashMap<String, HashMap<String, usize>>,
    pos_symbols: HashMap<String, usize>,
    /// `emissions[state][symbol]`; the last symbol is the unknown one.
    emissions: Vec<Vec<f64>>,
}

impl MarkovModel {
    pub fn config(&self) -> MarkovConfig {
        self.config
    }

    pub fn states(&self) -> &[BioTag] {
        &self.states
    }

    fn state_index(&self, tag: BioTag) -> Option<usize> {
        self.states.binary_search(&tag).ok()
    }

    fn unknown_symbol(&self) -> usize {
        self.emissions.first().map_or(0, |row| row.len() - 1)
    }

    fn symbol(&self, token: &Token) -> usize {
        self.words
            .get(token.word())
            .and_then(|by_pos| by_pos.get(token.pos()))
            .or_else(|| self.pos_symbols.get(token.pos()))
            .copied()
            .unwrap_or_else(|| self.unknown_symbol())
    }

    pub fn observe(&self, token: &Token) -> Observation {
        if self
            .words
            .get(token.word())
            .is_some_and(|m| m.contains_key(token.pos()))
        {
            Observation::Word {
                word: token.word().to_owned(),
                pos: token.pos().to_owned(),
            }
        } else if self.pos_symbols.contains_key(token.pos()) {
            Observation::Pos(token.pos().to_owned())
        } else {
            Observation::Unknown
        }
    }

    /// log P(tag | previous), with `None` for the sentence start.
    /// Negative infinity for disallowed or unknown tags.
    pub fn log_transition(&self, prev: Option<BioTag>, tag: BioTag) -> f64 {
        let Some(j) = self.state_index(tag) else {
            return f64::NEG_INFINITY;
        };
        match prev {
            None => self.start[j],
            Some(p) => self
                .state_index(p)
                .map_or(f64::NEG_INFINITY, |i| self.transitions[i][j]),
        }
    }

    /// log P(observation of `token` | tag).
    pub fn log_emission(&self, tag: BioTag, token: &Token) -> f64 {
        self.state_index(tag)
            .map_or(f64::NEG_INFINITY, |i| self.emissions[i][self.symbol(token)])
    }

    /// Joint log-probability of `sentence` with the given tags.
    pub fn log_score(&self, sentence: &Sentence, tags: &[BioTag]) -> f64 {
        assert_eq!(sentence.len(), tags.len(), "one tag per token");
        let mut prev = None;
        let mut total = 0.0;
        for (token, &tag) in sentence.tokens().iter().zip(tags) {
            total += self.log_transition(prev, tag) + self.log_emission(tag, token);
            prev = Some(tag);
        }
        total
    }

    pub fn viterbi(&self, sentence: &Sentence) -> Vec<BioTag> {
        let n = self.states.len();
        let tokens = sentence.tokens();
        if tokens.is_empty() || n == 0 {
            return vec![BioTag::Outside; tokens.len()];
        }
        let mut back: Vec<Vec<usize>> = Vec::with_capacity(tokens.len());
        let sym = self.symbol(&tokens[0]);
        let mut delta: Vec<f64> = (0..n)
            .map(|s| self.start[s] + self.emissions[s][sym])
            .collect();
        for token in &tokens[1..] {
            let sym = self.symbol(token);
            let mut next = vec![f64::NEG_INFINITY; n];
            let mut ptr = vec![0; n];
            for s in 0..n {
                let (mut best, mut arg) = (f64::NEG_INFINITY, 0);
                // Strict comparison keeps the first, i.e. smallest, tag on ties.
                for (p, d) in delta.iter().enumerate() {
                    let v = d + self.transitions[p][s];
                    if v > best {
                        best = v;
                        arg = p;
                    }
                }
                next[s] = best + self.emissions[s][sym];
                ptr[s] = arg;
            }
            back.push(ptr);
            delta = next;
        }
        let mut state = 0;
        for s in 1..n {
            if delta[s] > delta[state] {
                state = s;
            }
        }
        let mut path = vec![self.states[state]];
        for ptr in back.iter().rev() {
            state = ptr[state];
            path.push(self.states[state]);
        }
        path.reverse();
        path
    }

    /// Sorted log-probability table behind a version header.
    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n");
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("smoothing\t{}", self.config.smoothing));
        line(format!("cutoff\t{}", self.config.cutoff));
        for tag in &self.states {
            line(format!("state\t{tag}"));
        }
        for (j, tag) in self.states.iter().enumerate() {
            if self.start[j].is_finite() {
                line(format!("trans\t{START}\t{tag}\t{}", self.start[j]));
            }
        }
        for (i, prev) in self.states.iter().enumerate() {
            for (j, tag) in self.states.iter().enumerate() {
                if self.transitions[i][j].is_finite() {
                    line(format!("trans\t{prev}\t{tag}\t{}", self.transitions[i][j]));
                }
            }
        }
        let mut words: Vec<(&str, &str, usize)> = self
            .words
            .iter()
            .flat_map(|(w, by_pos)| {
                by_pos
                    .iter()
                    .map(move |(p, &k)| (w.as_str(), p.as_str(), k))
            })
            .collect();
        words.sort_unstable();
        let pos: BTreeMap<&str, usize> = self
            .pos_symbols
            .iter()
            .map(|(p, &k)| (p.as_str(), k))
            .collect();
        let unknown = self.unknown_symbol();
        for (i, tag) in self.states.iter().enumerate() {
            let row = &self.emissions[i];
            for &(w, p, k) in &words {
                line(format!("emit\t{tag}\tW\t{w}\t{p}\t{}", row[k]));
            }
            for (p, &k) in &pos {
                line(format!("emit\t{tag}\tP\t{p}\t{}", row[k]));
            }
            line(format!("emit\t{tag}\tU\t{}", row[unknown]));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h == HEADER => {}
            _ => {
                return Err(Error::Model {
                    line: 1,
                    message: format!("expected `{HEADER}`"),
                })
            }
        }
        let mut smoothing = None;
        let mut cutoff = None;
        let mut states = Vec::new();
        let mut trans = Vec::new();
        let mut emit = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let err = |message: String| Error::Model {
                line: line_no,
                message,
            };
            let tag = |s: &str| {
                s.parse::<BioTag>()
                    .map_err(|_| err(format!("unknown chunk tag `{s}`")))
            };
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| err(format!("bad number `{s}`")))
            };
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                [""] => {}
                ["smoothing", v] => smoothing = Some(num(v)?),
                ["cutoff", v] => {
                    cutoff = Some(
                        v.parse::<usize>()
                            .map_err(|_| err(format!("bad cutoff `{v}`")))?,
                    )
                }
                ["state", t] => states.push(tag(t)?),
                ["trans", p, t, v] => {
                    let prev = if *p == START { None } else { Some(tag(p)?) };
                    trans.push((line_no, prev, tag(t)?, num(v)?));
                }
                ["emit", t, "W", w, p, v] => emit.push((
                    line_no,
                    tag(t)?,
                    Observation::Word {
                        word: (*w).into(),
                        pos: (*p).into(),
                    },
                    num(v)?,
                )),
                ["emit", t, "P", p, v] => {
                    emit.push((line_no, tag(t)?, Observation::Pos((*p).into()), num(v)?))
                }
                ["emit", t, "U", v] => emit.push((line_no, tag(t)?, Observation::Unknown, num(v)?)),
                _ => return Err(err(format!("unrecognised line `{line}`"))),
            }
        }
        let missing = |what: &str| Error::Model {
            line: 0,
            message: format!("no `{what}` line"),
        };
        let config = MarkovConfig::new(
            smoothing.ok_or_else(|| missing("smoothing"))?,
            cutoff.ok_or_else(|| missing("cutoff"))?,
        )?;
        if states.is_empty() {
            return Err(missing("state"));
        }
        let sorted = states.windows(2).all(|w| w[0] < w[1]);
        if !sorted {
            return Err(Error::Model {
                line: 0,
                message: "states must be listed once each in sorted order".into(),
            });
        }

        let n = states.len();
        let mut model = MarkovModel {
            config,
            start: vec![f64::NEG_INFINITY; n],
            transitions: vec![vec![f64::NEG_INFINITY; n]; n],
            words: HashMap::new(),
            pos_symbols: HashMap::new(),
            emissions: Vec::new(),
            states,
        };
        let index = |m: &MarkovModel, line: usize, t: BioTag| {
            m.state_index(t).ok_or_else(|| Error::Model {
                line,
                message: format!("tag {t} is not a declared state"),
            })
        };
        for (line, prev, t, v) in trans {
            let j = index(&model, line, t)?;
            match prev {
                None => model.start[j] = v,
                Some(p) => {
                    let i = index(&model, line, p)?;
                    model.transitions[i][j] = v;
                }
            }
        }
        let mut symbols: BTreeMap<Observation, usize> = BTreeMap::new();
        for (_, _, obs, _) in &emit {
            if *obs != Observation::Unknown {
                let k = symbols.len();
                symbols.entry(obs.clone()).or_insert(k);
            }
        }
        let unknown = symbols.len();
        for (obs, &k) in &symbols {
            match obs {
                Observation::Word { word, pos } => {
                    model
                        .words
                        .entry(word.clone())
                        .or_default()
                        .insert(pos.clone(), k);
                }
                Observation::Pos(pos) => {
                    model.pos_symbols.insert(pos.clone(), k);
                }
                Observation::Unknown => unreachable!("unknown symbol is not numbered"),
            }
        }
        model.emissions = vec![vec![f64::NEG_INFINITY; unknown + 1]; n];
        for (line, t, obs, v) in emit {
            let i = index(&model, line, t)?;
            let k = if obs == Observation::Unknown {
                unknown
            } else {
                symbols[&obs]
            };
            model.emissions[i][k] = v;
        }
        Ok(model)
    }
}

impl Chunker for MarkovModel {
    fn tag(&self, sentence: &Sentence) -> Vec<BioTag> {
        self.viterbi(sentence)
    }
}

fn log_ratio(count: f64, k: f64, total: f64, outcomes: f64) -> f64 {
    ((count + k) / (total + k * outcomes)).ln()
}

pub fn train_markov(train: &Corpus, config: MarkovConfig) -> Result<MarkovModel> {
    if train.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    train.ensure_tagged()?;
    let tagged: Vec<(&Sentence, Vec<BioTag>)> = train
        .sentences
        .iter()
        .map(|s| (s, repair_tags(s.tags().unwrap_or_default())))
        .collect();

    let mut states: Vec<BioTag> = tagged.iter().flat_map(|(_, t)| t.iter().copied()).collect();
    states.sort_unstable();
    states.dedup();
    let n = states.len();
    let idx = |t: BioTag| states.binary_search(&t).expect("tag collected above");

    // Symbols: frequent (word, POS) pairs, then POS tags, then unknown.
    let mut pair_counts: HashMap<(&str, &str), usize> = HashMap::new();
    for (s, _) in &tagged {
        for t in s.tokens() {
            *pair_counts.entry((t.word(), t.pos())).or_default() += 1;
        }
    }
    let mut frequent: Vec<(&str, &str)> = pair_counts
        .iter()
        .filter(|(_, &c)| c >= config.cutoff)
        .map(|(&k, _)| k)
        .collect();
    frequent.sort_unstable();
    let mut words: HashMap<String, HashMap<String, usize>> = HashMap::new();
    for (k, (w, p)) in frequent.iter().enumerate() {
        words
            .entry((*w).to_owned())
            .or_default()
            .insert((*p).to_owned(), k);
    }
    let mut pos_tags: Vec<&str> = pair_counts.keys().map(|(_, p)| *p).collect();
    pos_tags.sort_unstable();
    pos_tags.dedup();
    let pos_symbols: HashMap<String, usize> = pos_tags
        .iter()
        .enumerate()
        .map(|(k, p)| ((*p).to_owned(), frequent.len() + k))
        .collect();
    let vocab = frequent.len() + pos_tags.len();

    let mut start_counts = vec![0.0; n];
    let mut trans_counts = vec![vec![0.0; n]; n];
    let mut emit_counts = vec![vec![0.0; vocab + 1]; n];
    for (sentence, tags) in &tagged {
        let mut prev: Option<usize> = None;
        for (token, &tag) in sentence.tokens().iter().zip(tags) {
            let s = idx(tag);
            match prev {
                None => start_counts[s] += 1.0,
                Some(p) => trans_counts[p][s] += 1.0,
            }
            let sym = words
                .get(token.word())
                .and_then(|m| m.get(token.pos()))
                .or_else(|| pos_symbols.get(token.pos()))
                .copied()
                .expect("every training POS has a symbol");
            emit_counts[s][sym] += 1.0;
            prev = Some(s);
        }
    }

    let k = config.smoothing;
    let row = |counts: &[f64], prev: Option<BioTag>| -> Vec<f64> {
        let allowed: Vec<bool> = states.iter().map(|t| t.may_follow(prev)).collect();
        let outcomes = allowed.iter().filter(|a| **a).count() as f64;
        let total: f64 = counts
            .iter()
            .zip(&allowed)
            .filter(|(_, a)| **a)
            .map(|(c, _)| c)
            .sum();
        counts
            .iter()
            .zip(&allowed)
            .map(|(&c, &a)| {
                if a {
                    log_ratio(c, k, total, outcomes)
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect()
    };
    let start = row(&start_counts, None);
    let transitions = (0..n)
        .map(|i| row(&trans_counts[i], Some(states[i])))
        .collect();
    let emissions = emit_counts
        .iter()
        .map(|counts| {
            let total: f64 = counts.iter().sum();
            counts
                .iter()
                .map(|&c| log_ratio(c, k, total, (vocab + 1) as f64))
                .collect()
        })
        .collect();

    log::debug!(
        "markov model: {n} states, {} lexical and {} POS symbols",
        frequent.len(),
        pos_tags.len()
    );
    Ok(MarkovModel {
        config,
        states,
        start,
        transitions,
        words,
        pos_symbols,
        emissions,
    })
}
