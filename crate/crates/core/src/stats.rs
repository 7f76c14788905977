//! Chunk type census of a tagged corpus.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::chunk_model::ChunkType;
use crate::conll_io::Corpus;
use crate::error::Result;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub sentences: usize,
    pub tokens: usize,
    pub chunks: usize,
    pub per_type: BTreeMap<ChunkType, usize>,
}

pub fn census(corpus: &Corpus) -> Result<Census> {
    corpus.ensure_tagged()?;
    let mut out = Census {
        sentences: corpus.len(),
        tokens: corpus.token_count(),
        ..Census::default()
    };
    for sentence in &corpus.sentences {
        for span in sentence.chunks().unwrap_or_default() {
            *out.per_type.entry(span.chunk_type).or_default() += 1;
            out.chunks += 1;
        }
    }
    Ok(out)
}

/// Count, whole-number share and type per line, most frequent first, then
/// the totals.
pub fn format_census(census: &Census) -> String {
    let mut rows: Vec<(ChunkType, usize)> = census.per_type.iter().map(|(t, c)| (*t, *c)).collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut out = String::from("  count    %  type\n");
    for (t, count) in rows {
        let share = if census.chunks == 0 {
            0
        } else {
            (200 * count + census.chunks) / (2 * census.chunks)
        };
        writeln!(out, "{count:>7} {share:>3}%  {t}").expect("writing to a String cannot fail");
    }
    writeln!(
        out,
        "sentences: {}; tokens: {}; chunks: {}",
        census.sentences, census.tokens, census.chunks
    )
    .expect("writing to a String cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conll_io::read_corpus_str;

    #[test]
    fn counts_and_shares() {
        let corpus = read_corpus_str(
            "He PRP B-NP\nreckons VBZ B-VP\nthe DT B-NP\ndeficit NN I-NP\n. . O\n\nup RP B-PRT\nit PRP B-NP\n",
        )
        .unwrap();
        let c = census(&corpus).unwrap();
        assert_eq!((c.sentences, c.tokens, c.chunks), (2, 7, 5));
        assert_eq!(c.per_type[&ChunkType::NP], 3);
        let text = format_census(&c);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "      3  60%  NP");
        // 1 of 5 each; ties in alphabetical order.
        assert_eq!(lines[2], "      1  20%  PRT");
        assert_eq!(lines[3], "      1  20%  VP");
        assert_eq!(lines[4], "sentences: 2; tokens: 7; chunks: 5");
    }

    #[test]
    fn shares_round_half_up() {
        let mut c = Census {
            chunks: 106978,
            ..Census::default()
        };
        c.per_type.insert(ChunkType::NP, 55081);
        c.per_type.insert(ChunkType::PRT, 556);
        c.per_type.insert(ChunkType::CONJP, 56);
        let text = format_census(&c);
        assert!(text.contains("  55081  51%  NP\n"));
        assert!(text.contains("    556   1%  PRT\n"));
        assert!(text.contains("     56   0%  CONJP\n"));
    }

    #[test]
    fn untagged_rejected() {
        assert!(census(&read_corpus_str("a DT\n").unwrap()).is_err());
    }
}
