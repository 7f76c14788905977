//! Text chunking: chunk tag codecs, corpus I/O, treebank-to-chunk
//! conversion, evaluation and two reference chunkers.

pub mod baseline;
pub mod brackets;
pub mod chunk_model;
pub mod chunker;
pub mod conll_io;
pub mod error;
pub mod evaluator;
pub mod head_rules;
pub mod markov;
pub mod ptb_reader;
pub mod stats;
pub mod tree2chunk;

pub use baseline::{train_baseline, BaselineModel};
pub use brackets::{format_brackets, parse_brackets};
pub use chunk_model::{
    decode_bio, encode_bio, is_consistent, repair_tags, validate_spans, BioTag, ChunkSpan,
    ChunkType,
};
pub use chunker::Chunker;
pub use conll_io::{read_corpus, read_corpus_str, write_corpus, Corpus, Sentence, Token};
pub use error::{Error, Result};
pub use evaluator::{
    evaluate, format_key_values, format_report, EvalConfig, EvalReport, TypeScore,
};
pub use head_rules::HeadRuleTable;
pub use markov::{train_markov, MarkovConfig, MarkovModel};
pub use ptb_reader::{parse_tree, parse_trees, strip_null_elements, ConstituentLabel, TreeNode};
pub use stats::{census, format_census, Census};
pub use tree2chunk::{chunk_corpus, chunk_tree, extract_chunks, find_head, ChunkedSentence};
