//! Common interface of the trainable chunkers.

use crate::chunk_model::BioTag;
use crate::conll_io::{Corpus, Sentence};
use crate::error::Result;

pub trait Chunker {
    /// One tag per token of `sentence`.
    fn tag(&self, sentence: &Sentence) -> Vec<BioTag>;

    /// Tag every sentence, replacing any tags already present.
    fn tag_corpus(&self, corpus: &Corpus) -> Result<Corpus> {
        corpus
            .sentences
            .iter()
            .map(|s| s.with_tags(self.tag(s)))
            .collect::<Result<Vec<_>>>()
            .map(Corpus::new)
    }
}
