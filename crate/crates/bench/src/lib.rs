//! Deterministic synthetic inputs for the benchmarks.

use shallow::{parse_tree, read_corpus_str, Corpus, TreeNode};

const SENTENCES: [&str; 3] = [
    "He PRP B-NP\nreckons VBZ B-VP\nthe DT B-NP\ncurrent JJ I-NP\naccount NN I-NP\ndeficit NN I-NP\n\
     will MD B-VP\nnarrow VB I-VP\nto TO B-PP\nonly RB B-NP\n# # I-NP\n1.8 CD I-NP\nbillion CD I-NP\n\
     in IN B-PP\nSeptember NNP B-NP\n. . O\n",
    "Mr. NNP B-NP\nIcahn NNP I-NP\nmay MD B-VP\nnot RB I-VP\nwant VB I-VP\nto TO I-VP\nsell VB I-VP\n\
     it PRP B-NP\n. . O\n",
    "They PRP B-NP\nwent VBD B-VP\non RP B-PRT\nwith IN B-PP\nthe DT B-NP\nplan NN I-NP\n, , O\n\
     even RB B-SBAR\nthough IN I-SBAR\nit PRP B-NP\nwas VBD B-VP\nvery RB B-ADJP\nrisky JJ I-ADJP\n. . O\n",
];

const TREES: [&str; 2] = [
    "( (S (NP-SBJ (PRP He)) (VP (VBZ reckons) (SBAR (-NONE- 0) (S (NP-SBJ (DT the) (JJ current) (NN account) \
     (NN deficit)) (VP (MD will) (VP (VB narrow) (PP-DIR (TO to) (NP (QP (RB only) (# #) (CD 1.8) (CD billion)) \
     (-NONE- *U*))) (PP-TMP (IN in) (NP-TMP (NNP September)))))))) (. .)) )",
    "( (S (NP-SBJ (NP (NNP Eastern) (NNPS Airlines) (POS ')) (NNS creditors)) (VP (MD may) (RB not) (VP (VB want) \
     (S (NP-SBJ (-NONE- *-1)) (VP (TO to) (VP (VB sell) (NP (PRP it))))))) (. .)) )",
];

/// `n` sentences cycling through a few hand-tagged ones, with word forms
/// varied so that lexical models see rare and frequent words.
pub fn synthetic_corpus(n: usize) -> Corpus {
    let mut text = String::new();
    for i in 0..n {
        for line in SENTENCES[i % SENTENCES.len()].lines() {
            let mut fields = line.split(' ');
            let (word, rest) = (fields.next().unwrap(), fields.collect::<Vec<_>>().join(" "));
            text.push_str(&format!("{word}{} {rest}\n", i % 7));
        }
        text.push('\n');
    }
    read_corpus_str(&text).expect("synthetic corpus is well formed")
}

pub fn synthetic_trees(n: usize) -> Vec<TreeNode> {
    (0..n)
        .map(|i| parse_tree(TREES[i % TREES.len()]).expect("synthetic tree is well formed"))
        .collect()
}
