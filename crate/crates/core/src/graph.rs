//! Bipartite tag-question graphs and tag frequency vectors.
//!
//! The bipartite graph is the canonical in-memory form shared by the parsers,
//! the generator, and the projection: tags are dense ids into `tag_names`
//! (assigned in lexicographic name order so runs are reproducible regardless
//! of record order), questions are dense indices in `0..n_questions`, and
//! each tag carries a sorted, deduplicated list of the questions it annotates.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("tag {tag} has question index {index} out of range (n_questions = {n_questions})")]
    IndexOutOfRange {
        tag: u32,
        index: u32,
        n_questions: u64,
    },
    #[error("tag {tag} has an unsorted or duplicated question list")]
    UnsortedIncidence { tag: u32 },
    #[error("frequency vector contains a zero entry at index {index}")]
    ZeroFrequency { index: usize },
    #[error("frequency vector is empty")]
    EmptyFrequencies,
}

/// Tag frequencies `x_t`: the number of questions each tag annotates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagFrequencyVector {
    values: Vec<u64>,
}

impl TagFrequencyVector {
    /// All entries must be positive: a tag that annotates no question does
    /// not exist in the bipartite graph.
    pub fn new(values: Vec<u64>) -> Result<Self, GraphError> {
        if values.is_empty() {
            return Err(GraphError::EmptyFrequencies);
        }
        if let Some(index) = values.iter().position(|&v| v == 0) {
            return Err(GraphError::ZeroFrequency { index });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Total number of tag occurrences, `m`.
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|&v| v as f64).collect()
    }
}

/// Exact counts reported for one bipartite graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n_tags: u64,
    pub n_questions: u64,
    pub m: u64,
    pub min_tag_frequency: Option<u64>,
    pub max_tag_frequency: Option<u64>,
}

/// Bipartite graph `B = (Tu Q, E)` of tags and questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteTagGraph {
    tag_names: Vec<String>,
    n_questions: u32,
    /// Per tag, the sorted set of question indices it annotates.
    incidence: Vec<Vec<u32>>,
}

impl BipartiteTagGraph {
    /// Build from parts, validating that each incidence list is a strictly
    /// increasing sequence of in-range question indices. Questions with no
    /// tags are permitted here; the parsers and the generator's final output
    /// guarantee their absence separately.
    pub fn new(
        tag_names: Vec<String>,
        n_questions: u32,
        incidence: Vec<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        assert_eq!(tag_names.len(), incidence.len());
        for (t, questions) in incidence.iter().enumerate() {
            for pair in questions.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(GraphError::UnsortedIncidence { tag: t as u32 });
                }
            }
            if let Some(&last) = questions.last() {
                if last >= n_questions {
                    return Err(GraphError::IndexOutOfRange {
                        tag: t as u32,
                        index: last,
                        n_questions: n_questions as u64,
                    });
                }
            }
        }
        Ok(Self {
            tag_names,
            n_questions,
            incidence,
        })
    }

    pub fn n_tags(&self) -> usize {
        self.tag_names.len()
    }

    pub fn n_questions(&self) -> u64 {
        self.n_questions as u64
    }

    pub fn tag_names(&self) -> &[String] {
        &self.tag_names
    }

    pub fn tag_name(&self, tag: u32) -> Option<&str> {
        self.tag_names.get(tag as usize).map(String::as_str)
    }

    /// Questions annotated by `tag`, sorted ascending.
    pub fn incidence(&self, tag: u32) -> &[u32] {
        &self.incidence[tag as usize]
    }

    /// Tag frequency `x_t = degree(t)`.
    pub fn degree(&self, tag: u32) -> u64 {
        self.incidence[tag as usize].len() as u64
    }

    /// Total number of tag occurrences, `m = sum_t x_t`.
    pub fn total_occurrences(&self) -> u64 {
        self.incidence.iter().map(|q| q.len() as u64).sum()
    }

    pub fn frequencies(&self) -> Result<TagFrequencyVector, GraphError> {
        TagFrequencyVector::new(self.incidence.iter().map(|q| q.len() as u64).collect())
    }

    /// Inverse incidence: for each question, the ascending list of its tags.
    pub fn question_tags(&self) -> Vec<Vec<u32>> {
        let mut tags = vec![Vec::new(); self.n_questions as usize];
        for (t, questions) in self.incidence.iter().enumerate() {
            for &q in questions {
                tags[q as usize].push(t as u32);
            }
        }
        tags
    }

    /// Number of questions no tag annotates. Zero for every parsed dataset
    /// and for the generator's final (post-discard) output.
    pub fn n_orphan_questions(&self) -> u64 {
        let mut covered = vec![false; self.n_questions as usize];
        for questions in &self.incidence {
            for &q in questions {
                covered[q as usize] = true;
            }
        }
        covered.iter().filter(|&&c| !c).count() as u64
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            n_tags: self.n_tags() as u64,
            n_questions: self.n_questions(),
            m: self.total_occurrences(),
            min_tag_frequency: self.incidence.iter().map(|q| q.len() as u64).min(),
            max_tag_frequency: self.incidence.iter().map(|q| q.len() as u64).max(),
        }
    }

    /// Canonical TSV: one line per question in index order, question id then
    /// its tags comma-joined in lexicographic (= tag id) order.
    ///
    /// Question ids are the question indices; re-parsing the output yields an
    /// identical graph.
    pub fn write_canonical_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let by_question = self.question_tags();
        for (q, tags) in by_question.iter().enumerate() {
            if tags.is_empty() {
                continue;
            }
            write!(out, "{q}\t")?;
            for (i, &t) in tags.iter().enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                out.write_all(self.tag_names[t as usize].as_bytes())?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn canonical_tsv(&self) -> String {
        let mut buf = Vec::new();
        self.write_canonical_tsv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("tag names are valid UTF-8")
    }
}
