//! Parsers turning raw tag-question data into [`BipartiteTagGraph`]s.
//!
//! Two input formats are supported: the Stack Exchange `Posts.xml` dump
//! (streamed row by row, so million-question communities parse in modest
//! memory) and a plain TSV with one `question_id<TAB>tag1,tag2,...` line per
//! question. Both produce a [`CommunityDataset`] whose records all carry
//! one to five tags; out-of-range or structurally broken rows are counted
//! and skipped, never silently kept.

use std::collections::{BTreeMap, HashSet};
use std::io::{self, BufRead};

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use thiserror::Error;

use crate::graph::{BipartiteTagGraph, GraphError};

/// Questions carry at least one and at most five tags.
pub const MAX_TAGS_PER_QUESTION: usize = 5;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("XML stream cannot be tokenized at byte offset {offset}: {message}")]
    Xml { offset: u64, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("unbalanced tag bracket structure at {offending:?}")]
    TagSyntax { offending: String },
    #[error("duplicate question id {id:?}")]
    DuplicateQuestionId { id: String },
    #[error("dataset has {count} records, more than the supported 2^32 - 1")]
    TooManyQuestions { count: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One question and its tags, as parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionRecord {
    pub id: String,
    pub tags: Vec<String>,
}

/// Rows dropped during parsing. `malformed_rows` counts structurally broken
/// input (missing attributes, bad entities, bracket-structure errors, tag
/// names containing reserved characters); `rejected_records` counts rows
/// that parsed cleanly but carry zero or more than five tags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectCounts {
    pub malformed_rows: u64,
    pub rejected_records: u64,
}

/// Parsed tag-question data for one community.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityDataset {
    pub name: String,
    pub records: Vec<QuestionRecord>,
    pub rejects: RejectCounts,
}

/// Duplicate-collapse bookkeeping from [`build_bipartite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOutcome {
    pub graph: BipartiteTagGraph,
    /// Duplicate tags inside a single record, collapsed to one edge each.
    pub duplicate_pairs: u64,
}

/// Split a decoded `Tags` attribute value of the form `<a><b><c>` into tag
/// names, in order of appearance.
pub fn decode_tag_attribute(raw: &str) -> Result<Vec<String>, IngestError> {
    let mut tags = Vec::new();
    let mut rest = raw;
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('<') else {
            return Err(IngestError::TagSyntax {
                offending: rest.to_string(),
            });
        };
        let Some(close) = body.find('>') else {
            return Err(IngestError::TagSyntax {
                offending: rest.to_string(),
            });
        };
        let name = &body[..close];
        if name.is_empty() || name.contains('<') {
            let end = rest.len().min(close + 2);
            return Err(IngestError::TagSyntax {
                offending: rest[..end].to_string(),
            });
        }
        tags.push(name.to_string());
        rest = &body[close + 1..];
    }
    Ok(tags)
}

// Tag names also may not contain the characters the canonical TSV uses as
// separators, or the round-trip guarantee would not hold.
fn tag_name_ok(name: &str) -> bool {
    !name.is_empty() && !name.contains(['<', '>', ',', '\t', '\n', '\r'])
}

struct RecordCollector {
    records: Vec<QuestionRecord>,
    seen_ids: HashSet<String>,
    rejects: RejectCounts,
}

impl RecordCollector {
    fn new() -> Self {
        Self {
            records: Vec::new(),
            seen_ids: HashSet::new(),
            rejects: RejectCounts::default(),
        }
    }

    fn push(&mut self, id: String, tags: Vec<String>) -> Result<(), IngestError> {
        if tags.is_empty() || tags.len() > MAX_TAGS_PER_QUESTION {
            self.rejects.rejected_records += 1;
            return Ok(());
        }
        if !tags.iter().all(|t| tag_name_ok(t)) {
            self.rejects.malformed_rows += 1;
            return Ok(());
        }
        if !self.seen_ids.insert(id.clone()) {
            return Err(IngestError::DuplicateQuestionId { id });
        }
        self.records.push(QuestionRecord { id, tags });
        Ok(())
    }

    fn finish(self, name: &str) -> CommunityDataset {
        CommunityDataset {
            name: name.to_string(),
            records: self.records,
            rejects: self.rejects,
        }
    }
}

fn row_attribute(row: &BytesStart<'_>, key: &str) -> Option<String> {
    let attr = row.try_get_attribute(key).ok()??;
    let value = attr.unescape_value().ok()?;
    Some(value.into_owned())
}

/// Parse a Stack Exchange `Posts.xml` stream, keeping rows with
/// `PostTypeId="1"` (questions) and a non-empty `Tags` attribute.
pub fn parse_posts_xml<R: BufRead>(
    reader: R,
    community_name: &str,
) -> Result<CommunityDataset, IngestError> {
    let mut xml = Reader::from_reader(reader);
    let mut buf = Vec::with_capacity(4096);
    let mut collector = RecordCollector::new();

    loop {
        let event = match xml.read_event_into(&mut buf) {
            Ok(event) => event,
            Err(err) => {
                return Err(IngestError::Xml {
                    offset: xml.buffer_position(),
                    message: err.to_string(),
                });
            }
        };
        match event {
            Event::Eof => break,
            Event::Empty(ref row) | Event::Start(ref row) if row.name().as_ref() == b"row" => {
                let Some(post_type) = row_attribute(row, "PostTypeId") else {
                    collector.rejects.malformed_rows += 1;
                    continue;
                };
                if post_type != "1" {
                    continue; // answers, wiki entries, ...
                }
                let Some(id) = row_attribute(row, "Id") else {
                    collector.rejects.malformed_rows += 1;
                    continue;
                };
                let raw_tags = row_attribute(row, "Tags").unwrap_or_default();
                if raw_tags.is_empty() {
                    // A question row with no tags violates the 1..=5 range.
                    collector.rejects.rejected_records += 1;
                    continue;
                }
                match decode_tag_attribute(&raw_tags) {
                    Ok(tags) => collector.push(id, tags)?,
                    Err(_) => collector.rejects.malformed_rows += 1,
                }
            }
            _ => {}
        }
        buf.clear();
    }
    Ok(collector.finish(community_name))
}

/// Parse `question_id<TAB>tag1,tag2,...` lines. Blank lines are skipped.
pub fn parse_tsv<R: BufRead>(
    reader: R,
    community_name: &str,
) -> Result<CommunityDataset, IngestError> {
    let mut collector = RecordCollector::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.is_empty() {
            continue;
        }
        let Some((id, tag_part)) = line.split_once('\t') else {
            // No tab separator means no tags at all: outside the 1..=5 range.
            collector.rejects.rejected_records += 1;
            continue;
        };
        if tag_part.is_empty() {
            collector.rejects.rejected_records += 1;
            continue;
        }
        let tags: Vec<String> = tag_part.split(',').map(str::to_string).collect();
        collector.push(id.to_string(), tags)?;
    }
    Ok(collector.finish(community_name))
}

/// Build the bipartite graph: tag ids in lexicographic name order, question
/// indices in record order, duplicate tags within a record collapsed.
pub fn build_bipartite(dataset: &CommunityDataset) -> Result<BuildOutcome, IngestError> {
    let n_questions = u32::try_from(dataset.records.len()).map_err(|_| {
        IngestError::TooManyQuestions {
            count: dataset.records.len() as u64,
        }
    })?;

    let mut tag_ids: BTreeMap<&str, u32> = BTreeMap::new();
    for record in &dataset.records {
        for tag in &record.tags {
            tag_ids.entry(tag.as_str()).or_default();
        }
    }
    for (next_id, id) in tag_ids.values_mut().enumerate() {
        *id = next_id as u32;
    }

    let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); tag_ids.len()];
    let mut duplicate_pairs = 0u64;
    let mut ids_buf: Vec<u32> = Vec::with_capacity(MAX_TAGS_PER_QUESTION);
    for (q, record) in dataset.records.iter().enumerate() {
        ids_buf.clear();
        ids_buf.extend(record.tags.iter().map(|t| tag_ids[t.as_str()]));
        ids_buf.sort_unstable();
        let before = ids_buf.len();
        ids_buf.dedup();
        duplicate_pairs += (before - ids_buf.len()) as u64;
        for &t in &ids_buf {
            incidence[t as usize].push(q as u32);
        }
    }

    let tag_names: Vec<String> = tag_ids.keys().map(|&name| name.to_string()).collect();
    let graph = BipartiteTagGraph::new(tag_names, n_questions, incidence)?;
    debug_assert_eq!(graph.n_orphan_questions(), 0);
    Ok(BuildOutcome {
        graph,
        duplicate_pairs,
    })
}
