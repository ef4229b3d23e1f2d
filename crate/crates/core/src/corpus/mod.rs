//! Bibliographic record ingestion: Web of Science exports, the canonical
//! line format, name normalization and corpus filtering.

mod canonical;
mod filter;
mod normalize;
mod record;
mod wos;

use thiserror::Error;

pub use canonical::{parse_canonical_records, serialize_canonical, write_record};
pub use filter::{filter_corpus, CorpusFilter, InvalidFilter};
pub use normalize::{
    normalize_author_name, normalize_country, normalize_label, InvalidName, NormalizedName,
};
pub use record::{extract_entities, BiblioRecord, DocType, EntityKind, UnknownDocType};
pub use wos::{parse_wos_export, parse_wos_export_with_prefix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("record starting at line {start_line} has no terminating `ER` line")]
    UnterminatedRecord { start_line: usize },
    #[error("line {line}: duplicate record id {id:?}")]
    DuplicateId { line: usize, id: String },
}

impl ParseError {
    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }

    /// The line the error refers to.
    pub fn line(&self) -> usize {
        match self {
            ParseError::Malformed { line, .. } | ParseError::DuplicateId { line, .. } => *line,
            ParseError::UnterminatedRecord { start_line } => *start_line,
        }
    }
}
