//! Deterministic string normalization for entity names.
//!
//! Author identity is the normalized name string. No homonym
//! disambiguation is attempted: two people who normalize to the same string
//! are one node.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid name {raw:?}: nothing left after normalization")]
pub struct InvalidName {
    pub raw: String,
}

/// A casefolded, punctuation-free, single-spaced name.
///
/// A comma in the source is kept as the family/given separator and always
/// rendered as `", "`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalizedName(String);

impl NormalizedName {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for NormalizedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for NormalizedName {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub fn normalize_author_name(raw: &str) -> Result<NormalizedName, InvalidName> {
    let folded: String = raw
        .chars()
        .flat_map(char::to_lowercase)
        .filter(|c| c.is_alphanumeric() || c.is_whitespace() || *c == ',')
        .collect();
    let parts: Vec<String> = folded
        .split(',')
        .map(collapse_whitespace)
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(InvalidName {
            raw: raw.to_string(),
        });
    }
    Ok(NormalizedName(parts.join(", ")))
}

/// Lowercase, trim, and collapse internal whitespace. Used for keywords and
/// institution names, which keep their punctuation ("semi-supervised").
pub fn normalize_label(raw: &str) -> String {
    let folded: String = raw.chars().flat_map(char::to_lowercase).collect();
    collapse_whitespace(&folded)
}

pub(crate) fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Country name from the last comma-separated token of an address.
///
/// Web of Science writes US addresses as "..., FL 32611 USA", so a trailing
/// `usa` word wins over the state and zip code. England, Scotland, Wales and
/// North Ireland stay distinct, as the source reports them.
pub fn normalize_country(token: &str) -> String {
    let cleaned: String = token
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    let cleaned = collapse_whitespace(&cleaned);
    match cleaned.as_str() {
        "peoples r china" | "people s r china" | "peoples republic of china" => {
            return "china".to_string()
        }
        "usa" | "united states" | "united states of america" | "us" => return "usa".to_string(),
        _ => {}
    }
    if cleaned.split(' ').next_back() == Some("usa") {
        return "usa".to_string();
    }
    cleaned
}
