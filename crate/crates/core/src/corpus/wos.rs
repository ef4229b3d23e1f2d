//! Web of Science tagged plain-text export reader.
//!
//! Each field line is a two-character tag, one space, and a value. Lines that
//! start with exactly three spaces continue the previous field. A record ends
//! with a bare `ER` line and the file with `EF`. `FN`/`VR` header lines before
//! the first record are skipped.

use std::collections::HashSet;

use super::normalize::{normalize_author_name, normalize_country, normalize_label};
use super::record::{push_unique, BiblioRecord, DocType};
use super::ParseError;

struct Field {
    tag: [u8; 2],
    line: usize,
    values: Vec<String>,
}

struct OpenRecord {
    start_line: usize,
    fields: Vec<Field>,
}

impl OpenRecord {
    fn values<'a>(&'a self, tag: &'a [u8; 2]) -> impl Iterator<Item = &'a Field> + 'a {
        self.fields.iter().filter(move |f| &f.tag == tag)
    }
}

/// Parses a full export. Records without a `UT` accession number get a
/// synthetic id `noid-L<line>` from the line the record starts on.
pub fn parse_wos_export(text: &str) -> Result<Vec<BiblioRecord>, ParseError> {
    parse_wos_export_with_prefix(text, "")
}

/// Like [`parse_wos_export`], with `prefix` prepended to synthetic ids so
/// that records from several files cannot collide.
pub fn parse_wos_export_with_prefix(
    text: &str,
    prefix: &str,
) -> Result<Vec<BiblioRecord>, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut records = Vec::new();
    let mut seen_ids = HashSet::new();
    let mut open: Option<OpenRecord> = None;

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }

        if let Some(rest) = line.strip_prefix("   ") {
            let field = open
                .as_mut()
                .and_then(|r| r.fields.last_mut())
                .ok_or_else(|| {
                    ParseError::malformed(line_no, "continuation line outside a field")
                })?;
            field.values.push(rest.trim().to_string());
            continue;
        }

        let trimmed = line.trim_end();
        if trimmed == "ER" {
            let rec = open
                .take()
                .ok_or_else(|| ParseError::malformed(line_no, "`ER` without an open record"))?;
            let record = finish_record(rec, prefix)?;
            if !seen_ids.insert(record.record_id.clone()) {
                return Err(ParseError::DuplicateId {
                    line: line_no,
                    id: record.record_id,
                });
            }
            records.push(record);
            continue;
        }
        if trimmed == "EF" {
            if let Some(rec) = open {
                return Err(ParseError::UnterminatedRecord {
                    start_line: rec.start_line,
                });
            }
            return Ok(records);
        }

        let (tag, value) = split_tag_line(line, line_no)?;
        match open.as_mut() {
            None if &tag == b"FN" || &tag == b"VR" => {}
            None => {
                open = Some(OpenRecord {
                    start_line: line_no,
                    fields: vec![Field {
                        tag,
                        line: line_no,
                        values: vec![value.to_string()],
                    }],
                });
            }
            Some(rec) => rec.fields.push(Field {
                tag,
                line: line_no,
                values: vec![value.to_string()],
            }),
        }
    }

    if let Some(rec) = open {
        return Err(ParseError::UnterminatedRecord {
            start_line: rec.start_line,
        });
    }
    Ok(records)
}

fn split_tag_line(line: &str, line_no: usize) -> Result<([u8; 2], &str), ParseError> {
    let bytes = line.as_bytes();
    if line.chars().count() < 3 {
        return Err(ParseError::malformed(
            line_no,
            "tag line shorter than 3 characters",
        ));
    }
    let tag = [bytes[0], bytes[1]];
    if !tag
        .iter()
        .all(|b| b.is_ascii_uppercase() || b.is_ascii_digit())
    {
        return Err(ParseError::malformed(
            line_no,
            "expected a two-character tag",
        ));
    }
    if bytes[2] != b' ' {
        return Err(ParseError::malformed(
            line_no,
            "expected a space after the tag",
        ));
    }
    Ok((tag, line[3..].trim()))
}

fn finish_record(rec: OpenRecord, prefix: &str) -> Result<BiblioRecord, ParseError> {
    let record_id = rec
        .values(b"UT")
        .flat_map(|f| f.values.iter())
        .map(|v| v.trim())
        .find(|v| !v.is_empty())
        .map(str::to_string)
        .unwrap_or_else(|| format!("{prefix}noid-L{}", rec.start_line));
    let mut out = BiblioRecord {
        record_id,
        ..BiblioRecord::default()
    };

    // Full names (AF) win over abbreviated ones (AU) when present.
    let has_full = rec
        .values(b"AF")
        .any(|f| f.values.iter().any(|v| !v.trim().is_empty()));
    let author_tag = if has_full { b"AF" } else { b"AU" };
    for field in rec.values(author_tag) {
        for name in &field.values {
            if let Ok(n) = normalize_author_name(name) {
                push_unique(&mut out.authors, n.into_string());
            }
        }
    }

    for field in rec.values(b"C1") {
        for address in &field.values {
            let address = address.trim();
            if address.is_empty() {
                continue;
            }
            out.affiliations.push(address.to_string());
            let (institution, country) = split_address(address);
            if let Some(inst) = institution {
                push_unique(&mut out.institutions, inst);
            }
            if let Some(c) = country {
                push_unique(&mut out.countries, c);
            }
        }
    }

    for tag in [b"DE", b"ID"] {
        for field in rec.values(tag) {
            let joined = field.values.join(" ");
            for kw in joined.split(';') {
                push_unique(&mut out.keywords, normalize_label(kw));
            }
        }
    }

    if let Some(field) = rec.values(b"PY").next() {
        let value = field.values.join(" ");
        let value = value.trim();
        if !value.is_empty() {
            out.year = Some(parse_year(value).ok_or_else(|| {
                ParseError::malformed(field.line, format!("invalid publication year {value:?}"))
            })?);
        }
    }

    if let Some(field) = rec.values(b"DT").next() {
        out.doc_type = DocType::from_wos(&field.values.join(" "));
    }

    Ok(out)
}

pub(crate) fn parse_year(value: &str) -> Option<u16> {
    if value.len() == 4 && value.bytes().all(|b| b.is_ascii_digit()) && !value.starts_with('0') {
        value.parse().ok()
    } else {
        None
    }
}

/// Institution (first token) and country (last token) of a `C1` address.
/// A leading `[Author; Author]` list is dropped.
fn split_address(address: &str) -> (Option<String>, Option<String>) {
    let body = match (address.starts_with('['), address.find(']')) {
        (true, Some(end)) => &address[end + 1..],
        _ => address,
    };
    let body = body.trim().trim_end_matches('.');
    let tokens: Vec<&str> = body.split(',').map(str::trim).collect();
    let institution = tokens
        .first()
        .map(|t| normalize_label(t))
        .filter(|t| !t.is_empty());
    let country = if tokens.len() >= 2 {
        tokens
            .last()
            .map(|t| normalize_country(t))
            .filter(|t| !t.is_empty())
    } else {
        None
    };
    (institution, country)
}
