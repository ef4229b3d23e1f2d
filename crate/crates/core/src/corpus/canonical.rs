//! Canonical line-delimited record format.
//!
//! One record per line, seven TAB-separated fields:
//!
//! ```text
//! record_id  authors  institutions  countries  keywords  year  doc_type
//! ```
//!
//! List fields join their items with `;`. An empty list or a missing year is
//! an empty field. Inside any field the characters `\`, TAB, LF, CR and `;`
//! are written as `\\`, `\t`, `\n`, `\r` and `\;`. `doc_type` is one of the
//! tokens of [`DocType::as_str`]. Every line, including the last, ends with
//! LF. Raw affiliation strings are not carried.

use std::collections::HashSet;

use super::record::{BiblioRecord, DocType};
use super::wos::parse_year;
use super::ParseError;

const FIELD_COUNT: usize = 7;

pub fn serialize_canonical(records: &[BiblioRecord]) -> String {
    let mut out = String::new();
    for r in records {
        write_record(&mut out, r);
    }
    out
}

pub fn write_record(out: &mut String, r: &BiblioRecord) {
    escape_into(out, &r.record_id);
    for list in [&r.authors, &r.institutions, &r.countries, &r.keywords] {
        out.push('\t');
        for (i, item) in list.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            escape_into(out, item);
        }
    }
    out.push('\t');
    if let Some(y) = r.year {
        out.push_str(&y.to_string());
    }
    out.push('\t');
    out.push_str(r.doc_type.as_str());
    out.push('\n');
}

fn escape_into(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            ';' => out.push_str("\\;"),
            c => out.push(c),
        }
    }
}

pub fn parse_canonical_records(text: &str) -> Result<Vec<BiblioRecord>, ParseError> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Ok(records);
    }
    for (idx, line) in body.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        let record = parse_line(line, line_no)?;
        if !seen.insert(record.record_id.clone()) {
            return Err(ParseError::DuplicateId {
                line: line_no,
                id: record.record_id,
            });
        }
        records.push(record);
    }
    Ok(records)
}

fn parse_line(line: &str, line_no: usize) -> Result<BiblioRecord, ParseError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != FIELD_COUNT {
        return Err(ParseError::malformed(
            line_no,
            format!(
                "expected {FIELD_COUNT} tab-separated fields, found {}",
                fields.len()
            ),
        ));
    }
    let record_id = unescape(fields[0], line_no)?;
    if record_id.is_empty() {
        return Err(ParseError::malformed(line_no, "empty record id"));
    }
    let authors = parse_list(fields[1], line_no, "authors")?;
    let institutions = parse_list(fields[2], line_no, "institutions")?;
    let countries = parse_list(fields[3], line_no, "countries")?;
    let keywords = parse_list(fields[4], line_no, "keywords")?;
    let year = match fields[5] {
        "" => None,
        y => Some(
            parse_year(y)
                .ok_or_else(|| ParseError::malformed(line_no, format!("invalid year {y:?}")))?,
        ),
    };
    let doc_type = DocType::ALL
        .into_iter()
        .find(|d| d.as_str() == fields[6])
        .ok_or_else(|| {
            ParseError::malformed(line_no, format!("unknown doc_type {:?}", fields[6]))
        })?;
    Ok(BiblioRecord {
        record_id,
        authors,
        affiliations: Vec::new(),
        institutions,
        countries,
        keywords,
        year,
        doc_type,
    })
}

fn parse_list(field: &str, line_no: usize, name: &str) -> Result<Vec<String>, ParseError> {
    let mut items = Vec::new();
    if field.is_empty() {
        return Ok(items);
    }
    let mut current = String::new();
    let mut chars = field.chars();
    let finish = |current: &mut String, items: &mut Vec<String>| {
        let item = std::mem::take(current);
        if item.is_empty() {
            return Err(ParseError::malformed(
                line_no,
                format!("empty item in {name}"),
            ));
        }
        if items.contains(&item) {
            return Err(ParseError::malformed(
                line_no,
                format!("duplicate item {item:?} in {name}"),
            ));
        }
        items.push(item);
        Ok(())
    };
    while let Some(c) = chars.next() {
        match c {
            '\\' => current.push(unescape_char(chars.next(), line_no)?),
            ';' => finish(&mut current, &mut items)?,
            c => current.push(c),
        }
    }
    finish(&mut current, &mut items)?;
    Ok(items)
}

fn unescape(field: &str, line_no: usize) -> Result<String, ParseError> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => out.push(unescape_char(chars.next(), line_no)?),
            ';' => {
                return Err(ParseError::malformed(
                    line_no,
                    "unescaped `;` in scalar field",
                ))
            }
            c => out.push(c),
        }
    }
    Ok(out)
}

fn unescape_char(next: Option<char>, line_no: usize) -> Result<char, ParseError> {
    match next {
        Some('\\') => Ok('\\'),
        Some('t') => Ok('\t'),
        Some('n') => Ok('\n'),
        Some('r') => Ok('\r'),
        Some(';') => Ok(';'),
        Some(other) => Err(ParseError::malformed(
            line_no,
            format!("unknown escape `\\{other}`"),
        )),
        None => Err(ParseError::malformed(
            line_no,
            "dangling `\\` at end of field",
        )),
    }
}
