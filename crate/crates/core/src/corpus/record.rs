use std::fmt;
use std::str::FromStr;

/// Publication type as reported by the bibliographic source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum DocType {
    Article,
    BookChapter,
    ProceedingsPaper,
    RetractedPublication,
    Review,
    #[default]
    Other,
}

impl DocType {
    pub const ALL: [DocType; 6] = [
        DocType::Article,
        DocType::BookChapter,
        DocType::ProceedingsPaper,
        DocType::RetractedPublication,
        DocType::Review,
        DocType::Other,
    ];

    /// Token used in the canonical record format and in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            DocType::Article => "Article",
            DocType::BookChapter => "BookChapter",
            DocType::ProceedingsPaper => "ProceedingsPaper",
            DocType::RetractedPublication => "RetractedPublication",
            DocType::Review => "Review",
            DocType::Other => "Other",
        }
    }

    /// Maps a Web of Science `DT` value. Only the first `;`-separated type is
    /// considered, so "Article; Early Access" is an article.
    pub fn from_wos(value: &str) -> DocType {
        let primary = value.split(';').next().unwrap_or("").trim();
        match primary.to_ascii_lowercase().as_str() {
            "article" => DocType::Article,
            "proceedings paper" => DocType::ProceedingsPaper,
            "review" => DocType::Review,
            "book chapter" => DocType::BookChapter,
            "retraction" | "retracted publication" => DocType::RetractedPublication,
            _ => DocType::Other,
        }
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownDocType(pub String);

impl fmt::Display for UnknownDocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown document type `{}`", self.0)
    }
}

impl std::error::Error for UnknownDocType {}

impl FromStr for DocType {
    type Err = UnknownDocType;

    /// Accepts the canonical tokens case-insensitively, plus a few spelled-out
    /// forms ("book chapter", "proceedings paper").
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        match key.as_str() {
            "article" => Ok(DocType::Article),
            "bookchapter" => Ok(DocType::BookChapter),
            "proceedingspaper" => Ok(DocType::ProceedingsPaper),
            "retractedpublication" | "retraction" => Ok(DocType::RetractedPublication),
            "review" => Ok(DocType::Review),
            "other" => Ok(DocType::Other),
            _ => Err(UnknownDocType(s.to_string())),
        }
    }
}

/// The four levels at which co-occurrence networks are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Author,
    Institution,
    Country,
    Keyword,
}

impl EntityKind {
    pub const ALL: [EntityKind; 4] = [
        EntityKind::Author,
        EntityKind::Institution,
        EntityKind::Country,
        EntityKind::Keyword,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Author => "author",
            EntityKind::Institution => "institution",
            EntityKind::Country => "country",
            EntityKind::Keyword => "keyword",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "author" | "authors" => Ok(EntityKind::Author),
            "institution" | "institutions" | "university" | "universities" => {
                Ok(EntityKind::Institution)
            }
            "country" | "countries" => Ok(EntityKind::Country),
            "keyword" | "keywords" => Ok(EntityKind::Keyword),
            other => Err(format!("unknown entity kind `{other}`")),
        }
    }
}

/// One publication with its entities already normalized.
///
/// `affiliations` keeps the raw address strings a record was parsed from; it
/// is informational only and is not carried by the canonical line format.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiblioRecord {
    pub record_id: String,
    pub authors: Vec<String>,
    pub affiliations: Vec<String>,
    pub institutions: Vec<String>,
    pub countries: Vec<String>,
    pub keywords: Vec<String>,
    pub year: Option<u16>,
    pub doc_type: DocType,
}

impl BiblioRecord {
    pub fn entities(&self, kind: EntityKind) -> &[String] {
        match kind {
            EntityKind::Author => &self.authors,
            EntityKind::Institution => &self.institutions,
            EntityKind::Country => &self.countries,
            EntityKind::Keyword => &self.keywords,
        }
    }
}

/// Deduplicated entity names of one level, in first-appearance order.
pub fn extract_entities(record: &BiblioRecord, kind: EntityKind) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for name in record.entities(kind) {
        if !name.is_empty() && !out.iter().any(|n| n == name) {
            out.push(name.clone());
        }
    }
    out
}

/// Appends `item` unless it is empty or already present.
pub(crate) fn push_unique(list: &mut Vec<String>, item: String) {
    if !item.is_empty() && !list.contains(&item) {
        list.push(item);
    }
}
