use std::collections::BTreeSet;

use thiserror::Error;

use super::record::{BiblioRecord, DocType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("year_min {min} is greater than year_max {max}")]
pub struct InvalidFilter {
    pub min: u16,
    pub max: u16,
}

/// Year range (inclusive on both ends) and document-type selection.
///
/// `doc_types == None` admits every type. A record without a year fails any
/// filter that sets a year bound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusFilter {
    year_min: Option<u16>,
    year_max: Option<u16>,
    doc_types: Option<BTreeSet<DocType>>,
}

impl CorpusFilter {
    pub fn new(
        year_min: Option<u16>,
        year_max: Option<u16>,
        doc_types: Option<BTreeSet<DocType>>,
    ) -> Result<Self, InvalidFilter> {
        if let (Some(min), Some(max)) = (year_min, year_max) {
            if min > max {
                return Err(InvalidFilter { min, max });
            }
        }
        Ok(Self {
            year_min,
            year_max,
            doc_types,
        })
    }

    pub fn year_min(&self) -> Option<u16> {
        self.year_min
    }

    pub fn year_max(&self) -> Option<u16> {
        self.year_max
    }

    pub fn doc_types(&self) -> Option<&BTreeSet<DocType>> {
        self.doc_types.as_ref()
    }

    pub fn is_unset(&self) -> bool {
        self.year_min.is_none() && self.year_max.is_none() && self.doc_types.is_none()
    }

    pub fn accepts(&self, record: &BiblioRecord) -> bool {
        if self.year_min.is_some() || self.year_max.is_some() {
            let Some(year) = record.year else {
                return false;
            };
            if self.year_min.is_some_and(|min| year < min)
                || self.year_max.is_some_and(|max| year > max)
            {
                return false;
            }
        }
        match &self.doc_types {
            Some(types) => types.contains(&record.doc_type),
            None => true,
        }
    }
}

/// Records accepted by `filter`, in input order.
pub fn filter_corpus(records: &[BiblioRecord], filter: &CorpusFilter) -> Vec<BiblioRecord> {
    records
        .iter()
        .filter(|r| filter.accepts(r))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(id: &str, year: Option<u16>, doc_type: DocType) -> BiblioRecord {
        BiblioRecord {
            record_id: id.into(),
            year,
            doc_type,
            ..Default::default()
        }
    }

    #[test]
    fn year_bounds_are_inclusive() {
        let recs = vec![
            rec("a", Some(1999), DocType::Article),
            rec("b", Some(2000), DocType::Article),
            rec("c", Some(2023), DocType::Article),
        ];
        let f = CorpusFilter::new(Some(2000), Some(2023), None).unwrap();
        let ids: Vec<_> = filter_corpus(&recs, &f)
            .into_iter()
            .map(|r| r.record_id)
            .collect();
        assert_eq!(ids, ["b", "c"]);
    }

    #[test]
    fn doc_type_selection() {
        let recs = vec![
            rec("a", Some(2001), DocType::Article),
            rec("b", Some(2001), DocType::Review),
            rec("c", None, DocType::Article),
        ];
        let f = CorpusFilter::new(None, None, Some([DocType::Article].into())).unwrap();
        let ids: Vec<_> = filter_corpus(&recs, &f)
            .into_iter()
            .map(|r| r.record_id)
            .collect();
        assert_eq!(ids, ["a", "c"]);
    }

    #[test]
    fn unset_filter_is_identity() {
        let recs = vec![
            rec("a", None, DocType::Other),
            rec("b", Some(1950), DocType::Review),
        ];
        assert!(CorpusFilter::default().is_unset());
        assert_eq!(filter_corpus(&recs, &CorpusFilter::default()), recs);
    }

    #[test]
    fn missing_year_fails_year_filter() {
        let f = CorpusFilter::new(Some(2000), None, None).unwrap();
        assert!(!f.accepts(&rec("a", None, DocType::Article)));
    }

    #[test]
    fn inverted_range_rejected() {
        assert_eq!(
            CorpusFilter::new(Some(2024), Some(2000), None),
            Err(InvalidFilter {
                min: 2024,
                max: 2000
            })
        );
    }

    proptest! {
        #[test]
        fn filtering_is_a_projection(
            years in proptest::collection::vec(proptest::option::of(1990u16..2030), 0..30),
            lo in 1990u16..2030,
            span in 0u16..20,
            article_only in any::<bool>(),
        ) {
            let recs: Vec<_> = years
                .iter()
                .enumerate()
                .map(|(i, y)| rec(&i.to_string(), *y, DocType::ALL[i % 6]))
                .collect();
            let types = article_only.then(|| BTreeSet::from([DocType::Article]));
            let f = CorpusFilter::new(Some(lo), Some(lo + span), types).unwrap();
            let once = filter_corpus(&recs, &f);
            prop_assert_eq!(filter_corpus(&once, &f), once);
        }
    }
}
