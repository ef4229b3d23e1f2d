//! Run configuration: a `key = value` file overlaid by command-line flags.
//!
//! ```text
//! # comment
//! input = data/savedrecs.txt
//! input = data/savedrecs2.txt
//! format = wos
//! year_min = 2000
//! year_max = 2023
//! doc_types = Article, Review
//! kinds = author, country
//! weights = 0.4, 0.2, 0.2, 0.2
//! ```
//!
//! `input` may repeat; every other key may appear once. Relative paths in a
//! file are resolved against the file's directory.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use coauthnet::corpus::{CorpusFilter, DocType, EntityKind};
use coauthnet::metrics::{BetweennessNorm, CentralityOptions, ClosenessMode, EigenWeighting};
use coauthnet::topsis::{CriteriaSpec, Criterion, Direction};
use serde_json::{json, Value};
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOP_K: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{origin}, line {line}: {message}")]
    Line {
        origin: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Wos,
    Canonical,
}

impl InputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            InputFormat::Wos => "wos",
            InputFormat::Canonical => "canonical",
        }
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wos" => Ok(InputFormat::Wos),
            "canonical" => Ok(InputFormat::Canonical),
            other => Err(format!("unknown input format `{other}`")),
        }
    }
}

/// Raw settings before validation. Every field is optional so that a file
/// and the command line can be merged key by key.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub inputs: Vec<PathBuf>,
    pub format: Option<InputFormat>,
    pub out: Option<PathBuf>,
    pub year_min: Option<u16>,
    pub year_max: Option<u16>,
    pub doc_types: Option<Option<BTreeSet<DocType>>>,
    pub kinds: Option<Vec<EntityKind>>,
    pub betweenness: Option<BetweennessNorm>,
    pub closeness: Option<ClosenessMode>,
    pub eigen: Option<EigenWeighting>,
    pub eigen_tol: Option<f64>,
    pub eigen_max_iter: Option<usize>,
    pub seed: Option<u64>,
    pub resolution: Option<f64>,
    pub criteria: Option<Vec<Criterion>>,
    pub weights: Option<Vec<f64>>,
    pub directions: Option<Vec<Direction>>,
    pub top_k: Option<usize>,
    pub threads: Option<usize>,
}

impl ConfigLayer {
    /// Parses a config file body. `base` resolves relative paths.
    pub fn parse(text: &str, origin: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut layer = ConfigLayer::default();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| ConfigError::Line {
                origin: origin.to_string(),
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let key = key.trim();
            let value = value.trim();
            if key != "input" && !seen.insert(key.to_string()) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            layer.set(key, value, base).map_err(err)?;
        }
        Ok(layer)
    }

    pub fn set(&mut self, key: &str, value: &str, base: &Path) -> Result<(), String> {
        match key {
            "input" => self.inputs.push(resolve(base, value)?),
            "format" => self.format = Some(value.parse()?),
            "out" => self.out = Some(resolve(base, value)?),
            "year_min" => self.year_min = Some(parse_num(key, value)?),
            "year_max" => self.year_max = Some(parse_num(key, value)?),
            "doc_types" => self.doc_types = Some(parse_doc_types(value)?),
            "kinds" => self.kinds = Some(parse_list(value)?),
            "betweenness_norm" => self.betweenness = Some(value.parse()?),
            "closeness" => self.closeness = Some(value.parse()?),
            "eigen" => self.eigen = Some(value.parse()?),
            "eigen_tol" => self.eigen_tol = Some(parse_num(key, value)?),
            "eigen_max_iter" => self.eigen_max_iter = Some(parse_num(key, value)?),
            "seed" => self.seed = Some(parse_num(key, value)?),
            "resolution" => self.resolution = Some(parse_num(key, value)?),
            "criteria" => self.criteria = Some(parse_list(value)?),
            "weights" => self.weights = Some(parse_weights(value)?),
            "directions" => self.directions = Some(parse_list(value)?),
            "top_k" => self.top_k = Some(parse_num(key, value)?),
            "threads" => self.threads = Some(parse_num(key, value)?),
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// `other` wins wherever it sets a value. Inputs are replaced, not
    /// appended, when `other` names any.
    pub fn overlay(mut self, other: ConfigLayer) -> ConfigLayer {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        if !other.inputs.is_empty() {
            self.inputs = other.inputs;
        }
        take!(
            format,
            out,
            year_min,
            year_max,
            doc_types,
            kinds,
            betweenness,
            closeness,
            eigen,
            eigen_tol,
            eigen_max_iter,
            seed,
            resolution,
            criteria,
            weights,
            directions,
            top_k,
            threads
        );
        self
    }
}

fn resolve(base: &Path, value: &str) -> Result<PathBuf, String> {
    if value.is_empty() {
        return Err("empty path".into());
    }
    let p = PathBuf::from(value);
    Ok(if p.is_absolute() { p } else { base.join(p) })
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value {value:?} for `{key}`"))
}

fn items(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_list<T: FromStr>(value: &str) -> Result<Vec<T>, String>
where
    T::Err: ToString,
{
    let list = items(value)
        .map(|s| s.parse::<T>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if list.is_empty() {
        return Err("empty list".into());
    }
    Ok(list)
}

pub fn parse_weights(value: &str) -> Result<Vec<f64>, String> {
    let list = items(value)
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| format!("invalid weight {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if list.is_empty() {
        return Err("empty weight list".into());
    }
    Ok(list)
}

fn parse_doc_types(value: &str) -> Result<Option<BTreeSet<DocType>>, String> {
    if value.eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    let set = items(value)
        .map(|s| s.parse::<DocType>().map_err(|e| e.to_string()))
        .collect::<Result<BTreeSet<_>, _>>()?;
    if set.is_empty() {
        return Err("empty doc_types list".into());
    }
    Ok(Some(set))
}

/// Validated settings for a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub format: InputFormat,
    pub out: PathBuf,
    pub filter: CorpusFilter,
    pub kinds: Vec<EntityKind>,
    pub centrality: CentralityOptions,
    pub seed: u64,
    pub resolution: f64,
    pub criteria: Vec<Criterion>,
    pub spec: CriteriaSpec,
    pub top_k: usize,
    pub threads: usize,
}

impl RunConfig {
    pub fn from_layer(layer: ConfigLayer) -> Result<Self, ConfigError> {
        let invalid = |m: String| ConfigError::Invalid(m);
        let filter = CorpusFilter::new(layer.year_min, layer.year_max, layer.doc_types.flatten())
            .map_err(|e| invalid(e.to_string()))?;

        let mut kinds = layer.kinds.unwrap_or_else(|| EntityKind::ALL.to_vec());
        let mut seen = BTreeSet::new();
        kinds.retain(|k| seen.insert(*k));

        let defaults = CentralityOptions::default();
        let centrality = CentralityOptions {
            betweenness: layer.betweenness.unwrap_or(defaults.betweenness),
            closeness: layer.closeness.unwrap_or(defaults.closeness),
            eigen: layer.eigen.unwrap_or(defaults.eigen),
            eigen_tol: layer.eigen_tol.unwrap_or(defaults.eigen_tol),
            eigen_max_iter: layer.eigen_max_iter.unwrap_or(defaults.eigen_max_iter),
        };
        if !(centrality.eigen_tol > 0.0 && centrality.eigen_tol.is_finite()) {
            return Err(invalid("eigen_tol must be positive".into()));
        }
        if centrality.eigen_max_iter == 0 {
            return Err(invalid("eigen_max_iter must be at least 1".into()));
        }

        let resolution = layer.resolution.unwrap_or(1.0);
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(invalid("resolution must be positive".into()));
        }

        let mut criteria = layer.criteria.unwrap_or_else(|| Criterion::ALL.to_vec());
        criteria.sort();
        criteria.dedup();
        let q = criteria.len();
        let weights = layer.weights.unwrap_or_else(|| vec![1.0 / q as f64; q]);
        if weights.len() != q {
            return Err(invalid(format!(
                "{} weights given for {q} criteria ({})",
                weights.len(),
                criteria
                    .iter()
                    .map(|c| c.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        let directions = layer
            .directions
            .unwrap_or_else(|| vec![Direction::Benefit; q]);
        let spec = CriteriaSpec::new(weights, directions).map_err(|e| invalid(e.to_string()))?;

        let top_k = layer.top_k.unwrap_or(DEFAULT_TOP_K);
        if top_k < 1 {
            return Err(invalid("top_k must be at least 1".into()));
        }

        Ok(RunConfig {
            inputs: layer.inputs,
            format: layer.format.unwrap_or_default(),
            out: layer.out.unwrap_or_else(|| PathBuf::from("coauthnet-out")),
            filter,
            kinds,
            centrality,
            seed: layer.seed.unwrap_or(DEFAULT_SEED),
            resolution,
            criteria,
            spec,
            top_k,
            threads: layer.threads.unwrap_or(0),
        })
    }

    /// Every effective setting, for the manifest.
    pub fn echo(&self) -> Value {
        json!({
            "inputs": self.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "format": self.format.as_str(),
            "out": self.out.display().to_string(),
            "year_min": self.filter.year_min(),
            "year_max": self.filter.year_max(),
            "doc_types": self.doc_types_str(),
            "kinds": self.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
            "betweenness_norm": self.centrality.betweenness.as_str(),
            "closeness": self.centrality.closeness.as_str(),
            "eigen": self.centrality.eigen.as_str(),
            "eigen_tol": self.centrality.eigen_tol,
            "eigen_max_iter": self.centrality.eigen_max_iter,
            "community_algorithm": "louvain",
            "seed": self.seed,
            "resolution": self.resolution,
            "criteria": self.criteria.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            "weights": self.spec.weights(),
            "directions": self.spec.directions().iter().map(|d| d.as_str()).collect::<Vec<_>>(),
            "top_k": self.top_k,
            "threads": self.threads,
        })
    }

    pub fn doc_types_str(&self) -> String {
        match self.filter.doc_types() {
            None => "all".to_string(),
            Some(set) => set.iter().map(|d| d.as_str()).collect::<Vec<_>>().join(","),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ConfigLayer, ConfigError> {
        ConfigLayer::parse(text, "run.conf", Path::new("/base"))
    }

    #[test]
    fn defaults() {
        let c = RunConfig::from_layer(ConfigLayer::default()).unwrap();
        assert_eq!(c.kinds, EntityKind::ALL);
        assert_eq!(c.spec.weights(), [0.25; 4]);
        assert_eq!(c.top_k, 20);
        assert_eq!(c.seed, 42);
        assert!(c.filter.is_unset());
    }

    #[test]
    fn file_values_and_relative_paths() {
        let layer = parse(
            "# run\ninput = a.txt\ninput=/abs/b.txt\n\nyear_min = 2000\nyear_max=2023\n\
             doc_types = Article, Review\nkinds = country\nweights = 0.4,0.2,0.2,0.2\ntop_k = 5\n",
        )
        .unwrap();
        assert_eq!(
            layer.inputs,
            [PathBuf::from("/base/a.txt"), PathBuf::from("/abs/b.txt")]
        );
        let c = RunConfig::from_layer(layer).unwrap();
        assert_eq!(c.filter.year_min(), Some(2000));
        assert_eq!(c.doc_types_str(), "Article,Review");
        assert_eq!(c.kinds, [EntityKind::Country]);
        assert_eq!(c.spec.weights(), [0.4, 0.2, 0.2, 0.2]);
    }

    #[test]
    fn line_errors() {
        for (text, line) in [
            ("seed = 1\nbogus = 2\n", 2),
            ("seed = x\n", 1),
            ("\n\nno equals sign\n", 3),
            ("seed = 1\nseed = 2\n", 2),
            ("closeness = sideways\n", 1),
            ("kinds = \n", 1),
        ] {
            match parse(text) {
                Err(ConfigError::Line { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn validation_errors() {
        let bad = [
            "top_k = 0\n",
            "weights = 0.5, 0.5\n",
            "weights = 0.5, 0.2, 0.2, 0.2\n",
            "year_min = 2020\nyear_max = 2010\n",
            "resolution = 0\n",
            "criteria = degree\nweights = 0.5, 0.5\n",
        ];
        for text in bad {
            let layer = parse(text).unwrap();
            assert!(RunConfig::from_layer(layer).is_err(), "{text:?}");
        }
    }

    #[test]
    fn overlay_prefers_later_layer() {
        let file = parse("seed = 1\ntop_k = 3\ninput = a\n").unwrap();
        let flags = ConfigLayer {
            seed: Some(9),
            ..Default::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.seed, Some(9));
        assert_eq!(merged.top_k, Some(3));
        assert_eq!(merged.inputs.len(), 1);
    }

    #[test]
    fn criteria_subset_gets_equal_weights() {
        let c = RunConfig::from_layer(parse("criteria = eigenvector, degree\n").unwrap()).unwrap();
        assert_eq!(c.criteria, [Criterion::Degree, Criterion::Eigenvector]);
        assert_eq!(c.spec.weights(), [0.5, 0.5]);
    }
}
