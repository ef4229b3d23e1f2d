//! The ingest, build, analyze and rank stages.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io;
use std::path::Path;
use std::time::Instant;

use coauthnet::community::{
    detect_communities, summarize_communities, write_partition_csv, write_summary_csv,
};
use coauthnet::corpus::{
    filter_corpus, parse_canonical_records, parse_wos_export_with_prefix, serialize_canonical,
    BiblioRecord, DocType, EntityKind,
};
use coauthnet::format::fmt_float;
use coauthnet::metrics::{
    clustering_coefficient, compute_centralities, read_centrality_csv, write_centrality_csv,
    MetricsError,
};
use coauthnet::network::{
    build_co_network, graph_stats, read_graph_csv, write_edge_list, write_gexf, write_node_list,
    AttributeValues, NodeAttribute,
};
use coauthnet::topsis::{
    build_decision_matrix, rank as topsis_rank, write_ranking_csv, RANKING_HEADER,
};
use serde_json::{json, Value};

use crate::config::{ConfigError, InputFormat, RunConfig};
use crate::manifest::Manifest;
use crate::output::Staged;
use crate::CliError;

pub const RECORDS_FILE: &str = "records.tsv";
pub const DOC_TYPES_FILE: &str = "corpus_doc_types.csv";
pub const YEARS_FILE: &str = "corpus_years.csv";

pub fn edges_file(kind: EntityKind) -> String {
    format!("{kind}_edges.csv")
}

pub fn nodes_file(kind: EntityKind) -> String {
    format!("{kind}_nodes.csv")
}

pub fn gexf_file(kind: EntityKind) -> String {
    format!("{kind}.gexf")
}

pub fn analyzed_gexf_file(kind: EntityKind) -> String {
    format!("{kind}_analyzed.gexf")
}

pub fn centrality_file(kind: EntityKind) -> String {
    format!("{kind}_centrality.csv")
}

pub fn communities_file(kind: EntityKind) -> String {
    format!("{kind}_communities.csv")
}

pub fn summary_file(kind: EntityKind) -> String {
    format!("{kind}_community_summary.csv")
}

pub fn ranking_file(kind: EntityKind) -> String {
    format!("{kind}_ranking.csv")
}

/// Reads an artifact an earlier stage should have produced.
pub(crate) fn read_required(
    stage: &'static str,
    path: &Path,
    hint: &str,
) -> Result<String, CliError> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Err(CliError::input(
            stage,
            format!("missing {}; {hint}", path.display()),
        )),
        Err(e) => Err(CliError::io(stage, path)(e)),
    }
}

/// Commits `staged`, then records the stage in the manifest.
pub(crate) fn finish(
    stage: &'static str,
    cfg: &RunConfig,
    staged: Staged,
    mut manifest: Manifest,
    started: Instant,
    mut details: Value,
    warnings: &[String],
) -> Result<(), CliError> {
    staged
        .commit(&cfg.out)
        .map_err(CliError::io(stage, &cfg.out))?;
    for w in warnings {
        eprintln!("warning: {stage}: {w}");
    }
    details["seconds"] = json!(started.elapsed().as_secs_f64());
    manifest.set("config", cfg.echo());
    manifest.set_entry("stages", stage, details);
    manifest.set_warnings(stage, warnings);
    manifest.write(&cfg.out).map_err(CliError::io(
        stage,
        &cfg.out.join(crate::output::MANIFEST_FILE),
    ))
}

fn load_manifest(stage: &'static str, cfg: &RunConfig) -> Result<Manifest, CliError> {
    Manifest::load_or_default(&cfg.out).map_err(CliError::io(
        stage,
        &cfg.out.join(crate::output::MANIFEST_FILE),
    ))
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses every input, drops records whose id repeats an earlier one, and
/// applies the corpus filter.
pub fn ingest(cfg: &RunConfig) -> Result<(), CliError> {
    const STAGE: &str = "ingest";
    let started = Instant::now();
    if cfg.inputs.is_empty() {
        return Err(ConfigError::Invalid("no input files given".into()).into());
    }
    if let Some(missing) = cfg.inputs.iter().find(|p| !p.is_file()) {
        return Err(
            ConfigError::Invalid(format!("input {} does not exist", missing.display())).into(),
        );
    }
    let manifest = load_manifest(STAGE, cfg)?;
    let mut warnings = Vec::new();
    let mut records: Vec<BiblioRecord> = Vec::new();
    let mut ids = HashSet::new();
    let mut read = 0usize;
    let mut duplicates = 0usize;
    let several = cfg.inputs.len() > 1;
    for (i, path) in cfg.inputs.iter().enumerate() {
        let bytes = fs::read(path).map_err(CliError::io(STAGE, path))?;
        let text = String::from_utf8(bytes).map_err(|e| {
            CliError::input(
                STAGE,
                format!(
                    "{}: invalid UTF-8 at byte {}",
                    path.display(),
                    e.utf8_error().valid_up_to()
                ),
            )
        })?;
        let parsed = match cfg.format {
            InputFormat::Wos => {
                let prefix = if several {
                    format!("f{}-", i + 1)
                } else {
                    String::new()
                };
                parse_wos_export_with_prefix(&text, &prefix)
            }
            InputFormat::Canonical => parse_canonical_records(&text),
        }
        .map_err(|e| CliError::input(STAGE, format!("{}: {e}", path.display())))?;
        read += parsed.len();
        for r in parsed {
            if ids.insert(r.record_id.clone()) {
                records.push(r);
            } else {
                duplicates += 1;
            }
        }
    }
    if duplicates > 0 {
        warnings.push(format!(
            "{duplicates} record(s) repeated an id seen in an earlier input and were skipped"
        ));
    }
    let kept = filter_corpus(&records, &cfg.filter);
    if kept.is_empty() {
        warnings.push("no records remain after filtering".into());
    }

    let mut by_type: BTreeMap<DocType, usize> = BTreeMap::new();
    let mut by_year: BTreeMap<Option<u16>, usize> = BTreeMap::new();
    for r in &kept {
        *by_type.entry(r.doc_type).or_default() += 1;
        *by_year.entry(r.year).or_default() += 1;
    }
    let type_rows = by_type
        .iter()
        .map(|(d, n)| vec![d.as_str().to_string(), n.to_string()]);
    // Records without a year go last, so the year column stays sorted.
    let mut year_rows: Vec<Vec<String>> = by_year
        .iter()
        .filter_map(|(y, n)| y.map(|y| vec![y.to_string(), n.to_string()]))
        .collect();
    if let Some(n) = by_year.get(&None) {
        year_rows.push(vec!["unknown".into(), n.to_string()]);
    }

    let mut staged = Staged::new();
    staged.add(RECORDS_FILE, serialize_canonical(&kept));
    staged.add(
        DOC_TYPES_FILE,
        csv_text(&["doc_type", "records"], type_rows),
    );
    staged.add(YEARS_FILE, csv_text(&["year", "records"], year_rows));

    let mut manifest = manifest;
    manifest.set(
        "corpus",
        json!({
            "records": kept.len(),
            "keyword_fields": "DE+ID",
            "doc_types": by_type.iter().map(|(d, n)| (d.as_str().to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
        }),
    );
    let details = json!({
        "inputs": cfg.inputs.len(),
        "records_read": read,
        "duplicates_skipped": duplicates,
        "records_kept": kept.len(),
    });
    finish(STAGE, cfg, staged, manifest, started, details, &warnings)
}

/// Builds one co-occurrence network per configured entity kind.
pub fn build(cfg: &RunConfig) -> Result<(), CliError> {
    const STAGE: &str = "build";
    let started = Instant::now();
    let path = cfg.out.join(RECORDS_FILE);
    let text = read_required(STAGE, &path, "run `ingest` first")?;
    let records = parse_canonical_records(&text)
        .map_err(|e| CliError::input(STAGE, format!("{}: {e}", path.display())))?;
    let mut manifest = load_manifest(STAGE, cfg)?;
    let mut warnings = Vec::new();
    if records.is_empty() {
        warnings.push("corpus is empty; writing empty graphs".into());
    }
    let mut staged = Staged::new();
    for &kind in &cfg.kinds {
        let g = build_co_network(&records, kind);
        let stats = graph_stats(&g);
        let degree: Vec<u64> = (0..g.node_count()).map(|v| g.degree(v) as u64).collect();
        let strength: Vec<u64> = (0..g.node_count())
            .map(|v| g.neighbor_weights(v).iter().map(|&w| u64::from(w)).sum())
            .collect();
        staged.add(edges_file(kind), write_edge_list(&g));
        staged.add(nodes_file(kind), write_node_list(&g));
        staged.add(
            gexf_file(kind),
            write_gexf(
                &g,
                &format!("{kind} co-occurrence network"),
                &[
                    NodeAttribute {
                        title: "degree",
                        values: AttributeValues::Integer(&degree),
                    },
                    NodeAttribute {
                        title: "strength",
                        values: AttributeValues::Integer(&strength),
                    },
                ],
            ),
        );
        manifest.set_entry(
            "graphs",
            kind.as_str(),
            json!({
                "nodes": stats.nodes,
                "edges": stats.edges,
                "total_weight": g.total_weight(),
                "density": stats.density,
                "average_degree": stats.average_degree,
                "giant_component_size": stats.giant_component_size,
                "component_count": stats.component_count,
            }),
        );
    }
    let details = json!({
        "records": records.len(),
        "kinds": cfg.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
    });
    finish(STAGE, cfg, staged, manifest, started, details, &warnings)
}

/// Centralities, clustering and communities for every built network.
pub fn analyze(cfg: &RunConfig) -> Result<(), CliError> {
    const STAGE: &str = "analyze";
    let started = Instant::now();
    let mut manifest = load_manifest(STAGE, cfg)?;
    let mut staged = Staged::new();
    let mut warnings = Vec::new();
    for &kind in &cfg.kinds {
        let nodes = read_required(STAGE, &cfg.out.join(nodes_file(kind)), "run `build` first")?;
        let edges = read_required(STAGE, &cfg.out.join(edges_file(kind)), "run `build` first")?;
        let g = read_graph_csv(&nodes, &edges)
            .map_err(|e| CliError::input(STAGE, format!("{kind} network: {e}")))?;
        if g.is_empty() {
            warnings.push(format!("{kind} network is empty"));
        }
        let table = compute_centralities(&g, &cfg.centrality).map_err(|e| match e {
            MetricsError::NotConverged { .. } => CliError::NotConverged {
                stage: STAGE,
                message: format!("{kind} network: {e}"),
            },
            other => CliError::input(STAGE, format!("{kind} network: {other}")),
        })?;
        let run = table.run.expect("freshly computed");
        let clustering = clustering_coefficient(&g);
        let partition = detect_communities(&g, cfg.seed, cfg.resolution);
        let summaries = summarize_communities(&g, &partition, cfg.top_k)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;

        staged.add(centrality_file(kind), write_centrality_csv(&table));
        staged.add(communities_file(kind), write_partition_csv(&g, &partition));
        staged.add(summary_file(kind), write_summary_csv(&summaries));

        let degree: Vec<u64> = table.degree.iter().map(|&d| u64::from(d)).collect();
        let community: Vec<u64> = partition.assignment.iter().map(|&c| c as u64).collect();
        staged.add(
            analyzed_gexf_file(kind),
            write_gexf(
                &g,
                &format!("{kind} co-occurrence network with centralities and communities"),
                &[
                    NodeAttribute {
                        title: "degree",
                        values: AttributeValues::Integer(&degree),
                    },
                    NodeAttribute {
                        title: "strength",
                        values: AttributeValues::Integer(&table.strength),
                    },
                    NodeAttribute {
                        title: "closeness",
                        values: AttributeValues::Double(&table.closeness),
                    },
                    NodeAttribute {
                        title: "betweenness",
                        values: AttributeValues::Double(&table.betweenness),
                    },
                    NodeAttribute {
                        title: "eigenvector",
                        values: AttributeValues::Double(&table.eigenvector),
                    },
                    NodeAttribute {
                        title: "clustering",
                        values: AttributeValues::Double(&clustering.local),
                    },
                    NodeAttribute {
                        title: "community",
                        values: AttributeValues::Integer(&community),
                    },
                ],
            ),
        );
        manifest.set_entry(
            "analysis",
            kind.as_str(),
            json!({
                "nodes": g.node_count(),
                "betweenness_norm": run.options.betweenness.as_str(),
                "closeness": run.options.closeness.as_str(),
                "eigen": run.options.eigen.as_str(),
                "eigen_tol": run.options.eigen_tol,
                "eigenvalue": run.eigenvalue,
                "eigen_iterations": run.eigen_iterations,
                "average_clustering": clustering.average,
                "community_algorithm": "louvain",
                "seed": partition.seed,
                "resolution": partition.resolution,
                "communities": partition.community_count,
                "modularity": partition.modularity,
                "level_modularity": partition.level_modularity,
            }),
        );
    }
    let details = json!({ "kinds": cfg.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>() });
    finish(STAGE, cfg, staged, manifest, started, details, &warnings)
}

/// One-line description of how a ranking was produced.
fn provenance(cfg: &RunConfig, manifest: &Manifest, kind: EntityKind) -> String {
    let analysis = manifest.entry("analysis", kind.as_str());
    let mode = |key: &str, fallback: &str| {
        analysis
            .and_then(|a| a.get(key))
            .and_then(Value::as_str)
            .unwrap_or(fallback)
            .to_string()
    };
    let seed = analysis
        .and_then(|a| a.get("seed"))
        .and_then(Value::as_u64)
        .unwrap_or(cfg.seed);
    let join = |items: Vec<String>| items.join(";");
    format!(
        "provenance method=topsis kind={kind} criteria={} weights={} directions={} \
         betweenness_norm={} closeness={} eigen={} seed={seed} ties=C-desc,label-asc",
        join(cfg.criteria.iter().map(|c| c.to_string()).collect()),
        join(cfg.spec.weights().iter().map(|&w| fmt_float(w)).collect()),
        join(
            cfg.spec
                .directions()
                .iter()
                .map(|d| d.as_str().to_string())
                .collect()
        ),
        mode("betweenness_norm", cfg.centrality.betweenness.as_str()),
        mode("closeness", cfg.centrality.closeness.as_str()),
        mode("eigen", cfg.centrality.eigen.as_str()),
    )
}

/// TOPSIS ranking of every analyzed network, top `k` rows.
pub fn rank(cfg: &RunConfig) -> Result<(), CliError> {
    const STAGE: &str = "rank";
    let started = Instant::now();
    let mut manifest = load_manifest(STAGE, cfg)?;
    let mut staged = Staged::new();
    let mut warnings = Vec::new();
    for &kind in &cfg.kinds {
        let path = cfg.out.join(centrality_file(kind));
        let text = read_required(STAGE, &path, "run `analyze` first")?;
        let table = read_centrality_csv(&text)
            .map_err(|e| CliError::input(STAGE, format!("{}: {e}", path.display())))?;
        let prov = provenance(cfg, &manifest, kind);
        if table.is_empty() {
            warnings.push(format!("{kind} network is empty; ranking has no rows"));
            staged.add(
                ranking_file(kind),
                format!("# {prov}\n{}\n", RANKING_HEADER.join(",")),
            );
            manifest.set_entry(
                "ranking",
                kind.as_str(),
                json!({ "alternatives": 0, "rows": 0 }),
            );
            continue;
        }
        if cfg.top_k > table.len() {
            warnings.push(format!(
                "top_k {} exceeds the {} {kind} nodes; ranking all of them",
                cfg.top_k,
                table.len()
            ));
        }
        let matrix = build_decision_matrix(&table, &cfg.criteria)
            .map_err(|e| CliError::input(STAGE, format!("{kind}: {e}")))?;
        let result = topsis_rank(&matrix, &cfg.spec)
            .map_err(|e| ConfigError::Invalid(format!("{kind}: {e}")))?;
        let zero = result.zero_criteria();
        if !zero.is_empty() {
            warnings.push(format!(
                "{kind}: criteria {} are zero for every node and do not affect the ranking",
                zero.join(", ")
            ));
        }
        staged.add(
            ranking_file(kind),
            write_ranking_csv(&result, &table, &prov, cfg.top_k),
        );
        manifest.set_entry(
            "ranking",
            kind.as_str(),
            json!({
                "alternatives": table.len(),
                "rows": cfg.top_k.min(table.len()),
                "zero_criteria": zero,
            }),
        );
    }
    let details = json!({ "kinds": cfg.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>() });
    finish(STAGE, cfg, staged, manifest, started, details, &warnings)
}
