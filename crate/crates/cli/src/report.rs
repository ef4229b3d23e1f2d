//! `report.md`: a Markdown summary assembled from the other outputs.
//!
//! The report holds no timings and no absolute paths, so two runs over the
//! same inputs produce the same file wherever they write it.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::manifest::Manifest;
use crate::output::{Staged, MANIFEST_FILE};
use crate::pipeline::{
    centrality_file, finish, ranking_file, read_required, summary_file, DOC_TYPES_FILE, YEARS_FILE,
};
use crate::CliError;

pub const REPORT_FILE: &str = "report.md";

/// Rows of a small CSV file, header and `#` lines dropped.
fn rows(stage: &'static str, path: &Path, text: &str) -> Result<Vec<Vec<String>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| CliError::input(stage, format!("{}: {e}", path.display())))?;
        out.push(row.iter().map(str::to_string).collect());
    }
    Ok(out)
}

fn table(out: &mut String, header: &[&str], body: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in body {
        let cells: Vec<String> = row.iter().map(|c| c.replace('|', "\\|")).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out.push('\n');
}

fn num(v: Option<&Value>) -> String {
    match v {
        Some(Value::Number(n)) => match (n.as_u64(), n.as_f64()) {
            (Some(u), _) => u.to_string(),
            (None, Some(f)) => format!("{f:.3}"),
            _ => n.to_string(),
        },
        _ => "-".to_string(),
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) => items.iter().map(value_text).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

pub fn report(cfg: &RunConfig) -> Result<(), CliError> {
    const STAGE: &str = "report";
    let started = Instant::now();
    let mut required = vec![
        MANIFEST_FILE.to_string(),
        DOC_TYPES_FILE.to_string(),
        YEARS_FILE.to_string(),
    ];
    for &kind in &cfg.kinds {
        required.push(centrality_file(kind));
        required.push(summary_file(kind));
        required.push(ranking_file(kind));
    }
    let missing: Vec<&str> = required
        .iter()
        .filter(|name| !cfg.out.join(name).is_file())
        .map(String::as_str)
        .collect();
    if !missing.is_empty() {
        return Err(CliError::input(
            STAGE,
            format!(
                "missing {} in {}; run the earlier stages first",
                missing.join(", "),
                cfg.out.display()
            ),
        ));
    }
    let manifest = Manifest::load_or_default(&cfg.out)
        .map_err(CliError::io(STAGE, &cfg.out.join(MANIFEST_FILE)))?;
    let hint = "run the earlier stages first";
    let read = |name: &str| -> Result<Vec<Vec<String>>, CliError> {
        let path = cfg.out.join(name);
        let text = read_required(STAGE, &path, hint)?;
        rows(STAGE, &path, &text)
    };

    let mut md = String::from("# Co-authorship network report\n\n");

    md.push_str("## Run configuration\n\n");
    let inputs: Vec<String> = cfg
        .inputs
        .iter()
        .map(|p| {
            p.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string())
        })
        .collect();
    let mut echo = cfg.echo();
    echo["inputs"] = json!(inputs);
    let settings: Vec<Vec<String>> = [
        "inputs",
        "format",
        "year_min",
        "year_max",
        "doc_types",
        "kinds",
        "betweenness_norm",
        "closeness",
        "eigen",
        "eigen_tol",
        "eigen_max_iter",
        "community_algorithm",
        "seed",
        "resolution",
        "criteria",
        "weights",
        "directions",
        "top_k",
    ]
    .iter()
    .map(|k| vec![k.to_string(), value_text(&echo[*k])])
    .collect();
    table(&mut md, &["setting", "value"], &settings);

    md.push_str("## Corpus\n\n");
    let records = manifest
        .get("corpus")
        .and_then(|c| c.get("records"))
        .map(value_text)
        .unwrap_or_else(|| "-".into());
    let _ = writeln!(
        md,
        "Records after filtering: {records}. Keywords are the union of DE and ID.\n"
    );
    table(&mut md, &["doc_type", "records"], &read(DOC_TYPES_FILE)?);
    table(&mut md, &["year", "records"], &read(YEARS_FILE)?);

    md.push_str("## Network statistics\n\n");
    let mut stats = Vec::new();
    for &kind in &cfg.kinds {
        let g = manifest.entry("graphs", kind.as_str());
        let a = manifest.entry("analysis", kind.as_str());
        let field = |v: Option<&Value>, key: &str| num(v.and_then(|v| v.get(key)));
        stats.push(vec![
            kind.to_string(),
            field(g, "nodes"),
            field(g, "edges"),
            field(g, "density"),
            field(g, "average_degree"),
            field(g, "giant_component_size"),
            field(g, "component_count"),
            field(a, "average_clustering"),
        ]);
    }
    table(
        &mut md,
        &[
            "network",
            "nodes",
            "edges",
            "density",
            "average degree",
            "giant component",
            "components",
            "average clustering",
        ],
        &stats,
    );

    md.push_str("## Communities\n\n");
    for &kind in &cfg.kinds {
        let a = manifest.entry("analysis", kind.as_str());
        let _ = writeln!(md, "### {kind}\n");
        let _ = writeln!(
            md,
            "Louvain, seed {}, resolution {}: {} communities, modularity {}.\n",
            a.and_then(|a| a.get("seed"))
                .map(value_text)
                .unwrap_or_else(|| "-".into()),
            a.and_then(|a| a.get("resolution"))
                .map(value_text)
                .unwrap_or_else(|| "-".into()),
            num(a.and_then(|a| a.get("communities"))),
            num(a.and_then(|a| a.get("modularity"))),
        );
        let summary: Vec<Vec<String>> = read(&summary_file(kind))?
            .into_iter()
            .map(|mut r| {
                if let Some(d) = r.get_mut(3) {
                    if let Ok(v) = d.parse::<f64>() {
                        *d = format!("{v:.3}");
                    }
                }
                if let Some(m) = r.get_mut(4) {
                    *m = m.replace(';', "; ");
                }
                r
            })
            .collect();
        table(
            &mut md,
            &["community", "nodes", "edges", "density", "top members"],
            &summary,
        );
    }

    md.push_str("## Top-ranked entities\n\n");
    for &kind in &cfg.kinds {
        let _ = writeln!(md, "### {kind}\n");
        let ranking = read(&ranking_file(kind))?;
        // rank,id,label,C,... : keep rank, label and C.
        let body: Vec<Vec<String>> = ranking
            .into_iter()
            .map(|r| {
                let c = r.get(3).and_then(|c| c.parse::<f64>().ok());
                vec![
                    r.first().cloned().unwrap_or_default(),
                    r.get(2).cloned().unwrap_or_default(),
                    c.map(|c| format!("{c:.4}")).unwrap_or_default(),
                ]
            })
            .collect();
        if body.is_empty() {
            md.push_str("No ranked entities.\n\n");
        } else {
            table(&mut md, &["rank", "label", "C"], &body);
        }
    }

    let mut staged = Staged::new();
    staged.add(REPORT_FILE, md);
    let details = json!({ "kinds": cfg.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>() });
    finish(STAGE, cfg, staged, manifest, started, details, &[])
}
