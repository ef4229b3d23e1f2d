//! Acceptance criteria 1 through 8. Each test prints one PASS/FAIL line to
//! stderr before asserting.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use coauthnet::community::{detect_communities, modularity};
use coauthnet::metrics::{
    betweenness_centrality, betweenness_raw, closeness_centrality, eigenvector_centrality,
    BetweennessNorm, ClosenessMode, EigenWeighting, CENTRALITY_HEADER,
};
use coauthnet::network::{average_degree, density, WeightedGraph};
use coauthnet::topsis::{rank, CriteriaSpec, DecisionMatrix, Direction, RANKING_HEADER};
use coauthnet_oracles as oracle;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Collects failures so the verdict line is printed before any panic.
struct Check {
    criterion: u32,
    failures: Vec<String>,
    started: Instant,
}

impl Check {
    fn new(criterion: u32) -> Self {
        Check {
            criterion,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn within(&mut self, limit: Duration) {
        let took = self.started.elapsed();
        self.expect(took <= limit, || format!("took {took:?}, limit {limit:?}"));
    }

    fn finish(self, detail: &str) {
        let line = if self.failures.is_empty() {
            format!(
                "acceptance criterion {}: PASS ({detail}; {:.2?})\n",
                self.criterion,
                self.started.elapsed()
            )
        } else {
            format!(
                "acceptance criterion {}: FAIL ({detail}): {}\n",
                self.criterion,
                self.failures.join("; ")
            )
        };
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        assert!(self.failures.is_empty(), "{line}");
    }
}

#[test]
fn criterion_1_density_reproduces_community_tables() {
    let mut c = Check::new(1);
    // (nodes, edges, printed density)
    let rows: &[(&str, usize, usize, f64)] = &[
        ("country purple", 69, 475, 0.202),
        ("country green", 26, 68, 0.209),
        ("country orange", 32, 160, 0.323),
        ("institution pink", 361, 981, 0.015),
        ("institution orange", 619, 2579, 0.013),
        ("institution green", 415, 1264, 0.015),
        ("institution purple", 664, 4093, 0.019),
        ("keyword red", 4099, 12739, 0.002),
        ("keyword purple", 5734, 19490, 0.001),
        ("keyword orange", 5674, 21075, 0.001),
        ("keyword green", 4788, 17749, 0.002),
    ];
    for &(name, n, m, printed) in rows {
        let d = density(n, m);
        c.expect((d - printed).abs() <= 0.0005, || {
            format!("{name}: {m}/C({n},2) = {d:.6}, printed {printed}")
        });
    }
    c.finish(&format!("{} community rows within 0.0005", rows.len()));
}

#[test]
fn criterion_2_average_degree_of_author_network() {
    let mut c = Check::new(2);
    let k = average_degree(43_789, 81_891);
    c.expect((k - 3.740).abs() <= 0.005, || format!("average degree {k}"));
    c.finish(&format!("2m/n = {k:.4}"));
}

fn assert_close(c: &mut Check, ours: &[f64], theirs: &[f64], tol: f64, what: &str) {
    for (i, (x, y)) in ours.iter().zip(theirs).enumerate() {
        c.expect((x - y).abs() <= tol, || {
            format!("{what} node {i}: {x} vs {y}")
        });
    }
}

/// Joins the components of a random graph with one edge each so that the
/// principal eigenvector is unique.
fn connect(n: usize, mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let comps = oracle::components(n, &edges);
    for pair in comps.windows(2) {
        edges.push((pair[0][0], pair[1][0]));
    }
    edges
}

#[test]
fn criterion_3_centralities_match_brute_force_oracles() {
    let mut c = Check::new(3);
    let mut eigen_cases = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=50);
        let p = rng.random_range(0.02..0.4);
        let edges = oracle::random_gnp(10_000 + seed, n, p);
        let g = WeightedGraph::from_unweighted(n, &edges);
        let tag = format!("graph {seed} (n={n})");

        assert_close(
            &mut c,
            &betweenness_raw(&g),
            &oracle::betweenness_pairs(n, &edges),
            1e-9,
            &tag,
        );
        let n2 = (n * n) as f64;
        let scaled: Vec<f64> = oracle::betweenness_pairs(n, &edges)
            .iter()
            .map(|b| b / n2)
            .collect();
        assert_close(
            &mut c,
            &betweenness_centrality(&g, BetweennessNorm::Paper),
            &scaled,
            1e-9,
            &tag,
        );
        assert_close(
            &mut c,
            &closeness_centrality(&g, ClosenessMode::Component),
            &oracle::closeness_component(n, &edges),
            1e-9,
            &tag,
        );

        if (2..=20).contains(&n) {
            eigen_cases += 1;
            let edges = connect(n, edges);
            let g = WeightedGraph::from_unweighted(n, &edges);
            let ours = eigenvector_centrality(&g, EigenWeighting::Binary, 1e-10, 10_000);
            let matrix: Vec<Vec<f64>> = oracle::adjacency_matrix(n, &edges)
                .iter()
                .map(|row| row.iter().map(|&a| f64::from(u8::from(a))).collect())
                .collect();
            let (_, dense) = oracle::dense_principal_eigen(&matrix);
            match ours {
                Ok(r) => {
                    let cos = oracle::cosine_similarity(&r.values, &dense);
                    c.expect(cos >= 1.0 - 1e-8, || {
                        format!("{tag}: eigenvector cosine {cos}")
                    });
                }
                Err(e) => c.expect(false, || format!("{tag}: {e}")),
            }
        }
    }
    c.within(Duration::from_secs(30));
    c.finish(&format!("200 graphs, {eigen_cases} eigenvector cases"));
}

fn random_topsis_case(seed: u64) -> (Vec<Vec<f64>>, Vec<f64>, Vec<Direction>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.random_range(1..=6);
    let q = rng.random_range(1..=6);
    let d = (0..p)
        .map(|_| (0..q).map(|_| rng.random_range(0.0..50.0)).collect())
        .collect();
    let raw: Vec<f64> = (0..q).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let head: f64 = w[..q - 1].iter().sum();
    w[q - 1] = 1.0 - head;
    let dirs = (0..q)
        .map(|_| {
            if rng.random_bool(0.3) {
                Direction::Cost
            } else {
                Direction::Benefit
            }
        })
        .collect();
    (d, w, dirs)
}

#[test]
fn criterion_4_topsis_matches_stepwise_evaluation() {
    let mut c = Check::new(4);
    let close = |a: &[f64], b: &[f64], tol: f64| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol);

    let worked = DecisionMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
    let r = rank(&worked, &CriteriaSpec::equal(2).unwrap()).unwrap();
    c.expect(r.tableau.closeness == [0.0, 1.0], || {
        format!("worked example C = {:?}", r.tableau.closeness)
    });

    for seed in 0..500u64 {
        let (d, w, dirs) = random_topsis_case(seed);
        let spec = CriteriaSpec::new(w.clone(), dirs.clone()).unwrap();
        let ours = rank(&DecisionMatrix::from_rows(d.clone()).unwrap(), &spec).unwrap();
        let benefit: Vec<bool> = dirs.iter().map(|&x| x == Direction::Benefit).collect();
        let r = oracle::topsis_reference(&d, &w, &benefit);
        let t = &ours.tableau;
        let rows_ok = (0..d.len()).all(|i| {
            close(&t.normalized[i], &r.normalized[i], 1e-12)
                && close(&t.weighted[i], &r.weighted[i], 1e-12)
        });
        c.expect(
            rows_ok
                && close(&t.ideal, &r.ideal, 1e-12)
                && close(&t.anti_ideal, &r.anti_ideal, 1e-12)
                && close(&t.s_plus, &r.s_plus, 1e-12)
                && close(&t.s_minus, &r.s_minus, 1e-12)
                && close(&t.closeness, &r.closeness, 1e-12),
            || format!("matrix {seed} differs from the stepwise evaluation"),
        );

        // Scaling one column by a positive factor leaves C unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let col = rng.random_range(0..w.len());
        let factor = rng.random_range(0.01..100.0);
        let scaled: Vec<Vec<f64>> = d
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row[col] *= factor;
                row
            })
            .collect();
        let again = rank(&DecisionMatrix::from_rows(scaled).unwrap(), &spec).unwrap();
        c.expect(close(&again.tableau.closeness, &t.closeness, 1e-12), || {
            format!("matrix {seed}: column {col} scaled by {factor} changed C")
        });

        // An added alternative at least as good everywhere and strictly
        // better somewhere gets C = 1 and rank 1.
        let best: Vec<f64> = (0..w.len())
            .map(|j| {
                let column = d.iter().map(|row| row[j]);
                match dirs[j] {
                    Direction::Benefit => column.fold(f64::MIN, f64::max) + 1.0,
                    Direction::Cost => column.fold(f64::MAX, f64::min) * 0.5,
                }
            })
            .collect();
        let mut with_best = d.clone();
        with_best.push(best);
        let dominated = rank(&DecisionMatrix::from_rows(with_best).unwrap(), &spec).unwrap();
        let top = &dominated.order[0];
        c.expect(top.index == d.len() && top.closeness == 1.0, || {
            format!(
                "matrix {seed}: dominating alternative ranked {:?}",
                (top.index, top.closeness)
            )
        });
    }
    c.within(Duration::from_secs(5));
    c.finish("worked example and 500 random matrices");
}

#[test]
fn criterion_5_community_properties() {
    let mut c = Check::new(5);
    let triangles =
        WeightedGraph::from_unweighted(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
    let p = detect_communities(&triangles, 42, 1.0);
    c.expect(p.community_count == 2, || {
        format!("{} communities", p.community_count)
    });
    c.expect((p.modularity - 0.5).abs() <= 1e-12, || {
        format!("Q = {}", p.modularity)
    });
    let recomputed = modularity(&triangles, &p.assignment, 1.0).unwrap();
    c.expect((recomputed - 0.5).abs() <= 1e-12, || {
        format!("recomputed Q = {recomputed}")
    });

    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(5..=120);
        let m = rng.random_range(n..=4 * n);
        let edges = oracle::random_gnm(20_000 + seed, n, m);
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let g = WeightedGraph::from_edges(
            &labels,
            edges.iter().map(|&(u, v)| (u, v, rng.random_range(1..=4))),
        );
        let p = detect_communities(&g, seed, 1.0);
        c.expect(p.level_modularity.windows(2).all(|w| w[1] >= w[0]), || {
            format!("graph {seed}: passes {:?}", p.level_modularity)
        });
        let q = p.level_modularity.last().copied().unwrap_or(p.modularity);
        c.expect((q - p.modularity).abs() <= 1e-12, || {
            format!("graph {seed}: final Q mismatch")
        });
        let twin = detect_communities(&g, seed, 1.0);
        c.expect(
            twin.assignment == p.assignment && twin.modularity.to_bits() == p.modularity.to_bits(),
            || format!("graph {seed}: same seed gave a different partition"),
        );
    }
    c.within(Duration::from_secs(30));
    c.finish("two triangles, 100 random graphs");
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn criterion_6_pipeline_is_deterministic() {
    let mut c = Check::new(6);
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("synthetic25.txt");
    let mut runs = Vec::new();
    for name in ["first", "second"] {
        let out = dir.path().join(name);
        let (code, err) = stage(
            &out,
            "run",
            &["--input", input.to_str().unwrap(), "--seed", "42"],
        );
        c.expect(code == 0, || format!("{name} run exited {code}: {err}"));
        runs.push(out);
    }
    let a = snapshot(&runs[0]);
    let b = snapshot(&runs[1]);
    c.expect(a.keys().eq(b.keys()), || "different file sets".into());
    for (name, bytes) in &a {
        if name == "manifest.json" {
            continue;
        }
        c.expect(b.get(name) == Some(bytes), || format!("{name} differs"));
    }
    // The manifest also records timings and the output path; its file
    // inventory must agree.
    let files = |dir: &Path| -> Value {
        let m: Value = serde_json::from_str(&read(dir, "manifest.json")).unwrap();
        m["files"].clone()
    };
    let fa = files(&runs[0]);
    c.expect(fa == files(&runs[1]), || "manifest digests differ".into());
    c.expect(fa.as_object().map_or(0, |f| f.len()) + 1 == a.len(), || {
        "manifest does not list every output".into()
    });
    c.within(Duration::from_secs(5));
    c.finish(&format!("{} files identical across two runs", a.len()));
}

#[test]
fn criterion_7_betweenness_at_desk_scale() {
    let mut c = Check::new(7);
    let (n, m) = (50_000, 100_000);
    let edges = oracle::random_gnm(7, n, m);
    let g = WeightedGraph::from_unweighted(n, &edges);
    let in_pool = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let t = Instant::now();
        let values = pool.install(|| betweenness_centrality(&g, BetweennessNorm::Paper));
        (values, t.elapsed())
    };
    let (single, took) = in_pool(1);
    c.expect(took <= Duration::from_secs(600), || {
        format!("single-threaded run took {took:?}")
    });
    let (multi, _) = in_pool(4);
    let identical = single
        .iter()
        .zip(&multi)
        .all(|(a, b)| a.to_bits() == b.to_bits());
    c.expect(identical, || {
        "4-thread values differ from single-threaded".into()
    });
    c.finish(&format!(
        "n={n} m={m}, single-threaded {took:.1?}, 4 threads bit-identical"
    ));
}

#[test]
fn criterion_8_output_table_shapes() {
    let mut c = Check::new(8);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let input = fixture("synthetic25.txt");
    let (code, err) = stage(&out, "run", &["--input", input.to_str().unwrap()]);
    c.expect(code == 0, || format!("run exited {code}: {err}"));

    let header = |name: &str| -> String {
        read(&out, name)
            .lines()
            .find(|l| !l.starts_with('#'))
            .unwrap_or_default()
            .to_string()
    };
    let expected = [
        ("author_centrality.csv", CENTRALITY_HEADER.join(",")),
        ("author_ranking.csv", RANKING_HEADER.join(",")),
        (
            "author_community_summary.csv",
            "community,nodes,edges,density,top_members".to_string(),
        ),
        ("author_communities.csv", "id,label,community".to_string()),
        ("corpus_doc_types.csv", "doc_type,records".to_string()),
        ("corpus_years.csv", "year,records".to_string()),
    ];
    for (name, want) in &expected {
        let got = header(name);
        c.expect(&got == want, || format!("{name}: header {got:?}"));
    }
    c.expect(
        read(&out, "author_ranking.csv").starts_with("# provenance "),
        || "ranking has no provenance line".into(),
    );
    for row in csv_rows(&read(&out, "author_community_summary.csv")) {
        let n: usize = row[1].parse().unwrap();
        let m: usize = row[2].parse().unwrap();
        let d: f64 = row[3].parse().unwrap();
        c.expect((d - density(n, m)).abs() <= 1e-11, || {
            format!("summary density {row:?}")
        });
    }
    c.finish("table shapes only; rankings of the original corpus are out of scope");
}
