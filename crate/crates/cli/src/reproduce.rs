//! `reproduce-paper`: recompute the worked four-player example and the n = 4
//! Boolean counts, and compare against golden data.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use supermod::marginals::marginal_vector;
use supermod::{
    build_lattice_with, cone_dimension, extreme_rays, facet_triples, is_extreme,
    is_extreme_via_games, Poset, RatGame, Rational,
};

use crate::commands::tight_lines;
use crate::io::{game_from_values, Loader, PosetSpec, ScalarText};
use crate::render::game_line;
use crate::{Check, CliError, RunReport};

/// The golden data shipped with the binary.
pub const DEFAULT_GOLDEN: &str = include_str!("../data/golden_p1.json");

const BUILTIN: &str = "<builtin>/golden_p1.json";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Golden {
    poset: PosetSpec,
    elements: Vec<String>,
    join_irreducibles: Vec<String>,
    permutations: Vec<String>,
    v1_marginals: BTreeMap<String, Vec<String>>,
    v1_tight: BTreeMap<String, Vec<String>>,
    rays: BTreeMap<String, BTreeMap<String, ScalarText>>,
    cone_dimension: usize,
    ambient_dimension: usize,
    facets: Vec<String>,
    boolean4: BooleanCounts,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BooleanCounts {
    facets: usize,
    rays: usize,
    dimension: usize,
}

fn list(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

/// Runs the pipeline against golden data given as JSON text.
pub fn reproduce_paper(golden: &str, source: &str) -> Result<RunReport, CliError> {
    let g: Golden = serde_json::from_str(golden).map_err(|e| CliError::Input(format!("{source}: {e}")))?;
    let loader = Loader::from_env()?;
    let mut checks = Vec::new();
    let mut results = serde_json::Map::new();

    let l = loader.build(&g.poset.build()?)?;
    let n = l.n();
    let elements: Vec<String> = l.elements().iter().map(|a| a.shorthand(n)).collect();
    checks.push(Check::new("P1 lattice size", g.elements.len(), l.len()));
    checks.push(Check::new("P1 down-sets", list(&g.elements), list(&elements)));
    let joins: Vec<String> = l
        .join_irreducibles()
        .iter()
        .map(|j| l.element(j.element))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|a| a.shorthand(n))
        .collect();
    checks.push(Check::new("P1 join-irreducibles", list(&g.join_irreducibles), list(&joins)));

    let chains = l.maximal_chains()?;
    let perms: Vec<String> = chains.iter().map(|c| c.perm.to_string()).collect();
    checks.push(Check::new("P1 compatible permutation count", g.permutations.len(), perms.len()));
    checks.push(Check::new("P1 compatible permutations", list(&g.permutations), list(&perms)));
    results.insert("elements".into(), json!(elements));
    results.insert("join_irreducibles".into(), json!(joins));
    results.insert("permutations".into(), json!(perms));

    let mut rays = BTreeMap::new();
    for (name, values) in &g.rays {
        rays.insert(name.clone(), game_from_values(&l, values)?);
    }
    let v1 = rays
        .get("v1")
        .ok_or_else(|| CliError::Input(format!("{source}: golden rays lack v1")))?;

    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for c in chains.iter() {
        groups.entry(marginal_vector(v1, c)?.to_string()).or_default().push(c.perm.to_string());
    }
    checks.push(Check::new("v1 distinct marginal vectors", g.v1_marginals.len(), groups.len()));
    for (x, want) in &g.v1_marginals {
        let got = groups.get(x).cloned().unwrap_or_default();
        checks.push(Check::new(format!("v1 marginal vector {x}"), list(want), list(&got)));
    }
    for (perm, want) in &g.v1_tight {
        let got = tight_lines(v1, &perm.parse()?)?;
        checks.push(Check::new(format!("v1 tight sets for {perm}"), list(want), list(&got)));
    }
    results.insert("v1_marginals".into(), json!(groups));

    for (name, v) in &rays {
        let sys = v.is_supermodular() && is_extreme(v)?;
        let games = v.is_supermodular() && is_extreme_via_games(v)?;
        checks.push(Check::new(format!("{name} extreme (system)"), true, sys));
        checks.push(Check::new(format!("{name} extreme (games)"), true, games));
    }

    let computed: Vec<RatGame> = extreme_rays::<Rational>(&l)?;
    checks.push(Check::new("P1 extreme ray count", g.rays.len(), computed.len()));
    for (name, v) in &rays {
        let found = computed.iter().any(|r| r == v);
        checks.push(Check::new(format!("{name} matches a computed ray"), true, found));
    }
    let unmatched = computed.iter().filter(|r| !rays.values().any(|v| v == *r)).count();
    checks.push(Check::new("computed rays outside the golden set", 0, unmatched));
    results.insert("rays".into(), Value::Array(computed.iter().map(|r| json!(game_line(r))).collect()));

    let dim = cone_dimension(&l)?;
    checks.push(Check::new("P1 cone dimension", g.cone_dimension, dim));
    checks.push(Check::new("P1 ambient dimension", g.ambient_dimension, l.len() - 1));
    let facets: Vec<String> = facet_triples(&l).iter().map(|t| t.render(n)).collect();
    checks.push(Check::new("P1 facet count", g.facets.len(), facets.len()));
    checks.push(Check::new("P1 facets", g.facets.join("; "), facets.join("; ")));
    results.insert("cone_dimension".into(), json!(dim));
    results.insert("facets".into(), json!(facets));

    let b4 = build_lattice_with(&Poset::antichain(4)?, loader.limits)?;
    let b4_facets = facet_triples(&b4).len();
    let b4_rays = extreme_rays::<Rational>(&b4)?.len();
    let b4_dim = cone_dimension(&b4)?;
    checks.push(Check::new("B4 facet count", g.boolean4.facets, b4_facets));
    checks.push(Check::new("B4 extreme ray count", g.boolean4.rays, b4_rays));
    checks.push(Check::new("B4 cone dimension", g.boolean4.dimension, b4_dim));
    results.insert(
        "boolean4".into(),
        json!({ "facets": b4_facets, "rays": b4_rays, "dimension": b4_dim }),
    );

    let mut inputs = BTreeMap::new();
    inputs.insert(source.to_string(), hex::encode(Sha256::digest(golden.as_bytes())));
    Ok(RunReport {
        command: "reproduce-paper".into(),
        inputs,
        results: Value::Object(results),
        checks,
    })
}

/// Reads the golden file, or uses the built-in one.
pub fn run(golden: Option<&Path>) -> Result<RunReport, CliError> {
    match golden {
        None => reproduce_paper(DEFAULT_GOLDEN, BUILTIN),
        Some(path) => {
            let mut loader = Loader::default();
            let text = loader.read(path)?;
            reproduce_paper(&text, &path.display().to_string())
        }
    }
}

pub fn table(report: &RunReport) -> Vec<String> {
    let r = &report.results;
    let mut out = Vec::new();
    if let Some(rays) = r["rays"].as_array() {
        out.push(format!("P1 extreme rays: {}", rays.len()));
        out.extend(rays.iter().filter_map(Value::as_str).map(|s| format!("  {s}")));
    }
    if let Some(facets) = r["facets"].as_array() {
        out.push(format!("P1 facets: {}", facets.len()));
        out.extend(facets.iter().filter_map(Value::as_str).map(|s| format!("  {s}")));
    }
    out
}
