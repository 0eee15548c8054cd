//! Reproduction harness: recomputes the headline quantities for the bundled
//! classes and diffs them against the expected-values manifest. Deterministic
//! by construction; two runs on one build produce byte-identical reports.

use serde::Serialize;

use crate::class::VersionSpace;
use crate::construct;
use crate::corpus;
use crate::dims;
use crate::error::{Error, Result};
use crate::prefs::{collusion_free_check, CollusionCaps};
use crate::teach::{self, Cost, CostOptions};

/// Expected values, keyed `class.metric`.
const MANIFEST: &str = include_str!("repro_manifest.json");

/// One expected-vs-actual row.
#[derive(Clone, Debug, Serialize)]
pub struct ReproRow {
    pub name: String,
    pub expected: i64,
    pub actual: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub rows: Vec<ReproRow>,
    pub mismatches: usize,
}

fn cost_value(cost: Cost) -> i64 {
    match cost {
        Cost::Finite(c) => i64::from(c),
        Cost::Unreachable => -1,
    }
}

/// Recomputes every manifest entry. Mismatches are reported, not panicked.
pub fn run_repro() -> Result<ReproReport> {
    let manifest: serde_json::Map<String, serde_json::Value> = serde_json::from_str(MANIFEST)
        .map_err(|e| Error::format(format!("bundled manifest: {e}")))?;

    let warmuth = corpus::warmuth_class();
    let gap6 = corpus::gap6_class();
    let mut actuals: Vec<(String, i64)> = Vec::new();

    for (name, class) in [("warmuth", &warmuth), ("gap6", &gap6)] {
        let report = dims::dimension_report(class, dims::NctdCaps::default())?;
        actuals.push((format!("{name}.vcd"), report.vcd as i64));
        actuals.push((format!("{name}.td"), report.td as i64));
        actuals.push((format!("{name}.rtd"), report.rtd as i64));
        actuals.push((format!("{name}.nctd"), report.nctd as i64));
    }

    let built = construct::build_sigma_lvs(&warmuth, 0)?;
    actuals.push((
        "warmuth.lvs_construction_td".into(),
        cost_value(teach::td_sigma(&built.sigma, &warmuth, 0, CostOptions::default())?),
    ));
    actuals.push((
        "warmuth.curated_lvs_td".into(),
        cost_value(teach::td_sigma(
            &corpus::warmuth_lvs_sigma(),
            &warmuth,
            0,
            CostOptions::default(),
        )?),
    ));
    actuals.push((
        "warmuth.curated_gvs_td".into(),
        cost_value(teach::td_sigma(
            &corpus::warmuth_gvs_sigma(),
            &warmuth,
            0,
            CostOptions::default(),
        )?),
    ));

    actuals.push((
        "gap6.global_bruteforce_td".into(),
        cost_value(teach::sigma_td_global_bruteforce(
            &gap6,
            0,
            teach::GlobalOracleCaps::default(),
        )?),
    ));
    let built6 = construct::build_sigma_lvs(&gap6, 0)?;
    actuals.push((
        "gap6.lvs_construction_td".into(),
        cost_value(teach::td_sigma(&built6.sigma, &gap6, 0, CostOptions::default())?),
    ));
    let collusion = collusion_free_check(&built6.sigma, &gap6, CollusionCaps::default())?;
    actuals.push((
        "gap6.lvs_construction_collusion_free".into(),
        i64::from(collusion.collusion_free),
    ));

    for k in [2usize, 3, 4] {
        let class = corpus::powerset_class(k)?;
        let (value, _) = dims::nctd(&VersionSpace::full(&class), dims::NctdCaps::default())?;
        actuals.push((format!("powerset-{k}.nctd"), value as i64));
    }

    let tree = construct::build_sigma_local_powerset(7, 0)?;
    actuals.push((
        "powerset-7.local_tree_td".into(),
        cost_value(teach::td_sigma(&tree.sigma, &tree.class, 0, CostOptions::default())?),
    ));

    actuals.push(("bound.d4".into(), i64::from(dims::sigma_td_lower_bound(4)?)));
    actuals.push(("bound.d16".into(), i64::from(dims::sigma_td_lower_bound(16)?)));

    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (name, expected) in &manifest {
        let expected = expected
            .as_i64()
            .ok_or_else(|| Error::format(format!("manifest entry {name} is not an integer")))?;
        let actual = actuals
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::format(format!("manifest entry {name} is never computed")))?;
        let ok = actual == expected;
        if !ok {
            mismatches += 1;
        }
        rows.push(ReproRow {
            name: name.clone(),
            expected,
            actual,
            ok,
        });
    }
    Ok(ReproReport { rows, mismatches })
}
