//! Worst-case teaching cost under each preference family, on the Warmuth
//! class, plus one optimal plan.
//!
//! ```bash
//! cargo run --example teaching_cost
//! ```

use teachdim::corpus;
use teachdim::prefs::hamming_local;
use teachdim::teach::{extract_plan, td_sigma, Cost, CostOptions};

fn main() -> teachdim::Result<()> {
    let warmuth = corpus::warmuth_class();
    let families = [
        ("const", corpus::const_sigma()),
        ("global", corpus::warmuth_global_sigma()),
        ("gvs", corpus::warmuth_gvs_sigma()),
        ("local (hamming)", hamming_local(&warmuth)),
        ("lvs (curated)", corpus::warmuth_lvs_sigma()),
    ];
    println!("teaching cost from h1 over all targets:");
    for (name, sigma) in &families {
        let cost = td_sigma(sigma, &warmuth, 0, CostOptions::default())?;
        match cost {
            Cost::Finite(c) => println!("  {name:16} -> {c}"),
            Cost::Unreachable => println!("  {name:16} -> unreachable"),
        }
    }

    // One optimal plan in detail: steering to h10 under the curated lvs
    // table takes a single example.
    let plan = extract_plan(
        &corpus::warmuth_lvs_sigma(),
        &warmuth,
        0,
        9,
        CostOptions::default(),
    )?;
    println!(
        "\nplan for {}: {}",
        warmuth.hypothesis_name(plan.target),
        serde_json::to_string(&plan.to_json_value(&warmuth)).expect("plan json")
    );
    Ok(())
}
