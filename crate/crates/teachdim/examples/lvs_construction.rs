//! Recursive construction of a local-and-version-space preference whose
//! teaching cost is bounded by the VC dimension, with the recursion tree.
//!
//! ```bash
//! cargo run --example lvs_construction
//! ```

use teachdim::class::VersionSpace;
use teachdim::corpus;
use teachdim::dims;
use teachdim::teach::{td_sigma, Cost, CostOptions};

fn main() -> teachdim::Result<()> {
    let warmuth = corpus::warmuth_class();
    let built = teachdim::build_sigma_lvs(&warmuth, 0)?;

    println!(
        "root compact set: {:?}",
        built
            .root_compact
            .iter()
            .map(|&x| warmuth.instance_name(x))
            .collect::<Vec<_>>()
    );
    for record in &built.records {
        let indent = "  ".repeat(record.depth);
        println!(
            "{indent}split {:?} from {} (compact {:?})",
            record
                .search_space
                .iter()
                .map(|&h| warmuth.hypothesis_name(h))
                .collect::<Vec<_>>(),
            warmuth.hypothesis_name(record.reference),
            record
                .compact
                .iter()
                .map(|&x| warmuth.instance_name(x))
                .collect::<Vec<_>>(),
        );
        for block in &record.blocks {
            println!(
                "{indent}  ({},{}) -> {:?}",
                warmuth.instance_name(block.pivot),
                u8::from(block.label),
                block
                    .members
                    .iter()
                    .map(|&h| warmuth.hypothesis_name(h))
                    .collect::<Vec<_>>(),
            );
        }
    }

    println!("\nplans:");
    for plan in &built.plans {
        println!(
            "  {}",
            serde_json::to_string(&plan.to_json_value(&warmuth)).expect("plan json")
        );
    }

    let cost = td_sigma(&built.sigma, &warmuth, 0, CostOptions::default())?;
    let vcd = dims::vcd_full(&VersionSpace::full(&warmuth))?;
    match cost {
        Cost::Finite(c) => println!("\nteaching cost {c} <= vcd {vcd}"),
        Cost::Unreachable => unreachable!("construction always teaches"),
    }
    Ok(())
}
