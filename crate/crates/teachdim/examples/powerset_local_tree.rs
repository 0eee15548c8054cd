//! The powerset separation: over the 7-instance cube, the exact non-clashing
//! dimension is at least 4, while a purely local preference teaches
//! everything in 3 examples.
//!
//! ```bash
//! cargo run --example powerset_local_tree
//! ```

use teachdim::class::VersionSpace;
use teachdim::corpus;
use teachdim::dims::{self, NctdCaps};
use teachdim::teach::{td_sigma, Cost, CostOptions};

fn main() -> teachdim::Result<()> {
    // Exact nctd for the small cubes: always at least ceil(k/2).
    for k in [2usize, 3, 4] {
        let class = corpus::powerset_class(k)?;
        let (nctd, _) = dims::nctd(&VersionSpace::full(&class), NctdCaps::default())?;
        println!("powerset-{k}: nctd = {nctd} (>= {})", k.div_ceil(2));
    }

    // k = 7: the local tree.
    let built = teachdim::build_sigma_local_powerset(7, 0)?;
    let cost = td_sigma(&built.sigma, &built.class, 0, CostOptions::default())?;
    println!(
        "powerset-7 local tree: depth {} teaching cost {:?} (nctd >= 4 by the pairwise bound)",
        built.depth,
        match cost {
            Cost::Finite(c) => c,
            Cost::Unreachable => unreachable!(),
        }
    );

    // The leftmost branch of the tree.
    println!("sample plans:");
    for row in [64usize, 96, 112] {
        let plan = &built.plans[row];
        let steps: Vec<String> = plan
            .steps
            .iter()
            .map(|z| {
                format!(
                    "({},{})",
                    built.class.instance_name(z.instance),
                    u8::from(z.label)
                )
            })
            .collect();
        let bits: String = (0..7)
            .map(|x| if built.class.label(row, x) { '1' } else { '0' })
            .collect();
        println!("  {bits}: {}", steps.join(" "));
    }
    Ok(())
}
