//! Compute every dimension of the bundled classes.
//!
//! ```bash
//! cargo run --example dimensions
//! ```

use teachdim::class::VersionSpace;
use teachdim::corpus;
use teachdim::dims::{self, NctdCaps};

fn main() -> teachdim::Result<()> {
    for (name, class) in [
        ("warmuth", corpus::warmuth_class()),
        ("gap6", corpus::gap6_class()),
        ("powerset-3", corpus::powerset_class(3)?),
    ] {
        let report = dims::dimension_report(&class, NctdCaps::default())?;
        println!(
            "{name}: vcd={} td={} rtd={} nctd={}",
            report.vcd, report.td, report.rtd, report.nctd
        );
        let full = VersionSpace::full(&class);
        println!(
            "  shattered witness: {:?}",
            report
                .shattered
                .iter()
                .map(|&x| class.instance_name(x))
                .collect::<Vec<_>>()
        );
        for (h, set) in report.teaching_sets.iter().take(3) {
            let set: Vec<String> = set
                .iter()
                .map(|z| format!("({},{})", class.instance_name(z.instance), u8::from(z.label)))
                .collect();
            println!(
                "  minimal teaching set for {}: {}",
                class.hypothesis_name(*h),
                set.join(" ")
            );
        }
        assert!(dims::is_non_clashing(&report.nctd_map, &full)?);
        println!("  nctd witness verified non-clashing");
    }
    Ok(())
}
