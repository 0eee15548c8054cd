//! Partition a class along a compact distinguishable set: every block sits
//! behind one pivot example and has strictly lower VC dimension.
//!
//! ```bash
//! cargo run --example class_partition
//! ```

use teachdim::class::VersionSpace;
use teachdim::corpus;
use teachdim::dims;

fn main() -> teachdim::Result<()> {
    let warmuth = corpus::warmuth_class();
    let full = VersionSpace::full(&warmuth);
    let all: Vec<usize> = (0..warmuth.num_instances()).collect();
    let compact = dims::compact_distinguishable_set(&full, &all)?;
    let partition = teachdim::partition_class(&full, &compact, 0)?;

    println!(
        "reference {}, compact set {:?}",
        warmuth.hypothesis_name(partition.reference),
        partition
            .compact_set
            .iter()
            .map(|&x| warmuth.instance_name(x))
            .collect::<Vec<_>>()
    );
    for block in &partition.blocks {
        let members: Vec<&str> = block
            .members
            .iter()
            .map(|&h| warmuth.hypothesis_name(h))
            .collect();
        match block.pivot {
            Some(z) => println!(
                "  ({},{}) -> {:?}",
                warmuth.instance_name(z.instance),
                u8::from(z.label),
                members
            ),
            None => println!("  reference block -> {members:?}"),
        }
        let vs = VersionSpace::from_indices(&warmuth, &block.members)?;
        let cols: Vec<usize> = partition
            .compact_set
            .iter()
            .copied()
            .filter(|&x| block.pivot.is_none_or(|z| z.instance != x))
            .collect();
        let sub_compact = dims::compact_distinguishable_set(&vs, &cols)?;
        let d = if sub_compact.is_empty() {
            0
        } else {
            dims::vcd(&vs, &sub_compact)?
        };
        println!("    block vcd on its compact set: {d}");
    }
    Ok(())
}
