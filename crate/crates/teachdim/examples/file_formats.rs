//! Load and save classes (CSV and JSON) and preference functions (JSON).
//!
//! ```bash
//! cargo run --example file_formats
//! ```

use teachdim::corpus;
use teachdim::prefs::{sigma_from_json, sigma_to_json};

fn main() -> teachdim::Result<()> {
    // CSV: header row of instance names, then one `name,b1,...,bn` row per
    // hypothesis.
    let csv = "\
x1,x2,x3
stripe,1,0,1
solid,1,1,1
blank,0,0,0
";
    let class = teachdim::class_from_csv(csv)?;
    println!(
        "loaded {} hypotheses over {} instances from csv",
        class.num_hypotheses(),
        class.num_instances()
    );

    // The same class as JSON, round-tripped.
    let json = teachdim::class_to_json(&class);
    println!("{json}");
    let back = teachdim::class_from_json(&json)?;
    assert_eq!(teachdim::class_to_json(&back), json);

    // Preference functions serialize per family; sparse tables keep their
    // canonical sorted version-space keys.
    let sigma = corpus::gap6_lvs_sigma();
    let text = sigma_to_json(&sigma);
    println!("{text}");
    assert_eq!(sigma_from_json(&text)?, sigma);
    println!("sigma round-trip ok");
    Ok(())
}
