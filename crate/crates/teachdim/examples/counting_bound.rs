//! The counting lower bound: over the size-d powerset class, any preference
//! family needs teaching sequences of length at least k where
//! 2^d <= (2d)^(k+1), because fewer than (2d)^(k+1) distinct sequences of
//! length <= k exist and each hypothesis needs its own.
//!
//! ```bash
//! cargo run --example counting_bound
//! ```

use teachdim::dims::sigma_td_lower_bound;

fn main() -> teachdim::Result<()> {
    println!(" d  | lower bound on teaching length");
    println!("----+-------------------------------");
    for d in [1u32, 2, 4, 8, 16, 32, 64, 127] {
        let k = sigma_td_lower_bound(d)?;
        println!("{d:>3} | {k}");
    }
    Ok(())
}
