//! Size growth of cres(f1; 2^k) and the runtime comparison against the
//! Sylvester baseline.
//!
//! cargo run --release --example bench_tables -- [baseline timeout seconds]

use std::time::Duration;

use amoeba::bench::{run_bench, runtime_suite, size_suite, to_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let timeout: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(60.0);

    println!("sizes:");
    print!(
        "{}",
        to_table(&run_bench(&size_suite(), false, Duration::ZERO))
    );
    println!();
    println!("runtimes (baseline timeout {timeout}s):");
    print!(
        "{}",
        to_table(&run_bench(
            &runtime_suite(),
            true,
            Duration::from_secs_f64(timeout)
        ))
    );
    Ok(())
}
