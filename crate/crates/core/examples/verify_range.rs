//! Runs every check on a range of torus braids and prints one line per
//! instance and check.
//!
//! cargo run --release --example verify_range -- 2 3 1 4

use torus_whittle::verify::{run_verify, RunConfig};

fn main() -> torus_whittle::Result<()> {
    env_logger::init();
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n0, n1, k0, k1) = match args[..] {
        [n0, n1, k0, k1] => (n0, n1, k0, k1),
        _ => (2, 3, 1, 4),
    };
    let report = run_verify(&RunConfig::new((n0, n1), (k0, k1)))?;
    for inst in &report.instances {
        for c in &inst.checks {
            let counters: Vec<String> = c.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!(
                "ft_{}^{} {:<8} {} {}",
                inst.n,
                inst.k,
                c.check,
                if c.passed { "pass" } else { "FAIL" },
                counters.join(" ")
            );
            for note in &c.notes {
                println!("    {note}");
            }
        }
    }
    println!("all passed: {} ({} ms)", report.passed, report.elapsed_ms);
    Ok(())
}
