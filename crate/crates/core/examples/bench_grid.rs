//! Sweeps a small (n, r, k) grid and prints measured family sizes.

use relaxrep::bench::run_bench;

fn main() -> relaxrep::Result<()> {
    let report = run_bench(&[4, 6], &[1, 2, 3, 4], &[2, 4])?;
    print!("{}", report.to_text());
    Ok(())
}
