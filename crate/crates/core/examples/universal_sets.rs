//! Builds a lopsided (n, p, q)-universal family of subsets.

use relaxrep::separating::{build_lopsided_universal, verify_lopsided};
use relaxrep::Budget;

fn main() -> relaxrep::Result<()> {
    let (n, p, q) = (8, 2, 3);
    let fam = build_lopsided_universal(n, p, q)?;
    println!(
        "lopsided universal family n={n} p={p} q={q}: {} subsets",
        fam.len()
    );
    println!(
        "verification: {}",
        verify_lopsided(&fam, Budget::default())?
    );
    print!(
        "{}",
        fam.to_text().lines().take(6).collect::<Vec<_>>().join("\n")
    );
    println!("\n...");
    Ok(())
}
