//! Builds multiset separators for a few (n, r, k) and verifies them.

use relaxrep::msep::{build_multiset_separator, multiset_witness, verify_multiset_separator};
use relaxrep::{Budget, MultisetVector};

fn main() -> relaxrep::Result<()> {
    for (n, r, k) in [(2, 2, 2), (3, 2, 4), (3, 3, 3), (6, 1, 4)] {
        let sep = build_multiset_separator(n, r, k)?;
        let verdict = verify_multiset_separator(&sep, Budget::default())?;
        println!(
            "n={n} r={r} k={k}: {} members ({} generated before deduplication), {verdict}",
            sep.len(),
            sep.generated()
        );
    }
    let a = MultisetVector::new(2, &[1, 0, 2])?;
    let b = MultisetVector::new(2, &[0, 2, 0])?;
    let f = multiset_witness(&a, &b, 5)?;
    println!("A={a} B={b}: separator member {f} with A <= F <= complement(B)");
    Ok(())
}
