//! Builds a minimal (n, t, k)-separating family and checks it exhaustively.

use relaxrep::separating::{
    build_minimal_separating, separating_witness, verify_minimal_separating,
};
use relaxrep::Budget;

fn main() -> relaxrep::Result<()> {
    let (n, t, k) = (8, 3, 5);
    let fam = build_minimal_separating(n, t, k)?;
    println!(
        "minimal separating family n={n} t={t} k={k}: {} functions",
        fam.len()
    );
    println!(
        "verification: {}",
        verify_minimal_separating(&fam, Budget::default())?
    );

    // The member that separates C = {1, 2, 3} from D = {6, 7}.
    let f = separating_witness(n, t, k, &[0, 1, 2], &[5, 6])?;
    println!("witness for C={{1,2,3}}, D={{6,7}}: {f:?}");
    Ok(())
}
