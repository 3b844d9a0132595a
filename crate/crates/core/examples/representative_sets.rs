//! Computes a representative family for a random weighted family of r-sets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relaxrep::generate::random_weighted_family;
use relaxrep::repset::{compute_representative, verify_representative};
use relaxrep::Budget;

fn main() -> relaxrep::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fam = random_weighted_family(&mut rng, 3, 2, 4, 50, (-3, 6))?;
    let rep = compute_representative(&fam)?;
    println!(
        "input: {} members, representative: {} members",
        fam.len(),
        rep.len()
    );
    println!(
        "verification over every Q: {}",
        verify_representative(&fam, &rep, Budget::default())?
    );
    print!("{rep}");
    Ok(())
}
