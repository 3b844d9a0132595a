//! Solves (r, p, q)-packing instances, with element and set weights.

use relaxrep::solvers::{solve_rpq_packing, SetFamilyInstance};

fn main() -> relaxrep::Result<()> {
    let triangle: SetFamilyInstance = "setfam 3 3 2\n1 2\n1 3\n2 3\n".parse()?;
    for (r, p) in [(2, 3), (1, 2)] {
        let res = solve_rpq_packing(&triangle.clone().with_params(r, p))?;
        println!(
            "triangle r={r} p={p}: found={} witness={:?}",
            res.found, res.witness
        );
    }
    let weighted: SetFamilyInstance = "setfam 4 3 2\nsetweights 2 3 9\n1 2\n3 4\n1 3\n".parse()?;
    let res = solve_rpq_packing(&weighted.with_params(1, 2))?;
    println!(
        "set-weighted r=1 p=2: weight={:?} witness={:?}",
        res.weight, res.witness
    );
    Ok(())
}
