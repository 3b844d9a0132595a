//! Detects (r, k)-monomials in a non-canceling circuit.

use relaxrep::circuit::ArithmeticCircuit;
use relaxrep::solvers::solve_monomial_detection;

fn main() -> relaxrep::Result<()> {
    // (x1 + x2) * (x1 + x3) * x2
    let c: ArithmeticCircuit =
        "g1 = var x1\ng2 = var x2\ng3 = var x3\ng4 = add g1 g2\ng5 = add g1 g3\n\
                                g6 = mul g4 g5\ng7 = mul g6 g2\noutput g7\n"
            .parse()?;
    for (r, k) in [(1, 3), (2, 3), (1, 2)] {
        let res = solve_monomial_detection(&c, r, k, None)?;
        println!(
            "r={r} k={k}: found={} monomial={:?}",
            res.found, res.monomial
        );
    }
    let res = solve_monomial_detection(&c, 2, 3, Some(&[5, -1, 2]))?;
    println!(
        "weights (5,-1,2), r=2 k=3: lightest {:?} weight {:?}",
        res.monomial, res.weight
    );
    Ok(())
}
