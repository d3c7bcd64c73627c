//! B(1) and B(2) by search, with the answer re-derived by a SAT solver.
//!
//!     cargo run --release --example brauer_numbers

use synram::ramsey::{self, DEFAULT_CLAUSE_CAP, DEFAULT_NODE_LIMIT};
use synram::systems::PolySystem;

fn main() -> synram::Result<()> {
    let brauer = PolySystem::brauer();
    for r in 1..=2 {
        let res = ramsey::brauer_number(r, 100, DEFAULT_NODE_LIMIT)?;
        let n = res.found().expect("small r finishes");
        println!("B({r}) = {n} ({} nodes), witness {:?}", res.nodes(), res.witness().colours());

        for m in [n - 1, n] {
            let cnf = ramsey::export_dimacs(&brauer, m, r, DEFAULT_CLAUSE_CAP)?;
            let header = cnf.lines().next().unwrap().to_owned();
            match ramsey::solve_dimacs(&cnf)? {
                Some(model) => {
                    let chi = ramsey::decode_model(&model, m, r)?;
                    assert!(ramsey::find_monochromatic_solution(&brauer, &chi).is_none());
                    println!("  [{header}] N={m}: SAT, solver colouring {:?}", chi.colours());
                }
                None => println!("  [{header}] N={m}: UNSAT"),
            }
        }
    }
    // B(3) is out of reach; the guard says so instead of running forever.
    match ramsey::brauer_number(3, 1000, 200_000) {
        Err(e) => println!("B(3): {e}"),
        Ok(res) => println!("B(3): {res:?}"),
    }
    Ok(())
}
