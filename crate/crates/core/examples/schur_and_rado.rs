//! Rado numbers of small systems, with the extremal colouring.
//!
//!     cargo run --release --example schur_and_rado

use synram::ramsey::{self, DEFAULT_NODE_LIMIT};
use synram::systems::PolySystem;

fn main() -> synram::Result<()> {
    let systems = [
        ("x + y = z", PolySystem::schur()),
        ("x + z = 2y  (ap3)", PolySystem::ap3()),
        ("x + y = 3z", PolySystem::from_text("vars: 3\n1*t1 + 1*t2 - 3*t3\n")?),
    ];
    for (name, sys) in &systems {
        for r in 1..=2 {
            let res = ramsey::rado_number(sys, r, 60, DEFAULT_NODE_LIMIT)?;
            match res.found() {
                Some(n) => {
                    let w = res.witness();
                    let classes: Vec<_> = (1..=r).map(|c| w.class(c)).collect();
                    println!("{name:<20} r={r}: R = {n:<3} witness on [{}]: {classes:?}", n - 1);
                }
                None => println!("{name:<20} r={r}: no value up to 60"),
            }
        }
    }
    Ok(())
}
