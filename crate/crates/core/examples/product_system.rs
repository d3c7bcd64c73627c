//! A product of two systems on disjoint variables is monochromatic exactly
//! when both factors are, in the same colour.
//!
//!     cargo run --release --example product_system

use synram::ramsey::{self, Coloring, DEFAULT_NODE_LIMIT};
use synram::suite::split_solution;
use synram::systems::{product_system, PolySystem};

fn main() -> synram::Result<()> {
    let factors = [PolySystem::schur(), PolySystem::brauer()];
    let sys = product_system(&factors)?;
    print!("{}", sys.to_text());
    let res = ramsey::rado_number(&sys, 2, 10_000, DEFAULT_NODE_LIMIT)?;
    let n = res.found().unwrap();
    println!("R = {n}, hash {}", sys.hash());

    let mut colours = res.witness().colours().to_vec();
    colours.push(1);
    let chi = Coloring::new(2, colours)?;
    let x = ramsey::find_monochromatic_solution(&sys, &chi).unwrap();
    let parts = split_solution(&factors, &x)?;
    println!("colouring {n} with colour 1 forces {:?}", x.values());
    println!("  schur part  {:?}", parts[0].values());
    println!("  brauer part {:?}", parts[1].values());
    Ok(())
}
