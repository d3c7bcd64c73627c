//! Exact work with iterated exponentials.
//!
//!     cargo run --release --example towers

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::BigRational;
use synram::tower::{self, TowerExpr};

fn main() -> synram::Result<()> {
    for n in 1..=6 {
        let t = tower::tow(n)?;
        println!("Tow({n}) = {}", t.render(20));
    }
    println!("Tow(5) has {} digits", tower::decimal_digits(tower::tow(5)?.value().unwrap()));

    let a = TowerExpr::from_u64s(&[3, 3, 3])?;
    let b = TowerExpr::from_u64s(&[2, 2, 2, 2, 2])?;
    let sym = |o| match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    };
    println!("\n3^3^3 {} 2^2^2^2^2", sym(tower::tower_compare(&a, &b)?));
    let c = TowerExpr::from_u64s(&[10, 10, 100])?;
    let d = TowerExpr::from_u64s(&[2, 2, 2, 2, 2, 2])?;
    println!("10^10^100 {} Tow(6)", sym(tower::tower_compare(&c, &d)?));

    for r in 1..=4 {
        println!("F({r}) = {}", tower::f_func(r, 1)?.render(12));
    }

    let traces = tower::propagate_recursive_bound(&BigRational::from_integer(1.into()), &BigUint::from(3u32), 6)?;
    println!();
    for t in traces {
        println!("B({}) <= {}  [{}]", t.r, t.bound.render(12), t.provenance);
    }
    Ok(())
}
