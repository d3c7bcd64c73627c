//! Multiplicative syndeticity on [N]: S(a,k), minimum syndetic sets, and
//! the density bound.
//!
//!     cargo run --release --example syndetic_windows

use synram::syndetic::{self, FiniteSet};

fn main() -> synram::Result<()> {
    for (a, k) in [(2, 2), (2, 3), (3, 2)] {
        let w = syndetic::s_ak_window(a, k, 10_000)?;
        let f = FiniteSet::geometric(a, k)?;
        let limit = (a as f64 - 1.0) / ((a as f64).powi(k as i32) - 1.0);
        let rep = syndetic::is_f_syndetic_window(&w, &f)?;
        println!(
            "S({a},{k}): density {:.4} (limit {limit:.4}), {f}-syndetic: {}",
            w.count() as f64 / 1e4,
            rep.is_window_syndetic
        );
    }

    let f: FiniteSet = "1,2,3".parse()?;
    println!("\nF = {{{f}}}");
    for n in [6, 12, 24, 36] {
        let (size, w) = syndetic::min_syndetic_size(&f, n)?;
        let bound = syndetic::density_lower_bound(&f, n);
        println!("N={n:<3} min {size:<3} bound {bound:<5} e.g. {:?}", w.elements());
    }

    // The encoding τ(n): least t in F with n·t in S.
    let s = syndetic::s_ak_window(2, 2, 64)?;
    let f = FiniteSet::geometric(2, 2)?;
    let tau: Vec<_> = (1..=16)
        .map(|n| syndetic::encoding_tau(&s, &f, n).map(|t| t.unwrap_or(0)))
        .collect::<Result<_, _>>()?;
    println!("\nτ on S(2,2), n = 1..16: {tau:?}");
    Ok(())
}
