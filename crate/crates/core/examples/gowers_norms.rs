//! Gowers norms over Z/pZ and the counting functionals they control.
//!
//!     cargo run --release --example gowers_norms

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use synram::syndetic::Window;
use synram::uniformity::{self, ModFunction};

fn main() -> synram::Result<()> {
    let p = 31;
    let one = ModFunction::constant(p, Complex64::new(1.0, 0.0))?;
    let delta = ModFunction::point_mass(p, 0)?;
    let chirp = ModFunction::new(
        p,
        (0..p)
            .map(|x| Complex64::from_polar(1.0, std::f64::consts::TAU * (x * x) as f64 / p as f64))
            .collect(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let noise = uniformity::random_one_bounded(p, &mut rng)?;

    println!("{:<10} {:>8} {:>8}", "p = 31", "U2", "U3");
    for (name, f) in [("1", &one), ("delta_0", &delta), ("e(x²/p)", &chirp), ("random", &noise)] {
        let u2 = uniformity::gowers_norm(f, 2)?;
        let u3 = uniformity::gowers_norm(f, 3)?;
        println!("{name:<10} {u2:>8.4} {u3:>8.4}");
    }
    // The quadratic phase is invisible to U2 but not to U3.

    let embed = uniformity::choose_prime(20)?;
    let ind = uniformity::indicator(20, embed.p())?;
    let s = Window::from_elements(6, &[1, 2, 3, 4, 5, 6])?;
    let lam = uniformity::lambda_s(&s, &ind, &ind, &ind)?;
    let ap = uniformity::ap3(&ind, &ind, &ind)?;
    println!("\nN=20, p={}: Λ_S(1_[N]) = {:.4}, AP3(1_[N]) = {:.4}", embed.p(), lam.re, ap.re);
    Ok(())
}
