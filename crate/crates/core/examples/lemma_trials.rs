//! Seeded trials of the counting inequalities, as `verify-lemma` runs them.
//!
//!     cargo run --release --example lemma_trials

use synram::suite::{run_trials, Lemma, PrimeChoice, TrialConfig};

fn main() -> synram::Result<()> {
    let lemmas = [
        (Lemma::BrauerCount, PrimeChoice::Auto, None, 200),
        (Lemma::GvnAp3, PrimeChoice::Fixed(31), None, 300),
        (Lemma::GvnLambda, PrimeChoice::Fixed(31), None, 300),
        (Lemma::L1, PrimeChoice::Fixed(31), None, 300),
        (Lemma::Telescope, PrimeChoice::Fixed(31), None, 300),
        (Lemma::U3, PrimeChoice::Auto, Some(1), 20),
    ];
    for (lemma, p, m, trials) in lemmas {
        let cfg = TrialConfig { lemma, p, n: None, m };
        let s = run_trials(&cfg, trials, 42, |_| {})?;
        println!(
            "{:<12} {:>4}/{:<4} min margin {:+.3e}",
            lemma.name(),
            s.passes,
            s.trials,
            s.min_margin
        );
    }
    Ok(())
}
