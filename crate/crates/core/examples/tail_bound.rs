//! Monte-Carlo check of the two-sample tail bound
//! `P(X̄_n > Ȳ_m) <= 2 exp(-min(n, m) gap² / 2)` for Bernoulli samples.
//!
//! ```bash
//! cargo run --release -p side-bandits --example tail_bound
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use side_bandits::bounds::lemma1_tail_bound;
use side_bandits::environment::RewardFamily;

fn main() -> side_bandits::Result<()> {
    let (mu, nu) = (0.45, 0.55);
    let trials = 50_000;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("means {mu} vs {nu}, {trials} trials per row");
    for n in [5u64, 20, 80, 320] {
        let mut hits = 0;
        for _ in 0..trials {
            let x: f64 = (0..n)
                .map(|_| RewardFamily::Bernoulli.sample(mu, &mut rng))
                .sum();
            let y: f64 = (0..n)
                .map(|_| RewardFamily::Bernoulli.sample(nu, &mut rng))
                .sum();
            if x > y {
                hits += 1;
            }
        }
        let bound = lemma1_tail_bound(nu - mu, n, n)?;
        println!(
            "n = m = {n:>3}: empirical {:.4}  bound {:.4}",
            hits as f64 / trials as f64,
            bound
        );
    }
    Ok(())
}
