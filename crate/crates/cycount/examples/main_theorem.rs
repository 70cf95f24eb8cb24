//! The counted transfer matrix of a tangle against the rescaled ruling matrix, on seeded
//! random words.

use cycount::aug::verify_main_theorem;
use cycount::tangle::random::random_word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cycount::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..8 {
        let w = random_word(&mut rng, i % 3, 6, 4);
        let reports = verify_main_theorem(&w, &[2, 3])?;
        let ok = reports.iter().all(|r| r.passed());
        let entries: usize = reports.iter().map(|r| r.entries).sum();
        println!("{:<60} {} entries  {}", w.to_dsl().replace('\n', "; "), entries, if ok { "ok" } else { "MISMATCH" });
    }
    Ok(())
}
