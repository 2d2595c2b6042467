//! Emits a seeded synthetic corpus, one tree per line, to standard output.
//! The shipped `data/sample_corpus.ptb` was produced by this program.
//!
//! ```text
//! cargo run -p treesimp --example make_corpus -- 189 17 > corpus.ptb
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treesimp::serialize;
use treesimp::synth::random_sentence;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(189);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(17);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let budget = rng.gen_range(8..=45);
        let tree = random_sentence(&mut rng, budget);
        println!("{}", serialize(&tree));
    }
}
