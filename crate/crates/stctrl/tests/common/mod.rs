//! Shared helpers for the integration suites: the bundled fixture and seeded
//! random instance generators.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stctrl::document::{parse_network, NetworkDocument};
use stctrl::graph::{StructuredPattern, TargetSet};

pub fn fixture_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join("example_secV.json")
}

pub fn fixture_document() -> NetworkDocument {
    let text = std::fs::read_to_string(fixture_path()).expect("bundled fixture exists");
    parse_network(&text).expect("bundled fixture is valid")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric pattern: every unordered pair (self-loops included) and
/// every input attachment appears independently with probability `density`.
pub fn random_pattern(rng: &mut ChaCha8Rng, n: usize, m: usize, density: f64) -> StructuredPattern {
    let mut a = Vec::new();
    for i in 0..n {
        for j in i..n {
            if rng.gen_bool(density) {
                a.push((i, j));
            }
        }
    }
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if rng.gen_bool(density) {
                b.push((i, j));
            }
        }
    }
    StructuredPattern::from_pairs(n, m, a, b).expect("generated indices are in range")
}

/// Random nonempty target set over n states.
pub fn random_targets(rng: &mut ChaCha8Rng, n: usize) -> TargetSet {
    loop {
        let picked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        if !picked.is_empty() {
            return TargetSet::new(picked, n).expect("indices in range");
        }
    }
}
