//! Fixed instances for the criterion benches.

use aflayer::generate::{random_layered, LayeredParams};
use aflayer::{assign_layers, compute_labeling, partition_edges, EdgePartition, Layers};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A prepared instance: partition and initial layers.
pub struct Fixture {
    pub name: String,
    pub size: usize,
    pub partition: EdgePartition,
    pub layers: Layers,
}

/// Layer caps scale with `scale`, attacks with `2 * scale`.
pub fn fixture(scale: usize, seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = LayeredParams {
        max_in: scale,
        max_out: 2 * scale,
        max_undec: scale,
        max_attacks: 6 * scale,
    };
    let inst = random_layered(&mut rng, params, format!("s{scale}"));
    let lab = compute_labeling(&inst.af, &inst.extension);
    Fixture {
        size: inst.af.size(),
        name: inst.name,
        partition: partition_edges(&inst.af, &lab),
        layers: assign_layers(&lab),
    }
}
