use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

/// Independent stream for trial `trial` of a run seeded with `seed`.
///
/// ChaCha's 64-bit stream id gives each trial its own keystream, so results
/// do not depend on how trials are scheduled across threads.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
