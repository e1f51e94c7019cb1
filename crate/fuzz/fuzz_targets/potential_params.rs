// Arbitrary (λ, C, γ) triples: either a valid potential or an error.
#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag_spectra::basis::PotentialParams;

fuzz_target!(|data: &[u8]| {
    if data.len() < 24 {
        return;
    }
    let take = |i: usize| f64::from_le_bytes(data[8 * i..8 * i + 8].try_into().unwrap());
    if let Ok(params) = PotentialParams::new(take(0), take(1), take(2)) {
        assert!(params.lambda() > 0.0);
        assert!(params.in_main_class() || params.gamma() * params.v0() > 0.0);
        let _ = params.value(1.0);
        let _ = params.landmarks();
    }
});
