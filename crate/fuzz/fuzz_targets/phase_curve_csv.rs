// The phase-shift CSV reader must reject bad files without panicking.
#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag_spectra_cli::curve_io::read_phase_curve;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(curve) = read_phase_curve(text) {
            assert!(curve.samples().windows(2).all(|w| w[1].energy > w[0].energy));
        }
    }
});
