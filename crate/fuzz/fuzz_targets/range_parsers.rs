// Level ranges and energy intervals from the command line.
#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag_spectra_cli::parse::{Interval, LevelRange};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(range) = text.parse::<LevelRange>() {
        assert_eq!(range.levels().count(), range.len());
        assert_eq!(range.to_string().parse::<LevelRange>().ok(), Some(range));
    }
    if let Ok(interval) = text.parse::<Interval>() {
        assert!(interval.lo < interval.hi);
        let grid = interval.grid(3);
        assert_eq!(grid.first(), Some(&interval.lo));
    }
});
