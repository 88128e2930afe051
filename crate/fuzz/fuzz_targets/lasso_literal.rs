#![no_main]

use lassokit::lasso::{gamma_equiv, Lasso};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(l) = Lasso::parse(text) {
        assert_eq!(Lasso::parse(&l.to_string()).unwrap(), l);
        assert!(gamma_equiv(&l, &l.normal_form()));
    }
});
