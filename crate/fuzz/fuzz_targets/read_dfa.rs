#![no_main]

use lassokit::Dfa;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = Dfa::read(text) {
        assert_eq!(Dfa::read(&d.write()).unwrap(), d);
    }
});
