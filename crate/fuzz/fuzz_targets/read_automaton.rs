#![no_main]

use lassokit::LassoAutomaton;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = LassoAutomaton::read(text) {
        assert_eq!(LassoAutomaton::read(&a.write()).unwrap(), a);
    }
});
