#![no_main]

use lassokit::omega::parse_oexp;
use lassokit::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let sigma = Alphabet::from_letters("abcdefghijklmnopqrstuvwxyz").unwrap();
    if let Ok(t) = parse_oexp(text, &sigma) {
        assert_eq!(parse_oexp(&t.to_string(), &sigma).unwrap(), t);
    }
});
