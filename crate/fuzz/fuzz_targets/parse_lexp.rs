#![no_main]

use lassokit::lassoexp::parse_lexp;
use lassokit::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let sigma = Alphabet::from_letters("abcdefghijklmnopqrstuvwxyz").unwrap();
    if let Ok(rho) = parse_lexp(text, &sigma) {
        assert_eq!(parse_lexp(&rho.to_string(), &sigma).unwrap(), rho);
    }
});
