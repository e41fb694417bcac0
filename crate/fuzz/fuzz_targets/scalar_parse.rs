#![no_main]

use libfuzzer_sys::fuzz_target;
use widthlab::scalar::Scalar;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(value) = text.parse::<Scalar>() else {
        return;
    };
    let canonical = value.to_string();
    let reparsed: Scalar = canonical.parse().expect("canonical form reparses");
    assert_eq!(reparsed, value, "round trip through {canonical}");
});
