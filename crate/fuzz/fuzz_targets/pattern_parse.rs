#![no_main]

use libfuzzer_sys::fuzz_target;
use widthlab::bits::Bits;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Some(bits) = Bits::parse01(text) else {
        return;
    };
    assert!(bits.max_one_runs() <= bits.count_ones());
    let canonical = bits.to_string();
    let reparsed = Bits::parse01(&canonical).expect("canonical form reparses");
    assert_eq!(reparsed, bits, "round trip through {canonical}");
});
