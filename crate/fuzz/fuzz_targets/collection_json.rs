#![no_main]

use libfuzzer_sys::fuzz_target;
use widthlab::canon::disjointify;
use widthlab::model::SampleCollection;

fuzz_target!(|data: &[u8]| {
    let Ok(z) = serde_json::from_slice::<SampleCollection>(data) else {
        return;
    };

    let first = serde_json::to_value(&z).expect("serializes");
    let again: SampleCollection = serde_json::from_value(first.clone()).expect("reparses");
    let second = serde_json::to_value(&again).expect("serializes again");
    assert_eq!(first, second, "serialization is a fixed point");

    let g = disjointify(&z);
    assert!(g.is_pairwise_disjoint());
    assert_eq!(g.support(), z.support());
});
