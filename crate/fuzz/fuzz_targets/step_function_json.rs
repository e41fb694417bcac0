#![no_main]

use libfuzzer_sys::fuzz_target;
use widthlab::model::StepFunction;
use widthlab::scalar::Scalar;
use widthlab::width::{point_width, WidthProfile};

fuzz_target!(|data: &[u8]| {
    let Ok(f) = serde_json::from_slice::<StepFunction>(data) else {
        return;
    };

    let first = serde_json::to_value(&f).expect("serializes");
    let again: StepFunction = serde_json::from_value(first.clone()).expect("reparses");
    let second = serde_json::to_value(&again).expect("serializes again");
    assert_eq!(first, second, "serialization is a fixed point");

    let b = f.domain().upper().clone();
    let half = &b * &Scalar::new(1, 2).unwrap();
    let profile = WidthProfile::of(&f);
    for x in [Scalar::zero(), half, b] {
        let direct = point_width(&f, &x).expect("in-domain point");
        assert_eq!(direct, profile.signed_at(&x).expect("in-domain point"));
    }
});
