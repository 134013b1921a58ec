// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use xtalk::{classify_bus, delta_of, TransitionPattern};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = text.parse::<TransitionPattern>() else { return };
    // Display and the bit form are lossless; arrows keep the transitions only.
    assert_eq!(p.to_string().parse::<TransitionPattern>().unwrap(), p);
    assert_eq!(p.bit_string().parse::<TransitionPattern>().unwrap(), p);
    assert_eq!(p.arrow_string().parse::<TransitionPattern>().unwrap().transitions(), p.transitions());
    let (classes, max) = classify_bus(&delta_of(&p));
    assert_eq!(classes.len(), p.wire_count());
    assert!(classes.iter().all(|c| *c <= max));
});
