// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use xtalk::scenario::Scenario;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(s) = Scenario::from_json(text) else { return };
    let again = Scenario::from_json(&s.to_json().unwrap()).unwrap();
    assert_eq!(again, s);
    let _ = s.cases();
});
