// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;
use xtalk::cac::{certify, Codebook};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(book) = Codebook::from_json(text) else { return };
    assert_eq!(Codebook::from_json(&book.to_json().unwrap()).unwrap(), book);
    if book.len() <= 64 {
        let cert = certify(&book).unwrap();
        assert_eq!(cert.valid, cert.violations.is_empty());
    }
});
