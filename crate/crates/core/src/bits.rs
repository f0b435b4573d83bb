//! Bit-string/index conversions.
//!
//! Bit `i` of a basis index holds the binary variable paired with the
//! `(i+1)`-th weight; the leftmost character of a bit string is that same
//! first variable. `"100"` therefore denotes basis index 1, and `"001"`
//! denotes index 4.

use crate::error::{Error, Result};

pub fn index_of_bitstring(s: &str, n_qubits: u32) -> Result<u64> {
    if s.len() != n_qubits as usize {
        return Err(Error::BitstringLength {
            expected: n_qubits as usize,
            got: s.len(),
        });
    }
    let mut index = 0u64;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '1' => index |= 1 << i,
            '0' => {}
            other => return Err(Error::BitstringChar { found: other }),
        }
    }
    Ok(index)
}

pub fn bitstring_of_index(index: u64, n_qubits: u32) -> String {
    (0..n_qubits)
        .map(|i| if index >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Bitwise inverse within an `n_qubits`-bit register.
pub fn invert_index(index: u64, n_qubits: u32) -> u64 {
    index ^ ((1u64 << n_qubits) - 1)
}
