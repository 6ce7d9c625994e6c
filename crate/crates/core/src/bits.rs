//! Basis-index ⇄ bitstring conversion.
//!
//! Qubit `i` is bit `i` of the basis index (qubit 0 is the least
//! significant bit) and character `i` of the displayed string (qubit 0 is
//! leftmost). A `'1'` means the corresponding QUBO variable is 1.

use crate::error::{Error, Result};

pub fn index_to_bitstring(index: u64, width: usize) -> String {
    (0..width)
        .map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn bitstring_to_index(s: &str) -> Result<u64> {
    if s.len() > 64 {
        return Err(Error::BadBitstring(s.to_owned()));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(Error::BadBitstring(s.to_owned())),
    })
}

/// Bits of `index` as a 0/1 vector, qubit order.
pub fn index_to_bits(index: u64, width: usize) -> Vec<u8> {
    (0..width).map(|i| ((index >> i) & 1) as u8).collect()
}

/// Vertex set encoded by a decision bitstring.
pub fn bitstring_to_set(s: &str) -> Result<Vec<usize>> {
    s.chars()
        .enumerate()
        .filter_map(|(i, c)| match c {
            '1' => Some(Ok(i)),
            '0' => None,
            _ => Some(Err(Error::BadBitstring(s.to_owned()))),
        })
        .collect()
}

pub fn set_to_bitstring(set: &[usize], width: usize) -> String {
    let mut chars = vec!['0'; width];
    for &v in set {
        chars[v] = '1';
    }
    chars.into_iter().collect()
}
