//! Deterministic child-seed derivation.
//!
//! Each `(kappa, replicate)` cell gets its own 64-bit seed derived from the
//! plan's base seed by three chained splitmix64 avalanche steps:
//!
//! ```text
//! child = splitmix64(splitmix64(splitmix64(base) ^ kappa) ^ replicate)
//! ```
//!
//! The mix is part of the experiment protocol, not an implementation detail,
//! so reimplementations in other languages must reproduce these vectors:
//!
//! | base                 | kappa | replicate | child                |
//! |----------------------|-------|-----------|----------------------|
//! | 0                    | 0     | 0         | 0x238275bc38fcbe91   |
//! | 0                    | 1000  | 0         | 0x103d6401e46d828e   |
//! | 42                   | 1000  | 0         | 0x8863922f5910a6e1   |
//! | 42                   | 1000  | 1         | 0x906a46b0c561eb11   |
//! | 42                   | 30000 | 199       | 0xe334261829a9677b   |
//! | 0xffffffffffffffff   | 1     | 2         | 0x6f3abded3a3bc478   |
//! | 0xf100d              | 10    | 0         | 0x1efb6e6ae633d3b9   |

/// One output step of the splitmix64 generator applied to `state`.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for one replicate. See the module docs for the exact mix and
/// its frozen test vectors.
pub fn child_seed(base: u64, kappa: u64, replicate: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ kappa) ^ replicate)
}
