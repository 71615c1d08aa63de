//! Scrambled Sobol low-discrepancy sequences for state-space sampling.
//!
//! Digital construction in base 2 with 32 output bits. Dimension 1 is the
//! van der Corput radical inverse (all direction integers 1); higher
//! dimensions use primitive polynomials over GF(2), enumerated in
//! (degree, coefficient) order, with the standard direction-integer
//! recurrence. The first direction integer of every dimension is necessarily
//! 1, so the unscrambled sequence always starts (0, 0, ...), (0.5, 0.5, ...).
//! Initial direction integers beyond the first are fixed odd values derived
//! from a SplitMix64 avalanche of (dimension, index), which keeps the table
//! fully deterministic without carrying an external data file.
//!
//! Scrambling is Owen-style nested uniform scrambling implemented with a
//! Laine-Karras-type multiply-xor hash on bit-reversed words (per-dimension
//! keys derived from the caller's seed), which preserves all dyadic
//! stratification properties of the base sequence.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Highest supported dimension. Primitive polynomials through degree 10
/// provide exactly this many dimensions.
pub const MAX_DIMENSION: usize = 160;

const BITS: u32 = 32;

/// Direction integers for one dimension, pre-shifted into 32-bit words.
type DirectionTable = Vec<[u32; BITS as usize]>;

fn direction_tables() -> &'static DirectionTable {
    static TABLES: OnceLock<DirectionTable> = OnceLock::new();
    TABLES.get_or_init(build_direction_tables)
}

/// SplitMix64 avalanche used for deterministic initial direction integers
/// and per-dimension scramble keys.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Multiplicative order of x in GF(2)[x]/(poly) equals 2^degree - 1 iff the
/// polynomial is primitive. The unit group of a non-field quotient is
/// strictly smaller, so the order test alone decides primitivity.
fn is_primitive(poly: u32, degree: u32) -> bool {
    let target = (1u32 << degree) - 1;
    let mut e = 1u32;
    for step in 1..=target {
        // multiply by x, reduce modulo poly
        e <<= 1;
        if e & (1 << degree) != 0 {
            e ^= poly;
        }
        if e == 1 {
            return step == target;
        }
    }
    false
}

/// Primitive polynomials in (degree ascending, coefficient ascending) order,
/// encoded with bit i = coefficient of x^i.
fn primitive_polynomials(count: usize) -> Vec<(u32, u32)> {
    let mut polys = Vec::with_capacity(count);
    let mut degree = 1u32;
    while polys.len() < count {
        let interior = 1u32 << (degree - 1);
        for a in 0..interior {
            let poly = (1 << degree) | (a << 1) | 1;
            if is_primitive(poly, degree) {
                polys.push((poly, degree));
                if polys.len() == count {
                    break;
                }
            }
        }
        degree += 1;
        assert!(degree <= 16, "polynomial enumeration ran away");
    }
    polys
}

fn build_direction_tables() -> DirectionTable {
    let mut tables = Vec::with_capacity(MAX_DIMENSION);

    // Dimension 1: van der Corput, every direction integer is 1.
    let mut vdc = [0u32; BITS as usize];
    for (k, v) in vdc.iter_mut().enumerate() {
        *v = 1u32 << (BITS - 1 - k as u32);
    }
    tables.push(vdc);

    let polys = primitive_polynomials(MAX_DIMENSION - 1);
    for (dim_index, &(poly, degree)) in polys.iter().enumerate() {
        let s = degree as usize;
        let mut m = vec![0u64; BITS as usize + 1]; // 1-based
        m[1] = 1; // forced: odd and < 2
        for k in 2..=BITS as usize {
            if k <= s {
                // Deterministic odd initial value below 2^k.
                let r = mix64(((dim_index as u64 + 2) << 16) ^ k as u64);
                m[k] = (2 * (r % (1u64 << (k - 1)))) + 1;
            } else {
                let mut val = (m[k - s] << s) ^ m[k - s];
                for j in 1..s {
                    // coefficient of x^(s-j)
                    if poly & (1 << (s - j)) != 0 {
                        val ^= m[k - j] << j;
                    }
                }
                m[k] = val;
            }
        }
        let mut dirs = [0u32; BITS as usize];
        for k in 1..=BITS as usize {
            dirs[k - 1] = (m[k] as u32) << (BITS - k as u32);
        }
        tables.push(dirs);
    }
    tables
}

/// Laine-Karras style hash with Brent Burley's improved constants; applied in
/// bit-reversed space it realizes an Owen scramble (each output digit depends
/// only on more significant input digits of the original word).
fn owen_hash(mut x: u32, seed: u32) -> u32 {
    x = x.wrapping_add(seed);
    x ^= x.wrapping_mul(0x6c50_b47c);
    x ^= x.wrapping_mul(0xb82f_1e52);
    x ^= x.wrapping_mul(0xc7af_e638);
    x ^= x.wrapping_mul(0x8d22_f6e6);
    x
}

fn owen_scramble(word: u32, key: u32) -> u32 {
    owen_hash(word.reverse_bits(), key).reverse_bits()
}

fn check_args(n: usize, dims: usize) -> Result<()> {
    if n == 0 || dims == 0 {
        return Err(Error::domain("sobol: need n > 0 and dims > 0".to_string()));
    }
    if dims > MAX_DIMENSION {
        return Err(Error::domain(format!(
            "sobol: {dims} dimensions requested, {MAX_DIMENSION} supported"
        )));
    }
    Ok(())
}

fn generate(n: usize, dims: usize, scramble: Option<u64>) -> Result<Vec<Vec<f64>>> {
    check_args(n, dims)?;
    let tables = direction_tables();
    let keys: Vec<u32> = (0..dims)
        .map(|d| match scramble {
            Some(seed) => mix64(mix64(seed) ^ (d as u64 + 1)) as u32,
            None => 0,
        })
        .collect();

    let mut words = vec![0u32; dims];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            // Gray-code order: flip the direction of the lowest set bit of i.
            let k = (i as u32).trailing_zeros() as usize;
            for (d, w) in words.iter_mut().enumerate() {
                *w ^= tables[d][k];
            }
        }
        let row: Vec<f64> = words
            .iter()
            .zip(&keys)
            .map(|(&w, &key)| {
                let w = if scramble.is_some() {
                    owen_scramble(w, key)
                } else {
                    w
                };
                w as f64 / (1u64 << BITS) as f64
            })
            .collect();
        out.push(row);
    }
    Ok(out)
}

/// First `n` points of the Owen-scrambled Sobol sequence in `dims`
/// dimensions; the scramble is fully determined by `seed`. Coordinates lie
/// in [0, 1).
pub fn sobol_states(n: usize, dims: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    generate(n, dims, Some(seed))
}

/// Unscrambled base sequence; mainly useful for cross-checking against
/// published Sobol constructions.
pub fn sobol_states_unscrambled(n: usize, dims: usize) -> Result<Vec<Vec<f64>>> {
    generate(n, dims, None)
}
