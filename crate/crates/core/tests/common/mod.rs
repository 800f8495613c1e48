//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here goes through the tables, syndrome helpers or enumeration
//! routines of the library; everything is recomputed from the rows of `G`
//! and `H`.

#![allow(dead_code)]

use std::collections::HashMap;

use gdd::{BinaryCode, BitWord};

pub fn word(n: usize, bits: u64) -> BitWord {
    BitWord::from_bits(n, bits).unwrap()
}

/// `H·wᵀ` from the packed rows of `H`, first row most significant.
pub fn syndrome(code: &BinaryCode, w: u64) -> u64 {
    code.parity_check().rows().fold(0u64, |acc, row| {
        (acc << 1) | u64::from((row.bits() & w).count_ones() & 1)
    })
}

/// Every codeword, by summing subsets of the rows of `G`.
pub fn codewords(code: &BinaryCode) -> Vec<u64> {
    let rows: Vec<u64> = code.generator().rows().map(|r| r.bits()).collect();
    (0..1u64 << rows.len())
        .map(|m| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .fold(0, |acc, (_, r)| acc ^ r)
        })
        .collect()
}

/// For every syndrome, the smallest word of that coset in (weight, integer value) order.
pub fn coset_minima(code: &BinaryCode) -> HashMap<u64, u64> {
    let mut best: HashMap<u64, u64> = HashMap::new();
    for w in 0..1u64 << code.n() {
        let s = syndrome(code, w);
        let e = best.entry(s).or_insert(w);
        if (w.count_ones(), w) < (e.count_ones(), *e) {
            *e = w;
        }
    }
    best
}

/// Distance from `r` to the nearest codeword.
pub fn distance_to_code(codewords: &[u64], r: u64) -> u32 {
    codewords
        .iter()
        .map(|c| (c ^ r).count_ones())
        .min()
        .unwrap()
}

pub fn min_distance(code: &BinaryCode) -> Option<u32> {
    codewords(code)
        .into_iter()
        .filter(|&c| c != 0)
        .map(u64::count_ones)
        .min()
}

fn rank(mut vectors: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in (0..64).rev() {
        let Some(p) = (rank..vectors.len()).find(|&i| vectors[i] >> bit & 1 == 1) else {
            continue;
        };
        vectors.swap(rank, p);
        let pivot = vectors[rank];
        for v in vectors.iter_mut().skip(rank + 1) {
            if *v >> bit & 1 == 1 {
                *v ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Minimal codewords via the rank criterion: a nonzero codeword `c` is
/// minimal exactly when the columns of `H` on `supp(c)` have rank
/// `wt(c) - 1`, i.e. the only codewords supported inside `supp(c)` are `0`
/// and `c`.
pub fn minimal_codewords(code: &BinaryCode) -> Vec<u64> {
    let n = code.n();
    let h = code.parity_check();
    let columns: Vec<u64> = (0..n).map(|j| h.column(j).bits()).collect();
    let mut out: Vec<u64> = codewords(code)
        .into_iter()
        .filter(|&c| c != 0)
        .filter(|&c| {
            let cols: Vec<u64> = (0..n)
                .filter(|&j| c >> (n - 1 - j) & 1 == 1)
                .map(|j| columns[j])
                .collect();
            rank(cols) + 1 == c.count_ones() as usize
        })
        .collect();
    out.sort_by_key(|&c| (c.count_ones(), c));
    out
}

/// Hamming [7,4] with `H = [1010101; 0110011; 0001111]`.
pub fn hamming7() -> BinaryCode {
    gdd::codes::hamming(3).unwrap()
}
