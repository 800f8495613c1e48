//! Bit-packed vectors and matrices over GF(2).
//!
//! A [`BitWord`] of length `n` lives in a single `u64`. Position `0` (the
//! first coordinate when written as a `0/1` string) is the most significant
//! of the `n` low bits, so the integer value of the packed word is exactly
//! the value of its string read as a binary number. The equal-weight
//! tie-break of [`WeightOrder`] relies on this layout.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest word a [`BitWord`] can hold.
pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[inline]
fn pos_bit(len: usize, pos: usize) -> u64 {
    1u64 << (len - 1 - pos)
}

/// A vector in GF(2)^n, `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitWord {
    bits: u64,
    len: u8,
}

impl BitWord {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LEN, "word length {len} exceeds {MAX_LEN}");
        BitWord {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn ones(len: usize) -> Self {
        assert!(len <= MAX_LEN, "word length {len} exceeds {MAX_LEN}");
        BitWord {
            bits: mask(len),
            len: len as u8,
        }
    }

    /// The unit vector with a single one at `pos` (0-based).
    pub fn unit(len: usize, pos: usize) -> Self {
        assert!(
            pos < len && len <= MAX_LEN,
            "position {pos} out of range for length {len}"
        );
        BitWord {
            bits: pos_bit(len, pos),
            len: len as u8,
        }
    }

    /// Wraps packed bits, rejecting stray bits above `len`.
    pub fn from_bits(len: usize, bits: u64) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::TooLong(len));
        }
        if bits & !mask(len) != 0 {
            return Err(Error::InvalidParameter(format!(
                "value {bits:#x} does not fit in {len} bits"
            )));
        }
        Ok(BitWord {
            bits,
            len: len as u8,
        })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(len: usize, bits: u64) -> Self {
        debug_assert!(len <= MAX_LEN && bits & !mask(len) == 0);
        BitWord {
            bits,
            len: len as u8,
        }
    }

    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut w = Self::zero(len);
        for p in positions {
            w.flip(p);
        }
        w
    }

    /// Parses a hexadecimal integer (optionally `0x`-prefixed) as a word of length `len`.
    pub fn from_hex(len: usize, s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches("0x").trim_start_matches("0X");
        let bits = u64::from_str_radix(digits, 16)
            .map_err(|e| Error::InvalidParameter(format!("bad hex word {s:?}: {e}")))?;
        Self::from_bits(len, bits)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len(), "position {pos} out of range");
        self.bits & pos_bit(self.len(), pos) != 0
    }

    #[inline]
    pub fn flip(&mut self, pos: usize) {
        assert!(pos < self.len(), "position {pos} out of range");
        self.bits ^= pos_bit(self.len(), pos);
    }

    #[inline]
    pub fn with_flipped(mut self, pos: usize) -> Self {
        self.flip(pos);
        self
    }

    /// Set positions in increasing order.
    pub fn support(&self) -> Support {
        Support {
            bits: self.bits,
            len: self.len,
        }
    }

    /// `supp(self) ⊆ supp(other)`.
    #[inline]
    pub fn is_subset_of(&self, other: &BitWord) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn distance(&self, other: &BitWord) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    /// Integer value in hex, zero-padded to `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        format!("{:0width$x}", self.bits, width = self.len().div_ceil(4))
    }

    fn check_len(&self, other: &BitWord) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

/// Iterator over set positions of a word, lowest position first.
pub struct Support {
    bits: u64,
    len: u8,
}

impl Iterator for Support {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        // Highest packed bit is the lowest position.
        let top = 63 - self.bits.leading_zeros() as usize;
        self.bits &= !(1u64 << top);
        Some(self.len as usize - 1 - top)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Support {}

impl BitXor for BitWord {
    type Output = BitWord;

    #[inline]
    fn bitxor(self, rhs: BitWord) -> BitWord {
        debug_assert_eq!(self.len, rhs.len);
        BitWord {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl BitXorAssign for BitWord {
    #[inline]
    fn bitxor_assign(&mut self, rhs: BitWord) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

/// Ordering of words of equal length is the weight order `≺`.
impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.bits.cmp(&other.bits))
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.len() {
            f.write_str(if self.get(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    /// Parses a string of `0`/`1` characters; the length is the string length.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_LEN {
            return Err(Error::TooLong(s.len()));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "unexpected character {ch:?} at column {} in word {s:?}",
                            i + 1
                        )))
                    }
                };
        }
        Ok(BitWord {
            bits,
            len: s.len() as u8,
        })
    }
}

/// The degree-compatible total order `≺` on words of length `n`.
///
/// Lower weight comes first; equal weights compare as unsigned integers
/// with position 0 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightOrder {
    n: usize,
}

impl WeightOrder {
    pub fn new(n: usize) -> Self {
        WeightOrder { n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn compare(&self, a: &BitWord, b: &BitWord) -> Result<Ordering> {
        for w in [a, b] {
            if w.len() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    found: w.len(),
                });
            }
        }
        Ok(a.cmp(b))
    }

    /// Sort key for packed words of this length: order by key is the order `≺`.
    #[inline]
    pub fn key(bits: u64) -> (u32, u64) {
        (bits.count_ones(), bits)
    }
}

/// Dense GF(2) matrix stored as packed rows.
///
/// Column `j` of a row is position `j` of the corresponding [`BitWord`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Matrix {
    rows: Vec<u64>,
    cols: usize,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Gf2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_LEN);
        Gf2Matrix {
            rows: vec![0; rows],
            cols,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.rows[i] = pos_bit(size, i);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitWord]) -> Result<Self> {
        if cols > MAX_LEN {
            return Err(Error::TooLong(cols));
        }
        let mut packed = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            packed.push(r.bits());
        }
        Ok(Gf2Matrix { rows: packed, cols })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> BitWord {
        BitWord::from_bits_unchecked(self.cols, self.rows[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = BitWord> + '_ {
        (0..self.nrows()).map(|i| self.row(i))
    }

    pub(crate) fn packed_rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i).get(j)
    }

    /// Column `j` as a word of length `nrows` (row 0 first).
    pub fn column(&self, j: usize) -> BitWord {
        assert!(self.nrows() <= MAX_LEN);
        let bit = pos_bit(self.cols, j);
        let mut col = 0u64;
        for &r in &self.rows {
            col = (col << 1) | u64::from(r & bit != 0);
        }
        BitWord::from_bits_unchecked(self.nrows(), col)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let rows: Vec<u64> = (0..self.cols).map(|j| self.column(j).bits()).collect();
        Gf2Matrix {
            rows,
            cols: self.nrows(),
        }
    }

    /// `M · wᵀ`, returned as a word of length `nrows`.
    pub fn mul_vec(&self, w: &BitWord) -> Result<BitWord> {
        if w.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: w.len(),
            });
        }
        assert!(self.nrows() <= MAX_LEN);
        let mut out = 0u64;
        for &r in &self.rows {
            out = (out << 1) | u64::from((r & w.bits()).count_ones() & 1);
        }
        Ok(BitWord::from_bits_unchecked(self.nrows(), out))
    }

    /// `self · otherᵀ`; zero exactly when every row of `self` is orthogonal to every row of `other`.
    pub fn mul_transpose(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                other.rows.iter().fold(0u64, |acc, &o| {
                    (acc << 1) | u64::from((r & o).count_ones() & 1)
                })
            })
            .collect();
        Ok(Gf2Matrix {
            rows,
            cols: other.nrows(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Reduced row echelon form. Zero rows are kept at the bottom.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let bit = pos_bit(self.cols, col);
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: Gf2Matrix {
                rows,
                cols: self.cols,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A full-rank basis of the orthogonal complement of the row space.
    ///
    /// Requires full row rank; returns an `(cols - rank) × cols` matrix.
    pub fn dual(&self) -> Result<Gf2Matrix> {
        let Rref {
            matrix,
            rank,
            pivots,
        } = self.rref();
        if rank != self.nrows() {
            return Err(Error::RankDeficient {
                expected: self.nrows(),
                found: rank,
            });
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut w = BitWord::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if matrix.get(i, f) {
                        w.flip(p);
                    }
                }
                w.bits()
            })
            .collect();
        Ok(Gf2Matrix {
            rows,
            cols: self.cols,
        })
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().map(|r| r.to_string()).collect();
        write!(f, "Gf2Matrix[{}]", rows.join("; "))
    }
}

/// `H` from a full-rank generator matrix `G`.
pub fn parity_check_from_generator(g: &Gf2Matrix) -> Result<Gf2Matrix> {
    g.dual()
}

/// `G` from a full-rank parity-check matrix `H`.
pub fn generator_from_parity_check(h: &Gf2Matrix) -> Result<Gf2Matrix> {
    h.dual()
}

/// Checked `≺` comparison; see [`WeightOrder`].
pub fn compare(a: &BitWord, b: &BitWord) -> Result<Ordering> {
    a.check_len(b)?;
    Ok(a.cmp(b))
}
