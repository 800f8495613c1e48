//! Binary linear codes: generator/parity-check pairs, syndromes and the text file format.
//!
//! File format:
//!
//! ```text
//! n k
//! <k rows of n characters from {0,1}: the generator matrix>
//! H                      (optional)
//! <n-k rows: the parity-check matrix>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitWord, Gf2Matrix, MAX_LEN};

/// `H·wᵀ` for some word `w`, packed like a [`BitWord`] of length `n - k`
/// (first parity check most significant).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syndrome(BitWord);

impl Syndrome {
    pub fn new(word: BitWord) -> Self {
        Syndrome(word)
    }

    pub fn zero(redundancy: usize) -> Self {
        Syndrome(BitWord::zero(redundancy))
    }

    pub fn from_bits(redundancy: usize, bits: u64) -> Result<Self> {
        BitWord::from_bits(redundancy, bits).map(Syndrome)
    }

    pub fn word(&self) -> BitWord {
        self.0
    }

    /// The packed value, usable as a dense index into a `2^(n-k)` table.
    #[inline]
    pub fn value(&self) -> usize {
        self.0.bits() as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::BitXor for Syndrome {
    type Output = Syndrome;
    fn bitxor(self, rhs: Syndrome) -> Syndrome {
        Syndrome(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({})", self.0)
    }
}

/// A binary `[n, k]` linear code with both a generator and a parity-check matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCode {
    n: usize,
    k: usize,
    generator: Gf2Matrix,
    parity_check: Gf2Matrix,
    /// Syndrome of each unit vector, i.e. the columns of `H`.
    columns: Vec<u64>,
}

impl BinaryCode {
    /// Validates `G` and `H` against each other: full rank and `G·Hᵀ = 0`.
    pub fn new(generator: Gf2Matrix, parity_check: Gf2Matrix) -> Result<Self> {
        let n = generator.ncols();
        if parity_check.ncols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: parity_check.ncols(),
            });
        }
        if n == 0 || n > MAX_LEN {
            return Err(Error::InvalidCode(format!(
                "length {n} outside 1..={MAX_LEN}"
            )));
        }
        let k = generator.nrows();
        if k + parity_check.nrows() != n {
            return Err(Error::InvalidCode(format!(
                "G has {k} rows and H has {} rows, expected them to sum to n = {n}",
                parity_check.nrows()
            )));
        }
        let rank_g = generator.rank();
        if rank_g != k {
            return Err(Error::RankDeficient {
                expected: k,
                found: rank_g,
            });
        }
        let rank_h = parity_check.rank();
        if rank_h != n - k {
            return Err(Error::RankDeficient {
                expected: n - k,
                found: rank_h,
            });
        }
        if !generator.mul_transpose(&parity_check)?.is_zero() {
            return Err(Error::InvalidCode("G·Hᵀ is not zero".into()));
        }
        let columns = (0..n).map(|j| parity_check.column(j).bits()).collect();
        Ok(BinaryCode {
            n,
            k,
            generator,
            parity_check,
            columns,
        })
    }

    pub fn from_generator(generator: Gf2Matrix) -> Result<Self> {
        let h = crate::gf2::parity_check_from_generator(&generator)?;
        Self::new(generator, h)
    }

    pub fn from_parity_check(parity_check: Gf2Matrix) -> Result<Self> {
        let g = crate::gf2::generator_from_parity_check(&parity_check)?;
        Self::new(g, parity_check)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `n - k`, the number of parity checks.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn generator(&self) -> &Gf2Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Gf2Matrix {
        &self.parity_check
    }

    pub fn syndrome(&self, w: &BitWord) -> Result<Syndrome> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: w.len(),
            });
        }
        Ok(Syndrome(BitWord::from_bits_unchecked(
            self.redundancy(),
            self.syndrome_bits(w.bits()),
        )))
    }

    /// Packed syndrome of packed word bits; no length check.
    #[inline]
    pub fn syndrome_bits(&self, mut bits: u64) -> u64 {
        let mut s = 0u64;
        while bits != 0 {
            let top = 63 - bits.leading_zeros() as usize;
            bits &= !(1u64 << top);
            s ^= self.columns[self.n - 1 - top];
        }
        s
    }

    /// Syndrome of the unit vector at `pos`, which is column `pos` of `H`.
    pub fn column(&self, pos: usize) -> Syndrome {
        Syndrome(BitWord::from_bits_unchecked(
            self.redundancy(),
            self.columns[pos],
        ))
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        w.len() == self.n && self.syndrome_bits(w.bits()) == 0
    }

    /// Encodes a `k`-bit message (position 0 multiplies row 0 of `G`).
    pub fn encode(&self, message: u64) -> BitWord {
        let rows = self.generator.packed_rows();
        let mut c = 0u64;
        for (i, &row) in rows.iter().enumerate() {
            if message >> (self.k - 1 - i) & 1 == 1 {
                c ^= row;
            }
        }
        BitWord::from_bits_unchecked(self.n, c)
    }

    /// All `2^k` codewords, in Gray-code order starting from zero.
    pub fn codewords(&self) -> Codewords<'_> {
        Codewords {
            rows: self.generator.packed_rows(),
            n: self.n,
            index: 0,
            current: 0,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_code(text)
    }

    /// Text form, always including the `H` section.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for r in self.generator.rows() {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str("H\n");
        for r in self.parity_check.rows() {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BinaryCode[{}, {}] G={:?} H={:?}",
            self.n, self.k, self.generator, self.parity_check
        )
    }
}

/// Gray-code enumeration of the code; see [`BinaryCode::codewords`].
pub struct Codewords<'a> {
    rows: &'a [u64],
    n: usize,
    index: u64,
    current: u64,
}

impl Iterator for Codewords<'_> {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        let total = 1u64 << self.rows.len();
        if self.index >= total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current ^= self.rows[flip];
        }
        self.index += 1;
        Some(BitWord::from_bits_unchecked(self.n, self.current))
    }
}

fn parse_code(text: &str) -> Result<BinaryCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty code file".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse {
        line: hline,
        msg: format!("expected `n k`, found {header:?}"),
    };
    if dims.len() != 2 {
        return Err(bad_header());
    }
    let n: usize = dims[0].parse().map_err(|_| bad_header())?;
    let k: usize = dims[1].parse().map_err(|_| bad_header())?;
    if n == 0 || n > MAX_LEN || k > n {
        return Err(Error::Parse {
            line: hline,
            msg: format!("invalid dimensions n = {n}, k = {k}"),
        });
    }

    let g_rows = read_rows(&mut lines, n, k, hline, "G")?;
    let g = Gf2Matrix::from_rows(n, &g_rows)?;
    let h = match lines.next() {
        None => None,
        Some((_, "H")) => {
            let h_rows = read_rows(&mut lines, n, n - k, hline, "H")?;
            Some(Gf2Matrix::from_rows(n, &h_rows)?)
        }
        Some((ln, other)) => {
            return Err(Error::Parse {
                line: ln,
                msg: format!("unexpected line {other:?} after G"),
            })
        }
    };
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing content after matrices".into(),
        });
    }
    match h {
        Some(h) => BinaryCode::new(g, h),
        None => BinaryCode::from_generator(g),
    }
}

fn read_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    count: usize,
    header_line: usize,
    what: &str,
) -> Result<Vec<BitWord>> {
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, l) = lines.next().ok_or(Error::Parse {
            line: header_line,
            msg: format!("expected {count} rows of {what}, found {}", rows.len()),
        })?;
        let w: BitWord = l.parse().map_err(|e| Error::Parse {
            line: ln,
            msg: format!("{e}"),
        })?;
        if w.len() != n {
            return Err(Error::Parse {
                line: ln,
                msg: format!("row has length {}, expected {n}", w.len()),
            });
        }
        rows.push(w);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAMMING: &str = "7 4\n1110000\n1001100\n0101010\n1101001\nH\n1010101\n0110011\n0001111\n";

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_syndromes() {
        let code = BinaryCode::parse(HAMMING).unwrap();
        for row in code.generator().rows() {
            assert!(code.syndrome(&row).unwrap().is_zero());
        }
        assert_eq!(
            code.syndrome(&BitWord::unit(7, 2)).unwrap().word(),
            w("110")
        );
        for j in 0..7 {
            assert_eq!(
                code.syndrome(&BitWord::unit(7, j)).unwrap().word(),
                code.parity_check().column(j)
            );
        }
        assert!(code.syndrome(&w("101")).is_err());
    }

    #[test]
    fn gray_enumeration_covers_code() {
        let code = BinaryCode::parse(HAMMING).unwrap();
        let mut all: Vec<u64> = code.codewords().map(|c| c.bits()).collect();
        assert_eq!(all.len(), 16);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 16);
        assert!(code.codewords().all(|c| code.contains(&c)));
        let mut encoded: Vec<u64> = (0..16).map(|m| code.encode(m).bits()).collect();
        encoded.sort();
        assert_eq!(encoded, all);
    }

    #[test]
    fn parse_without_h_and_roundtrip() {
        let code = BinaryCode::parse("3 1\n111\n").unwrap();
        assert_eq!(code.redundancy(), 2);
        let again = BinaryCode::parse(&code.to_text()).unwrap();
        assert_eq!(again, code);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(BinaryCode::parse("").is_err());
        assert!(BinaryCode::parse("3\n111\n").is_err());
        assert!(BinaryCode::parse("3 1\n11\n").is_err());
        assert!(
            BinaryCode::parse("3 2\n110\n110\n").is_err(),
            "rank deficient G"
        );
        assert!(
            BinaryCode::parse("3 1\n111\nH\n110\n").is_err(),
            "missing H row"
        );
        assert!(
            BinaryCode::parse("3 1\n111\nH\n110\n101\n111\n").is_err(),
            "trailing row"
        );
        assert!(
            BinaryCode::parse("3 1\n111\nH\n110\n100\n").is_err(),
            "G·Hᵀ ≠ 0"
        );
        assert!(
            BinaryCode::parse("3 1\n111\nH\n110\n110\n").is_err(),
            "rank deficient H"
        );
        assert!(BinaryCode::parse("3 1\n1a1\n").is_err());
    }

    #[test]
    fn linearity() {
        let code = BinaryCode::parse(HAMMING).unwrap();
        for a in 0..128u64 {
            for b in (0..128u64).step_by(7) {
                let (x, y) = (
                    BitWord::from_bits(7, a).unwrap(),
                    BitWord::from_bits(7, b).unwrap(),
                );
                assert_eq!(
                    code.syndrome(&(x ^ y)).unwrap(),
                    code.syndrome(&x).unwrap() ^ code.syndrome(&y).unwrap()
                );
            }
        }
    }
}
