//! Named code families and the `name:params` syntax used on the command line.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::{mask, BitWord, Gf2Matrix};

/// Name of the generator behind [`random`] and the simulation streams.
pub const RNG_ALGORITHM: &str = "ChaCha8";

/// Binary Hamming code with `r` parity checks: `[2^r - 1, 2^r - 1 - r, 3]`.
///
/// Column `j` (1-based) of `H` is the binary expansion of `j`, least
/// significant bit in the first row.
pub fn hamming(r: usize) -> Result<BinaryCode> {
    if !(2..=6).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "hamming({r}): r must be in 2..=6"
        )));
    }
    let n = (1usize << r) - 1;
    let rows: Vec<BitWord> = (0..r)
        .map(|b| BitWord::from_positions(n, (0..n).filter(|j| ((j + 1) >> b) & 1 == 1)))
        .collect();
    BinaryCode::from_parity_check(Gf2Matrix::from_rows(n, &rows)?)
}

/// The `[n, 1, n]` repetition code.
pub fn repetition(n: usize) -> Result<BinaryCode> {
    if !(1..=64).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "repetition({n}): n must be in 1..=64"
        )));
    }
    BinaryCode::from_generator(Gf2Matrix::from_rows(n, &[BitWord::ones(n)])?)
}

/// A uniformly random `[n, k]` code: `k` random rows, redrawn until they are independent.
pub fn random(n: usize, k: usize, seed: u64) -> Result<BinaryCode> {
    if !(1..=64).contains(&n) || k > n {
        return Err(Error::InvalidParameter(format!(
            "random({n}, {k}): need 1 <= n <= 64 and k <= n"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<BitWord> = (0..k)
            .map(|_| BitWord::from_bits(n, rng.gen::<u64>() & mask(n)).expect("masked"))
            .collect();
        let g = Gf2Matrix::from_rows(n, &rows)?;
        if g.rank() == k {
            return BinaryCode::from_generator(g);
        }
    }
}

/// A code source as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSpec {
    Hamming(usize),
    Repetition(usize),
    Random { n: usize, k: usize, seed: u64 },
    File(PathBuf),
}

impl CodeSpec {
    pub fn build(&self) -> Result<BinaryCode> {
        match self {
            CodeSpec::Hamming(r) => hamming(*r),
            CodeSpec::Repetition(n) => repetition(*n),
            CodeSpec::Random { n, k, seed } => random(*n, *k, *seed),
            CodeSpec::File(path) => BinaryCode::parse(&std::fs::read_to_string(path)?),
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Hamming(r) => write!(f, "hamming:{r}"),
            CodeSpec::Repetition(n) => write!(f, "repetition:{n}"),
            CodeSpec::Random { n, k, seed } => write!(f, "random:{n},{k},{seed}"),
            CodeSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    /// `hamming:R`, `repetition:N`, `random:N,K[,SEED]` (seed 0 when omitted) or `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognised code {s:?}"));
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let nums = || -> Result<Vec<u64>> {
            params
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        match name {
            "hamming" => match nums()?[..] {
                [r] => Ok(CodeSpec::Hamming(r as usize)),
                _ => Err(bad()),
            },
            "repetition" => match nums()?[..] {
                [n] => Ok(CodeSpec::Repetition(n as usize)),
                _ => Err(bad()),
            },
            "random" => match nums()?[..] {
                [n, k] => Ok(CodeSpec::Random {
                    n: n as usize,
                    k: k as usize,
                    seed: 0,
                }),
                [n, k, seed] => Ok(CodeSpec::Random {
                    n: n as usize,
                    k: k as usize,
                    seed,
                }),
                _ => Err(bad()),
            },
            "file" if !params.is_empty() => Ok(CodeSpec::File(PathBuf::from(params))),
            _ => Err(bad()),
        }
    }
}
