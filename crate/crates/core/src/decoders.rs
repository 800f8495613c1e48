//! Gradient descent decoders and their brute-force reference.
//!
//! Two kinds of descent are implemented. The leader-based decoders walk
//! from the coset of the received word to the code itself, one flipped
//! position at a time, each step lowering the coset-leader weight by one.
//! The test-set decoder stays inside the translate `r + C` and repeatedly
//! subtracts a codeword that lowers the weight of the residual word.
//!
//! The descent step is strict. At a coset with leader `l`, flipping any
//! position in the support of `l` reaches a coset whose leader weight is
//! `wt(l) - 1` (the leader set is closed under removing support bits), so a
//! strictly descending step always exists and the walk ends after exactly
//! `wt(l)` steps. Among descending positions the smallest index is taken.
//!
//! [`ip_solve`] answers the modular integer program
//! `min Σu_i  s.t.  H·u ≡ b (mod 2), u ∈ Z≥0^n`. Only 0/1 solutions need
//! to be considered: replacing every `u_i` by `u_i mod 2` keeps the
//! constraint and never increases the objective. A 0/1 vector with
//! syndrome `b` of least weight is a leader of that coset.

use std::fmt;

use crate::border::{TestSet, MAX_ENUMERATION_DIM};
use crate::code::{BinaryCode, Syndrome};
use crate::error::{Error, Result};
use crate::gf2::BitWord;
use crate::representation::{CompactRepresentation, CosetTable, GroebnerRepresentation};

/// One iteration of a decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// A single position was flipped (leader descent).
    Flip(usize),
    /// A test-set codeword was subtracted.
    Apply(BitWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub codeword: BitWord,
    /// `received + codeword`.
    pub error: BitWord,
    pub distance: u32,
    pub steps: Vec<Step>,
    /// For descent decoders: the error weight is within the packing radius,
    /// so the decoded codeword is the only one that close. For the
    /// brute-force decoder: no other codeword is at the same distance.
    pub unique: bool,
}

impl DecodeResult {
    fn new(received: BitWord, codeword: BitWord, steps: Vec<Step>, unique: bool) -> Self {
        let error = received ^ codeword;
        DecodeResult {
            codeword,
            error,
            distance: error.weight(),
            steps,
            unique,
        }
    }
}

impl fmt::Display for DecodeResult {
    /// `codeword error_weight unique steps`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.codeword,
            self.distance,
            u8::from(self.unique),
            self.steps.len()
        )
    }
}

/// Exhaustive nearest-codeword search over all `2^k` codewords.
#[derive(Debug, Clone)]
pub struct MlOracle {
    code: BinaryCode,
    codewords: Vec<u64>,
    min_distance: Option<u32>,
}

impl MlOracle {
    pub fn new(code: &BinaryCode) -> Result<Self> {
        Self::with_limit(code, MAX_ENUMERATION_DIM)
    }

    pub fn with_limit(code: &BinaryCode, max_k: usize) -> Result<Self> {
        if code.k() > max_k {
            return Err(Error::ScaleGuard(format!(
                "brute-force decoding over 2^{} codewords exceeds 2^{max_k}",
                code.k()
            )));
        }
        let codewords: Vec<u64> = code.codewords().map(|c| c.bits()).collect();
        let min_distance = codewords
            .iter()
            .filter(|&&c| c != 0)
            .map(|c| c.count_ones())
            .min();
        Ok(MlOracle {
            code: code.clone(),
            codewords,
            min_distance,
        })
    }

    /// Minimum distance; `None` for the zero code.
    pub fn min_distance(&self) -> Option<u32> {
        self.min_distance
    }

    /// `floor((d-1)/2)`, or `n` for the zero code.
    pub fn packing_radius(&self) -> u32 {
        self.min_distance
            .map_or(self.code.n() as u32, |d| (d - 1) / 2)
    }

    /// Closest codeword; among ties, the one leaving the `≺`-smallest error.
    pub fn decode(&self, r: &BitWord) -> Result<DecodeResult> {
        if r.len() != self.code.n() {
            return Err(Error::LengthMismatch {
                expected: self.code.n(),
                found: r.len(),
            });
        }
        let rb = r.bits();
        let mut best = (u32::MAX, u64::MAX);
        let mut ties = 0usize;
        for &c in &self.codewords {
            let e = rb ^ c;
            let d = e.count_ones();
            if d < best.0 {
                best = (d, e);
                ties = 1;
            } else if d == best.0 {
                ties += 1;
                best.1 = best.1.min(e);
            }
        }
        let codeword = BitWord::from_bits_unchecked(self.code.n(), rb ^ best.1);
        Ok(DecodeResult::new(*r, codeword, Vec::new(), ties == 1))
    }
}

/// Convenience wrapper around [`MlOracle`].
pub fn ml_bruteforce(code: &BinaryCode, r: &BitWord) -> Result<DecodeResult> {
    MlOracle::new(code)?.decode(r)
}

/// Minimum distance by enumeration; `None` for the zero code.
pub fn minimum_distance(code: &BinaryCode) -> Result<Option<u32>> {
    Ok(MlOracle::new(code)?.min_distance())
}

pub fn covering_radius(table: &impl CosetTable) -> u32 {
    table.covering_radius()
}

/// Walks from `coset` down to the zero coset, flipping `r` along the way.
fn descend<T: CosetTable + ?Sized>(
    table: &T,
    mut coset: usize,
    r: &mut BitWord,
    steps: &mut Vec<Step>,
) -> Result<()> {
    let n = table.n();
    while coset != 0 {
        let w = table.leader_weight(coset);
        let row = &table.phi_table()[coset * n..(coset + 1) * n];
        let Some(j) = row
            .iter()
            .position(|&t| table.leader_weight(t as usize) + 1 == w)
        else {
            return Err(Error::invariant(format!(
                "no descending step from coset {coset} of weight {w}"
            )));
        };
        r.flip(j);
        steps.push(Step::Flip(j));
        coset = row[j] as usize;
    }
    Ok(())
}

/// Forward step: the coset of `r` and its leader weight, by folding `phi`
/// over the set positions of `r`.
pub fn forward_step(table: &impl CosetTable, r: &BitWord) -> Result<(usize, u32)> {
    let coset = table.coset_index_forward(r)?;
    Ok((coset, table.leader_weight(coset)))
}

/// Leader-weight descent, with the coset weight of `r` looked up by syndrome.
pub fn l_gdda(compact: &CompactRepresentation, r: &BitWord) -> Result<DecodeResult> {
    let coset = compact.coset_index(r)?;
    let unique = compact.leader_weight(coset) <= compact.packing_radius();
    let mut word = *r;
    let mut steps = Vec::with_capacity(compact.leader_weight(coset) as usize);
    descend(compact, coset, &mut word, &mut steps)?;
    Ok(DecodeResult::new(*r, word, steps, unique))
}

/// Forward step through `phi`, then descent tracking the leader vectors.
pub fn reduction_gdda(rep: &GroebnerRepresentation, r: &BitWord) -> Result<DecodeResult> {
    let mut coset = rep.coset_index_forward(r)?;
    let mut leader = rep.leader(coset);
    let unique = leader.weight() <= rep.packing_radius();
    let mut word = *r;
    let mut steps = Vec::with_capacity(leader.weight() as usize);
    while !leader.is_zero() {
        let w = leader.weight();
        let Some((j, next)) = (0..rep.n())
            .map(|j| (j, rep.phi(coset, j)))
            .find(|&(_, t)| rep.leader(t).weight() + 1 == w)
        else {
            return Err(Error::invariant(format!(
                "no descending step from leader {leader}"
            )));
        };
        word.flip(j);
        steps.push(Step::Flip(j));
        coset = next;
        leader = rep.leader(coset);
    }
    Ok(DecodeResult::new(*r, word, steps, unique))
}

/// Forward step through `phi` on the compact table, then the same descent
/// as [`l_gdda`]. `unique` is `w_ℓ <= t`, with `t` defaulting to the
/// packing radius of the code.
pub fn compact_reduction_gdda(
    compact: &CompactRepresentation,
    r: &BitWord,
    t: Option<u32>,
) -> Result<DecodeResult> {
    let (coset, weight) = forward_step(compact, r)?;
    let unique = weight <= t.unwrap_or(compact.packing_radius());
    let mut word = *r;
    let mut steps = Vec::with_capacity(weight as usize);
    descend(compact, coset, &mut word, &mut steps)?;
    Ok(DecodeResult::new(*r, word, steps, unique))
}

/// Test-set descent: while some `t` lowers the weight of the residual,
/// subtract the one with the largest drop (`≺`-smallest among equals).
///
/// `unique` is set when the final distance is at most `packing_radius`.
pub fn ts_gdda(
    test_set: &TestSet,
    r: &BitWord,
    packing_radius: Option<u32>,
) -> Result<DecodeResult> {
    let mut residual = *r;
    let mut codeword = BitWord::zero(r.len());
    let mut steps = Vec::new();
    if let Some(t) = test_set.words().first() {
        if t.len() != r.len() {
            return Err(Error::LengthMismatch {
                expected: t.len(),
                found: r.len(),
            });
        }
    }
    loop {
        let current = residual.weight();
        let mut best: Option<(u32, BitWord)> = None;
        for &t in test_set.words() {
            // wt(r + t) >= wt(t) - wt(r), so heavier words cannot help.
            if t.weight() >= 2 * current {
                break;
            }
            let after = (residual ^ t).weight();
            if after < current && best.is_none_or(|(b, _)| after < b) {
                best = Some((after, t));
            }
        }
        let Some((_, t)) = best else { break };
        residual ^= t;
        codeword ^= t;
        steps.push(Step::Apply(t));
    }
    let unique = packing_radius.is_some_and(|t| residual.weight() <= t);
    Ok(DecodeResult::new(*r, codeword, steps, unique))
}

/// Does the coset with syndrome `s` contain a word of weight at most `t`?
pub fn cwp_query(compact: &CompactRepresentation, s: &Syndrome, t: u32) -> Result<bool> {
    let coset = compact.coset_of_syndrome(s)?;
    Ok(compact.leader_weight(coset) <= t)
}

/// Optimal value and a 0/1 optimal solution of the modular integer program
/// for right-hand side `b`, reconstructed by descent from the coset of `b`.
pub fn ip_solve(compact: &CompactRepresentation, b: &Syndrome) -> Result<(u32, BitWord)> {
    let coset = compact.coset_of_syndrome(b)?;
    let mut solution = BitWord::zero(compact.n());
    let mut steps = Vec::new();
    descend(compact, coset, &mut solution, &mut steps)?;
    Ok((compact.leader_weight(coset), solution))
}

/// As [`ip_solve`], returning the stored coset leader.
pub fn ip_solve_full(rep: &GroebnerRepresentation, b: &Syndrome) -> Result<(u32, BitWord)> {
    let leader = rep.leader(rep.coset_of_syndrome(b)?);
    Ok((leader.weight(), leader))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::border::minimal_codewords_bruteforce;
    use crate::codes;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn ml_examples() {
        let rep3 = codes::repetition(3).unwrap();
        let res = ml_bruteforce(&rep3, &w("110")).unwrap();
        assert_eq!(res.codeword, w("111"));
        assert_eq!(res.distance, 1);
        assert!(res.unique);

        let ham = codes::hamming(3).unwrap();
        let c = ham.encode(0b1011);
        let res = ml_bruteforce(&ham, &c).unwrap();
        assert_eq!((res.codeword, res.distance), (c, 0));
        let res = ml_bruteforce(&ham, &c.with_flipped(4)).unwrap();
        assert_eq!((res.codeword, res.distance), (c, 1));
    }

    #[test]
    fn ml_ties_flagged() {
        // [4,1] repetition: 1100 is equidistant from 0000 and 1111
        let code = codes::repetition(4).unwrap();
        let res = ml_bruteforce(&code, &w("1100")).unwrap();
        assert!(!res.unique);
        assert_eq!(res.distance, 2);
        // errors 1100 (to 0000) and 0011 (to 1111): 0011 is ≺-smaller
        assert_eq!(res.error, w("0011"));
    }

    #[test]
    fn l_gdda_hamming_single_error() {
        let code = codes::hamming(3).unwrap();
        let compact = GroebnerRepresentation::build(&code).unwrap().compact();
        let c = code.encode(0b0110);
        let res = l_gdda(&compact, &c.with_flipped(4)).unwrap();
        assert_eq!(res.codeword, c);
        assert_eq!(res.steps, vec![Step::Flip(4)]);
        assert!(res.unique);

        let res = l_gdda(&compact, &c).unwrap();
        assert!(res.steps.is_empty());
        assert_eq!(res.codeword, c);
    }

    #[test]
    fn ts_gdda_repetition() {
        let code = codes::repetition(3).unwrap();
        let t = minimal_codewords_bruteforce(&code).unwrap();
        let res = ts_gdda(&t, &w("011"), Some(1)).unwrap();
        assert_eq!(res.codeword, w("111"));
        assert_eq!(res.error, w("100"));
        assert_eq!(res.steps, vec![Step::Apply(w("111"))]);
        let res = ts_gdda(&t, &w("000"), Some(1)).unwrap();
        assert!(res.steps.is_empty() && res.codeword.is_zero());
    }

    #[test]
    fn cwp_and_ip_on_hamming() {
        let code = codes::hamming(3).unwrap();
        let rep = GroebnerRepresentation::build(&code).unwrap();
        let compact = rep.compact();
        let zero = Syndrome::zero(3);
        assert!(cwp_query(&compact, &zero, 0).unwrap());
        assert_eq!(ip_solve(&compact, &zero).unwrap(), (0, BitWord::zero(7)));
        for v in 1..8 {
            let s = Syndrome::from_bits(3, v).unwrap();
            assert!(cwp_query(&compact, &s, 1).unwrap());
            assert!(!cwp_query(&compact, &s, 0).unwrap());
        }
        let col3 = code.column(2);
        assert_eq!(ip_solve(&compact, &col3).unwrap(), (1, BitWord::unit(7, 2)));
        assert_eq!(
            ip_solve_full(&rep, &col3).unwrap(),
            (1, BitWord::unit(7, 2))
        );
        assert!(cwp_query(&compact, &Syndrome::zero(4), 0).is_err());
    }

    #[test]
    fn radii() {
        let ham = codes::hamming(3).unwrap();
        let compact = GroebnerRepresentation::build(&ham).unwrap().compact();
        assert_eq!(covering_radius(&compact), 1);
        assert_eq!(minimum_distance(&ham).unwrap(), Some(3));
        assert_eq!(
            minimum_distance(&codes::repetition(3).unwrap()).unwrap(),
            Some(3)
        );
        let trivial = BinaryCode::from_generator(crate::gf2::Gf2Matrix::identity(5)).unwrap();
        let t = GroebnerRepresentation::build(&trivial).unwrap().compact();
        assert_eq!(covering_radius(&t), 0);
    }
}
