//! The coset monoid of a code as a transversal plus a transition table.
//!
//! [`GroebnerRepresentation`] stores, for every coset of `C` in GF(2)^n, its
//! `≺`-minimal element (the coset leader) together with the table
//! `phi[i][j]` = index of the coset containing `leaders[i] + e_j`. Coset
//! indices are dense and follow the `≺` order of the leaders, so index `0`
//! is the code itself and leader weights are non-decreasing in the index.
//!
//! [`CompactRepresentation`] drops the leader vectors and keeps only their
//! weights next to the same table. That is all the descent decoders need.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::io::{Read, Write};
use std::sync::Arc;

use crate::code::{BinaryCode, Syndrome};
use crate::error::{Error, Result};
use crate::gf2::{BitWord, Gf2Matrix, WeightOrder};
use crate::par::{self, Exec};

const NO_COSET: u32 = u32::MAX;

/// Size limits for table construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildLimits {
    /// Largest accepted `n - k`; the table has `2^(n-k)` rows.
    pub max_redundancy: usize,
}

impl BuildLimits {
    pub const DEFAULT_MAX_REDUNDANCY: usize = 28;

    pub fn unlimited() -> Self {
        BuildLimits { max_redundancy: 31 }
    }

    fn check(&self, code: &BinaryCode) -> Result<()> {
        let r = code.redundancy();
        if r > 31 {
            return Err(Error::ScaleGuard(format!(
                "n - k = {r} does not fit 32-bit coset indices"
            )));
        }
        if r > self.max_redundancy {
            return Err(Error::ScaleGuard(format!(
                "n - k = {r} exceeds the limit of {} (table of 2^{r} x {} entries)",
                self.max_redundancy,
                code.n()
            )));
        }
        Ok(())
    }
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_redundancy: Self::DEFAULT_MAX_REDUNDANCY,
        }
    }
}

/// The pair `(N, phi)`: coset leaders in `≺` order and the full transition table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerRepresentation {
    code: BinaryCode,
    leaders: Vec<u64>,
    phi: Arc<[u32]>,
    syndrome_index: Arc<[u32]>,
    packing_radius: u32,
}

/// The pair `(N*, phi*)`: leader weights and the transition table, no leader vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct CompactRepresentation {
    code: BinaryCode,
    weights: Vec<u8>,
    phi: Arc<[u32]>,
    syndrome_index: Arc<[u32]>,
    packing_radius: u32,
}

/// Read-only access shared by both representations.
pub trait CosetTable {
    fn code(&self) -> &BinaryCode;

    /// Row-major `cosets × n` table.
    fn phi_table(&self) -> &[u32];

    /// Dense map from packed syndrome value to coset index.
    fn syndrome_table(&self) -> &[u32];

    fn leader_weight(&self, coset: usize) -> u32;

    fn n(&self) -> usize {
        self.code().n()
    }

    fn num_cosets(&self) -> usize {
        self.syndrome_table().len()
    }

    #[inline]
    fn phi(&self, coset: usize, pos: usize) -> usize {
        self.phi_table()[coset * self.n() + pos] as usize
    }

    /// Coset of `w` by syndrome lookup.
    fn coset_index(&self, w: &BitWord) -> Result<usize> {
        let s = self.code().syndrome(w)?;
        Ok(self.syndrome_table()[s.value()] as usize)
    }

    /// Coset of `w` by folding `phi` over its set positions, starting from the zero coset.
    fn coset_index_forward(&self, w: &BitWord) -> Result<usize> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: w.len(),
            });
        }
        Ok(w.support().fold(0, |i, j| self.phi(i, j)))
    }

    fn coset_of_syndrome(&self, s: &Syndrome) -> Result<usize> {
        if s.len() != self.code().redundancy() {
            return Err(Error::LengthMismatch {
                expected: self.code().redundancy(),
                found: s.len(),
            });
        }
        Ok(self.syndrome_table()[s.value()] as usize)
    }

    /// Largest coset-leader weight.
    fn covering_radius(&self) -> u32 {
        self.leader_weight(self.num_cosets() - 1)
    }
}

impl GroebnerRepresentation {
    /// Builds the representation with the default limits, in parallel where enabled.
    pub fn build(code: &BinaryCode) -> Result<Self> {
        Self::build_with(code, BuildLimits::default(), Exec::default())
    }

    /// Two phases. First a `≺`-ordered search from the zero word: the
    /// smallest pending candidate whose syndrome is new becomes the next
    /// leader, and its one-bit extensions become candidates. Then the table
    /// is filled by syndrome lookup of every `leader + e_j`.
    pub fn build_with(code: &BinaryCode, limits: BuildLimits, exec: Exec) -> Result<Self> {
        limits.check(code)?;
        let n = code.n();
        let cosets = 1usize << code.redundancy();

        let mut syndrome_index = vec![NO_COSET; cosets];
        let mut leaders: Vec<u64> = Vec::with_capacity(cosets);
        let mut queue = BinaryHeap::new();
        queue.push(Reverse(WeightOrder::key(0)));

        while let Some(Reverse((_, v))) = queue.pop() {
            let s = code.syndrome_bits(v) as usize;
            if syndrome_index[s] != NO_COSET {
                continue;
            }
            syndrome_index[s] = leaders.len() as u32;
            leaders.push(v);
            if leaders.len() == cosets {
                break;
            }
            for j in 0..n {
                let bit = 1u64 << (n - 1 - j);
                if v & bit != 0 {
                    continue;
                }
                let u = v | bit;
                // A word whose coset already has a leader can never become one.
                if syndrome_index[code.syndrome_bits(u) as usize] == NO_COSET {
                    queue.push(Reverse(WeightOrder::key(u)));
                }
            }
        }
        if leaders.len() != cosets {
            return Err(Error::invariant(format!(
                "candidate queue exhausted after {} of {cosets} cosets",
                leaders.len()
            )));
        }

        let syndromes: Vec<u64> =
            par::map_indexed(exec, cosets, |i| code.syndrome_bits(leaders[i]));
        let columns: Vec<u64> = (0..n).map(|j| code.column(j).word().bits()).collect();
        let mut phi = vec![0u32; cosets * n];
        let rows_per_chunk = 1024;
        par::for_each_chunk_mut(exec, &mut phi, rows_per_chunk * n, |chunk, out| {
            let first = chunk * rows_per_chunk;
            for (r, row) in out.chunks_mut(n).enumerate() {
                let s = syndromes[first + r];
                for (j, entry) in row.iter_mut().enumerate() {
                    *entry = syndrome_index[(s ^ columns[j]) as usize];
                }
            }
        });

        Ok(GroebnerRepresentation::assemble(
            code.clone(),
            leaders,
            phi,
            syndrome_index,
        ))
    }

    fn assemble(
        code: BinaryCode,
        leaders: Vec<u64>,
        phi: Vec<u32>,
        syndrome_index: Vec<u32>,
    ) -> Self {
        let weights: Vec<u8> = leaders.iter().map(|b| b.count_ones() as u8).collect();
        GroebnerRepresentation {
            packing_radius: packing_radius(code.n(), &weights),
            code,
            leaders,
            phi: phi.into(),
            syndrome_index: syndrome_index.into(),
        }
    }

    /// `floor((d-1)/2)`, read off the leader weights.
    pub fn packing_radius(&self) -> u32 {
        self.packing_radius
    }

    pub fn leader(&self, coset: usize) -> BitWord {
        BitWord::from_bits_unchecked(self.code.n(), self.leaders[coset])
    }

    pub fn leaders(&self) -> impl ExactSizeIterator<Item = BitWord> + '_ {
        let n = self.code.n();
        self.leaders
            .iter()
            .map(move |&b| BitWord::from_bits_unchecked(n, b))
    }

    /// The `(N*, phi*)` form; the table is shared, not copied.
    pub fn compact(&self) -> CompactRepresentation {
        let weights: Vec<u8> = self.leaders.iter().map(|b| b.count_ones() as u8).collect();
        CompactRepresentation {
            code: self.code.clone(),
            packing_radius: self.packing_radius,
            weights,
            phi: Arc::clone(&self.phi),
            syndrome_index: Arc::clone(&self.syndrome_index),
        }
    }

    /// Checks every structural invariant of the table. Leader minimality
    /// beyond the order-ideal property needs an exhaustive scan and is not
    /// part of this check.
    pub fn validate(&self) -> Result<()> {
        let n = self.code.n();
        let cosets = 1usize << self.code.redundancy();
        if self.leaders.len() != cosets
            || self.syndrome_index.len() != cosets
            || self.phi.len() != cosets * n
        {
            return Err(Error::invariant("table sizes do not match 2^(n-k)"));
        }
        if self.leaders[0] != 0 {
            return Err(Error::invariant(
                "coset 0 is not represented by the zero word",
            ));
        }
        for (i, &l) in self.leaders.iter().enumerate() {
            let s = self.code.syndrome_bits(l) as usize;
            if self.syndrome_index[s] as usize != i {
                return Err(Error::invariant(format!(
                    "leader {i} is not indexed by its syndrome"
                )));
            }
            if i > 0 && WeightOrder::key(self.leaders[i - 1]) >= WeightOrder::key(l) {
                return Err(Error::invariant(format!(
                    "leaders {} and {i} are out of order",
                    i - 1
                )));
            }
        }
        // Distinct syndromes follow from the index check above: each leader
        // maps back to its own index, so no two share a syndrome.
        for (i, &l) in self.leaders.iter().enumerate() {
            let leader = self.leader(i);
            for j in leader.support() {
                let smaller = l ^ (1u64 << (n - 1 - j));
                let at = self.syndrome_index[self.code.syndrome_bits(smaller) as usize] as usize;
                if self.leaders[at] != smaller {
                    return Err(Error::invariant(format!(
                        "order ideal broken: leader {leader} minus position {j} is not a leader"
                    )));
                }
            }
        }
        check_phi_consistency(self)
    }
}

/// `syndrome(leaders[phi[i][j]]) = syndrome(leaders[i] + e_j)` for every entry.
pub fn check_phi_consistency(rep: &GroebnerRepresentation) -> Result<()> {
    let n = rep.code.n();
    for i in 0..rep.leaders.len() {
        let s = rep.code.syndrome_bits(rep.leaders[i]);
        for j in 0..n {
            let target = rep.phi(i, j);
            if target >= rep.leaders.len() {
                return Err(Error::invariant(format!(
                    "phi[{i}][{j}] = {target} out of range"
                )));
            }
            let expected = s ^ rep.code.column(j).word().bits();
            if rep.code.syndrome_bits(rep.leaders[target]) != expected {
                return Err(Error::invariant(format!(
                    "phi[{i}][{j}] = {target} has the wrong syndrome"
                )));
            }
        }
    }
    Ok(())
}

impl CosetTable for GroebnerRepresentation {
    fn code(&self) -> &BinaryCode {
        &self.code
    }
    fn phi_table(&self) -> &[u32] {
        &self.phi
    }
    fn syndrome_table(&self) -> &[u32] {
        &self.syndrome_index
    }
    #[inline]
    fn leader_weight(&self, coset: usize) -> u32 {
        self.leaders[coset].count_ones()
    }
}

impl CompactRepresentation {
    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    /// Largest `t` such that every word of weight `<= t` is the unique
    /// leader of its coset, i.e. `floor((d-1)/2)`.
    pub fn packing_radius(&self) -> u32 {
        self.packing_radius
    }

    /// Checks the table against `H` and the weights against shortest paths.
    ///
    /// A leader's weight is the fewest unit steps from the zero coset, so the
    /// weights must equal breadth-first distances in the graph with edges
    /// `i -> phi[i][j]`. Syndromes are propagated along the same search and
    /// every edge must then agree with the corresponding column of `H`.
    pub fn validate(&self) -> Result<()> {
        let n = self.code.n();
        let cosets = 1usize << self.code.redundancy();
        if self.weights.len() != cosets
            || self.syndrome_index.len() != cosets
            || self.phi.len() != cosets * n
        {
            return Err(Error::invariant("table sizes do not match 2^(n-k)"));
        }
        if self.weights[0] != 0 {
            return Err(Error::invariant("weight of coset 0 is not zero"));
        }
        if let Some(i) = self.weights.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::invariant(format!(
                "weights decrease at index {}",
                i + 1
            )));
        }
        if let Some(&bad) = self.phi.iter().find(|&&e| e as usize >= cosets) {
            return Err(Error::invariant(format!("phi entry {bad} out of range")));
        }
        let columns: Vec<u64> = (0..n).map(|j| self.code.column(j).word().bits()).collect();
        let mut dist = vec![u32::MAX; cosets];
        let mut syn = vec![0u64; cosets];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (j, col) in columns.iter().enumerate() {
                let t = self.phi(i, j);
                if dist[t] == u32::MAX {
                    dist[t] = dist[i] + 1;
                    syn[t] = syn[i] ^ col;
                    queue.push_back(t);
                }
            }
        }
        for i in 0..cosets {
            if dist[i] == u32::MAX {
                return Err(Error::invariant(format!(
                    "coset {i} unreachable through phi"
                )));
            }
            if dist[i] != u32::from(self.weights[i]) {
                return Err(Error::invariant(format!(
                    "coset {i}: stored weight {} but shortest path {}",
                    self.weights[i], dist[i]
                )));
            }
            if self.syndrome_index[syn[i] as usize] as usize != i {
                return Err(Error::invariant(format!(
                    "coset {i} is not indexed by its syndrome"
                )));
            }
            for (j, col) in columns.iter().enumerate() {
                let t = self.phi(i, j);
                if syn[t] != syn[i] ^ col {
                    return Err(Error::invariant(format!(
                        "phi[{i}][{j}] = {t} has the wrong syndrome"
                    )));
                }
            }
        }
        if self.packing_radius != packing_radius(n, &self.weights) {
            return Err(Error::invariant("packing radius does not match weights"));
        }
        Ok(())
    }
}

impl CosetTable for CompactRepresentation {
    fn code(&self) -> &BinaryCode {
        &self.code
    }
    fn phi_table(&self) -> &[u32] {
        &self.phi
    }
    fn syndrome_table(&self) -> &[u32] {
        &self.syndrome_index
    }
    #[inline]
    fn leader_weight(&self, coset: usize) -> u32 {
        u32::from(self.weights[coset])
    }
}

fn packing_radius(n: usize, sorted_weights: &[u8]) -> u32 {
    let mut binom = 1u64;
    let mut expected = 0u64;
    let mut have = 0u64;
    let mut idx = 0;
    for t in 0..=n {
        if t > 0 {
            binom = binom * (n - t + 1) as u64 / t as u64;
        }
        expected += binom;
        while idx < sorted_weights.len() && usize::from(sorted_weights[idx]) == t {
            have += 1;
            idx += 1;
        }
        if have != expected {
            return t.saturating_sub(1) as u32;
        }
    }
    n as u32
}

// ---------------------------------------------------------------------------
// Binary format
// ---------------------------------------------------------------------------

pub const MAGIC: &[u8; 4] = b"GREP";
pub const FORMAT_VERSION: u16 = 1;
const FLAG_FULL: u8 = 0x01;
const FLAG_COMPACT: u8 = 0x02;

/// Either kind of representation, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Full(GroebnerRepresentation),
    Compact(CompactRepresentation),
}

impl Representation {
    pub fn code(&self) -> &BinaryCode {
        match self {
            Representation::Full(r) => r.code(),
            Representation::Compact(c) => c.code(),
        }
    }

    pub fn to_compact(&self) -> CompactRepresentation {
        match self {
            Representation::Full(r) => r.compact(),
            Representation::Compact(c) => c.clone(),
        }
    }

    pub fn full(&self) -> Option<&GroebnerRepresentation> {
        match self {
            Representation::Full(r) => Some(r),
            Representation::Compact(_) => None,
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, Representation::Compact(_))
    }

    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        match self {
            Representation::Full(r) => encode(&r.code, Some(&r.leaders), None, &r.phi, out),
            Representation::Compact(c) => encode(&c.code, None, Some(&c.weights), &c.phi, out),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        buf
    }

    /// Reads a file; invariants are re-checked unless `trusted`.
    pub fn read_from<R: Read>(mut input: R, trusted: bool) -> Result<Self> {
        let mut buf = Vec::new();
        input.read_to_end(&mut buf)?;
        Self::from_bytes(&buf, trusted)
    }

    pub fn from_bytes(bytes: &[u8], trusted: bool) -> Result<Self> {
        decode(bytes, trusted)
    }
}

impl GroebnerRepresentation {
    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        encode(&self.code, Some(&self.leaders), None, &self.phi, out)
    }
}

impl CompactRepresentation {
    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        encode(&self.code, None, Some(&self.weights), &self.phi, out)
    }
}

fn word_bytes(n: usize) -> usize {
    n.div_ceil(8)
}

fn put_word(buf: &mut Vec<u8>, n: usize, bits: u64) {
    let nb = word_bytes(n);
    let aligned = (bits as u128) << (nb * 8 - n);
    buf.extend_from_slice(&aligned.to_be_bytes()[16 - nb..]);
}

fn encode<W: Write>(
    code: &BinaryCode,
    leaders: Option<&[u64]>,
    weights: Option<&[u8]>,
    phi: &[u32],
    mut out: W,
) -> Result<()> {
    let n = code.n();
    let mut buf = Vec::with_capacity(16 + phi.len() * 4);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(n as u16).to_le_bytes());
    buf.extend_from_slice(&(code.k() as u16).to_le_bytes());
    buf.push(if leaders.is_some() {
        FLAG_FULL
    } else {
        FLAG_COMPACT
    });
    for row in code.parity_check().rows() {
        put_word(&mut buf, n, row.bits());
    }
    if let Some(leaders) = leaders {
        for &l in leaders {
            put_word(&mut buf, n, l);
        }
    }
    if let Some(weights) = weights {
        buf.extend_from_slice(weights);
    }
    for &e in phi {
        buf.extend_from_slice(&e.to_le_bytes());
    }
    let crc = crc32fast::hash(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    out.write_all(&buf)?;
    Ok(())
}

struct Cursor<'a> {
    data: &'a [u8],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        if self.data.len() - self.at < len {
            return Err(Error::Format(format!("truncated while reading {what}")));
        }
        let s = &self.data[self.at..self.at + len];
        self.at += len;
        Ok(s)
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn word(&mut self, n: usize, what: &str) -> Result<u64> {
        let nb = word_bytes(n);
        let bytes = self.take(nb, what)?;
        let mut v = 0u128;
        for &b in bytes {
            v = (v << 8) | u128::from(b);
        }
        let pad = nb * 8 - n;
        if v & ((1u128 << pad) - 1) != 0 {
            return Err(Error::Format(format!("nonzero padding bits in {what}")));
        }
        Ok((v >> pad) as u64)
    }
}

fn decode(bytes: &[u8], trusted: bool) -> Result<Representation> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(Error::Format("bad magic, expected GREP".into()));
    }
    if bytes.len() < 4 + 2 + 2 + 2 + 1 + 4 {
        return Err(Error::Format("truncated header".into()));
    }
    let (body, crc_bytes) = bytes.split_at(bytes.len() - 4);
    let mut cur = Cursor { data: body, at: 4 };
    let version = cur.u16("version")?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format version {version}, expected {FORMAT_VERSION}"
        )));
    }
    let n = usize::from(cur.u16("n")?);
    let k = usize::from(cur.u16("k")?);
    if n == 0 || n > 64 || k > n {
        return Err(Error::Format(format!(
            "invalid dimensions n = {n}, k = {k}"
        )));
    }
    let r = n - k;
    if r > 31 {
        return Err(Error::Format(format!("n - k = {r} too large")));
    }
    let flags = cur.take(1, "flags")?[0];
    if flags != FLAG_FULL && flags != FLAG_COMPACT {
        return Err(Error::Format(format!("unknown flags byte {flags:#04x}")));
    }
    let cosets = 1usize << r;
    let expected_len = 11
        + r * word_bytes(n)
        + if flags == FLAG_FULL {
            cosets * word_bytes(n)
        } else {
            cosets
        }
        + cosets * n * 4;
    if body.len() != expected_len {
        return Err(Error::Format(format!(
            "body is {} bytes, expected {expected_len} (truncated or corrupt)",
            body.len()
        )));
    }
    let crc = u32::from_le_bytes(crc_bytes.try_into().unwrap());
    if crc32fast::hash(body) != crc {
        return Err(Error::Format("CRC32 mismatch".into()));
    }

    let mut h_rows = Vec::with_capacity(r);
    for _ in 0..r {
        h_rows.push(BitWord::from_bits_unchecked(
            n,
            cur.word(n, "parity-check row")?,
        ));
    }
    let code = BinaryCode::from_parity_check(Gf2Matrix::from_rows(n, &h_rows)?)
        .map_err(|e| Error::Format(format!("stored parity-check matrix: {e}")))?;

    let (leaders, weights) = if flags == FLAG_FULL {
        let mut leaders = Vec::with_capacity(cosets);
        for _ in 0..cosets {
            leaders.push(cur.word(n, "leader")?);
        }
        (Some(leaders), None)
    } else {
        (None, Some(cur.take(cosets, "weights")?.to_vec()))
    };
    let phi: Vec<u32> = cur
        .take(cosets * n * 4, "phi")?
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if let Some(&bad) = phi.iter().find(|&&e| e as usize >= cosets) {
        return Err(Error::invariant(format!("phi entry {bad} out of range")));
    }

    match (leaders, weights) {
        (Some(leaders), None) => {
            let mut syndrome_index = vec![NO_COSET; cosets];
            for (i, &l) in leaders.iter().enumerate() {
                let s = code.syndrome_bits(l) as usize;
                if syndrome_index[s] != NO_COSET {
                    return Err(Error::invariant(format!(
                        "leaders {} and {i} share a syndrome",
                        syndrome_index[s]
                    )));
                }
                syndrome_index[s] = i as u32;
            }
            let rep = GroebnerRepresentation::assemble(code, leaders, phi, syndrome_index);
            if !trusted {
                rep.validate()?;
            }
            Ok(Representation::Full(rep))
        }
        (None, Some(weights)) => {
            let syndrome_index = syndromes_from_phi(&code, &phi, cosets)?;
            let rep = CompactRepresentation {
                packing_radius: packing_radius(n, &weights),
                code,
                weights,
                phi: phi.into(),
                syndrome_index: syndrome_index.into(),
            };
            if !trusted {
                rep.validate()?;
            }
            Ok(Representation::Compact(rep))
        }
        _ => unreachable!(),
    }
}

/// Recovers the syndrome of each coset by walking `phi` from coset 0.
fn syndromes_from_phi(code: &BinaryCode, phi: &[u32], cosets: usize) -> Result<Vec<u32>> {
    let n = code.n();
    let mut syn = vec![u64::MAX; cosets];
    syn[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            let t = phi[i * n + j] as usize;
            if syn[t] == u64::MAX {
                syn[t] = syn[i] ^ code.column(j).word().bits();
                queue.push_back(t);
            }
        }
    }
    let mut index = vec![NO_COSET; cosets];
    for (i, &s) in syn.iter().enumerate() {
        if s == u64::MAX {
            return Err(Error::invariant(format!(
                "coset {i} unreachable through phi"
            )));
        }
        if index[s as usize] != NO_COSET {
            return Err(Error::invariant(format!(
                "cosets {} and {i} share a syndrome",
                index[s as usize]
            )));
        }
        index[s as usize] = i as u32;
    }
    Ok(index)
}

impl fmt::Debug for GroebnerRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroebnerRepresentation[{}, {}] cosets={}",
            self.code.n(),
            self.code.k(),
            self.leaders.len()
        )
    }
}

impl fmt::Debug for CompactRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CompactRepresentation[{}, {}] cosets={}",
            self.code.n(),
            self.code.k(),
            self.weights.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn repetition_leaders() {
        let rep = GroebnerRepresentation::build(&codes::repetition(3).unwrap()).unwrap();
        let leaders: Vec<String> = rep.leaders().map(|l| l.to_string()).collect();
        assert_eq!(leaders, ["000", "001", "010", "100"]);
        assert_eq!(rep.covering_radius(), 1);
        assert_eq!(rep.compact().weights(), &[0, 1, 1, 1]);
        rep.validate().unwrap();
    }

    #[test]
    fn trivial_code_single_coset() {
        let code = BinaryCode::from_generator(Gf2Matrix::identity(4)).unwrap();
        let rep = GroebnerRepresentation::build(&code).unwrap();
        assert_eq!(rep.num_cosets(), 1);
        assert_eq!(rep.phi_table(), &[0, 0, 0, 0]);
        assert_eq!(rep.covering_radius(), 0);
        rep.validate().unwrap();
        rep.compact().validate().unwrap();
    }

    #[test]
    fn hamming_compact_weights() {
        let rep = GroebnerRepresentation::build(&codes::hamming(3).unwrap()).unwrap();
        let compact = rep.compact();
        assert_eq!(compact.weights(), &[0, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(compact.packing_radius(), 1);
        compact.validate().unwrap();
        assert_eq!(rep.coset_index(&w("0000000")).unwrap(), 0);
        assert_eq!(rep.coset_index_forward(&w("1110000")).unwrap(), 0);
    }

    #[test]
    fn scale_guard() {
        let code = codes::random(30, 1, 1).unwrap();
        assert!(matches!(
            GroebnerRepresentation::build_with(
                &code,
                BuildLimits { max_redundancy: 20 },
                Exec::Sequential
            ),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn packing_radius_values() {
        assert_eq!(packing_radius(3, &[0, 1, 1, 1]), 1);
        assert_eq!(packing_radius(4, &[0]), 0);
        // zero code: every word is its own coset
        assert_eq!(packing_radius(2, &[0, 1, 1, 2]), 2);
    }

    #[test]
    fn file_roundtrip_and_corruption() {
        let rep = GroebnerRepresentation::build(&codes::hamming(3).unwrap()).unwrap();
        for r in [
            Representation::Full(rep.clone()),
            Representation::Compact(rep.compact()),
        ] {
            let bytes = r.to_bytes();
            assert_eq!(&bytes[..4], b"GREP");
            let back = Representation::from_bytes(&bytes, false).unwrap();
            assert!(back == r);
            assert_eq!(back.to_bytes(), bytes);

            assert!(matches!(
                Representation::from_bytes(&bytes[..bytes.len() - 7], false),
                Err(Error::Format(_))
            ));
            let mut bad = bytes.clone();
            bad[0] = b'X';
            assert!(matches!(
                Representation::from_bytes(&bad, false),
                Err(Error::Format(_))
            ));
            let mut bad = bytes.clone();
            bad[4] = 9;
            assert!(matches!(
                Representation::from_bytes(&bad, false),
                Err(Error::Format(_))
            ));
            let mut bad = bytes.clone();
            let last = bad.len() - 9;
            bad[last] ^= 1;
            assert!(
                matches!(
                    Representation::from_bytes(&bad, false),
                    Err(Error::Format(_))
                ),
                "crc"
            );
        }
    }
}
