//! Cross-decoder equivalence runs and channel simulation.
//!
//! Every decoder is compared against a reference distance for each input:
//! the brute-force nearest-codeword distance when the code is small enough
//! to enumerate, otherwise the coset-leader weight from the table. In
//! sampled mode the zero codeword is transmitted unless
//! [`Mode::Sampled::random_codewords`] is set; the code and the channel are
//! both linear, so error statistics do not depend on the codeword.
//!
//! Sampled trials are split into fixed chunks of [`CHUNK_TRIALS`]; chunk
//! `c` draws from a ChaCha8 stream `c` keyed by the master seed. Results do
//! not depend on the thread count.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::border::{self, TestSet, MAX_ENUMERATION_DIM};
use crate::code::BinaryCode;
use crate::codes::RNG_ALGORITHM;
use crate::decoders::{self, DecodeResult, MlOracle};
use crate::error::{Error, Result};
use crate::gf2::{mask, BitWord};
use crate::par::{self, Exec};
use crate::representation::{
    BuildLimits, CompactRepresentation, CosetTable, GroebnerRepresentation,
};

pub const CHUNK_TRIALS: u64 = 4096;
/// Largest `n` for exhaustive runs by default.
pub const MAX_EXHAUSTIVE_LEN: usize = 20;
/// Mismatching inputs kept per decoder; the count is always exact.
pub const MISMATCH_SAMPLE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DecoderKind {
    /// Brute-force nearest codeword.
    Ml,
    /// Leader-weight descent with syndrome lookup.
    LGdda,
    /// Forward step and descent on the full representation.
    Reduction,
    /// Forward step and descent on the compact representation.
    CompactReduction,
    /// Test-set descent with all minimal codewords.
    TsMinimal,
    /// Test-set descent with the reduced-border codewords.
    TsMinRed,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 6] = [
        DecoderKind::Ml,
        DecoderKind::LGdda,
        DecoderKind::Reduction,
        DecoderKind::CompactReduction,
        DecoderKind::TsMinimal,
        DecoderKind::TsMinRed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Ml => "ml",
            DecoderKind::LGdda => "l",
            DecoderKind::Reduction => "red",
            DecoderKind::CompactReduction => "compact",
            DecoderKind::TsMinimal => "ts",
            DecoderKind::TsMinRed => "ts-minred",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown decoder {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Exhaustive,
    Sampled {
        trials: u64,
        p: f64,
        seed: u64,
        random_codewords: bool,
    },
}

/// One binary symmetric channel error pattern: each bit set with probability `p`.
pub fn bsc_sample<R: Rng + ?Sized>(p: f64, n: usize, rng: &mut R) -> Result<BitWord> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "crossover probability {p} outside [0, 1]"
        )));
    }
    let mut w = BitWord::zero(n);
    for pos in 0..n {
        if rng.gen_bool(p) {
            w.flip(pos);
        }
    }
    Ok(w)
}

/// The RNG for chunk `stream` of a run keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Tables and test sets needed by a set of decoders, built once per code.
pub struct DecoderSuite {
    code: BinaryCode,
    rep: GroebnerRepresentation,
    compact: CompactRepresentation,
    oracle: Option<MlOracle>,
    minimal: Option<TestSet>,
    min_red: Option<TestSet>,
    /// Time spent on each preparation phase.
    pub timings: Vec<(String, Duration)>,
}

impl DecoderSuite {
    pub fn new(
        code: &BinaryCode,
        decoders: &[DecoderKind],
        limits: BuildLimits,
        exec: Exec,
    ) -> Result<Self> {
        let mut timings = Vec::new();
        let started = Instant::now();
        let rep = GroebnerRepresentation::build_with(code, limits, exec)?;
        let compact = rep.compact();
        timings.push(("build".to_string(), started.elapsed()));

        let started = Instant::now();
        let oracle = match MlOracle::new(code) {
            Ok(o) => Some(o),
            Err(e) if decoders.contains(&DecoderKind::Ml) => return Err(e),
            Err(_) => None,
        };
        timings.push(("oracle".to_string(), started.elapsed()));

        let minimal = if decoders.contains(&DecoderKind::TsMinimal) {
            let started = Instant::now();
            let m = border::minimal_codewords_bruteforce_with(code, MAX_ENUMERATION_DIM, exec)?;
            timings.push(("minimal-codewords".to_string(), started.elapsed()));
            Some(m)
        } else {
            None
        };
        let min_red = if decoders.contains(&DecoderKind::TsMinRed) {
            let started = Instant::now();
            let reduced =
                border::reduce_border_with(&border::border_from_phi_with(&rep, exec), exec);
            let t = border::min_red(code, &reduced)?;
            timings.push(("reduced-border".to_string(), started.elapsed()));
            Some(t)
        } else {
            None
        };
        Ok(DecoderSuite {
            code: code.clone(),
            rep,
            compact,
            oracle,
            minimal,
            min_red,
            timings,
        })
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn representation(&self) -> &GroebnerRepresentation {
        &self.rep
    }

    pub fn compact(&self) -> &CompactRepresentation {
        &self.compact
    }

    pub fn oracle(&self) -> Option<&MlOracle> {
        self.oracle.as_ref()
    }

    pub fn test_set(&self, kind: DecoderKind) -> Option<&TestSet> {
        match kind {
            DecoderKind::TsMinimal => self.minimal.as_ref(),
            DecoderKind::TsMinRed => self.min_red.as_ref(),
            _ => None,
        }
    }

    pub fn decode(&self, kind: DecoderKind, r: &BitWord) -> Result<DecodeResult> {
        let t = Some(self.compact.packing_radius());
        match kind {
            DecoderKind::Ml => self
                .oracle
                .as_ref()
                .ok_or_else(|| {
                    Error::ScaleGuard("brute-force decoder unavailable for this code".into())
                })?
                .decode(r),
            DecoderKind::LGdda => decoders::l_gdda(&self.compact, r),
            DecoderKind::Reduction => decoders::reduction_gdda(&self.rep, r),
            DecoderKind::CompactReduction => decoders::compact_reduction_gdda(&self.compact, r, t),
            DecoderKind::TsMinimal | DecoderKind::TsMinRed => {
                let set = self.test_set(kind).ok_or_else(|| {
                    Error::InvalidParameter(format!("test set for {} not prepared", kind.name()))
                })?;
                decoders::ts_gdda(set, r, t)
            }
        }
    }

    /// Distance of `r` to the code, and the brute-force decoder's choice when available.
    fn reference(&self, r: &BitWord) -> Result<(u32, Option<BitWord>)> {
        match &self.oracle {
            Some(o) => o.decode(r).map(|res| (res.distance, Some(res.codeword))),
            None => Ok((
                self.compact.leader_weight(self.compact.coset_index(r)?),
                None,
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub received: String,
    pub transmitted: String,
    pub distance: u32,
    pub reference: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecoderStats {
    pub decoder: &'static str,
    pub trials: u64,
    /// Inputs decoded at the reference distance.
    pub optimal: u64,
    /// Inputs decoded to the transmitted codeword.
    pub recovered: u64,
    pub total_steps: u64,
    pub test_set_size: Option<usize>,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
}

impl DecoderStats {
    fn new(kind: DecoderKind, test_set_size: Option<usize>) -> Self {
        DecoderStats {
            decoder: kind.name(),
            trials: 0,
            optimal: 0,
            recovered: 0,
            total_steps: 0,
            test_set_size,
            mismatch_count: 0,
            mismatches: Vec::new(),
        }
    }

    fn merge(&mut self, other: DecoderStats) {
        self.trials += other.trials;
        self.optimal += other.optimal;
        self.recovered += other.recovered;
        self.total_steps += other.total_steps;
        self.mismatch_count += other.mismatch_count;
        let room = MISMATCH_SAMPLE.saturating_sub(self.mismatches.len());
        self.mismatches
            .extend(other.mismatches.into_iter().take(room));
    }

    pub fn success_rate(&self) -> f64 {
        ratio(self.optimal, self.trials)
    }

    pub fn average_steps(&self) -> f64 {
        ratio(self.total_steps, self.trials)
    }

    pub fn block_error_rate(&self) -> f64 {
        1.0 - ratio(self.recovered, self.trials)
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub mode: String,
    pub inputs: u64,
    pub seed: Option<u64>,
    pub p: Option<f64>,
    pub rng: Option<&'static str>,
    pub reference: &'static str,
    pub cosets: usize,
    pub covering_radius: u32,
    pub packing_radius: u32,
    pub decoders: Vec<DecoderStats>,
    /// Wall-clock per phase. Not part of the rendered report, which must be
    /// byte-identical across runs.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl ExperimentReport {
    pub fn total_mismatches(&self) -> u64 {
        self.decoders.iter().map(|d| d.mismatch_count).sum()
    }

    pub fn stats(&self, kind: DecoderKind) -> Option<&DecoderStats> {
        self.decoders.iter().find(|d| d.decoder == kind.name())
    }

    /// Line-delimited report: a header line, one line per decoder, one per sampled mismatch.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "run code={} n={} k={} mode={} inputs={} reference={} cosets={} covering_radius={} packing_radius={}",
            self.code, self.n, self.k, self.mode, self.inputs, self.reference, self.cosets, self.covering_radius,
            self.packing_radius
        );
        if let (Some(seed), Some(p), Some(rng)) = (self.seed, self.p, self.rng) {
            let _ = write!(out, " seed={seed} p={p} rng={rng}");
        }
        out.push('\n');
        for d in &self.decoders {
            let _ = writeln!(
                out,
                "decoder name={} optimal={}/{} success_rate={:.6} recovered={}/{} block_error_rate={:.6} avg_steps={:.6} test_set_size={} mismatches={}",
                d.decoder,
                d.optimal,
                d.trials,
                d.success_rate(),
                d.recovered,
                d.trials,
                d.block_error_rate(),
                d.average_steps(),
                d.test_set_size.map_or("-".to_string(), |s| s.to_string()),
                d.mismatch_count
            );
        }
        for d in &self.decoders {
            for m in &d.mismatches {
                let _ = writeln!(
                    out,
                    "mismatch decoder={} received={} transmitted={} distance={} reference={}",
                    d.decoder, m.received, m.transmitted, m.distance, m.reference
                );
            }
        }
        out
    }

    /// `key=value` summary lines.
    pub fn to_summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "code={}", self.code);
        let _ = writeln!(out, "mode={}", self.mode);
        let _ = writeln!(out, "inputs={}", self.inputs);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed={seed}");
        }
        for d in &self.decoders {
            let _ = writeln!(out, "{}.success_rate={:.6}", d.decoder, d.success_rate());
            let _ = writeln!(
                out,
                "{}.block_error_rate={:.6}",
                d.decoder,
                d.block_error_rate()
            );
            let _ = writeln!(out, "{}.avg_steps={:.6}", d.decoder, d.average_steps());
            let _ = writeln!(out, "{}.mismatches={}", d.decoder, d.mismatch_count);
        }
        let _ = writeln!(out, "total_mismatches={}", self.total_mismatches());
        out
    }
}

/// Decodes a batch of `(transmitted, received)` pairs with every requested
/// decoder. Without a transmitted word (exhaustive mode) the brute-force
/// decoder's choice stands in for it.
fn run_chunk(
    suite: &DecoderSuite,
    decoders: &[DecoderKind],
    inputs: impl Iterator<Item = (Option<BitWord>, BitWord)>,
) -> Result<Vec<DecoderStats>> {
    let mut stats: Vec<DecoderStats> = decoders
        .iter()
        .map(|&k| DecoderStats::new(k, suite.test_set(k).map(TestSet::len)))
        .collect();
    for (transmitted, r) in inputs {
        let (reference, nearest) = suite.reference(&r)?;
        let transmitted = transmitted.or(nearest);
        for (s, &kind) in stats.iter_mut().zip(decoders) {
            let res = suite.decode(kind, &r)?;
            if !suite.code.contains(&res.codeword) {
                return Err(Error::invariant(format!(
                    "{} returned a non-codeword for {r}",
                    kind.name()
                )));
            }
            s.trials += 1;
            s.total_steps += res.steps.len() as u64;
            if Some(res.codeword) == transmitted {
                s.recovered += 1;
            }
            if res.distance == reference {
                s.optimal += 1;
            } else {
                s.mismatch_count += 1;
                if s.mismatches.len() < MISMATCH_SAMPLE {
                    s.mismatches.push(Mismatch {
                        received: r.to_string(),
                        transmitted: transmitted.map_or("-".to_string(), |t| t.to_string()),
                        distance: res.distance,
                        reference,
                    });
                }
            }
        }
    }
    Ok(stats)
}

fn merge_stats(
    a: Result<Vec<DecoderStats>>,
    b: Result<Vec<DecoderStats>>,
) -> Result<Vec<DecoderStats>> {
    let mut a = a?;
    for (x, y) in a.iter_mut().zip(b?) {
        x.merge(y);
    }
    Ok(a)
}

/// Compares each decoder's output distance against the reference on every input.
pub fn run_equivalence(
    code: &BinaryCode,
    code_name: &str,
    decoders: &[DecoderKind],
    mode: Mode,
    exec: Exec,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    let suite = DecoderSuite::new(code, decoders, BuildLimits::default(), exec)?;
    run_with_suite(&suite, code_name, decoders, mode, exec).map(|mut r| {
        r.timings.insert(
            0,
            (
                "total-setup".to_string(),
                started.elapsed() - r.timings.iter().map(|t| t.1).sum(),
            ),
        );
        r
    })
}

/// As [`run_equivalence`], reusing prepared tables.
pub fn run_with_suite(
    suite: &DecoderSuite,
    code_name: &str,
    decoders: &[DecoderKind],
    mode: Mode,
    exec: Exec,
) -> Result<ExperimentReport> {
    let code = &suite.code;
    let n = code.n();
    let started = Instant::now();
    let (stats, inputs, seed, p) = match mode {
        Mode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_LEN {
                return Err(Error::ScaleGuard(format!(
                    "exhaustive run over 2^{n} words exceeds 2^{MAX_EXHAUSTIVE_LEN}"
                )));
            }
            let total = 1u64 << n;
            let stats = par::chunked_reduce(
                exec,
                total,
                CHUNK_TRIALS,
                |a, b| {
                    run_chunk(
                        suite,
                        decoders,
                        (a..b).map(|v| (None, BitWord::from_bits_unchecked(n, v))),
                    )
                },
                merge_stats,
            );
            (stats, total, None, None)
        }
        Mode::Sampled {
            trials,
            p,
            seed,
            random_codewords,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "crossover probability {p} outside [0, 1]"
                )));
            }
            let stats = par::chunked_reduce(
                exec,
                trials,
                CHUNK_TRIALS,
                |a, b| {
                    let mut rng = stream_rng(seed, a / CHUNK_TRIALS);
                    let mut pairs = Vec::with_capacity((b - a) as usize);
                    for _ in a..b {
                        let c = if random_codewords {
                            code.encode(rng.gen::<u64>() & mask(code.k()))
                        } else {
                            BitWord::zero(n)
                        };
                        let e = bsc_sample(p, n, &mut rng)?;
                        pairs.push((Some(c), c ^ e));
                    }
                    run_chunk(suite, decoders, pairs.into_iter())
                },
                merge_stats,
            );
            (stats, trials, Some(seed), Some(p))
        }
    };
    let decoders_stats = match stats {
        Some(s) => s?,
        None => decoders
            .iter()
            .map(|&k| DecoderStats::new(k, suite.test_set(k).map(TestSet::len)))
            .collect(),
    };
    let mut timings = suite.timings.clone();
    timings.push(("decode".to_string(), started.elapsed()));
    Ok(ExperimentReport {
        code: code_name.to_string(),
        n,
        k: code.k(),
        mode: match mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled {
                random_codewords: true,
                ..
            } => "sampled-random-codewords".to_string(),
            Mode::Sampled { .. } => "sampled".to_string(),
        },
        inputs,
        seed,
        p,
        rng: seed.map(|_| RNG_ALGORITHM),
        reference: if suite.oracle.is_some() {
            "ml"
        } else {
            "table"
        },
        cosets: suite.compact.num_cosets(),
        covering_radius: suite.compact.covering_radius(),
        packing_radius: suite.compact.packing_radius(),
        decoders: decoders_stats,
        timings,
    })
}

/// The codes used throughout the test suites: `hamming(3)`, `repetition(3..=7)`
/// and `count` random codes with `6 <= n <= 12` drawn from `seed`.
pub fn standard_suite(count: usize, seed: u64) -> Result<Vec<(String, BinaryCode)>> {
    let mut out = vec![("hamming:3".to_string(), crate::codes::hamming(3)?)];
    for n in 3..=7 {
        out.push((format!("repetition:{n}"), crate::codes::repetition(n)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let n = rng.gen_range(6..=12usize);
        let k = rng.gen_range(1..n);
        let code_seed = seed.wrapping_mul(1000).wrapping_add(i as u64);
        out.push((
            format!("random:{n},{k},{code_seed}"),
            crate::codes::random(n, k, code_seed)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes;

    #[test]
    fn bsc_extremes() {
        let mut rng = stream_rng(1, 0);
        for _ in 0..100 {
            assert!(bsc_sample(0.0, 20, &mut rng).unwrap().is_zero());
            assert_eq!(bsc_sample(1.0, 20, &mut rng).unwrap(), BitWord::ones(20));
        }
        assert!(bsc_sample(1.5, 20, &mut rng).is_err());
        assert!(bsc_sample(-0.1, 20, &mut rng).is_err());
    }

    #[test]
    fn bsc_mean_weight() {
        let mut rng = stream_rng(42, 0);
        let trials = 100_000;
        let total: u64 = (0..trials)
            .map(|_| u64::from(bsc_sample(0.1, 20, &mut rng).unwrap().weight()))
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 2.0).abs() < 0.1, "mean weight {mean}");
    }

    #[test]
    fn oracle_only_run_has_no_mismatches() {
        let code = codes::random(8, 3, 5).unwrap();
        let report = run_equivalence(
            &code,
            "random:8,3,5",
            &[DecoderKind::Ml],
            Mode::Exhaustive,
            Exec::Sequential,
        )
        .unwrap();
        assert_eq!(report.total_mismatches(), 0);
        assert_eq!(report.inputs, 256);
        assert_eq!(report.decoders[0].optimal, 256);
        assert_eq!(report.decoders[0].recovered, 256);
    }

    #[test]
    fn sampled_reports_are_deterministic_across_strategies() {
        let code = codes::hamming(3).unwrap();
        let mode = Mode::Sampled {
            trials: 10_000,
            p: 0.05,
            seed: 7,
            random_codewords: false,
        };
        let a = run_equivalence(
            &code,
            "hamming:3",
            &DecoderKind::ALL,
            mode,
            Exec::Sequential,
        )
        .unwrap();
        let b =
            run_equivalence(&code, "hamming:3", &DecoderKind::ALL, mode, Exec::Parallel).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.total_mismatches(), 0);
    }

    #[test]
    fn decoder_names_roundtrip() {
        for k in DecoderKind::ALL {
            assert_eq!(DecoderKind::from_name(k.name()).unwrap(), k);
        }
        assert!(DecoderKind::from_name("nope").is_err());
    }

    #[test]
    fn suite_is_deterministic() {
        let a = standard_suite(5, 3).unwrap();
        let b = standard_suite(5, 3).unwrap();
        assert_eq!(a.len(), 11);
        for ((na, ca), (nb, cb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            assert_eq!(ca, cb);
        }
    }
}
