use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::time::Instant;

use gdd::border;
use gdd::decoders::{self, MlOracle};
use gdd::harness::{self, DecoderKind, Mode};
use gdd::{
    BinaryCode, BitWord, BuildLimits, CompactRepresentation, CosetTable, DecodeResult,
    GroebnerRepresentation, Representation,
};
use rand::Rng;

use crate::{
    Algorithm, BenchArgs, BorderArgs, BuildArgs, Context, DecodeArgs, Failure, SimulateArgs,
    SourceArgs, TestSetChoice, VerifyArgs, CLI_MAX_REDUNDANCY,
};

type CmdResult = Result<(), Failure>;

/// Brute-force enumeration limits (`k`) for the ML decoder and minimal codewords.
const ML_MAX_K: usize = border::MAX_ENUMERATION_DIM;
const ML_FORCED_MAX_K: usize = 30;
const MINIMAL_MAX_K: usize = 12;
const MINIMAL_FORCED_MAX_K: usize = 20;
/// Largest `n` scanned exhaustively by `verify`.
const VERIFY_EXHAUSTIVE_LEN: usize = 16;

fn check_cap(code: &BinaryCode, force: bool) -> CmdResult {
    if code.redundancy() > CLI_MAX_REDUNDANCY && !force {
        return Err(Failure::Usage(format!(
            "n - k = {} exceeds the table cap of {CLI_MAX_REDUNDANCY} (2^{} cosets); pass --force to build anyway",
            code.redundancy(),
            code.redundancy()
        )));
    }
    Ok(())
}

fn build_rep(
    ctx: &Context,
    code: &BinaryCode,
    force: bool,
) -> Result<GroebnerRepresentation, Failure> {
    check_cap(code, force)?;
    let limits = if force {
        BuildLimits::unlimited()
    } else {
        BuildLimits::default()
    };
    Ok(GroebnerRepresentation::build_with(code, limits, ctx.exec)?)
}

fn load(ctx: &Context, args: &SourceArgs) -> Result<Representation, Failure> {
    if let Some(spec) = &args.source.code {
        let code = spec.build()?;
        return Ok(Representation::Full(build_rep(ctx, &code, args.force)?));
    }
    let path = args.source.rep.as_ref().expect("clap enforces one source");
    let bytes = fs::read(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    Ok(Representation::from_bytes(&bytes, args.trusted)?)
}

fn require_full<'a>(
    rep: &'a Representation,
    what: &str,
) -> Result<&'a GroebnerRepresentation, Failure> {
    rep.full().ok_or_else(|| {
        Failure::Usage(format!(
            "{what} needs leader vectors; use a full representation or --code"
        ))
    })
}

fn leader_weights(table: &impl CosetTable) -> String {
    let mut counts: Vec<u64> = Vec::new();
    for i in 0..table.num_cosets() {
        let w = table.leader_weight(i) as usize;
        if counts.len() <= w {
            counts.resize(w + 1, 0);
        }
        counts[w] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(w, c)| format!("{w}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn stats(rep: &Representation) -> String {
    let compact = rep.to_compact();
    let code = rep.code();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "representation={}",
        if rep.is_compact() { "compact" } else { "full" }
    );
    let _ = writeln!(out, "n={}", code.n());
    let _ = writeln!(out, "k={}", code.k());
    let _ = writeln!(out, "cosets={}", compact.num_cosets());
    let _ = writeln!(out, "covering_radius={}", compact.covering_radius());
    let _ = writeln!(out, "packing_radius={}", compact.packing_radius());
    let _ = writeln!(out, "leader_weights={}", leader_weights(&compact));
    out
}

pub fn build(ctx: &Context, args: BuildArgs) -> CmdResult {
    let code = args.code.build()?;
    let started = Instant::now();
    let rep = build_rep(ctx, &code, args.force)?;
    let elapsed = started.elapsed();
    let rep = if args.compact {
        Representation::Compact(rep.compact())
    } else {
        Representation::Full(rep)
    };
    let bytes = rep.to_bytes();
    fs::write(&args.out, &bytes)
        .map_err(|e| Failure::Data(format!("{}: {e}", args.out.display())))?;
    print!("{}", stats(&rep));
    ctx.info(format_args!(
        "wrote {} ({} bytes), build time {:.6}s",
        args.out.display(),
        bytes.len(),
        elapsed.as_secs_f64()
    ));
    Ok(())
}

pub fn inspect(ctx: &Context, args: SourceArgs) -> CmdResult {
    let rep = load(ctx, &args)?;
    print!("{}", stats(&rep));
    Ok(())
}

type Decoder<'a> = Box<dyn Fn(&BitWord) -> gdd::Result<DecodeResult> + 'a>;

fn minimal_test_set(
    ctx: &Context,
    code: &BinaryCode,
    force: bool,
) -> Result<border::TestSet, Failure> {
    let limit = if force {
        MINIMAL_FORCED_MAX_K
    } else {
        MINIMAL_MAX_K
    };
    if code.k() > limit {
        return Err(Failure::Usage(format!(
            "enumerating minimal codewords of a code with k = {} exceeds k <= {limit}{}",
            code.k(),
            if force {
                ""
            } else {
                "; pass --force to raise the limit"
            }
        )));
    }
    Ok(border::minimal_codewords_bruteforce_with(
        code, limit, ctx.exec,
    )?)
}

fn min_red_test_set(
    rep: &GroebnerRepresentation,
    ctx: &Context,
) -> Result<border::TestSet, Failure> {
    let reduced =
        border::reduce_border_with(&border::border_from_phi_with(rep, ctx.exec), ctx.exec);
    Ok(border::min_red(rep.code(), &reduced)?)
}

fn decoder<'a>(
    ctx: &Context,
    rep: &'a Representation,
    compact: &'a CompactRepresentation,
    algorithm: Algorithm,
    test_set: TestSetChoice,
    force: bool,
) -> Result<Decoder<'a>, Failure> {
    let t = compact.packing_radius();
    Ok(match algorithm {
        Algorithm::L => Box::new(move |r| decoders::l_gdda(compact, r)),
        Algorithm::Compact => {
            Box::new(move |r| decoders::compact_reduction_gdda(compact, r, Some(t)))
        }
        Algorithm::Red => {
            let full = require_full(rep, "--algorithm red")?;
            Box::new(move |r| decoders::reduction_gdda(full, r))
        }
        Algorithm::Ts => {
            let set = match test_set {
                TestSetChoice::Minimal => minimal_test_set(ctx, rep.code(), force)?,
                TestSetChoice::Minred => {
                    min_red_test_set(require_full(rep, "--test-set minred")?, ctx)?
                }
            };
            Box::new(move |r| decoders::ts_gdda(&set, r, Some(t)))
        }
        Algorithm::Ml => {
            let limit = if force { ML_FORCED_MAX_K } else { ML_MAX_K };
            let oracle = MlOracle::with_limit(rep.code(), limit).map_err(|e| {
                Failure::Usage(format!(
                    "{e}{}",
                    if force {
                        ""
                    } else {
                        "; pass --force to raise the limit"
                    }
                ))
            })?;
            Box::new(move |r| oracle.decode(r))
        }
    })
}

fn parse_word(line: &str, n: usize, hex: bool) -> gdd::Result<BitWord> {
    if hex {
        return BitWord::from_hex(n, line);
    }
    let w: BitWord = line.parse()?;
    if w.len() != n {
        return Err(gdd::Error::LengthMismatch {
            expected: n,
            found: w.len(),
        });
    }
    Ok(w)
}

pub fn decode(ctx: &Context, args: DecodeArgs) -> CmdResult {
    let rep = load(ctx, &args.source)?;
    let compact = rep.to_compact();
    let decode = decoder(
        ctx,
        &rep,
        &compact,
        args.algorithm,
        args.test_set,
        args.source.force,
    )?;
    let n = rep.code().n();

    let input: Box<dyn BufRead> = match &args.input {
        Some(path) => {
            Box::new(BufReader::new(fs::File::open(path).map_err(|e| {
                Failure::Data(format!("{}: {e}", path.display()))
            })?))
        }
        None => Box::new(io::stdin().lock()),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    for (no, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let result = parse_word(text, n, args.hex).and_then(|r| decode(&r));
        let res = match result {
            Ok(res) => res,
            Err(e) => {
                out.flush()?;
                return Err(Failure::Data(format!("line {}: {e}", no + 1)));
            }
        };
        let codeword = if args.hex {
            res.codeword.to_hex()
        } else {
            res.codeword.to_string()
        };
        let line = format!(
            "{codeword} {} {} {}\n",
            res.distance,
            u8::from(res.unique),
            res.steps.len()
        );
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn border(ctx: &Context, args: BorderArgs) -> CmdResult {
    let sel = &args.select;
    if !(sel.full || sel.reduced || sel.minred || sel.minwords || args.verify_prop1) {
        return Err(Failure::Usage(
            "choose one of --full, --reduced, --minred, --minwords or --verify-prop1".into(),
        ));
    }
    let rep = load(ctx, &args.source)?;
    let code = rep.code().clone();
    let mut out = io::stdout().lock();

    if sel.minwords {
        let set = minimal_test_set(ctx, &code, args.source.force)?;
        out.write_all(border::test_set_to_text(&set).as_bytes())?;
    } else if sel.full || sel.reduced || sel.minred {
        let full = require_full(&rep, "the border")?;
        let b = border::border_from_phi_with(full, ctx.exec);
        let text = if sel.full {
            border::border_to_text(&b)
        } else {
            let reduced = border::reduce_border_with(&b, ctx.exec);
            if sel.reduced {
                border::border_to_text(&reduced)
            } else {
                border::test_set_to_text(&border::min_red(&code, &reduced)?)
            }
        };
        out.write_all(text.as_bytes())?;
    }

    if args.verify_prop1 {
        let full = require_full(&rep, "--verify-prop1")?;
        let b = border::border_from_phi_with(full, ctx.exec);
        let reduced = border::reduce_border_with(&b, ctx.exec);
        let min_red = border::min_red(&code, &reduced)?;
        let minimal = minimal_test_set(ctx, &code, args.source.force)?;
        let violations: Vec<BitWord> = min_red
            .words()
            .iter()
            .filter(|w| !minimal.contains(w))
            .copied()
            .collect();
        let mut text = format!(
            "prop1 border={} reduced={} min_red={} duplicates={} minimal={} violations={}\n",
            b.len(),
            reduced.len(),
            min_red.len(),
            reduced.len() - min_red.len(),
            minimal.len(),
            violations.len()
        );
        for v in &violations {
            let _ = writeln!(text, "violation {v}");
        }
        out.write_all(text.as_bytes())?;
        if !violations.is_empty() {
            return Err(Failure::Invariant(format!(
                "{} reduced-border codewords are not minimal",
                violations.len()
            )));
        }
    }
    Ok(())
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Checks {
    out: io::StdoutLock<'static>,
    passed: usize,
    failed: usize,
    skipped: usize,
}

impl Checks {
    fn record(&mut self, name: &str, outcome: Outcome) -> io::Result<bool> {
        let (status, detail, ok) = match outcome {
            Outcome::Pass(d) => {
                self.passed += 1;
                ("pass", d, true)
            }
            Outcome::Fail(d) => {
                self.failed += 1;
                ("fail", d, false)
            }
            Outcome::Skip(d) => {
                self.skipped += 1;
                ("skip", d, true)
            }
        };
        writeln!(self.out, "check {name} {status} {detail}")?;
        Ok(ok)
    }
}

fn from_result(r: gdd::Result<()>, detail: impl Into<String>) -> Outcome {
    match r {
        Ok(()) => Outcome::Pass(detail.into()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn check_transversal(rep: &GroebnerRepresentation) -> Outcome {
    let n = rep.code().n();
    if n > VERIFY_EXHAUSTIVE_LEN {
        return Outcome::Skip(format!("n = {n} > {VERIFY_EXHAUSTIVE_LEN}"));
    }
    for v in 0..1u64 << n {
        let w = BitWord::from_bits(n, v).expect("in range");
        let i = rep.coset_index(&w).expect("length checked");
        if w < rep.leader(i) {
            return Outcome::Fail(format!(
                "{w} precedes the leader {} of its coset",
                rep.leader(i)
            ));
        }
    }
    Outcome::Pass(format!("{} words scanned", 1u64 << n))
}

fn check_border(rep: &GroebnerRepresentation, ctx: &Context) -> Outcome {
    let leaders: Vec<BitWord> = rep.leaders().collect();
    match border::border_by_definition(rep.code(), &leaders) {
        Err(e) => Outcome::Skip(e.to_string()),
        Ok(by_def) => {
            let from_phi = border::border_from_phi_with(rep, ctx.exec);
            if by_def == from_phi {
                Outcome::Pass(format!("{} elements", by_def.len()))
            } else {
                Outcome::Fail(format!(
                    "definition gives {}, table gives {}",
                    by_def.len(),
                    from_phi.len()
                ))
            }
        }
    }
}

fn check_reduced(rep: &GroebnerRepresentation, ctx: &Context) -> Outcome {
    let b = border::border_from_phi_with(rep, ctx.exec);
    let reduced = border::reduce_border_with(&b, ctx.exec);
    match border::check_reduced_conditions(&b, &reduced) {
        Ok(()) => Outcome::Pass(format!("{} of {} elements", reduced.len(), b.len())),
        Err(e) => Outcome::Fail(e),
    }
}

fn check_prop1(rep: &GroebnerRepresentation, ctx: &Context) -> Outcome {
    let code = rep.code();
    if code.k() > MINIMAL_MAX_K {
        return Outcome::Skip(format!("k = {} > {MINIMAL_MAX_K}", code.k()));
    }
    let run = || -> gdd::Result<Outcome> {
        let reduced =
            border::reduce_border_with(&border::border_from_phi_with(rep, ctx.exec), ctx.exec);
        let min_red = border::min_red(code, &reduced)?;
        let minimal = border::minimal_codewords_bruteforce_with(code, MINIMAL_MAX_K, ctx.exec)?;
        Ok(
            match min_red.words().iter().find(|w| !minimal.contains(w)) {
                Some(w) => Outcome::Fail(format!("{w} is not a minimal codeword")),
                None => Outcome::Pass(format!(
                    "{} of {} minimal codewords",
                    min_red.len(),
                    minimal.len()
                )),
            },
        )
    };
    run().unwrap_or_else(|e| Outcome::Fail(e.to_string()))
}

fn check_agreement(rep: &GroebnerRepresentation) -> Outcome {
    let n = rep.code().n();
    if n > VERIFY_EXHAUSTIVE_LEN {
        return Outcome::Skip(format!("n = {n} > {VERIFY_EXHAUSTIVE_LEN}"));
    }
    let compact = rep.compact();
    for v in 0..1u64 << n {
        let r = BitWord::from_bits(n, v).expect("in range");
        let outputs = (|| -> gdd::Result<[DecodeResult; 3]> {
            Ok([
                decoders::l_gdda(&compact, &r)?,
                decoders::reduction_gdda(rep, &r)?,
                decoders::compact_reduction_gdda(&compact, &r, None)?,
            ])
        })();
        match outputs {
            Err(e) => return Outcome::Fail(format!("{r}: {e}")),
            Ok([a, b, c]) => {
                if a.codeword != b.codeword || a.codeword != c.codeword {
                    return Outcome::Fail(format!("l, red and compact disagree on {r}"));
                }
                if !rep.code().contains(&a.codeword) {
                    return Outcome::Fail(format!("{} is not a codeword", a.codeword));
                }
            }
        }
    }
    Outcome::Pass(format!(
        "l, red and compact identical on {} words",
        1u64 << n
    ))
}

fn oracle_equivalence(code: &BinaryCode, name: &str, ctx: &Context) -> (Outcome, Option<u64>) {
    if code.n() > VERIFY_EXHAUSTIVE_LEN || code.k() > MINIMAL_MAX_K {
        return (
            Outcome::Skip(format!(
                "needs n <= {VERIFY_EXHAUSTIVE_LEN} and k <= {MINIMAL_MAX_K}"
            )),
            None,
        );
    }
    let kinds = DecoderKind::ALL;
    match harness::run_equivalence(code, name, &kinds, Mode::Exhaustive, ctx.exec) {
        Err(e) => (Outcome::Fail(e.to_string()), None),
        Ok(report) => {
            let measured = report
                .stats(DecoderKind::TsMinRed)
                .map(|s| s.mismatch_count);
            let asserted: Vec<String> = report
                .decoders
                .iter()
                .filter(|d| d.decoder != DecoderKind::TsMinRed.name() && d.mismatch_count > 0)
                .map(|d| format!("{}={}", d.decoder, d.mismatch_count))
                .collect();
            let outcome = if asserted.is_empty() {
                Outcome::Pass(format!(
                    "ml, l, red, compact and ts optimal on {} words",
                    report.inputs
                ))
            } else {
                Outcome::Fail(format!("mismatches {}", asserted.join(" ")))
            };
            (outcome, measured)
        }
    }
}

pub fn verify(ctx: &Context, args: VerifyArgs) -> CmdResult {
    let args = args.source;
    let mut checks = Checks {
        out: io::stdout().lock(),
        passed: 0,
        failed: 0,
        skipped: 0,
    };

    let (rep, name) = match (&args.source.code, &args.source.rep) {
        (Some(spec), _) => {
            let code = spec.build()?;
            let rep = build_rep(ctx, &code, args.force)?;
            checks.record(
                "build",
                Outcome::Pass(format!("{} cosets", rep.num_cosets())),
            )?;
            (rep, spec.to_string())
        }
        (None, Some(path)) => {
            let bytes =
                fs::read(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
            // Load without validation so each invariant is reported by name.
            let loaded = Representation::from_bytes(&bytes, true)?;
            checks.record("load", Outcome::Pass(format!("{} bytes", bytes.len())))?;
            let code = loaded.code().clone();
            let fresh = build_rep(ctx, &code, args.force)?;
            let ok = match &loaded {
                Representation::Full(r) => {
                    let phi = checks.record(
                        "phi-consistency",
                        from_result(gdd::representation::check_phi_consistency(r), "all entries"),
                    )?;
                    let structure = checks.record(
                        "structure",
                        from_result(r.validate(), "sizes, order, order ideal"),
                    )?;
                    let same =
                        r.leaders().eq(fresh.leaders()) && r.phi_table() == fresh.phi_table();
                    let rebuilt = checks.record(
                        "rebuild",
                        if same {
                            Outcome::Pass("identical to a fresh build".into())
                        } else {
                            Outcome::Fail("differs from a fresh build".into())
                        },
                    )?;
                    phi && structure && rebuilt
                }
                Representation::Compact(c) => {
                    let structure = checks.record(
                        "compact-consistency",
                        from_result(c.validate(), "weights and phi"),
                    )?;
                    let f = fresh.compact();
                    let same = c.weights() == f.weights() && c.phi_table() == f.phi_table();
                    let rebuilt = checks.record(
                        "rebuild",
                        if same {
                            Outcome::Pass("identical to a fresh build".into())
                        } else {
                            Outcome::Fail("differs from a fresh build".into())
                        },
                    )?;
                    structure && rebuilt
                }
            };
            if !ok {
                writeln!(
                    checks.out,
                    "verify: {} passed, {} failed, {} skipped",
                    checks.passed, checks.failed, checks.skipped
                )?;
                return Err(Failure::Invariant(format!(
                    "{} failed validation",
                    path.display()
                )));
            }
            (fresh, path.display().to_string())
        }
        (None, None) => unreachable!("clap enforces one source"),
    };

    if args.source.code.is_some() {
        checks.record(
            "phi-consistency",
            from_result(
                gdd::representation::check_phi_consistency(&rep),
                "all entries",
            ),
        )?;
        checks.record(
            "structure",
            from_result(rep.validate(), "sizes, order, order ideal"),
        )?;
    }
    checks.record("transversal", check_transversal(&rep))?;
    checks.record("border", check_border(&rep, ctx))?;
    checks.record("reduced-border", check_reduced(&rep, ctx))?;
    checks.record("prop1", check_prop1(&rep, ctx))?;
    checks.record("agreement", check_agreement(&rep))?;
    let (outcome, measured) = oracle_equivalence(rep.code(), &name, ctx);
    checks.record("oracle", outcome)?;
    if let Some(m) = measured {
        writeln!(checks.out, "measure ts-minred mismatches={m}")?;
    }
    writeln!(
        checks.out,
        "verify: {} passed, {} failed, {} skipped",
        checks.passed, checks.failed, checks.skipped
    )?;
    if checks.failed > 0 {
        return Err(Failure::Invariant(format!(
            "{} check(s) failed",
            checks.failed
        )));
    }
    Ok(())
}

fn default_decoders(code: &BinaryCode) -> Vec<DecoderKind> {
    DecoderKind::ALL
        .into_iter()
        .filter(|k| match k {
            DecoderKind::Ml => code.k() <= ML_MAX_K,
            DecoderKind::TsMinimal => code.k() <= MINIMAL_MAX_K,
            _ => true,
        })
        .collect()
}

pub fn simulate(ctx: &Context, args: SimulateArgs) -> CmdResult {
    let code = args.code.build()?;
    check_cap(&code, args.force)?;
    let decoders = match &args.decoders {
        None => default_decoders(&code),
        Some(names) => names
            .iter()
            .map(|n| DecoderKind::from_name(n.trim()))
            .collect::<gdd::Result<_>>()?,
    };
    if !args.force && code.k() > MINIMAL_MAX_K && decoders.contains(&DecoderKind::TsMinimal) {
        return Err(Failure::Usage(format!(
            "decoder ts enumerates minimal codewords, too costly for k = {} > {MINIMAL_MAX_K}; pass --force",
            code.k()
        )));
    }
    let mode = if args.exhaustive {
        Mode::Exhaustive
    } else {
        let seed = args.seed.unwrap_or_else(|| {
            let s = rand::random::<u64>();
            eprintln!("seed={s}");
            s
        });
        Mode::Sampled {
            trials: args.trials,
            p: args.p.expect("clap requires --p"),
            seed,
            random_codewords: args.random_codewords,
        }
    };
    let report =
        harness::run_equivalence(&code, &args.code.to_string(), &decoders, mode, ctx.exec)?;
    let mut out = io::stdout().lock();
    if args.json {
        let json =
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Data(e.to_string()))?;
        writeln!(out, "{json}")?;
    } else {
        out.write_all(report.to_text().as_bytes())?;
        out.write_all(report.to_summary().as_bytes())?;
    }
    for (phase, t) in &report.timings {
        ctx.info(format_args!(
            "time phase={phase} seconds={:.6}",
            t.as_secs_f64()
        ));
    }
    Ok(())
}

pub fn bench(ctx: &Context, args: BenchArgs) -> CmdResult {
    if args.max_redundancy > CLI_MAX_REDUNDANCY && !args.force {
        return Err(Failure::Usage(format!(
            "--max-redundancy {} exceeds the table cap of {CLI_MAX_REDUNDANCY}; pass --force",
            args.max_redundancy
        )));
    }
    if args.k + args.max_redundancy > gdd::gf2::MAX_LEN {
        return Err(Failure::Usage(format!(
            "k + max redundancy exceeds length {}",
            gdd::gf2::MAX_LEN
        )));
    }
    let mut out = io::stdout().lock();
    writeln!(out, "bench seed={} exec={}", args.seed, ctx.exec.name())?;

    for r in 1..=args.max_redundancy {
        let n = args.k + r;
        let code = gdd::codes::random(n, args.k, args.seed.wrapping_add(r as u64))?;
        let started = Instant::now();
        let rep = build_rep(ctx, &code, args.force)?;
        let elapsed = started.elapsed();
        writeln!(
            out,
            "build n={n} k={} redundancy={r} cosets={} covering_radius={} packing_radius={}",
            args.k,
            rep.num_cosets(),
            rep.covering_radius(),
            rep.packing_radius()
        )?;
        ctx.info(format_args!(
            "time build redundancy={r} seconds={:.6} ns_per_coset={:.1}",
            elapsed.as_secs_f64(),
            elapsed.as_nanos() as f64 / rep.num_cosets() as f64
        ));
    }

    let code = args.code.build()?;
    let rep = Representation::Full(build_rep(ctx, &code, args.force)?);
    let compact = rep.to_compact();
    let n = code.n();
    let mut rng = harness::stream_rng(args.seed, 0);
    let words: Vec<BitWord> = (0..args.words)
        .map(|_| BitWord::from_bits(n, rng.gen::<u64>() & low_mask(n)).expect("masked"))
        .collect();
    let mut algorithms = vec![Algorithm::L, Algorithm::Compact, Algorithm::Red];
    if code.k() <= MINIMAL_MAX_K {
        algorithms.push(Algorithm::Ts);
    }
    if code.k() <= ML_MAX_K {
        algorithms.push(Algorithm::Ml);
    }
    for alg in algorithms {
        let decode = decoder(ctx, &rep, &compact, alg, TestSetChoice::Minimal, false)?;
        let started = Instant::now();
        let mut total_distance = 0u64;
        let mut total_steps = 0u64;
        for w in &words {
            let res = decode(w)?;
            total_distance += u64::from(res.distance);
            total_steps += res.steps.len() as u64;
        }
        let elapsed = started.elapsed();
        let name = alg_name(alg);
        writeln!(
            out,
            "decode code={} algorithm={name} words={} total_distance={total_distance} total_steps={total_steps}",
            args.code,
            words.len()
        )?;
        ctx.info(format_args!(
            "time decode algorithm={name} ns_per_word={:.1} words_per_second={:.0}",
            elapsed.as_nanos() as f64 / words.len().max(1) as f64,
            words.len() as f64 / elapsed.as_secs_f64()
        ));
    }
    Ok(())
}

fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

fn alg_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::L => "l",
        Algorithm::Ts => "ts",
        Algorithm::Red => "red",
        Algorithm::Compact => "compact",
        Algorithm::Ml => "ml",
    }
}
