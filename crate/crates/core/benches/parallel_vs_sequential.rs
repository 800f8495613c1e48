use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gdd::border;
use gdd::codes;
use gdd::harness::{self, DecoderKind, Mode};
use gdd::{BuildLimits, Exec, GroebnerRepresentation};

const EXECS: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for (n, k) in [(24, 8), (32, 14)] {
        let code = codes::random(n, k, 1).unwrap();
        for exec in EXECS {
            group.bench_with_input(
                BenchmarkId::new(exec.name(), format!("{n},{k}")),
                &code,
                |b, code| {
                    b.iter(|| {
                        GroebnerRepresentation::build_with(code, BuildLimits::default(), exec)
                            .unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn border_and_min_red(c: &mut Criterion) {
    let mut group = c.benchmark_group("border");
    group.sample_size(10);
    let code = codes::random(20, 8, 3).unwrap();
    let rep = GroebnerRepresentation::build(&code).unwrap();
    for exec in EXECS {
        group.bench_function(exec.name(), |b| {
            b.iter(|| border::reduce_border_with(&border::border_from_phi_with(&rep, exec), exec))
        });
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut group = c.benchmark_group("equivalence");
    group.sample_size(10);
    let code = codes::random(12, 6, 5).unwrap();
    let decoders = [
        DecoderKind::LGdda,
        DecoderKind::CompactReduction,
        DecoderKind::TsMinimal,
    ];
    for exec in EXECS {
        group.bench_function(BenchmarkId::new("exhaustive", exec.name()), |b| {
            b.iter(|| {
                harness::run_equivalence(&code, "random:12,6,5", &decoders, Mode::Exhaustive, exec)
                    .unwrap()
            })
        });
        let mode = Mode::Sampled {
            trials: 50_000,
            p: 0.1,
            seed: 1,
            random_codewords: true,
        };
        group.bench_function(BenchmarkId::new("sampled", exec.name()), |b| {
            b.iter(|| {
                harness::run_equivalence(&code, "random:12,6,5", &decoders, mode, exec).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, build, border_and_min_red, equivalence);
criterion_main!(benches);
