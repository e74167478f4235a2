use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use intgraph_core::cat::dsl::parse_proof_file;
use intgraph_core::cat::interpret::certify;
use intgraph_core::cat::Valuation;
use intgraph_core::gen::{pair, trial_rng, GraphShape};
use intgraph_core::graph::{execute, Plugging};
use intgraph_core::matrix::{execute_aggregated, logdet_measure};
use intgraph_core::measure::measure_graphs;
use intgraph_core::suites::{run_suite, truncated_circuit_sum, SuiteConfig, TRACE_HORIZON};
use intgraph_core::{CircuitMap, MeasureParam, WeightedGraph};

fn pairs(shape: &GraphShape, keep: impl Fn(&WeightedGraph, &WeightedGraph) -> bool) -> Vec<(WeightedGraph, WeightedGraph)> {
    (0..)
        .map(|t| pair(&mut trial_rng(99, t), shape))
        .filter(|(f, g)| keep(f, g))
        .take(32)
        .collect()
}

fn execution(c: &mut Criterion) {
    let shape = GraphShape::default();
    let finite = pairs(&shape, |f, g| execute(f, g).is_ok());
    let cyclic = pairs(&shape, |f, g| Plugging::new(f, g).has_cycle() && execute_aggregated(f, g).is_ok());
    let mut group = c.benchmark_group("execution");
    group.bench_function("paths", |b| {
        b.iter(|| finite.iter().map(|(f, g)| execute(f, g).unwrap().edges().len()).sum::<usize>())
    });
    group.bench_function("aggregated", |b| {
        b.iter(|| cyclic.iter().for_each(|(f, g)| drop(black_box(execute_aggregated(f, g).unwrap()))))
    });
    group.finish();
}

fn measurement(c: &mut Criterion) {
    let shape = GraphShape::default();
    let cyclic = pairs(&shape, |f, g| Plugging::new(f, g).has_cycle());
    let mut group = c.benchmark_group("measurement");
    group.bench_function("logdet", |b| b.iter(|| cyclic.iter().for_each(|(f, g)| drop(black_box(logdet_measure(f, g))))));
    for len in [4, 6] {
        let param = MeasureParam::Truncated {
            map: CircuitMap::NegLogOneMinus,
            max_len: len,
        };
        group.bench_with_input(BenchmarkId::new("enumerated", len), &param, |b, p| {
            b.iter(|| cyclic.iter().for_each(|(f, g)| drop(black_box(measure_graphs(f, g, p).unwrap()))))
        });
        group.bench_with_input(BenchmarkId::new("traced", len), &len, |b, &l| {
            b.iter(|| {
                cyclic
                    .iter()
                    .map(|(f, g)| truncated_circuit_sum(&Plugging::new(f, g), l, TRACE_HORIZON))
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn interpretation(c: &mut Criterion) {
    let val = Valuation::default();
    let mut group = c.benchmark_group("interpret");
    for (name, src) in [
        ("cut_tensor_par", include_str!("../../core/tests/corpus/cut_tensor_par.proof")),
        ("cut_with_plus", include_str!("../../core/tests/corpus/cut_with_plus.proof")),
        ("ax_compound", include_str!("../../core/tests/corpus/ax_compound.proof")),
    ] {
        let (proof, _) = parse_proof_file(src).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| certify(black_box(&proof), &val, &MeasureParam::LogDet).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for name in ["associativity", "cyclic", "category"] {
        group.bench_function(name, |b| b.iter(|| run_suite(name, &SuiteConfig::new(1, 20)).unwrap()));
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20).measurement_time(Duration::from_secs(2));
    targets = execution, measurement, interpretation, suites
}
criterion_main!(benches);
