//! Sequential vs rayon-parallel batch work. On a single core the two should
//! be close; the parallel path only pays off with more hardware threads.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sentfis::corpus::load_fixture;
use sentfis::exec::Exec;
use sentfis::pipeline::{Pipeline, ScoreOn};
use sentfis::scorer::ScoreTriple;
use sentfis::sentiment_fis::{calibrate, default_config, reference_anchors, GridSpec, InputParams};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn pipeline(c: &mut Criterion) {
    let records: Vec<_> = load_fixture().into_iter().cycle().take(640).collect();
    let mut g = c.benchmark_group("pipeline_640_records");
    for (name, exec) in MODES {
        let mut p = Pipeline::with_defaults();
        p.exec = exec;
        p.score_on = ScoreOn::Clean;
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| p.run(black_box(&records)).unwrap())
        });
    }
    g.finish();
}

fn fis_batch(c: &mut Criterion) {
    let fis = default_config().build().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let triples: Vec<ScoreTriple> = (0..10_000)
        .map(|_| ScoreTriple::new(rng.gen(), rng.gen(), rng.gen()))
        .collect();
    let mut g = c.benchmark_group("fis_10k_triples");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map(black_box(&triples), |t| fis.evaluate(*t).unwrap()))
        });
    }
    g.finish();
}

fn calibration(c: &mut Criterion) {
    let anchors = reference_anchors();
    let mut grid = GridSpec::single(InputParams::CALIBRATED);
    for v in grid.values.iter_mut() {
        let x = v[0];
        *v = [x - 0.1, x, x + 0.1]
            .into_iter()
            .filter(|y| (0.0..=1.0).contains(y))
            .collect();
    }
    let mut g = c.benchmark_group("calibration_2187_candidates");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| calibrate(black_box(&anchors), &grid, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, pipeline, fis_batch, calibration);
criterion_main!(benches);
