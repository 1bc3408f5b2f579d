use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use slim_bench::{graph, KINDS};
use slim_core::archive::{decode, encode, EncodeOptions};
use slim_core::dict;
use slim_core::bits::BitString;
use std::hint::black_box;

fn encode_decode(c: &mut Criterion) {
    let mut group = c.benchmark_group("codec");
    group.sample_size(10);
    for (name, kind) in KINDS {
        for log_n in [12, 14] {
            let g = graph(kind, log_n);
            group.throughput(Throughput::Elements(g.n() as u64));
            group.bench_with_input(BenchmarkId::new(format!("encode/{name}"), g.n()), &g, |b, g| {
                b.iter(|| encode(black_box(g), &EncodeOptions::default()))
            });
            let (a, _) = encode(&g, &EncodeOptions::default());
            group.bench_with_input(BenchmarkId::new(format!("decode/{name}"), g.n()), &a, |b, a| {
                b.iter(|| decode(black_box(a)).unwrap())
            });
        }
    }
    group.finish();
}

fn dictionary(c: &mut Criterion) {
    let mut group = c.benchmark_group("dict");
    for log_m in [14u32, 20] {
        let m = 1usize << log_m;
        let y = BitString::from_bools((0..m).map(|i| i.wrapping_mul(2654435761) % 97 == 0));
        let bits = dict::encode(y.as_slice());
        let view = dict::FidView::parse(bits.as_slice()).unwrap();
        let ones = view.ones();
        group.bench_function(BenchmarkId::new("rank", m), |b| {
            let mut i = 1;
            b.iter(|| {
                i = (i * 7919) % m + 1;
                view.rank(black_box(i)).unwrap()
            })
        });
        group.bench_function(BenchmarkId::new("select", m), |b| {
            let mut j = 1;
            b.iter(|| {
                j = (j * 7919) % ones + 1;
                view.select(black_box(j)).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, encode_decode, dictionary);
criterion_main!(benches);
