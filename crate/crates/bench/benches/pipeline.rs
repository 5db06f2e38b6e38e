use criterion::{black_box, criterion_group, criterion_main, Criterion};
use decilefit::{
    build_cdf, compute_deciles, fit_polynomial, gini, reconstruct_series_from_fit,
    roundtrip_check, sample_incomes, EmpiricalCdf, FitConfig, IncomeKind, Polynomial, SampleSpec,
    SeriesMeta, Statistic,
};

fn meta() -> SeriesMeta {
    SeriesMeta {
        country: "bench".into(),
        year: 0,
        currency: "units".into(),
        statistic: Statistic::UpperLimit,
        income_kind: IncomeKind::Disposable,
    }
}

fn france_2002() -> Polynomial {
    Polynomial::quadratic(1.196e-7, -0.008721, 167.5).unwrap()
}

fn lire_1989() -> Polynomial {
    Polynomial::quadratic(2.018e-14, -3.141e-6, 130.3).unwrap()
}

fn bench_fit(c: &mut Criterion) {
    let series = reconstruct_series_from_fit(&france_2002(), meta()).unwrap();
    let cdf = build_cdf(&series);
    c.bench_function("fit_polynomial_degree2", |b| {
        b.iter(|| fit_polynomial(black_box(&cdf), &FitConfig::with_degree(2)).unwrap())
    });

    let series = reconstruct_series_from_fit(&lire_1989(), meta()).unwrap();
    let lire_cdf = build_cdf(&series);
    c.bench_function("fit_polynomial_degree5_lire_scale", |b| {
        b.iter(|| fit_polynomial(black_box(&lire_cdf), &FitConfig::with_degree(5)).unwrap())
    });
}

fn bench_roundtrip(c: &mut Criterion) {
    let poly = lire_1989();
    c.bench_function("roundtrip_check_lire_row", |b| {
        b.iter(|| roundtrip_check(black_box(&poly), 1e-6).unwrap())
    });
}

fn bench_sampling(c: &mut Criterion) {
    let poly = france_2002();
    let spec = SampleSpec::new(10_000, 42).unwrap();
    c.bench_function("sample_incomes_10k", |b| {
        b.iter(|| sample_incomes(black_box(&poly), &spec).unwrap())
    });

    let incomes = sample_incomes(&poly, &spec).unwrap();
    c.bench_function("compute_deciles_10k", |b| {
        b.iter(|| compute_deciles(black_box(&incomes), &meta()).unwrap())
    });
    c.bench_function("gini_10k", |b| {
        b.iter(|| gini(black_box(&incomes)).unwrap())
    });
}

fn bench_loglog(c: &mut Criterion) {
    let points: Vec<(f64, f64)> = decilefit::PERCENT_GRID
        .iter()
        .map(|&p| (p.powf(-0.5), p))
        .collect();
    let cdf = EmpiricalCdf::from_points(points).unwrap();
    c.bench_function("fit_loglog_degree1", |b| {
        b.iter(|| decilefit::fit_loglog(black_box(&cdf), 1).unwrap())
    });
}

criterion_group!(benches, bench_fit, bench_roundtrip, bench_sampling, bench_loglog);
criterion_main!(benches);
