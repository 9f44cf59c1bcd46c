use cachediff::bench::{sweep, time_method, Method};

fn median_ns(method: Method, n: u64, k: u64) -> f64 {
    let r = time_method(method, n, k, 7, 3).unwrap();
    r.median_elapsed.unwrap().as_nanos().max(1) as f64
}

#[test]
fn cachediff_time_grows_at_most_linearly_in_k() {
    let records = sweep(&[Method::CachediffPruned], &[1 << 50], &[10, 100, 1000], 7, 11).unwrap();
    let medians: Vec<f64> = records.iter().map(|r| r.median_elapsed.unwrap().as_nanos().max(1) as f64).collect();
    for w in medians.windows(2) {
        assert!(w[1] / w[0] <= 20.0, "{medians:?}");
    }
    for r in &records {
        assert!(r.peak_entries.unwrap() <= r.k);
    }
}

#[test]
fn full_index_time_grows_with_n() {
    let small = median_ns(Method::FullIndex, 1_000_000, 10);
    let large = median_ns(Method::FullIndex, 10_000_000, 10);
    assert!(large / small >= 5.0, "{small} -> {large}");
}

#[test]
fn faithful_peak_within_twice_k() {
    for k in [1u64, 50, 2000] {
        let r = time_method(Method::CachediffFaithful, 1 << 40, k, 3, 9).unwrap();
        assert!(r.peak_entries.unwrap() <= 2 * k);
    }
}
