//! Rescaled zeros approach the equilibrium distribution; the KS distance shrinks with `n`.

use hermite_equilibrium::{
    build_table, compute_zeros, ks_distance, solve_endpoints, QuadratureScheme, SupportKind, WeightSpec,
};

pub fn main() {
    let scheme = QuadratureScheme::default();
    for (kind, alpha) in [
        (SupportKind::half_line(0.0), 0.0),
        (SupportKind::symmetric(0.0), 0.0),
        (SupportKind::half_line(0.0), 1.0),
    ] {
        let limit = solve_endpoints(alpha, kind.truncation(), kind).unwrap();
        print!("{kind:?} alpha={alpha}:");
        for n in [10, 20, 40, 80] {
            let lambda = (alpha * n as f64).round();
            let table = build_table(WeightSpec::new(lambda, kind).unwrap(), n, &scheme).unwrap();
            let zeros = compute_zeros(&table, n).unwrap();
            print!(" KS({n})={:.4}", ks_distance(&zeros.empirical_cdf(), |x| limit.cdf(x)));
        }
        println!();
    }
}
