//! Energy of the zeros against the equilibrium energy of the limit field.

use hermite_equilibrium::energy::{convergence_sweep, reports_to_csv};
use hermite_equilibrium::{QuadratureScheme, SupportKind};

pub fn main() {
    let scheme = QuadratureScheme::default();
    for (kind, alpha) in [
        (SupportKind::half_line(0.0), 0.0),
        (SupportKind::symmetric(0.5), 0.0),
        (SupportKind::half_line(0.0), 1.0),
    ] {
        let reports = convergence_sweep(kind, alpha, &[10, 20, 40], &scheme).unwrap();
        println!("{kind:?} alpha={alpha}");
        print!("{}", reports_to_csv(&reports));
    }
}
