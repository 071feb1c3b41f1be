//! Recurrence coefficients of a truncated weight and the identity they satisfy.
//!
//! ```text
//! cargo run --example recurrence_table
//! ```

use hermite_equilibrium::{build_table, QuadratureScheme, WeightSpec};

pub fn main() {
    let spec = WeightSpec::half_line(1.0, 0.5).unwrap();
    let table = build_table(spec, 12, &QuadratureScheme::default()).unwrap();
    println!("C = {:.15}", table.normalization_constant());
    println!(
        "{:>3} {:>20} {:>20} {:>20} {:>10}",
        "k", "b_k", "a_k", "m_k", "identity"
    );
    for k in 0..11 {
        println!(
            "{k:>3} {:>20.15} {:>20.15} {:>20.15} {:>10.1e}",
            table.b(k),
            table.a(k),
            table.boundary_masses()[k],
            table.identity_residual(k).unwrap()
        );
    }
}
