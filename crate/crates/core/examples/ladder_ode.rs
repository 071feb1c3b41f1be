//! Lowering-operator coefficients and the second-order equation for `H_n`.
//!
//! The residuals use the coefficients that include the boundary terms in full; the
//! `Displayed` form drops one of them and is shown for comparison.

use hermite_equilibrium::polynomials::ladder_residual;
use hermite_equilibrium::{
    build_table, ode_coefficients, polynomials::ode_residual_with, LadderForm, QuadratureScheme, WeightSpec,
};

pub fn main() {
    for spec in [
        WeightSpec::half_line(1.0, 0.5).unwrap(),
        WeightSpec::symmetric(1.0, 0.5).unwrap(),
    ] {
        let table = build_table(spec, 9, &QuadratureScheme::default()).unwrap();
        println!("{spec:?}");
        for x in [0.8, 1.5, 2.4] {
            let c = ode_coefficients(&table, 6, x).unwrap();
            println!("  x={x}: A={:.6} B={:.6} R={:.6} S={:.6}", c.a, c.b, c.r, c.s);
            for form in [LadderForm::Corrected, LadderForm::Displayed] {
                println!(
                    "    {form:?}: ladder {:.1e}, second order {:.1e}",
                    ladder_residual(&table, 6, x, form).unwrap(),
                    ode_residual_with(&table, 6, x, form).unwrap()
                );
            }
        }
    }
}
