//! Endpoints, case selection and the variational check for a range of fields.

use hermite_equilibrium::{solve_endpoints, SupportKind};

pub fn main() {
    println!(
        "{:>5} {:>5} {:>5} {:>5} {:>10} {:>10} {:>10} {:>9} {:>9}",
        "kind", "alpha", "a", "case", "sigma", "b", "energy", "dev", "slack"
    );
    for kind in [SupportKind::half_line(0.0), SupportKind::symmetric(0.0)] {
        for alpha in [0.0, 0.5, 2.0] {
            for a in [0.0, 0.5, 1.0] {
                let m = solve_endpoints(alpha, a, kind).unwrap();
                let robin = m.robin_constant().unwrap();
                println!(
                    "{:>5} {alpha:>5} {a:>5} {:>5} {:>10.6} {:>10.6} {:>10.6} {:>9.1e} {:>9.1e}",
                    kind.label(),
                    m.case,
                    m.sigma,
                    m.b,
                    m.equilibrium_energy().unwrap(),
                    robin.max_deviation,
                    robin.exterior_slack
                );
            }
        }
    }
    let m = solve_endpoints(2.0, 1.0, SupportKind::half_line(0.0)).unwrap();
    println!("\ndensity of {} on [{:.4}, {:.4}]:", m.case, m.sigma, m.b);
    for (x, f) in m.density_grid(8) {
        println!("  {x:.4} {f:.6}");
    }
}
