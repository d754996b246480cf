//! Show how magnon dissipation erodes the correlations: sweep one magnon
//! linewidth while everything else stays fixed, for two coupling
//! asymmetries.

use magnon_steering::experiments::{fig5_dissipation_sweep, AxisSpec, MagnonMode};
use magnon_steering::model::default_spec;

fn main() {
    let base = default_spec().with_squeezing(1.0, 0.0).with_opa(0.49, 0.0);

    for gamma_2 in [3.0, 6.0] {
        println!("=== Γ₂ = {gamma_2} κ_a (Γ₁ = 4 κ_a) ===");
        let grid = fig5_dissipation_sweep(
            &base,
            AxisSpec::new("kappa_1_rel", 0.1, 1.0, 10),
            MagnonMode::One,
            gamma_2,
        );
        println!("  κ₁/κ_a    E12       G12       G21");
        for (coords, m) in grid.records() {
            println!(
                "  {:6.2}  {:8.5}  {:8.5}  {:8.5}",
                coords[0], m.e12, m.g12, m.g21
            );
        }
        let records: Vec<_> = grid.records().map(|(_, m)| m.e12).collect();
        let monotone = records.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        println!("  entanglement monotone non-increasing: {monotone}\n");
    }
}
