//! Track the stability margin as the amplifier gain grows, then pin the
//! stability boundary down by bisection and show it scales with the cavity
//! linewidth.

use magnon_steering::dynamics::{drift_matrix, stability};
use magnon_steering::experiments::max_stable_gain;
use magnon_steering::model::default_spec;

fn main() {
    let base = default_spec().with_squeezing(1.0, 0.0);

    println!("  Λ/κ_a   margin (κ_a)   stable?");
    for i in 0..=12 {
        let lambda = 0.05 * i as f64 + 0.05;
        let spec = base.clone().with_opa(lambda, 0.0);
        let report = stability(&drift_matrix(&spec));
        println!(
            "  {lambda:5.2}   {:+12.6}   {}",
            report.margin,
            if report.is_stable { "yes" } else { "no" }
        );
    }

    let boundary = max_stable_gain(&base);
    println!("\nboundary by bisection: Λ_max = {boundary:.4} κ_a");

    // The margin is expressed in units of κ_a, so doubling every rate in the
    // problem leaves the boundary untouched.
    let mut doubled = base.clone();
    doubled.kappa_a *= 2.0;
    println!(
        "after doubling κ_a:    Λ_max = {:.4} κ_a",
        max_stable_gain(&doubled)
    );

    // A bare cavity (no magnons) goes unstable exactly at Λ = κ_a/2, a
    // useful analytic cross-check on the search.
    let bare = base.clone().with_couplings(0.0, 0.0);
    println!("bare cavity:           Λ_max = {:.4} κ_a", max_stable_gain(&bare));
}
