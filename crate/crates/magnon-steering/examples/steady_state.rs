//! Solve one operating point end to end: build the drift and diffusion
//! matrices, solve for the steady-state covariance matrix, and print every
//! derived metric.

use magnon_steering::dynamics::{
    diffusion_matrix, drift_matrix, lyapunov_residual, stability, steady_state_cm,
};
use magnon_steering::measures::{metrics_from_cm, moment_steering_criterion, squeezing_db};
use magnon_steering::model::{bath_moments, default_spec};

fn main() {
    // Reference point with a squeezed drive and the amplifier on.
    let spec = default_spec().with_squeezing(1.0, 0.0).with_opa(0.49, 0.0);

    let a = drift_matrix(&spec);
    let report = stability(&a);
    println!(
        "stability margin {:+.4e} κ_a ({})",
        report.margin,
        if report.is_stable { "stable" } else { "unstable" }
    );

    let bath = bath_moments(&spec);
    println!(
        "bath moments: n̄_a = {:.3e}, N = {:.6}, M = {:.6}{:+.6}i",
        bath.n_a, bath.big_n, bath.big_m.re, bath.big_m.im
    );

    let f = diffusion_matrix(&spec, &bath);
    let sigma = steady_state_cm(&a, &f).expect("reference point is stable");
    println!(
        "Lyapunov residual {:.2e}, symplectic floor {:+.2e}",
        lyapunov_residual(&a, &f, &sigma),
        sigma.symplectic_floor()
    );

    let metrics = metrics_from_cm(&sigma, report.margin).unwrap();
    println!();
    println!(
        "cavity squeezing   S_xa {:+.4} dB, S_ya {:+.4} dB",
        squeezing_db(&sigma, 0).unwrap(),
        squeezing_db(&sigma, 1).unwrap()
    );
    println!("magnon squeezing   S_X1 {:+.4} dB, S_Y1 {:+.4} dB", metrics.s_x1, metrics.s_y1);
    println!("entanglement       E12  {:.6}", metrics.e12);
    println!("steering           G12  {:.6}   G21 {:.6}   GS {:.6}", metrics.g12, metrics.g21, metrics.gs);
    println!("populations        n_a {:.4}, n_1 {:.4}, n_2 {:.4}", metrics.pop_a, metrics.pop_1, metrics.pop_2);

    // Second-moment witness: a sufficient (one-sided) steering check that
    // needs only one cross correlation and the two populations.
    let witness = moment_steering_criterion(&sigma);
    println!(
        "moment witness     1→2: {}, 2→1: {}, |⟨m₁m₂⟩| = {:.6}",
        witness.steer_1to2,
        witness.steer_2to1,
        witness.cross_moment.norm()
    );
}
