//! Map entanglement over the (squeeze r, amplifier gain) plane and render a
//! coarse text heatmap. Unstable cells — none inside this window — would
//! show as blanks.

use magnon_steering::experiments::{fig2_sweep, AxisSpec};
use magnon_steering::model::default_spec;

fn main() {
    let base = default_spec();
    let r_axis = AxisSpec::new("squeeze_r", 0.0, 2.0, 21);
    let lambda_axis = AxisSpec::new("lambda_opa_rel", 0.0, 0.49, 15);
    let grid = fig2_sweep(&base, r_axis, lambda_axis);

    let lambdas = grid.axes[1].values();
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    let max_e12 = grid
        .records()
        .map(|(_, m)| m.e12)
        .fold(0.0_f64, f64::max);

    println!("entanglement E12 over squeeze r (rows) × gain Λ (columns)");
    println!("scale: ' ' = 0 … '@' = {max_e12:.3}\n");
    print!("   r\\Λ ");
    for (j, lambda) in lambdas.iter().enumerate() {
        if j % 2 == 0 {
            print!("{lambda:4.2}");
        }
    }
    println!();

    let n_lambda = lambdas.len();
    for (i, r) in grid.axes[0].values().iter().enumerate() {
        print!("  {r:4.1}  ");
        for j in 0..n_lambda {
            let cell = match grid.points[i * n_lambda + j].outcome.metrics() {
                Some(m) => {
                    let level = (m.e12 / max_e12 * (shades.len() - 1) as f64).round() as usize;
                    shades[level.min(shades.len() - 1)]
                }
                None => ' ',
            };
            print!("{cell} ");
        }
        println!();
    }

    println!("\nmasked (unstable) cells: {}", grid.masked_count());
}
