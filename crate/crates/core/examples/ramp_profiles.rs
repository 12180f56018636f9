//! Tabulate the closed-form minimal-action ramps next to the linear ramp.
//!
//! ```text
//! cargo run --example ramp_profiles
//! ```

use minaction::ramp::{
    fc_optimal_ramp, garbe_ramp, ising_optimal_ramp, linear_ramp, lz_optimal_ramp, RampSpec,
};

fn main() -> minaction::Result<()> {
    let ramps = [
        ("linear", linear_ramp(&RampSpec::new(-10.0, 10.0, 1.0)?)),
        ("lz", lz_optimal_ramp(-10.0, 1.0)?),
        ("ising N=20", ising_optimal_ramp(0.0, 20)?),
        ("fc", fc_optimal_ramp(0.1, 0.9)?),
        ("garbe", garbe_ramp(0.1, 0.9)?),
    ];

    print!("{:>6}", "s");
    for (name, _) in &ramps {
        print!("{name:>13}");
    }
    println!();
    for i in 0..=10 {
        let s = i as f64 / 10.0;
        print!("{s:>6.2}");
        for (_, r) in &ramps {
            print!("{:>13.6}", r.value(s));
        }
        println!();
    }

    // Slow near the gap minimum, fast far from it.
    let lz = &ramps[1].1;
    println!(
        "\nLandau-Zener slope at s = 0: {:.3}, at s = 0.5: {:.3}",
        lz.derivative(0.0),
        lz.derivative(0.5)
    );
    Ok(())
}
