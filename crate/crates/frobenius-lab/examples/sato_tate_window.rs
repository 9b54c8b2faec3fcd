//! Angle histogram of a single non-CM curve against the Sato-Tate measure.
//! Half-open windows partition the primes exactly; the closed-window count
//! for the middle third is what the pi_angle statistic reports.

use frobenius_lab::stats::{
    pi_angle, st_density, trace_values, AngleWindow, StatSource, SweepOptions,
};

fn main() -> frobenius_lab::Result<()> {
    let source = StatSource::fixed(1, 1)?;
    let x = 50_000u64;
    let opts = SweepOptions {
        workers: 4,
        ..Default::default()
    };
    let traces = trace_values(&source, x, &opts)?;
    let m = traces.len() as f64;
    println!("y^2 = x^3 + x + 1, {} good primes up to {x}", traces.len());
    println!(
        "{:>18} {:>8} {:>9} {:>9}",
        "window", "count", "freq", "mu_ST"
    );
    let k = 6;
    for i in 0..k {
        let lo = i as f64 * std::f64::consts::PI / k as f64;
        let hi = (i + 1) as f64 * std::f64::consts::PI / k as f64;
        let w = AngleWindow::new(lo, hi)?;
        let n = traces
            .iter()
            .filter(|&&(p, a)| w.contains_trace_half_open(a, p))
            .count();
        println!(
            "[{lo:>7.4}, {hi:>7.4}) {n:>8} {:>9.5} {:>9.5}",
            n as f64 / m,
            st_density(&w)
        );
    }

    let middle = AngleWindow::new(
        std::f64::consts::FRAC_PI_3,
        2.0 * std::f64::consts::FRAC_PI_3,
    )?;
    let n = pi_angle(&source, &middle, x)?;
    println!(
        "\npi_angle(middle third, x = {x}) = {n}, ratio {:.5} vs mu_ST {:.5}",
        n as f64 / m,
        st_density(&middle)
    );
    Ok(())
}
