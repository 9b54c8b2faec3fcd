//! The three window counters at one prime: single parameters 1..=T,
//! Farey pairs, and a sum set U + V. Each count divided by the number of
//! surviving parameters should approach the Sato-Tate measure of the
//! window as p grows.

use frobenius_lab::family::CurveFamily;
use frobenius_lab::harmonic::{angle_counter_b, angle_counter_c, angle_counter_d};
use frobenius_lab::params::farey_count;
use frobenius_lab::stats::{fiber_census, st_density, AngleWindow};

fn main() -> frobenius_lab::Result<()> {
    let family = CurveFamily::j_family();
    let p = 4003u64;
    let t = 12u64;
    let census = fiber_census(&family, p)?;
    let window = AngleWindow::new(
        std::f64::consts::FRAC_PI_3,
        2.0 * std::f64::consts::FRAC_PI_3,
    )?;
    println!(
        "j-family, p = {p}, window [pi/3, 2pi/3], mu_ST = {:.5}",
        st_density(&window)
    );

    let c = angle_counter_c(&census, t, &window, false)?;
    println!(
        "C: {c:>5} of {t:>5} integers t <= {t}, ratio {:.4}",
        c as f64 / t as f64
    );

    let pairs = farey_count(t) * farey_count(t);
    let b = angle_counter_b(&census, t, &window, false)?;
    println!(
        "B: {b:>5} of {pairs:>5} Farey pairs (T = {t}), ratio {:.4}",
        b as f64 / pairs as f64
    );

    let u: Vec<i64> = (1..=40).collect();
    let v: Vec<i64> = (1..=40).collect();
    let d = angle_counter_d(&census, &u, &v, &window, false)?;
    let total = (u.len() * v.len()) as f64;
    println!(
        "D: {d:>5} of {:>5} sum-set pairs, ratio {:.4}",
        u.len() * v.len(),
        d as f64 / total
    );
    Ok(())
}
