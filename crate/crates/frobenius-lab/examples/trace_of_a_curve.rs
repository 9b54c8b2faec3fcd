//! Traces, angles and splitting fields of one curve at a handful of primes.

use frobenius_lab::curves::{frobenius_angle, frobenius_field_disc, CurveModP};

fn main() -> frobenius_lab::Result<()> {
    let (a, b) = (-2, 3);
    println!("E: y^2 = x^3 + {a}x + {b}");
    println!("{:>6} {:>6} {:>10} {:>8}", "p", "a_p", "angle", "disc");
    for p in [5u64, 11, 101, 1009, 10007] {
        let curve = CurveModP::new(p, a, b)?;
        let t = curve.trace();
        let theta = frobenius_angle(t, p)?;
        let disc = if t == 0 {
            "ss".to_string() // supersingular: no imaginary quadratic field
        } else {
            frobenius_field_disc(t, p)?.to_string()
        };
        println!("{p:>6} {t:>6} {theta:>10.6} {disc:>8}");
        assert!((t as i128) * (t as i128) <= 4 * p as i128);
    }
    Ok(())
}
