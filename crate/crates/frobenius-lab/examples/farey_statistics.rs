//! Farey parameter sets mod p: counts against the quadratic asymptotic,
//! then the coincidence and additive-energy statistics with their Parseval
//! counterparts. The two identities sum |S(m)|^2 and |S(m)|^4 over all
//! frequencies and must reproduce p*Q and p*V to rounding.

use frobenius_lab::params::{
    additive_energy_v, coincidence_q, farey_count, residue_histogram, ParamSet,
};

fn main() -> frobenius_lab::Result<()> {
    println!("{:>6} {:>10} {:>12}", "T", "#F(T)", "(6/pi^2)T^2");
    for t in [10u64, 100, 1000] {
        let exact = farey_count(t);
        let asym = 6.0 / std::f64::consts::PI.powi(2) * (t * t) as f64;
        println!("{t:>6} {exact:>10} {asym:>12.1}");
    }

    let (t, p) = (20u64, 211u64);
    let q = coincidence_q(t, p)?;
    let v = additive_energy_v(t, p)?;
    println!("\nT = {t}, p = {p}: Q = {q}, V = {v}");

    let hist = residue_histogram(&ParamSet::farey(t)?, p)?;
    let sums = hist.expsums_all();
    let s2: f64 = sums.iter().map(|s| s.norm_sqr()).sum();
    let s4: f64 = sums.iter().map(|s| s.norm_sqr().powi(2)).sum();
    println!("sum |S|^2 = {s2:.3}  (p Q = {})", p * q);
    println!("sum |S|^4 = {s4:.3}  (p V = {})", p as u128 * v);
    Ok(())
}
