//! One pass over every fiber of the j-line family at a medium prime:
//! census size, excluded fibers, and how evenly the traces fall into
//! residue classes mod ell.

use frobenius_lab::family::CurveFamily;
use frobenius_lab::stats::{census_max_deviation, census_mod_ell, fiber_census};

fn main() -> frobenius_lab::Result<()> {
    let family = CurveFamily::j_family();
    let p = 1009u64;
    let ell = 17u64;
    let census = fiber_census(&family, p)?;
    println!(
        "j-family at p = {p}: {} fibers, {} excluded",
        census.size(),
        census.excluded()
    );

    let expected = census.size() as f64 / ell as f64;
    println!("\ntrace classes mod {ell} (expected {expected:.1} each):");
    for a in 0..ell {
        let n = census_mod_ell(&census, ell, a)?;
        println!("  a_w = {a:>2} mod {ell}: {n}");
    }
    let dev = census_max_deviation(&census, ell)?;
    println!("max deviation {dev:.1}, sqrt(p) = {:.1}", (p as f64).sqrt());
    Ok(())
}
