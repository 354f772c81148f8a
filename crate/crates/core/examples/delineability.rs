//! Probes Lazard delineability of every basis element over the full-dimensional
//! cells beneath it, for a cone and a four-variable polynomial.

use lazard_cad::cad::{check_decomposition, vcadl};
use lazard_cad::polyring::parse_polynomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problems: [(&str, &[&str]); 2] = [
        ("z^2 - x*y", &["x", "y", "z"]),
        ("y*w^2 + x*w - y*z^2", &["x", "y", "z", "w"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (text, vars) in problems {
        let f = parse_polynomial(text, vars)?;
        let d = vcadl(&[f], vars.len())?;
        let verdicts = check_decomposition(&d, 8, &mut rng)?;
        let bad = verdicts.iter().filter(|(_, v)| !v.delineable()).count();
        println!(
            "{text}: {} cells, {} checks, {} failures",
            d.cell_count(),
            verdicts.len(),
            bad
        );
    }
    Ok(())
}
