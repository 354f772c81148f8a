//! Lazard, McCallum and Brown-McCallum projections of a squarefree basis,
//! with provenance and the containment check.

use lazard_cad::polyring::{format_polynomial, parse_polynomial, squarefree_basis};
use lazard_cad::projection::{compare_projections, lazard_projection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["x", "y", "z", "w"];
    let f = parse_polynomial("y*w^2 + x*w - y*z^2", &vars)?;
    let basis = squarefree_basis(&[f], 3)?;
    let p = lazard_projection(&basis)?;
    for e in p.entries() {
        let kinds: Vec<String> = e.provenance.iter().map(|p| p.kind.to_string()).collect();
        println!("{:<24} {}", format_polynomial(&e.polynomial, &vars[..3]), kinds.join(", "));
    }
    let c = compare_projections(&basis)?;
    for s in &c.stats {
        println!("{:<16} {} polynomials, degree sum {}", s.operator, s.size, s.sum_total_degree);
    }
    println!(
        "BM in L: {} (strict {}), L in M: {} (strict {})",
        c.brown_mccallum_in_lazard, c.brown_mccallum_strictly_smaller, c.lazard_in_mccallum, c.lazard_strictly_smaller
    );
    Ok(())
}
