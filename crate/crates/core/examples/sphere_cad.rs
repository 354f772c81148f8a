//! Valuation-invariant CAD of the unit sphere, with a stack summary per base cell.

use lazard_cad::cad::vcadl;
use lazard_cad::polyring::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["x", "y", "z"];
    let f = parse_polynomial("x^2 + y^2 + z^2 - 1", &vars)?;
    let d = vcadl(&[f], 3)?;
    for k in 1..=3 {
        let level = d.level(k);
        println!("level {k}: {} cells, basis size {}", level.cell_count(), level.basis.len());
    }
    for stack in &d.level(3).stacks {
        println!("over {}: {} cells", stack.base, stack.cells.len());
    }
    println!("total {}", d.cell_count());
    Ok(())
}
