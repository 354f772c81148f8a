//! CAD of the plane for the unit circle, printing the signature table.

use lazard_cad::cad::{signature_table, vcadl};
use lazard_cad::polyring::parse_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_polynomial("x^2 + y^2 - 1", &["x", "y"])?;
    let d = vcadl(&[f], 2)?;
    println!("{} cells, stack profile {:?}", d.cell_count(), d.stack_profile());
    for cell in d.cells() {
        let row = &cell.signatures[0];
        println!("{:<8} {:<12} sign {:>2} valuation {}", cell.index, cell.sample, row.sign, row.valuation);
    }
    assert_eq!(signature_table(&d).len(), 13);
    Ok(())
}
