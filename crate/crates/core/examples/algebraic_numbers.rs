//! Real algebraic numbers: isolation, comparison and exact signs over a tower.

use lazard_cad::algebraic::{isolate_real_roots, RealAlgebraicNumber, Tower, UPoly};
use lazard_cad::polyring::{parse_polynomial, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = UPoly::from_ints(&[-2, 0, 1]);
    let g = UPoly::from_ints(&[-3, 0, 1]);
    let sqrt2 = RealAlgebraicNumber::roots_of(&f)?.pop().unwrap();
    let sqrt3 = RealAlgebraicNumber::roots_of(&g)?.pop().unwrap();
    println!("{sqrt2} < {sqrt3}: {}", sqrt2 < sqrt3);

    let h = UPoly::from_ints(&[0, 0, -1, 0, 1]);
    for (iv, m) in isolate_real_roots(&h)? {
        println!("root in {iv:?} with multiplicity {m}");
    }

    // roots of y^2 - x over x = 2 are +-sqrt(2); x*y - 2 has opposite signs there
    let vars = ["x", "y"];
    let base = Tower::from_rationals(&[Rational::from_integer(2.into())]);
    for root in base.real_roots(&parse_polynomial("y^2 - x", &vars)?)? {
        let t = base.extended(root.coordinate);
        println!("at {t}: sign of x*y - 2 is {}", t.sign_at(&parse_polynomial("x*y - 2", &vars)?)?);
    }
    Ok(())
}
