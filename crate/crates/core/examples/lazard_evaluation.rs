//! Lazard evaluation against naive substitution. Substituting (0, 0) into
//! y*z - x kills the polynomial; Lazard evaluation divides out y first.

use lazard_cad::algebraic::Tower;
use lazard_cad::polyring::{format_polynomial, parse_polynomial, Rational};
use lazard_cad::valuation::{expansion_coefficient, lazard_evaluate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["x", "y", "z"];
    let origin = Tower::from_rationals(&[Rational::from_integer(0.into()), Rational::from_integer(0.into())]);
    for text in ["z^2 + y^2 + x^2 - 1", "y*z - x", "x*z^3 - y^2*z + x*y"] {
        let f = parse_polynomial(text, &vars)?;
        let naive = f.substitute_prefix(&origin.as_rationals().unwrap());
        let r = lazard_evaluate(&f, &origin)?;
        let coeff = expansion_coefficient(&f, &origin, r.valuation.entries())?;
        println!(
            "{text}: naive {} | residual {} with valuation {} | expansion coefficient {}",
            format_polynomial(&naive, &vars),
            format_polynomial(&r.residual, &vars),
            r.valuation,
            format_polynomial(&coeff, &vars)
        );
    }
    Ok(())
}
