//! Lazard valuations and orders at a few points, including a point with an
//! irrational coordinate.

use lazard_cad::algebraic::{Interval, Tower};
use lazard_cad::polyring::{parse_polynomial, Rational};
use lazard_cad::valuation::{order_at, valuation_at, valuation_at_rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_polynomial("x1*x2^2 + x1^2*x2", &["x1", "x2"])?;
    for p in [[0, 0], [1, 0], [0, 1], [2, 3]] {
        let pt = [q(p[0]), q(p[1])];
        println!("v_{:?}(f) = {}  ord = {}", p, valuation_at_rational(&f, &pt)?, order_at(&f, &pt)?);
    }

    let cone = parse_polynomial("z^2 - x*y", &["x", "y", "z"])?;
    for a in [-1, 0, 1, 5] {
        let pt = [q(a), q(0), q(0)];
        println!("cone at ({a},0,0): valuation {} order {}", valuation_at_rational(&cone, &pt)?, order_at(&cone, &pt)?);
    }

    // the circle at (sqrt(1/2), sqrt(1/2))
    let vars = ["x", "y"];
    let circle = parse_polynomial("x^2 + y^2 - 1", &vars)?;
    let mut t = Tower::new();
    t.push_algebraic(parse_polynomial("2*x^2 - 1", &vars)?, Interval::new(q(0), q(1))?)?;
    t.push_algebraic(parse_polynomial("x^2 + y^2 - 1", &vars)?, Interval::new(q(0), q(1))?)?;
    println!("circle at {t}: {}", valuation_at(&circle, &t)?);
    Ok(())
}
