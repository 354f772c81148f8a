//! Orders along monomial test curves agree with <c, v> for an evaluator c.

use lazard_cad::polyring::{parse_polynomial, Rational};
use lazard_cad::valuation::{curve_order, evaluator_for, valuation_at_rational, Evaluator, MonomialCurve, Valuation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let zero = Rational::from_integer(0.into());
    let g = parse_polynomial("x1*x2^2 + x1^2*x2", &["x1", "x2"])?;
    let v = valuation_at_rational(&g, &[zero.clone(), zero.clone()])?;
    let c = evaluator_for(std::slice::from_ref(&v), 1)?;
    let curve = MonomialCurve::new(vec![zero.clone(); 2], c.clone())?;
    println!("v = {v}, c = {c}, order along curve {} = <c,v> {}", curve_order(&g, &curve)?, v.dot(&c)?);

    let vals: Vec<Valuation> = [[0, 1, 0, 0], [0, 1, 0, 1], [0, 1, 0, 2]].iter().map(|e| Valuation::new(e.to_vec())).collect();
    let paper_c = Evaluator::new(vec![18, 9, 3, 1])?;
    println!("(18,9,3,1) valid for the valuations of f: {}", paper_c.is_valid_for(&vals));
    println!("least evaluator for the same set: {}", evaluator_for(&vals, 1)?);
    // the discriminant has valuation (0,2,0) on the punctured z-axis; with
    // c_2 = 9 the inequality for c_1 needs 1 + 2 * 9
    let d = [Valuation::new(vec![0, 2, 0])];
    let truncated = paper_c.truncated();
    println!("{truncated} valid for (0,2,0): {}", truncated.is_valid_for(&d));
    println!("(19,9,3) valid for (0,2,0): {}", Evaluator::new(vec![19, 9, 3])?.is_valid_for(&d));
    Ok(())
}
