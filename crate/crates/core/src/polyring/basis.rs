use super::gcd::{gcd_normalized, primitive_in};
use super::Polynomial;
use crate::error::{Error, Result};

/// Pairwise coprime, squarefree, primitive polynomials of positive degree in
/// the main variable, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSet {
    var: usize,
    elements: Vec<Polynomial>,
}

impl BasisSet {
    pub fn empty(var: usize) -> Self {
        BasisSet {
            var,
            elements: Vec::new(),
        }
    }

    /// Wraps elements already known to form a basis.
    pub fn from_parts(var: usize, elements: Vec<Polynomial>) -> Self {
        BasisSet { var, elements }
    }

    pub fn main_var(&self) -> usize {
        self.var
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Product of the elements (1 for the empty basis).
    pub fn product(&self, nvars: usize) -> Polynomial {
        self.elements
            .iter()
            .fold(Polynomial::one(nvars), |acc, b| &acc * b)
    }
}

/// Finest squarefree basis of the primitive parts of `polys` with respect to `x_var`.
///
/// Inputs are reduced to their primitive parts with respect to `x_var`;
/// elements of degree 0 in `x_var` contribute nothing. Refinement splits off
/// repeated factors with `gcd(f, df/dx_var)` and then replaces any two
/// elements sharing a factor `h` by `h`, `f/h`, `g/h` until all pairs are
/// coprime. An element divisible by `x_var` (vanishing trailing coefficient)
/// is split into `x_var` and its cofactor.
pub fn squarefree_basis(polys: &[Polynomial], var: usize) -> Result<BasisSet> {
    let mut work: Vec<Polynomial> = Vec::new();
    for f in polys {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_basis"));
        }
        if var >= f.nvars() {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: f.nvars(),
            });
        }
        if f.degree_in(var) > 0 {
            work.push(primitive_in(f, var));
        }
    }
    let Some(nvars) = polys.first().map(Polynomial::nvars) else {
        return Ok(BasisSet::empty(var));
    };
    let x = Polynomial::var(nvars, var);

    // squarefree splitting
    let mut sqf = Vec::new();
    while let Some(f) = work.pop() {
        if f.degree_in(var) == 0 {
            continue;
        }
        let g = gcd_normalized(&f, &f.derivative(var)?);
        if g.degree_in(var) == 0 {
            sqf.push(f);
        } else {
            work.push(f.div_exact(&g).expect("gcd divides").normalized());
            work.push(g);
        }
    }

    // split off x_var
    let mut elements = Vec::new();
    for f in sqf {
        if f.trailing_coefficient_in(var).is_zero() && f != x {
            elements.push(x.clone());
            let rest = f.div_exact(&x).expect("x divides").normalized();
            if rest.degree_in(var) > 0 {
                elements.push(rest);
            }
        } else {
            elements.push(f);
        }
    }

    // coprime refinement
    'outer: loop {
        for i in 0..elements.len() {
            for j in (i + 1)..elements.len() {
                let h = gcd_normalized(&elements[i], &elements[j]);
                if h.degree_in(var) == 0 {
                    continue;
                }
                let fj = elements.swap_remove(j);
                let fi = elements.swap_remove(i);
                for part in [
                    fi.div_exact(&h).expect("gcd divides"),
                    fj.div_exact(&h).expect("gcd divides"),
                    h,
                ] {
                    if part.degree_in(var) > 0 {
                        elements.push(part.normalized());
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    elements.sort();
    elements.dedup();
    Ok(BasisSet { var, elements })
}
