//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails that is not listed in `KNOWN_UNATTAINABLE`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lazard_cad::algebraic::{isolate_real_roots, Tower, UPoly};
use lazard_cad::cad::{check_decomposition, vcadl};
use lazard_cad::polyring::{int, parse_polynomial, rat, resultant, squarefree_basis, Polynomial, Rational};
use lazard_cad::valuation::{
    curve_order, evaluator_for, expansion_coefficient, lazard_evaluate, lex_compare, valuation_at_rational, Evaluator,
    MonomialCurve, Valuation,
};
use lazard_cad::projection::compare_projections;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Criteria that cannot pass as stated, with the reason printed next to the
/// failure.
const KNOWN_UNATTAINABLE: [(u32, &str); 1] = [(
    5,
    "(18,9,3) violates the evaluator inequality for the discriminant valuation (0,2,0): c1 >= 1 + 2*9 = 19",
)];

fn p(s: &str, vars: &[&str]) -> Polynomial {
    parse_polynomial(s, vars).unwrap()
}

fn v(e: &[u32]) -> Valuation {
    Valuation::new(e.to_vec())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn paper_examples() -> Outcome {
    let x12 = ["x1", "x2"];
    let f = p("x1*x2^2 + x1^2*x2", &x12);
    for (pt, expected) in [([0, 0], [1, 2]), ([1, 0], [0, 1]), ([0, 1], [1, 0])] {
        let got = valuation_at_rational(&f, &[rat(pt[0], 1), rat(pt[1], 1)]).map_err(|e| e.to_string())?;
        ensure(got == v(&expected), || format!("v_{pt:?}(x1*x2^2 + x1^2*x2) = {got}"))?;
    }
    let g = p("x^2 - x^3", &["x"]);
    for (a, e) in [(0, 2), (1, 1)] {
        let got = valuation_at_rational(&g, &[rat(a, 1)]).map_err(|e| e.to_string())?;
        ensure(got == v(&[e]), || format!("v_{a}(x^2 - x^3) = {got}"))?;
    }
    let vars = ["x", "y", "z"];
    let origin = Tower::from_rationals(&[rat(0, 1), rat(0, 1)]);
    for (text, residual, vt) in [("z^2 + y^2 + x^2 - 1", "z^2 - 1", [0, 0]), ("y*z - x", "z", [0, 1])] {
        let r = lazard_evaluate(&p(text, &vars), &origin).map_err(|e| e.to_string())?;
        ensure(r.residual == p(residual, &vars) && r.valuation == v(&vt), || {
            format!("Lazard evaluation of {text} gave {:?} {}", r.residual, r.valuation)
        })?;
    }
    let gs = [("x^2 + 4*y^2*z^2", [0, 2, 0], [0, 2, 2]), ("y", [0, 1, 0], [0, 1, 0]), ("-y*z^2", [0, 1, 0], [0, 1, 2])];
    for (text, axis, origin_v) in gs {
        let g = p(text, &vars);
        for z in [-2, 1, 3] {
            let got = valuation_at_rational(&g, &[rat(0, 1), rat(0, 1), rat(z, 1)]).map_err(|e| e.to_string())?;
            ensure(got == v(&axis), || format!("{text} at (0,0,{z}) = {got}"))?;
        }
        let got = valuation_at_rational(&g, &vec![rat(0, 1); 3]).map_err(|e| e.to_string())?;
        ensure(got == v(&origin_v), || format!("{text} at the origin = {got}"))?;
    }
    Ok("all exact".into())
}

fn circle() -> Outcome {
    let d = vcadl(&[p("x^2 + y^2 - 1", &["x", "y"])], 2).map_err(|e| e.to_string())?;
    ensure(d.cell_count() == 13, || format!("{} cells", d.cell_count()))?;
    ensure(d.stack_profile() == vec![1, 3, 5, 3, 1], || format!("profile {:?}", d.stack_profile()))?;
    let mut sections = Vec::new();
    for c in d.cells().filter(|c| c.is_section()) {
        let s = c.sample.as_rationals().ok_or("irrational circle section")?;
        let on_circle = &s[0] * &s[0] + &s[1] * &s[1] == int(1);
        ensure(on_circle, || format!("section sample {s:?} off the circle"))?;
        let expected = if s[0].abs() == int(1) { v(&[0, 2]) } else { v(&[0, 1]) };
        ensure(c.signatures[0].valuation == expected, || format!("valuation {} at {s:?}", c.signatures[0].valuation))?;
        sections.push(s);
    }
    ensure(sections.len() == 4, || format!("{} circle sections", sections.len()))?;
    Ok("13 cells, profile (1,3,5,3,1), signatures (0,1)/(0,2)".into())
}

fn sphere() -> Outcome {
    let d = vcadl(&[p("x^2 + y^2 + z^2 - 1", &["x", "y", "z"])], 3).map_err(|e| e.to_string())?;
    let mut oracle = 0;
    for stack in &d.level(3).stacks {
        let base = d.find(&stack.base).ok_or("missing base cell")?;
        let b = base.sample.as_rationals().ok_or("irrational base sample")?;
        let s = int(1) - &b[0] * &b[0] - &b[1] * &b[1];
        let k = if s.is_positive() { 2 } else if s.is_zero() { 1 } else { 0 };
        ensure(stack.section_count() == k, || format!("over {:?}: {} sections, oracle {k}", b, stack.section_count()))?;
        oracle += 2 * k + 1;
    }
    ensure(d.cell_count() == 25 && oracle == 25, || format!("{} cells, oracle {oracle}", d.cell_count()))?;
    Ok("25 cells, matches per-stack enumeration".into())
}

fn valuation_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sums = 0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=4);
        let alpha = random_point(&mut rng, n);
        let f = random_poly_at(&mut rng, &alpha, 4, 4);
        let g = random_poly_at(&mut rng, &alpha, 4, 4);
        let val = |h: &Polynomial| valuation_at_rational(h, &alpha).map_err(|e| e.to_string());
        let (vf, vg) = (val(&f)?, val(&g)?);
        let vfg = val(&(&f * &g))?;
        ensure(vfg == vf.checked_add(&vg).unwrap(), || format!("triple {i}: v(fg) = {vfg}, v(f) + v(g) = {vf} + {vg}"))?;
        let s = &f + &g;
        if !s.is_zero() {
            sums += 1;
            let vs = val(&s)?;
            let m = vf.clone().min(vg.clone());
            ensure(lex_compare(&vs, &m).unwrap().is_ge(), || format!("triple {i}: v(f+g) = {vs} < {m}"))?;
        }
    }
    Ok(format!("1000 products, {sums} sums"))
}

fn monomial_curves() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for i in 0..500 {
        let n = rng.gen_range(1..=4);
        let alpha = random_point(&mut rng, n);
        let g = random_poly_at(&mut rng, &alpha, 4, 4);
        let val = valuation_at_rational(&g, &alpha).map_err(|e| e.to_string())?;
        let c = evaluator_for(std::slice::from_ref(&val), rng.gen_range(1..=3)).map_err(|e| e.to_string())?;
        let curve = MonomialCurve::new(alpha.clone(), c.clone()).map_err(|e| e.to_string())?;
        let order = curve_order(&g, &curve).map_err(|e| e.to_string())?;
        let dot = val.dot(&c).map_err(|e| e.to_string())?;
        ensure(order == dot, || format!("pair {i}: order {order} vs <c,v> = {dot}"))?;
        for u in lex_tuples(&vec![3; n]) {
            let u = Valuation::new(u);
            if val < u {
                ensure(dot < u.dot(&c).unwrap(), || format!("pair {i}: <c,{val}> >= <c,{u}>"))?;
            }
        }
    }
    let c = Evaluator::new(vec![18, 9, 3, 1]).unwrap();
    let vf = [v(&[0, 1, 0, 0]), v(&[0, 1, 0, 1]), v(&[0, 1, 0, 2])];
    let c3 = c.truncated();
    let mut failed = Vec::new();
    if !c.is_valid_for(&vf) {
        failed.push("V_f");
    }
    for (name, set) in [("V_D", v(&[0, 2, 0])), ("V_a2", v(&[0, 1, 0])), ("V_a0", v(&[0, 1, 0]))] {
        if !c3.is_valid_for(&[set]) {
            failed.push(name);
        }
    }
    ensure(failed.is_empty(), || {
        format!("500 curve orders agree; (18,9,3,1) is not an evaluator for {}", failed.join(", "))
    })?;
    Ok("500 curve orders agree; (18,9,3,1) valid".into())
}

fn remark_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..500 {
        let n = rng.gen_range(2..=4);
        let alpha = random_point(&mut rng, n);
        let f = random_poly_at(&mut rng, &alpha, 4, 4);
        let base = Tower::from_rationals(&alpha[..n - 1]);
        let r = lazard_evaluate(&f, &base).map_err(|e| e.to_string())?;
        let e = expansion_coefficient(&f, &base, r.valuation.entries()).map_err(|e| e.to_string())?;
        let oracle = taylor_coefficient(&f, &alpha[..n - 1], r.valuation.entries());
        ensure(!r.residual.is_zero() && r.residual == e && e == oracle, || {
            format!("case {i}: residual {:?}, coefficient {:?}, oracle {:?}", r.residual, e, oracle)
        })?;
    }
    Ok("500 agree".into())
}

fn projection_containment() -> Outcome {
    let (mut bm_strict, mut l_strict) = (0, 0);
    for (text, vars) in PROJECTION_CORPUS {
        let basis = squarefree_basis(&[p(text, vars)], vars.len() - 1).map_err(|e| e.to_string())?;
        let c = compare_projections(&basis).map_err(|e| e.to_string())?;
        ensure(c.brown_mccallum_in_lazard && c.lazard_in_mccallum, || format!("containment fails for {text}"))?;
        bm_strict += usize::from(c.brown_mccallum_strictly_smaller);
        l_strict += usize::from(c.lazard_strictly_smaller);
    }
    ensure(bm_strict > 0 && l_strict > 0, || format!("strict witnesses {bm_strict}/{l_strict}"))?;
    Ok(format!("20 inputs; strict BM<L on {bm_strict}, L<M on {l_strict}"))
}

fn delineability() -> Outcome {
    let corpus: [(&str, &[&str]); 4] = [
        ("x^2 + y^2 - 1", &["x", "y"]),
        ("x^2 + y^2 + z^2 - 1", &["x", "y", "z"]),
        ("y*w^2 + x*w - y*z^2", &["x", "y", "z", "w"]),
        ("z^2 - x*y", &["x", "y", "z"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = 0;
    for (text, vars) in corpus {
        let d = vcadl(&[p(text, vars)], vars.len()).map_err(|e| e.to_string())?;
        for (f, verdict) in check_decomposition(&d, 8, &mut rng).map_err(|e| e.to_string())? {
            ensure(verdict.delineable(), || format!("{text}: {f:?} over {} fails: {:?}", verdict.cell, verdict.counterexample))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} cell checks with 8 probes"))
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..200 {
        let f = random_univariate(&mut rng, 4);
        let g = random_univariate(&mut rng, 4);
        let r = resultant(&Polynomial::univariate(1, 0, &f), &Polynomial::univariate(1, 0, &g), 0).map_err(|e| e.to_string())?;
        let s = sylvester_resultant(&f, &g);
        ensure(r.constant_value() == Some(s.clone()), || format!("pair {i}: {r:?} vs Sylvester {s}"))?;
    }
    for i in 0..200 {
        let c: Vec<Rational> = if i % 2 == 0 { random_univariate(&mut rng, 8) } else { random_univariate_with_roots(&mut rng, 8) };
        let roots = isolate_real_roots(&UPoly::new(c.clone())).map_err(|e| e.to_string())?;
        let sturm = sturm_real_root_count(&c);
        ensure(roots.len() == sturm, || format!("polynomial {i}: {} isolated vs {sturm} Sturm", roots.len()))?;
    }
    Ok("200 resultants, 200 isolations".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Option<u64>, fn() -> Outcome); 9] = [
        (1, "paper examples exact", Some(1), paper_examples),
        (2, "circle CAD", Some(5), circle),
        (3, "sphere CAD", Some(30), sphere),
        (4, "valuation axioms", None, valuation_axioms),
        (5, "monomial-curve oracle", None, monomial_curves),
        (6, "residual equals expansion coefficient", None, remark_equivalence),
        (7, "projection containment", None, projection_containment),
        (8, "delineability spot check", Some(60), delineability),
        (9, "resultant and isolation oracles", None, oracles),
    ];
    let mut unexpected = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(secs) {
                outcome = Err(format!("took {elapsed:.2?}, limit {secs} s"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id);
                println!("criterion {id} FAIL  {name}: {why} ({elapsed:.2?})");
                match known {
                    Some((_, reason)) => println!("            known unattainable: {reason}"),
                    None => unexpected += 1,
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
