//! Valuation-invariant CAD with the Lazard projection.
//!
//! Projection runs from `R^n` down to the line: at each level the inputs are
//! split into contents and primitive parts, the primitive parts are refined to
//! a squarefree basis, and the next level receives the contents together with
//! the Lazard projection of the basis. Lifting then builds stacks bottom-up,
//! isolating the real roots of the product of the Lazard evaluations of the
//! basis at each base sample point.
//!
//! Cells are indexed in the usual way: component `k` of an index is odd for a
//! sector and even for a section of the stack at level `k`, counting upward
//! from 1.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebraic::{simplest_rational_between, Coordinate, Sign, Tower};
use crate::error::{Error, Result};
use crate::polyring::{content_and_primitive, squarefree_basis, BasisSet, Polynomial, Rational};
use crate::projection::{lazard_projection, normalize, ProjectionSet, Provenance, ProvenanceKind};
use crate::valuation::{lazard_evaluate, valuation_at, Valuation};

/// Position of a cell: one 1-based entry per level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CellIndex(Vec<u32>);

impl CellIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        CellIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, i: u32) -> CellIndex {
        let mut e = self.0.clone();
        e.push(i);
        CellIndex(e)
    }

    pub fn parent(&self) -> CellIndex {
        CellIndex(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Whether the last component names a section.
    pub fn is_section(&self) -> bool {
        self.0.last().is_some_and(|i| i % 2 == 0)
    }

    /// Number of sector components, the dimension of the cell.
    pub fn dimension(&self) -> usize {
        self.0.iter().filter(|&&i| i % 2 == 1).count()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.0.iter().all(|i| i % 2 == 1)
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sign and valuation of one input polynomial at a cell's sample point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub sign: Sign,
    pub valuation: Valuation,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub index: CellIndex,
    pub sample: Tower,
    /// One entry per input polynomial; filled only at the top level.
    pub signatures: Vec<Signature>,
}

impl Cell {
    pub fn is_section(&self) -> bool {
        self.index.is_section()
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cell", 4)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("kind", if self.is_section() { "section" } else { "sector" })?;
        st.serialize_field("sample", &self.sample)?;
        st.serialize_field("signatures", &self.signatures)?;
        st.end()
    }
}

/// A stack over one base cell: `k` sections and `2k + 1` cells.
#[derive(Clone, Debug, Serialize)]
pub struct Stack {
    pub base: CellIndex,
    /// Multiplicity of each section as a root of the evaluated basis product.
    pub multiplicities: Vec<u32>,
    pub cells: Vec<Cell>,
}

impl Stack {
    pub fn section_count(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn sections(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.is_section())
    }
}

/// Everything computed for one level of the decomposition.
#[derive(Clone, Debug)]
pub struct Level {
    /// Number of variables at this level.
    pub level: usize,
    /// The squarefree basis in the last variable of this level.
    pub basis: Vec<Polynomial>,
    /// Contents plus the Lazard projection of the basis, in one fewer variable.
    pub projection: Option<ProjectionSet>,
    pub stacks: Vec<Stack>,
}

impl Level {
    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.stacks.iter().flat_map(|s| s.cells.iter())
    }

    pub fn cell_count(&self) -> usize {
        self.stacks.iter().map(|s| s.cells.len()).sum()
    }

    pub fn basis_set(&self) -> BasisSet {
        BasisSet::from_parts(self.level - 1, self.basis.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub dimension: usize,
    pub inputs: Vec<Polynomial>,
    /// `levels[k - 1]` describes `R^k`.
    pub levels: Vec<Level>,
}

impl Decomposition {
    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    /// Cells of the top level, sorted by index.
    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.levels.last().into_iter().flat_map(Level::cells)
    }

    pub fn cell_count(&self) -> usize {
        self.levels.last().map_or(0, Level::cell_count)
    }

    /// Sizes of the top-level stacks, in base-cell order.
    pub fn stack_profile(&self) -> Vec<usize> {
        self.levels
            .last()
            .map(|l| l.stacks.iter().map(|s| s.cells.len()).collect())
            .unwrap_or_default()
    }

    pub fn find(&self, index: &CellIndex) -> Option<&Cell> {
        let level = self.levels.get(index.level().checked_sub(1)?)?;
        level.cells().find(|c| c.index == *index)
    }

    /// Per-level projection sets, from `R^{n-1}` down to the line.
    pub fn projections(&self) -> Vec<&ProjectionSet> {
        self.levels.iter().rev().filter_map(|l| l.projection.as_ref()).collect()
    }
}

/// The projection phase alone: one basis and projection set per level.
#[derive(Clone, Debug)]
pub struct ProjectionLevel {
    pub level: usize,
    pub inputs: Vec<Polynomial>,
    pub basis: Vec<Polynomial>,
    pub projection: Option<ProjectionSet>,
}

fn check_inputs(inputs: &[Polynomial], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    for f in inputs {
        if f.nvars() != n {
            return Err(Error::VarCountMismatch {
                left: n,
                right: f.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("CAD input"));
        }
    }
    Ok(())
}

/// Projects `inputs` (in `n` variables) down to `stop_at` variables, returning
/// the levels from `n` downward. `stop_at = 1` computes the full projection.
pub fn project_levels(inputs: &[Polynomial], n: usize, stop_at: usize) -> Result<Vec<ProjectionLevel>> {
    check_inputs(inputs, n)?;
    let stop_at = stop_at.clamp(1, n);
    let mut current: Vec<Polynomial> = inputs.iter().filter(|f| !f.is_constant()).cloned().collect();
    let mut out = Vec::new();
    for k in (stop_at..=n).rev() {
        let var = k - 1;
        let basis = squarefree_basis(&current, var)?;
        let projection = if k > stop_at {
            let mut set = ProjectionSet::empty(var);
            for f in &current {
                let content = if f.degree_in(var) == 0 {
                    f.clone()
                } else {
                    content_and_primitive(f, var)?.0
                };
                if let Some(c) = normalize(&content, var) {
                    set.insert(
                        &c,
                        Provenance {
                            kind: ProvenanceKind::Content,
                            sources: Vec::new(),
                        },
                    );
                }
            }
            for e in lazard_projection(&basis)?.entries() {
                for p in &e.provenance {
                    set.insert(&e.polynomial, p.clone());
                }
            }
            Some(set)
        } else {
            None
        };
        let next: Vec<Polynomial> = projection
            .as_ref()
            .map(|s| s.polynomials().cloned().collect())
            .unwrap_or_default();
        out.push(ProjectionLevel {
            level: k,
            inputs: std::mem::take(&mut current),
            basis: basis.elements().to_vec(),
            projection,
        });
        current = next;
    }
    Ok(out)
}

/// Valuation-invariant CAD of `R^n` for `inputs`.
pub fn vcadl(inputs: &[Polynomial], n: usize) -> Result<Decomposition> {
    let projected = project_levels(inputs, n, 1)?;
    let mut levels: Vec<Level> = Vec::with_capacity(n);
    for pl in projected.into_iter().rev() {
        let basis = BasisSet::from_parts(pl.level - 1, pl.basis.clone());
        let bases: Vec<Cell> = match levels.last() {
            None => vec![Cell {
                index: CellIndex::default(),
                sample: Tower::new(),
                signatures: Vec::new(),
            }],
            Some(prev) => prev.cells().cloned().collect(),
        };
        let mut stacks = Vec::with_capacity(bases.len());
        for base in &bases {
            stacks.push(lift_over_point(&basis, base)?);
        }
        levels.push(Level {
            level: pl.level,
            basis: pl.basis,
            projection: pl.projection,
            stacks,
        });
    }
    let top = levels.last_mut().expect("n >= 1");
    for stack in &mut top.stacks {
        for cell in &mut stack.cells {
            cell.signatures = inputs
                .iter()
                .map(|f| {
                    Ok(Signature {
                        sign: cell.sample.sign_at(f)?,
                        valuation: valuation_at(f, &cell.sample)?,
                    })
                })
                .collect::<Result<_>>()?;
        }
    }
    Ok(Decomposition {
        dimension: n,
        inputs: inputs.to_vec(),
        levels,
    })
}

/// Product of the Lazard evaluations of the basis at `point`.
fn evaluated_product(basis: &BasisSet, point: &Tower) -> Result<Option<Polynomial>> {
    let mut product: Option<Polynomial> = None;
    for f in basis.elements() {
        if f.nvars() != point.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: point.len() + 1,
                found: f.nvars(),
            });
        }
        let r = lazard_evaluate(f, point)?.residual;
        product = Some(match product {
            None => r,
            Some(p) => &p * &r,
        });
    }
    Ok(product)
}

/// Roots of the evaluated basis product over `point`, with isolating
/// intervals refined until neighbours are strictly separated.
fn separated_roots(basis: &BasisSet, point: &Tower) -> Result<Vec<(Tower, u32)>> {
    let Some(product) = evaluated_product(basis, point)? else {
        return Ok(Vec::new());
    };
    let roots = point.real_roots(&product)?;
    let towers: Vec<(Tower, u32)> = roots
        .into_iter()
        .map(|r| (point.extended(r.coordinate), r.multiplicity))
        .collect();
    let k = point.len();
    let mut width = Rational::one();
    loop {
        let separated = towers.windows(2).all(|w| {
            w[0].0.coordinate(k).interval().hi() < w[1].0.coordinate(k).interval().lo()
        });
        if separated {
            return Ok(towers);
        }
        width /= Rational::from_integer(16.into());
        for (t, _) in &towers {
            t.refine_to(&width)?;
        }
    }
}

fn upper_bound_sample(x: &Rational) -> Rational {
    Rational::from_integer(x.ceil().to_integer()) + Rational::one()
}

fn lower_bound_sample(x: &Rational) -> Rational {
    Rational::from_integer(x.floor().to_integer()) - Rational::one()
}

/// Builds the stack over `base` for the basis (in `base.level() + 1` variables).
pub fn lift_over_point(basis: &BasisSet, base: &Cell) -> Result<Stack> {
    let point = &base.sample;
    let roots = separated_roots(basis, point)?;
    let k = point.len();
    let mut cells = Vec::with_capacity(2 * roots.len() + 1);
    let sector = |i: u32, value: Rational| Cell {
        index: base.index.child(i),
        sample: point.extended(Coordinate::Rational(value)),
        signatures: Vec::new(),
    };
    if roots.is_empty() {
        cells.push(sector(1, Rational::zero()));
    } else {
        let first = roots[0].0.coordinate(k).interval();
        cells.push(sector(1, lower_bound_sample(first.lo())));
        for (i, (t, _)) in roots.iter().enumerate() {
            let idx = 2 * i as u32 + 2;
            cells.push(Cell {
                index: base.index.child(idx),
                sample: t.clone(),
                signatures: Vec::new(),
            });
            let here = t.coordinate(k).interval();
            let value = match roots.get(i + 1) {
                Some((next, _)) => simplest_rational_between(here.hi(), next.coordinate(k).interval().lo()),
                None => upper_bound_sample(here.hi()),
            };
            cells.push(sector(idx + 1, value));
        }
    }
    Ok(Stack {
        base: base.index.clone(),
        multiplicities: roots.iter().map(|(_, m)| *m).collect(),
        cells,
    })
}

/// One probe disagreeing with the cell's sample point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub point: Vec<Rational>,
    pub valuation: Valuation,
    pub multiplicities: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelineabilityVerdict {
    pub cell: CellIndex,
    pub probes: usize,
    pub valuation: Valuation,
    pub multiplicities: Vec<u32>,
    pub counterexample: Option<Counterexample>,
}

impl DelineabilityVerdict {
    pub fn delineable(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn section_count(&self) -> usize {
        self.multiplicities.len()
    }
}

fn stack_shape(f: &Polynomial, point: &Tower) -> Result<(Valuation, Vec<u32>)> {
    let r = lazard_evaluate(f, point)?;
    let roots = point.real_roots(&r.residual)?;
    Ok((r.valuation, roots.iter().map(|x| x.multiplicity).collect()))
}

/// A random rational strictly inside `(lo, hi)`; either end may be open.
fn random_between<R: Rng>(rng: &mut R, lo: Option<&Rational>, hi: Option<&Rational>) -> Rational {
    let t = Rational::new(rng.gen_range(1..1024).into(), 1024.into());
    let span = Rational::from_integer(rng.gen_range(1..4).into());
    match (lo, hi) {
        (Some(a), Some(b)) => a + (b - a) * t,
        (Some(a), None) => a + span * t,
        (None, Some(b)) => b - span * t,
        (None, None) => (t - Rational::new(1.into(), 2.into())) * span * Rational::from_integer(4.into()),
    }
}

/// A random rational point of the full-dimensional cell `index`, found by
/// descending the cylindrical structure of `decomposition`.
pub fn random_point_in_cell<R: Rng>(decomposition: &Decomposition, index: &CellIndex, rng: &mut R) -> Result<Vec<Rational>> {
    if !index.is_full_dimensional() {
        return Err(Error::NotFullDimensional(index.to_string()));
    }
    let mut point = Tower::new();
    for (j, &i) in index.entries().iter().enumerate() {
        let level = decomposition
            .levels
            .get(j)
            .ok_or_else(|| Error::DimensionMismatch {
                expected: decomposition.dimension,
                found: index.level(),
            })?;
        let roots = separated_roots(&level.basis_set(), &point)?;
        let s = (i as usize - 1) / 2;
        if s > roots.len() {
            return Err(Error::Invariant(format!(
                "probe over {point} has {} sections, cell {index} needs {s}",
                roots.len()
            )));
        }
        let below = s.checked_sub(1).map(|b| roots[b].0.coordinate(j).interval().hi().clone());
        let above = roots.get(s).map(|(t, _)| t.coordinate(j).interval().lo().clone());
        let x = random_between(rng, below.as_ref(), above.as_ref());
        point.push_rational(x);
    }
    Ok(point.as_rationals().expect("rational probe"))
}

/// Checks Lazard delineability of `f` over full-dimensional cells of level
/// `f.nvars() - 1`: at `probes` random points of each cell, the valuation
/// from Lazard evaluation and the multiplicities of the real roots of the
/// residual must match those at the cell's sample point.
pub fn check_delineability<R: Rng>(
    decomposition: &Decomposition,
    f: &Polynomial,
    cells: &[CellIndex],
    probes: usize,
    rng: &mut R,
) -> Result<Vec<DelineabilityVerdict>> {
    let k = f.nvars().checked_sub(1).filter(|&k| k >= 1 && k <= decomposition.dimension).ok_or(
        Error::DimensionMismatch {
            expected: decomposition.dimension,
            found: f.nvars(),
        },
    )?;
    let mut out = Vec::with_capacity(cells.len());
    for index in cells {
        if !index.is_full_dimensional() {
            return Err(Error::NotFullDimensional(index.to_string()));
        }
        if index.level() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: index.level(),
            });
        }
        let cell = decomposition
            .find(index)
            .ok_or_else(|| Error::InvalidArgument(format!("no cell {index}")))?;
        let (valuation, multiplicities) = stack_shape(f, &cell.sample)?;
        let mut counterexample = None;
        for _ in 0..probes {
            let q = random_point_in_cell(decomposition, index, rng)?;
            let (v, m) = stack_shape(f, &Tower::from_rationals(&q))?;
            if v != valuation || m != multiplicities {
                counterexample = Some(Counterexample {
                    point: q,
                    valuation: v,
                    multiplicities: m,
                });
                break;
            }
        }
        out.push(DelineabilityVerdict {
            cell: index.clone(),
            probes,
            valuation,
            multiplicities,
            counterexample,
        });
    }
    Ok(out)
}

/// Full-dimensional cells of level `k`.
pub fn full_dimensional_cells(decomposition: &Decomposition, k: usize) -> Vec<CellIndex> {
    decomposition
        .level(k)
        .cells()
        .filter(|c| c.index.is_full_dimensional())
        .map(|c| c.index.clone())
        .collect()
}

/// Probes every basis element of every level above the line over the
/// full-dimensional cells beneath it.
pub fn check_decomposition<R: Rng>(decomposition: &Decomposition, probes: usize, rng: &mut R) -> Result<Vec<(Polynomial, DelineabilityVerdict)>> {
    let mut out = Vec::new();
    for k in 2..=decomposition.dimension {
        let cells = full_dimensional_cells(decomposition, k - 1);
        for f in &decomposition.level(k).basis {
            for v in check_delineability(decomposition, f, &cells, probes, rng)? {
                out.push((f.clone(), v));
            }
        }
    }
    Ok(out)
}

/// One row of [`signature_table`].
#[derive(Clone, Debug, Serialize)]
pub struct SignatureRow {
    pub index: CellIndex,
    pub signatures: Vec<Signature>,
}

/// Signatures of the top-level cells, sorted by index.
pub fn signature_table(decomposition: &Decomposition) -> Vec<SignatureRow> {
    let mut rows: Vec<SignatureRow> = decomposition
        .cells()
        .map(|c| SignatureRow {
            index: c.index.clone(),
            signatures: c.signatures.clone(),
        })
        .collect();
    rows.sort_by(|a, b| a.index.cmp(&b.index));
    rows
}

/// Whether every top-level cell sample is rational in all coordinates.
pub fn all_samples_rational(decomposition: &Decomposition) -> bool {
    decomposition.cells().all(|c| c.sample.as_rationals().is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, vars).unwrap()
    }

    #[test]
    fn line() {
        let d = vcadl(&[p("x^2 - 1", &["x"])], 1).unwrap();
        assert_eq!(d.cell_count(), 5);
        let samples: Vec<_> = d.cells().map(|c| c.sample.as_rationals().unwrap()[0].clone()).collect();
        assert_eq!(samples, vec![rat(-2, 1), rat(-1, 1), rat(0, 1), rat(1, 1), rat(2, 1)]);
        let idx: Vec<_> = d.cells().map(|c| c.index.entries()[0]).collect();
        assert_eq!(idx, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn circle() {
        let d = vcadl(&[p("x^2 + y^2 - 1", &["x", "y"])], 2).unwrap();
        assert_eq!(d.cell_count(), 13);
        assert_eq!(d.stack_profile(), vec![1, 3, 5, 3, 1]);
        let at = |i: &[u32]| d.find(&CellIndex::new(i.to_vec())).unwrap().signatures[0].valuation.entries().to_vec();
        assert_eq!(at(&[2, 2]), vec![0, 2]);
        assert_eq!(at(&[4, 2]), vec![0, 2]);
        assert_eq!(at(&[3, 2]), vec![0, 1]);
        assert_eq!(at(&[3, 4]), vec![0, 1]);
        assert_eq!(at(&[3, 3]), vec![0, 0]);
    }

    #[test]
    fn lifting_uses_lazard_evaluation() {
        let vars = ["x", "y", "z"];
        let basis = squarefree_basis(&[p("y*z - x", &vars)], 2).unwrap();
        let base = Cell {
            index: CellIndex::new(vec![2, 2]),
            sample: Tower::from_rationals(&[rat(0, 1), rat(0, 1)]),
            signatures: Vec::new(),
        };
        let s = lift_over_point(&basis, &base).unwrap();
        assert_eq!(s.cells.len(), 3);
        assert_eq!(s.cells[1].sample.as_rationals().unwrap()[2], rat(0, 1));
        let basis = squarefree_basis(&[p("x^2 + y^2 - 1", &["x", "y"])], 1).unwrap();
        let base = Cell {
            index: CellIndex::new(vec![5]),
            sample: Tower::from_rationals(&[rat(2, 1)]),
            signatures: Vec::new(),
        };
        assert_eq!(lift_over_point(&basis, &base).unwrap().cells.len(), 1);
    }

    #[test]
    fn delineability_over_the_circle() {
        let f = p("x^2 + y^2 - 1", &["x", "y"]);
        let d = vcadl(&[f.clone()], 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = check_delineability(&d, &f, &[CellIndex::new(vec![3])], 8, &mut rng).unwrap();
        assert!(v[0].delineable());
        assert_eq!(v[0].multiplicities, vec![1, 1]);
        let err = check_delineability(&d, &f, &[CellIndex::new(vec![2])], 8, &mut rng).unwrap_err();
        assert!(matches!(err, Error::NotFullDimensional(_)));
    }

    #[test]
    fn empty_input() {
        let d = vcadl(&[], 2).unwrap();
        assert_eq!(d.cell_count(), 1);
        assert_eq!(signature_table(&d)[0].signatures.len(), 0);
        assert!(vcadl(&[Polynomial::zero(1)], 1).is_err());
    }
}
