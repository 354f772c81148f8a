//! Projection operators: Lazard's, McCallum's and Brown-McCallum's.
//!
//! All three map a squarefree basis in `n` variables to a set of polynomials
//! in the first `n - 1` variables. Every output polynomial is normalized the
//! same way (squarefree part, integer primitive, positive leading
//! coefficient, constants dropped, duplicates merged) and remembers where it
//! came from.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{discriminant, resultant, squarefree_part, BasisSet, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenanceKind {
    LeadingCoeff,
    TrailingCoeff,
    Discriminant,
    ResultantOfPair,
    MiddleCoeff,
    /// Content of an input with respect to the main variable (CAD level sets only).
    Content,
}

impl fmt::Display for ProvenanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProvenanceKind::LeadingCoeff => "leading-coeff",
            ProvenanceKind::TrailingCoeff => "trailing-coeff",
            ProvenanceKind::Discriminant => "discriminant",
            ProvenanceKind::ResultantOfPair => "resultant-of-pair",
            ProvenanceKind::MiddleCoeff => "middle-coeff",
            ProvenanceKind::Content => "content",
        };
        f.write_str(s)
    }
}

/// Where a projection polynomial came from: the kind of construction and
/// the indices of the source elements (basis elements, or inputs for contents).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub sources: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionEntry {
    pub polynomial: Polynomial,
    pub provenance: Vec<Provenance>,
}

/// A normalized set of polynomials in one fewer variable, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSet {
    nvars: usize,
    entries: Vec<ProjectionEntry>,
}

impl ProjectionSet {
    pub fn empty(nvars: usize) -> Self {
        ProjectionSet {
            nvars,
            entries: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[ProjectionEntry] {
        &self.entries
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter().map(|e| &e.polynomial)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.entries
            .binary_search_by(|e| e.polynomial.cmp(p))
            .is_ok()
    }

    pub fn is_subset_of(&self, other: &ProjectionSet) -> bool {
        self.polynomials().all(|p| other.contains(p))
    }

    /// Normalizes `p` (given in `nvars + 1` or `nvars` variables, not using
    /// the dropped one) and records it.
    pub(crate) fn insert(&mut self, p: &Polynomial, provenance: Provenance) {
        let Some(p) = normalize(p, self.nvars) else { return };
        match self.entries.binary_search_by(|e| e.polynomial.cmp(&p)) {
            Ok(i) => {
                let prov = &mut self.entries[i].provenance;
                if !prov.contains(&provenance) {
                    prov.push(provenance);
                    prov.sort();
                }
            }
            Err(i) => self.entries.insert(
                i,
                ProjectionEntry {
                    polynomial: p,
                    provenance: vec![provenance],
                },
            ),
        }
    }

    pub fn max_total_degree(&self) -> u32 {
        self.polynomials().map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn sum_total_degree(&self) -> u32 {
        self.polynomials().map(Polynomial::total_degree).sum()
    }
}

/// Squarefree, integer-primitive, sign-normalized form of `p` in `nvars`
/// variables, or `None` for constants (including zero).
pub fn normalize(p: &Polynomial, nvars: usize) -> Option<Polynomial> {
    if p.is_constant() {
        return None;
    }
    assert!(
        p.max_var().is_some_and(|v| v < nvars),
        "projection polynomial uses the eliminated variable"
    );
    let q = squarefree_part(p);
    Some(if q.nvars() == nvars {
        q
    } else {
        q.remap_vars(nvars, |i| i)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionOperator {
    Lazard,
    #[serde(rename = "mccallum")]
    McCallum,
    #[serde(rename = "brown-mccallum")]
    BrownMcCallum,
}

impl fmt::Display for ProjectionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionOperator::Lazard => "lazard",
            ProjectionOperator::McCallum => "mccallum",
            ProjectionOperator::BrownMcCallum => "brown-mccallum",
        })
    }
}

fn project(basis: &BasisSet, op: ProjectionOperator) -> Result<ProjectionSet> {
    let var = basis.main_var();
    if var == 0 {
        return Err(Error::DegreeTooLow {
            op: "projection (number of variables)",
            required: 2,
            found: 1,
        });
    }
    let mut out = ProjectionSet::empty(var);
    let elements = basis.elements();
    for (i, f) in elements.iter().enumerate() {
        let coeffs = f.coefficients_in(var);
        let d = coeffs.len() - 1;
        out.insert(
            &coeffs[d],
            Provenance {
                kind: ProvenanceKind::LeadingCoeff,
                sources: vec![i],
            },
        );
        if op != ProjectionOperator::BrownMcCallum {
            out.insert(
                &coeffs[0],
                Provenance {
                    kind: ProvenanceKind::TrailingCoeff,
                    sources: vec![i],
                },
            );
        }
        if op == ProjectionOperator::McCallum {
            for c in &coeffs[1..d] {
                out.insert(
                    c,
                    Provenance {
                        kind: ProvenanceKind::MiddleCoeff,
                        sources: vec![i],
                    },
                );
            }
        }
        if d >= 2 {
            out.insert(
                &discriminant(f, var)?,
                Provenance {
                    kind: ProvenanceKind::Discriminant,
                    sources: vec![i],
                },
            );
        }
        for (j, g) in elements.iter().enumerate().skip(i + 1) {
            out.insert(
                &resultant(f, g, var)?,
                Provenance {
                    kind: ProvenanceKind::ResultantOfPair,
                    sources: vec![i, j],
                },
            );
        }
    }
    Ok(out)
}

/// Leading coefficients, trailing coefficients, discriminants and pairwise
/// resultants of the basis elements.
pub fn lazard_projection(basis: &BasisSet) -> Result<ProjectionSet> {
    project(basis, ProjectionOperator::Lazard)
}

/// The Lazard set plus every middle coefficient.
pub fn mccallum_projection(basis: &BasisSet) -> Result<ProjectionSet> {
    project(basis, ProjectionOperator::McCallum)
}

/// The Lazard set without the trailing coefficients.
pub fn brown_mccallum_projection(basis: &BasisSet) -> Result<ProjectionSet> {
    project(basis, ProjectionOperator::BrownMcCallum)
}

pub fn projection(basis: &BasisSet, op: ProjectionOperator) -> Result<ProjectionSet> {
    project(basis, op)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionStats {
    pub operator: ProjectionOperator,
    pub size: usize,
    pub max_total_degree: u32,
    pub sum_total_degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionComparison {
    pub stats: Vec<ProjectionStats>,
    pub brown_mccallum_in_lazard: bool,
    pub lazard_in_mccallum: bool,
    pub brown_mccallum_strictly_smaller: bool,
    pub lazard_strictly_smaller: bool,
    /// Polynomials of the Lazard set missing from Brown-McCallum's.
    #[serde(skip)]
    pub lazard_only: Vec<Polynomial>,
    /// Polynomials of McCallum's set missing from Lazard's.
    #[serde(skip)]
    pub mccallum_only: Vec<Polynomial>,
}

/// Sizes, degrees and the containments `P_BM <= P_L <= P_M`.
pub fn compare_projections(basis: &BasisSet) -> Result<ProjectionComparison> {
    let bm = brown_mccallum_projection(basis)?;
    let l = lazard_projection(basis)?;
    let m = mccallum_projection(basis)?;
    let stats = [
        (ProjectionOperator::BrownMcCallum, &bm),
        (ProjectionOperator::Lazard, &l),
        (ProjectionOperator::McCallum, &m),
    ]
    .iter()
    .map(|(op, s)| ProjectionStats {
        operator: *op,
        size: s.len(),
        max_total_degree: s.max_total_degree(),
        sum_total_degree: s.sum_total_degree(),
    })
    .collect();
    let lazard_only: Vec<Polynomial> = l.polynomials().filter(|p| !bm.contains(p)).cloned().collect();
    let mccallum_only: Vec<Polynomial> = m.polynomials().filter(|p| !l.contains(p)).cloned().collect();
    Ok(ProjectionComparison {
        stats,
        brown_mccallum_in_lazard: bm.is_subset_of(&l),
        lazard_in_mccallum: l.is_subset_of(&m),
        brown_mccallum_strictly_smaller: bm.is_subset_of(&l) && !lazard_only.is_empty(),
        lazard_strictly_smaller: l.is_subset_of(&m) && !mccallum_only.is_empty(),
        lazard_only,
        mccallum_only,
    })
}
