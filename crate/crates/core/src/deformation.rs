//! Deformations `d_t = d + sum t_i psi_i` of a codifferential: exact
//! obstruction checks over the polynomial ring, classification of the
//! specializations at rational points, and the eight solution families of
//! `[d, d] = 0` for a generic quadratic odd coderivation on the 0|2 space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::coderivation::{BasisCoderivation, Coderivation, GradedSpace};
use crate::error::{DeformationError, ModuliError};
use crate::field::Field;
use crate::hochschild::{Cochain, CochainComplex};
use crate::moduli::{classify, codifferential_to_table, standard_codifferential, AlgebraClass};
use crate::parse::{json_rational, parse_rational};
use crate::scalar::{format_rational, rat, Polynomial, Rational};

/// An assignment of rational values to named parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParameterPoint(pub BTreeMap<String, Rational>);

impl ParameterPoint {
    pub fn new<I: IntoIterator<Item = (String, Rational)>>(values: I) -> Self {
        ParameterPoint(values.into_iter().collect())
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn is_origin(&self) -> bool {
        self.0.values().all(Zero::is_zero)
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (name, value)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={}", format_rational(value))?;
        }
        Ok(())
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|(k, v)| (k, v.to_json())))
    }
}

/// `d_t = base + sum_i t_i * direction_i (+ correction)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    name: String,
    base: Cochain,
    directions: Vec<(String, Cochain)>,
    correction: Option<Coderivation<Polynomial>>,
}

impl DeformationFamily {
    /// Checks that `base` is a codifferential and every direction is an odd
    /// quadratic cocycle for it.
    pub fn new(
        name: &str,
        base: Cochain,
        directions: Vec<(String, Cochain)>,
    ) -> Result<Self, DeformationError> {
        let complex = CochainComplex::new(&base)?;
        let mut seen = BTreeSet::new();
        for (parameter, psi) in &directions {
            if !seen.insert(parameter.as_str()) {
                return Err(DeformationError::Malformed(format!(
                    "parameter `{parameter}` appears twice"
                )));
            }
            let quadratic = psi.space() == base.space()
                && psi.degrees().iter().all(|&n| n == 2)
                && psi.terms().all(|(b, _)| b.parity(psi.space()).is_odd());
            if !quadratic {
                return Err(DeformationError::DirectionNotQuadratic {
                    parameter: parameter.clone(),
                });
            }
            if !complex.is_cocycle(psi)? {
                return Err(DeformationError::DirectionNotCocycle {
                    parameter: parameter.clone(),
                });
            }
        }
        Ok(DeformationFamily {
            name: name.to_string(),
            base,
            directions,
            correction: None,
        })
    }

    /// Adds higher-order terms in the parameters, e.g. `t1^2*psi[11->1]`.
    pub fn with_correction(
        mut self,
        correction: Coderivation<Polynomial>,
    ) -> Result<Self, DeformationError> {
        let parameters: BTreeSet<String> = self.parameters().map(str::to_string).collect();
        for (b, c) in correction.terms() {
            if b.degree() != 2 || !b.parity(correction.space()).is_odd() {
                return Err(DeformationError::Malformed(format!(
                    "correction term {} is not odd quadratic",
                    Coderivation::<Rational>::basis(correction.space(), b.clone())
                )));
            }
            if let Some(v) = c.variables().difference(&parameters).next() {
                return Err(DeformationError::Malformed(format!(
                    "correction uses unknown parameter `{v}`"
                )));
            }
        }
        self.correction = Some(correction);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Cochain {
        &self.base
    }

    pub fn directions(&self) -> &[(String, Cochain)] {
        &self.directions
    }

    pub fn correction(&self) -> Option<&Coderivation<Polynomial>> {
        self.correction.as_ref()
    }

    pub fn parameters(&self) -> impl Iterator<Item = &str> {
        self.directions.iter().map(|(p, _)| p.as_str())
    }

    /// `d_t` with polynomial coefficients.
    pub fn polynomial(&self) -> Coderivation<Polynomial> {
        let mut dt = self.base.to_polynomial();
        for (parameter, psi) in &self.directions {
            dt = dt + psi.to_polynomial().scale(&Polynomial::var(parameter));
        }
        if let Some(c) = &self.correction {
            dt = dt + c.clone();
        }
        dt
    }

    /// The families `d2 + t psi[11->1]`, `d5 + t psi[11->2]`, the printed
    /// two-parameter family on `d6`, and (`d6-versal`) that family completed
    /// to a codifferential by second-order terms.
    pub fn builtin(name: &str) -> Result<Self, DeformationError> {
        let space = GradedSpace::odd_plane();
        let dir = |s: &str| Cochain::parse(&space, s).expect("well-formed builtin");
        let d = |k| standard_codifferential(k).expect("standard index");
        match name {
            "d2" => Self::new("d2", d(2), vec![("t".into(), dir("psi[11->1]"))]),
            "d5" => Self::new("d5", d(5), vec![("t".into(), dir("psi[11->2]"))]),
            "d6" => Self::new("d6", d(6), d6_directions(&dir)),
            "d6-versal" => Self::new("d6-versal", d(6), d6_directions(&dir))?.with_correction(
                Coderivation::<Polynomial>::parse(&space, "t1^2*psi[11->1] + t1*t2*psi[11->2]")
                    .expect("well-formed builtin"),
            ),
            other => Err(DeformationError::Malformed(format!(
                "unknown builtin family `{other}`; expected d2, d5, d6 or d6-versal"
            ))),
        }
    }

    /// Reads a family file. Returns the family and its grid override, if any.
    ///
    /// ```json
    /// {
    ///   "name": "d2",
    ///   "base": "psi[22->2]",
    ///   "directions": [{"parameter": "t", "direction": "psi[11->1]"}],
    ///   "correction": "t^2*psi[11->1]",
    ///   "grid": {"t": [1, "-1/3"]}
    /// }
    /// ```
    /// `name`, `correction` and `grid` are optional.
    pub fn from_json(text: &str) -> Result<(Self, Option<Vec<ParameterPoint>>), DeformationError> {
        let file: FamilyFile =
            serde_json::from_str(text).map_err(|e| DeformationError::Malformed(e.to_string()))?;
        let space = GradedSpace::odd_plane();
        let base = Cochain::parse(&space, &file.base)?;
        let mut directions = Vec::new();
        for d in file.directions {
            directions.push((d.parameter, Cochain::parse(&space, &d.direction)?));
        }
        let mut family = Self::new(file.name.as_deref().unwrap_or("custom"), base, directions)?;
        if let Some(c) = file.correction {
            family = family.with_correction(Coderivation::<Polynomial>::parse(&space, &c)?)?;
        }
        let grid = match file.grid {
            None => None,
            Some(axes) => {
                let mut values = BTreeMap::new();
                for (parameter, entries) in axes {
                    if !family.parameters().any(|p| p == parameter) {
                        return Err(DeformationError::Malformed(format!(
                            "grid names unknown parameter `{parameter}`"
                        )));
                    }
                    let parsed = entries
                        .iter()
                        .map(json_rational)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| DeformationError::Malformed(e.message))?;
                    values.insert(parameter, parsed);
                }
                let axes: Vec<(String, Vec<Rational>)> = family
                    .parameters()
                    .map(|p| {
                        let v = values.get(p).cloned().unwrap_or_else(default_grid_values);
                        (p.to_string(), v)
                    })
                    .collect();
                Some(product_grid(&axes))
            }
        };
        Ok((family, grid))
    }
}

fn d6_directions(dir: &dyn Fn(&str) -> Cochain) -> Vec<(String, Cochain)> {
    vec![
        ("t1".into(), dir("psi[21->1] + psi[12->1]")),
        ("t2".into(), dir("psi[21->2] + psi[12->2] + psi[11->1]")),
    ]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    name: Option<String>,
    base: String,
    directions: Vec<DirectionEntry>,
    correction: Option<String>,
    grid: Option<BTreeMap<String, Vec<serde_json::Value>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DirectionEntry {
    parameter: String,
    direction: String,
}

/// Representatives of H^2(d), the infinitesimal deformation directions.
/// On the 0|2 space every quadratic coderivation is odd.
pub fn infinitesimal_basis(d: &Cochain) -> Result<Vec<Cochain>, DeformationError> {
    let report = CochainComplex::new(d)?.cohomology(2)?;
    Ok(report.degrees[2]
        .representatives
        .iter()
        .filter(|r| r.parity().is_ok_and(|p| p.is_odd()))
        .cloned()
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionResult {
    /// `[d_t, d_t]` expanded over the parameter ring.
    pub bracket_polynomial: Coderivation<Polynomial>,
    pub is_zero: bool,
}

pub fn obstruction(f: &DeformationFamily) -> Result<ObstructionResult, DeformationError> {
    let dt = f.polynomial();
    let bracket = dt.bracket(&dt)?;
    Ok(ObstructionResult {
        is_zero: bracket.is_zero(),
        bracket_polynomial: bracket,
    })
}

pub fn specialize(
    f: &DeformationFamily,
    point: &ParameterPoint,
) -> Result<Cochain, DeformationError> {
    Ok(f.polynomial().eval(&point.0)?)
}

/// The sample values {-2, -1, -1/2, 0, 1/2, 1, 2}.
pub fn default_grid_values() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(n, d)| rat(n, d))
        .collect()
}

/// Cartesian product of per-parameter values, first parameter varying slowest.
pub fn product_grid(axes: &[(String, Vec<Rational>)]) -> Vec<ParameterPoint> {
    let mut points = vec![ParameterPoint::default()];
    for (name, values) in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.0.insert(name.clone(), v.clone());
                    q
                })
            })
            .collect();
    }
    points
}

/// The default grid over every parameter of `f`.
pub fn default_grid(f: &DeformationFamily) -> Vec<ParameterPoint> {
    let axes: Vec<(String, Vec<Rational>)> = f
        .parameters()
        .map(|p| (p.to_string(), default_grid_values()))
        .collect();
    product_grid(&axes)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Observation {
    pub point: ParameterPoint,
    pub class: AlgebraClass,
    /// The class over the algebraic closure.
    pub closure_class: AlgebraClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Edge {
    pub source: AlgebraClass,
    pub target: AlgebraClass,
    pub witnesses: Vec<ParameterPoint>,
}

/// Jumps observed from the base class of a family. Edges join closure
/// classes and never loop.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformationGraph {
    pub family: String,
    pub base_class: AlgebraClass,
    pub nodes: BTreeSet<AlgebraClass>,
    pub edges: Vec<Edge>,
    pub observations: Vec<Observation>,
}

impl DeformationGraph {
    pub fn edge_set(&self) -> BTreeSet<(AlgebraClass, AlgebraClass)> {
        self.edges.iter().map(|e| (e.source, e.target)).collect()
    }

    pub fn has_edge(&self, source: AlgebraClass, target: AlgebraClass) -> bool {
        self.edges
            .iter()
            .any(|e| e.source == source && e.target == target)
    }

    /// Points whose specialization lies in `class` over the closure.
    pub fn points_in(&self, class: AlgebraClass) -> impl Iterator<Item = &ParameterPoint> {
        self.observations
            .iter()
            .filter(move |o| o.closure_class == class)
            .map(|o| &o.point)
    }
}

fn classify_codifferential(d: &Cochain) -> Result<AlgebraClass, ModuliError> {
    classify(&codifferential_to_table(d)?)
}

pub fn jump_census(
    f: &DeformationFamily,
    points: &[ParameterPoint],
) -> Result<DeformationGraph, DeformationError> {
    let obs = obstruction(f)?;
    if !obs.is_zero {
        return Err(DeformationError::NonVersal(
            obs.bracket_polynomial.to_string(),
        ));
    }
    let base_class = classify_codifferential(f.base())?.over_closure();
    let mut observations = Vec::with_capacity(points.len());
    let mut witnesses: BTreeMap<AlgebraClass, Vec<ParameterPoint>> = BTreeMap::new();
    for point in points {
        let d = specialize(f, point)?;
        let class = match classify_codifferential(&d) {
            Ok(c) => c,
            Err(ModuliError::NonAssociative(_)) => {
                return Err(DeformationError::NonAssociativeSpecialization {
                    point: point.to_string(),
                })
            }
            Err(e) => return Err(e.into()),
        };
        let closure_class = class.over_closure();
        if closure_class != base_class {
            witnesses
                .entry(closure_class)
                .or_default()
                .push(point.clone());
        }
        observations.push(Observation {
            point: point.clone(),
            class,
            closure_class,
        });
    }
    let mut nodes: BTreeSet<AlgebraClass> = observations.iter().map(|o| o.closure_class).collect();
    nodes.insert(base_class);
    Ok(DeformationGraph {
        family: f.name().to_string(),
        base_class,
        nodes,
        edges: witnesses
            .into_iter()
            .map(|(target, witnesses)| Edge {
                source: base_class,
                target,
                witnesses,
            })
            .collect(),
        observations,
    })
}

/// Entry names of the generic quadratic odd coderivation, row `i` being
/// the output index and columns 1..4 the inputs 11, 12, 21, 22.
pub const GENERIC_ENTRIES: [&str; 8] = ["a11", "a12", "a13", "a14", "a21", "a22", "a23", "a24"];

const COLUMN_INPUTS: [[usize; 2]; 4] = [[1, 1], [1, 2], [2, 1], [2, 2]];

/// `sum a_ij psi[I_j -> i]` with symbolic entries.
pub fn generic_coderivation() -> Coderivation<Polynomial> {
    let space = GradedSpace::odd_plane();
    Coderivation::from_terms(
        &space,
        GENERIC_ENTRIES.iter().enumerate().map(|(n, name)| {
            (
                BasisCoderivation::new(&COLUMN_INPUTS[n % 4], n / 4 + 1),
                Polynomial::var(name),
            )
        }),
    )
}

/// One solution family of `[d, d] = 0`. Families with rational entries are
/// stored multiplied through by `scale`, so that `[d, d]` vanishes exactly
/// when the scaled coderivation squares to zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionFamily {
    /// 1..=8, or 0 for the unconstrained generic coderivation.
    pub index: usize,
    pub assignments: BTreeMap<String, Polynomial>,
    pub scale: Polynomial,
    pub nonvanishing_constraints: Vec<String>,
}

impl SolutionFamily {
    /// The generic coderivation with no relations imposed.
    pub fn generic() -> Self {
        SolutionFamily {
            index: 0,
            assignments: BTreeMap::new(),
            scale: Polynomial::one(),
            nonvanishing_constraints: Vec::new(),
        }
    }

    pub fn new(index: usize) -> Result<Self, DeformationError> {
        let (relations, scale, constraint): (&[&str], &str, Option<&str>) = match index {
            1 => (
                &[
                    "a11=0", "a12=0", "a13=a24", "a14=0", "a21=0", "a22=0", "a23=0",
                ],
                "1",
                None,
            ),
            2 => (
                &[
                    "a11=0", "a12=a24", "a13=0", "a14=0", "a21=0", "a22=0", "a23=0",
                ],
                "1",
                None,
            ),
            3 => (
                &[
                    "a12=0", "a13=0", "a14=0", "a21=0", "a22=0", "a23=0", "a11=a24",
                ],
                "1",
                None,
            ),
            4 => (
                &["a14=0", "a22=0", "a23=0", "a12=a24", "a13=a24"],
                "1",
                None,
            ),
            5 => (
                &["a13=0", "a14=0", "a21=0", "a22=0", "a12=a24", "a23=a11"],
                "1",
                None,
            ),
            6 => (
                &["a12=0", "a14=0", "a21=0", "a23=0", "a13=a24", "a22=a11"],
                "1",
                None,
            ),
            7 => (
                &[
                    "a11=a23^2 - a21*a24",
                    "a12=0",
                    "a13=0",
                    "a14=0",
                    "a21=a21*a23",
                    "a22=a23^2",
                    "a23=a23^2",
                    "a24=a24*a23",
                ],
                "a23",
                Some("a23"),
            ),
            8 => (
                &[
                    "a11=a13^2 - a13*a24 + a14*a23",
                    "a12=a13*a14",
                    "a13=a13*a14",
                    "a14=a14^2",
                    "a21=a13*a23",
                    "a22=a23*a14",
                    "a23=a23*a14",
                    "a24=a24*a14",
                ],
                "a14",
                Some("a14"),
            ),
            _ => {
                return Err(DeformationError::Malformed(format!(
                    "solution family {index} is outside 1..=8"
                )))
            }
        };
        let mut assignments = BTreeMap::new();
        for relation in relations {
            let (lhs, rhs) = relation.split_once('=').expect("relation");
            assignments.insert(
                lhs.to_string(),
                Polynomial::parse(rhs).expect("well-formed relation"),
            );
        }
        Ok(SolutionFamily {
            index,
            assignments,
            scale: Polynomial::parse(scale).expect("well-formed scale"),
            nonvanishing_constraints: constraint.into_iter().map(str::to_string).collect(),
        })
    }

    pub fn all() -> Vec<SolutionFamily> {
        (1..=8)
            .map(|i| Self::new(i).expect("index in range"))
            .collect()
    }

    fn check(&self) -> Result<(), DeformationError> {
        if let Some(bad) = self
            .assignments
            .keys()
            .find(|k| !GENERIC_ENTRIES.contains(&k.as_str()))
        {
            return Err(DeformationError::Malformed(format!(
                "`{bad}` is not an entry of the generic matrix"
            )));
        }
        if self.scale.is_zero() {
            return Err(DeformationError::Malformed("zero scale".into()));
        }
        Ok(())
    }

    /// The (scaled) coderivation of the family.
    pub fn coderivation(&self) -> Result<Coderivation<Polynomial>, DeformationError> {
        self.check()?;
        let mut map = self.assignments.clone();
        for name in GENERIC_ENTRIES {
            map.entry(name.to_string())
                .or_insert_with(|| Polynomial::var(name) * self.scale.clone());
        }
        Ok(generic_coderivation().map_coefficients(|c| c.substitute(&map)))
    }

    pub fn free_variables(&self) -> Result<BTreeSet<String>, DeformationError> {
        let d = self.coderivation()?;
        Ok(d.terms().flat_map(|(_, c)| c.variables()).collect())
    }
}

/// Whether `[d, d]` vanishes identically on the family.
pub fn verify_solution_family(s: &SolutionFamily) -> Result<bool, DeformationError> {
    let d = s.coderivation()?;
    Ok(d.bracket(&d)?.is_zero())
}

/// Classifies the family at a rational assignment of its free variables.
pub fn sample_solution_family(
    s: &SolutionFamily,
    assignment: &ParameterPoint,
) -> Result<AlgebraClass, DeformationError> {
    for v in &s.nonvanishing_constraints {
        match assignment.get(v) {
            Some(x) if x.is_zero() => return Err(DeformationError::ConstraintViolation(v.clone())),
            None => return Err(DeformationError::MissingParameter(v.clone())),
            _ => {}
        }
    }
    let d = s.coderivation()?.eval(&assignment.0)?;
    match classify_codifferential(&d) {
        Err(ModuliError::NonAssociative(_)) => {
            Err(DeformationError::NonAssociativeSpecialization {
                point: assignment.to_string(),
            })
        }
        other => Ok(other?),
    }
}

/// A correspondence claimed in the prose accompanying the solution list,
/// together with the sample that is supposed to exhibit it.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimedSample {
    pub point: ParameterPoint,
    pub claimed: AlgebraClass,
    pub observed: AlgebraClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCorrespondence {
    pub index: usize,
    pub claimed: BTreeSet<AlgebraClass>,
    /// Closure classes over a small grid of free-variable values, zero excluded.
    pub observed: BTreeSet<AlgebraClass>,
    pub claimed_not_observed: BTreeSet<AlgebraClass>,
    pub observed_not_claimed: BTreeSet<AlgebraClass>,
    pub samples: Vec<ClaimedSample>,
}

impl FamilyCorrespondence {
    pub fn agrees(&self) -> bool {
        self.claimed_not_observed.is_empty()
            && self.observed_not_claimed.is_empty()
            && self
                .samples
                .iter()
                .all(|s| s.observed.over_closure() == s.claimed)
    }
}

/// Stated sample: an assignment and the class it should produce.
type StatedSample = (&'static [(&'static str, i64)], AlgebraClass);

fn claimed_classes(index: usize) -> (Vec<AlgebraClass>, Vec<StatedSample>) {
    use AlgebraClass::{D1, D2, D3, D4, D5, D6};
    match index {
        1 => (vec![D4], vec![(&[("a24", 1)], D4)]),
        2 => (vec![D3], vec![(&[("a24", 1)], D3)]),
        3 => (vec![D1], vec![(&[("a24", 1)], D1)]),
        4 => (vec![D1, D2, D6], vec![]),
        5 => (vec![D3], vec![(&[("a11", 1), ("a24", 0)], D3)]),
        6 => (vec![D4], vec![(&[("a11", 1), ("a24", 0)], D4)]),
        7 => (
            vec![D1, D2, D6],
            vec![(&[("a21", 0), ("a23", 1), ("a24", 0)], D6)],
        ),
        _ => (vec![D1, D2, D5, D6], vec![]),
    }
}

/// Samples every family over free-variable values in {-1, 0, 1, 2} and
/// compares the classes reached with the correspondences stated alongside
/// the solution list.
pub fn solution_correspondences() -> Result<Vec<FamilyCorrespondence>, DeformationError> {
    let values: Vec<Rational> = [-1, 0, 1, 2].iter().map(|&n| rat(n, 1)).collect();
    let mut out = Vec::new();
    for s in SolutionFamily::all() {
        let axes: Vec<(String, Vec<Rational>)> = s
            .free_variables()?
            .into_iter()
            .map(|v| (v, values.clone()))
            .collect();
        let mut observed = BTreeSet::new();
        for point in product_grid(&axes) {
            match sample_solution_family(&s, &point) {
                Ok(c) if c != AlgebraClass::Zero => {
                    observed.insert(c.over_closure());
                }
                Ok(_) | Err(DeformationError::ConstraintViolation(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let (claimed, bullet_points) = claimed_classes(s.index);
        let claimed: BTreeSet<AlgebraClass> = claimed.into_iter().collect();
        let mut samples = Vec::new();
        for (assignment, class) in bullet_points {
            let point =
                ParameterPoint::new(assignment.iter().map(|&(k, v)| (k.to_string(), rat(v, 1))));
            samples.push(ClaimedSample {
                observed: sample_solution_family(&s, &point)?,
                point,
                claimed: class,
            });
        }
        out.push(FamilyCorrespondence {
            index: s.index,
            claimed_not_observed: claimed.difference(&observed).copied().collect(),
            observed_not_claimed: observed.difference(&claimed).copied().collect(),
            claimed,
            observed,
            samples,
        });
    }
    Ok(out)
}

/// Parses `t1=1/2, t2=-1` into a point.
pub fn parse_point(s: &str) -> Result<ParameterPoint, DeformationError> {
    let mut point = ParameterPoint::default();
    for piece in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, value) = piece.split_once('=').ok_or_else(|| {
            DeformationError::Malformed(format!("expected name=value, got `{}`", piece.trim()))
        })?;
        let value = parse_rational(value).map_err(|e| DeformationError::Malformed(e.message))?;
        point.0.insert(name.trim().to_string(), value);
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use AlgebraClass::{QuadraticFieldExtension, D1, D2, D3, D4, D5, D6};

    fn plane() -> GradedSpace {
        GradedSpace::odd_plane()
    }

    fn c(s: &str) -> Cochain {
        Cochain::parse(&plane(), s).unwrap()
    }

    fn at(pairs: &[(&str, Rational)]) -> ParameterPoint {
        ParameterPoint::new(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())))
    }

    fn t(v: Rational) -> ParameterPoint {
        at(&[("t", v)])
    }

    #[test]
    fn infinitesimal_directions() {
        assert_eq!(
            infinitesimal_basis(&c("psi[22->2]")).unwrap(),
            vec![c("psi[11->1]")]
        );
        let d5 = standard_codifferential(5).unwrap();
        let cx = CochainComplex::new(&d5).unwrap();
        assert!(cx
            .same_classes(2, &infinitesimal_basis(&d5).unwrap(), &[c("psi[11->2]")])
            .unwrap());
        let d6 = standard_codifferential(6).unwrap();
        let cx = CochainComplex::new(&d6).unwrap();
        let printed = [
            c("psi[21->2] + psi[12->2] + psi[11->1]"),
            c("psi[21->1] + psi[12->1]"),
        ];
        assert!(cx
            .same_classes(2, &infinitesimal_basis(&d6).unwrap(), &printed)
            .unwrap());
        for k in [1, 3, 4] {
            assert!(infinitesimal_basis(&standard_codifferential(k).unwrap())
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn construction_checks_directions() {
        let d2 = standard_codifferential(2).unwrap();
        let err = DeformationFamily::new("x", d2.clone(), vec![("t".into(), c("psi[12->1]"))]);
        assert_eq!(
            err,
            Err(DeformationError::DirectionNotCocycle {
                parameter: "t".into()
            })
        );
        let err = DeformationFamily::new("x", d2.clone(), vec![("t".into(), c("phi[1->1]"))]);
        assert_eq!(
            err,
            Err(DeformationError::DirectionNotQuadratic {
                parameter: "t".into()
            })
        );
        let err = DeformationFamily::new("x", c("psi[11->2] + psi[22->1]"), vec![]);
        assert!(matches!(err, Err(DeformationError::Hochschild(_))));
        let twice = vec![("t".into(), c("psi[11->1]")), ("t".into(), c("psi[11->1]"))];
        assert!(matches!(
            DeformationFamily::new("x", d2, twice),
            Err(DeformationError::Malformed(_))
        ));
    }

    #[test]
    fn obstructions() {
        assert!(
            obstruction(&DeformationFamily::builtin("d2").unwrap())
                .unwrap()
                .is_zero
        );
        assert!(
            obstruction(&DeformationFamily::builtin("d5").unwrap())
                .unwrap()
                .is_zero
        );
        assert!(
            obstruction(&DeformationFamily::builtin("d6-versal").unwrap())
                .unwrap()
                .is_zero
        );
        let printed = obstruction(&DeformationFamily::builtin("d6").unwrap()).unwrap();
        assert!(!printed.is_zero);
        // Twice the associator (ab)c - a(bc) of x^2 = t2 x, x theta = theta x =
        // t1 x + t2 theta, theta^2 = x, expanded by hand: (x theta)theta -
        // x(theta theta) = t1^2 x + t1 t2 theta, and so on.
        assert_eq!(
            printed.bracket_polynomial.to_string(),
            "-2*t1*t2*phi[112->1] + 2*t1^2*phi[122->1] + 2*t1*t2*phi[122->2] \
             + 2*t1*t2*phi[211->1] - 2*t1^2*phi[221->1] - 2*t1*t2*phi[221->2]"
        );
    }

    #[test]
    fn specializations() {
        let d2 = DeformationFamily::builtin("d2").unwrap();
        assert_eq!(specialize(&d2, &t(int(0))).unwrap(), c("psi[22->2]"));
        assert_eq!(
            specialize(&d2, &t(int(1))).unwrap(),
            standard_codifferential(1).unwrap()
        );
        let d6 = DeformationFamily::builtin("d6").unwrap();
        let origin = at(&[("t1", int(0)), ("t2", int(0))]);
        assert_eq!(
            specialize(&d6, &origin).unwrap(),
            standard_codifferential(6).unwrap()
        );
        assert_eq!(
            specialize(&d6, &at(&[("t1", int(1))])),
            Err(DeformationError::MissingParameter("t2".into()))
        );
    }

    #[test]
    fn jumps_from_d2_and_d5() {
        let d2 = DeformationFamily::builtin("d2").unwrap();
        let pts: Vec<_> = [int(1), int(2), rat(-1, 3)].into_iter().map(t).collect();
        let g = jump_census(&d2, &pts).unwrap();
        assert!(g.observations.iter().all(|o| o.class == D1));
        assert_eq!(g.edge_set(), BTreeSet::from([(D2, D1)]));

        let d5 = DeformationFamily::builtin("d5").unwrap();
        let g = jump_census(&d5, &[t(int(1)), t(int(-2))]).unwrap();
        assert_eq!(g.observations[0].class, D1);
        // x^2 = -2 theta with unit theta is Q(sqrt(-2))
        assert_eq!(g.observations[1].class, QuadraticFieldExtension);
        assert!(g.observations.iter().all(|o| o.closure_class == D1));
        assert_eq!(g.edges[0].witnesses.len(), 2);
    }

    #[test]
    fn d6_census() {
        let printed = DeformationFamily::builtin("d6").unwrap();
        assert!(matches!(
            jump_census(&printed, &default_grid(&printed)),
            Err(DeformationError::NonVersal(_))
        ));
        let f = DeformationFamily::builtin("d6-versal").unwrap();
        let g = jump_census(&f, &default_grid(&f)).unwrap();
        assert_eq!(g.observations.len(), 49);
        assert!(g.has_edge(D6, D2) && g.has_edge(D6, D5) && g.has_edge(D6, D1));
        assert!(!g.nodes.contains(&D3) && !g.nodes.contains(&D4));
        for o in &g.observations {
            let (t1, t2) = (o.point.get("t1").unwrap(), o.point.get("t2").unwrap());
            let expected = if t1.is_zero() && t2.is_zero() {
                D6
            } else if t2.is_zero() {
                D2
            } else if (t1 * t1 + int(4) * t2).is_zero() {
                D5
            } else {
                D1
            };
            assert_eq!(o.closure_class, expected, "{}", o.point);
        }
    }

    #[test]
    fn solution_families_vanish() {
        for s in SolutionFamily::all() {
            assert!(verify_solution_family(&s).unwrap(), "family {}", s.index);
        }
        assert!(!verify_solution_family(&SolutionFamily::generic()).unwrap());
        let mut bad = SolutionFamily::new(3).unwrap();
        bad.assignments.insert("b11".into(), Polynomial::zero());
        assert!(matches!(
            verify_solution_family(&bad),
            Err(DeformationError::Malformed(_))
        ));
        assert_eq!(
            SolutionFamily::new(8).unwrap().nonvanishing_constraints,
            vec!["a14"]
        );
        assert_eq!(
            SolutionFamily::new(7).unwrap().nonvanishing_constraints,
            vec!["a23"]
        );
    }

    #[test]
    fn dropping_a_relation_breaks_family_eight() {
        let mut s = SolutionFamily::new(8).unwrap();
        s.assignments.remove("a21");
        assert!(!verify_solution_family(&s).unwrap());
    }

    #[test]
    fn family_samples() {
        let f3 = SolutionFamily::new(3).unwrap();
        assert_eq!(
            sample_solution_family(&f3, &at(&[("a24", int(1))])).unwrap(),
            D1
        );
        assert_eq!(
            sample_solution_family(&f3, &at(&[("a24", int(0))])).unwrap(),
            AlgebraClass::Zero
        );
        let f1 = SolutionFamily::new(1).unwrap();
        assert_eq!(
            sample_solution_family(&f1, &at(&[("a24", int(1))])).unwrap(),
            D4
        );
        let f7 = SolutionFamily::new(7).unwrap();
        let p = at(&[("a21", int(1)), ("a23", int(0)), ("a24", int(1))]);
        assert_eq!(
            sample_solution_family(&f7, &p),
            Err(DeformationError::ConstraintViolation("a23".into()))
        );
    }

    #[test]
    fn family_file() {
        let text = r#"{"base": "psi[22->2]", "directions": [{"parameter": "t", "direction": "psi[11->1]"}],
                       "grid": {"t": [1, "-1/3"]}}"#;
        let (f, grid) = DeformationFamily::from_json(text).unwrap();
        assert_eq!(
            f,
            DeformationFamily::new(
                "custom",
                c("psi[22->2]"),
                vec![("t".into(), c("psi[11->1]"))]
            )
            .unwrap()
        );
        assert_eq!(grid.unwrap(), vec![t(int(1)), t(rat(-1, 3))]);
        let bad = r#"{"base": "psi[22->2]", "directions": [], "extra": 1}"#;
        assert!(matches!(
            DeformationFamily::from_json(bad),
            Err(DeformationError::Malformed(_))
        ));
        let unknown = r#"{"base": "psi[22->2]", "directions": [], "grid": {"s": [1]}}"#;
        assert!(matches!(
            DeformationFamily::from_json(unknown),
            Err(DeformationError::Malformed(_))
        ));
    }

    #[test]
    fn points() {
        let p = parse_point("t1=1/2, t2 = -1").unwrap();
        assert_eq!(p.to_string(), "t1=1/2, t2=-1");
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"t1":"1/2","t2":-1}"#
        );
        assert!(parse_point("t1").is_err());
        assert_eq!(
            default_grid(&DeformationFamily::builtin("d6").unwrap()).len(),
            49
        );
    }
}
