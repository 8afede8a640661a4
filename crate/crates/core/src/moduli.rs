//! Two-dimensional associative algebras on V = <x, theta>: multiplication
//! tables, the codifferentials they induce on W = ΠV, structural
//! invariants, and an isomorphism classifier.
//!
//! Basis conventions: `x` is index 0 and corresponds to `w_1`, `theta` is
//! index 1 and corresponds to `w_2`. A structure constant `c_ij^k` is the
//! coefficient of `psi[ij->k]` in the codifferential, with no sign.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::coderivation::{BasisCoderivation, Coderivation, GradedSpace};
use crate::error::{ModuliError, ParseError, BASIS_NAMES};
use crate::field::{Field, Fp, QuadraticRoots};
use crate::hochschild::Cochain;
use crate::linalg::Matrix;
use crate::parse::{json_rational, parse_rational};
use crate::scalar::Rational;

fn slot(i: usize, j: usize, k: usize) -> usize {
    (i * 2 + j) * 2 + k
}

/// Structure constants in the order c11^1, c11^2, c12^1, c12^2, c21^1,
/// c21^2, c22^1, c22^2 (1 = x, 2 = theta).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicationTable<F> {
    constants: [F; 8],
}

impl<F: Field> MultiplicationTable<F> {
    pub fn new(constants: [F; 8]) -> Self {
        MultiplicationTable { constants }
    }

    pub fn from_vec(constants: Vec<F>) -> Result<Self, ModuliError> {
        let n = constants.len();
        let constants: [F; 8] = constants
            .try_into()
            .map_err(|_| ModuliError::WrongConstantCount(n))?;
        Ok(MultiplicationTable { constants })
    }

    pub fn from_i64(constants: [i64; 8]) -> Self {
        MultiplicationTable {
            constants: constants.map(F::from_i64),
        }
    }

    pub fn zero() -> Self {
        MultiplicationTable {
            constants: std::array::from_fn(|_| F::zero()),
        }
    }

    pub fn constants(&self) -> &[F; 8] {
        &self.constants
    }

    /// `c_ij^k` with 0-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[slot(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: F) {
        self.constants[slot(i, j, k)] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Product of basis elements `e_i * e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> [F; 2] {
        [self.get(i, j, 0).clone(), self.get(i, j, 1).clone()]
    }

    pub fn product(&self, u: &[F; 2], v: &[F; 2]) -> [F; 2] {
        let mut out = [F::zero(), F::zero()];
        for i in 0..2 {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..2 {
                if v[j].is_zero() {
                    continue;
                }
                let uv = u[i].clone() * v[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + uv.clone() * self.get(i, j, k).clone();
                }
            }
        }
        out
    }

    /// First basis triple `(a, b, c)` with `(ab)c != a(bc)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let e = |i: usize| {
            let mut v = [F::zero(), F::zero()];
            v[i] = F::one();
            v
        };
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let left = self.product(&self.basis_product(a, b), &e(c));
                    let right = self.product(&e(a), &self.basis_product(b, c));
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_failure().is_none()
    }

    pub fn check_associative(&self) -> Result<(), ModuliError> {
        match self.associativity_failure() {
            Some(triple) => Err(ModuliError::NonAssociative(triple)),
            None => Ok(()),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..2).all(|k| self.get(0, 1, k) == self.get(1, 0, k))
    }
}

fn format_vector<F: Field>(v: &[F; 2]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(BASIS_NAMES) {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() {
            name.to_string()
        } else if (-c.clone()).is_one() {
            format!("-{name}")
        } else {
            format!("{c}*{name}")
        };
        match term.strip_prefix('-') {
            Some(rest) if !out.is_empty() => out.push_str(&format!(" - {rest}")),
            _ if !out.is_empty() => out.push_str(&format!(" + {term}")),
            _ => out.push_str(&term),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for MultiplicationTable<F> {
    /// `x^2 = x, x*theta = 0, theta*x = 0, theta^2 = theta`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, t] = BASIS_NAMES;
        let labels = [
            format!("{x}^2"),
            format!("{x}*{t}"),
            format!("{t}*{x}"),
            format!("{t}^2"),
        ];
        for (n, label) in labels.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{label} = {}",
                format_vector(&self.basis_product(n / 2, n % 2))
            )?;
        }
        Ok(())
    }
}

impl<F: Field> Serialize for MultiplicationTable<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.constants.iter().map(Field::to_json))
    }
}

impl MultiplicationTable<Rational> {
    /// Eight rationals as a JSON array (`[0, 1, "1/2", ...]`) or a
    /// comma-separated list (`0, 1, 1/2, ...`).
    pub fn parse(s: &str) -> Result<Self, ModuliError> {
        let trimmed = s.trim();
        let entries: Vec<Rational> = if trimmed.starts_with('[') {
            let value: serde_json::Value = serde_json::from_str(trimmed)
                .map_err(|e| ParseError::new(e.column().saturating_sub(1), e.to_string()))?;
            let items = value
                .as_array()
                .ok_or_else(|| ParseError::new(0, "expected a JSON array"))?;
            items.iter().map(json_rational).collect::<Result<_, _>>()?
        } else {
            let mut offset = 0;
            let mut out = Vec::new();
            for piece in trimmed.split(',') {
                out.push(
                    parse_rational(piece)
                        .map_err(|e| ParseError::new(offset + e.position, e.message))?,
                );
                offset += piece.len() + 1;
            }
            out
        };
        Self::from_vec(entries)
    }

    /// Reduction modulo `P`; `None` if some denominator is divisible by `P`.
    pub fn reduce<const P: u32>(&self) -> Option<MultiplicationTable<Fp<P>>> {
        let p = num_bigint::BigInt::from(P);
        let mut out = Vec::with_capacity(8);
        for c in &self.constants {
            let den = c.denom() % &p;
            if den.is_zero() {
                return None;
            }
            let num = i64::try_from(c.numer() % &p).expect("residue fits");
            let den = i64::try_from(den).expect("residue fits");
            out.push(Fp::<P>::new(num) * Fp::<P>::new(den).inv());
        }
        Some(MultiplicationTable::from_vec(out).expect("eight constants"))
    }
}

/// An invertible linear map `g` of V, acting on tables by
/// `g^*(m) = g^{-1} ∘ m ∘ (g ⊗ g)`. Column `i` of the matrix is `g(e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism<F> {
    matrix: [[F; 2]; 2],
    inverse: [[F; 2]; 2],
}

impl<F: Field> Automorphism<F> {
    /// Row-major matrix entries.
    pub fn new(matrix: [[F; 2]; 2]) -> Result<Self, ModuliError> {
        let [[a, b], [c, d]] = matrix.clone();
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if det.is_zero() {
            return Err(ModuliError::SingularAutomorphism);
        }
        let r = det.inv();
        let inverse = [[d * r.clone(), -b * r.clone()], [-c * r.clone(), a * r]];
        Ok(Automorphism { matrix, inverse })
    }

    pub fn identity() -> Self {
        Self::new([[F::one(), F::zero()], [F::zero(), F::one()]]).expect("invertible")
    }

    /// Exchanges `x` and `theta`.
    pub fn swap() -> Self {
        Self::new([[F::zero(), F::one()], [F::one(), F::zero()]]).expect("invertible")
    }

    pub fn matrix(&self) -> &[[F; 2]; 2] {
        &self.matrix
    }

    pub fn determinant(&self) -> F {
        let [[a, b], [c, d]] = self.matrix.clone();
        a * d - b * c
    }

    /// The matrix product `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let m = |x: &[[F; 2]; 2], y: &[[F; 2]; 2]| {
            std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    x[r][0].clone() * y[0][c].clone() + x[r][1].clone() * y[1][c].clone()
                })
            })
        };
        Automorphism {
            matrix: m(&self.matrix, &other.matrix),
            inverse: m(&other.inverse, &self.inverse),
        }
    }

    fn image(&self, i: usize) -> [F; 2] {
        [self.matrix[0][i].clone(), self.matrix[1][i].clone()]
    }

    fn pull_back(&self, v: &[F; 2]) -> [F; 2] {
        std::array::from_fn(|r| {
            self.inverse[r][0].clone() * v[0].clone() + self.inverse[r][1].clone() * v[1].clone()
        })
    }

    pub fn apply(&self, m: &MultiplicationTable<F>) -> MultiplicationTable<F> {
        let mut out = MultiplicationTable::zero();
        for i in 0..2 {
            for j in 0..2 {
                let w = self.pull_back(&m.product(&self.image(i), &self.image(j)));
                for (k, v) in w.into_iter().enumerate() {
                    out.set(i, j, k, v);
                }
            }
        }
        out
    }
}

impl<const P: u32> Automorphism<Fp<P>> {
    /// Every element of GL_2(F_P), in lexicographic order of entries.
    pub fn general_linear_group() -> Vec<Self> {
        let mut out = Vec::new();
        for a in Fp::<P>::elements() {
            for b in Fp::<P>::elements() {
                for c in Fp::<P>::elements() {
                    for d in Fp::<P>::elements() {
                        if let Ok(g) = Self::new([[a, b], [c, d]]) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn apply_automorphism<F: Field>(
    g: &Automorphism<F>,
    m: &MultiplicationTable<F>,
) -> MultiplicationTable<F> {
    g.apply(m)
}

/// Isomorphism classes of 2-dimensional associative algebras, as seen by
/// the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraClass {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    Zero,
    /// A field extension of degree 2; becomes d1 over the algebraic closure.
    QuadraticFieldExtension,
    /// No class fits. Only reachable through a bug or a non-associative table.
    Inconsistent,
}

impl AlgebraClass {
    pub const STANDARD: [AlgebraClass; 6] = [
        AlgebraClass::D1,
        AlgebraClass::D2,
        AlgebraClass::D3,
        AlgebraClass::D4,
        AlgebraClass::D5,
        AlgebraClass::D6,
    ];

    pub fn standard(k: usize) -> Option<AlgebraClass> {
        k.checked_sub(1)
            .and_then(|i| Self::STANDARD.get(i).copied())
    }

    /// `Some(k)` for class `dk`.
    pub fn standard_index(self) -> Option<usize> {
        Self::STANDARD
            .iter()
            .position(|&c| c == self)
            .map(|i| i + 1)
    }

    /// The class after extending scalars to the algebraic closure.
    pub fn over_closure(self) -> AlgebraClass {
        match self {
            AlgebraClass::QuadraticFieldExtension => AlgebraClass::D1,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraClass::D1 => "d1",
            AlgebraClass::D2 => "d2",
            AlgebraClass::D3 => "d3",
            AlgebraClass::D4 => "d4",
            AlgebraClass::D5 => "d5",
            AlgebraClass::D6 => "d6",
            AlgebraClass::Zero => "zero",
            AlgebraClass::QuadraticFieldExtension => "quadratic_field_extension",
            AlgebraClass::Inconsistent => "inconsistent",
        }
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StructuralInvariants {
    pub is_commutative: bool,
    /// Dimension of the span of all products.
    pub square_dim: u8,
    /// A^3 = 0.
    pub nilpotency: bool,
    pub has_two_sided_identity: bool,
    pub has_left_identity: bool,
    pub has_right_identity: bool,
    /// Whether the minimal polynomial of a non-scalar element has a repeated
    /// root. Only defined for unital algebras.
    pub unital_discriminant_zero: Option<bool>,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
    Both,
}

/// Some `e` with `e*v = v` (left), `v*e = v` (right), or both.
fn identity_element<F: Field>(m: &MultiplicationTable<F>, side: Side) -> Option<[F; 2]> {
    // Unknowns e_0, e_1. Left: sum_i e_i c_ij^k = delta_jk.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let delta = |j: usize, k: usize| if j == k { F::one() } else { F::zero() };
    for j in 0..2 {
        for k in 0..2 {
            if matches!(side, Side::Left | Side::Both) {
                rows.push(vec![m.get(0, j, k).clone(), m.get(1, j, k).clone()]);
                rhs.push(delta(j, k));
            }
            if matches!(side, Side::Right | Side::Both) {
                rows.push(vec![m.get(j, 0, k).clone(), m.get(j, 1, k).clone()]);
                rhs.push(delta(j, k));
            }
        }
    }
    let e = Matrix::from_rows(rows).solve(&rhs)?;
    Some([e[0].clone(), e[1].clone()])
}

fn span_dim<F: Field>(vectors: Vec<[F; 2]>) -> u8 {
    let columns: Vec<Vec<F>> = vectors.into_iter().map(|v| v.to_vec()).collect();
    Matrix::from_columns(2, &columns).rank() as u8
}

/// Factorization type of the minimal polynomial of a basis element that is
/// not a multiple of the unit `e`.
fn unital_quadratic<F: Field>(m: &MultiplicationTable<F>, e: &[F; 2]) -> QuadraticRoots {
    let i = if e[1].is_zero() { 1 } else { 0 };
    // a = e_i; write a^2 = alpha*a + beta*e in the basis (a, e).
    let mut a = [F::zero(), F::zero()];
    a[i] = F::one();
    let sq = m.basis_product(i, i);
    let det = a[0].clone() * e[1].clone() - a[1].clone() * e[0].clone();
    let alpha = (sq[0].clone() * e[1].clone() - sq[1].clone() * e[0].clone()).div(&det);
    let beta = (a[0].clone() * sq[1].clone() - a[1].clone() * sq[0].clone()).div(&det);
    F::quadratic_roots(&-alpha, &-beta)
}

pub fn invariants<F: Field>(
    m: &MultiplicationTable<F>,
) -> Result<StructuralInvariants, ModuliError> {
    m.check_associative()?;
    let products: Vec<[F; 2]> = (0..4).map(|n| m.basis_product(n / 2, n % 2)).collect();
    let cubes: Vec<[F; 2]> = (0..8)
        .map(|n| {
            let mut e = [F::zero(), F::zero()];
            e[n % 2] = F::one();
            m.product(&m.basis_product(n / 4, (n / 2) % 2), &e)
        })
        .collect();
    let unit = identity_element(m, Side::Both);
    Ok(StructuralInvariants {
        is_commutative: m.is_commutative(),
        square_dim: span_dim(products),
        nilpotency: cubes.iter().all(|v| v.iter().all(Zero::is_zero)),
        has_two_sided_identity: unit.is_some(),
        has_left_identity: identity_element(m, Side::Left).is_some(),
        has_right_identity: identity_element(m, Side::Right).is_some(),
        unital_discriminant_zero: unit.map(|e| unital_quadratic(m, &e) == QuadraticRoots::Repeated),
    })
}

pub fn classify<F: Field>(m: &MultiplicationTable<F>) -> Result<AlgebraClass, ModuliError> {
    let inv = invariants(m)?;
    if m.is_zero() {
        return Ok(AlgebraClass::Zero);
    }
    if inv.nilpotency {
        return Ok(AlgebraClass::D6);
    }
    if let Some(e) = identity_element(m, Side::Both) {
        return Ok(match unital_quadratic(m, &e) {
            QuadraticRoots::Repeated => AlgebraClass::D5,
            QuadraticRoots::Distinct => AlgebraClass::D1,
            QuadraticRoots::Irreducible => AlgebraClass::QuadraticFieldExtension,
        });
    }
    Ok(match (inv.has_left_identity, inv.has_right_identity) {
        (false, true) => AlgebraClass::D3,
        (true, false) => AlgebraClass::D4,
        _ if inv.is_commutative && inv.square_dim == 1 => AlgebraClass::D2,
        _ => AlgebraClass::Inconsistent,
    })
}

fn check_standard(k: usize) -> Result<(), ModuliError> {
    if (1..=6).contains(&k) {
        Ok(())
    } else {
        Err(ModuliError::UnknownCodifferential(k))
    }
}

/// The codifferential `d_k` on the 0|2 space.
pub fn standard_codifferential(k: usize) -> Result<Cochain, ModuliError> {
    check_standard(k)?;
    let terms: &[(&[usize], usize)] = match k {
        1 => &[(&[2, 2], 2), (&[1, 1], 1)],
        2 => &[(&[2, 2], 2)],
        3 => &[(&[2, 2], 2), (&[1, 2], 1)],
        4 => &[(&[2, 2], 2), (&[2, 1], 1)],
        5 => &[(&[2, 2], 2), (&[1, 2], 1), (&[2, 1], 1)],
        _ => &[(&[2, 2], 1)],
    };
    Ok(Coderivation::from_terms(
        &GradedSpace::odd_plane(),
        terms
            .iter()
            .map(|(input, output)| (BasisCoderivation::new(input, *output), Rational::one())),
    ))
}

/// The multiplication on V paired with `d_k`.
pub fn standard_table<F: Field>(k: usize) -> Result<MultiplicationTable<F>, ModuliError> {
    check_standard(k)?;
    let constants = match k {
        // x^2 = x, theta^2 = theta
        1 => [1, 0, 0, 0, 0, 0, 0, 1],
        // theta^2 = theta
        2 => [0, 0, 0, 0, 0, 0, 0, 1],
        // x*theta = x, theta^2 = theta
        3 => [0, 0, 1, 0, 0, 0, 0, 1],
        // theta*x = x, theta^2 = theta
        4 => [0, 0, 0, 0, 1, 0, 0, 1],
        // x*theta = theta*x = x, theta^2 = theta
        5 => [0, 0, 1, 0, 1, 0, 0, 1],
        // theta^2 = x
        _ => [0, 0, 0, 0, 0, 0, 1, 0],
    };
    Ok(MultiplicationTable::from_i64(constants))
}

pub fn table_to_codifferential(m: &MultiplicationTable<Rational>) -> Cochain {
    let mut terms = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                terms.push((
                    BasisCoderivation::new(&[i + 1, j + 1], k + 1),
                    m.get(i, j, k).clone(),
                ));
            }
        }
    }
    Coderivation::from_terms(&GradedSpace::odd_plane(), terms)
}

pub fn codifferential_to_table(d: &Cochain) -> Result<MultiplicationTable<Rational>, ModuliError> {
    if !d.space().is_odd_plane() || d.degrees().iter().any(|&n| n != 2) {
        return Err(ModuliError::NotATable(d.to_string()));
    }
    let mut m = MultiplicationTable::zero();
    for (b, c) in d.terms() {
        let e = b.input.entries();
        m.set(e[0] - 1, e[1] - 1, b.output - 1, c.clone());
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub size: usize,
    /// The first table of the orbit in enumeration order.
    pub representative: Vec<u32>,
    pub invariants: StructuralInvariants,
    pub class: AlgebraClass,
}

/// Orbits of associative tables over F_p under GL_2(F_p).
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub p: u32,
    pub total_tables: usize,
    pub associative_tables: usize,
    pub group_order: usize,
    pub orbit_count: usize,
    pub classes_constant_on_orbits: bool,
    /// Number of orbits per class.
    pub class_counts: BTreeMap<AlgebraClass, usize>,
    pub orbits: Vec<OrbitSummary>,
    #[serde(skip)]
    orbit_of: Vec<u32>,
}

const NOT_ASSOCIATIVE: u32 = u32::MAX;
const UNSEEN: u32 = u32::MAX - 1;

impl Census {
    /// Orbit index of the table with the given constants reduced mod p.
    pub fn orbit_containing(&self, constants: &[i64; 8]) -> Option<usize> {
        let p = self.p as i64;
        let idx = constants.iter().rev().fold(0usize, |acc, &c| {
            acc * self.p as usize + c.rem_euclid(p) as usize
        });
        match self.orbit_of[idx] {
            NOT_ASSOCIATIVE | UNSEEN => None,
            o => Some(o as usize),
        }
    }
}

fn encode<const P: u32>(m: &MultiplicationTable<Fp<P>>) -> usize {
    m.constants()
        .iter()
        .rev()
        .fold(0, |acc, c| acc * P as usize + c.value() as usize)
}

fn decode<const P: u32>(mut idx: usize) -> MultiplicationTable<Fp<P>> {
    MultiplicationTable::new(std::array::from_fn(|_| {
        let c = Fp::<P>::new((idx % P as usize) as i64);
        idx /= P as usize;
        c
    }))
}

fn census<const P: u32>() -> Census {
    let total = (P as usize).pow(8);
    let group = Automorphism::<Fp<P>>::general_linear_group();
    let mut orbit_of = vec![UNSEEN; total];
    let mut orbits = Vec::new();
    let mut associative = 0;
    let mut constant = true;
    for idx in 0..total {
        if orbit_of[idx] != UNSEEN {
            continue;
        }
        let m = decode::<P>(idx);
        if !m.is_associative() {
            orbit_of[idx] = NOT_ASSOCIATIVE;
            continue;
        }
        let id = orbits.len() as u32;
        let class = classify(&m).expect("associative");
        let mut size = 0;
        for g in &group {
            let h = g.apply(&m);
            let j = encode(&h);
            if orbit_of[j] == UNSEEN {
                orbit_of[j] = id;
                size += 1;
                constant &= classify(&h).expect("associative") == class;
            }
        }
        associative += size;
        orbits.push(OrbitSummary {
            size,
            representative: m.constants().iter().map(|c| c.value()).collect(),
            invariants: invariants(&m).expect("associative"),
            class,
        });
    }
    let mut class_counts = BTreeMap::new();
    for o in &orbits {
        *class_counts.entry(o.class).or_insert(0) += 1;
    }
    Census {
        p: P,
        total_tables: total,
        associative_tables: associative,
        group_order: group.len(),
        orbit_count: orbits.len(),
        classes_constant_on_orbits: constant,
        class_counts,
        orbits,
        orbit_of,
    }
}

/// Brute-force census of all p^8 tables for p in {2, 3, 5}.
pub fn enumerate_finite_field(p: u32) -> Result<Census, ModuliError> {
    match p {
        2 => Ok(census::<2>()),
        3 => Ok(census::<3>()),
        5 => Ok(census::<5>()),
        _ => Err(ModuliError::UnsupportedPrime(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type Q = Rational;

    fn table(c: [i64; 8]) -> MultiplicationTable<Q> {
        MultiplicationTable::from_i64(c)
    }

    fn std_table(k: usize) -> MultiplicationTable<Q> {
        standard_table(k).unwrap()
    }

    #[test]
    fn standard_codifferentials_square_to_zero() {
        assert_eq!(
            standard_codifferential(6).unwrap().to_string(),
            "psi[22->1]"
        );
        assert_eq!(
            standard_codifferential(5).unwrap().to_string(),
            "psi[12->1] + psi[21->1] + psi[22->2]"
        );
        for k in 1..=6 {
            let d = standard_codifferential(k).unwrap();
            assert!(d.bracket(&d).unwrap().is_zero(), "d{k}");
        }
        assert_eq!(
            standard_codifferential(0),
            Err(ModuliError::UnknownCodifferential(0))
        );
        assert_eq!(
            standard_codifferential(7),
            Err(ModuliError::UnknownCodifferential(7))
        );
    }

    #[test]
    fn tables_pair_with_codifferentials() {
        for k in 1..=6 {
            assert_eq!(
                table_to_codifferential(&std_table(k)),
                standard_codifferential(k).unwrap()
            );
            assert_eq!(
                codifferential_to_table(&standard_codifferential(k).unwrap()).unwrap(),
                std_table(k)
            );
        }
        assert!(table_to_codifferential(&MultiplicationTable::zero()).is_zero());
        let bad = Coderivation::<Q>::parse(&GradedSpace::odd_plane(), "phi[1->1]").unwrap();
        assert!(matches!(
            codifferential_to_table(&bad),
            Err(ModuliError::NotATable(_))
        ));
    }

    #[test]
    fn associativity() {
        for k in 1..=6 {
            assert!(std_table(k).is_associative());
        }
        assert!(MultiplicationTable::<Q>::zero().is_associative());
        // x^2 = theta, theta^2 = x: (xx)x = theta*x = 0 but x(xx) = x*theta = 0,
        // while (xx)theta = theta^2 = x and x(x theta) = 0.
        let m = table([0, 1, 0, 0, 0, 0, 1, 0]);
        assert!(!m.is_associative());
        assert_eq!(m.associativity_failure(), Some((0, 0, 1)));
        assert_eq!(
            m.check_associative().unwrap_err().to_string(),
            "multiplication is not associative: (x*x)*theta != x*(x*theta)"
        );
    }

    #[test]
    fn automorphism_action() {
        let m = std_table(3);
        assert_eq!(Automorphism::identity().apply(&m), m);
        assert_eq!(Automorphism::swap().apply(&std_table(1)), std_table(1));
        // swapping x and theta in d3 puts the right identity on x
        assert_eq!(
            Automorphism::swap().apply(&m),
            table([1, 0, 0, 0, 0, 1, 0, 0])
        );
        let singular = Automorphism::<Q>::new([[int(1), int(2)], [int(2), int(4)]]);
        assert_eq!(singular, Err(ModuliError::SingularAutomorphism));
    }

    #[test]
    fn invariants_of_standard_tables() {
        let d5 = invariants(&std_table(5)).unwrap();
        assert!(d5.is_commutative && d5.has_two_sided_identity && !d5.nilpotency);
        assert_eq!(d5.unital_discriminant_zero, Some(true));
        assert_eq!(
            identity_element(&std_table(5), Side::Both),
            Some([int(0), int(1)])
        );

        let d3 = invariants(&std_table(3)).unwrap();
        assert!(!d3.is_commutative && d3.has_right_identity && !d3.has_left_identity);
        assert_eq!(d3.unital_discriminant_zero, None);

        let d6 = invariants(&std_table(6)).unwrap();
        assert!(d6.nilpotency);
        assert_eq!(d6.square_dim, 1);

        let d1 = invariants(&std_table(1)).unwrap();
        assert_eq!(d1.unital_discriminant_zero, Some(false));
        assert_eq!(d1.square_dim, 2);
    }

    #[test]
    fn classify_examples() {
        for k in 1..=6 {
            assert_eq!(
                classify(&std_table(k)).unwrap(),
                AlgebraClass::standard(k).unwrap()
            );
        }
        assert_eq!(
            classify(&MultiplicationTable::<Q>::zero()).unwrap(),
            AlgebraClass::Zero
        );
        // theta^2 = theta, x^2 = t x
        let mut m = std_table(2);
        m.set(0, 0, 0, rat(1, 1));
        assert_eq!(classify(&m).unwrap(), AlgebraClass::D1);
        m.set(0, 0, 0, rat(-3, 7));
        assert_eq!(classify(&m).unwrap(), AlgebraClass::D1);
        // Q(i): unit theta, x^2 = -theta
        let gaussian = table([0, -1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(
            classify(&gaussian).unwrap(),
            AlgebraClass::QuadraticFieldExtension
        );
        assert_eq!(
            AlgebraClass::QuadraticFieldExtension.over_closure(),
            AlgebraClass::D1
        );
        assert!(matches!(
            classify(&table([0, 1, 0, 0, 0, 0, 1, 0])),
            Err(ModuliError::NonAssociative(_))
        ));
    }

    #[test]
    fn table_parsing() {
        let m = MultiplicationTable::parse("0, 0, 1, 0, 0, 0, 0, 1").unwrap();
        assert_eq!(m, std_table(3));
        let m = MultiplicationTable::parse(r#"[0, "1/2", 0, 0, 0, 0, 0, -1]"#).unwrap();
        assert_eq!(m.get(0, 0, 1), &rat(1, 2));
        assert_eq!(
            m.to_string(),
            "x^2 = 1/2*theta, x*theta = 0, theta*x = 0, theta^2 = -theta"
        );
        assert_eq!(
            MultiplicationTable::parse("1, 2, 3"),
            Err(ModuliError::WrongConstantCount(3))
        );
        assert!(matches!(
            MultiplicationTable::parse("1, t, 0, 0, 0, 0, 0, 0"),
            Err(ModuliError::Parse(_))
        ));
        assert!(matches!(
            MultiplicationTable::parse("[0.5, 0, 0, 0, 0, 0, 0, 0]"),
            Err(ModuliError::Parse(_))
        ));
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[0,"1/2",0,0,0,0,0,-1]"#);
        assert_eq!(MultiplicationTable::parse(&json).unwrap(), m);
    }

    #[test]
    fn reduction_mod_p() {
        let m = MultiplicationTable::parse("1/2, -1, 0, 0, 0, 0, 0, 3").unwrap();
        let r = m.reduce::<5>().unwrap();
        assert_eq!(r.constants().map(|c| c.value()), [3, 4, 0, 0, 0, 0, 0, 3]);
        assert!(m.reduce::<2>().is_none());
    }

    #[test]
    fn group_orders() {
        assert_eq!(Automorphism::<Fp<2>>::general_linear_group().len(), 6);
        assert_eq!(Automorphism::<Fp<3>>::general_linear_group().len(), 48);
    }

    #[test]
    fn census_guard() {
        assert_eq!(
            enumerate_finite_field(7).unwrap_err(),
            ModuliError::UnsupportedPrime(7)
        );
    }
}
