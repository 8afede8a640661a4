//! Coderivations of the tensor coalgebra T(W) of a Z/2-graded space W,
//! represented by their corestrictions Hom(T(W), W).
//!
//! A basis coderivation `phi[I->i]` sends the word `w_I` to `w_i` and every
//! other word of the same length to zero. Composition inserts the output of
//! the right factor into each matching slot of the left factor's input,
//! with a Koszul sign for every odd generator it passes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::CoderivationError;
use crate::parse::parse_coderivation_terms;
use crate::scalar::{Polynomial, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: usize) -> Parity {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Parities of the basis vectors w_1..w_m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    parities: Vec<Parity>,
}

impl GradedSpace {
    pub fn new(parities: Vec<Parity>) -> Result<Self, CoderivationError> {
        if parities.is_empty() {
            return Err(CoderivationError::EmptySpace);
        }
        Ok(GradedSpace { parities })
    }

    /// The 0|2 space: two odd basis vectors.
    pub fn odd_plane() -> Self {
        GradedSpace {
            parities: vec![Parity::Odd, Parity::Odd],
        }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Parity of `w_i`, 1-based.
    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i - 1]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn is_odd_plane(&self) -> bool {
        *self == GradedSpace::odd_plane()
    }

    fn check_index(&self, i: usize) -> Result<(), CoderivationError> {
        if i == 0 || i > self.dim() {
            Err(CoderivationError::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// Total parity of the word `w_I`.
    pub fn word_parity(&self, word: &[usize]) -> Parity {
        Parity::from_bit(word.iter().map(|&i| self.parity(i).bit()).sum())
    }
}

/// A word `w_{i_1} ... w_{i_n}` of basis indices (1-based). Ordered by
/// length, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `i` repeated `n` times.
    pub fn repeat(i: usize, n: usize) -> Self {
        MultiIndex(vec![i; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MultiIndex(v)
    }

    /// Every word of length `n` over 1..=dim in lexicographic order.
    pub fn all_of_length(dim: usize, n: usize) -> Vec<MultiIndex> {
        let mut words = vec![Vec::new()];
        for _ in 0..n {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (1..=dim).map(move |i| {
                        let mut next = w.clone();
                        next.push(i);
                        next
                    })
                })
                .collect();
        }
        words.into_iter().map(MultiIndex).collect()
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(v: &[usize]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// The basis element `phi^I_i` of C^n = Hom(W^n, W), n = len(I).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisCoderivation {
    pub input: MultiIndex,
    pub output: usize,
}

impl BasisCoderivation {
    pub fn new(input: &[usize], output: usize) -> Self {
        BasisCoderivation {
            input: MultiIndex::from(input),
            output,
        }
    }

    pub fn degree(&self) -> usize {
        self.input.len()
    }

    pub fn parity(&self, space: &GradedSpace) -> Parity {
        space.parity(self.output) + space.word_parity(self.input.entries())
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, space: &GradedSpace) -> fmt::Result {
        let tag = if self.parity(space).is_odd() {
            "psi"
        } else {
            "phi"
        };
        write!(f, "{tag}[{}->{}]", self.input, self.output)
    }
}

/// Basis of C^n in canonical order: inputs lexicographically, then output.
pub fn cochain_basis(space: &GradedSpace, n: usize) -> Vec<BasisCoderivation> {
    MultiIndex::all_of_length(space.dim(), n)
        .into_iter()
        .flat_map(|input| {
            (1..=space.dim()).map(move |output| BasisCoderivation {
                input: input.clone(),
                output,
            })
        })
        .collect()
}

/// An element of T(W), as a combination of words.
pub type TensorElement<R> = BTreeMap<MultiIndex, R>;

fn accumulate<K: Ord, R: Scalar>(map: &mut BTreeMap<K, R>, key: K, value: R) {
    if value.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(existing) => {
            let sum = existing.clone() + value;
            if sum.is_zero() {
                map.remove(&key);
            } else {
                *existing = sum;
            }
        }
        None => {
            map.insert(key, value);
        }
    }
}

fn signed<R: Scalar>(value: R, negative: bool) -> R {
    if negative {
        -value
    } else {
        value
    }
}

/// A finite linear combination of basis coderivations.
#[derive(Clone, Debug, PartialEq)]
pub struct Coderivation<R> {
    space: GradedSpace,
    terms: BTreeMap<BasisCoderivation, R>,
}

impl<R: Scalar> Coderivation<R> {
    pub fn zero(space: &GradedSpace) -> Self {
        Coderivation {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(space: &GradedSpace, b: BasisCoderivation) -> Self {
        Self::from_terms(space, [(b, R::one())])
    }

    /// `phi^I_i` with unit coefficient.
    pub fn phi(space: &GradedSpace, input: &[usize], output: usize) -> Self {
        Self::basis(space, BasisCoderivation::new(input, output))
    }

    /// Sums the given terms, dropping zeros. Indices must be in range.
    pub fn from_terms<I>(space: &GradedSpace, terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisCoderivation, R)>,
    {
        let mut out = Self::zero(space);
        for (b, c) in terms {
            debug_assert!(b.output >= 1 && b.output <= space.dim());
            accumulate(&mut out.terms, b, c);
        }
        out
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisCoderivation, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, b: &BasisCoderivation) -> R {
        self.terms.get(b).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            &self.space,
            self.terms
                .iter()
                .map(|(b, v)| (b.clone(), c.clone() * v.clone())),
        )
    }

    pub fn map_coefficients<S: Scalar, F: Fn(&R) -> S>(&self, f: F) -> Coderivation<S> {
        Coderivation::from_terms(
            &self.space,
            self.terms.iter().map(|(b, v)| (b.clone(), f(v))),
        )
    }

    /// Keeps only the terms whose output index is `output`.
    pub fn component(&self, output: usize) -> Self {
        Self::from_terms(
            &self.space,
            self.terms
                .iter()
                .filter(|(b, _)| b.output == output)
                .map(|(b, v)| (b.clone(), v.clone())),
        )
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(BasisCoderivation::degree).collect()
    }

    /// The common degree of all terms; `None` for zero.
    pub fn degree(&self) -> Result<Option<usize>, CoderivationError> {
        let degrees = self.degrees();
        match degrees.len() {
            0 => Ok(None),
            1 => Ok(degrees.into_iter().next()),
            _ => Err(CoderivationError::MixedDegree(
                degrees.into_iter().collect(),
            )),
        }
    }

    /// Parity shared by every term. The zero coderivation counts as even.
    pub fn parity(&self) -> Result<Parity, CoderivationError> {
        let (odd, even): (Vec<_>, Vec<_>) = self
            .terms
            .keys()
            .partition(|b| b.parity(&self.space).is_odd());
        match (odd.is_empty(), even.is_empty()) {
            (true, _) => Ok(Parity::Even),
            (false, true) => Ok(Parity::Odd),
            (false, false) => {
                let list = |bs: &[&BasisCoderivation]| {
                    bs.iter()
                        .map(|b| Self::basis(&self.space, (*b).clone()).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                Err(CoderivationError::MixedParity {
                    even: list(&even),
                    odd: list(&odd),
                })
            }
        }
    }

    fn check_space(&self, other: &Self) -> Result<(), CoderivationError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(CoderivationError::SpaceMismatch)
        }
    }

    /// Composition of coderivations, corestricted to W.
    pub fn compose(&self, other: &Self) -> Result<Self, CoderivationError> {
        self.check_space(other)?;
        let space = &self.space;
        let mut out = BTreeMap::new();
        for (outer, a) in &self.terms {
            let slots = outer.input.entries();
            for (inner, b) in &other.terms {
                let inner_parity = inner.parity(space);
                let mut prefix = Parity::Even;
                for (k, &slot) in slots.iter().enumerate() {
                    if slot == inner.output {
                        let negative = (prefix.bit() * inner_parity.bit()) % 2 == 1;
                        let mut input = slots[..k].to_vec();
                        input.extend_from_slice(inner.input.entries());
                        input.extend_from_slice(&slots[k + 1..]);
                        let key = BasisCoderivation {
                            input: MultiIndex(input),
                            output: outer.output,
                        };
                        accumulate(&mut out, key, signed(a.clone() * b.clone(), negative));
                    }
                    prefix = prefix + space.parity(slot);
                }
            }
        }
        Ok(Coderivation {
            space: space.clone(),
            terms: out,
        })
    }

    /// The graded commutator `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Result<Self, CoderivationError> {
        self.check_space(other)?;
        let p = self.parity()?;
        let q = other.parity()?;
        let forward = self.compose(other)?;
        let backward = other.compose(self)?;
        if p.is_odd() && q.is_odd() {
            Ok(forward + backward)
        } else {
            Ok(forward - backward)
        }
    }

    /// Applies the coderivation extension of `self` to the word `w_word`.
    pub fn evaluate_extended(
        &self,
        word: &MultiIndex,
    ) -> Result<TensorElement<R>, CoderivationError> {
        let letters = word.entries();
        for &i in letters {
            self.space.check_index(i)?;
        }
        let mut out = BTreeMap::new();
        for (b, c) in &self.terms {
            let k = b.degree();
            if k > letters.len() {
                continue;
            }
            let term_parity = b.parity(&self.space);
            for start in 0..=letters.len() - k {
                if &letters[start..start + k] != b.input.entries() {
                    continue;
                }
                let prefix = self.space.word_parity(&letters[..start]);
                let negative = (prefix.bit() * term_parity.bit()) % 2 == 1;
                let mut image = letters[..start].to_vec();
                image.push(b.output);
                image.extend_from_slice(&letters[start + k..]);
                accumulate(&mut out, MultiIndex(image), signed(c.clone(), negative));
            }
        }
        Ok(out)
    }

    /// `lambda^prefix`: prepends `prefix` to the input of every term.
    pub fn lambda_insert(&self, prefix: &MultiIndex) -> Result<Self, CoderivationError> {
        for &i in prefix.entries() {
            self.space.check_index(i)?;
        }
        Ok(Self::from_terms(
            &self.space,
            self.terms.iter().map(|(b, c)| {
                (
                    BasisCoderivation {
                        input: prefix.concat(&b.input),
                        output: b.output,
                    },
                    c.clone(),
                )
            }),
        ))
    }

    /// `theta = lambda^{21} + lambda^{12}` on the 0|2 space.
    pub fn decleene_map(&self) -> Result<Self, CoderivationError> {
        if !self.space.is_odd_plane() {
            return Err(CoderivationError::WrongSpace(
                self.space.parities.iter().map(|p| p.bit() as u8).collect(),
            ));
        }
        let a = self.lambda_insert(&MultiIndex::new(vec![2, 1]))?;
        let b = self.lambda_insert(&MultiIndex::new(vec![1, 2]))?;
        Ok(a + b)
    }

    fn write_with<F>(&self, f: &mut fmt::Formatter<'_>, coefficient: F) -> fmt::Result
    where
        F: Fn(&R) -> (bool, Option<String>),
    {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            let (negative, text) = coefficient(c);
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if let Some(t) = text {
                write!(f, "{t}*")?;
            }
            b.write(f, &self.space)?;
        }
        Ok(())
    }
}

impl<R: Scalar> Add for Coderivation<R> {
    type Output = Coderivation<R>;

    /// Panics if the spaces differ.
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(
            self.space, rhs.space,
            "adding coderivations on different spaces"
        );
        for (b, c) in rhs.terms {
            accumulate(&mut self.terms, b, c);
        }
        self
    }
}

impl<R: Scalar> Neg for Coderivation<R> {
    type Output = Coderivation<R>;

    fn neg(self) -> Self {
        Coderivation {
            space: self.space,
            terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<R: Scalar> Sub for Coderivation<R> {
    type Output = Coderivation<R>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

fn build_from_raw(
    space: &GradedSpace,
    s: &str,
) -> Result<Coderivation<Polynomial>, CoderivationError> {
    let raw = parse_coderivation_terms(s)?;
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        for &i in t.input.iter().chain(std::iter::once(&t.output)) {
            space.check_index(i)?;
        }
        let b = BasisCoderivation {
            input: MultiIndex(t.input),
            output: t.output,
        };
        if t.odd_marker && !b.parity(space).is_odd() {
            return Err(crate::error::ParseError::new(
                t.position,
                "`psi` marks an odd coderivation but this term is even",
            )
            .into());
        }
        terms.push((b, t.coefficient));
    }
    Ok(Coderivation::from_terms(space, terms))
}

impl Coderivation<Polynomial> {
    /// Parses the text syntax, e.g. `psi[22->2] + t*psi[11->1]`.
    pub fn parse(space: &GradedSpace, s: &str) -> Result<Self, CoderivationError> {
        build_from_raw(space, s)
    }

    /// Fails if some coefficient still depends on a variable.
    pub fn to_rational(&self) -> Result<Coderivation<Rational>, CoderivationError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            let q = c
                .as_constant()
                .ok_or_else(|| CoderivationError::NonConstantCoefficient(c.to_string()))?;
            terms.push((b.clone(), q));
        }
        Ok(Coderivation::from_terms(&self.space, terms))
    }

    pub fn eval(
        &self,
        point: &BTreeMap<String, Rational>,
    ) -> Result<Coderivation<Rational>, crate::error::ScalarError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            terms.push((b.clone(), c.eval(point)?));
        }
        Ok(Coderivation::from_terms(&self.space, terms))
    }
}

impl Coderivation<Rational> {
    pub fn parse(space: &GradedSpace, s: &str) -> Result<Self, CoderivationError> {
        build_from_raw(space, s)?.to_rational()
    }

    pub fn to_polynomial(&self) -> Coderivation<Polynomial> {
        self.map_coefficients(|c| Polynomial::constant(c.clone()))
    }
}

/// Decleene cocycles on the 0|2 space:
/// `Ch^{2n}_c = theta^n phi[->c]` and `Ch^{2n+1}_c = theta^n phi[2->c]`.
pub fn decleene_cocycle(
    degree: usize,
    component: usize,
) -> Result<Coderivation<Rational>, CoderivationError> {
    let space = GradedSpace::odd_plane();
    space.check_index(component)?;
    let seed: &[usize] = if degree.is_multiple_of(2) { &[] } else { &[2] };
    let mut ch = Coderivation::phi(&space, seed, component);
    for _ in 0..degree / 2 {
        ch = ch.decleene_map()?;
    }
    Ok(ch)
}

impl<R: Scalar> fmt::Display for Coderivation<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, |c| {
            if c.is_one() {
                return (false, None);
            }
            if (-c.clone()).is_one() {
                return (true, None);
            }
            let text = c.coefficient_text();
            if c.is_compound() {
                (false, Some(format!("({text})")))
            } else if let Some(stripped) = text.strip_prefix('-') {
                (true, Some(stripped.to_string()))
            } else {
                (false, Some(text))
            }
        })
    }
}

impl<R: Scalar> Serialize for Coderivation<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn plane() -> GradedSpace {
        GradedSpace::odd_plane()
    }

    fn c(s: &str) -> Coderivation<Rational> {
        Coderivation::<Rational>::parse(&plane(), s).unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(c("psi[22->2]").parity().unwrap(), Parity::Odd);
        assert_eq!(c("phi[12->1]").parity().unwrap(), Parity::Odd);
        assert_eq!(c("phi[->2]").parity().unwrap(), Parity::Odd);
        assert_eq!(c("phi[1->2]").parity().unwrap(), Parity::Even);
    }

    #[test]
    fn mixed_parity_is_reported() {
        let err = c("phi[1->2] + psi[11->1]").parity().unwrap_err();
        match err {
            CoderivationError::MixedParity { even, odd } => {
                assert_eq!(even, "phi[1->2]");
                assert_eq!(odd, "psi[11->1]");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            c("psi[12->1]").compose(&c("psi[22->2]")).unwrap(),
            c("-phi[122->1]")
        );
        assert!(c("psi[22->2]").compose(&c("psi[22->2]")).unwrap().is_zero());
        assert!(c("psi[22->2]").compose(&c("psi[11->1]")).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let d2 = c("psi[22->2]");
        assert!(d2.bracket(&d2).unwrap().is_zero());
        let even = c("phi[1->2] + 3*phi[2->1]");
        assert!(even.bracket(&even).unwrap().is_zero());
        let d3 = c("psi[22->2] + psi[12->1]");
        assert_eq!(d3.bracket(&c("phi[->2]")).unwrap(), c("-phi[1->1]"));
    }

    #[test]
    fn bracket_rejects_mixed_parity() {
        let mixed = c("phi[1->2] + psi[11->1]");
        assert!(matches!(
            mixed.bracket(&c("psi[22->2]")),
            Err(CoderivationError::MixedParity { .. })
        ));
    }

    #[test]
    fn space_mismatch() {
        let other = GradedSpace::new(vec![Parity::Even, Parity::Odd]).unwrap();
        let a = Coderivation::<Rational>::phi(&other, &[1], 1);
        assert_eq!(
            a.compose(&c("psi[22->2]")),
            Err(CoderivationError::SpaceMismatch)
        );
    }

    #[test]
    fn evaluate_extended_examples() {
        let d2 = c("psi[22->2]");
        let out = d2.evaluate_extended(&MultiIndex::new(vec![2, 2])).unwrap();
        assert_eq!(out, BTreeMap::from([(MultiIndex::new(vec![2]), int(1))]));
        assert!(d2
            .evaluate_extended(&MultiIndex::new(vec![2, 2, 2]))
            .unwrap()
            .is_empty());
        // phi_2 is odd; inserting after the odd letter w_1 costs a sign.
        let out = c("phi[->2]")
            .evaluate_extended(&MultiIndex::new(vec![1]))
            .unwrap();
        assert_eq!(
            out,
            BTreeMap::from([
                (MultiIndex::new(vec![1, 2]), int(-1)),
                (MultiIndex::new(vec![2, 1]), int(1)),
            ])
        );
    }

    #[test]
    fn lambda_examples() {
        let one = MultiIndex::new(vec![1]);
        assert_eq!(c("phi[2->1]").lambda_insert(&one).unwrap(), c("phi[12->1]"));
        let f = c("phi[2->1] - 2*psi[11->2]");
        assert_eq!(f.lambda_insert(&MultiIndex::empty()).unwrap(), f);
        assert_eq!(
            c("phi[->2]")
                .lambda_insert(&MultiIndex::new(vec![2, 1]))
                .unwrap(),
            c("phi[21->2]")
        );
        assert!(c("phi[->2]")
            .lambda_insert(&MultiIndex::new(vec![3]))
            .is_err());
    }

    #[test]
    fn decleene_examples() {
        assert_eq!(
            c("phi[->2]").decleene_map().unwrap(),
            c("phi[21->2] + phi[12->2]")
        );
        assert!(Coderivation::<Rational>::zero(&plane())
            .decleene_map()
            .unwrap()
            .is_zero());
        let twice = c("phi[->1]")
            .decleene_map()
            .unwrap()
            .decleene_map()
            .unwrap();
        assert_eq!(
            twice,
            c("phi[2121->1] + phi[2112->1] + phi[1221->1] + phi[1212->1]")
        );
        let other = GradedSpace::new(vec![Parity::Even, Parity::Odd]).unwrap();
        assert!(matches!(
            Coderivation::<Rational>::phi(&other, &[], 1).decleene_map(),
            Err(CoderivationError::WrongSpace(_))
        ));
    }

    #[test]
    fn decleene_cocycles() {
        assert_eq!(decleene_cocycle(0, 2).unwrap(), c("phi[->2]"));
        assert_eq!(
            decleene_cocycle(2, 1).unwrap(),
            c("phi[21->1] + phi[12->1]")
        );
        assert_eq!(decleene_cocycle(1, 2).unwrap(), c("phi[2->2]"));
        assert_eq!(
            decleene_cocycle(3, 1).unwrap(),
            c("phi[212->1] + phi[122->1]")
        );
        for n in 0..7 {
            assert_eq!(decleene_cocycle(n, 1).unwrap().degree().unwrap(), Some(n));
        }
    }

    #[test]
    fn basis_enumeration() {
        for n in 0..=8 {
            assert_eq!(cochain_basis(&plane(), n).len(), 1 << (n + 1));
        }
        let b1 = cochain_basis(&plane(), 1);
        let text: Vec<String> = b1
            .into_iter()
            .map(|b| Coderivation::<Rational>::basis(&plane(), b).to_string())
            .collect();
        assert_eq!(text, ["phi[1->1]", "phi[1->2]", "phi[2->1]", "phi[2->2]"]);
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "psi[11->1] + psi[22->2]",
            "-psi[->1] + 3/2*phi[1->2] - 2*phi[122->1]",
            "0",
        ] {
            assert_eq!(c(s).to_string(), s);
        }
        let p = Coderivation::<Polynomial>::parse(
            &plane(),
            "psi[22->1] + (t1 + 1)*psi[12->1] - t2*psi[11->1]",
        )
        .unwrap();
        assert_eq!(
            p.to_string(),
            "-t2*psi[11->1] + (t1 + 1)*psi[12->1] + psi[22->1]"
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Coderivation::<Rational>::parse(&plane(), "psi[13->1]").is_err());
        assert!(Coderivation::<Rational>::parse(&plane(), "psi[1->1]").is_err());
        assert!(Coderivation::<Rational>::parse(&plane(), "t*psi[11->1]").is_err());
    }
}
