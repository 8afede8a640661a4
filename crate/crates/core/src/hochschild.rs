//! The coboundary operator `D(phi) = [d, phi]` of a codifferential `d` as
//! exact matrices between cochain spaces, and the resulting cohomology.

use std::collections::HashMap;

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::coderivation::{cochain_basis, BasisCoderivation, Coderivation, GradedSpace};
use crate::error::{CoderivationError, HochschildError};
use crate::linalg::{Matrix, Span};
use crate::scalar::Rational;

pub type Cochain = Coderivation<Rational>;

/// Ordered basis of C^n = Hom(W^n, W).
#[derive(Clone, Debug)]
pub struct CochainBasis {
    degree: usize,
    elements: Vec<BasisCoderivation>,
    index: HashMap<BasisCoderivation, usize>,
}

impl CochainBasis {
    pub fn new(space: &GradedSpace, degree: usize) -> Self {
        let elements = cochain_basis(space, degree);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        CochainBasis {
            degree,
            elements,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisCoderivation] {
        &self.elements
    }

    pub fn position(&self, b: &BasisCoderivation) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Coordinates of `phi`, which must lie in this degree.
    pub fn coordinates(&self, phi: &Cochain) -> Result<Vec<Rational>, CoderivationError> {
        let mut v = vec![Rational::zero(); self.len()];
        for (b, c) in phi.terms() {
            let i = self
                .position(b)
                .ok_or_else(|| CoderivationError::MixedDegree(vec![self.degree, b.degree()]))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn combination(&self, space: &GradedSpace, coords: &[Rational]) -> Cochain {
        Coderivation::from_terms(
            space,
            self.elements.iter().cloned().zip(coords.iter().cloned()),
        )
    }
}

/// Matrix of `D: C^n -> C^{n+1}`; column `c` holds `D(basis_n[c])`.
#[derive(Clone, Debug)]
pub struct CoboundaryMatrix {
    pub source_degree: usize,
    pub matrix: Matrix<Rational>,
}

/// Cohomology data in one degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub cochain_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub representatives: Vec<Cochain>,
}

impl DegreeCohomology {
    pub fn dim(&self) -> usize {
        self.kernel_dim - self.image_dim
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub codifferential: Cochain,
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeCohomology::dim).collect()
    }

    pub fn degree(&self, n: usize) -> Option<&DegreeCohomology> {
        self.degrees.get(n)
    }
}

impl Serialize for DegreeCohomology {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DegreeCohomology", 5)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("cochain_dim", &self.cochain_dim)?;
        s.serialize_field("kernel_dim", &self.kernel_dim)?;
        s.serialize_field("image_dim", &self.image_dim)?;
        s.serialize_field("representatives", &self.representatives)?;
        s.end()
    }
}

struct ByDegree<'a>(&'a [DegreeCohomology]);

impl Serialize for ByDegree<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for d in self.0 {
            m.serialize_entry(&d.degree.to_string(), d)?;
        }
        m.end()
    }
}

impl Serialize for CohomologyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CohomologyReport", 3)?;
        s.serialize_field("codifferential", &self.codifferential)?;
        s.serialize_field("dims", &self.dims())?;
        s.serialize_field("degrees", &ByDegree(&self.degrees))?;
        s.end()
    }
}

/// Checks that `d` is an odd quadratic coderivation with `[d, d] = 0`.
pub fn validate_codifferential(d: &Cochain) -> Result<(), HochschildError> {
    let space = d.space();
    for (b, _) in d.terms() {
        if b.degree() != 2 {
            return Err(HochschildError::NotCodifferential(format!(
                "term {} has degree {}, expected 2",
                Coderivation::<Rational>::basis(space, b.clone()),
                b.degree()
            )));
        }
        if !b.parity(space).is_odd() {
            return Err(HochschildError::NotCodifferential(format!(
                "term {} is even",
                Coderivation::<Rational>::basis(space, b.clone())
            )));
        }
    }
    let square = d.bracket(d)?;
    if !square.is_zero() {
        return Err(HochschildError::NotCodifferential(format!(
            "[d, d] = {square}"
        )));
    }
    Ok(())
}

/// A validated codifferential together with its coboundary operator.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    d: Cochain,
}

impl CochainComplex {
    pub fn new(d: &Cochain) -> Result<Self, HochschildError> {
        validate_codifferential(d)?;
        Ok(CochainComplex { d: d.clone() })
    }

    pub fn codifferential(&self) -> &Cochain {
        &self.d
    }

    pub fn space(&self) -> &GradedSpace {
        self.d.space()
    }

    fn apply_basis(&self, b: &BasisCoderivation) -> Result<Cochain, CoderivationError> {
        self.d
            .bracket(&Coderivation::basis(self.space(), b.clone()))
    }

    /// `D(phi) = [d, phi]`, extended linearly over the terms of `phi`.
    pub fn coboundary(&self, phi: &Cochain) -> Result<Cochain, HochschildError> {
        phi.degree()?;
        let mut out = Coderivation::zero(self.space());
        for (b, c) in phi.terms() {
            out = out + self.apply_basis(b)?.scale(c);
        }
        Ok(out)
    }

    pub fn matrix(&self, n: usize) -> Result<CoboundaryMatrix, HochschildError> {
        let source = CochainBasis::new(self.space(), n);
        let target = CochainBasis::new(self.space(), n + 1);
        let mut matrix = Matrix::zeros(target.len(), source.len());
        for (col, b) in source.elements().iter().enumerate() {
            for (image, c) in self.apply_basis(b)?.terms() {
                let row = target
                    .position(image)
                    .expect("coboundary raises degree by one");
                matrix.set(row, col, c.clone());
            }
        }
        Ok(CoboundaryMatrix {
            source_degree: n,
            matrix,
        })
    }

    pub fn cohomology(&self, max_degree: usize) -> Result<CohomologyReport, HochschildError> {
        let space = self.space().clone();
        let mut degrees = Vec::with_capacity(max_degree + 1);
        let mut previous: Option<Matrix<Rational>> = None;
        for n in 0..=max_degree {
            let basis = CochainBasis::new(&space, n);
            let current = self.matrix(n)?.matrix;
            let kernel = current.kernel();
            let mut span = Span::new(basis.len());
            if let Some(prev) = &previous {
                for c in 0..prev.cols() {
                    span.insert(&prev.column(c));
                }
            }
            let image_dim = span.dimension();
            let mut representatives = Vec::new();
            for v in &kernel {
                if span.insert(v) {
                    representatives.push(basis.combination(&space, v));
                }
            }
            degrees.push(DegreeCohomology {
                degree: n,
                cochain_dim: basis.len(),
                kernel_dim: kernel.len(),
                image_dim,
                representatives,
            });
            previous = Some(current);
        }
        Ok(CohomologyReport {
            codifferential: self.d.clone(),
            degrees,
        })
    }

    pub fn is_cocycle(&self, phi: &Cochain) -> Result<bool, HochschildError> {
        Ok(self.coboundary(phi)?.is_zero())
    }

    /// A preimage of `phi` under `D`, if one exists. Degree-0 cochains are
    /// never coboundaries.
    pub fn coboundary_preimage(&self, phi: &Cochain) -> Result<Option<Cochain>, HochschildError> {
        let Some(n) = phi.degree()? else {
            return Ok(Some(Coderivation::zero(self.space())));
        };
        if n == 0 {
            return Ok(None);
        }
        let target = CochainBasis::new(self.space(), n).coordinates(phi)?;
        let m = self.matrix(n - 1)?.matrix;
        let source = CochainBasis::new(self.space(), n - 1);
        Ok(m.solve(&target)
            .map(|x| source.combination(self.space(), &x)))
    }

    /// Looks for `eta`, supported on basis elements whose output index is
    /// in `outputs`, such that `phi + eta` is a cocycle.
    pub fn cocycle_extension(
        &self,
        phi: &Cochain,
        outputs: &[usize],
    ) -> Result<Option<Cochain>, HochschildError> {
        let Some(n) = phi.degree()? else {
            return Ok(Some(Coderivation::zero(self.space())));
        };
        let full = self.matrix(n)?.matrix;
        let source = CochainBasis::new(self.space(), n);
        let target = CochainBasis::new(self.space(), n + 1);
        let allowed: Vec<usize> = (0..source.len())
            .filter(|&c| outputs.contains(&source.elements()[c].output))
            .collect();
        let columns: Vec<Vec<Rational>> = allowed.iter().map(|&c| full.column(c)).collect();
        let restricted = Matrix::from_columns(target.len(), &columns);
        let rhs: Vec<Rational> = target
            .coordinates(&self.coboundary(phi)?)?
            .into_iter()
            .map(|x| -x)
            .collect();
        Ok(restricted.solve(&rhs).map(|y| {
            let mut coords = vec![Rational::zero(); source.len()];
            for (k, &c) in allowed.iter().enumerate() {
                coords[c] = y[k].clone();
            }
            source.combination(self.space(), &coords)
        }))
    }

    /// Whether the degree-`n` cocycles `a` and `b` span the same subspace
    /// of H^n. False if any of them is not a degree-`n` cocycle.
    pub fn same_classes(
        &self,
        n: usize,
        a: &[Cochain],
        b: &[Cochain],
    ) -> Result<bool, HochschildError> {
        let basis = CochainBasis::new(self.space(), n);
        let coords = |set: &[Cochain]| -> Result<Option<Vec<Vec<Rational>>>, HochschildError> {
            let mut out = Vec::new();
            for phi in set {
                if !(phi.is_zero() || phi.degree()? == Some(n)) || !self.is_cocycle(phi)? {
                    return Ok(None);
                }
                out.push(basis.coordinates(phi)?);
            }
            Ok(Some(out))
        };
        let (Some(a), Some(b)) = (coords(a)?, coords(b)?) else {
            return Ok(false);
        };
        let mut image = Span::new(basis.len());
        if n > 0 {
            let m = self.matrix(n - 1)?.matrix;
            for c in 0..m.cols() {
                image.insert(&m.column(c));
            }
        }
        let extend = |vs: &[Vec<Rational>]| {
            let mut s = image.clone();
            for v in vs {
                s.insert(v);
            }
            s
        };
        let (sa, sb) = (extend(&a), extend(&b));
        Ok(sa.dimension() == sb.dimension() && b.iter().all(|v| sa.contains(v)))
    }

    /// Whether `D_{n+1} D_n` is the zero matrix.
    pub fn verify_d_squared(&self, n: usize) -> Result<bool, HochschildError> {
        let first = self.matrix(n)?.matrix;
        let second = self.matrix(n + 1)?.matrix;
        Ok(second.mul(&first).is_zero())
    }
}

pub fn coboundary(d: &Cochain, phi: &Cochain) -> Result<Cochain, HochschildError> {
    CochainComplex::new(d)?.coboundary(phi)
}

pub fn coboundary_matrix(d: &Cochain, n: usize) -> Result<CoboundaryMatrix, HochschildError> {
    CochainComplex::new(d)?.matrix(n)
}

pub fn cohomology(d: &Cochain, max_degree: usize) -> Result<CohomologyReport, HochschildError> {
    CochainComplex::new(d)?.cohomology(max_degree)
}

pub fn is_cocycle(d: &Cochain, phi: &Cochain) -> Result<bool, HochschildError> {
    CochainComplex::new(d)?.is_cocycle(phi)
}

pub fn is_coboundary(d: &Cochain, phi: &Cochain) -> Result<Option<Cochain>, HochschildError> {
    CochainComplex::new(d)?.coboundary_preimage(phi)
}

pub fn verify_d_squared(d: &Cochain, n: usize) -> Result<bool, HochschildError> {
    CochainComplex::new(d)?.verify_d_squared(n)
}

/// Default number of degrees computed by reports.
pub const DEFAULT_MAX_DEGREE: usize = 6;
