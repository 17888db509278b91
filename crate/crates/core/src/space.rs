//! Finite-dimensional coordinate spaces, linear maps, subspaces and quotients.

use std::fmt;

use crate::error::{shape, Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{Matrix, Rref};

/// A coordinate space `F^n` with an ordered, labelled basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    field: FieldSpec,
    labels: Vec<String>,
}

impl VectorSpace {
    /// Space with default basis labels `e0 .. e{n-1}`.
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Self::with_prefix(field, dim, "e")
    }

    pub fn with_prefix(field: FieldSpec, dim: usize, prefix: &str) -> Self {
        VectorSpace {
            field,
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn with_labels(field: FieldSpec, labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Parse(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(VectorSpace { field, labels })
    }

    pub fn over<F: Field>(dim: usize) -> Self {
        Self::new(F::spec(), dim)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Same field and dimension; labels are presentation only.
    pub fn compatible(&self, other: &VectorSpace) -> bool {
        self.field == other.field && self.dim() == other.dim()
    }

    /// The space of row-major basis pairs `label_i ⊗ label_j`.
    pub fn tensor(&self, other: &VectorSpace) -> VectorSpace {
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        VectorSpace {
            field: self.field,
            labels,
        }
    }

    /// The coordinate dual, labels `e0*`, ...; taking it twice gives back
    /// the original labels.
    pub fn dual(&self) -> VectorSpace {
        let flip = |l: &String| match l.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{l}*"),
        };
        VectorSpace {
            field: self.field,
            labels: self.labels.iter().map(flip).collect(),
        }
    }

    pub(crate) fn check<F: Field>(&self) -> Result<()> {
        F::spec().ensure_same(&self.field)
    }

    pub(crate) fn check_vector<F: Field>(&self, v: &Vector<F>) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(shape(format!(
                "vector of length {} in a space of dimension {}",
                v.dim(),
                self.dim()
            )));
        }
        self.check::<F>()
    }
}

/// Coordinates of a vector over a space's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector<F> {
    coords: Vec<F>,
}

impl<F: Field> Vector<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Vector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Vector::new(coords.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Vector::new(vec![F::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[i] = F::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, alpha: &F) -> Self {
        Vector::new(
            self.coords
                .iter()
                .map(|c| alpha.clone() * c.clone())
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "vector length mismatch");
        Vector::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-F::one()))
    }

    pub fn dot(&self, rhs: &Self) -> F {
        crate::linalg::dot(&self.coords, &rhs.coords)
    }
}

impl<F: Field> fmt::Display for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A linear map between coordinate spaces, stored as a codomain × domain matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap<F> {
    domain: VectorSpace,
    codomain: VectorSpace,
    matrix: Matrix<F>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(domain: VectorSpace, codomain: VectorSpace, matrix: Matrix<F>) -> Result<Self> {
        domain.check::<F>()?;
        codomain.check::<F>()?;
        if matrix.shape() != (codomain.dim(), domain.dim()) {
            return Err(shape(format!(
                "matrix {:?} for a map from dimension {} to dimension {}",
                matrix.shape(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinearMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Map between default-labelled spaces of the matrix's shape.
    pub fn from_matrix(matrix: Matrix<F>) -> Self {
        let (r, c) = matrix.shape();
        LinearMap {
            domain: VectorSpace::over::<F>(c),
            codomain: VectorSpace::over::<F>(r),
            matrix,
        }
    }

    pub fn identity(space: &VectorSpace) -> Self {
        LinearMap {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn zero(domain: &VectorSpace, codomain: &VectorSpace) -> Self {
        LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn domain(&self) -> &VectorSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &VectorSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }

    pub fn apply(&self, x: &Vector<F>) -> Result<Vector<F>> {
        self.domain.check_vector(x)?;
        Ok(Vector::new(self.matrix.mul_vec(x.coords())?))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap<F>) -> Result<Self> {
        if !inner.codomain.compatible(&self.domain) {
            return Err(shape(format!(
                "composing a map on dimension {} after one into dimension {}",
                self.domain.dim(),
                inner.codomain.dim()
            )));
        }
        Ok(LinearMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        self.matrix.inverse().map(|m| LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: m,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim()
    }
}

/// A subspace held by the reduced row-echelon form of a spanning set.
/// Equality ignores basis labels of the ambient space.
#[derive(Debug, Clone)]
pub struct Subspace<F> {
    ambient: VectorSpace,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: PartialEq> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.compatible(&other.ambient) && self.basis == other.basis
    }
}

impl<F: Eq> Eq for Subspace<F> {}

impl<F: Field> Subspace<F> {
    pub fn span(ambient: &VectorSpace, vectors: &[Vector<F>]) -> Result<Self> {
        ambient.check::<F>()?;
        for v in vectors {
            if v.dim() != ambient.dim() {
                return Err(Error::SubspaceNotInAmbient(format!(
                    "vector of length {} in a space of dimension {}",
                    v.dim(),
                    ambient.dim()
                )));
            }
        }
        let rows = vectors.iter().map(|v| v.coords().to_vec()).collect();
        let m = Matrix::from_rows(rows, ambient.dim())?;
        Ok(Self::from_rref(ambient.clone(), m.rref()))
    }

    /// Span of the rows of `m`.
    pub fn row_space(ambient: &VectorSpace, m: &Matrix<F>) -> Result<Self> {
        ambient.check::<F>()?;
        if m.cols() != ambient.dim() {
            return Err(Error::SubspaceNotInAmbient(format!(
                "rows of length {} in a space of dimension {}",
                m.cols(),
                ambient.dim()
            )));
        }
        Ok(Self::from_rref(ambient.clone(), m.rref()))
    }

    fn from_rref(ambient: VectorSpace, red: Rref<F>) -> Self {
        Subspace {
            basis: red.matrix.row_block(0, red.rank),
            pivots: red.pivots,
            ambient,
        }
    }

    pub fn zero(ambient: &VectorSpace) -> Self {
        Subspace {
            ambient: ambient.clone(),
            basis: Matrix::zeros(0, ambient.dim()),
            pivots: vec![],
        }
    }

    pub fn full(ambient: &VectorSpace) -> Self {
        Subspace {
            ambient: ambient.clone(),
            basis: Matrix::identity(ambient.dim()),
            pivots: (0..ambient.dim()).collect(),
        }
    }

    pub fn ambient(&self) -> &VectorSpace {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis rows (reduced row-echelon form).
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vector<F>> {
        self.basis.row_vecs().into_iter().map(Vector::new).collect()
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        if v.dim() != self.ambient.dim() {
            return false;
        }
        let row = Matrix::from_rows(vec![v.coords().to_vec()], self.ambient.dim()).unwrap();
        self.basis.stack(&row).unwrap().rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient.compatible(&other.ambient)
            && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace<F>) -> Result<Self> {
        self.same_ambient(other)?;
        Self::row_space(&self.ambient, &self.basis.stack(&other.basis)?)
    }

    pub fn meets_trivially(&self, other: &Subspace<F>) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }

    fn same_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient.compatible(&other.ambient) {
            Ok(())
        } else {
            Err(Error::SubspaceNotInAmbient(format!(
                "ambient dimensions {} and {}",
                self.ambient.dim(),
                other.ambient.dim()
            )))
        }
    }

    /// Coordinates of `v` over the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &Vector<F>) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        // the basis is in RREF: the coordinate on row r is v at pivot r
        Some(self.pivots.iter().map(|&p| v.coords()[p].clone()).collect())
    }

    /// Inclusion map from intrinsic coordinates into the ambient space.
    pub fn inclusion(&self) -> LinearMap<F> {
        LinearMap {
            domain: VectorSpace::with_prefix(self.ambient.field, self.dim(), "b"),
            codomain: self.ambient.clone(),
            matrix: self.basis.transpose(),
        }
    }
}

/// Coordinate functionals of a linearly independent family.
///
/// Returns the `k × n` matrix `P` with `P b_a = unit_a` for the given
/// vectors and `P c = 0` on the canonical complement of their span. Used
/// wherever a vector of the ambient space must be expanded over a chosen
/// basis of a subspace plus its complement.
pub fn coordinate_functionals<F: Field>(
    ambient: &VectorSpace,
    family: &[Vector<F>],
) -> Result<Matrix<F>> {
    let span = Subspace::span(ambient, family)?;
    if span.dim() != family.len() {
        return Err(Error::DependentInput);
    }
    let comp = complement(&span);
    let mut columns: Vec<Vec<F>> = family.iter().map(|v| v.coords().to_vec()).collect();
    columns.extend(comp.basis.row_vecs());
    let b = Matrix::from_columns(&columns, ambient.dim())?;
    let inv = b.inverse().ok_or(Error::DependentInput)?;
    Ok(inv.row_block(0, family.len()))
}

pub fn kernel_basis<F: Field>(map: &LinearMap<F>) -> Subspace<F> {
    let vectors: Vec<Vector<F>> = map
        .matrix
        .nullspace()
        .into_iter()
        .map(Vector::new)
        .collect();
    Subspace::span(&map.domain, &vectors).expect("kernel vectors live in the domain")
}

pub fn image_basis<F: Field>(map: &LinearMap<F>) -> Subspace<F> {
    Subspace::row_space(&map.codomain, &map.matrix.transpose())
        .expect("columns live in the codomain")
}

/// Standard basis vectors at the non-pivot columns of `m`'s echelon form.
pub fn complement<F: Field>(m: &Subspace<F>) -> Subspace<F> {
    let n = m.ambient.dim();
    let vectors: Vec<Vector<F>> = (0..n)
        .filter(|c| !m.pivots.contains(c))
        .map(|c| Vector::unit(n, c))
        .collect();
    Subspace::span(&m.ambient, &vectors).expect("unit vectors live in the ambient space")
}

/// The quotient `X/M`, represented on the canonical complement of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace<F> {
    ambient: VectorSpace,
    subspace: Subspace<F>,
    complement: Subspace<F>,
    projection: LinearMap<F>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn ambient(&self) -> &VectorSpace {
        &self.ambient
    }

    pub fn subspace(&self) -> &Subspace<F> {
        &self.subspace
    }

    pub fn complement(&self) -> &Subspace<F> {
        &self.complement
    }

    /// The quotient space itself, coordinatised by the complement basis.
    pub fn space(&self) -> &VectorSpace {
        self.projection.codomain()
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    /// The natural surjection `π : X → X/M`.
    pub fn projection(&self) -> &LinearMap<F> {
        &self.projection
    }

    pub fn project(&self, x: &Vector<F>) -> Result<Vector<F>> {
        self.projection.apply(x)
    }

    /// Sends a coset to its representative in the complement.
    pub fn lift(&self) -> LinearMap<F> {
        LinearMap {
            domain: self.space().clone(),
            codomain: self.ambient.clone(),
            matrix: self.complement.basis.transpose(),
        }
    }

    pub fn same_coset(&self, x: &Vector<F>, y: &Vector<F>) -> Result<bool> {
        Ok(self.project(x)? == self.project(y)?)
    }
}

pub fn quotient<F: Field>(ambient: &VectorSpace, m: &Subspace<F>) -> Result<QuotientSpace<F>> {
    if !m.ambient.compatible(ambient) {
        return Err(Error::SubspaceNotInAmbient(format!(
            "subspace of dimension-{} space, quotient of dimension-{} space",
            m.ambient.dim(),
            ambient.dim()
        )));
    }
    let comp = complement(m);
    // expand x over [M basis | complement basis]; the complement block is π
    let mut columns = m.basis.row_vecs();
    columns.extend(comp.basis.row_vecs());
    let b = Matrix::from_columns(&columns, ambient.dim())?;
    let inv = b
        .inverse()
        .expect("M and its complement span the ambient space");
    let proj = inv.row_block(m.dim(), ambient.dim());
    let space = VectorSpace::with_prefix(ambient.field, comp.dim(), "q");
    Ok(QuotientSpace {
        ambient: ambient.clone(),
        subspace: m.clone(),
        complement: comp,
        projection: LinearMap {
            domain: ambient.clone(),
            codomain: space,
            matrix: proj,
        },
    })
}

/// The unique `L̂ : X/M → Z` with `L = L̂ ∘ π`, provided `M ⊆ N(L)`.
pub fn factor_through_quotient<F: Field>(
    map: &LinearMap<F>,
    q: &QuotientSpace<F>,
) -> Result<LinearMap<F>> {
    if !map.domain.compatible(&q.ambient) {
        return Err(shape(format!(
            "map on dimension {} against a quotient of dimension {}",
            map.domain.dim(),
            q.ambient.dim()
        )));
    }
    for (index, m) in q.subspace.basis_vectors().iter().enumerate() {
        if !map.apply(m)?.is_zero() {
            return Err(Error::KernelConditionViolated { index });
        }
    }
    map.compose(&q.lift())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn qspace(n: usize) -> VectorSpace {
        VectorSpace::over::<Q>(n)
    }

    fn v(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    fn map(rows: &[&[i64]], domain: usize) -> LinearMap<Q> {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_i64(x)).collect())
                .collect(),
            domain,
        )
        .unwrap();
        LinearMap::new(qspace(domain), qspace(rows.len()), m).unwrap()
    }

    #[test]
    fn kernel_of_difference_functional() {
        let k = kernel_basis(&map(&[&[1, -1]], 2));
        assert_eq!(k, Subspace::span(&qspace(2), &[v(&[1, 1])]).unwrap());
    }

    #[test]
    fn kernel_extremes() {
        assert_eq!(kernel_basis(&LinearMap::<Q>::identity(&qspace(3))).dim(), 0);
        let zero = LinearMap::<Q>::zero(&qspace(3), &qspace(2));
        assert_eq!(kernel_basis(&zero), Subspace::full(&qspace(3)));
    }

    #[test]
    fn images() {
        assert_eq!(
            image_basis(&map(&[&[1, 0], &[0, 0]], 2)),
            Subspace::span(&qspace(2), &[v(&[1, 0])]).unwrap()
        );
        assert_eq!(image_basis(&LinearMap::<Q>::identity(&qspace(2))).dim(), 2);
        assert_eq!(
            image_basis(&map(&[&[1, 2], &[2, 4]], 2)),
            Subspace::span(&qspace(2), &[v(&[1, 2])]).unwrap()
        );
    }

    #[test]
    fn complements() {
        let m = Subspace::span(&qspace(2), &[v(&[1, 1])]).unwrap();
        assert_eq!(
            complement(&m),
            Subspace::span(&qspace(2), &[v(&[0, 1])]).unwrap()
        );
        assert_eq!(
            complement(&Subspace::<Q>::zero(&qspace(3))),
            Subspace::full(&qspace(3))
        );
        assert_eq!(complement(&Subspace::<Q>::full(&qspace(3))).dim(), 0);
        assert!(m.meets_trivially(&complement(&m)).unwrap());
    }

    #[test]
    fn quotient_by_diagonal() {
        let m = Subspace::span(&qspace(2), &[v(&[1, 1])]).unwrap();
        let q = quotient(&qspace(2), &m).unwrap();
        assert_eq!(q.dim(), 1);
        let a = q.project(&v(&[1, 0])).unwrap();
        let b = q.project(&v(&[0, 1])).unwrap();
        assert!(!a.is_zero());
        assert_eq!(a, b.scale(&Q::from_i64(-1)));
        assert!(q.same_coset(&v(&[3, 1]), &v(&[2, 0])).unwrap());
        assert!(!q.same_coset(&v(&[3, 1]), &v(&[2, 1])).unwrap());
    }

    #[test]
    fn quotient_extremes() {
        let x = qspace(3);
        let q0: QuotientSpace<Q> = quotient(&x, &Subspace::zero(&x)).unwrap();
        assert!(q0.projection().inverse().is_some());
        let qx = quotient(&x, &Subspace::<Q>::full(&x)).unwrap();
        assert_eq!(qx.dim(), 0);
        assert!(qx.projection().is_zero());
        assert!(matches!(
            quotient(&qspace(2), &Subspace::<Q>::zero(&x)),
            Err(Error::SubspaceNotInAmbient(_))
        ));
    }

    #[test]
    fn factoring_through_quotient() {
        let m = Subspace::span(&qspace(2), &[v(&[1, 1])]).unwrap();
        let q = quotient(&qspace(2), &m).unwrap();
        let l = map(&[&[1, -1]], 2);
        let lhat = factor_through_quotient(&l, &q).unwrap();
        assert_eq!(lhat.domain().dim(), 1);
        let image = lhat.apply(&q.project(&v(&[1, 0])).unwrap()).unwrap();
        assert_eq!(image, v(&[1]));
        assert_eq!(lhat.compose(q.projection()).unwrap().matrix(), l.matrix());
    }

    #[test]
    fn projection_factors_to_identity() {
        let m = Subspace::span(&qspace(3), &[v(&[1, 2, 0])]).unwrap();
        let q = quotient(&qspace(3), &m).unwrap();
        let lhat = factor_through_quotient(q.projection(), &q).unwrap();
        assert_eq!(lhat.matrix(), &Matrix::identity(2));
    }

    #[test]
    fn kernel_condition_violation() {
        let m = Subspace::span(&qspace(2), &[v(&[1, 1])]).unwrap();
        let q = quotient(&qspace(2), &m).unwrap();
        assert_eq!(
            factor_through_quotient(&map(&[&[1, 0]], 2), &q),
            Err(Error::KernelConditionViolated { index: 0 })
        );
    }

    #[test]
    fn coordinate_functionals_expand_over_family() {
        let x = qspace(3);
        let fam = [v(&[1, 1, 0]), v(&[0, 1, 1])];
        let p = coordinate_functionals(&x, &fam).unwrap();
        assert_eq!(
            p.mul_vec(fam[0].coords()).unwrap(),
            v(&[1, 0]).into_coords()
        );
        assert_eq!(
            p.mul_vec(fam[1].coords()).unwrap(),
            v(&[0, 1]).into_coords()
        );
        assert_eq!(
            coordinate_functionals(&x, &[v(&[1, 0, 0]), v(&[2, 0, 0])]),
            Err(Error::DependentInput)
        );
    }

    #[test]
    fn subspace_coordinates_roundtrip() {
        let s = Subspace::span(&qspace(3), &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 5, 7]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.inclusion().apply(&Vector::new(c)).unwrap(), w);
        assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(
            VectorSpace::with_labels(crate::FieldSpec::Rational, vec!["a".into(), "a".into()])
                .is_err()
        );
    }
}
