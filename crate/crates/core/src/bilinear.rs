//! Bilinear maps `X × Y → Z` between coordinate spaces.

use crate::error::{shape, Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::space::{coordinate_functionals, LinearMap, Subspace, Vector, VectorSpace};

/// A bilinear map held as the 3-tensor `T[k][i][j] = φ(e_i, d_j)_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap<F> {
    left: VectorSpace,
    right: VectorSpace,
    codomain: VectorSpace,
    coeffs: Vec<F>,
}

impl<F: Field> BilinearMap<F> {
    /// `coeffs` is laid out as `[k][i][j]`, i.e. index `k·m·n + i·n + j`.
    pub fn new(
        left: VectorSpace,
        right: VectorSpace,
        codomain: VectorSpace,
        coeffs: Vec<F>,
    ) -> Result<Self> {
        left.check::<F>()?;
        right.check::<F>()?;
        codomain.check::<F>()?;
        let expected = codomain.dim() * left.dim() * right.dim();
        if coeffs.len() != expected {
            return Err(shape(format!(
                "{} coefficients for a {}x{}x{} bilinear map",
                coeffs.len(),
                codomain.dim(),
                left.dim(),
                right.dim()
            )));
        }
        Ok(BilinearMap {
            left,
            right,
            codomain,
            coeffs,
        })
    }

    /// Builds the map from its values on basis pairs.
    pub fn from_basis_values(
        left: &VectorSpace,
        right: &VectorSpace,
        codomain: &VectorSpace,
        mut value: impl FnMut(usize, usize) -> Result<Vector<F>>,
    ) -> Result<Self> {
        let (m, n, z) = (left.dim(), right.dim(), codomain.dim());
        let mut coeffs = vec![F::zero(); z * m * n];
        for i in 0..m {
            for j in 0..n {
                let w = value(i, j)?;
                codomain.check_vector(&w)?;
                for (k, c) in w.into_coords().into_iter().enumerate() {
                    coeffs[k * m * n + i * n + j] = c;
                }
            }
        }
        Self::new(left.clone(), right.clone(), codomain.clone(), coeffs)
    }

    /// Bilinear map whose pair matrix (see [`Self::pair_matrix`]) is `m`.
    pub fn from_pair_matrix(
        left: &VectorSpace,
        right: &VectorSpace,
        codomain: &VectorSpace,
        m: &Matrix<F>,
    ) -> Result<Self> {
        if m.shape() != (codomain.dim(), left.dim() * right.dim()) {
            return Err(shape("pair matrix does not match the spaces"));
        }
        Self::new(
            left.clone(),
            right.clone(),
            codomain.clone(),
            m.data().to_vec(),
        )
    }

    pub fn zero(left: &VectorSpace, right: &VectorSpace, codomain: &VectorSpace) -> Self {
        BilinearMap {
            left: left.clone(),
            right: right.clone(),
            codomain: codomain.clone(),
            coeffs: vec![F::zero(); codomain.dim() * left.dim() * right.dim()],
        }
    }

    pub fn left(&self) -> &VectorSpace {
        &self.left
    }

    pub fn right(&self) -> &VectorSpace {
        &self.right
    }

    pub fn codomain(&self) -> &VectorSpace {
        &self.codomain
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize, i: usize, j: usize) -> &F {
        let (m, n) = (self.left.dim(), self.right.dim());
        &self.coeffs[k * m * n + i * n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `φ(e_i, d_j)`.
    pub fn basis_value(&self, i: usize, j: usize) -> Vector<F> {
        Vector::new(
            (0..self.codomain.dim())
                .map(|k| self.coeff(k, i, j).clone())
                .collect(),
        )
    }

    /// The `dim Z × (m·n)` matrix whose column `i·n + j` is `φ(e_i, d_j)`.
    pub fn pair_matrix(&self) -> Matrix<F> {
        let mn = self.left.dim() * self.right.dim();
        Matrix::new(self.codomain.dim(), mn, self.coeffs.clone()).expect("layout is [k][i·n+j]")
    }

    pub fn eval(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>> {
        self.left.check_vector(x)?;
        self.right.check_vector(y)?;
        let (m, n) = (self.left.dim(), self.right.dim());
        let mut out = vec![F::zero(); self.codomain.dim()];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let t = &self.coeffs[k * m * n + i * n + j];
                    if !t.is_zero() {
                        *o = o.clone() + w.clone() * t.clone();
                    }
                }
            }
        }
        Ok(Vector::new(out))
    }

    /// The section `φ(·, y) : X → Z`.
    pub fn section_left(&self, y: &Vector<F>) -> Result<LinearMap<F>> {
        self.right.check_vector(y)?;
        let (m, z) = (self.left.dim(), self.codomain.dim());
        let mut mat = Matrix::zeros(z, m);
        for k in 0..z {
            for i in 0..m {
                mat[(k, i)] = y
                    .coords()
                    .iter()
                    .enumerate()
                    .fold(F::zero(), |acc, (j, yj)| {
                        acc + yj.clone() * self.coeff(k, i, j).clone()
                    });
            }
        }
        LinearMap::new(self.left.clone(), self.codomain.clone(), mat)
    }

    /// The section `φ(x, ·) : Y → Z`.
    pub fn section_right(&self, x: &Vector<F>) -> Result<LinearMap<F>> {
        self.left.check_vector(x)?;
        let (n, z) = (self.right.dim(), self.codomain.dim());
        let mut mat = Matrix::zeros(z, n);
        for k in 0..z {
            for j in 0..n {
                mat[(k, j)] = x
                    .coords()
                    .iter()
                    .enumerate()
                    .fold(F::zero(), |acc, (i, xi)| {
                        acc + xi.clone() * self.coeff(k, i, j).clone()
                    });
            }
        }
        LinearMap::new(self.right.clone(), self.codomain.clone(), mat)
    }

    /// `L ∘ φ`, again bilinear.
    pub fn compose(&self, outer: &LinearMap<F>) -> Result<Self> {
        if !outer.domain().compatible(&self.codomain) {
            return Err(shape("linear map domain differs from bilinear codomain"));
        }
        let pm = outer.matrix().mul(&self.pair_matrix())?;
        Self::from_pair_matrix(&self.left, &self.right, outer.codomain(), &pm)
    }

    /// Restriction to `M × N`, in intrinsic coordinates over the canonical
    /// bases of `M` and `N`.
    pub fn restrict(&self, m: &Subspace<F>, n: &Subspace<F>) -> Result<Self> {
        if !m.ambient().compatible(&self.left) || !n.ambient().compatible(&self.right) {
            return Err(Error::SubspaceNotInAmbient(
                "restriction subspaces must live in the factor spaces".into(),
            ));
        }
        let (mb, nb) = (m.basis_vectors(), n.basis_vectors());
        let ms = VectorSpace::with_prefix(self.left.field(), mb.len(), "m");
        let ns = VectorSpace::with_prefix(self.right.field(), nb.len(), "n");
        Self::from_basis_values(&ms, &ns, &self.codomain, |a, b| self.eval(&mb[a], &nb[b]))
    }
}

/// Extends a bilinear map on `M × N` to `X × Y`.
///
/// `phi` is given in intrinsic coordinates over the canonical bases of `M`
/// and `N`. Inputs are expanded over `M ⊕ M^c` and `N ⊕ N^c`; the
/// extension agrees with `phi` on the `M × N` block and vanishes on every
/// block that touches a complement direction.
pub fn extend_bilinear<F: Field>(
    phi: &BilinearMap<F>,
    m: &Subspace<F>,
    n: &Subspace<F>,
    x: &VectorSpace,
    y: &VectorSpace,
) -> Result<BilinearMap<F>> {
    if !m.ambient().compatible(x) || !n.ambient().compatible(y) {
        return Err(Error::SubspaceNotInAmbient(
            "extension subspaces must live in the target factor spaces".into(),
        ));
    }
    if phi.left.dim() != m.dim() || phi.right.dim() != n.dim() {
        return Err(shape(format!(
            "bilinear map on {}x{} for subspaces of dimension {}x{}",
            phi.left.dim(),
            phi.right.dim(),
            m.dim(),
            n.dim()
        )));
    }
    let pm = coordinate_functionals(x, &m.basis_vectors())?;
    let pn = coordinate_functionals(y, &n.basis_vectors())?;
    BilinearMap::from_basis_values(x, y, &phi.codomain, |i, j| {
        phi.eval(&Vector::new(pm.column(i)), &Vector::new(pn.column(j)))
    })
}

/// The bilinear map `(u, v) ↦ (β_j γ_k)` sending a pair to the coefficient
/// table of its expansions over the independent families `E'` and `D'`
/// (flattened row-major into a space of dimension `|E'|·|D'|`).
pub fn matrix_unit_bilinear<F: Field>(
    x: &VectorSpace,
    y: &VectorSpace,
    e: &[Vector<F>],
    d: &[Vector<F>],
) -> Result<BilinearMap<F>> {
    let pe = coordinate_functionals(x, e)?;
    let pd = coordinate_functionals(y, d)?;
    let z = VectorSpace::with_prefix(x.field(), e.len() * d.len(), "Π");
    BilinearMap::from_basis_values(x, y, &z, |i, i2| {
        Ok(Vector::new(crate::linalg::outer(
            &pe.column(i),
            &pd.column(i2),
        )))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn sp(n: usize) -> VectorSpace {
        VectorSpace::over::<Q>(n)
    }

    fn v(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    fn product_pairing() -> BilinearMap<Q> {
        BilinearMap::new(sp(1), sp(1), sp(1), vec![Q::from_i64(1)]).unwrap()
    }

    fn sample() -> BilinearMap<Q> {
        let coeffs = (0..2 * 2 * 3)
            .map(|k| Q::from_i64(k as i64 % 5 - 2))
            .collect();
        BilinearMap::new(sp(2), sp(3), sp(2), coeffs).unwrap()
    }

    #[test]
    fn scalar_product_pairing() {
        assert_eq!(
            product_pairing().eval(&v(&[3]), &v(&[5])).unwrap(),
            v(&[15])
        );
    }

    #[test]
    fn zero_argument_gives_zero() {
        let phi = sample();
        assert!(phi.eval(&v(&[0, 0]), &v(&[1, 2, 3])).unwrap().is_zero());
    }

    #[test]
    fn additive_in_right_argument() {
        let phi = sample();
        let x = v(&[2, -1]);
        let (y1, y2) = (v(&[1, 0, 3]), v(&[-2, 5, 1]));
        let lhs = phi.eval(&x, &y1.add(&y2)).unwrap();
        let rhs = phi.eval(&x, &y1).unwrap().add(&phi.eval(&x, &y2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shape_errors_on_eval() {
        assert!(matches!(
            sample().eval(&v(&[1]), &v(&[1, 2, 3])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn sections() {
        let phi = product_pairing();
        assert!(phi.section_left(&v(&[0])).unwrap().is_zero());
        let s = phi.section_left(&v(&[2])).unwrap();
        assert_eq!(
            s.matrix(),
            &Matrix::new(1, 1, vec![Q::from_i64(2)]).unwrap()
        );
        let phi = sample();
        let (x, y) = (v(&[1, 4]), v(&[2, -3, 1]));
        assert_eq!(
            phi.section_left(&y).unwrap().apply(&x).unwrap(),
            phi.section_right(&x).unwrap().apply(&y).unwrap()
        );
    }

    #[test]
    fn extension_of_full_subspaces_is_identity() {
        let phi = sample();
        let ext = extend_bilinear(
            &phi,
            &Subspace::full(&sp(2)),
            &Subspace::full(&sp(3)),
            &sp(2),
            &sp(3),
        )
        .unwrap();
        assert_eq!(ext, phi);
    }

    #[test]
    fn extension_zero_fills_complement() {
        let m = Subspace::span(&sp(2), &[v(&[1, 0])]).unwrap();
        let n = Subspace::full(&sp(1));
        let phi = product_pairing();
        let ext = extend_bilinear(&phi, &m, &n, &sp(2), &sp(1)).unwrap();
        assert_eq!(ext.eval(&v(&[0, 1]), &v(&[1])).unwrap(), v(&[0]));
        assert_eq!(ext.eval(&v(&[1, 0]), &v(&[1])).unwrap(), v(&[1]));
    }

    #[test]
    fn extension_of_zero_is_zero() {
        let m = Subspace::span(&sp(3), &[v(&[1, 1, 0])]).unwrap();
        let n = Subspace::span(&sp(2), &[v(&[0, 1])]).unwrap();
        let zero = BilinearMap::zero(&sp(1), &sp(1), &sp(2));
        assert!(extend_bilinear(&zero, &m, &n, &sp(3), &sp(2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn extension_rejects_foreign_subspace() {
        let m = Subspace::full(&sp(3));
        let n = Subspace::full(&sp(1));
        assert!(matches!(
            extend_bilinear(&product_pairing(), &m, &n, &sp(2), &sp(1)),
            Err(Error::SubspaceNotInAmbient(_))
        ));
    }

    #[test]
    fn matrix_units() {
        let std2 = [v(&[1, 0]), v(&[0, 1])];
        let phi = matrix_unit_bilinear(&sp(2), &sp(2), &std2, &std2).unwrap();
        assert_eq!(
            phi.eval(&v(&[1, 0]), &v(&[0, 1])).unwrap(),
            v(&[0, 1, 0, 0])
        );
        assert!(phi.eval(&v(&[3, 1]), &v(&[0, 0])).unwrap().is_zero());
        assert_eq!(
            phi.eval(&v(&[1, 1]), &v(&[1, 1])).unwrap(),
            v(&[1, 1, 1, 1])
        );
        assert_eq!(
            matrix_unit_bilinear(&sp(2), &sp(2), &[v(&[1, 1]), v(&[2, 2])], &std2),
            Err(Error::DependentInput)
        );
    }

    #[test]
    fn matrix_units_over_skew_family() {
        // u = 2(1,1) + 3(0,1) expands with β = (2, 3)
        let e = [v(&[1, 1]), v(&[0, 1])];
        let d = [v(&[1])];
        let phi = matrix_unit_bilinear(&sp(2), &sp(1), &e, &d).unwrap();
        assert_eq!(phi.eval(&v(&[2, 5]), &v(&[1])).unwrap(), v(&[2, 3]));
    }
}
