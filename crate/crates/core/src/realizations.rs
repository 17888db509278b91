//! The two concrete tensor products of finite-dimensional spaces.
//!
//! [`QuotientRealization`] is the free linear space on `X × Y` modulo the
//! bilinearity relations. The quotient is never materialised: a free vector
//! is reduced to a coefficient table over the basis pairs by expanding every
//! carrier point bilinearly, and two free vectors lie in the same coset
//! exactly when their tables agree.
//!
//! [`DualRealization`] represents `x ⊗ y` as the functional `ψ ↦ ψ(x, y)`
//! on scalar bilinear forms. Such a functional is fixed by its values on the
//! basis-pair forms, which are stored as the same row-major table.

use crate::bilinear::BilinearMap;
use crate::error::{shape, Error, Result};
use crate::field::Field;
use crate::free::{free_embed, FreeVector};
use crate::linalg::{outer, Matrix};
use crate::space::{LinearMap, Vector, VectorSpace};
use crate::tensor::TensorRealization;

fn check_pair<F: Field>(left: &VectorSpace, right: &VectorSpace) -> Result<()> {
    left.check::<F>()?;
    right.check::<F>()?;
    left.field().ensure_same(&right.field())
}

/// `Φ(C) = Σ C_ij φ(e_i, d_j)`, whose matrix is the pair matrix of `φ`.
fn table_factorization<F: Field>(
    left: &VectorSpace,
    right: &VectorSpace,
    tensor: &VectorSpace,
    phi: &BilinearMap<F>,
) -> Result<LinearMap<F>> {
    if !phi.left().compatible(left) || !phi.right().compatible(right) {
        return Err(shape(format!(
            "bilinear map on {}x{} for a tensor product of {}x{}",
            phi.left().dim(),
            phi.right().dim(),
            left.dim(),
            right.dim()
        )));
    }
    LinearMap::new(tensor.clone(), phi.codomain().clone(), phi.pair_matrix())
}

// ---------------------------------------------------------------------------
// quotient of the free space

/// A generator of the relation manifold `M` of the free space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationGenerator<F> {
    /// `e_{(x₁+x₂, y)} − e_{(x₁, y)} − e_{(x₂, y)}`
    LeftAdditive {
        x1: Vector<F>,
        x2: Vector<F>,
        y: Vector<F>,
    },
    /// `e_{(x, y₁+y₂)} − e_{(x, y₁)} − e_{(x, y₂)}`
    RightAdditive {
        x: Vector<F>,
        y1: Vector<F>,
        y2: Vector<F>,
    },
    /// `e_{(αx, y)} − α e_{(x, y)}`
    LeftHomogeneous {
        alpha: F,
        x: Vector<F>,
        y: Vector<F>,
    },
    /// `e_{(x, αy)} − α e_{(x, y)}`
    RightHomogeneous {
        alpha: F,
        x: Vector<F>,
        y: Vector<F>,
    },
}

impl<F: Field> RelationGenerator<F> {
    pub fn to_free(&self, left: &VectorSpace, right: &VectorSpace) -> Result<FreeVector<F>> {
        let mut f = FreeVector::zero(left, right);
        let one = F::one();
        let minus = -F::one();
        match self {
            RelationGenerator::LeftAdditive { x1, x2, y } => {
                f.add_term(one, &x1.add(x2), y)?;
                f.add_term(minus.clone(), x1, y)?;
                f.add_term(minus, x2, y)?;
            }
            RelationGenerator::RightAdditive { x, y1, y2 } => {
                f.add_term(one, x, &y1.add(y2))?;
                f.add_term(minus.clone(), x, y1)?;
                f.add_term(minus, x, y2)?;
            }
            RelationGenerator::LeftHomogeneous { alpha, x, y } => {
                f.add_term(one, &x.scale(alpha), y)?;
                f.add_term(-alpha.clone(), x, y)?;
            }
            RelationGenerator::RightHomogeneous { alpha, x, y } => {
                f.add_term(one, x, &y.scale(alpha))?;
                f.add_term(-alpha.clone(), x, y)?;
            }
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRealization {
    left: VectorSpace,
    right: VectorSpace,
    space: VectorSpace,
}

impl QuotientRealization {
    pub fn new<F: Field>(left: &VectorSpace, right: &VectorSpace) -> Result<Self> {
        check_pair::<F>(left, right)?;
        Ok(QuotientRealization {
            left: left.clone(),
            right: right.clone(),
            space: left.tensor(right),
        })
    }

    /// The coefficient table of the coset of `f`.
    pub fn normal_form<F: Field>(&self, f: &FreeVector<F>) -> Result<Matrix<F>> {
        if !f.left().compatible(&self.left) || !f.right().compatible(&self.right) {
            return Err(Error::MixedCarriers(format!(
                "free vector over {}x{} reduced in a quotient over {}x{}",
                f.left().dim(),
                f.right().dim(),
                self.left.dim(),
                self.right.dim()
            )));
        }
        let (m, n) = (self.left.dim(), self.right.dim());
        let mut table = vec![F::zero(); m * n];
        for t in f.terms() {
            // e_{(x,y)} ≡ Σ x_i y_j e_{(e_i, d_j)} modulo M
            for (acc, c) in table.iter_mut().zip(outer(t.x.coords(), t.y.coords())) {
                if !c.is_zero() {
                    *acc = acc.clone() + t.coeff.clone() * c;
                }
            }
        }
        Matrix::new(m, n, table)
    }

    /// Whether `f` lies in the relation manifold `M`.
    pub fn member_relation_span<F: Field>(&self, f: &FreeVector<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `x ⊗ y = [e_{(x,y)}]`.
    pub fn theta_quotient<F: Field>(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Matrix<F>> {
        self.normal_form(&free_embed(&self.left, &self.right, x, y)?)
    }

    pub fn factorize_quotient<F: Field>(&self, phi: &BilinearMap<F>) -> Result<LinearMap<F>> {
        table_factorization(&self.left, &self.right, &self.space, phi)
    }
}

/// The linear extension `Φ̃(Σ αᵢ e_{(xᵢ,yᵢ)}) = Σ αᵢ φ(xᵢ, yᵢ)` of `φ` to the
/// free space.
pub fn free_linearization<F: Field>(phi: &BilinearMap<F>, f: &FreeVector<F>) -> Result<Vector<F>> {
    if !f.left().compatible(phi.left()) || !f.right().compatible(phi.right()) {
        return Err(Error::MixedCarriers(
            "free vector and bilinear map disagree on X×Y".into(),
        ));
    }
    let mut acc = Vector::zeros(phi.codomain().dim());
    for t in f.terms() {
        acc = acc.add(&phi.eval(&t.x, &t.y)?.scale(&t.coeff));
    }
    Ok(acc)
}

impl<F: Field> TensorRealization<F> for QuotientRealization {
    fn left(&self) -> &VectorSpace {
        &self.left
    }

    fn right(&self) -> &VectorSpace {
        &self.right
    }

    fn tensor_space(&self) -> &VectorSpace {
        &self.space
    }

    fn theta(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>> {
        Ok(Vector::new(self.theta_quotient(x, y)?.into_data()))
    }

    fn factorize(&self, phi: &BilinearMap<F>) -> Result<LinearMap<F>> {
        self.factorize_quotient(phi)
    }

    fn name(&self) -> String {
        "quotient".into()
    }
}

// ---------------------------------------------------------------------------
// functionals on bilinear forms

/// A linear functional on the scalar bilinear forms on `X × Y`, held by its
/// values `C_ij = t(ψ_ij)` on the basis-pair forms `ψ_ij(x, y) = x_i y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTensor<F> {
    table: Matrix<F>,
}

impl<F: Field> DualTensor<F> {
    pub fn from_table(table: Matrix<F>) -> Self {
        DualTensor { table }
    }

    pub fn table(&self) -> &Matrix<F> {
        &self.table
    }

    /// `t(ψ) = Σ C_ij ψ(e_i, d_j)`, one value per coordinate of `ψ`'s codomain.
    pub fn action(&self, psi: &BilinearMap<F>) -> Result<Vector<F>> {
        if self.table.shape() != (psi.left().dim(), psi.right().dim()) {
            return Err(shape(format!(
                "{}x{} tensor applied to a form on {}x{}",
                self.table.rows(),
                self.table.cols(),
                psi.left().dim(),
                psi.right().dim()
            )));
        }
        Ok(Vector::new(psi.pair_matrix().mul_vec(self.table.data())?))
    }

    /// `μᵀ C ν`; on `x ⊗ y` this is `μ(x) ν(y)`.
    pub fn apply_form(&self, mu: &Vector<F>, nu: &Vector<F>) -> Result<F> {
        if mu.dim() != self.table.rows() || nu.dim() != self.table.cols() {
            return Err(shape(format!(
                "functionals of length {} and {} on a {}x{} tensor",
                mu.dim(),
                nu.dim(),
                self.table.rows(),
                self.table.cols()
            )));
        }
        let cn = self.table.mul_vec(nu.coords())?;
        Ok(Vector::new(cn).dot(mu))
    }

    /// `uᵀ C v` as a real number, the Euclidean pairing; on `x ⊗ y` this is
    /// `⟨x, u⟩⟨y, v⟩`.
    pub fn inner_eval(&self, u: &Vector<F>, v: &Vector<F>) -> Result<f64> {
        if !F::spec().is_real() {
            return Err(Error::NonRealField(F::spec().to_string()));
        }
        let value = self.apply_form(u, v)?;
        value
            .to_real()
            .ok_or_else(|| Error::Overflow(format!("{value} has no finite real value")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualRealization {
    left: VectorSpace,
    right: VectorSpace,
    space: VectorSpace,
}

impl DualRealization {
    pub fn new<F: Field>(left: &VectorSpace, right: &VectorSpace) -> Result<Self> {
        check_pair::<F>(left, right)?;
        Ok(DualRealization {
            left: left.clone(),
            right: right.clone(),
            space: left.tensor(right),
        })
    }

    /// The functional `ψ ↦ ψ(x, y)`, read off on the basis-pair forms.
    pub fn theta_dual<F: Field>(&self, x: &Vector<F>, y: &Vector<F>) -> Result<DualTensor<F>> {
        self.left.check_vector(x)?;
        self.right.check_vector(y)?;
        let (m, n) = (self.left.dim(), self.right.dim());
        let mut table = Matrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                table[(i, j)] = x.coords()[i].clone() * y.coords()[j].clone();
            }
        }
        Ok(DualTensor { table })
    }

    /// `Φ(Σ xᵢ ⊗ yᵢ) = Σ φ(xᵢ, yᵢ)`, evaluated on the representation of `t`
    /// over basis pairs.
    pub fn factorize_dual<F: Field>(&self, phi: &BilinearMap<F>) -> Result<LinearMap<F>> {
        table_factorization(&self.left, &self.right, &self.space, phi)
    }

    pub fn element<F: Field>(&self, coords: &Vector<F>) -> Result<DualTensor<F>> {
        self.space.check_vector(coords)?;
        Ok(DualTensor {
            table: Matrix::new(self.left.dim(), self.right.dim(), coords.coords().to_vec())?,
        })
    }
}

impl<F: Field> TensorRealization<F> for DualRealization {
    fn left(&self) -> &VectorSpace {
        &self.left
    }

    fn right(&self) -> &VectorSpace {
        &self.right
    }

    fn tensor_space(&self) -> &VectorSpace {
        &self.space
    }

    fn theta(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>> {
        Ok(Vector::new(self.theta_dual(x, y)?.table.into_data()))
    }

    fn factorize(&self, phi: &BilinearMap<F>) -> Result<LinearMap<F>> {
        self.factorize_dual(phi)
    }

    fn name(&self) -> String {
        "dual".into()
    }
}

/// The rank-one form `ψ(x, y) = μ(x) ν(y)`.
pub fn product_form<F: Field>(
    left: &VectorSpace,
    right: &VectorSpace,
    mu: &Vector<F>,
    nu: &Vector<F>,
) -> Result<BilinearMap<F>> {
    left.check_vector(mu)?;
    right.check_vector(nu)?;
    let scalar = VectorSpace::with_prefix(left.field(), 1, "z");
    BilinearMap::from_basis_values(left, right, &scalar, |i, j| {
        Ok(Vector::new(vec![
            mu.coords()[i].clone() * nu.coords()[j].clone(),
        ]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::tensor::{canonical_iso, check_axioms, single_tensor};

    type Q = Rational;

    fn sp(n: usize) -> VectorSpace {
        VectorSpace::over::<Q>(n)
    }

    fn v(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    fn table(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_i64(x)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn quotient22() -> QuotientRealization {
        QuotientRealization::new::<Q>(&sp(2), &sp(2)).unwrap()
    }

    #[test]
    fn basis_pair_normal_form() {
        let r = quotient22();
        let f = free_embed(&sp(2), &sp(2), &v(&[1, 0]), &v(&[0, 1])).unwrap();
        assert_eq!(r.normal_form(&f).unwrap(), table(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn additive_generator_vanishes() {
        let r = quotient22();
        let g = RelationGenerator::LeftAdditive {
            x1: v(&[1, 0]),
            x2: v(&[0, 1]),
            y: v(&[1, 0]),
        };
        let f = g.to_free(&sp(2), &sp(2)).unwrap();
        assert_eq!(f.support_len(), 3);
        assert!(r.normal_form(&f).unwrap().is_zero());
    }

    #[test]
    fn diagonal_point_expands_to_ones() {
        let r = quotient22();
        let f = free_embed(&sp(2), &sp(2), &v(&[1, 1]), &v(&[1, 1])).unwrap();
        assert_eq!(r.normal_form(&f).unwrap(), table(&[&[1, 1], &[1, 1]]));
    }

    #[test]
    fn membership() {
        let r = quotient22();
        let f = free_embed(&sp(2), &sp(2), &v(&[1, 0]), &v(&[1, 0])).unwrap();
        assert!(!r.member_relation_span(&f).unwrap());
        let g = RelationGenerator::LeftHomogeneous {
            alpha: Q::from_ratio(3, 2).unwrap(),
            x: v(&[2, -1]),
            y: v(&[1, 5]),
        };
        assert!(r
            .member_relation_span(&g.to_free(&sp(2), &sp(2)).unwrap())
            .unwrap());
    }

    #[test]
    fn normal_form_rejects_foreign_carrier() {
        let f = free_embed(&sp(3), &sp(2), &v(&[1, 0, 0]), &v(&[1, 0])).unwrap();
        assert!(matches!(
            quotient22().normal_form(&f),
            Err(Error::MixedCarriers(_))
        ));
    }

    #[test]
    fn theta_paths_agree() {
        let r = quotient22();
        let d = DualRealization::new::<Q>(&sp(2), &sp(2)).unwrap();
        let (x, y) = (v(&[1, 1]), v(&[1, -1]));
        let via_free = r.theta_quotient(&x, &y).unwrap();
        assert_eq!(via_free, table(&[&[1, -1], &[1, -1]]));
        assert_eq!(single_tensor(&r, &x, &y).unwrap().table(), &via_free);
        assert_eq!(d.theta_dual(&x, &y).unwrap().table(), &via_free);
        assert!(r.theta_quotient(&v(&[0, 0]), &y).unwrap().is_zero());
    }

    #[test]
    fn quotient_factorization_examples() {
        let r = quotient22();
        let phi = BilinearMap::from_basis_values(&sp(2), &sp(2), &sp(1), |i, j| {
            Ok(v(&[(i == 0 && j == 0) as i64]))
        })
        .unwrap();
        let big = r.factorize_quotient(&phi).unwrap();
        let c = Vector::new(table(&[&[5, 7], &[-1, 2]]).into_data());
        assert_eq!(big.apply(&c).unwrap(), v(&[5]));
        let zero = BilinearMap::<Q>::zero(&sp(2), &sp(2), &sp(3));
        assert!(r.factorize_quotient(&zero).unwrap().is_zero());
    }

    #[test]
    fn free_linearization_factors_through_normal_form() {
        let r = quotient22();
        let phi = BilinearMap::new(
            sp(2),
            sp(2),
            sp(2),
            (0..8).map(|k| Q::from_i64(k * 3 % 7 - 3)).collect(),
        )
        .unwrap();
        let mut f = free_embed(&sp(2), &sp(2), &v(&[2, 1]), &v(&[-1, 4])).unwrap();
        f.add_term(Q::from_ratio(1, 3).unwrap(), &v(&[0, 5]), &v(&[1, 1]))
            .unwrap();
        let direct = free_linearization(&phi, &f).unwrap();
        let through = r
            .factorize_quotient(&phi)
            .unwrap()
            .apply(&Vector::new(r.normal_form(&f).unwrap().into_data()))
            .unwrap();
        assert_eq!(direct, through);
    }

    #[test]
    fn dual_action_and_forms() {
        let d = DualRealization::new::<Q>(&sp(2), &sp(2)).unwrap();
        let t = d.theta_dual(&v(&[2, 0]), &v(&[0, 3])).unwrap();
        assert_eq!(t.table(), &table(&[&[0, 6], &[0, 0]]));
        let t = DualTensor::from_table(table(&[&[1, 2], &[3, 4]]));
        assert_eq!(
            t.apply_form(&v(&[1, 1]), &v(&[1, -1])).unwrap(),
            Q::from_i64(-2)
        );
        let e00 = d.theta_dual(&v(&[1, 0]), &v(&[1, 0])).unwrap();
        assert_eq!(
            e00.apply_form(&v(&[1, 0]), &v(&[1, 0])).unwrap(),
            Q::from_i64(1)
        );
    }

    #[test]
    fn action_evaluates_form_at_pair() {
        let d = DualRealization::new::<Q>(&sp(2), &sp(3)).unwrap();
        let psi = BilinearMap::new(
            sp(2),
            sp(3),
            sp(2),
            (0..12).map(|k| Q::from_i64(k % 4 - 1)).collect(),
        )
        .unwrap();
        let (x, y) = (v(&[3, -2]), v(&[1, 0, 4]));
        let t = d.theta_dual(&x, &y).unwrap();
        assert_eq!(t.action(&psi).unwrap(), psi.eval(&x, &y).unwrap());
    }

    #[test]
    fn inner_eval_examples() {
        let d = DualRealization::new::<Q>(&sp(2), &sp(1)).unwrap();
        let t = d.theta_dual(&v(&[1, 2]), &v(&[3])).unwrap();
        assert_eq!(t.inner_eval(&v(&[1, 1]), &v(&[2])).unwrap(), 18.0);
        assert_eq!(t.inner_eval(&v(&[2, -1]), &v(&[2])).unwrap(), 0.0);
        type F7 = Fp<7>;
        let s7 = VectorSpace::over::<F7>(1);
        let d7 = DualRealization::new::<F7>(&s7, &s7).unwrap();
        let one = Vector::<F7>::from_i64(&[1]);
        let t7 = d7.theta_dual(&one, &one).unwrap();
        assert!(matches!(
            t7.inner_eval(&one, &one),
            Err(Error::NonRealField(_))
        ));
    }

    #[test]
    fn shipped_realizations_satisfy_axioms() {
        let (x, y) = (sp(3), sp(2));
        let r = QuotientRealization::new::<Q>(&x, &y).unwrap();
        let d = DualRealization::new::<Q>(&x, &y).unwrap();
        let probe = crate::bilinear::matrix_unit_bilinear(
            &x,
            &y,
            &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])],
            &[v(&[1, 0]), v(&[0, 1])],
        )
        .unwrap();
        for real in [&r as &dyn TensorRealization<Q>, &d] {
            let report = check_axioms(real, std::slice::from_ref(&probe));
            assert!(report.passed(), "{report:?}");
            assert!(report.probes[0].factor_injective);
        }
        let iso = canonical_iso::<Q>(&r, &d).unwrap();
        assert_eq!(iso.matrix(), &Matrix::identity(6));
    }
}
