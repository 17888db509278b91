//! Tensor products of linear maps and the tensor product of map spaces.

use crate::bilinear::BilinearMap;
use crate::error::{shape, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::space::{LinearMap, Vector, VectorSpace};
use crate::tensor::{TensorElement, TensorRealization};

/// `A ⊗ B : X ⊗ Y → V ⊗ W`, with the factors it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KronMap<F> {
    map: LinearMap<F>,
    factors: Option<(LinearMap<F>, LinearMap<F>)>,
}

impl<F: Field> KronMap<F> {
    pub fn from_map(map: LinearMap<F>) -> Self {
        KronMap { map, factors: None }
    }

    pub fn map(&self) -> &LinearMap<F> {
        &self.map
    }

    pub fn into_map(self) -> LinearMap<F> {
        self.map
    }

    pub fn matrix(&self) -> &Matrix<F> {
        self.map.matrix()
    }

    pub fn factors(&self) -> Option<(&LinearMap<F>, &LinearMap<F>)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }

    /// `Σ A xᵢ ⊗ B yᵢ` in row-major coordinates of `V ⊗ W`.
    pub fn apply_representation(&self, pairs: &[(Vector<F>, Vector<F>)]) -> Result<Vector<F>> {
        let (a, b) = self
            .factors
            .as_ref()
            .ok_or_else(|| shape("map was not built from a pair of factors"))?;
        let mut acc = Vector::zeros(self.map.codomain().dim());
        for (x, y) in pairs {
            let (ax, by) = (a.apply(x)?, b.apply(y)?);
            acc = acc.add(&Vector::new(crate::linalg::outer(ax.coords(), by.coords())));
        }
        Ok(acc)
    }

    /// Applies the map to a coefficient table.
    pub fn apply(&self, t: &TensorElement<F>) -> Result<TensorElement<F>> {
        let out = self.map.apply(&t.coords())?;
        let (v, w) = match &self.factors {
            Some((a, b)) => (a.codomain().dim(), b.codomain().dim()),
            None => (out.dim(), 1),
        };
        TensorElement::from_coords(out, v, w)
    }
}

/// Entry `[(k,l),(i,j)] = A[k][i]·B[l][j]`, rows and columns in row-major
/// basis-pair order.
pub fn kron<F: Field>(a: &LinearMap<F>, b: &LinearMap<F>) -> Result<KronMap<F>> {
    a.domain().field().ensure_same(&b.domain().field())?;
    let (am, bm) = (a.matrix(), b.matrix());
    let (p, m) = am.shape();
    let (q, n) = bm.shape();
    let mut out = Matrix::zeros(p * q, m * n);
    for k in 0..p {
        for i in 0..m {
            let aki = &am[(k, i)];
            if aki.is_zero() {
                continue;
            }
            for l in 0..q {
                for j in 0..n {
                    out[(k * q + l, i * n + j)] = aki.clone() * bm[(l, j)].clone();
                }
            }
        }
    }
    let map = LinearMap::new(
        a.domain().tensor(b.domain()),
        a.codomain().tensor(b.codomain()),
        out,
    )?;
    Ok(KronMap {
        map,
        factors: Some((a.clone(), b.clone())),
    })
}

/// The algebraic adjoint `L♯ g = g ∘ L`: with functionals as coordinate
/// rows, the transpose.
pub fn adjoint<F: Field>(l: &LinearMap<F>) -> LinearMap<F> {
    LinearMap::new(
        l.codomain().dual(),
        l.domain().dual(),
        l.matrix().transpose(),
    )
    .expect("transpose has the swapped shape")
}

/// The permutation `X ⊗ Y → Y ⊗ X` sending basis tensor `(i, j)` to `(j, i)`.
pub fn shuffle_permutation<F: Field>(m: usize, n: usize) -> LinearMap<F> {
    let (x, y) = (
        VectorSpace::over::<F>(m),
        VectorSpace::with_prefix(F::spec(), n, "d"),
    );
    let mut p = Matrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            p[(j * m + i, i * n + j)] = F::one();
        }
    }
    LinearMap::new(x.tensor(&y), y.tensor(&x), p).expect("square permutation")
}

// ---------------------------------------------------------------------------
// the map spaces L[X,V] and L[Y,W]

/// `L[X,V] ⊗ L[Y,W]` realized as the span of the maps `A ⊗ B` inside
/// `L[X⊗Y, V⊗W]`.
///
/// A map `A : X → V` is a vector of `L[X,V]` through its row-major matrix,
/// coordinate `k·dim X + i` holding `A[k][i]`. Elements of the tensor space
/// are row-major flattenings of `dim V·dim W × dim X·dim Y` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpaceRealization {
    x: VectorSpace,
    v: VectorSpace,
    y: VectorSpace,
    w: VectorSpace,
    left: VectorSpace,
    right: VectorSpace,
    space: VectorSpace,
}

fn map_space(domain: &VectorSpace, codomain: &VectorSpace, prefix: &str) -> VectorSpace {
    VectorSpace::with_prefix(domain.field(), domain.dim() * codomain.dim(), prefix)
}

impl MapSpaceRealization {
    pub fn new(x: &VectorSpace, v: &VectorSpace, y: &VectorSpace, w: &VectorSpace) -> Result<Self> {
        for s in [v, y, w] {
            x.field().ensure_same(&s.field())?;
        }
        let left = map_space(x, v, "a");
        let right = map_space(y, w, "b");
        let space = VectorSpace::with_prefix(x.field(), left.dim() * right.dim(), "k");
        Ok(MapSpaceRealization {
            x: x.clone(),
            v: v.clone(),
            y: y.clone(),
            w: w.clone(),
            left,
            right,
            space,
        })
    }

    pub fn map_of_left<F: Field>(&self, a: &Vector<F>) -> Result<LinearMap<F>> {
        self.left.check_vector(a)?;
        LinearMap::new(
            self.x.clone(),
            self.v.clone(),
            Matrix::new(self.v.dim(), self.x.dim(), a.coords().to_vec())?,
        )
    }

    pub fn map_of_right<F: Field>(&self, b: &Vector<F>) -> Result<LinearMap<F>> {
        self.right.check_vector(b)?;
        LinearMap::new(
            self.y.clone(),
            self.w.clone(),
            Matrix::new(self.w.dim(), self.y.dim(), b.coords().to_vec())?,
        )
    }

    /// Reads an element of the tensor space back as a map `X ⊗ Y → V ⊗ W`.
    pub fn as_map<F: Field>(&self, t: &Vector<F>) -> Result<LinearMap<F>> {
        self.space.check_vector(t)?;
        LinearMap::new(
            self.x.tensor(&self.y),
            self.v.tensor(&self.w),
            Matrix::new(
                self.v.dim() * self.w.dim(),
                self.x.dim() * self.y.dim(),
                t.coords().to_vec(),
            )?,
        )
    }

    /// Position of `E_ki ⊗ F_lj` in the flattened tensor space.
    fn flat_index(&self, k: usize, i: usize, l: usize, j: usize) -> usize {
        let (n, q) = (self.y.dim(), self.w.dim());
        let cols = self.x.dim() * n;
        (k * q + l) * cols + i * n + j
    }
}

/// `Φ(Σ Aᵢ ⊗ Bᵢ) = Σ φ(Aᵢ, Bᵢ)`, read off the matrix units of the two map
/// spaces: the entry of `A ⊗ B` at `[(k,l),(i,j)]` is the coefficient of
/// `E_ki ⊗ F_lj`.
pub fn map_tensor_factorize<F: Field>(
    r: &MapSpaceRealization,
    phi: &BilinearMap<F>,
) -> Result<LinearMap<F>> {
    if !phi.left().compatible(&r.left) || !phi.right().compatible(&r.right) {
        return Err(shape(format!(
            "bilinear map on {}x{} for map spaces of dimension {}x{}",
            phi.left().dim(),
            phi.right().dim(),
            r.left.dim(),
            r.right.dim()
        )));
    }
    let (m, p, n, q) = (r.x.dim(), r.v.dim(), r.y.dim(), r.w.dim());
    let z = phi.codomain().dim();
    let mut mat = Matrix::zeros(z, r.space.dim());
    for k in 0..p {
        for i in 0..m {
            for l in 0..q {
                for j in 0..n {
                    let col = r.flat_index(k, i, l, j);
                    let value = phi.basis_value(k * m + i, l * n + j);
                    for (c, val) in value.into_coords().into_iter().enumerate() {
                        mat[(c, col)] = val;
                    }
                }
            }
        }
    }
    LinearMap::new(r.space.clone(), phi.codomain().clone(), mat)
}

impl<F: Field> TensorRealization<F> for MapSpaceRealization {
    fn left(&self) -> &VectorSpace {
        &self.left
    }

    fn right(&self) -> &VectorSpace {
        &self.right
    }

    fn tensor_space(&self) -> &VectorSpace {
        &self.space
    }

    fn theta(&self, a: &Vector<F>, b: &Vector<F>) -> Result<Vector<F>> {
        let k = kron(&self.map_of_left(a)?, &self.map_of_right(b)?)?;
        Ok(Vector::new(k.into_map().into_matrix().into_data()))
    }

    fn factorize(&self, phi: &BilinearMap<F>) -> Result<LinearMap<F>> {
        map_tensor_factorize(self, phi)
    }

    fn name(&self) -> String {
        "map-space".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::tensor::{basis_pair_images, check_axioms, natural_map};

    type Q = Rational;

    fn q(rows: &[&[i64]]) -> LinearMap<Q> {
        let cols = rows[0].len();
        LinearMap::from_matrix(
            Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| Q::from_i64(x)).collect())
                    .collect(),
                cols,
            )
            .unwrap(),
        )
    }

    #[test]
    fn kron_of_identities() {
        let i2 = q(&[&[1, 0], &[0, 1]]);
        let i3 = q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(kron(&i2, &i3).unwrap().matrix(), &Matrix::identity(6));
    }

    #[test]
    fn kron_worked_example() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = q(&[&[0, 1], &[1, 0]]);
        let expected = q(&[&[0, 1, 0, 2], &[1, 0, 2, 0], &[0, 3, 0, 4], &[3, 0, 4, 0]]);
        assert_eq!(kron(&a, &b).unwrap().matrix(), expected.matrix());
        let zero = LinearMap::<Q>::zero(&VectorSpace::over::<Q>(2), &VectorSpace::over::<Q>(2));
        assert!(kron(&a, &zero).unwrap().map().is_zero());
    }

    #[test]
    fn maps_cannot_mix_fields() {
        // both factors share the scalar type, so a field clash can only enter
        // through the spaces, and those are checked when the map is built
        let bad = LinearMap::<Q>::new(
            VectorSpace::new(crate::field::FieldSpec::Prime(7), 1),
            VectorSpace::over::<Q>(1),
            Matrix::identity(1),
        );
        assert!(matches!(bad, Err(crate::error::Error::MixedFields { .. })));
    }

    #[test]
    fn kron_is_independent_of_representation() {
        let a = q(&[&[1, -1], &[2, 0], &[0, 3]]);
        let b = q(&[&[2, 1]]);
        let k = kron(&a, &b).unwrap();
        let v = |c: &[i64]| Vector::<Q>::from_i64(c);
        // x⊗y + x⊗y' = x⊗(y+y')
        let split = [(v(&[1, 2]), v(&[1, 0])), (v(&[1, 2]), v(&[0, 5]))];
        let merged = [(v(&[1, 2]), v(&[1, 5]))];
        let via_split = k.apply_representation(&split).unwrap();
        assert_eq!(via_split, k.apply_representation(&merged).unwrap());
        let table = Vector::new(crate::linalg::outer(
            v(&[1, 2]).coords(),
            v(&[1, 5]).coords(),
        ));
        assert_eq!(k.map().apply(&table).unwrap(), via_split);
    }

    #[test]
    fn adjoint_is_transpose() {
        let l = q(&[&[1, 2], &[3, 4]]);
        assert_eq!(adjoint(&l).matrix(), q(&[&[1, 3], &[2, 4]]).matrix());
        assert_eq!(adjoint(&adjoint(&l)), l);
        let id = LinearMap::<Q>::identity(&VectorSpace::over::<Q>(3));
        assert_eq!(adjoint(&id).matrix(), id.matrix());
        // (L♯g)(x) = g(Lx)
        let l = q(&[&[1, 0, 2], &[-1, 3, 1]]);
        let g = Vector::<Q>::from_i64(&[4, -2]);
        let x = Vector::<Q>::from_i64(&[1, 1, 5]);
        let lhs = adjoint(&l).apply(&g).unwrap().dot(&x);
        let rhs = g.dot(&l.apply(&x).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            shuffle_permutation::<Q>(1, 1).matrix(),
            &Matrix::identity(1)
        );
        let p = shuffle_permutation::<Q>(2, 2);
        let expected = q(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(p.matrix(), expected.matrix());
        let p23 = shuffle_permutation::<Q>(2, 3);
        let p32 = shuffle_permutation::<Q>(3, 2);
        assert_eq!(p32.compose(&p23).unwrap().matrix(), &Matrix::identity(6));
    }

    #[test]
    fn scalar_map_spaces() {
        let s = VectorSpace::over::<Q>(1);
        let r = MapSpaceRealization::new(&s, &s, &s, &s).unwrap();
        let trace =
            BilinearMap::new(s.clone(), s.clone(), s.clone(), vec![Q::from_i64(1)]).unwrap();
        let big = map_tensor_factorize(&r, &trace).unwrap();
        assert_eq!(big.matrix(), &Matrix::identity(1));
        let zero = BilinearMap::<Q>::zero(&s, &s, &VectorSpace::over::<Q>(2));
        assert!(map_tensor_factorize(&r, &zero).unwrap().is_zero());
    }

    #[test]
    fn map_space_realization_on_2x2() {
        let s = VectorSpace::over::<Q>(2);
        let r = MapSpaceRealization::new(&s, &s, &s, &s).unwrap();
        let g = basis_pair_images::<Q, _>(&r).unwrap();
        assert_eq!(g.rank(), 16);
        let theta = natural_map::<Q, _>(&r).unwrap();
        let report = check_axioms(&r, &[theta]);
        assert!(report.passed(), "{report:?}");
    }
}
