use tensoraxiom_core::tensor::{basis_pair_images, coefficient_product, family_rank, Axiom};
use tensoraxiom_core::*;

type Q = Rational;

fn sp(n: usize) -> VectorSpace {
    VectorSpace::over::<Q>(n)
}

fn v(c: &[i64]) -> Vector<Q> {
    Vector::from_i64(c)
}

fn table(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Q::from_i64(x)).collect())
            .collect(),
        rows[0].len(),
    )
    .unwrap()
}

fn quotient(m: usize, n: usize) -> QuotientRealization {
    QuotientRealization::new::<Q>(&sp(m), &sp(n)).unwrap()
}

fn unit_basis(n: usize) -> Vec<Vector<Q>> {
    (0..n).map(|i| Vector::unit(n, i)).collect()
}

/// Coefficient tables with the last `drop` coordinates replaced by zeros,
/// inside a space of dimension `m·n − 1`.
struct Truncated {
    left: VectorSpace,
    right: VectorSpace,
    space: VectorSpace,
    keep: usize,
}

impl Truncated {
    fn new(m: usize, n: usize, keep: usize) -> Self {
        Truncated {
            left: sp(m),
            right: sp(n),
            space: sp(m * n - 1),
            keep,
        }
    }
}

impl TensorRealization<Q> for Truncated {
    fn left(&self) -> &VectorSpace {
        &self.left
    }
    fn right(&self) -> &VectorSpace {
        &self.right
    }
    fn tensor_space(&self) -> &VectorSpace {
        &self.space
    }
    fn theta(&self, x: &Vector<Q>, y: &Vector<Q>) -> Result<Vector<Q>> {
        let full = linalg::outer(x.coords(), y.coords());
        let mut out = vec![Q::from_i64(0); self.space.dim()];
        out[..self.keep].clone_from_slice(&full[..self.keep]);
        Ok(Vector::new(out))
    }
}

#[test]
fn single_tensor_examples() {
    let r = quotient(2, 2);
    let t = single_tensor(&r, &v(&[1, 0]), &v(&[0, 1])).unwrap();
    assert_eq!(t.table(), &table(&[&[0, 1], &[0, 0]]));
    let t = single_tensor(&r, &v(&[1, 1]), &v(&[1, -1])).unwrap();
    assert_eq!(t.table(), &table(&[&[1, -1], &[1, -1]]));
    assert!(t.representation_consistent(&r).unwrap());
    let alpha = Q::from_ratio(-5, 3).unwrap();
    let (x, y) = (v(&[2, 7]), v(&[-1, 3]));
    let a = single_tensor(&r, &x, &y).unwrap().scale(&alpha);
    let b = single_tensor(&r, &x.scale(&alpha), &y).unwrap();
    let c = single_tensor(&r, &x, &y.scale(&alpha)).unwrap();
    assert_eq!(a.table(), b.table());
    assert_eq!(b.table(), c.table());
}

#[test]
fn inconsistent_representation_detected() {
    let r = quotient(2, 1);
    let t = TensorElement::with_representation(table(&[&[1], &[0]]), vec![(v(&[0, 1]), v(&[1]))]);
    assert!(!t.representation_consistent(&r).unwrap());
}

#[test]
fn shipped_realizations_pass_on_3x2() {
    let (x, y) = (sp(3), sp(2));
    let probe = matrix_unit_bilinear(&x, &y, &unit_basis(3), &unit_basis(2)).unwrap();
    let q = QuotientRealization::new::<Q>(&x, &y).unwrap();
    let d = DualRealization::new::<Q>(&x, &y).unwrap();
    for r in [&q as &dyn TensorRealization<Q>, &d] {
        let report = check_axioms(r, std::slice::from_ref(&probe));
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.span_rank, 6);
        assert!(report.probes[0].factor_injective);
    }
}

#[test]
fn sabotage_without_span_fails_span_axiom() {
    let r = Truncated::new(2, 2, 2);
    let probe = matrix_unit_bilinear(&sp(2), &sp(2), &unit_basis(2), &unit_basis(2)).unwrap();
    let report = check_axioms(&r, &[probe]);
    assert!(!report.passed());
    assert_eq!(report.span_rank, 2);
    assert!(report.failures.iter().any(|f| f.axiom == Axiom::Span));
}

#[test]
fn sabotage_with_span_fails_factorization() {
    // θ reaches all of a 3-dimensional T but loses the (1,1) pair
    let r = Truncated::new(2, 2, 3);
    let probe = matrix_unit_bilinear(&sp(2), &sp(2), &unit_basis(2), &unit_basis(2)).unwrap();
    let report = check_axioms(&r, &[probe]);
    assert_eq!(report.span_rank, 3);
    assert!(report
        .failures
        .iter()
        .all(|f| f.axiom == Axiom::Factorization));
    assert!(!report.passed());
    assert!(!report.probes[0].passed);
}

#[test]
fn factorize_examples() {
    let r = quotient(2, 3);
    let theta = natural_map::<Q, _>(&r).unwrap();
    let big = factorize(&r, &theta).unwrap();
    assert_eq!(big.matrix(), &Matrix::identity(6));
    let zero = BilinearMap::<Q>::zero(&sp(2), &sp(3), &sp(4));
    assert!(factorize(&r, &zero).unwrap().is_zero());
    let r1 = quotient(1, 1);
    let pairing = BilinearMap::new(sp(1), sp(1), sp(1), vec![Q::from_i64(1)]).unwrap();
    assert_eq!(
        factorize(&r1, &pairing).unwrap().matrix(),
        &Matrix::identity(1)
    );
    let wrong = BilinearMap::<Q>::zero(&sp(3), &sp(3), &sp(1));
    assert!(matches!(
        factorize(&r, &wrong),
        Err(Error::ShapeMismatch(_))
    ));
}

#[test]
fn generic_factorization_agrees_with_direct() {
    let r = quotient(2, 2);
    let phi = BilinearMap::new(
        sp(2),
        sp(2),
        sp(3),
        (0..12).map(|k| Q::from_i64(k % 5 - 2)).collect(),
    )
    .unwrap();
    let direct = r.factorize_quotient(&phi).unwrap();
    let generic = tensor::factorize_by_basis_pairs(&r, &phi).unwrap();
    assert_eq!(direct.matrix(), generic.matrix());
}

#[test]
fn canonical_iso_examples() {
    let (x, y) = (sp(2), sp(2));
    let q = QuotientRealization::new::<Q>(&x, &y).unwrap();
    let d = DualRealization::new::<Q>(&x, &y).unwrap();
    assert_eq!(
        canonical_iso::<Q>(&q, &q).unwrap().matrix(),
        &Matrix::identity(4)
    );
    assert_eq!(
        canonical_iso::<Q>(&q, &d).unwrap().matrix(),
        &Matrix::identity(4)
    );
    let other = QuotientRealization::new::<Q>(&sp(3), &y).unwrap();
    assert!(matches!(
        canonical_iso::<Q>(&q, &other),
        Err(Error::FactorSpaceMismatch(_))
    ));
}

#[test]
fn canonical_iso_with_map_space_is_a_permutation() {
    // L[F²,F¹] ⊗ L[F¹,F²] in two realizations with different coordinates
    let (x, v1, y, w) = (sp(2), sp(1), sp(1), sp(2));
    let maps = MapSpaceRealization::new(&x, &v1, &y, &w).unwrap();
    let left = TensorRealization::<Q>::left(&maps).clone();
    let right = TensorRealization::<Q>::right(&maps).clone();
    let q = QuotientRealization::new::<Q>(&left, &right).unwrap();
    let fwd = canonical_iso::<Q>(&q, &maps).unwrap();
    let back = canonical_iso::<Q>(&maps, &q).unwrap();
    assert_eq!(fwd.compose(&back).unwrap().matrix(), &Matrix::identity(4));
    assert_eq!(back.compose(&fwd).unwrap().matrix(), &Matrix::identity(4));
    let ones = fwd
        .matrix()
        .data()
        .iter()
        .filter(|c| **c == Q::from_i64(1))
        .count();
    assert_eq!(ones, 4);
}

#[test]
fn basis_tensor_examples() {
    let r = quotient(3, 4);
    let all = basis_tensors(&r, &unit_basis(3), &unit_basis(4)).unwrap();
    assert_eq!(all.len(), 12);
    assert_eq!(family_rank(&all), 12);
    let repeated = basis_tensors(&r, &[v(&[1, 0, 0]), v(&[1, 0, 0])], &unit_basis(4)).unwrap();
    assert!(family_rank(&repeated) < repeated.len());
    let r21 = quotient(2, 1);
    let skew = basis_tensors(&r21, &[v(&[1, 0]), v(&[1, 1])], &[v(&[1])]).unwrap();
    assert_eq!(family_rank(&skew), 2);
}

#[test]
fn commute_iso_examples() {
    let xy = quotient(2, 3);
    let yx = quotient(3, 2);
    let c = commute_iso::<Q>(&xy, &yx).unwrap();
    let back = commute_iso::<Q>(&yx, &xy).unwrap();
    assert_eq!(back.compose(&c).unwrap().matrix(), &Matrix::identity(6));
    let e0d1 = TensorRealization::<Q>::theta(&xy, &v(&[1, 0]), &v(&[0, 1, 0])).unwrap();
    let d1e0 = TensorRealization::<Q>::theta(&yx, &v(&[0, 1, 0]), &v(&[1, 0])).unwrap();
    assert_eq!(c.apply(&e0d1).unwrap(), d1e0);
    let t = table(&[&[1, 2, 3], &[4, 5, 6]]);
    let out = c.apply(&Vector::new(t.data().to_vec())).unwrap();
    assert_eq!(out.coords(), t.transpose().data());
    assert!(matches!(
        commute_iso::<Q>(&xy, &xy),
        Err(Error::FactorSpaceMismatch(_))
    ));
}

#[test]
fn sub_tensor_examples() {
    let r = quotient(2, 2);
    let full = sub_tensor(&r, &Subspace::<Q>::full(&sp(2)), &Subspace::full(&sp(2))).unwrap();
    assert_eq!(full.span(), &Subspace::full(&sp(4)));
    let m = Subspace::span(&sp(2), &[v(&[1, 0])]).unwrap();
    let n = Subspace::span(&sp(2), &[v(&[0, 1])]).unwrap();
    let s = sub_tensor(&r, &m, &n).unwrap();
    assert_eq!(
        s.span(),
        &Subspace::span(&sp(4), &[v(&[0, 1, 0, 0])]).unwrap()
    );
    let z = sub_tensor(&r, &Subspace::zero(&sp(2)), &n).unwrap();
    assert_eq!(z.span().dim(), 0);
    let bad = Subspace::<Q>::full(&sp(3));
    assert!(matches!(
        sub_tensor(&r, &bad, &n),
        Err(Error::SubspaceNotInAmbient(_))
    ));
}

#[test]
fn sub_tensor_is_a_tensor_product() {
    let r = quotient(3, 3);
    let m = Subspace::span(&sp(3), &[v(&[1, 1, 0]), v(&[0, 1, 2])]).unwrap();
    let n = Subspace::span(&sp(3), &[v(&[1, -1, 1])]).unwrap();
    let s = sub_tensor(&r, &m, &n).unwrap();
    assert_eq!(
        TensorRealization::<Q>::tensor_space(&s).dim(),
        m.dim() * n.dim()
    );
    let probe = matrix_unit_bilinear(
        TensorRealization::<Q>::left(&s),
        TensorRealization::<Q>::right(&s),
        &unit_basis(2),
        &unit_basis(1),
    )
    .unwrap();
    assert!(check_axioms(&s, &[probe]).passed());
    let emb = s.embedding();
    let t = s.theta_ambient(&v(&[1, 2, 2]), &v(&[2, -2, 2])).unwrap();
    let parent = TensorRealization::<Q>::theta(&r, &v(&[1, 2, 2]), &v(&[2, -2, 2])).unwrap();
    assert_eq!(emb.apply(&t).unwrap(), parent);
    assert!(s.theta_ambient(&v(&[1, 0, 0]), &v(&[1, -1, 1])).is_err());
}

#[test]
fn regular_cover_examples() {
    let r = quotient(2, 2);
    let m0 = Subspace::span(&sp(2), &[v(&[1, 2])]).unwrap();
    let n0 = Subspace::full(&sp(2));
    let u = sub_tensor(&r, &m0, &n0).unwrap().span().clone();
    let cover = minimal_regular_cover(&r, &u).unwrap();
    assert!(cover.is_regular);
    assert_eq!((cover.m, cover.n), (m0, n0));

    let diag = Subspace::span(&sp(4), &[v(&[1, 0, 0, 1])]).unwrap();
    let cover = minimal_regular_cover(&r, &diag).unwrap();
    assert!(!cover.is_regular);
    assert_eq!((cover.m.dim(), cover.n.dim()), (2, 2));

    let single = Subspace::span(&sp(4), &[v(&[2, -2, 3, -3])]).unwrap();
    assert!(minimal_regular_cover(&r, &single).unwrap().is_regular);

    let bad = Subspace::<Q>::full(&sp(3));
    assert!(matches!(
        minimal_regular_cover(&r, &bad),
        Err(Error::SubspaceNotInAmbient(_))
    ));
}

#[test]
fn cover_contains_subspace() {
    let r = quotient(3, 2);
    let u = Subspace::span(&sp(6), &[v(&[1, 0, 0, 1, 0, 0]), v(&[0, 0, 1, 1, 2, 2])]).unwrap();
    let cover = minimal_regular_cover(&r, &u).unwrap();
    assert!(u.is_subspace_of(&coefficient_product(&cover.m, &cover.n)));
}

fn quotient_builder(a: &VectorSpace, b: &VectorSpace) -> Box<dyn TensorRealization<Q>> {
    Box::new(QuotientRealization::new::<Q>(a, b).unwrap())
}

#[test]
fn iterated_products() {
    let two = iterated_product::<Q>(&[sp(2), sp(3)], &quotient_builder).unwrap();
    assert_eq!(two.dim(), 6);
    assert_eq!(
        basis_pair_images(two.realization()).unwrap(),
        basis_pair_images(&quotient(2, 3)).unwrap()
    );
    let three = iterated_product::<Q>(&[sp(2), sp(3), sp(4)], &quotient_builder).unwrap();
    assert_eq!(three.dim(), 24);
    let t = three
        .multi_tensor(&[v(&[1, 2]), v(&[0, 1, -1]), v(&[3, 0, 0, 1])])
        .unwrap();
    assert_eq!(t.dim(), 24);
    assert!(iterated_product::<Q>(&[sp(2)], &quotient_builder).is_err());
}

#[test]
fn iterated_product_rejects_mixed_fields() {
    let gf7 = VectorSpace::new(FieldSpec::Prime(7), 2);
    assert!(matches!(
        iterated_product::<Q>(&[sp(2), gf7], &quotient_builder),
        Err(Error::MixedFields { .. })
    ));
}

#[test]
fn rebracketing() {
    let (x, y, z) = (sp(2), sp(3), sp(2));
    let a = associator::<Q>(&x, &y, &z, &quotient_builder).unwrap();
    let inverse = a.inverse().unwrap();
    assert_eq!(inverse.compose(&a).unwrap().matrix(), &Matrix::identity(12));
    let (u, w, s) = (v(&[1, -2]), v(&[0, 3, 1]), v(&[5, 1]));
    let xy = quotient(2, 3);
    let left = quotient(6, 2);
    let yz = quotient(3, 2);
    let right = quotient(2, 6);
    let lt = TensorRealization::<Q>::theta(
        &left,
        &TensorRealization::<Q>::theta(&xy, &u, &w).unwrap(),
        &s,
    )
    .unwrap();
    let rt = TensorRealization::<Q>::theta(
        &right,
        &u,
        &TensorRealization::<Q>::theta(&yz, &w, &s).unwrap(),
    )
    .unwrap();
    assert_eq!(a.apply(&lt).unwrap(), rt);
}
