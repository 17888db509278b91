//! Realization-independent tensor product machinery.
//!
//! A [`TensorRealization`] is a pair `(T, θ)`: a coordinate space `T` and a
//! bilinear map `θ : X × Y → T` whose range spans `T` and through which
//! every bilinear map factors. Everything in this module works for any
//! realization; the concrete constructions live in `realizations` and `kron`.

use serde::Serialize;

use crate::bilinear::BilinearMap;
use crate::error::{shape, Error, Result};
use crate::field::Field;
use crate::linalg::{outer, rank_of, Matrix};
use crate::space::{LinearMap, Subspace, Vector, VectorSpace};

pub trait TensorRealization<F: Field>: Send + Sync {
    fn left(&self) -> &VectorSpace;

    fn right(&self) -> &VectorSpace;

    fn tensor_space(&self) -> &VectorSpace;

    /// The natural bilinear map `θ(x, y) = x ⊗ y`, in coordinates of `T`.
    fn theta(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>>;

    /// The linear `Φ : T → Z` with `Φ ∘ θ = φ`.
    ///
    /// The default solves `Φ · G = P` where `G` holds `θ(e_i, d_j)` and `P`
    /// holds `φ(e_i, d_j)` column by column; realizations with a direct
    /// construction override it.
    fn factorize(&self, phi: &BilinearMap<F>) -> Result<LinearMap<F>> {
        factorize_by_basis_pairs(self, phi)
    }

    fn name(&self) -> String {
        "realization".into()
    }
}

fn check_factors<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    phi: &BilinearMap<F>,
) -> Result<()> {
    if phi.left().compatible(r.left()) && phi.right().compatible(r.right()) {
        Ok(())
    } else {
        Err(shape(format!(
            "bilinear map on {}x{} for a tensor product of {}x{}",
            phi.left().dim(),
            phi.right().dim(),
            r.left().dim(),
            r.right().dim()
        )))
    }
}

/// Matrix whose column `i·n + j` holds the coordinates of `θ(e_i, d_j)`.
pub fn basis_pair_images<F: Field, R: TensorRealization<F> + ?Sized>(r: &R) -> Result<Matrix<F>> {
    let (m, n) = (r.left().dim(), r.right().dim());
    let mut cols = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            cols.push(
                r.theta(&Vector::unit(m, i), &Vector::unit(n, j))?
                    .into_coords(),
            );
        }
    }
    Matrix::from_columns(&cols, r.tensor_space().dim())
}

/// `θ` as an explicit bilinear map into `T`.
pub fn natural_map<F: Field, R: TensorRealization<F> + ?Sized>(r: &R) -> Result<BilinearMap<F>> {
    BilinearMap::from_pair_matrix(
        r.left(),
        r.right(),
        r.tensor_space(),
        &basis_pair_images(r)?,
    )
}

pub fn factorize_by_basis_pairs<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    phi: &BilinearMap<F>,
) -> Result<LinearMap<F>> {
    check_factors(r, phi)?;
    let g = basis_pair_images(r)?;
    let p = phi.pair_matrix();
    let sol = g.transpose().solve(&p.transpose()).ok_or_else(|| {
        Error::NoFactorization(format!(
            "values of φ on basis pairs are not a linear image of θ in {}",
            r.name()
        ))
    })?;
    LinearMap::new(
        r.tensor_space().clone(),
        phi.codomain().clone(),
        sol.transpose(),
    )
}

pub fn factorize<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    phi: &BilinearMap<F>,
) -> Result<LinearMap<F>> {
    check_factors(r, phi)?;
    r.factorize(phi)
}

// ---------------------------------------------------------------------------
// tensor elements

/// An element of `X ⊗ Y` as a coefficient table over the basis tensors,
/// optionally with a representation `Σ xᵢ ⊗ yᵢ` it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement<F> {
    table: Matrix<F>,
    rep: Option<Vec<(Vector<F>, Vector<F>)>>,
}

impl<F: Field> TensorElement<F> {
    pub fn from_table(table: Matrix<F>) -> Self {
        TensorElement { table, rep: None }
    }

    /// Table and representation as given; see
    /// [`Self::representation_consistent`] to check them against each other.
    pub fn with_representation(table: Matrix<F>, rep: Vec<(Vector<F>, Vector<F>)>) -> Self {
        TensorElement {
            table,
            rep: Some(rep),
        }
    }

    /// Reshapes tensor-space coordinates into an `m × n` table.
    pub fn from_coords(coords: Vector<F>, m: usize, n: usize) -> Result<Self> {
        if coords.dim() != m * n {
            return Err(shape(format!(
                "{} tensor coordinates do not form a {m}x{n} table",
                coords.dim()
            )));
        }
        Ok(Self::from_table(Matrix::new(m, n, coords.into_coords())?))
    }

    pub fn from_representation<R: TensorRealization<F> + ?Sized>(
        r: &R,
        pairs: Vec<(Vector<F>, Vector<F>)>,
    ) -> Result<Self> {
        let (m, n) = (r.left().dim(), r.right().dim());
        let mut acc = Vector::zeros(r.tensor_space().dim());
        for (x, y) in &pairs {
            acc = acc.add(&r.theta(x, y)?);
        }
        let mut t = Self::from_coords(acc, m, n)?;
        t.rep = Some(pairs);
        Ok(t)
    }

    pub fn table(&self) -> &Matrix<F> {
        &self.table
    }

    pub fn representation(&self) -> Option<&[(Vector<F>, Vector<F>)]> {
        self.rep.as_deref()
    }

    pub fn coords(&self) -> Vector<F> {
        Vector::new(self.table.data().to_vec())
    }

    /// Checks that the stored representation recomputes the table.
    pub fn representation_consistent<R: TensorRealization<F> + ?Sized>(
        &self,
        r: &R,
    ) -> Result<bool> {
        match &self.rep {
            None => Ok(true),
            Some(pairs) => Ok(Self::from_representation(r, pairs.clone())?.table == self.table),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let rep = match (&self.rep, &other.rep) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(TensorElement {
            table: self.table.add(&other.table)?,
            rep,
        })
    }

    pub fn scale(&self, alpha: &F) -> Self {
        TensorElement {
            table: self.table.scale(alpha),
            rep: self.rep.as_ref().map(|pairs| {
                pairs
                    .iter()
                    .map(|(x, y)| (x.scale(alpha), y.clone()))
                    .collect()
            }),
        }
    }
}

/// The single tensor `x ⊗ y`.
pub fn single_tensor<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    x: &Vector<F>,
    y: &Vector<F>,
) -> Result<TensorElement<F>> {
    TensorElement::from_representation(r, vec![(x.clone(), y.clone())])
}

// ---------------------------------------------------------------------------
// axiom checks

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// the range of θ spans T
    Span,
    /// θ factors every bilinear map
    Factorization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub probe: Option<usize>,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeOutcome {
    pub index: usize,
    pub passed: bool,
    pub factor_injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub realization: String,
    pub tensor_dim: usize,
    pub span_rank: usize,
    pub probes: Vec<ProbeOutcome>,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks both tensor product axioms, the factorization axiom on each probe.
///
/// The span axiom is checked on basis pairs: `span R(θ)` contains
/// `span{θ(e_i, d_j)}`, and for a bilinear `θ` the two are equal.
pub fn check_axioms<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    probes: &[BilinearMap<F>],
) -> AxiomReport {
    let t = r.tensor_space().dim();
    let mut failures = Vec::new();
    let span_rank = match basis_pair_images(r) {
        Ok(g) => g.rank(),
        Err(e) => {
            failures.push(AxiomFailure {
                axiom: Axiom::Span,
                probe: None,
                witness: e.to_string(),
            });
            0
        }
    };
    if span_rank != t && failures.is_empty() {
        failures.push(AxiomFailure {
            axiom: Axiom::Span,
            probe: None,
            witness: format!(
                "θ(e_i, d_j) span a subspace of rank {span_rank} in a space of dimension {t}"
            ),
        });
    }

    let (m, n) = (r.left().dim(), r.right().dim());
    let mut outcomes = Vec::with_capacity(probes.len());
    for (index, phi) in probes.iter().enumerate() {
        let before = failures.len();
        let mut fail = |witness: String| {
            failures.push(AxiomFailure {
                axiom: Axiom::Factorization,
                probe: Some(index),
                witness,
            })
        };
        let mut injective = false;
        match factorize(r, phi) {
            Err(e) => fail(e.to_string()),
            Ok(big_phi) => {
                injective = big_phi.is_injective();
                'pairs: for i in 0..m {
                    for j in 0..n {
                        let (e, d) = (Vector::unit(m, i), Vector::unit(n, j));
                        let lhs = phi.basis_value(i, j);
                        let rhs = r.theta(&e, &d).and_then(|t| big_phi.apply(&t));
                        match rhs {
                            Ok(rhs) if rhs == lhs => {}
                            Ok(rhs) => {
                                fail(format!("pair ({i},{j}): φ = {lhs}, Φθ = {rhs}"));
                                break 'pairs;
                            }
                            Err(e) => {
                                fail(format!("pair ({i},{j}): {e}"));
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        outcomes.push(ProbeOutcome {
            index,
            passed: failures.len() == before,
            factor_injective: injective,
        });
    }

    AxiomReport {
        realization: r.name(),
        tensor_dim: t,
        span_rank,
        probes: outcomes,
        failures,
    }
}

// ---------------------------------------------------------------------------
// isomorphisms

fn same_factors<F: Field>(
    a: &dyn TensorRealization<F>,
    b: &dyn TensorRealization<F>,
) -> Result<()> {
    if a.left().compatible(b.left()) && a.right().compatible(b.right()) {
        Ok(())
    } else {
        Err(Error::FactorSpaceMismatch(format!(
            "{}x{} vs {}x{}",
            a.left().dim(),
            a.right().dim(),
            b.left().dim(),
            b.right().dim()
        )))
    }
}

/// The unique isomorphism `Θ : T₂ → T₁` with `Θ ∘ θ₂ = θ₁`.
pub fn canonical_iso<F: Field>(
    r1: &dyn TensorRealization<F>,
    r2: &dyn TensorRealization<F>,
) -> Result<LinearMap<F>> {
    same_factors(r1, r2)?;
    r2.factorize(&natural_map(r1)?)
}

/// The isomorphism `X ⊗ Y → Y ⊗ X` with `x ⊗ y ↦ y ⊗ x`.
pub fn commute_iso<F: Field>(
    r_xy: &dyn TensorRealization<F>,
    r_yx: &dyn TensorRealization<F>,
) -> Result<LinearMap<F>> {
    if !(r_yx.left().compatible(r_xy.right()) && r_yx.right().compatible(r_xy.left())) {
        return Err(Error::FactorSpaceMismatch(
            "second realization must be built on the swapped factors".into(),
        ));
    }
    let (m, n) = (r_xy.left().dim(), r_xy.right().dim());
    let swapped =
        BilinearMap::from_basis_values(r_xy.left(), r_xy.right(), r_yx.tensor_space(), |i, j| {
            r_yx.theta(&Vector::unit(n, j), &Vector::unit(m, i))
        })?;
    r_xy.factorize(&swapped)
}

/// `{x ⊗ y : x ∈ E, y ∈ D}`, ordered row-major over `E × D`.
pub fn basis_tensors<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    e: &[Vector<F>],
    d: &[Vector<F>],
) -> Result<Vec<Vector<F>>> {
    let mut out = Vec::with_capacity(e.len() * d.len());
    for x in e {
        for y in d {
            out.push(r.theta(x, y)?);
        }
    }
    Ok(out)
}

pub fn family_rank<F: Field>(vectors: &[Vector<F>]) -> usize {
    let len = vectors.first().map_or(0, |v| v.dim());
    let rows: Vec<Vec<F>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    rank_of(&rows, len)
}

// ---------------------------------------------------------------------------
// sub-tensor products and regularity

/// `M ⊗ N = span R(θ|_{M×N})` as a tensor product in its own right.
///
/// Factor spaces are `M` and `N` in intrinsic coordinates over their
/// canonical bases; the tensor space is the span inside the parent `T`,
/// coordinatised by that span's canonical basis.
pub struct SubTensor<'a, F: Field> {
    parent: &'a dyn TensorRealization<F>,
    m: Subspace<F>,
    n: Subspace<F>,
    left: VectorSpace,
    right: VectorSpace,
    span: Subspace<F>,
    space: VectorSpace,
}

pub fn sub_tensor<'a, F: Field>(
    parent: &'a dyn TensorRealization<F>,
    m: &Subspace<F>,
    n: &Subspace<F>,
) -> Result<SubTensor<'a, F>> {
    if !m.ambient().compatible(parent.left()) || !n.ambient().compatible(parent.right()) {
        return Err(Error::SubspaceNotInAmbient(format!(
            "subspaces of dimension-{} and dimension-{} spaces for factors of dimension {} and {}",
            m.ambient().dim(),
            n.ambient().dim(),
            parent.left().dim(),
            parent.right().dim()
        )));
    }
    let images = basis_tensors(parent, &m.basis_vectors(), &n.basis_vectors())?;
    let span = Subspace::span(parent.tensor_space(), &images)?;
    let field = parent.left().field();
    Ok(SubTensor {
        parent,
        left: VectorSpace::with_prefix(field, m.dim(), "m"),
        right: VectorSpace::with_prefix(field, n.dim(), "n"),
        space: VectorSpace::with_prefix(field, span.dim(), "t"),
        m: m.clone(),
        n: n.clone(),
        span,
    })
}

impl<F: Field> SubTensor<'_, F> {
    /// The linear manifold `M ⊗ N` of the parent tensor space.
    pub fn span(&self) -> &Subspace<F> {
        &self.span
    }

    /// Inclusion of `M ⊗ N` into the parent tensor space.
    pub fn embedding(&self) -> LinearMap<F> {
        let inc = self.span.inclusion();
        LinearMap::new(
            self.space.clone(),
            self.parent.tensor_space().clone(),
            inc.into_matrix(),
        )
        .expect("span basis lives in the parent space")
    }

    /// `θ(x, y)` for ambient vectors `x ∈ M`, `y ∈ N`.
    pub fn theta_ambient(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>> {
        let a = self
            .m
            .coordinates(x)
            .ok_or_else(|| Error::SubspaceNotInAmbient(format!("{x} is not in M")))?;
        let b = self
            .n
            .coordinates(y)
            .ok_or_else(|| Error::SubspaceNotInAmbient(format!("{y} is not in N")))?;
        self.theta(&Vector::new(a), &Vector::new(b))
    }
}

impl<F: Field> TensorRealization<F> for SubTensor<'_, F> {
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
        self.left.check_vector(a)?;
        self.right.check_vector(b)?;
        let x = self.m.inclusion().apply(a)?;
        let y = self.n.inclusion().apply(b)?;
        let t = self.parent.theta(&x, &y)?;
        let c = self.span.coordinates(&t).expect("θ(M×N) lies in its span");
        Ok(Vector::new(c))
    }

    fn name(&self) -> String {
        format!("sub-tensor of {}", self.parent.name())
    }
}

/// Smallest regular `M ⊗ N` containing a subspace `U` of `X ⊗ Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularCover<F> {
    pub m: Subspace<F>,
    pub n: Subspace<F>,
    pub is_regular: bool,
}

/// Decides regularity of `U ⊆ X ⊗ Y` for a realization whose coordinates
/// are row-major coefficient tables.
///
/// `M` is spanned by the columns of every coefficient table of a basis of
/// `U` and `N` by their rows. `U ⊆ M ⊗ N` always holds and any `M' ⊗ N'`
/// containing `U` contains `M ⊗ N`, so `U` is regular exactly when
/// `dim U = dim M · dim N`.
pub fn minimal_regular_cover<F: Field, R: TensorRealization<F> + ?Sized>(
    r: &R,
    u: &Subspace<F>,
) -> Result<RegularCover<F>> {
    let (m, n) = (r.left().dim(), r.right().dim());
    if r.tensor_space().dim() != m * n || !u.ambient().compatible(r.tensor_space()) {
        return Err(Error::SubspaceNotInAmbient(format!(
            "subspace of a dimension-{} space for a {m}x{n} coefficient realization",
            u.ambient().dim()
        )));
    }
    let mut col_vectors = Vec::new();
    let mut row_vectors = Vec::new();
    for b in u.basis_vectors() {
        let table = Matrix::new(m, n, b.into_coords())?;
        for j in 0..n {
            col_vectors.push(Vector::new(table.column(j)));
        }
        for i in 0..m {
            row_vectors.push(Vector::new(table.row(i).to_vec()));
        }
    }
    let ms = Subspace::span(r.left(), &col_vectors)?;
    let ns = Subspace::span(r.right(), &row_vectors)?;
    let is_regular = u.dim() == ms.dim() * ns.dim();
    Ok(RegularCover {
        m: ms,
        n: ns,
        is_regular,
    })
}

/// `M ⊗ N` inside `X ⊗ Y` in row-major coefficient coordinates.
pub fn coefficient_product<F: Field>(m: &Subspace<F>, n: &Subspace<F>) -> Subspace<F> {
    let ambient = m.ambient().tensor(n.ambient());
    let mut gens = Vec::with_capacity(m.dim() * n.dim());
    for a in m.basis_vectors() {
        for b in n.basis_vectors() {
            gens.push(Vector::new(outer(a.coords(), b.coords())));
        }
    }
    Subspace::span(&ambient, &gens).expect("outer products live in the product space")
}

// ---------------------------------------------------------------------------
// finite iterated products

pub type PairwiseBuilder<'b, F> =
    &'b dyn Fn(&VectorSpace, &VectorSpace) -> Box<dyn TensorRealization<F>>;

/// Left-folded product `((X₁ ⊗ X₂) ⊗ X₃) ⊗ …`.
pub struct IteratedProduct<F: Field> {
    factors: Vec<VectorSpace>,
    stages: Vec<Box<dyn TensorRealization<F>>>,
}

pub fn iterated_product<F: Field>(
    factors: &[VectorSpace],
    pairwise: PairwiseBuilder<'_, F>,
) -> Result<IteratedProduct<F>> {
    if factors.len() < 2 {
        return Err(shape("an iterated product needs at least two factors"));
    }
    for f in &factors[1..] {
        factors[0].field().ensure_same(&f.field())?;
    }
    let mut stages: Vec<Box<dyn TensorRealization<F>>> = vec![pairwise(&factors[0], &factors[1])];
    for f in &factors[2..] {
        let prev = stages.last().unwrap().tensor_space().clone();
        stages.push(pairwise(&prev, f));
    }
    Ok(IteratedProduct {
        factors: factors.to_vec(),
        stages,
    })
}

impl<F: Field> IteratedProduct<F> {
    pub fn factors(&self) -> &[VectorSpace] {
        &self.factors
    }

    /// The outermost pairwise realization.
    pub fn realization(&self) -> &dyn TensorRealization<F> {
        self.stages.last().unwrap().as_ref()
    }

    pub fn dim(&self) -> usize {
        self.realization().tensor_space().dim()
    }

    /// `x₁ ⊗ x₂ ⊗ … ⊗ xₙ`.
    pub fn multi_tensor(&self, vectors: &[Vector<F>]) -> Result<Vector<F>> {
        if vectors.len() != self.factors.len() {
            return Err(shape(format!(
                "{} vectors for a {}-fold product",
                vectors.len(),
                self.factors.len()
            )));
        }
        let mut acc = self.stages[0].theta(&vectors[0], &vectors[1])?;
        for (stage, v) in self.stages[1..].iter().zip(&vectors[2..]) {
            acc = stage.theta(&acc, v)?;
        }
        Ok(acc)
    }
}

/// Re-bracketing `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`, sending
/// `(x ⊗ y) ⊗ z ↦ x ⊗ (y ⊗ z)`.
pub fn associator<F: Field>(
    x: &VectorSpace,
    y: &VectorSpace,
    z: &VectorSpace,
    pairwise: PairwiseBuilder<'_, F>,
) -> Result<LinearMap<F>> {
    let xy = pairwise(x, y);
    let left = pairwise(xy.tensor_space(), z);
    let yz = pairwise(y, z);
    let right = pairwise(x, yz.tensor_space());
    let (a, b, c) = (x.dim(), y.dim(), z.dim());
    let mut src = Vec::with_capacity(a * b * c);
    let mut dst = Vec::with_capacity(a * b * c);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                let (ei, dj, fk) = (Vector::unit(a, i), Vector::unit(b, j), Vector::unit(c, k));
                src.push(left.theta(&xy.theta(&ei, &dj)?, &fk)?.into_coords());
                dst.push(right.theta(&ei, &yz.theta(&dj, &fk)?)?.into_coords());
            }
        }
    }
    let src = Matrix::from_columns(&src, left.tensor_space().dim())?;
    let dst = Matrix::from_columns(&dst, right.tensor_space().dim())?;
    let inv = src.inverse().ok_or_else(|| {
        Error::NoFactorization("left-bracketed basis tensors are dependent".into())
    })?;
    LinearMap::new(
        left.tensor_space().clone(),
        right.tensor_space().clone(),
        dst.mul(&inv)?,
    )
}
