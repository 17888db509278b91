//! Injective and projective norms on `X ⊗ Y` for `ℓp` factors, `p ∈ {1, 2, ∞}`.
//!
//! A tensor is a real coefficient table `C`. With `q` the dual exponent,
//!
//! * `‖C‖∨ = sup { |fᵀ C g| : ‖f‖_{qX} ≤ 1, ‖g‖_{qY} ≤ 1 }`,
//! * `‖C‖∧ = inf { Σ ‖xᵢ‖_{pX} ‖yᵢ‖_{pY} : C = Σ xᵢ yᵢᵀ }`.
//!
//! The projective norm is the dual of the operator norm of forms: for any
//! table `Φ`, `⟨Φ, C⟩ ≤ ‖C‖∧ · sup { |xᵀ Φ y| : ‖x‖_{pX} ≤ 1, ‖y‖_{pY} ≤ 1 }`.
//! Every projective value is reported with such a certificate when no closed
//! form is available.

use std::fmt;
use std::str::FromStr;

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use nalgebra::{DMatrix, DVector, RealField, SVD};
use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};

/// Real scalars the norm solvers run over (`f32`, `f64`).
pub trait Real: RealField + Copy {}

impl<T: RealField + Copy> Real for T {}

fn lit<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

fn to_f64<T: Real>(x: T) -> f64 {
    nalgebra::try_convert(x).expect("real scalar converts to f64")
}

/// Largest side that sign-vector enumeration accepts.
pub const ENUMERATION_CAP: usize = 16;

/// Largest number of sign-vector atom pairs fed to the linear program.
pub const LP_ATOM_CAP: usize = 4096;

pub const ENUMERATION_TOL: f64 = 1e-9;
pub const SPECTRAL_TOL: f64 = 1e-7;
pub const CERTIFICATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    One,
    Two,
    Inf,
}

impl Tag {
    pub const ALL: [Tag; 3] = [Tag::One, Tag::Two, Tag::Inf];

    /// The exponent `q` with `1/p + 1/q = 1`.
    pub fn dual(self) -> Tag {
        match self {
            Tag::One => Tag::Inf,
            Tag::Two => Tag::Two,
            Tag::Inf => Tag::One,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::One => "1",
            Tag::Two => "2",
            Tag::Inf => "inf",
        }
    }

    pub fn norm<T: Real>(self, v: &[T]) -> T {
        match self {
            Tag::One => v.iter().fold(T::zero(), |a, x| a + x.abs()),
            Tag::Two => v.iter().fold(T::zero(), |a, x| a + *x * *x).sqrt(),
            Tag::Inf => v.iter().fold(T::zero(), |a, x| a.max(x.abs())),
        }
    }

    /// A vector `g` in the dual unit ball with `⟨h, g⟩ = ‖h‖_p`.
    pub fn norming<T: Real>(self, h: &[T]) -> Vec<T> {
        match self {
            Tag::One => h.iter().map(|x| sign(*x)).collect(),
            Tag::Two => {
                let n = self.norm(h);
                if n == T::zero() {
                    vec![T::zero(); h.len()]
                } else {
                    h.iter().map(|x| *x / n).collect()
                }
            }
            Tag::Inf => {
                let mut g = vec![T::zero(); h.len()];
                if let Some(j) = argmax(h.iter().map(|x| x.abs())) {
                    g[j] = sign(h[j]);
                }
                g
            }
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Tag::One),
            "2" => Ok(Tag::Two),
            "inf" | "∞" | "Inf" | "infinity" => Ok(Tag::Inf),
            other => Err(Error::UnsupportedTag(other.to_string())),
        }
    }
}

impl Serialize for Tag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // accept both "inf" and the bare numbers 1 and 2
        let v = serde_json::Value::deserialize(d)?;
        let s = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => other.to_string(),
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn sign<T: Real>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// First index of the maximum, so ties resolve by position.
fn argmax<T: Real>(values: impl Iterator<Item = T>) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormedFactor {
    pub dim: usize,
    pub tag: Tag,
}

/// A coefficient table with the norms of its two factor spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTensor<T: Real> {
    coeffs: DMatrix<T>,
    px: Tag,
    py: Tag,
}

impl<T: Real> RealTensor<T> {
    pub fn new(coeffs: DMatrix<T>, px: Tag, py: Tag) -> Result<Self> {
        if coeffs.iter().any(|x| !x.is_finite()) {
            return Err(Error::Overflow("tensor has a non-finite entry".into()));
        }
        Ok(RealTensor { coeffs, px, py })
    }

    pub fn from_rows(rows: &[Vec<T>], px: Tag, py: Tag) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(shape("ragged coefficient table"));
        }
        Self::new(DMatrix::from_fn(m, n, |i, j| rows[i][j]), px, py)
    }

    /// `x ⊗ y`.
    pub fn rank_one(x: &[T], y: &[T], px: Tag, py: Tag) -> Result<Self> {
        Self::new(
            DMatrix::from_fn(x.len(), y.len(), |i, j| x[i] * y[j]),
            px,
            py,
        )
    }

    pub fn coeffs(&self) -> &DMatrix<T> {
        &self.coeffs
    }

    pub fn tags(&self) -> (Tag, Tag) {
        (self.px, self.py)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.coeffs.shape()
    }

    pub fn factors(&self) -> (NormedFactor, NormedFactor) {
        let (m, n) = self.shape();
        (
            NormedFactor {
                dim: m,
                tag: self.px,
            },
            NormedFactor {
                dim: n,
                tag: self.py,
            },
        )
    }

    pub fn with_tags(&self, px: Tag, py: Tag) -> Self {
        RealTensor {
            coeffs: self.coeffs.clone(),
            px,
            py,
        }
    }

    pub fn scaled(&self, alpha: T) -> Self {
        RealTensor {
            coeffs: self.coeffs.scale(alpha),
            px: self.px,
            py: self.py,
        }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.coeffs.nrows())
            .map(|i| self.coeffs.row(i).iter().copied().collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Enumeration,
    Bound,
}

/// A norm value as a certified interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormResult<T> {
    pub lo: T,
    pub hi: T,
    pub method: Method,
    pub tolerance: f64,
}

impl<T: Real> NormResult<T> {
    fn exact(value: T, method: Method, tolerance: f64) -> Self {
        NormResult {
            lo: value,
            hi: value,
            method,
            tolerance,
        }
    }

    fn interval(lo: T, hi: T, method: Method, tolerance: f64) -> Self {
        NormResult {
            lo: lo.min(hi),
            hi,
            method,
            tolerance,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) * lit(0.5)
    }

    pub fn to_f64(&self) -> NormResult<f64> {
        NormResult {
            lo: to_f64(self.lo),
            hi: to_f64(self.hi),
            method: self.method,
            tolerance: self.tolerance,
        }
    }
}

// ---------------------------------------------------------------------------
// injective norm

/// The injective norm together with functionals attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct InjectiveWitness<T: Real> {
    pub value: T,
    /// in the unit ball of `ℓ_{qX}`
    pub f: DVector<T>,
    /// in the unit ball of `ℓ_{qY}`
    pub g: DVector<T>,
    pub method: Method,
}

/// Sign vectors of length `k` with first entry `+1`, in counting order.
fn sign_vectors<T: Real>(k: usize) -> Result<impl Iterator<Item = DVector<T>>> {
    if k > ENUMERATION_CAP {
        return Err(Error::Overflow(format!(
            "sign enumeration over dimension {k} exceeds the cap of {ENUMERATION_CAP}"
        )));
    }
    let count: u64 = if k == 0 { 1 } else { 1 << (k - 1) };
    Ok((0..count).map(move |mask| {
        DVector::from_fn(k, |i, _| {
            if i > 0 && (mask >> (i - 1)) & 1 == 1 {
                -T::one()
            } else {
                T::one()
            }
        })
    }))
}

fn best_over_signs<T: Real>(k: usize, value: impl Fn(&DVector<T>) -> T) -> Result<(T, DVector<T>)> {
    let mut best = (-T::one(), DVector::zeros(k));
    for s in sign_vectors::<T>(k)? {
        let v = value(&s);
        if v > best.0 {
            best = (v, s);
        }
    }
    best.0 = best.0.max(T::zero());
    Ok(best)
}

fn empty_witness<T: Real>(m: usize, n: usize, method: Method) -> InjectiveWitness<T> {
    InjectiveWitness {
        value: T::zero(),
        f: DVector::zeros(m),
        g: DVector::zeros(n),
        method,
    }
}

pub fn injective_witness<T: Real>(t: &RealTensor<T>) -> Result<InjectiveWitness<T>> {
    let c = &t.coeffs;
    let (m, n) = c.shape();
    let (px, py) = t.tags();
    if m == 0 || n == 0 {
        return Ok(empty_witness(m, n, Method::ClosedForm));
    }
    let rows: Vec<Vec<T>> = t.rows();
    let cols: Vec<Vec<T>> = (0..n)
        .map(|j| c.column(j).iter().copied().collect())
        .collect();
    let w = match (px, py) {
        // dual ball of ℓ∞ is the ℓ1 ball: extreme points ±e_i
        (Tag::Inf, _) => {
            let i = argmax(rows.iter().map(|r| py.norm(r))).unwrap();
            InjectiveWitness {
                value: py.norm(&rows[i]),
                f: DVector::from_fn(m, |k, _| if k == i { T::one() } else { T::zero() }),
                g: DVector::from_vec(py.norming(&rows[i])),
                method: Method::ClosedForm,
            }
        }
        (_, Tag::Inf) => {
            let j = argmax(cols.iter().map(|col| px.norm(col))).unwrap();
            InjectiveWitness {
                value: px.norm(&cols[j]),
                f: DVector::from_vec(px.norming(&cols[j])),
                g: DVector::from_fn(n, |k, _| if k == j { T::one() } else { T::zero() }),
                method: Method::ClosedForm,
            }
        }
        (Tag::Two, Tag::Two) => {
            let svd = SVD::new(c.clone(), true, true);
            let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
            InjectiveWitness {
                value: svd.singular_values[0],
                f: u.column(0).into_owned(),
                g: vt.row(0).transpose(),
                method: Method::ClosedForm,
            }
        }
        // the remaining pairs have an ℓ∞ dual ball on at least one side
        (Tag::One, Tag::One) if n < m => {
            let (value, g) = best_over_signs(n, |s| Tag::One.norm((c * s).as_slice()))?;
            let f = DVector::from_vec(Tag::One.norming((c * &g).as_slice()));
            InjectiveWitness {
                value,
                f,
                g,
                method: Method::Enumeration,
            }
        }
        (Tag::One, _) => {
            let (value, f) = best_over_signs(m, |s| py.norm((c.transpose() * s).as_slice()))?;
            let g = DVector::from_vec(py.norming((c.transpose() * &f).as_slice()));
            InjectiveWitness {
                value,
                f,
                g,
                method: Method::Enumeration,
            }
        }
        (Tag::Two, Tag::One) => {
            let (value, g) = best_over_signs(n, |s| Tag::Two.norm((c * s).as_slice()))?;
            let f = DVector::from_vec(Tag::Two.norming((c * &g).as_slice()));
            InjectiveWitness {
                value,
                f,
                g,
                method: Method::Enumeration,
            }
        }
    };
    if !w.value.is_finite() {
        return Err(Error::Overflow("injective norm is not finite".into()));
    }
    Ok(w)
}

pub fn injective_norm<T: Real>(t: &RealTensor<T>) -> Result<NormResult<T>> {
    let w = injective_witness(t)?;
    let tol = match (w.method, t.tags()) {
        (Method::ClosedForm, (Tag::Two, Tag::Two)) => SPECTRAL_TOL,
        _ => ENUMERATION_TOL,
    };
    Ok(NormResult::exact(w.value, w.method, tol))
}

/// `sup { |xᵀ Φ y| : ‖x‖_{pX} ≤ 1, ‖y‖_{pY} ≤ 1 }`, the norm of `Φ` as a
/// bilinear form on the factors of `t`.
pub fn form_norm<T: Real>(phi: &DMatrix<T>, px: Tag, py: Tag) -> Result<T> {
    let dual = RealTensor::new(phi.clone(), px.dual(), py.dual())?;
    Ok(injective_witness(&dual)?.value)
}

// ---------------------------------------------------------------------------
// projective norm

pub type Representation<T> = Vec<(DVector<T>, DVector<T>)>;

/// Cost `Σ ‖xᵢ‖_{pX} ‖yᵢ‖_{pY}` of a representation.
pub fn representation_cost<T: Real>(rep: &Representation<T>, px: Tag, py: Tag) -> T {
    rep.iter().fold(T::zero(), |a, (x, y)| {
        a + px.norm(x.as_slice()) * py.norm(y.as_slice())
    })
}

fn represented<T: Real>(rep: &Representation<T>, m: usize, n: usize) -> DMatrix<T> {
    rep.iter()
        .fold(DMatrix::zeros(m, n), |acc, (x, y)| acc + x * y.transpose())
}

/// Upper and lower bounds on `‖C‖∧` from an explicit representation and an
/// explicit dual form.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveCertificate<T: Real> {
    /// cost of `representation`, plus the basis-pair cost of whatever part of
    /// `C` it fails to reproduce
    pub upper: T,
    /// `⟨Φ, C⟩ / ‖Φ‖` for the dual form `Φ`
    pub lower: T,
    pub representation: Representation<T>,
    pub dual_form: DMatrix<T>,
}

impl<T: Real> ProjectiveCertificate<T> {
    fn assemble(
        t: &RealTensor<T>,
        representation: Representation<T>,
        dual_form: DMatrix<T>,
    ) -> Result<Self> {
        let (m, n) = t.shape();
        let (px, py) = t.tags();
        let residual = &t.coeffs - represented(&representation, m, n);
        let upper =
            representation_cost(&representation, px, py) + Tag::One.norm(residual.as_slice());
        let lower = dual_bound(t, &dual_form)?;
        Ok(ProjectiveCertificate {
            upper,
            lower,
            representation,
            dual_form,
        })
    }

    pub fn gap(&self) -> T {
        self.upper - self.lower
    }
}

fn dual_bound<T: Real>(t: &RealTensor<T>, phi: &DMatrix<T>) -> Result<T> {
    let (px, py) = t.tags();
    let norm = form_norm(phi, px, py)?;
    if norm <= T::zero() {
        return Ok(T::zero());
    }
    Ok(phi.dot(&t.coeffs).abs() / norm)
}

fn unit<T: Real>(k: usize, i: usize) -> DVector<T> {
    DVector::from_fn(k, |r, _| if r == i { T::one() } else { T::zero() })
}

fn row_representation<T: Real>(c: &DMatrix<T>) -> Representation<T> {
    (0..c.nrows())
        .map(|i| (unit(c.nrows(), i), c.row(i).transpose()))
        .collect()
}

fn column_representation<T: Real>(c: &DMatrix<T>) -> Representation<T> {
    (0..c.ncols())
        .map(|j| (c.column(j).into_owned(), unit(c.ncols(), j)))
        .collect()
}

fn basis_pair_representation<T: Real>(c: &DMatrix<T>) -> Representation<T> {
    let (m, n) = c.shape();
    let mut rep = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if c[(i, j)] != T::zero() {
                rep.push((unit(m, i).scale(c[(i, j)]), unit(n, j)));
            }
        }
    }
    rep
}

struct Spectral<T: Real> {
    rep: Representation<T>,
    /// `U_r V_rᵀ` over the numerically nonzero singular values
    polar: DMatrix<T>,
    nuclear: T,
}

fn spectral<T: Real>(c: &DMatrix<T>) -> Spectral<T> {
    let (m, n) = c.shape();
    if m == 0 || n == 0 {
        return Spectral {
            rep: Vec::new(),
            polar: DMatrix::zeros(m, n),
            nuclear: T::zero(),
        };
    }
    let svd = SVD::new(c.clone(), true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    let sigma = &svd.singular_values;
    let cutoff = sigma[0] * lit::<T>(f64::EPSILON * (m.max(n) as f64));
    let mut rep = Vec::new();
    let mut polar = DMatrix::zeros(m, n);
    for k in 0..sigma.len() {
        if sigma[k] > cutoff {
            let (uk, vk) = (u.column(k).into_owned(), vt.row(k).transpose());
            polar += &uk * vk.transpose();
            rep.push((uk.scale(sigma[k]), vk));
        }
    }
    Spectral {
        rep,
        polar,
        nuclear: sigma.iter().fold(T::zero(), |a, s| a + *s),
    }
}

/// Dual form whose row `i` norms row `i` of `C`.
fn row_norming<T: Real>(c: &DMatrix<T>, py: Tag) -> DMatrix<T> {
    let mut phi = DMatrix::zeros(c.nrows(), c.ncols());
    for i in 0..c.nrows() {
        let row: Vec<T> = c.row(i).iter().copied().collect();
        for (j, g) in py.norming(&row).into_iter().enumerate() {
            phi[(i, j)] = g;
        }
    }
    phi
}

fn column_norming<T: Real>(c: &DMatrix<T>, px: Tag) -> DMatrix<T> {
    row_norming(&c.transpose(), px).transpose()
}

/// Explicit certificate for `‖C‖∧`, for every tag pair.
pub fn projective_certificate<T: Real>(t: &RealTensor<T>) -> Result<ProjectiveCertificate<T>> {
    let c = &t.coeffs;
    let (px, py) = t.tags();
    match (px, py) {
        (Tag::Two, Tag::Two) => {
            let s = spectral(c);
            ProjectiveCertificate::assemble(t, s.rep, s.polar)
        }
        (Tag::One, _) => {
            ProjectiveCertificate::assemble(t, row_representation(c), row_norming(c, py))
        }
        (_, Tag::One) => {
            ProjectiveCertificate::assemble(t, column_representation(c), column_norming(c, px))
        }
        (Tag::Inf, Tag::Inf) if sign_atom_count(c.nrows(), c.ncols()) <= LP_ATOM_CAP => {
            sign_atom_certificate(t)
        }
        _ => best_candidate_certificate(t),
    }
}

/// Upper bound from the cheapest of several representations, lower bound from
/// the best of several dual forms. The injective maximizer `f gᵀ` is always
/// among the forms, so the lower bound never drops below `‖C‖∨`.
fn best_candidate_certificate<T: Real>(t: &RealTensor<T>) -> Result<ProjectiveCertificate<T>> {
    let c = &t.coeffs;
    let (px, py) = t.tags();
    let s = spectral(c);
    let reps = [
        s.rep,
        basis_pair_representation(c),
        row_representation(c),
        column_representation(c),
    ];
    let mut best_rep = None;
    for rep in reps {
        let cost = representation_cost(&rep, px, py);
        if best_rep.as_ref().is_none_or(|(b, _)| cost < *b) {
            best_rep = Some((cost, rep));
        }
    }
    let w = injective_witness(t)?;
    let forms = [
        &w.f * w.g.transpose(),
        s.polar,
        c.map(sign),
        c.clone(),
        row_norming(c, py),
        column_norming(c, px),
    ];
    let mut best_form: Option<(T, DMatrix<T>)> = None;
    for phi in forms {
        let bound = dual_bound(t, &phi)?;
        if best_form.as_ref().is_none_or(|(b, _)| bound > *b) {
            best_form = Some((bound, phi));
        }
    }
    let (_, rep) = best_rep.unwrap();
    let (_, phi) = best_form.unwrap();
    ProjectiveCertificate::assemble(t, rep, phi)
}

fn sign_atom_count(m: usize, n: usize) -> usize {
    if m == 0 || n == 0 {
        return 0;
    }
    let bits = (m - 1) + (n - 1);
    if bits >= usize::BITS as usize {
        usize::MAX
    } else {
        1 << bits
    }
}

/// `ℓ∞ ⊗ ℓ∞`: the unit ball of the projective norm is the convex hull of
/// `±s tᵀ` over sign vectors, so the norm is a linear program over those
/// atoms. The primal gives the representation, a separately solved dual
/// gives the form.
fn sign_atom_certificate<T: Real>(t: &RealTensor<T>) -> Result<ProjectiveCertificate<T>> {
    let c = &t.coeffs;
    let (m, n) = c.shape();
    if m == 0 || n == 0 || c.iter().all(|x| *x == T::zero()) {
        return ProjectiveCertificate::assemble(t, Vec::new(), DMatrix::zeros(m, n));
    }
    let ss: Vec<DVector<f64>> = sign_vectors::<f64>(m)?.collect();
    let ts: Vec<DVector<f64>> = sign_vectors::<f64>(n)?.collect();
    let cf = c.map(to_f64);
    let lp_err = |e: minilp::Error| Error::NoFactorization(format!("linear program failed: {e}"));

    // primal: min Σ|λ_k| subject to Σ λ_k s_k t_kᵀ = C
    let mut primal = Problem::new(OptimizationDirection::Minimize);
    let mut vars = Vec::with_capacity(ss.len() * ts.len());
    for _ in 0..ss.len() * ts.len() {
        let plus = primal.add_var(1.0, (0.0, f64::INFINITY));
        let minus = primal.add_var(1.0, (0.0, f64::INFINITY));
        vars.push((plus, minus));
    }
    for i in 0..m {
        for j in 0..n {
            let mut expr = LinearExpr::empty();
            for (a, s) in ss.iter().enumerate() {
                for (b, tv) in ts.iter().enumerate() {
                    let coef = s[i] * tv[j];
                    let (plus, minus) = vars[a * ts.len() + b];
                    expr.add(plus, coef);
                    expr.add(minus, -coef);
                }
            }
            primal.add_constraint(expr, ComparisonOp::Eq, cf[(i, j)]);
        }
    }
    let sol = primal.solve().map_err(lp_err)?;
    let mut rep = Vec::new();
    for (a, s) in ss.iter().enumerate() {
        for (b, tv) in ts.iter().enumerate() {
            let (plus, minus) = vars[a * ts.len() + b];
            let lambda = sol[plus] - sol[minus];
            if lambda != 0.0 {
                rep.push((s.map(|x| lit::<T>(x * lambda)), tv.map(lit::<T>)));
            }
        }
    }

    // dual: max ⟨Φ, C⟩ subject to |sᵀ Φ t| ≤ 1 for every atom
    let mut dual = Problem::new(OptimizationDirection::Maximize);
    let phi_vars: Vec<_> = (0..m * n)
        .map(|k| dual.add_var(cf[(k / n, k % n)], (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    for s in &ss {
        for tv in &ts {
            let mut expr = LinearExpr::empty();
            for i in 0..m {
                for j in 0..n {
                    expr.add(phi_vars[i * n + j], s[i] * tv[j]);
                }
            }
            let expr2 = expr.clone();
            dual.add_constraint(expr, ComparisonOp::Le, 1.0);
            dual.add_constraint(expr2, ComparisonOp::Ge, -1.0);
        }
    }
    let dsol = dual.solve().map_err(lp_err)?;
    let phi = DMatrix::from_fn(m, n, |i, j| lit::<T>(dsol[phi_vars[i * n + j]]));
    ProjectiveCertificate::assemble(t, rep, phi)
}

pub fn projective_norm<T: Real>(t: &RealTensor<T>) -> Result<NormResult<T>> {
    let c = &t.coeffs;
    let value = match t.tags() {
        (Tag::Two, Tag::Two) => {
            return Ok(NormResult::exact(
                spectral(c).nuclear,
                Method::ClosedForm,
                SPECTRAL_TOL,
            ))
        }
        // ℓ1 ⊗ Y: every tensor is Σ e_i ⊗ row_i and that representation is optimal
        (Tag::One, py) => t.rows().iter().fold(T::zero(), |a, r| a + py.norm(r)),
        (px, Tag::One) => (0..c.ncols()).fold(T::zero(), |a, j| {
            let col: Vec<T> = c.column(j).iter().copied().collect();
            a + px.norm(&col)
        }),
        (Tag::Inf, Tag::Inf) if sign_atom_count(c.nrows(), c.ncols()) <= LP_ATOM_CAP => {
            let cert = sign_atom_certificate(t)?;
            return Ok(NormResult::interval(
                cert.lower,
                cert.upper,
                Method::Enumeration,
                CERTIFICATE_TOL,
            ));
        }
        _ => {
            let cert = best_candidate_certificate(t)?;
            return Ok(NormResult::interval(
                cert.lower,
                cert.upper,
                Method::Bound,
                CERTIFICATE_TOL,
            ));
        }
    };
    if !value.is_finite() {
        return Err(Error::Overflow("projective norm is not finite".into()));
    }
    Ok(NormResult::exact(
        value,
        Method::ClosedForm,
        ENUMERATION_TOL,
    ))
}

/// `⟨C₁, C₂⟩ = Σ C₁_ij C₂_ij`, the inner product of `ℓ2 ⊗ ℓ2`.
pub fn hilbert_inner<T: Real>(a: &RealTensor<T>, b: &RealTensor<T>) -> Result<T> {
    for t in [a, b] {
        if t.tags() != (Tag::Two, Tag::Two) {
            return Err(Error::UnsupportedTag(format!(
                "inner product needs (2,2) factors, got ({},{})",
                t.px, t.py
            )));
        }
    }
    if a.shape() != b.shape() {
        return Err(shape(format!(
            "tables of shape {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.coeffs.dot(&b.coeffs))
}

// ---------------------------------------------------------------------------
// certification

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyReport {
    pub px: Tag,
    pub py: Tag,
    pub injective: NormResult<f64>,
    pub projective: NormResult<f64>,
    pub checks: Vec<CertCheck>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn within(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn check(name: &str, passed: bool, detail: String) -> CertCheck {
    CertCheck {
        name: name.into(),
        passed,
        detail,
    }
}

/// Checks the reasonable-crossnorm properties on one tensor: the injective
/// norm is below the projective norm, both are exact cross norms when `C` is
/// rank one, and both scale absolutely.
pub fn crossnorm_certify<T: Real>(t: &RealTensor<T>) -> Result<CertifyReport> {
    let tol = CERTIFICATE_TOL;
    let (px, py) = t.tags();
    let inj = injective_norm(t)?.to_f64();
    let proj = projective_norm(t)?.to_f64();
    let mut checks = vec![check(
        "injective-below-projective",
        inj.hi <= proj.lo + tol,
        format!("injective {} vs projective lower bound {}", inj.hi, proj.lo),
    )];

    let c = &t.coeffs;
    let (m, n) = t.shape();
    if m > 0 && n > 0 {
        let sigma = SVD::new(c.clone(), true, true);
        let s = &sigma.singular_values;
        let rank_one = s[0] > T::zero() && (s.len() < 2 || s[1] <= s[0] * lit::<T>(1e-12));
        if rank_one {
            let x = sigma.u.as_ref().unwrap().column(0).scale(s[0]);
            let y = sigma.v_t.as_ref().unwrap().row(0).transpose();
            let cross = to_f64(px.norm(x.as_slice()) * py.norm(y.as_slice()));
            let hit = |r: &NormResult<f64>| {
                r.lo - tol <= cross
                    && cross <= r.hi + tol
                    && within(r.lo, cross, tol)
                    && within(r.hi, cross, tol)
            };
            checks.push(check(
                "rank-one-injective",
                hit(&inj),
                format!("‖x‖‖y‖ = {cross}, injective [{}, {}]", inj.lo, inj.hi),
            ));
            checks.push(check(
                "rank-one-projective",
                hit(&proj),
                format!("‖x‖‖y‖ = {cross}, projective [{}, {}]", proj.lo, proj.hi),
            ));
        }
    }

    for alpha in [-2.0, 0.5] {
        let scaled = t.scaled(lit(alpha));
        let si = injective_norm(&scaled)?.to_f64();
        let sp = projective_norm(&scaled)?.to_f64();
        let a = f64::abs(alpha);
        checks.push(check(
            &format!("homogeneous-injective({alpha})"),
            within(si.hi, a * inj.hi, tol) && within(si.lo, a * inj.lo, tol),
            format!("{} vs {}", si.hi, a * inj.hi),
        ));
        // bound intervals need not scale exactly, only stay consistent
        let consistent = if proj.method == Method::Bound {
            sp.lo <= a * proj.hi + tol * (1.0 + a * proj.hi)
                && a * proj.lo <= sp.hi + tol * (1.0 + sp.hi)
        } else {
            within(sp.hi, a * proj.hi, tol) && within(sp.lo, a * proj.lo, tol)
        };
        checks.push(check(
            &format!("homogeneous-projective({alpha})"),
            consistent,
            format!("[{}, {}] vs {}·[{}, {}]", sp.lo, sp.hi, a, proj.lo, proj.hi),
        ));
    }

    Ok(CertifyReport {
        px,
        py,
        injective: inj,
        projective: proj,
        checks,
    })
}
