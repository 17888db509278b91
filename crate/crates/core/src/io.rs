//! JSON literals for exact and real values.
//!
//! Exact scalars are written as strings (`"-3/4"`, `"5"`) so no value ever
//! passes through a float. Integers are accepted as bare JSON numbers on
//! input. Printing is canonical, so parse → print → parse is the identity.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bilinear::BilinearMap;
use crate::crossnorm::{RealTensor, Tag};
use crate::error::{shape, Error, Result};
use crate::field::{Field, FieldSpec};
use crate::free::FreeVector;
use crate::linalg::Matrix;
use crate::space::{LinearMap, Subspace, Vector, VectorSpace};
use crate::tensor::TensorElement;

/// Runs `$body` with `$F` bound to the field type named by a [`FieldSpec`].
///
/// Prime fields are available for every prime below 128 and for 251, 257,
/// 65537, 2³¹−1, 2⁶¹−1 and 2⁶⁴−59; other moduli give
/// [`Error::UnsupportedModulus`]. `$body` must evaluate to a `Result` whose
/// error type converts from [`Error`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $F:ident => $body:expr) => {
        match $spec {
            $crate::FieldSpec::Rational => {
                type $F = $crate::Rational;
                $body
            }
            $crate::FieldSpec::Prime(p) => $crate::with_field!(@prime p, $F => $body;
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 251, 257, 65537,
                2147483647, 2305843009213693951, 18446744073709551557),
        }
    };
    (@prime $p:ident, $F:ident => $body:expr; $($q:literal),*) => {
        match $p {
            $(
                $q => {
                    type $F = $crate::Fp<$q>;
                    $body
                }
            )*
            other => Err($crate::Error::UnsupportedModulus(other).into()),
        }
    };
}

/// A scalar literal: a string, or an integer on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Int(i64),
}

impl Entry {
    pub fn of<F: Field>(x: &F) -> Self {
        Entry::Text(x.to_scalar().to_string())
    }

    pub fn parse<F: Field>(&self) -> Result<F> {
        match self {
            Entry::Text(s) => F::parse_literal(s),
            Entry::Int(n) => Ok(F::from_i64(*n)),
        }
    }
}

fn entries<F: Field>(xs: &[F]) -> Vec<Entry> {
    xs.iter().map(Entry::of).collect()
}

fn parse_entries<F: Field>(xs: &[Entry]) -> Result<Vec<F>> {
    xs.iter().map(Entry::parse).collect()
}

fn check_field<F: Field>(field: FieldSpec) -> Result<()> {
    F::spec().ensure_same(&field)
}

fn rational() -> FieldSpec {
    FieldSpec::Rational
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("literals always serialize")
}

/// The `"field"` key of a JSON object, `Q` when absent.
pub fn peek_field(text: &str) -> Result<FieldSpec> {
    #[derive(Deserialize)]
    struct Peek {
        #[serde(default = "rational")]
        field: FieldSpec,
    }
    match from_json::<serde_json::Value>(text)? {
        v @ serde_json::Value::Object(_) => serde_json::from_value::<Peek>(v)
            .map(|p| p.field)
            .map_err(|e| Error::Parse(e.to_string())),
        _ => Ok(FieldSpec::Rational),
    }
}

// ---------------------------------------------------------------------------
// matrices, maps, subspaces

/// `{"field": "Q", "dim": n, "matrix": [[...], ...]}`, every row of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub field: FieldSpec,
    pub dim: usize,
    pub matrix: Vec<Vec<Entry>>,
}

impl MatrixLiteral {
    pub fn from_matrix<F: Field>(m: &Matrix<F>) -> Self {
        MatrixLiteral {
            field: F::spec(),
            dim: m.cols(),
            matrix: m.row_vecs().iter().map(|r| entries(r)).collect(),
        }
    }

    pub fn to_matrix<F: Field>(&self) -> Result<Matrix<F>> {
        check_field::<F>(self.field)?;
        let rows = self
            .matrix
            .iter()
            .map(|r| {
                if r.len() == self.dim {
                    parse_entries(r)
                } else {
                    Err(shape(format!(
                        "row of length {} with dim {}",
                        r.len(),
                        self.dim
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows, self.dim)
    }

    pub fn space(&self) -> VectorSpace {
        VectorSpace::new(self.field, self.dim)
    }

    /// The map `F^dim → F^rows` whose matrix this is.
    pub fn to_map<F: Field>(&self) -> Result<LinearMap<F>> {
        let m = self.to_matrix::<F>()?;
        let codomain = VectorSpace::new(self.field, m.rows());
        LinearMap::new(self.space(), codomain, m)
    }

    pub fn from_map<F: Field>(l: &LinearMap<F>) -> Self {
        Self::from_matrix(l.matrix())
    }

    /// The span of the rows inside `F^dim`.
    pub fn to_subspace<F: Field>(&self) -> Result<Subspace<F>> {
        Subspace::row_space(&self.space(), &self.to_matrix::<F>()?)
    }

    /// The canonical basis as rows.
    pub fn from_subspace<F: Field>(s: &Subspace<F>) -> Self {
        MatrixLiteral {
            field: F::spec(),
            dim: s.ambient().dim(),
            matrix: s.basis().row_vecs().iter().map(|r| entries(r)).collect(),
        }
    }

    pub fn to_vectors<F: Field>(&self) -> Result<Vec<Vector<F>>> {
        Ok(self
            .to_matrix::<F>()?
            .row_vecs()
            .into_iter()
            .map(Vector::new)
            .collect())
    }
}

// ---------------------------------------------------------------------------
// bilinear maps

/// `{"Z_dim": k, "X_dim": m, "Y_dim": n, "coeffs": [[[...]]]}` with
/// `coeffs[k][i][j] = φ(e_i, d_j)_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearLiteral {
    #[serde(default = "rational")]
    pub field: FieldSpec,
    #[serde(rename = "Z_dim")]
    pub z_dim: usize,
    #[serde(rename = "X_dim")]
    pub x_dim: usize,
    #[serde(rename = "Y_dim")]
    pub y_dim: usize,
    pub coeffs: Vec<Vec<Vec<Entry>>>,
}

impl BilinearLiteral {
    pub fn from_bilinear<F: Field>(phi: &BilinearMap<F>) -> Self {
        let (z, m, n) = (phi.codomain().dim(), phi.left().dim(), phi.right().dim());
        let coeffs = (0..z)
            .map(|k| {
                (0..m)
                    .map(|i| (0..n).map(|j| Entry::of(phi.coeff(k, i, j))).collect())
                    .collect()
            })
            .collect();
        BilinearLiteral {
            field: F::spec(),
            z_dim: z,
            x_dim: m,
            y_dim: n,
            coeffs,
        }
    }

    pub fn to_bilinear<F: Field>(&self) -> Result<BilinearMap<F>> {
        check_field::<F>(self.field)?;
        let bad = || {
            shape(format!(
                "coefficient tensor is not {}x{}x{}",
                self.z_dim, self.x_dim, self.y_dim
            ))
        };
        if self.coeffs.len() != self.z_dim {
            return Err(bad());
        }
        let mut flat = Vec::with_capacity(self.z_dim * self.x_dim * self.y_dim);
        for slice in &self.coeffs {
            if slice.len() != self.x_dim {
                return Err(bad());
            }
            for row in slice {
                if row.len() != self.y_dim {
                    return Err(bad());
                }
                flat.extend(parse_entries::<F>(row)?);
            }
        }
        BilinearMap::new(
            VectorSpace::new(self.field, self.x_dim),
            VectorSpace::with_prefix(self.field, self.y_dim, "d"),
            VectorSpace::with_prefix(self.field, self.z_dim, "z"),
            flat,
        )
    }
}

// ---------------------------------------------------------------------------
// tensor elements

/// `{"X_dim": m, "Y_dim": n, "coeffs": [[...]], "rep": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorLiteral {
    #[serde(default = "rational")]
    pub field: FieldSpec,
    #[serde(rename = "X_dim")]
    pub x_dim: usize,
    #[serde(rename = "Y_dim")]
    pub y_dim: usize,
    pub coeffs: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<Vec<(Vec<Entry>, Vec<Entry>)>>,
}

impl TensorLiteral {
    pub fn from_element<F: Field>(t: &TensorElement<F>) -> Self {
        TensorLiteral {
            field: F::spec(),
            x_dim: t.table().rows(),
            y_dim: t.table().cols(),
            coeffs: t.table().row_vecs().iter().map(|r| entries(r)).collect(),
            rep: t.representation().map(|pairs| {
                pairs
                    .iter()
                    .map(|(x, y)| (entries(x.coords()), entries(y.coords())))
                    .collect()
            }),
        }
    }

    pub fn to_element<F: Field>(&self) -> Result<TensorElement<F>> {
        let table = MatrixLiteral {
            field: self.field,
            dim: self.y_dim,
            matrix: self.coeffs.clone(),
        }
        .to_matrix::<F>()?;
        if table.rows() != self.x_dim {
            return Err(shape(format!(
                "{} rows with X_dim {}",
                table.rows(),
                self.x_dim
            )));
        }
        match &self.rep {
            None => Ok(TensorElement::from_table(table)),
            Some(pairs) => {
                let mut rep = Vec::with_capacity(pairs.len());
                for (x, y) in pairs {
                    if x.len() != self.x_dim || y.len() != self.y_dim {
                        return Err(shape("representation pair of the wrong length"));
                    }
                    rep.push((
                        Vector::new(parse_entries(x)?),
                        Vector::new(parse_entries(y)?),
                    ));
                }
                Ok(TensorElement::with_representation(table, rep))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// free vectors

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeTermLiteral {
    pub x: Vec<Entry>,
    pub y: Vec<Entry>,
    pub coeff: Entry,
}

/// A free vector: a bare list of `{"x", "y", "coeff"}` terms, or an object
/// that also names the field and carrier dimensions (needed for the zero
/// vector).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FreeLiteral {
    Full {
        #[serde(default = "rational")]
        field: FieldSpec,
        #[serde(rename = "X_dim")]
        x_dim: usize,
        #[serde(rename = "Y_dim")]
        y_dim: usize,
        terms: Vec<FreeTermLiteral>,
    },
    Terms(Vec<FreeTermLiteral>),
}

impl FreeLiteral {
    pub fn from_free<F: Field>(f: &FreeVector<F>) -> Self {
        FreeLiteral::Full {
            field: F::spec(),
            x_dim: f.left().dim(),
            y_dim: f.right().dim(),
            terms: f
                .terms()
                .map(|t| FreeTermLiteral {
                    x: entries(t.x.coords()),
                    y: entries(t.y.coords()),
                    coeff: Entry::of(&t.coeff),
                })
                .collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            FreeLiteral::Full { field, .. } => *field,
            FreeLiteral::Terms(_) => FieldSpec::Rational,
        }
    }

    pub fn to_free<F: Field>(&self) -> Result<FreeVector<F>> {
        let (x_dim, y_dim, terms) = match self {
            FreeLiteral::Full {
                field,
                x_dim,
                y_dim,
                terms,
            } => {
                check_field::<F>(*field)?;
                (*x_dim, *y_dim, terms)
            }
            FreeLiteral::Terms(terms) => {
                let first = terms.first().ok_or_else(|| {
                    Error::Parse("an empty term list does not determine X and Y".into())
                })?;
                (first.x.len(), first.y.len(), terms)
            }
        };
        let left = VectorSpace::over::<F>(x_dim);
        let right = VectorSpace::with_prefix(F::spec(), y_dim, "d");
        let mut f = FreeVector::zero(&left, &right);
        for t in terms {
            if t.x.len() != x_dim || t.y.len() != y_dim {
                return Err(Error::MixedCarriers(format!(
                    "term over {}x{} in a free vector over {x_dim}x{y_dim}",
                    t.x.len(),
                    t.y.len()
                )));
            }
            f.add_term(
                t.coeff.parse()?,
                &Vector::new(parse_entries(&t.x)?),
                &Vector::new(parse_entries(&t.y)?),
            )?;
        }
        Ok(f)
    }
}

// ---------------------------------------------------------------------------
// real tensors

/// `{"coeffs": [[...]], "px": "2", "py": "inf"}`; tags default to 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealTensorLiteral {
    pub coeffs: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub px: Option<Tag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub py: Option<Tag>,
}

impl RealTensorLiteral {
    pub fn from_tensor(t: &RealTensor<f64>) -> Self {
        let (px, py) = t.tags();
        RealTensorLiteral {
            coeffs: t.rows(),
            px: Some(px),
            py: Some(py),
        }
    }

    /// Tags given here win over the literal's own.
    pub fn to_tensor(&self, px: Option<Tag>, py: Option<Tag>) -> Result<RealTensor<f64>> {
        let px = px.or(self.px).unwrap_or(Tag::Two);
        let py = py.or(self.py).unwrap_or(Tag::Two);
        RealTensor::from_rows(&self.coeffs, px, py)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"field":"Q","dim":2,"matrix":[["1/2","-3"],[4,"6/8"]]}"#;
        let lit: MatrixLiteral = from_json(text).unwrap();
        let m = lit.to_matrix::<Q>().unwrap();
        let printed = to_json(&MatrixLiteral::from_matrix(&m));
        assert_eq!(
            printed,
            r#"{"field":"Q","dim":2,"matrix":[["1/2","-3"],["4","3/4"]]}"#
        );
        let again: MatrixLiteral = from_json(&printed).unwrap();
        assert_eq!(again.to_matrix::<Q>().unwrap(), m);
        assert_eq!(to_json(&again), printed);
    }

    #[test]
    fn prime_field_literals() {
        let lit: MatrixLiteral =
            from_json(r#"{"field":"GF(7)","dim":1,"matrix":[["9"],["1/2"]]}"#).unwrap();
        let m = lit.to_matrix::<Fp<7>>().unwrap();
        assert_eq!(m.column(0), vec![Fp::new(2), Fp::new(4)]);
        assert!(matches!(
            lit.to_matrix::<Q>(),
            Err(Error::MixedFields { .. })
        ));
    }

    #[test]
    fn ragged_rows_rejected() {
        let lit: MatrixLiteral = from_json(r#"{"field":"Q","dim":2,"matrix":[["1"]]}"#).unwrap();
        assert!(matches!(lit.to_matrix::<Q>(), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn field_dispatch() {
        fn dim_of(text: &str) -> Result<usize> {
            let lit: MatrixLiteral = from_json(text)?;
            with_field!(lit.field, F => Ok(lit.to_matrix::<F>()?.rows()))
        }
        assert_eq!(
            dim_of(r#"{"field":"GF(65537)","dim":1,"matrix":[["3"]]}"#).unwrap(),
            1
        );
        assert_eq!(
            dim_of(r#"{"field":"GF(131)","dim":1,"matrix":[["3"]]}"#),
            Err(Error::UnsupportedModulus(131))
        );
    }

    #[test]
    fn free_literal_forms() {
        let bare = r#"[{"x":["1","0"],"y":["0","1"],"coeff":"3/2"}]"#;
        let lit: FreeLiteral = from_json(bare).unwrap();
        let f = lit.to_free::<Q>().unwrap();
        assert_eq!(f.support_len(), 1);
        let printed = to_json(&FreeLiteral::from_free(&f));
        let back: FreeLiteral = from_json(&printed).unwrap();
        assert_eq!(back.to_free::<Q>().unwrap(), f);
        let empty: FreeLiteral = from_json("[]").unwrap();
        assert!(matches!(empty.to_free::<Q>(), Err(Error::Parse(_))));
    }

    #[test]
    fn tensor_literal_with_rep() {
        let text = r#"{"X_dim":2,"Y_dim":1,"coeffs":[["1"],["2"]],"rep":[[["1","2"],["1"]]]}"#;
        let lit: TensorLiteral = from_json(text).unwrap();
        let t = lit.to_element::<Q>().unwrap();
        assert_eq!(t.representation().unwrap().len(), 1);
        let back: TensorLiteral = from_json(&to_json(&TensorLiteral::from_element(&t))).unwrap();
        assert_eq!(back.to_element::<Q>().unwrap(), t);
    }

    #[test]
    fn real_tensor_tags() {
        let lit: RealTensorLiteral =
            from_json(r#"{"coeffs":[[1,0],[0,1]],"px":"inf","py":2}"#).unwrap();
        assert_eq!(
            lit.to_tensor(None, None).unwrap().tags(),
            (Tag::Inf, Tag::Two)
        );
        assert_eq!(
            lit.to_tensor(Some(Tag::One), None).unwrap().tags(),
            (Tag::One, Tag::Two)
        );
        let bad: Result<RealTensorLiteral> = from_json(r#"{"coeffs":[[1]],"px":"3"}"#);
        assert!(bad.is_err());
    }
}
