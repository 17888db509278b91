//! Seeded generators for the randomized suite.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tensoraxiom_core::{
    BilinearMap, Field, LinearMap, Matrix, RelationGenerator, Vector, VectorSpace,
};

/// Small rationals `n/d` with `|n| ≤ 6`, `1 ≤ d ≤ 4`, zero about a quarter of
/// the time. In GF(p) for p ≥ 5 the denominators stay invertible.
pub fn scalar<F: Field>(rng: &mut ChaCha8Rng) -> F {
    if rng.gen_bool(0.25) {
        return F::zero();
    }
    let n: i64 = rng.gen_range(-6..=6);
    let d: i64 = rng.gen_range(1..=4);
    F::from_i64(n) / F::from_i64(d)
}

pub fn vector<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> Vector<F> {
    Vector::new((0..n).map(|_| scalar(rng)).collect())
}

pub fn matrix<F: Field>(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<F> {
    let data = (0..rows * cols).map(|_| scalar(rng)).collect();
    Matrix::new(rows, cols, data).expect("data has rows*cols entries")
}

pub fn map<F: Field>(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LinearMap<F> {
    LinearMap::from_matrix(matrix(rng, rows, cols))
}

pub fn invertible<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> LinearMap<F> {
    loop {
        let a = map(rng, n, n);
        if a.inverse().is_some() {
            return a;
        }
    }
}

/// `k` linearly independent vectors of length `n`.
pub fn independent<F: Field>(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<Vector<F>> {
    assert!(k <= n);
    loop {
        let family: Vec<Vector<F>> = (0..k).map(|_| vector(rng, n)).collect();
        let rows = family.iter().map(|v| v.coords().to_vec()).collect();
        if Matrix::from_rows(rows, n)
            .expect("rows have length n")
            .rank()
            == k
        {
            return family;
        }
    }
}

pub fn bilinear<F: Field>(
    rng: &mut ChaCha8Rng,
    x: &VectorSpace,
    y: &VectorSpace,
    z: usize,
) -> BilinearMap<F> {
    let codomain = VectorSpace::with_prefix(x.field(), z, "z");
    let coeffs = (0..z * x.dim() * y.dim()).map(|_| scalar(rng)).collect();
    BilinearMap::new(x.clone(), y.clone(), codomain, coeffs).expect("coefficients fit the shape")
}

/// One instance of the four relation families, cycling by `kind`.
pub fn generator<F: Field>(
    rng: &mut ChaCha8Rng,
    kind: usize,
    m: usize,
    n: usize,
) -> RelationGenerator<F> {
    match kind % 4 {
        0 => RelationGenerator::LeftAdditive {
            x1: vector(rng, m),
            x2: vector(rng, m),
            y: vector(rng, n),
        },
        1 => RelationGenerator::RightAdditive {
            x: vector(rng, m),
            y1: vector(rng, n),
            y2: vector(rng, n),
        },
        2 => RelationGenerator::LeftHomogeneous {
            alpha: scalar(rng),
            x: vector(rng, m),
            y: vector(rng, n),
        },
        _ => RelationGenerator::RightHomogeneous {
            alpha: scalar(rng),
            x: vector(rng, m),
            y: vector(rng, n),
        },
    }
}

/// Entries uniform in `[-3, 3]`, rounded to six decimals so reports print
/// short numbers.
pub fn real_rows(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..m).map(|_| real_vector(rng, n)).collect()
}

pub fn real_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| (rng.gen_range(-3.0..3.0f64) * 1e6).round() / 1e6)
        .collect()
}
