//! Brute-force references for 2×2 crossnorm values. Neither uses a
//! decomposition or a solver: one samples the unit circles, the other searches
//! explicit representations and explicit dual forms.

use std::f64::consts::PI;

pub type Table = [[f64; 2]; 2];

fn bilinear_value(c: &Table, theta: f64, phi: f64) -> f64 {
    let (f, g) = ([theta.cos(), theta.sin()], [phi.cos(), phi.sin()]);
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            s += f[i] * c[i][j] * g[j];
        }
    }
    s.abs()
}

/// `sup |fᵀ C g|` over Euclidean unit vectors, by a dense grid on both
/// circles followed by shrinking local grids around the best point.
pub fn injective_22(c: &Table) -> f64 {
    const GRID: usize = 720;
    let step = PI / GRID as f64;
    let (mut best, mut at) = (0.0, (0.0, 0.0));
    for a in 0..GRID {
        for b in 0..GRID {
            let (t, p) = (a as f64 * step, b as f64 * step);
            let v = bilinear_value(c, t, p);
            if v > best {
                best = v;
                at = (t, p);
            }
        }
    }
    let mut radius = 2.0 * step;
    for _ in 0..12 {
        let (t0, p0) = at;
        for a in -10..=10 {
            for b in -10..=10 {
                let (t, p) = (t0 + radius * a as f64 / 10.0, p0 + radius * b as f64 / 10.0);
                let v = bilinear_value(c, t, p);
                if v > best {
                    best = v;
                    at = (t, p);
                }
            }
        }
        radius /= 4.0;
    }
    best
}

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Primitive integer directions in `[-4, 4]²`, one per line through 0.
fn direction_pool() -> Vec<[f64; 2]> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut pool = Vec::new();
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            let canonical = a > 0 || (a == 0 && b > 0);
            if canonical && gcd(a, b) == 1 {
                let n = (a.abs() + b.abs()) as f64;
                pool.push([a as f64 / n, b as f64 / n]);
            }
        }
    }
    pool
}

/// Cheapest cost `Σ ‖xₖ‖₁ ‖yₖ‖₁` over the representations searched:
/// every two-term `C = x₁y₁ᵀ + x₂y₂ᵀ` with one side drawn from the direction
/// pool, and the four-term basis-pair expansion.
pub fn projective_11_upper(c: &Table) -> f64 {
    let pool = direction_pool();
    let mut best = l1(&[c[0][0], c[0][1], c[1][0], c[1][1]]);
    for (k, u) in pool.iter().enumerate() {
        for w in &pool[k + 1..] {
            let det = u[0] * w[1] - u[1] * w[0];
            if det.abs() < 1e-12 {
                continue;
            }
            // fixed y-side: C = X Yᵀ with Y = [u w], so X = C Y⁻ᵀ
            let yinv_t = [[w[1] / det, -u[1] / det], [-w[0] / det, u[0] / det]];
            let x: Vec<[f64; 2]> = (0..2)
                .map(|k| {
                    [
                        c[0][0] * yinv_t[0][k] + c[0][1] * yinv_t[1][k],
                        c[1][0] * yinv_t[0][k] + c[1][1] * yinv_t[1][k],
                    ]
                })
                .collect();
            best = best.min(l1(&x[0]) * l1(u) + l1(&x[1]) * l1(w));
            // fixed x-side: C = X Yᵀ with X = [u w], so Yᵀ = X⁻¹ C
            let xinv = [[w[1] / det, -w[0] / det], [-u[1] / det, u[0] / det]];
            let y: Vec<[f64; 2]> = (0..2)
                .map(|k| {
                    [
                        xinv[k][0] * c[0][0] + xinv[k][1] * c[1][0],
                        xinv[k][0] * c[0][1] + xinv[k][1] * c[1][1],
                    ]
                })
                .collect();
            best = best.min(l1(u) * l1(&y[0]) + l1(w) * l1(&y[1]));
        }
    }
    best
}

/// `max ⟨S, C⟩ / ‖S‖` over sign forms `S ∈ {±1}^{2×2}`, where the norm of a
/// form on `ℓ1 × ℓ1` is its value on the extreme points `±eᵢ, ±eⱼ`.
pub fn projective_11_lower(c: &Table) -> f64 {
    let mut best: f64 = 0.0;
    for bits in 0u32..16 {
        let s = |i: usize, j: usize| {
            if bits >> (2 * i + j) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let mut pairing = 0.0;
        let mut norm: f64 = 0.0;
        for (i, row) in c.iter().enumerate() {
            for (j, cij) in row.iter().enumerate() {
                pairing += s(i, j) * cij;
                norm = norm.max(s(i, j).abs());
            }
        }
        best = best.max(pairing / norm);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_values() {
        let id = [[1.0, 0.0], [0.0, 1.0]];
        assert!((injective_22(&id) - 1.0).abs() < 1e-9);
        assert!((projective_11_upper(&id) - 2.0).abs() < 1e-12);
        assert!((projective_11_lower(&id) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_injective() {
        // [[3,4],[6,8]] = (1,2)ᵀ(3,4): ‖(1,2)‖·‖(3,4)‖ = √5·5
        let c = [[3.0, 4.0], [6.0, 8.0]];
        assert!((injective_22(&c) - 5.0 * 5f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn pool_is_symmetric_free() {
        let pool = direction_pool();
        for (k, u) in pool.iter().enumerate() {
            assert!((l1(u) - 1.0).abs() < 1e-12);
            for w in &pool[k + 1..] {
                assert!((u[0] * w[1] - u[1] * w[0]).abs() > 1e-12);
            }
        }
    }
}
