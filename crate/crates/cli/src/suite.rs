//! The randomized acceptance suite. Every criterion draws from its own
//! ChaCha stream of one seed, so a report is a pure function of the seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use tensoraxiom_core::tensor::{basis_pair_images, coefficient_product, family_rank};
use tensoraxiom_core::*;

use crate::oracle;
use crate::random;

pub const DEFAULT_SEED: u64 = 0x7e50_5eed;
pub const SEED_VAR: &str = "TENSORAXIOM_SEED";
const KEPT_FAILURES: usize = 10;

/// `TENSORAXIOM_SEED` if set, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_VAR} must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failure_count: usize,
    /// the first few failures
    pub failures: Vec<String>,
    pub details: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

struct Tally {
    cases: usize,
    failure_count: usize,
    failures: Vec<String>,
    details: BTreeMap<String, Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    /// Records a kernel error as a failed case.
    fn ok<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", context()));
                None
            }
        }
    }

    fn detail(&mut self, key: &str, value: Value) {
        self.details.insert(key.to_string(), value);
    }

    fn finish(self, id: u8, name: &str) -> CriterionReport {
        CriterionReport {
            id,
            name: name.to_string(),
            passed: self.failure_count == 0 && self.cases > 0,
            cases: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
            details: self.details,
        }
    }
}

fn stream(seed: u64, id: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

fn space<F: Field>(n: usize) -> VectorSpace {
    VectorSpace::over::<F>(n)
}

fn label<F: Field>() -> String {
    F::spec().to_string()
}

pub type Criterion = fn(u64) -> CriterionReport;

pub const CRITERIA: [(u8, &str, Criterion); 7] = [
    (1, "axiom suite", axiom_suite),
    (2, "relation soundness", relation_soundness),
    (3, "uniqueness up to isomorphism", uniqueness),
    (4, "basis and dimension", basis_dimension),
    (5, "transformation identities", transformation_identities),
    (6, "quotient universal property", quotient_property),
    (7, "crossnorm suite", crossnorm_suite),
];

pub fn run(seed: u64) -> SuiteReport {
    let criteria: Vec<CriterionReport> = CRITERIA.iter().map(|(_, _, f)| f(seed)).collect();
    SuiteReport {
        seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

// ---------------------------------------------------------------------------
// 1

pub fn axiom_suite(seed: u64) -> CriterionReport {
    let mut rng = stream(seed, 1);
    let mut t = Tally::new();
    axioms_over::<Rational>(&mut rng, &mut t);
    axioms_over::<Gf7>(&mut rng, &mut t);
    t.detail("dims", json!("1..=4 x 1..=4"));
    t.detail("probes_per_check", json!(20));
    t.finish(1, CRITERIA[0].1)
}

fn axioms_over<F: Field>(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for m in 1..=4 {
        for n in 1..=4 {
            let (x, y) = (space::<F>(m), space::<F>(n));
            let probes: Vec<BilinearMap<F>> = (0..20)
                .map(|_| {
                    let z = rng.gen_range(1..=3);
                    random::bilinear(rng, &x, &y, z)
                })
                .collect();
            let (Some(q), Some(d)) = (
                t.ok(QuotientRealization::new::<F>(&x, &y), || {
                    format!("{} quotient {m}x{n}", label::<F>())
                }),
                t.ok(DualRealization::new::<F>(&x, &y), || {
                    format!("{} dual {m}x{n}", label::<F>())
                }),
            ) else {
                continue;
            };
            for r in [&q as &dyn TensorRealization<F>, &d] {
                let report = check_axioms(r, &probes);
                t.check(report.passed() && report.span_rank == m * n, || {
                    format!(
                        "{} {} {m}x{n}: {:?}",
                        label::<F>(),
                        report.realization,
                        report.failures
                    )
                });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 2

pub fn relation_soundness(seed: u64) -> CriterionReport {
    let mut rng = stream(seed, 2);
    let mut t = Tally::new();
    let mut controls = 0;
    controls += relations_over::<Rational>(&mut rng, &mut t);
    controls += relations_over::<Gf7>(&mut rng, &mut t);
    t.detail("instances_per_field", json!(500));
    t.detail("nonzero_controls_detected", json!(controls));
    t.finish(2, CRITERIA[1].1)
}

/// Returns how many single carriers `e_(x,y)` with `x, y ≠ 0` were correctly
/// found outside the relation span.
fn relations_over<F: Field>(rng: &mut ChaCha8Rng, t: &mut Tally) -> usize {
    let mut controls = 0;
    for i in 0..500 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (x, y) = (space::<F>(m), space::<F>(n));
        let generator = random::generator::<F>(rng, i, m, n);
        let Some(q) = t.ok(QuotientRealization::new::<F>(&x, &y), || {
            "realization".into()
        }) else {
            continue;
        };
        let Some(f) = t.ok(generator.to_free(&x, &y), || format!("{generator:?}")) else {
            continue;
        };
        let Some(nf) = t.ok(q.normal_form(&f), || format!("{generator:?}")) else {
            continue;
        };
        let member = q.member_relation_span(&f).unwrap_or(false);
        t.check(nf.data().iter().all(|c| c.is_zero()) && member, || {
            format!(
                "{} generator {generator:?} has normal form {nf:?}",
                label::<F>()
            )
        });

        let (u, v) = (random::vector::<F>(rng, m), random::vector::<F>(rng, n));
        if !u.is_zero() && !v.is_zero() {
            let single = free_embed(&x, &y, &u, &v).expect("vectors fit the carriers");
            if q.member_relation_span(&single) == Ok(false) {
                controls += 1;
            } else {
                t.fail(format!(
                    "single carrier ({u:?}, {v:?}) landed in the relation span"
                ));
            }
        }
    }
    controls
}

// ---------------------------------------------------------------------------
// 3

pub fn uniqueness(_seed: u64) -> CriterionReport {
    let mut t = Tally::new();
    uniqueness_over::<Rational>(&mut t);
    uniqueness_over::<Gf7>(&mut t);
    t.detail("dims", json!("1..=4 x 1..=4"));
    t.finish(3, CRITERIA[2].1)
}

fn uniqueness_over<F: Field>(t: &mut Tally) {
    for m in 1..=4 {
        for n in 1..=4 {
            let (x, y) = (space::<F>(m), space::<F>(n));
            let ctx = || format!("{} {m}x{n}", label::<F>());
            let (Some(q), Some(d)) = (
                t.ok(QuotientRealization::new::<F>(&x, &y), ctx),
                t.ok(DualRealization::new::<F>(&x, &y), ctx),
            ) else {
                continue;
            };
            let (Some(fwd), Some(back)) = (
                t.ok(canonical_iso::<F>(&q, &d), ctx),
                t.ok(canonical_iso::<F>(&d, &q), ctx),
            ) else {
                continue;
            };
            let id = Matrix::<F>::identity(m * n);
            for (a, b, dir) in [(&fwd, &back, "q→d→q"), (&back, &fwd, "d→q→d")] {
                let composed = a.compose(b).map(|c| c.into_matrix());
                t.check(composed.as_ref() == Ok(&id), || {
                    format!("{} {dir} is not the identity", ctx())
                });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 4

pub fn basis_dimension(seed: u64) -> CriterionReport {
    let mut rng = stream(seed, 4);
    let mut t = Tally::new();
    let mut products = Vec::new();
    basis_over::<Rational>(&mut rng, &mut t, &mut products);
    basis_over::<Gf7>(&mut rng, &mut t, &mut products);
    t.detail("random_families_per_field", json!(50));
    t.detail("products_checked", json!(products.len()));
    let triple: Vec<&Value> = products.iter().filter(|p| p["kind"] == "triple").collect();
    t.detail("triple_products", json!(triple));
    t.finish(4, CRITERIA[3].1)
}

fn dim_check<F: Field>(
    t: &mut Tally,
    products: &mut Vec<Value>,
    kind: &str,
    r: &dyn TensorRealization<F>,
    expected: usize,
) {
    let dim = r.tensor_space().dim();
    let span = basis_pair_images(r).map(|g| g.rank());
    t.check(dim == expected && span.as_ref() == Ok(&expected), || {
        format!(
            "{} {kind}: dim {dim}, span {span:?}, expected {expected}",
            label::<F>()
        )
    });
    products.push(json!({"field": label::<F>(), "kind": kind, "dim": dim, "expected": expected}));
}

fn basis_over<F: Field>(rng: &mut ChaCha8Rng, t: &mut Tally, products: &mut Vec<Value>) {
    for _ in 0..50 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (k, l) = (rng.gen_range(1..=m), rng.gen_range(1..=n));
        let e = random::independent::<F>(rng, m, k);
        let d = random::independent::<F>(rng, n, l);
        let (x, y) = (space::<F>(m), space::<F>(n));
        let ctx = || format!("{} |E|={k} |D|={l}", label::<F>());
        let (Some(q), Some(dual)) = (
            t.ok(QuotientRealization::new::<F>(&x, &y), ctx),
            t.ok(DualRealization::new::<F>(&x, &y), ctx),
        ) else {
            continue;
        };
        for r in [&q as &dyn TensorRealization<F>, &dual] {
            if let Some(family) = t.ok(basis_tensors(r, &e, &d), ctx) {
                let rank = family_rank(&family);
                t.check(rank == k * l, || format!("{}: rank {rank}", ctx()));
            }
        }
        dim_check::<F>(t, products, "quotient", &q, m * n);
        dim_check::<F>(t, products, "dual", &dual, m * n);

        let mm = Subspace::span(&x, &e).expect("vectors fit X");
        let nn = Subspace::span(&y, &d).expect("vectors fit Y");
        if let Some(s) = t.ok(sub_tensor(&q, &mm, &nn), ctx) {
            dim_check::<F>(t, products, "sub", &s, k * l);
        }
    }
    let (a, b, c, w) = (space::<F>(2), space::<F>(1), space::<F>(1), space::<F>(3));
    if let Some(maps) = t.ok(MapSpaceRealization::new(&a, &b, &c, &w), || {
        "map space".into()
    }) {
        dim_check::<F>(t, products, "maps", &maps, 2 * 3);
    }
    let builder = |p: &VectorSpace, q: &VectorSpace| -> Box<dyn TensorRealization<F>> {
        Box::new(QuotientRealization::new::<F>(p, q).expect("factors share a field"))
    };
    let factors = [space::<F>(2), space::<F>(3), space::<F>(4)];
    if let Some(p) = t.ok(iterated_product::<F>(&factors, &builder), || {
        "triple".into()
    }) {
        dim_check::<F>(t, products, "triple", p.realization(), 24);
    }
}

// ---------------------------------------------------------------------------
// 5

pub fn transformation_identities(seed: u64) -> CriterionReport {
    let mut rng = stream(seed, 5);
    let mut t = Tally::new();
    kron_over::<Rational>(&mut rng, &mut t);
    kron_over::<Gf7>(&mut rng, &mut t);
    strictness_witness(&mut t);
    t.detail("draws_per_field", json!(100));
    t.finish(5, CRITERIA[4].1)
}

fn scaled<F: Field>(l: &LinearMap<F>, s: &F) -> LinearMap<F> {
    let m = l.matrix();
    let data = m.data().iter().map(|c| c.clone() * s.clone()).collect();
    LinearMap::from_matrix(Matrix::new(m.rows(), m.cols(), data).expect("same shape"))
}

fn sum<F: Field>(a: &LinearMap<F>, b: &LinearMap<F>) -> LinearMap<F> {
    LinearMap::from_matrix(a.matrix().add(b.matrix()).expect("same shape"))
}

fn kmat<F: Field>(a: &LinearMap<F>, b: &LinearMap<F>) -> Matrix<F> {
    kron(a, b).expect("same field").into_map().into_matrix()
}

fn kron_over<F: Field>(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let f = label::<F>();
    for draw in 0..100 {
        let dim = |rng: &mut ChaCha8Rng| rng.gen_range(1..=3usize);
        let (p, m, q, n) = (dim(rng), dim(rng), dim(rng), dim(rng));
        let (a1, a2) = (random::map::<F>(rng, p, m), random::map::<F>(rng, p, m));
        let (b1, b2) = (random::map::<F>(rng, q, n), random::map::<F>(rng, q, n));
        let (alpha, beta) = (random::scalar::<F>(rng), random::scalar::<F>(rng));
        let ctx = |id: &str| format!("{f} draw {draw} ({id}) dims p={p} m={m} q={q} n={n}");

        // (a)
        let ab = alpha.clone() * beta.clone();
        let base = scaled(&LinearMap::from_matrix(kmat(&a1, &b1)), &ab).into_matrix();
        t.check(
            kmat(&scaled(&a1, &alpha), &scaled(&b1, &beta)) == base
                && kmat(&scaled(&a1, &ab), &b1) == base
                && kmat(&a1, &scaled(&b1, &ab)) == base,
            || ctx("a"),
        );

        // (b)
        let four = [(&a1, &b1), (&a1, &b2), (&a2, &b1), (&a2, &b2)]
            .iter()
            .map(|(a, b)| kmat(a, b))
            .reduce(|x, y| x.add(&y).expect("same shape"))
            .expect("four terms");
        t.check(kmat(&sum(&a1, &a2), &sum(&b1, &b2)) == four, || ctx("b"));

        // (c)
        let (r, s) = (dim(rng), dim(rng));
        let c = random::map::<F>(rng, m, r);
        let d = random::map::<F>(rng, n, s);
        let lhs = kmat(
            &a1.compose(&c).expect("shapes"),
            &b1.compose(&d).expect("shapes"),
        );
        let rhs = kron(&a1, &b1)
            .and_then(|x| x.into_map().compose(kron(&c, &d)?.map()))
            .map(|x| x.into_matrix());
        t.check(rhs.as_ref() == Ok(&lhs), || ctx("c"));

        // (d)
        let (ia, ib) = (
            random::invertible::<F>(rng, m),
            random::invertible::<F>(rng, n),
        );
        let inv = LinearMap::from_matrix(kmat(&ia, &ib))
            .inverse()
            .map(|x| x.into_matrix());
        let expected = kmat(
            &ia.inverse().expect("invertible"),
            &ib.inverse().expect("invertible"),
        );
        t.check(inv.as_ref() == Some(&expected), || ctx("d"));

        // (e)
        let k = kron(&a1, &b1).expect("same field");
        let image = image_basis(k.map());
        let expected = QuotientRealization::new::<F>(a1.codomain(), b1.codomain()).and_then(|qr| {
            Ok(sub_tensor(&qr, &image_basis(&a1), &image_basis(&b1))?
                .span()
                .clone())
        });
        t.check(expected.as_ref() == Ok(&image), || ctx("e"));

        // the inclusion half of (f) on every draw
        let kernel = kernel_basis(k.map());
        let kernel_product = coefficient_product(&kernel_basis(&a1), &kernel_basis(&b1));
        t.check(
            kernel_product.is_subspace_of(&kernel) && kernel.dim() == m * n - a1.rank() * b1.rank(),
            || ctx("f inclusion"),
        );

        // (g)
        let lhs = shuffle_permutation::<F>(p, q)
            .compose(k.map())
            .map(|x| x.into_matrix());
        let rhs = kron(&b1, &a1)
            .and_then(|x| x.into_map().compose(&shuffle_permutation::<F>(m, n)))
            .map(|x| x.into_matrix());
        t.check(lhs.is_ok() && lhs == rhs, || ctx("g"));

        // (h)
        t.check(
            adjoint(k.map()).into_matrix() == kmat(&adjoint(&a1), &adjoint(&b1)),
            || ctx("h"),
        );
    }
}

/// `A = [[1,0],[0,0]]`, `B = I₂`: `N(A) ⊗ N(B) = 0` but `N(A ⊗ B)` is
/// 2-dimensional.
fn strictness_witness(t: &mut Tally) {
    let q = |x: i64| Rational::from_i64(x);
    let a = LinearMap::from_matrix(
        Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(0)]], 2).unwrap(),
    );
    let b = LinearMap::<Rational>::identity(&space::<Rational>(2));
    let product = coefficient_product(&kernel_basis(&a), &kernel_basis(&b));
    let k = kernel_basis(kron(&a, &b).unwrap().map());
    let gap = k.dim() - product.dim();
    let formula = 4 - a.rank() * b.rank();
    t.check(
        product.dim() == 0
            && k.dim() == 2
            && gap == 2
            && formula == 2
            && product.is_subspace_of(&k),
        || {
            format!(
                "witness: dim N(A)⊗N(B) = {}, dim N(A⊗B) = {}",
                product.dim(),
                k.dim()
            )
        },
    );
    t.detail(
        "strictness_witness",
        json!({"dim_kernel_product": product.dim(), "dim_kernel_of_kron": k.dim(), "gap": gap, "mn_minus_rank_product": formula}),
    );
}

// ---------------------------------------------------------------------------
// 6

pub fn quotient_property(seed: u64) -> CriterionReport {
    let mut rng = stream(seed, 6);
    let mut t = Tally::new();
    let mut rejected = 0;
    rejected += quotient_over::<Rational>(&mut rng, &mut t);
    rejected += quotient_over::<Gf7>(&mut rng, &mut t);
    t.detail("instances_per_field", json!(100));
    t.detail("kernel_condition_rejections", json!(rejected));
    t.finish(6, CRITERIA[5].1)
}

/// Returns how many subspaces outside `N(L)` were rejected.
fn quotient_over<F: Field>(rng: &mut ChaCha8Rng, t: &mut Tally) -> usize {
    let mut rejected = 0;
    for draw in 0..100 {
        let n = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=n.min(r));
        // rank at most k, so kernels are usually nontrivial
        let l = random::map::<F>(rng, r, k)
            .compose(&random::map::<F>(rng, k, n))
            .expect("shapes agree");
        let kernel = kernel_basis(&l);
        let picks: Vec<Vector<F>> = (0..rng.gen_range(0..=kernel.dim()))
            .map(|_| {
                kernel
                    .basis_vectors()
                    .iter()
                    .fold(Vector::zeros(n), |acc, v| {
                        acc.add(&v.scale(&random::scalar(rng)))
                    })
            })
            .collect();
        let m = Subspace::span(l.domain(), &picks).expect("kernel vectors fit");
        let ctx = || format!("{} draw {draw} n={n} r={r} dim M={}", label::<F>(), m.dim());
        let Some(qs) = t.ok(quotient(l.domain(), &m), ctx) else {
            continue;
        };
        let Some(lhat) = t.ok(factor_through_quotient(&l, &qs), ctx) else {
            continue;
        };
        let composed = lhat.compose(qs.projection()).map(|x| x.into_matrix());
        t.check(composed.as_ref() == Ok(l.matrix()), || {
            format!("{}: L ≠ L̂∘π", ctx())
        });
        t.check(
            qs.dim() == n - m.dim()
                && kernel_basis(&lhat).dim() == kernel.dim() - m.dim()
                && lhat.rank() == l.rank()
                && image_basis(&lhat) == image_basis(&l),
            || format!("{}: kernel/range dimensions", ctx()),
        );

        if !l.is_zero() {
            let outside = (0..n)
                .map(|i| Vector::<F>::unit(n, i))
                .find(|v| !kernel.contains(v));
            if let Some(v) = outside {
                let bad = Subspace::span(l.domain(), &[v]).expect("unit vector fits");
                let q2 = quotient(l.domain(), &bad).expect("same ambient");
                match factor_through_quotient(&l, &q2) {
                    Err(Error::KernelConditionViolated { .. }) => rejected += 1,
                    other => t.fail(format!("{}: M ⊄ N(L) gave {other:?}", ctx())),
                }
            }
        }
    }
    rejected
}

// ---------------------------------------------------------------------------
// 7

pub const SANDWICH_TOL: f64 = 1e-6;
pub const CROSS_TOL: f64 = 1e-6;
pub const INJECTIVE_ORACLE_TOL: f64 = 1e-4;
pub const PROJECTIVE_ORACLE_TOL: f64 = 1e-6;
/// closed form against its own dual certificate: equal up to summation order
pub const CERTIFICATE_MATCH_TOL: f64 = 1e-12;

pub fn crossnorm_suite(seed: u64) -> CriterionReport {
    let mut rng = stream(seed, 7);
    let mut t = Tally::new();
    let mut worst = BTreeMap::new();

    let mut sandwich_slack: f64 = f64::INFINITY;
    for px in Tag::ALL {
        for py in Tag::ALL {
            for i in 0..200 {
                let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let rows = random::real_rows(&mut rng, m, n);
                let ctx = || format!("({px},{py}) tensor {i} {rows:?}");
                let Some(tensor) = t.ok(RealTensor::from_rows(&rows, px, py), ctx) else {
                    continue;
                };
                let (Some(inj), Some(proj)) = (
                    t.ok(injective_norm(&tensor), ctx),
                    t.ok(projective_norm(&tensor), ctx),
                ) else {
                    continue;
                };
                sandwich_slack = sandwich_slack.min(proj.lo - inj.hi);
                t.check(inj.hi <= proj.lo + SANDWICH_TOL, || {
                    format!(
                        "{}: injective {} above projective {}",
                        ctx(),
                        inj.hi,
                        proj.lo
                    )
                });
            }
        }
    }
    worst.insert("sandwich_min_slack", sandwich_slack);

    let mut cross_err: f64 = 0.0;
    for px in Tag::ALL {
        for py in Tag::ALL {
            for _ in 0..50 {
                let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let (x, y) = (
                    random::real_vector(&mut rng, m),
                    random::real_vector(&mut rng, n),
                );
                let cross = px.norm(&x) * py.norm(&y);
                let ctx = || format!("({px},{py}) rank one {x:?} {y:?}");
                let Some(tensor) = t.ok(RealTensor::rank_one(&x, &y, px, py), ctx) else {
                    continue;
                };
                for (kind, r) in [
                    ("injective", injective_norm(&tensor)),
                    ("projective", projective_norm(&tensor)),
                ] {
                    let Some(r) = t.ok(r, ctx) else { continue };
                    let err = (r.lo - cross).abs().max((r.hi - cross).abs());
                    cross_err = cross_err.max(err);
                    t.check(err <= CROSS_TOL, || {
                        format!("{}: {kind} [{}, {}] vs {cross}", ctx(), r.lo, r.hi)
                    });
                }
            }
        }
    }
    worst.insert("rank_one_max_error", cross_err);

    let (mut inj_err, mut proj_err, mut proj_bracket): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..50 {
        let rows = random::real_rows(&mut rng, 2, 2);
        let table: oracle::Table = [[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]];

        let t22 = RealTensor::from_rows(&rows, Tag::Two, Tag::Two).expect("finite entries");
        if let Some(v) = t.ok(injective_norm(&t22), || format!("{rows:?}")) {
            let err = (v.hi - oracle::injective_22(&table)).abs();
            inj_err = inj_err.max(err);
            t.check(err <= INJECTIVE_ORACLE_TOL, || {
                format!("(2,2) injective {rows:?}: error {err}")
            });
        }

        let t11 = RealTensor::from_rows(&rows, Tag::One, Tag::One).expect("finite entries");
        if let Some(v) = t.ok(projective_norm(&t11), || format!("{rows:?}")) {
            let (lo, hi) = (
                oracle::projective_11_lower(&table),
                oracle::projective_11_upper(&table),
            );
            let err = (v.hi - lo).abs().max((v.hi - hi).abs());
            proj_err = proj_err.max(err);
            proj_bracket = proj_bracket.max(hi - lo);
            t.check(err <= PROJECTIVE_ORACLE_TOL && v.is_exact(), || {
                format!("(1,1) projective {rows:?}: {} vs search [{lo}, {hi}]", v.hi)
            });
        }
    }
    worst.insert("injective_22_oracle_max_error", inj_err);
    worst.insert("projective_11_oracle_max_error", proj_err);
    worst.insert("projective_11_search_max_bracket", proj_bracket);

    let mut cert_err: f64 = 0.0;
    for (px, py) in [(Tag::Two, Tag::Two), (Tag::One, Tag::One)] {
        for _ in 0..50 {
            let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let rows = random::real_rows(&mut rng, m, n);
            let tensor = RealTensor::from_rows(&rows, px, py).expect("finite entries");
            let ctx = || format!("({px},{py}) certificate {rows:?}");
            let (Some(v), Some(cert)) = (
                t.ok(projective_norm(&tensor), ctx),
                t.ok(projective_certificate(&tensor), ctx),
            ) else {
                continue;
            };
            let scale = 1.0 + v.hi.abs();
            let err = (cert.upper - v.hi).abs().max((cert.lower - v.hi).abs()) / scale;
            cert_err = cert_err.max(err);
            t.check(err <= CERTIFICATE_MATCH_TOL && v.is_exact(), || {
                format!(
                    "{}: value {} certificate [{}, {}]",
                    ctx(),
                    v.hi,
                    cert.lower,
                    cert.upper
                )
            });
        }
    }
    worst.insert("closed_form_certificate_max_relative_gap", cert_err);

    for (k, v) in worst {
        t.detail(k, json!(v));
    }
    t.finish(7, CRITERIA[6].1)
}
