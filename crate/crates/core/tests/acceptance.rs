//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Exact arithmetic throughout — every comparison is tolerance zero.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use opv::{
    cocycle_check, enumerate_proj, mobius_section, monomial_basis, parse_poly,
    section_basis, section_from_form, segre, transition, veronese, BundleDegree,
    FieldDescriptor, FieldValue, HomogPoly, LinearInduced, Matrix, NonvanishingCertificate,
    ProjPoint, RationalMap, RationalSection, SampleRng,
};

const Q: FieldDescriptor = FieldDescriptor::Rationals;

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime_field(p).unwrap()
}

fn qv(n: i64) -> FieldValue {
    FieldValue::from_integer(&Q, n)
}

fn qpoint(coords: &[i64]) -> ProjPoint {
    ProjPoint::normalize(&coords.iter().map(|&n| qv(n)).collect::<Vec<_>>()).unwrap()
}

fn homog(text: &str, nvars: usize, field: &FieldDescriptor) -> HomogPoly {
    parse_poly(text, nvars, field)
        .unwrap()
        .as_homogeneous()
        .unwrap()
        .clone()
}

fn pass(n: u32, name: &str) {
    println!("criterion {n:2} ({name}): PASS");
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Criterion 1: `section_basis(n, d)` has exactly C(n+d, n) elements and
/// they are linearly independent, for 0 ≤ n ≤ 4, 0 ≤ d ≤ 6, in under 1 s.
#[test]
fn criterion_01_section_space_dimension() {
    let start = Instant::now();
    for n in 0..=4usize {
        for d in 0..=6u32 {
            let basis = section_basis(Q, n, d).unwrap();
            let expected = binomial((n as u64) + (d as u64), n as u64);
            assert_eq!(basis.len() as u128, expected, "count at n={n}, d={d}");
            // coefficient matrix: one row per section, one column per monomial
            let monomials = monomial_basis(n + 1, d);
            let rows: Vec<Vec<FieldValue>> = basis
                .iter()
                .map(|s| {
                    monomials
                        .iter()
                        .map(|m| s.numerator().coefficient(m))
                        .collect()
                })
                .collect();
            let rank = Matrix::from_rows(rows).unwrap().rank();
            assert_eq!(rank, basis.len(), "independence at n={n}, d={d}");
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "took {elapsed:?}, budget 1 s"
    );
    pass(1, "section-space dimension");
}

/// The two trivialization laws, written out verbatim as independent oracles.
fn negative_degree_law(d: i64, j: usize, k: usize, x: &[FieldValue]) -> FieldValue {
    // a_k = (x_k / x_j)^d · a_j with a_j = 1
    x[k].try_div(&x[j]).unwrap().pow(d).unwrap()
}

fn positive_degree_law(d: i64, j: usize, k: usize, x: &[FieldValue]) -> FieldValue {
    // a_k = (x_j / x_k)^d · a_j with a_j = 1
    x[j].try_div(&x[k]).unwrap().pow(d).unwrap()
}

fn transition_points() -> (Vec<ProjPoint>, Vec<ProjPoint>) {
    let mut rng = SampleRng::new(0);
    let rational: Vec<ProjPoint> = (0..100).map(|_| rng.proj_point_all_charts(&Q, 3)).collect();
    let finite = enumerate_proj(&fp(5), 2).unwrap();
    (rational, finite)
}

/// Criterion 2: for e ∈ [−6, 6] the unified transition reproduces both
/// trivialization laws exactly, on 100 seeded ℚ points of ℙ³ and
/// exhaustively on ℙ²(𝔽_5), in under 5 s.
#[test]
fn criterion_02_transition_laws() {
    let start = Instant::now();
    let (rational, finite) = transition_points();
    let mut checked = 0u64;
    for points in [&rational, &finite] {
        for p in points.iter() {
            let n = p.dim();
            for j in 0..=n {
                for k in 0..=n {
                    if !p.in_chart(j) || !p.in_chart(k) {
                        continue;
                    }
                    let x = p.coords();
                    for d in 1..=6i64 {
                        let neg = transition(BundleDegree(-d), j, k, p).unwrap();
                        assert_eq!(neg, negative_degree_law(d, j, k, x));
                        let pos = transition(BundleDegree(d), j, k, p).unwrap();
                        assert_eq!(pos, positive_degree_law(d, j, k, x));
                        checked += 2;
                    }
                    assert!(transition(BundleDegree(0), j, k, p).unwrap().is_one());
                }
            }
        }
    }
    assert!(checked > 10_000, "expected a dense sweep, got {checked}");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(5),
        "took {elapsed:?}, budget 5 s"
    );
    pass(2, "transition laws");
}

/// Criterion 3: the cocycle identity holds for every chart triple on the
/// same point sets; a violation panics with the witness.
#[test]
fn criterion_03_cocycle_identity() {
    let (rational, finite) = transition_points();
    for points in [&rational, &finite] {
        for p in points.iter() {
            let n = p.dim();
            for e in -6..=6i64 {
                for i in 0..=n {
                    for j in 0..=n {
                        for k in 0..=n {
                            if !(p.in_chart(i) && p.in_chart(j) && p.in_chart(k)) {
                                continue;
                            }
                            assert!(
                                cocycle_check(BundleDegree(e), i, j, k, p).unwrap(),
                                "cocycle violation: e={e}, charts ({i},{j},{k}), witness {p}"
                            );
                        }
                    }
                }
            }
        }
    }
    pass(3, "cocycle identity");
}

fn mobius_family() -> Vec<RationalSection> {
    let families: [(u32, &str); 3] = [
        (1, "x0"),
        (2, "x0^2*x1"),
        (3, "x0^2*x1^3 + x0^3*x1^2"),
    ];
    families
        .iter()
        .map(|(k, p)| mobius_section(*k, homog(p, 2, &Q)).unwrap())
        .collect()
}

/// Criterion 4: every constructed section obeys the transformation law
/// `s_k = (x_j/x_k)^e s_j` on sampled overlap points, exactly.
#[test]
fn criterion_04_section_transformation_law() {
    let mut sections: Vec<RationalSection> = Vec::new();
    // monomial sections of degree ≤ 4 on ℙ¹ and ℙ²
    for n in 1..=2usize {
        for d in 0..=4u32 {
            for m in monomial_basis(n + 1, d) {
                let one = FieldValue::one(&Q);
                let form = HomogPoly::monomial_term(Q, n + 1, m, one).unwrap();
                sections.push(section_from_form(form).unwrap());
            }
        }
    }
    // the Möbius sections from the figure list, and their tensor powers
    for s in mobius_family() {
        for d in 1..=3u32 {
            sections.push(s.tensor_power(d).unwrap());
        }
        sections.push(s);
    }

    let mut rng = SampleRng::new(4);
    for s in &sections {
        let n = s.nvars() - 1;
        let points: Vec<ProjPoint> = (0..20).map(|_| rng.proj_point_all_charts(&Q, n)).collect();
        let e = s.degree();
        for p in &points {
            for j in 0..=n {
                for k in 0..=n {
                    let lhs = s.local_rep(k, p).unwrap();
                    let rhs = transition(e, j, k, p)
                        .unwrap()
                        .try_mul(&s.local_rep(j, p).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "law failed for {s} at {p}, charts {j}->{k}");
                }
            }
        }
    }
    pass(4, "section transformation law");
}

/// Criterion 5: normalize, regular evaluation, local representatives,
/// Veronese, Segre, and induced maps are all representative-independent
/// against 50 random rescalings per case.
#[test]
fn criterion_05_representative_independence() {
    let mut rng = SampleRng::new(5);
    let rescalings = |rng: &mut SampleRng| -> Vec<FieldValue> {
        (0..50).map(|_| rng.nonzero_field_value(&Q)).collect()
    };

    // normalize
    for _ in 0..5 {
        let p = rng.proj_point(&Q, 3);
        for lambda in rescalings(&mut rng) {
            let scaled: Vec<FieldValue> =
                p.coords().iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
            assert_eq!(ProjPoint::normalize(&scaled).unwrap(), p);
        }
    }

    // regular evaluation on ℙ² (equal degrees)
    let f = RationalMap::projective(
        homog("x0*x1 + x1*x2", 3, &Q),
        homog("x0^2 + x1^2 + x2^2", 3, &Q),
    )
    .unwrap();
    for _ in 0..5 {
        let p = rng.proj_point(&Q, 2);
        let value = f.eval_projective(&p).unwrap();
        for lambda in rescalings(&mut rng) {
            let w: Vec<FieldValue> =
                p.coords().iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
            let direct = f
                .numerator()
                .eval(&w)
                .unwrap()
                .try_div(&f.denominator().eval(&w).unwrap())
                .unwrap();
            assert_eq!(direct, value);
        }
    }

    // local representatives: a monomial section and a Möbius section
    let monomial = section_from_form(homog("x0^2*x1", 2, &Q)).unwrap();
    let mobius = mobius_section(1, homog("x0", 2, &Q)).unwrap();
    for s in [&monomial, &mobius] {
        for _ in 0..5 {
            let p = rng.proj_point_all_charts(&Q, 1);
            for j in 0..=1usize {
                let canonical = s.local_rep(j, &p).unwrap();
                for lambda in rescalings(&mut rng) {
                    let w: Vec<FieldValue> =
                        p.coords().iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
                    // s_j from the raw representative: (N/D)(w) / w_j^e
                    let h = s
                        .numerator()
                        .eval(&w)
                        .unwrap()
                        .try_div(&s.denominator().eval(&w).unwrap())
                        .unwrap();
                    let direct = h.try_mul(&w[j].pow(-s.degree().0).unwrap()).unwrap();
                    assert_eq!(direct, canonical);
                }
            }
        }
    }

    // Veronese images computed from raw representatives
    for d in 2..=3u32 {
        for _ in 0..5 {
            let p = rng.proj_point(&Q, 1);
            let image = veronese(d, &p).unwrap();
            for lambda in rescalings(&mut rng) {
                let w: Vec<FieldValue> =
                    p.coords().iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
                let coords: Vec<FieldValue> = monomial_basis(2, d)
                    .iter()
                    .map(|m| m.eval(&w).unwrap())
                    .collect();
                assert_eq!(ProjPoint::normalize(&coords).unwrap(), image);
            }
        }
    }

    // Segre images from independently rescaled factors
    for _ in 0..5 {
        let a = rng.proj_point(&Q, 1);
        let b = rng.proj_point(&Q, 2);
        let image = segre(&a, &b).unwrap();
        for lambda in rescalings(&mut rng) {
            let mu = rng.nonzero_field_value(&Q);
            let u: Vec<FieldValue> =
                a.coords().iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
            let v: Vec<FieldValue> = b.coords().iter().map(|c| c.try_mul(&mu).unwrap()).collect();
            let mut coords = Vec::new();
            for ui in &u {
                for vj in &v {
                    coords.push(ui.try_mul(vj).unwrap());
                }
            }
            assert_eq!(ProjPoint::normalize(&coords).unwrap(), image);
        }
    }

    // induced linear maps
    let a = LinearInduced::new(
        Matrix::from_rows(vec![
            vec![qv(1), qv(2), qv(0)],
            vec![qv(0), qv(1), qv(1)],
            vec![qv(3), qv(0), qv(1)],
        ])
        .unwrap(),
    );
    for _ in 0..5 {
        let p = rng.proj_point(&Q, 2);
        let image = a.apply(&p).unwrap();
        for lambda in rescalings(&mut rng) {
            let w: Vec<FieldValue> =
                p.coords().iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
            let aw = a.matrix().mul_vec(&w).unwrap();
            assert_eq!(ProjPoint::normalize(&aw).unwrap(), image);
        }
    }
    pass(5, "representative independence");
}

/// Criterion 6: non-closed-field phenomena. (a) the Möbius section is a
/// nonzero certified global section of O(−1) over ℚ; (b) a nonconstant
/// regular projective function; (c) 1/(1+x²) is regular on all of ℚ.
#[test]
fn criterion_06_non_closed_field_phenomena() {
    // (a) nonzero global section of O(−1) with a certified denominator
    let s = mobius_section(1, homog("x0", 2, &Q)).unwrap();
    assert_eq!(s.degree(), BundleDegree(-1));
    assert_eq!(
        s.certificate(),
        NonvanishingCertificate::PositiveDiagonalEvenForm
    );
    let value = s.sigma_hat_vector(&qpoint(&[1, 1])).unwrap();
    assert!(value.iter().any(|c| !c.is_zero()), "section vanishes at [1:1]");
    assert_eq!(value, vec![
        FieldValue::rational(1, 2).unwrap(),
        FieldValue::rational(1, 2).unwrap()
    ]);

    // (b) a₀a₁/(a₀²+a₁²) attains both 0 and 1/2
    let f = RationalMap::projective(homog("x0*x1", 2, &Q), homog("x0^2 + x1^2", 2, &Q)).unwrap();
    let v0 = f.eval_projective(&qpoint(&[1, 0])).unwrap();
    let v1 = f.eval_projective(&qpoint(&[1, 1])).unwrap();
    assert!(v0.is_zero());
    assert_eq!(v1, FieldValue::rational(1, 2).unwrap());
    assert_ne!(v0, v1, "function is constant");

    // (c) 1/(1+x²) evaluates at 20 seeded rationals
    let g = RationalMap::affine(
        parse_poly("1", 1, &Q).unwrap(),
        parse_poly("1 + x0^2", 1, &Q).unwrap(),
    )
    .unwrap();
    let mut rng = SampleRng::new(6);
    for _ in 0..20 {
        let x = rng.field_value(&Q);
        let value = g.eval_affine(std::slice::from_ref(&x)).unwrap();
        // cross-check: value·(1 + x²) = 1
        let denom = x.try_mul(&x).unwrap().try_add(&qv(1)).unwrap();
        assert!(value.try_mul(&denom).unwrap().is_one());
    }
    pass(6, "non-closed-field phenomena");
}

/// Criterion 7: Veronese catalecticant relations over ℙ¹(𝔽_7) for d = 2, 3,
/// and vanishing Segre minors over ℙ¹(𝔽_5) × ℙ¹(𝔽_5), exhaustively.
#[test]
fn criterion_07_embedding_relations() {
    for d in 2..=3u32 {
        for p in enumerate_proj(&fp(7), 1).unwrap() {
            let y = veronese(d, &p).unwrap();
            let y = y.coords();
            for alpha in 0..=d as usize {
                for beta in 0..=d as usize {
                    for gamma in 0..=d as usize {
                        for delta in 0..=d as usize {
                            if alpha + beta == gamma + delta {
                                assert_eq!(
                                    y[alpha].try_mul(&y[beta]).unwrap(),
                                    y[gamma].try_mul(&y[delta]).unwrap(),
                                    "catalecticant failed at {p}, d={d}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    let points = enumerate_proj(&fp(5), 1).unwrap();
    for a in &points {
        for b in &points {
            let z = segre(a, b).unwrap();
            let z = z.coords();
            // z is the 2×2 matrix [z0 z1; z2 z3]; its determinant vanishes
            assert_eq!(
                z[0].try_mul(&z[3]).unwrap(),
                z[1].try_mul(&z[2]).unwrap(),
                "Segre minor failed at ({a}, {b})"
            );
        }
    }
    pass(7, "embedding relations");
}

/// Criterion 8: the tautological, hyperplane, and Euler fiber sequences are
/// exact with the stated dimensions at 100 seeded ℚ points of ℙ³ and at
/// every point of ℙ²(𝔽_3).
#[test]
fn criterion_08_exact_sequences() {
    let mut rng = SampleRng::new(8);
    let mut points: Vec<ProjPoint> = (0..100).map(|_| rng.proj_point(&Q, 3)).collect();
    points.extend(enumerate_proj(&fp(3), 2).unwrap());
    for p in &points {
        let n = p.dim();
        let taut = opv::taut_sequence_fiber(p);
        assert_eq!(taut.dims(), (1, n + 1, n));
        assert!(taut.is_exact(), "tautological sequence fails at {p}");

        let hyper = opv::hyperplane_sequence_fiber(p);
        assert_eq!(hyper.dims(), (n, n + 1, 1));
        assert!(hyper.is_exact(), "hyperplane sequence fails at {p}");

        let euler = opv::euler_sequence_fiber(p);
        assert_eq!(euler.dims(), (1, n + 1, n));
        assert!(euler.is_exact(), "Euler sequence fails at {p}");
    }
    pass(8, "exact sequences");
}

/// Criterion 9: the tangent/O(2) comparison on ℙ¹ finds the single constant
/// λ = −1 over ℚ (50 seeded points) and over 𝔽_5 (the whole double overlap).
#[test]
fn criterion_09_p1_tangent_isomorphism() {
    let mut rng = SampleRng::new(9);
    let samples: Vec<ProjPoint> = (0..50).map(|_| rng.proj_point_all_charts(&Q, 1)).collect();
    let lambda = opv::p1_tangent_iso_check(&samples).unwrap();
    assert_eq!(lambda, qv(-1));

    let f5 = fp(5);
    let overlap_points: Vec<ProjPoint> = enumerate_proj(&f5, 1)
        .unwrap()
        .into_iter()
        .filter(|p| p.in_chart(0) && p.in_chart(1))
        .collect();
    assert_eq!(overlap_points.len(), 4);
    let lambda5 = opv::p1_tangent_iso_check(&overlap_points).unwrap();
    assert_eq!(lambda5, FieldValue::from_integer(&f5, -1));
    pass(9, "Tℙ¹ ≅ O(2)");
}

/// Criterion 10: projective enumeration matches the brute-force dedup of all
/// nonzero vectors for p ∈ {2,3,5,7}, n ∈ {1,2}, in under 1 s.
#[test]
fn criterion_10_enumeration_sanity() {
    let start = Instant::now();
    for p in [2u64, 3, 5, 7] {
        let field = fp(p);
        for n in 1..=2usize {
            let enumerated = enumerate_proj(&field, n).unwrap();
            let as_set: HashSet<ProjPoint> = enumerated.iter().cloned().collect();
            assert_eq!(as_set.len(), enumerated.len(), "duplicates for p={p}, n={n}");

            // brute force: normalize every nonzero vector of F^(n+1)
            let mut brute: HashSet<ProjPoint> = HashSet::new();
            let total = p.pow(n as u32 + 1);
            for idx in 1..total {
                let mut digits = Vec::with_capacity(n + 1);
                let mut rest = idx;
                for _ in 0..=n {
                    digits.push(FieldValue::from_integer(&field, (rest % p) as i64));
                    rest /= p;
                }
                brute.insert(ProjPoint::normalize(&digits).unwrap());
            }
            assert_eq!(as_set, brute, "point sets differ for p={p}, n={n}");
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "took {elapsed:?}, budget 1 s"
    );
    pass(10, "enumeration sanity");
}
