//! Acceptance criteria. Each criterion prints one line:
//! `PASS|FAIL  <id> <name>: <detail> [<elapsed> / <limit>]`.
//!
//! Runtime limits assume the optimized `test` profile of the workspace;
//! arithmetic checks are exact.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational as Rational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};
use torickit::citations::two_point_citations;
use torickit::curve::{
    avoidance_verify, evaluate_curve, interpolate_avoiding, points_equal, AvoidanceReport,
    CoxCurve, Ideal, PointSpec, Verdict,
};
use torickit::divisor::{
    canonical_divisor, find_ample_divisor, ft_certificate, is_ample, klt_check, FtCertificate,
    InvariantDivisor,
};
use torickit::document::{emit, parse_as, DocumentKind};
use torickit::fan::examples::*;
use torickit::fan::{
    cone_multiplicity, is_complete, is_simplicial, list_orbits, singular_cones, Cone,
    OrbitDescriptor,
};
use torickit::isogeny::{
    compose, orbit_bijection, pullback_fan, reverse_isogeny, smoothing_isogeny, Isogeny,
    IsogenyChain,
};
use torickit::lattice::{exponent_bound, integer_kernel, IntegerMatrix, SublatticeBasis};
use torickit::numbers::{ivec, rat};
use torickit::plan::{
    check_plan, default_params, main_lemma_plan, main_theorem_plan, AvoidancePlan, CurveOptions,
    LocusSpec, TheoremPlan,
};
use torickit::refine::{qfactorialize, resolve_to_smooth, Refinement};
use torickit::Fan;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, detail: String) -> Outcome {
    match failures.first() {
        None => Outcome { ok: true, detail },
        Some(f) => Outcome {
            ok: false,
            detail: format!("{detail}; {} failure(s), first: {f}", failures.len()),
        },
    }
}

fn corpus() -> Vec<(&'static str, Fan)> {
    let resolved_cube = resolve_to_smooth(&qfactorialize(&cube()).unwrap().fan)
        .unwrap()
        .fan;
    vec![
        ("P1", projective_line()),
        ("P2", projective_plane()),
        ("P1xP1", p1xp1()),
        ("P(1,2,1)", p121()),
        ("F1", hirzebruch(1)),
        ("F2", hirzebruch(2)),
        ("F3", hirzebruch(3)),
        ("P3", projective_space(3)),
        ("P1^3", p1_cubed()),
        ("P(1,1,2,2)", weighted(&[1, 1, 2, 2])),
        ("P(1,2,3)", weighted(&[1, 2, 3])),
        ("resolved cube", resolved_cube),
    ]
}

fn weighted(w: &[i64]) -> Fan {
    let w: Vec<BigInt> = w.iter().map(|&x| x.into()).collect();
    torickit::curve::weighted_projective_fan(&w).unwrap()
}

fn ft_suite() -> Outcome {
    let mut failures = Vec::new();
    let fans = corpus();
    for (name, fan) in &fans {
        let check = || -> torickit::Result<Option<String>> {
            let l = find_ample_divisor(fan)?;
            let cert: FtCertificate = ft_certificate(fan, &l)?;
            let zero = Rational::zero();
            let one = Rational::one();
            if !(cert.epsilon > zero && cert.epsilon < one) {
                return Ok(Some(format!("epsilon {}", cert.epsilon)));
            }
            if !cert
                .boundary
                .coefficients
                .iter()
                .all(|c| *c > zero && *c < one)
            {
                return Ok(Some("boundary coefficient outside (0,1)".into()));
            }
            if !klt_check(fan, &cert.boundary)?.klt {
                return Ok(Some("pair is not klt".into()));
            }
            let anti = canonical_divisor(fan).add(&cert.boundary).neg();
            if !is_ample(fan, &anti)? {
                return Ok(Some("-(K + boundary) is not ample".into()));
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(f)) => failures.push(format!("{name}: {f}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(failures, format!("{} fans", fans.len()))
}

fn random_sublattice(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<i64>>, i64) {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-4..=4)).collect())
            .collect();
        let d = det(&rows).abs();
        if (1..=12).contains(&d) {
            return (rows, d);
        }
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// `v ∈ span_Z(rows)` by Cramer's rule.
fn in_lattice(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let d = det(rows);
    (0..rows.len()).all(|i| {
        let mut m = rows.to_vec();
        m[i] = v.to_vec();
        det(&m) % d == 0
    })
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| ivec(r)).collect()
}

fn same_dims(pairs: &[(OrbitDescriptor, OrbitDescriptor)]) -> bool {
    pairs
        .iter()
        .all(|(a, b)| a.orbit_dim == b.orbit_dim && a.cone == b.cone)
}

fn isogeny_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let trials = 120;
    for t in 0..trials {
        let n = 2 + t % 2;
        let fan = if n == 2 {
            projective_plane()
        } else {
            projective_space(3)
        };
        let (rows, index) = random_sublattice(&mut rng, n);
        let lattice = SublatticeBasis::from_rows(n, &to_big(&rows)).unwrap();
        let iso = Isogeny::over_standard(fan.clone(), lattice.clone()).unwrap();
        if iso.degree != BigInt::from(index) {
            failures.push(format!("{rows:?}: degree {} vs |det| {index}", iso.degree));
            continue;
        }
        let brute = (1..=index)
            .find(|&r| {
                (0..n).all(|i| {
                    let mut e = vec![0; n];
                    e[i] = r;
                    in_lattice(&rows, &e)
                })
            })
            .unwrap();
        let rev = reverse_isogeny(&iso);
        let r = iso.exponent();
        if r != BigInt::from(brute) || exponent_bound(&lattice).unwrap() != r {
            failures.push(format!("{rows:?}: exponent {r}, brute force {brute}"));
        }
        let chain = IsogenyChain::new(vec![iso.clone(), rev.clone()]).unwrap();
        let composite = compose(&chain).unwrap();
        let expected = num_traits::pow(BigInt::from(brute), n);
        if composite.degree != &iso.degree * &rev.degree || composite.degree != expected {
            failures.push(format!("{rows:?}: composite degree {}", composite.degree));
        }
        if !same_dims(&orbit_bijection(&iso)) || !same_dims(&orbit_bijection(&rev)) {
            failures.push(format!("{rows:?}: orbit bijection"));
        }
    }
    for (name, fan) in corpus() {
        let n = fan.rank;
        let lattice = SublatticeBasis::new(n, IntegerMatrix::identity(n))
            .unwrap()
            .scaled(&BigInt::from(2));
        let iso = Isogeny::over_standard(fan.clone(), lattice).unwrap();
        if !same_dims(&orbit_bijection(&iso))
            || orbit_bijection(&iso).len() != list_orbits(&fan).len()
        {
            failures.push(format!("{name}: orbit bijection"));
        }
    }
    outcome(
        failures,
        format!("{trials} random sublattices, index <= 12"),
    )
}

fn smoothing_lemma() -> Outcome {
    let mut failures = Vec::new();
    let mut cones = 0;
    for (name, fan) in corpus() {
        let fan = if is_simplicial(&fan) {
            fan
        } else {
            qfactorialize(&fan).unwrap().fan
        };
        for sigma in singular_cones(&fan) {
            cones += 1;
            match smoothing_isogeny(&fan, &sigma) {
                Ok(iso) if pullback_fan(&iso).is_smooth_at(&sigma) => {}
                Ok(_) => failures.push(format!("{name} {sigma:?}: still singular")),
                Err(e) => failures.push(format!("{name} {sigma:?}: {e}")),
            }
        }
    }
    let conic = smoothing_isogeny(&p121(), &[0, 2]).unwrap();
    if conic.degree != BigInt::from(2) {
        failures.push(format!("P(1,2,1) chart: degree {}", conic.degree));
    }
    outcome(
        failures,
        format!("{cones} singular cones; P(1,2,1) degree {}", conic.degree),
    )
}

/// Rays of the minimal resolution of `⟨(1,0),(a,k)⟩` from the continued
/// fraction of `k/(k-a)`.
fn hirzebruch_jung(a: i64, k: i64) -> Vec<Vec<i64>> {
    let (mut p, mut q) = (k, k - a);
    let mut b = Vec::new();
    while q != 0 {
        let c = (p + q - 1) / q;
        b.push(c);
        (p, q) = (q, c * q - p);
    }
    let mut u = vec![vec![1, 0], vec![1, 1]];
    for &bi in &b[..b.len() - 1] {
        let (x, y) = (&u[u.len() - 1], &u[u.len() - 2]);
        u.push(vec![bi * x[0] - y[0], bi * x[1] - y[1]]);
    }
    u[1..].to_vec()
}

fn resolution_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut cones = 0;
    for k in 2..=12i64 {
        for a in 1..k {
            if num_integer::gcd(a, k) != 1 {
                continue;
            }
            cones += 1;
            let fan = Fan::from_i64(2, &[&[1, 0], &[a, k]], &[&[0, 1]]);
            let r = match resolve_to_smooth(&fan) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("({a},{k}): {e}"));
                    continue;
                }
            };
            let mut got: Vec<Vec<BigInt>> =
                r.steps.iter().filter_map(|s| s.new_ray.clone()).collect();
            let mut want = to_big(&hirzebruch_jung(a, k));
            got.sort();
            want.sort();
            let inside = r.fan.rays.iter().all(|v| {
                let x = &v[0] * BigInt::from(k) - &v[1] * BigInt::from(a);
                !x.is_negative() && !v[1].is_negative()
            });
            let chain = r.fan.max_cones.len() + 1 == r.fan.rays.len();
            if got != want || !r.fan.is_smooth() || !inside || !chain {
                failures.push(format!("({a},{k}): rays {got:?}, oracle {want:?}"));
            }
        }
    }
    for (name, fan) in corpus() {
        let q = qfactorialize(&fan).unwrap();
        if q.fan.rays != fan.rays || !is_simplicial(&q.fan) {
            failures.push(format!("{name}: q-factorialization"));
        }
        match resolve_to_smooth(&q.fan) {
            Ok(r) if r.fan.is_smooth() && is_complete(&r.fan).unwrap() => {}
            Ok(_) => failures.push(format!("{name}: resolution not smooth and complete")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let cube_q = qfactorialize(&cube()).unwrap();
    let (before, after) = (cube().max_cones.len(), cube_q.fan.max_cones.len());
    if (before, after) != (6, 12) || cube_q.fan.rays != cube().rays {
        failures.push(format!("cube: {before} -> {after} cones"));
    }
    outcome(
        failures,
        format!("{cones} cones against the continued-fraction oracle; cube {before} -> {after}"),
    )
}

/// Lattice points of the half-open parallelepiped spanned by `gens`,
/// counted inside the bounding box.
fn brute_force_multiplicity(gens: &[Vec<i64>], n: usize) -> i64 {
    let k = gens.len();
    let cols = (0..n)
        .combinations(k)
        .find(|s| det(&minor(gens, s)) != 0)
        .unwrap();
    let d = det(&minor(gens, &cols));
    let lo: Vec<i64> = (0..n)
        .map(|j| gens.iter().map(|g| g[j].min(0)).sum())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|j| gens.iter().map(|g| g[j].max(0)).sum())
        .collect();
    let mut count = 0;
    let mut p = lo.clone();
    loop {
        let lambda_num: Vec<i64> = (0..k)
            .map(|i| {
                let mut g = gens.to_vec();
                g[i] = p.clone();
                det(&minor(&g, &cols))
            })
            .collect();
        let inside = lambda_num.iter().all(|&l| {
            let (l, d) = if d < 0 { (-l, -d) } else { (l, d) };
            l >= 0 && l < d
        });
        if inside {
            // the point must lie in the span, not just project into it
            let q: Vec<i64> = (0..n)
                .map(|j| (0..k).map(|i| lambda_num[i] * gens[i][j]).sum())
                .collect();
            if q.iter().zip(&p).all(|(a, b)| *a == b * d) {
                count += 1;
            }
        }
        let mut j = 0;
        while j < n {
            if p[j] < hi[j] {
                p[j] += 1;
                break;
            }
            p[j] = lo[j];
            j += 1;
        }
        if j == n {
            return count;
        }
    }
}

fn minor(rows: &[Vec<i64>], cols: &[usize]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| cols.iter().map(|&c| r[c]).collect())
        .collect()
}

fn multiplicity_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < 500 {
        let n = rng.random_range(1..=3usize);
        let k = rng.random_range(1..=n);
        let gens: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.random_range(-5..=5)).collect())
            .collect();
        let Ok(cone) = Cone::new(n, to_big(&gens)) else {
            continue;
        };
        if !cone.is_simplicial() {
            continue;
        }
        done += 1;
        let m = cone_multiplicity(&cone).unwrap();
        let brute = brute_force_multiplicity(&gens, n);
        if m.to_i64() != Some(brute) {
            failures.push(format!("{gens:?}: {m} vs {brute}"));
        }
    }
    outcome(failures, format!("{done} random simplicial cones"))
}

fn point_ideal(name: &str, q: &[i64]) -> Ideal {
    let j = q.iter().position(|&x| x != 0).unwrap();
    let rows: Vec<Vec<Rational>> = (0..q.len())
        .filter(|&i| i != j)
        .map(|i| {
            let mut row = vec![rat(0, 1); q.len()];
            row[i] = rat(q[j], 1);
            row[j] = rat(-q[i], 1);
            row
        })
        .collect();
    Ideal::linear(name, &rows)
}

fn line_ideal(name: &str, a: &[i64], b: &[i64]) -> Option<Ideal> {
    let m = IntegerMatrix::from_rows(&to_big(&[a.to_vec(), b.to_vec()]), a.len()).ok()?;
    let kernel = integer_kernel(&m);
    (kernel.len() == a.len() - 2).then(|| {
        let rows: Vec<Vec<Rational>> = kernel
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        Ideal::linear(name, &rows)
    })
}

fn vanishes(ideal: &Ideal, p: &[i64]) -> bool {
    ideal.generators.iter().all(|g| {
        g.iter()
            .map(|t| {
                let (v, _) = t.monomial.iter().next().unwrap();
                let i: usize = v[1..].parse().unwrap();
                &t.coeff * Rational::from_integer(p[i].into())
            })
            .sum::<Rational>()
            .is_zero()
    })
}

fn random_projective_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let p: Vec<i64> = (0..=n).map(|_| rng.random_range(-3..=3)).collect();
        if p.iter().any(|&x| x != 0) {
            return p;
        }
    }
}

fn curve_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut exhausted = 0;
    let instances = 50;
    for inst in 0..instances {
        let n = 2 + inst % 2;
        let fan = projective_space(n);
        let s = if n == 3 && rng.random_bool(0.5) {
            loop {
                let a = random_projective_point(&mut rng, n);
                let b = random_projective_point(&mut rng, n);
                if let Some(l) = line_ideal("S", &a, &b) {
                    break l;
                }
            }
        } else {
            point_ideal("S", &random_projective_point(&mut rng, n))
        };
        let r = rng.random_range(1..=3usize);
        let mut points: Vec<PointSpec> = Vec::new();
        while points.len() < r {
            let p = random_projective_point(&mut rng, n);
            let spec = PointSpec::from_ints(&p);
            if vanishes(&s, &p) || points.iter().any(|q| points_equal(&fan, q, &spec).unwrap()) {
                continue;
            }
            points.push(spec);
        }
        let params = default_params(r);
        let seed = 1000 + inst as u64;
        match interpolate_avoiding(&fan, &points, &params, std::slice::from_ref(&s), r, seed) {
            Ok((curve, report)) => {
                let through = params.iter().zip(&points).all(|(t, p)| {
                    evaluate_curve(&curve, t)
                        .and_then(|q| points_equal(&fan, &q, p))
                        .unwrap_or(false)
                });
                let allowed: Vec<_> = params.iter().cloned().zip(points.iter().cloned()).collect();
                let again: AvoidanceReport =
                    avoidance_verify(&curve, std::slice::from_ref(&s), &allowed).unwrap();
                if !through
                    || report.verdict != Verdict::Disjoint
                    || again.verdict != Verdict::Disjoint
                {
                    failures.push(format!(
                        "instance {inst}: through {through}, verdict {:?}",
                        again.verdict
                    ));
                }
            }
            Err(torickit::Error::AvoidanceRetryExceeded { .. }) => exhausted += 1,
            Err(e) => failures.push(format!("instance {inst}: {e}")),
        }
    }
    if exhausted > instances / 50 {
        failures.push(format!("{exhausted} instances exhausted the retry budget"));
    }
    outcome(
        failures,
        format!("{instances} instances on P2/P3, {exhausted} exhausted the budget"),
    )
}

fn round_trip<T>(kind: DocumentKind, value: &T) -> Result<(), String>
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let text = emit(kind, value).map_err(|e| e.to_string())?;
    let back: T = parse_as(&text, kind).map_err(|e| e.to_string())?;
    if &back != value {
        return Err(format!("{kind}: value changed"));
    }
    if emit(kind, &back).map_err(|e| e.to_string())? != text {
        return Err(format!("{kind}: text changed"));
    }
    Ok(())
}

fn plan_determinism() -> Outcome {
    let mut failures = Vec::new();
    let fan = p121();
    let (p, q) = (
        PointSpec::from_ints(&[1, 1, 1]),
        PointSpec::from_ints(&[1, 2, 3]),
    );
    let build = || main_lemma_plan(&fan, &p, &q, &LocusSpec::InvariantLocus).unwrap();
    let plan: AvoidancePlan = build();
    let text = emit(DocumentKind::Plan, &plan).unwrap();
    if emit(DocumentKind::Plan, &build()).unwrap() != text {
        failures.push("plan emission differs between runs".into());
    }
    if !check_plan(&plan).unwrap().passed() {
        failures.push("plan replay check failed".into());
    }
    for c in two_point_citations() {
        let hits = plan
            .citations
            .iter()
            .filter(|x| x.anchor == c.anchor)
            .count();
        if hits != 1 {
            failures.push(format!("citation {} appears {hits} times", c.anchor));
        }
    }
    if plan.citations.len() != two_point_citations().len() {
        failures.push(format!("{} citations", plan.citations.len()));
    }

    let ideal = Ideal::coordinate("P", &[1, 2]);
    let divisor = InvariantDivisor::from_ints(&[1, 0, 0]);
    let cert = ft_certificate(&projective_plane(), &divisor).unwrap();
    let iso = smoothing_isogeny(&fan, &[0, 2]).unwrap();
    let opts = CurveOptions {
        degree: None,
        seed: 3,
    };
    let theorem: TheoremPlan = main_theorem_plan(
        &projective_plane(),
        &[
            PointSpec::from_ints(&[1, 1, 1]),
            PointSpec::from_ints(&[0, 1, 2]),
        ],
        std::slice::from_ref(&ideal),
        &opts,
    )
    .unwrap();
    let curve: CoxCurve = theorem.curve.as_ref().unwrap().curve.clone();
    let report = theorem.curve.as_ref().unwrap().report.clone();
    let refinement: Refinement = qfactorialize(&cube()).unwrap();
    let results = [
        round_trip(DocumentKind::Fan, &fan),
        round_trip(DocumentKind::Divisor, &divisor),
        round_trip(DocumentKind::Isogeny, &iso),
        round_trip(DocumentKind::Curve, &curve),
        round_trip(DocumentKind::Ideal, &ideal),
        round_trip(DocumentKind::Certificate, &cert),
        round_trip(DocumentKind::Plan, &plan),
        round_trip(DocumentKind::Plan, &theorem),
        round_trip(DocumentKind::Report, &refinement),
        round_trip(DocumentKind::Report, &report),
        round_trip(DocumentKind::Report, &list_orbits(&fan)),
    ];
    failures.extend(results.into_iter().filter_map(|r| r.err()));
    outcome(failures, format!("{} bytes, 8 document kinds", text.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("1", "ft certificates", 5, ft_suite),
        ("2", "isogeny algebra", 10, isogeny_algebra),
        ("3", "smoothing isogenies", 5, smoothing_lemma),
        ("4", "resolutions", 5, resolution_suite),
        ("5", "multiplicity oracle", 10, multiplicity_oracle),
        ("6", "curves avoiding S", 30, curve_suite),
        ("7", "plan determinism and round trips", 5, plan_determinism),
    ];
    let mut all = true;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= Duration::from_secs(limit);
        all &= ok;
        println!(
            "{}  {id} {name}: {} [{:.2}s / {limit}s]",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
