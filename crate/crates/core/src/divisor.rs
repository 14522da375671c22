//! Torus-invariant Weil divisors, Cartier data, ampleness, divisor polytopes
//! and Fano-type certificates for complete toric varieties.

use crate::error::{Error, Result};
use crate::fan::{ensure_valid, is_complete, is_complete_valid, is_simplicial, Fan};
use crate::linalg::{solve, solve_row_combination};
use crate::numbers::{dot_rat_int, rat_int, rat_rows, rat_vec, rvec, Rational};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `Σ d_i D_i`, coefficients aligned with the fan's rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantDivisor {
    #[serde(with = "rat_vec")]
    pub coefficients: Vec<Rational>,
}

impl InvariantDivisor {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        InvariantDivisor { coefficients }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    /// The reduced boundary `Σ D_i`.
    pub fn boundary(n: usize) -> Self {
        Self::new(vec![Rational::one(); n])
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }
}

fn check_len(fan: &Fan, d: &InvariantDivisor) -> Result<()> {
    if d.len() != fan.rays.len() {
        return Err(Error::DimensionMismatch {
            expected: fan.rays.len(),
            found: d.len(),
        });
    }
    Ok(())
}

/// Canonical divisor `K = -Σ D_i`.
pub fn canonical_divisor(fan: &Fan) -> InvariantDivisor {
    InvariantDivisor::new(vec![-Rational::one(); fan.rays.len()])
}

/// Divisor of the character `χ^u`: coefficient `⟨u, e_i⟩` at ray `e_i`.
pub fn div_chi(fan: &Fan, u: &[BigInt]) -> Result<InvariantDivisor> {
    if u.len() != fan.rank {
        return Err(Error::DimensionMismatch {
            expected: fan.rank,
            found: u.len(),
        });
    }
    let uq = rvec(u);
    Ok(InvariantDivisor::new(
        fan.rays.iter().map(|e| dot_rat_int(&uq, e)).collect(),
    ))
}

/// Local linear data of a ℚ-Cartier divisor: `⟨m_σ, e_i⟩ = -d_i` on each
/// maximal cone, in the order of `fan.max_cones`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartierData {
    pub cones: Vec<Vec<usize>>,
    #[serde(with = "rat_rows")]
    pub m: Vec<Vec<Rational>>,
}

impl CartierData {
    pub fn is_cartier(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_integer())
    }
}

pub fn cartier_data(fan: &Fan, d: &InvariantDivisor) -> Result<CartierData> {
    check_len(fan, d)?;
    let mut ms = Vec::new();
    for cone in &fan.max_cones {
        let rows: Vec<Vec<Rational>> = cone.iter().map(|&i| rvec(&fan.rays[i])).collect();
        let rhs: Vec<Rational> = cone.iter().map(|&i| -d.coefficients[i].clone()).collect();
        let m = solve(&rows, &rhs, fan.rank).ok_or_else(|| Error::NotQCartier(cone.clone()))?;
        ms.push(m);
    }
    Ok(CartierData {
        cones: fan.max_cones.clone(),
        m: ms,
    })
}

pub fn is_q_cartier(fan: &Fan, d: &InvariantDivisor) -> Result<bool> {
    match cartier_data(fan, d) {
        Ok(_) => Ok(true),
        Err(Error::NotQCartier(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Strict convexity of the support function across every wall.
pub fn is_ample(fan: &Fan, d: &InvariantDivisor) -> Result<bool> {
    ensure_complete(fan)?;
    ample_on_complete(fan, d)
}

fn ensure_complete(fan: &Fan) -> Result<()> {
    ensure_valid(fan)?;
    if !is_complete_valid(fan) {
        return Err(Error::NotComplete);
    }
    Ok(())
}

fn ample_on_complete(fan: &Fan, d: &InvariantDivisor) -> Result<bool> {
    let data = cartier_data(fan, d)?;
    for (a, b) in adjacent_pairs(fan) {
        let cone = &fan.max_cones[a];
        for &v in fan.max_cones[b].iter().filter(|v| !cone.contains(v)) {
            let value = dot_rat_int(&data.m[a], &fan.rays[v]) + &d.coefficients[v];
            if !value.is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs `(cone, neighbour across a wall)` as indices into `max_cones`.
fn adjacent_pairs(fan: &Fan) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for cs in fan.walls().values() {
        if cs.len() == 2 {
            out.push((cs[0], cs[1]));
            out.push((cs[1], cs[0]));
        }
    }
    out
}

/// `{m : ⟨m, e_i⟩ + d_i ≥ 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorPolytope {
    pub rank: usize,
    #[serde(with = "crate::numbers::int_rows")]
    pub normals: Vec<Vec<BigInt>>,
    #[serde(with = "rat_vec")]
    pub offsets: Vec<Rational>,
}

pub fn divisor_polytope(fan: &Fan, d: &InvariantDivisor) -> Result<DivisorPolytope> {
    check_len(fan, d)?;
    Ok(DivisorPolytope {
        rank: fan.rank,
        normals: fan.rays.clone(),
        offsets: d.coefficients.clone(),
    })
}

impl DivisorPolytope {
    /// Vertices, or `None` when the polytope is unbounded or has no vertex.
    pub fn vertices(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.rank;
        if n == 0 {
            return Some(vec![Vec::new()]);
        }
        let rows: Vec<Vec<Rational>> = self.normals.iter().map(|r| rvec(r)).collect();
        if crate::linalg::rank(&rows) < n {
            return None;
        }
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for subset in (0..rows.len()).combinations(n) {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].clone()).collect();
            if crate::linalg::rank(&a) < n {
                continue;
            }
            let b: Vec<Rational> = subset.iter().map(|&i| -self.offsets[i].clone()).collect();
            let Some(x) = solve(&a, &b, n) else { continue };
            if self.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
        if out.is_empty() {
            return None;
        }
        out.sort();
        if !self.is_bounded() {
            return None;
        }
        Some(out)
    }

    fn is_bounded(&self) -> bool {
        // the normals must positively span: each ±e_j is a nonnegative combination
        let n = self.rank;
        let rows: Vec<Vec<Rational>> = self.normals.iter().map(|r| rvec(r)).collect();
        (0..n).all(|j| {
            [1i64, -1].iter().all(|&s| {
                let mut target = vec![Rational::zero(); n];
                target[j] = Rational::from_integer(s.into());
                rows.iter()
                    .enumerate()
                    .map(|(i, _)| i)
                    .combinations(n)
                    .any(|sub| {
                        let a: Vec<Vec<Rational>> = sub.iter().map(|&i| rows[i].clone()).collect();
                        solve_row_combination(&a, &target)
                            .map(|l| l.iter().all(|x| !x.is_negative()))
                            .unwrap_or(false)
                    })
            })
        })
    }

    pub fn contains(&self, m: &[Rational]) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(e, d)| !(dot_rat_int(m, e) + d).is_negative())
    }

    pub fn strictly_contains_scaled(&self, u: &[BigInt], k: &BigInt) -> bool {
        let uq = rvec(u);
        let kq = rat_int(k);
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(e, d)| (dot_rat_int(&uq, e) + d * &kq).is_positive())
    }

    /// Smallest `k ≤ 2(rank+1)` for which `k·P` has an interior lattice
    /// point, with the lexicographically first such point.
    pub fn interior_point_with_scaling(&self) -> Result<(BigInt, Vec<BigInt>)> {
        let bound = 2 * (self.rank + 1);
        let verts = self.vertices().ok_or(Error::NoInteriorPoint(bound))?;
        for k in 1..=bound {
            let kb = BigInt::from(k);
            let kq = Rational::from_integer(kb.clone());
            let ranges: Vec<Vec<BigInt>> = (0..self.rank)
                .map(|j| {
                    let lo = verts
                        .iter()
                        .map(|v| &v[j] * &kq)
                        .min()
                        .unwrap()
                        .floor()
                        .to_integer();
                    let hi = verts
                        .iter()
                        .map(|v| &v[j] * &kq)
                        .max()
                        .unwrap()
                        .ceil()
                        .to_integer();
                    let mut r = Vec::new();
                    let mut x = lo;
                    while x <= hi {
                        r.push(x.clone());
                        x += 1;
                    }
                    r
                })
                .collect();
            if self.rank == 0 {
                if self.strictly_contains_scaled(&[], &kb) {
                    return Ok((kb, Vec::new()));
                }
                continue;
            }
            for u in ranges.iter().multi_cartesian_product() {
                let u: Vec<BigInt> = u.into_iter().cloned().collect();
                if self.strictly_contains_scaled(&u, &kb) {
                    return Ok((kb, u));
                }
            }
        }
        Err(Error::NoInteriorPoint(bound))
    }
}

/// Witness that `(X, Σ - εD)` is a klt pair with `-(K + Σ - εD)` ample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtCertificate {
    /// The input divisor `L`.
    pub divisor: InvariantDivisor,
    #[serde(with = "crate::numbers::int")]
    pub scale: BigInt,
    /// `k·L`.
    pub ample: InvariantDivisor,
    #[serde(with = "crate::numbers::int_vec")]
    pub u: Vec<BigInt>,
    /// `D = div χ^u + k·L`.
    pub d_prime: InvariantDivisor,
    #[serde(with = "crate::numbers::rat")]
    pub epsilon: Rational,
    /// `Σ - εD`.
    pub boundary: InvariantDivisor,
}

pub fn ft_certificate(fan: &Fan, l: &InvariantDivisor) -> Result<FtCertificate> {
    check_len(fan, l)?;
    if !is_ample(fan, l)? {
        return Err(Error::NotAmple);
    }
    let poly = divisor_polytope(fan, l)?;
    let (k, u) = poly.interior_point_with_scaling()?;
    let kq = rat_int(&k);
    let ample = l.scale(&kq);
    let d_prime = div_chi(fan, &u)?.add(&ample);
    let max = d_prime
        .coefficients
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let epsilon = Rational::one() / (Rational::one() + max);
    let boundary = InvariantDivisor::boundary(fan.rays.len()).sub(&d_prime.scale(&epsilon));
    Ok(FtCertificate {
        divisor: l.clone(),
        scale: k,
        ample,
        u,
        d_prime,
        epsilon,
        boundary,
    })
}

/// Outcome of the klt test; `offending` names the first ray with
/// coefficient ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KltVerdict {
    pub klt: bool,
    pub offending: Option<usize>,
}

/// Toric klt criterion for an invariant boundary: `K + B` ℚ-Cartier and all
/// coefficients in `[0, 1)`.
pub fn klt_check(fan: &Fan, boundary: &InvariantDivisor) -> Result<KltVerdict> {
    check_len(fan, boundary)?;
    if let Some(i) = boundary.coefficients.iter().position(|c| c.is_negative()) {
        return Err(Error::NotEffective(i));
    }
    cartier_data(fan, &canonical_divisor(fan).add(boundary))?;
    let offending = boundary
        .coefficients
        .iter()
        .position(|c| c >= &Rational::one());
    Ok(KltVerdict {
        klt: offending.is_none(),
        offending,
    })
}

/// ℚ-linear equivalence: `D1 - D2 = div χ^u` for some `u ∈ M ⊗ ℚ`.
pub fn linear_equivalence(fan: &Fan, d1: &InvariantDivisor, d2: &InvariantDivisor) -> Result<bool> {
    check_len(fan, d1)?;
    check_len(fan, d2)?;
    let diff = d1.sub(d2);
    let rows: Vec<Vec<Rational>> = fan.rays.iter().map(|r| rvec(r)).collect();
    Ok(solve(&rows, &diff.coefficients, fan.rank).is_some())
}

/// The three claims carried by a certificate, rechecked from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub effective_support: bool,
    pub klt: bool,
    pub anti_log_canonical_ample: bool,
    pub linearly_equivalent: bool,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.effective_support
            && self.klt
            && self.anti_log_canonical_ample
            && self.linearly_equivalent
    }
}

pub fn verify_certificate(fan: &Fan, cert: &FtCertificate) -> Result<CertificateCheck> {
    let expected = div_chi(fan, &cert.u)?.add(&cert.divisor.scale(&rat_int(&cert.scale)));
    let effective_support = expected == cert.d_prime
        && cert.d_prime.coefficients.iter().all(|c| c.is_positive())
        && cert.epsilon.is_positive()
        && cert.boundary
            == InvariantDivisor::boundary(fan.rays.len()).sub(&cert.d_prime.scale(&cert.epsilon));
    let klt = match klt_check(fan, &cert.boundary) {
        Ok(v) => v.klt,
        Err(Error::NotEffective(_)) => false,
        Err(e) => return Err(e),
    };
    let anti = canonical_divisor(fan).add(&cert.boundary).neg();
    let anti_log_canonical_ample = is_ample(fan, &anti)?;
    let linearly_equivalent = linear_equivalence(fan, &anti, &cert.d_prime.scale(&cert.epsilon))?;
    Ok(CertificateCheck {
        effective_support,
        klt,
        anti_log_canonical_ample,
        linearly_equivalent,
    })
}

/// Some ample invariant divisor on a complete fan: `Σ D_i` when it is ample,
/// otherwise (simplicial fans) a perceptron search over the wall
/// inequalities. Returns `NotAmple` when the search budget runs out.
pub fn find_ample_divisor(fan: &Fan) -> Result<InvariantDivisor> {
    ensure_complete(fan)?;
    let anti = InvariantDivisor::boundary(fan.rays.len());
    if ample_on_complete(fan, &anti)? {
        return Ok(anti);
    }
    if !is_simplicial(fan) {
        return Err(Error::NotAmple);
    }
    let constraints = wall_constraints(fan);
    let mut d: Vec<BigInt> = vec![BigInt::one(); fan.rays.len()];
    for _ in 0..200_000 {
        let violated = constraints.iter().find(|a| {
            !a.iter()
                .zip(&d)
                .map(|(x, y)| x * y)
                .sum::<BigInt>()
                .is_positive()
        });
        match violated {
            None => {
                let cand = InvariantDivisor::new(d.iter().map(rat_int).collect());
                return if ample_on_complete(fan, &cand)? {
                    Ok(cand)
                } else {
                    Err(Error::Internal(
                        "wall constraints disagree with ampleness".into(),
                    ))
                };
            }
            Some(a) => {
                for (x, y) in d.iter_mut().zip(a) {
                    *x += y;
                }
            }
        }
    }
    Err(Error::NotAmple)
}

/// Integer vectors `a` with `a·d > 0` for all walls iff `d` is ample
/// (simplicial complete fans).
fn wall_constraints(fan: &Fan) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for (ai, bi) in adjacent_pairs(fan) {
        let cone = &fan.max_cones[ai];
        let gens: Vec<Vec<Rational>> = cone.iter().map(|&i| rvec(&fan.rays[i])).collect();
        for &v in fan.max_cones[bi].iter().filter(|v| !cone.contains(v)) {
            let lambda =
                solve_row_combination(&gens, &rvec(&fan.rays[v])).expect("full-dimensional cone");
            let mut a = vec![Rational::zero(); fan.rays.len()];
            a[v] = Rational::one();
            for (&i, l) in cone.iter().zip(&lambda) {
                a[i] -= l;
            }
            let den = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let row: Vec<BigInt> = a.iter().map(|x| (x * rat_int(&den)).to_integer()).collect();
            if !out.contains(&row) {
                out.push(row);
            }
        }
    }
    out
}

/// Intersection numbers `D · D_ρ` on a smooth complete surface, rays taken
/// in the fan's order.
pub fn surface_intersections(fan: &Fan, d: &InvariantDivisor) -> Result<Vec<Rational>> {
    check_len(fan, d)?;
    if fan.rank != 2 || !fan.is_smooth() || !is_complete(fan)? {
        return Err(Error::InvalidParameter(
            "needs a smooth complete surface".into(),
        ));
    }
    let n = fan.rays.len();
    let mut out = Vec::with_capacity(n);
    for rho in 0..n {
        let nbrs: Vec<usize> = fan
            .max_cones
            .iter()
            .filter(|c| c.contains(&rho))
            .map(|c| if c[0] == rho { c[1] } else { c[0] })
            .collect();
        let (a, b) = (nbrs[0], nbrs[1]);
        let sum: Vec<Rational> = (0..2)
            .map(|j| rat_int(&(&fan.rays[a][j] + &fan.rays[b][j])))
            .collect();
        let v = rvec(&fan.rays[rho]);
        let idx = if v[0].is_zero() { 1 } else { 0 };
        let self_int = -(&sum[idx] / &v[idx]);
        let val = &d.coefficients[rho] * self_int + &d.coefficients[a] + &d.coefficients[b];
        out.push(val);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::*;
    use crate::numbers::{ivec, rat};

    #[test]
    fn canonical_and_characters() {
        assert_eq!(
            canonical_divisor(&projective_plane()),
            InvariantDivisor::from_ints(&[-1, -1, -1])
        );
        assert_eq!(canonical_divisor(&cube()).len(), 8);
        let p2 = projective_plane();
        assert_eq!(
            div_chi(&p2, &ivec(&[1, 1])).unwrap(),
            InvariantDivisor::from_ints(&[1, 1, -2])
        );
        assert_eq!(
            div_chi(&p121(), &ivec(&[1, 0])).unwrap(),
            InvariantDivisor::from_ints(&[1, 0, -1])
        );
        assert_eq!(
            div_chi(&p2, &ivec(&[0, 0])).unwrap(),
            InvariantDivisor::zero(3)
        );
    }

    #[test]
    fn cartier_examples() {
        let p2 = projective_plane();
        let data = cartier_data(&p2, &InvariantDivisor::from_ints(&[0, 0, 1])).unwrap();
        let pos = data.cones.iter().position(|c| c == &vec![0, 1]).unwrap();
        assert!(data.m[pos].iter().all(|x| x.is_zero()));
        assert!(data.is_cartier());
        let z = cartier_data(&p2, &InvariantDivisor::zero(3)).unwrap();
        assert!(z.m.iter().flatten().all(|x| x.is_zero()));
        let mut d = InvariantDivisor::zero(8);
        d.coefficients[0] = Rational::one();
        assert!(matches!(
            cartier_data(&cube(), &d),
            Err(Error::NotQCartier(_))
        ));
        let half = cartier_data(&p121(), &InvariantDivisor::from_ints(&[1, 0, 0])).unwrap();
        assert!(!half.is_cartier());
    }

    #[test]
    fn ampleness_examples() {
        let p2 = projective_plane();
        assert!(is_ample(&p2, &InvariantDivisor::from_ints(&[0, 0, 1])).unwrap());
        assert!(!is_ample(&p2, &InvariantDivisor::zero(3)).unwrap());
        assert!(!is_ample(&p1xp1(), &InvariantDivisor::from_ints(&[1, 0, 0, 0])).unwrap());
        assert!(is_ample(&p1xp1(), &InvariantDivisor::from_ints(&[1, 0, 1, 0])).unwrap());
        assert!(is_ample(&cube(), &InvariantDivisor::boundary(8)).unwrap());
    }

    #[test]
    fn interior_points() {
        let p2 = projective_plane();
        let poly = divisor_polytope(&p2, &InvariantDivisor::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(
            poly.interior_point_with_scaling().unwrap(),
            (BigInt::from(3), ivec(&[1, 1]))
        );
        let p1 = projective_line();
        let poly = divisor_polytope(&p1, &InvariantDivisor::from_ints(&[0, 1])).unwrap();
        assert_eq!(
            poly.interior_point_with_scaling().unwrap(),
            (BigInt::from(2), ivec(&[1]))
        );
        let poly = divisor_polytope(&p121(), &InvariantDivisor::from_ints(&[1, 0, 0])).unwrap();
        assert_eq!(
            poly.interior_point_with_scaling().unwrap(),
            (BigInt::from(4), ivec(&[-3, 1]))
        );
    }

    #[test]
    fn ft_examples() {
        let p2 = projective_plane();
        let c = ft_certificate(&p2, &InvariantDivisor::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(c.scale, BigInt::from(3));
        assert_eq!(c.u, ivec(&[1, 1]));
        assert_eq!(c.d_prime, InvariantDivisor::from_ints(&[1, 1, 1]));
        assert_eq!(c.epsilon, rat(1, 2));
        assert_eq!(c.boundary.coefficients, vec![rat(1, 2); 3]);
        assert!(verify_certificate(&p2, &c).unwrap().passed());

        let p1 = projective_line();
        let c = ft_certificate(&p1, &InvariantDivisor::from_ints(&[0, 1])).unwrap();
        assert_eq!(c.d_prime, InvariantDivisor::from_ints(&[1, 1]));
        assert_eq!(c.epsilon, rat(1, 2));

        let p = p121();
        let c = ft_certificate(&p, &InvariantDivisor::from_ints(&[1, 0, 0])).unwrap();
        assert!(verify_certificate(&p, &c).unwrap().passed());

        assert!(matches!(
            ft_certificate(&p1xp1(), &InvariantDivisor::from_ints(&[1, 0, 0, 0])),
            Err(Error::NotAmple)
        ));
    }

    #[test]
    fn klt_examples() {
        let p2 = projective_plane();
        let half = InvariantDivisor::new(vec![rat(1, 2); 3]);
        assert!(klt_check(&p2, &half).unwrap().klt);
        let v = klt_check(&p2, &InvariantDivisor::from_ints(&[0, 1, 0])).unwrap();
        assert_eq!(
            v,
            KltVerdict {
                klt: false,
                offending: Some(1)
            }
        );
        assert!(matches!(
            klt_check(&p2, &InvariantDivisor::from_ints(&[0, -1, 0])),
            Err(Error::NotEffective(1))
        ));
    }

    #[test]
    fn linear_equivalence_examples() {
        let p2 = projective_plane();
        let d3 = InvariantDivisor::from_ints(&[0, 0, 1]);
        let shifted = div_chi(&p2, &ivec(&[1, 1])).unwrap().add(&d3);
        assert!(linear_equivalence(&p2, &d3, &shifted).unwrap());
        assert!(linear_equivalence(
            &p2,
            &InvariantDivisor::from_ints(&[1, 0, 0]),
            &InvariantDivisor::from_ints(&[0, 1, 0])
        )
        .unwrap());
        let p1 = projective_line();
        assert!(!linear_equivalence(
            &p1,
            &InvariantDivisor::from_ints(&[1, 0]),
            &InvariantDivisor::from_ints(&[2, 0])
        )
        .unwrap());
    }

    #[test]
    fn ample_search_and_surface_oracle() {
        for fan in [
            projective_plane(),
            p1xp1(),
            hirzebruch(1),
            hirzebruch(3),
            p121(),
            cube(),
        ] {
            let l = find_ample_divisor(&fan).unwrap();
            assert!(is_ample(&fan, &l).unwrap());
        }
        for fan in [projective_plane(), p1xp1(), hirzebruch(2), hirzebruch(3)] {
            for coeffs in (0..fan.rays.len())
                .map(|_| -1i64..=2)
                .multi_cartesian_product()
            {
                let d = InvariantDivisor::from_ints(&coeffs);
                let oracle = surface_intersections(&fan, &d)
                    .unwrap()
                    .iter()
                    .all(|x| x.is_positive());
                assert_eq!(is_ample(&fan, &d).unwrap(), oracle, "{coeffs:?}");
            }
        }
    }
}
