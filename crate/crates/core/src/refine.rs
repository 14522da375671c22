//! Fan subdivisions: stellar subdivision, Q-factorialization by placing
//! triangulations, and toric resolution of singularities.

use crate::citations::{divisorial_general_member, Citation};
use crate::error::{Error, Result};
use crate::fan::{ensure_valid, Fan};
use crate::geometry::{normal_in_span, ConeHull};
use crate::lattice::{is_primitive, smith_normal_form, unimodular_inverse, IntegerMatrix};
use crate::linalg::{rank, solve_row_combination};
use crate::numbers::{dot_rat, fmt_ivec, opt_int_vec, rat_int, rvec, Rational};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Stellar,
    Triangulation,
}

/// One edit of the maximal-cone list. Cone indices refer to the fan after the
/// step; a new ray, if any, is appended at the end of the ray list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionStep {
    pub kind: StepKind,
    #[serde(with = "opt_int_vec")]
    pub new_ray: Option<Vec<BigInt>>,
    pub before: Vec<Vec<usize>>,
    pub after: Vec<Vec<usize>>,
}

impl SubdivisionStep {
    /// Replays the step on `fan`.
    pub fn apply(&self, fan: &Fan) -> Result<Fan> {
        let mut out = fan.clone();
        if let Some(v) = &self.new_ray {
            if out.ray_index(v).is_some() {
                return Err(Error::InvalidFan(format!(
                    "ray {:?} already present",
                    fmt_ivec(v)
                )));
            }
            out.rays.push(v.clone());
        }
        for c in &self.before {
            let pos = out
                .max_cones
                .iter()
                .position(|m| m == c)
                .ok_or_else(|| Error::NotACone(c.clone()))?;
            out.max_cones.remove(pos);
        }
        out.max_cones.extend(self.after.iter().cloned());
        out.normalize();
        Ok(out)
    }
}

/// A subdivided fan with the log of steps producing it from the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refinement {
    pub fan: Fan,
    pub steps: Vec<SubdivisionStep>,
    #[serde(default)]
    pub citations: Vec<Citation>,
}

pub fn replay(fan: &Fan, steps: &[SubdivisionStep]) -> Result<Fan> {
    steps.iter().try_fold(fan.clone(), |f, s| s.apply(&f))
}

/// Star subdivision of `fan` at the primitive vector `v`.
pub fn stellar_subdivision(fan: &Fan, v: &[BigInt]) -> Result<(Fan, SubdivisionStep)> {
    if v.len() != fan.rank {
        return Err(Error::DimensionMismatch {
            expected: fan.rank,
            found: v.len(),
        });
    }
    if !is_primitive(v) {
        return Err(Error::NotPrimitive(fmt_ivec(v)));
    }
    let containing = fan.cones_containing(v);
    if containing.is_empty() {
        return Err(Error::RayOutsideSupport(fmt_ivec(v)));
    }
    if fan.ray_index(v).is_some() {
        let step = SubdivisionStep {
            kind: StepKind::Stellar,
            new_ray: None,
            before: Vec::new(),
            after: Vec::new(),
        };
        return Ok((fan.clone(), step));
    }
    let new_index = fan.rays.len();
    let q = rvec(v);
    let mut before = Vec::new();
    let mut after = Vec::new();
    for &ci in &containing {
        let cone = &fan.max_cones[ci];
        let hull = fan.hull(cone);
        before.push(cone.clone());
        for f in hull.facets() {
            if dot_rat(&f.normal, &q).is_zero() {
                continue;
            }
            let mut c: Vec<usize> = f.tight.iter().map(|&i| cone[i]).collect();
            c.push(new_index);
            after.push(c);
        }
        if hull.dim() == 0 {
            after.push(vec![new_index]);
        }
    }
    after.sort();
    let step = SubdivisionStep {
        kind: StepKind::Stellar,
        new_ray: Some(v.to_vec()),
        before,
        after,
    };
    let out = step.apply(fan)?;
    Ok((out, step))
}

/// Simplicial refinement of every non-simplicial maximal cone using only its
/// own rays: placing triangulation in increasing global ray order.
pub fn qfactorialize(fan: &Fan) -> Result<Refinement> {
    ensure_valid(fan)?;
    let mut steps = Vec::new();
    for cone in &fan.max_cones {
        if fan.cone_dim(cone) == cone.len() {
            continue;
        }
        let mut after = placing_triangulation(fan, cone);
        after.sort();
        steps.push(SubdivisionStep {
            kind: StepKind::Triangulation,
            new_ray: None,
            before: vec![cone.clone()],
            after,
        });
    }
    let out = replay(fan, &steps)?;
    Ok(Refinement {
        fan: out,
        steps,
        citations: Vec::new(),
    })
}

fn placing_triangulation(fan: &Fan, cone: &[usize]) -> Vec<Vec<usize>> {
    let pts: Vec<Vec<Rational>> = cone.iter().map(|&i| rvec(&fan.rays[i])).collect();
    let mut simplices: Vec<Vec<usize>> = vec![Vec::new()];
    let mut placed: Vec<Vec<Rational>> = Vec::new();
    for p in 0..pts.len() {
        let mut grown = placed.clone();
        grown.push(pts[p].clone());
        if rank(&grown) > rank(&placed) {
            for s in simplices.iter_mut() {
                s.push(p);
            }
        } else {
            let mut boundary: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
            for s in &simplices {
                for &q in s {
                    let f: Vec<usize> = s.iter().copied().filter(|&x| x != q).collect();
                    let e = boundary.entry(f).or_insert((0, q));
                    e.0 += 1;
                }
            }
            let mut added = Vec::new();
            for (f, (count, q)) in boundary {
                if count != 1 {
                    continue;
                }
                let mut basis: Vec<Vec<Rational>> = f.iter().map(|&i| pts[i].clone()).collect();
                basis.push(pts[q].clone());
                let on: Vec<Vec<Rational>> = f.iter().map(|&i| pts[i].clone()).collect();
                let mut m = normal_in_span(&basis, &on);
                if dot_rat(&m, &pts[q]).is_negative() {
                    m = m.into_iter().map(|x| -x).collect();
                }
                if dot_rat(&m, &pts[p]).is_negative() {
                    let mut s = f.clone();
                    s.push(p);
                    added.push(s);
                }
            }
            simplices.extend(added);
        }
        placed = grown;
    }
    simplices
        .into_iter()
        .map(|s| {
            let mut g: Vec<usize> = s.into_iter().map(|i| cone[i]).collect();
            g.sort_unstable();
            g
        })
        .collect()
}

/// Nonzero lattice points `sum λ_i r_i` with `0 ≤ λ_i < 1` of a simplicial
/// cone, with their coefficients.
pub fn parallelepiped_points(rays: &[Vec<BigInt>], n: usize) -> Vec<(Vec<BigInt>, Vec<Rational>)> {
    let k = rays.len();
    if k == 0 {
        return Vec::new();
    }
    let r = IntegerMatrix::from_rows(rays, n).expect("ray width");
    let snf = smith_normal_form(&r);
    let w = unimodular_inverse(&snf.right).to_rows();
    let gens: Vec<Vec<Rational>> = rays.iter().map(|x| rvec(x)).collect();
    let ranges: Vec<Vec<BigInt>> = snf.diagonal[..k].iter().map(num_iter_range).collect();
    let mut out = Vec::new();
    for ys in ranges.iter().multi_cartesian_product() {
        let mut p0 = vec![BigInt::zero(); n];
        for (y, wi) in ys.iter().zip(&w) {
            for (a, b) in p0.iter_mut().zip(wi) {
                *a += *y * b;
            }
        }
        let lambda =
            solve_row_combination(&gens, &rvec(&p0)).expect("representative lies in the span");
        let frac: Vec<Rational> = lambda.iter().map(|l| l - l.floor()).collect();
        if frac.iter().all(|l| l.is_zero()) {
            continue;
        }
        let mut p = vec![Rational::zero(); n];
        for (l, g) in frac.iter().zip(&gens) {
            for (a, b) in p.iter_mut().zip(g) {
                *a += l * b;
            }
        }
        let p: Vec<BigInt> = p.into_iter().map(|x| x.to_integer()).collect();
        out.push((p, frac));
    }
    out.sort();
    out.dedup();
    out
}

fn num_iter_range(d: &BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut i = BigInt::zero();
    while &i < d {
        v.push(i.clone());
        i += 1;
    }
    v
}

/// Repeated stellar subdivision until every cone is smooth. Each step picks a
/// cone of maximal multiplicity and its parallelepiped point with the least
/// coefficient sum (ties: lexicographically smallest point).
pub fn resolve_to_smooth(fan: &Fan) -> Result<Refinement> {
    if let Some(c) = fan.max_cones.iter().find(|c| fan.cone_dim(c) != c.len()) {
        return Err(Error::NotSimplicial(c.clone()));
    }
    let mut current = fan.clone();
    let mut steps = Vec::new();
    loop {
        let worst = current
            .max_cones
            .iter()
            .map(|c| (current.multiplicity_at(c), c.clone()))
            .filter(|(m, _)| !m.is_one())
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
        let Some((_, cone)) = worst else { break };
        let v = best_center(&current, &cone);
        let (next, step) = stellar_subdivision(&current, &v)?;
        steps.push(step);
        current = next;
    }
    Ok(Refinement {
        fan: current,
        steps,
        citations: Vec::new(),
    })
}

fn best_center(fan: &Fan, cone: &[usize]) -> Vec<BigInt> {
    let pts = parallelepiped_points(&fan.cone_rays(cone), fan.rank);
    let (p, _) = pts
        .into_iter()
        .min_by(|(pa, la), (pb, lb)| {
            let sa: Rational = la.iter().sum();
            let sb: Rational = lb.iter().sum();
            sa.cmp(&sb).then_with(|| pa.cmp(pb))
        })
        .expect("non-smooth simplicial cone has a parallelepiped point");
    crate::lattice::primitive_vector(&p).expect("nonzero point")
}

/// Smooth refinement in which every marked torus-fixed point has a divisorial
/// preimage. Marked sets must be full-dimensional maximal cones.
pub fn resolve_marked(fan: &Fan, marked: &[Vec<usize>]) -> Result<Refinement> {
    ensure_valid(fan)?;
    let mut marked_sorted = Vec::new();
    for m in marked {
        let mut s = m.clone();
        s.sort_unstable();
        s.dedup();
        if !fan.max_cones.contains(&s) || fan.cone_dim(&s) != fan.rank {
            return Err(Error::NotFixedPoint(m.clone()));
        }
        marked_sorted.push(s);
    }
    let q = qfactorialize(fan)?;
    let r = resolve_to_smooth(&q.fan)?;
    let mut steps = q.steps;
    steps.extend(r.steps);
    let mut current = r.fan;
    let hulls: Vec<ConeHull> = marked_sorted.iter().map(|c| fan.hull(c)).collect();
    while let Some(center) = non_divisorial_center(&current, &hulls) {
        let (next, step) = stellar_subdivision(&current, &center)?;
        steps.push(step);
        current = next;
    }
    let citations = if marked_sorted.is_empty() {
        Vec::new()
    } else {
        vec![divisorial_general_member()]
    };
    Ok(Refinement {
        fan: current,
        steps,
        citations,
    })
}

/// A cone whose relative interior lies inside a marked cone's interior but
/// which has no ray there; returns the primitive barycenter to subdivide at.
fn non_divisorial_center(fan: &Fan, marked: &[ConeHull]) -> Option<Vec<BigInt>> {
    let mut cones = fan.all_cones();
    cones.retain(|c| !c.is_empty());
    cones.sort_by(|a, b| fan.cone_dim(b).cmp(&fan.cone_dim(a)).then_with(|| a.cmp(b)));
    for c in cones {
        let sum: Vec<BigInt> = (0..fan.rank)
            .map(|j| c.iter().map(|&i| fan.rays[i][j].clone()).sum())
            .collect();
        let sum_q: Vec<Rational> = sum.iter().map(rat_int).collect();
        for h in marked {
            if !h.in_relative_interior(&sum_q) {
                continue;
            }
            let has_interior_ray = c
                .iter()
                .any(|&i| h.in_relative_interior(&rvec(&fan.rays[i])));
            if !has_interior_ray {
                let g = sum.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                return Some(sum.into_iter().map(|x| x / &g).collect());
            }
        }
    }
    None
}

/// Multiplicities of the maximal cones, sorted descending.
pub fn multiplicity_profile(fan: &Fan) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = fan
        .max_cones
        .iter()
        .map(|c| fan.multiplicity_at(c))
        .collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}
