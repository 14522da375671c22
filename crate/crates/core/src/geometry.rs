//! Exact facet descriptions of polyhedral cones given by generators.
//!
//! Desk-scale brute force: facets are found by trying every `(d-1)`-subset
//! of generators of a `d`-dimensional cone. Fine for the handful of rays a
//! cone in rank ≤ 4 carries.

use crate::linalg::{independent_subset, nullspace, rank};
use crate::numbers::{dot_rat, primitive_direction, rat_int, rvec, Rational};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Inward normal lying in the linear span of the cone, primitive integral.
    pub normal: Vec<Rational>,
    /// Local indices of generators on the facet.
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ConeHull {
    ambient: usize,
    rays: Vec<Vec<Rational>>,
    dim: usize,
    span_basis: Vec<Vec<Rational>>,
    equations: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
}

impl ConeHull {
    pub fn from_int_rays(ambient: usize, rays: &[Vec<BigInt>]) -> Self {
        Self::new(ambient, rays.iter().map(|r| rvec(r)).collect())
    }

    pub fn new(ambient: usize, rays: Vec<Vec<Rational>>) -> Self {
        let basis_idx = independent_subset(&rays);
        let span_basis: Vec<Vec<Rational>> = basis_idx.iter().map(|&i| rays[i].clone()).collect();
        let dim = span_basis.len();
        let equations = if dim == 0 {
            (0..ambient)
                .map(|i| {
                    let mut e = vec![Rational::zero(); ambient];
                    e[i] = Rational::from_integer(1.into());
                    e
                })
                .collect()
        } else {
            nullspace(&span_basis, ambient)
        };
        let mut hull = ConeHull {
            ambient,
            rays,
            dim,
            span_basis,
            equations,
            facets: Vec::new(),
        };
        hull.facets = hull.compute_facets();
        hull
    }

    fn compute_facets(&self) -> Vec<Facet> {
        if self.dim == 0 {
            return Vec::new();
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut facets = Vec::new();
        for subset in (0..self.rays.len()).combinations(self.dim - 1) {
            let sub: Vec<Vec<Rational>> = subset.iter().map(|&i| self.rays[i].clone()).collect();
            if rank(&sub) != self.dim - 1 {
                continue;
            }
            let normal = normal_in_span(&self.span_basis, &sub);
            let vals: Vec<Rational> = self.rays.iter().map(|r| dot_rat(&normal, r)).collect();
            let normal = if vals.iter().all(|v| !v.is_negative()) {
                normal
            } else if vals.iter().all(|v| !v.is_positive()) {
                normal.into_iter().map(|x| -x).collect()
            } else {
                continue;
            };
            let tight: Vec<usize> = vals
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_zero())
                .map(|(i, _)| i)
                .collect();
            if seen.insert(tight.clone()) {
                facets.push(Facet { normal, tight });
            }
        }
        facets
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Rational>] {
        &self.equations
    }

    /// Contains no line. Only meaningful for a nonempty generator set.
    pub fn is_pointed(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let normals: Vec<Vec<Rational>> = self.facets.iter().map(|f| f.normal.clone()).collect();
        rank(&normals) == self.dim
    }

    pub fn in_span(&self, v: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot_rat(e, v).is_zero())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.in_span(v)
            && self
                .facets
                .iter()
                .all(|f| !dot_rat(&f.normal, v).is_negative())
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.contains(&rvec(v))
    }

    pub fn in_relative_interior(&self, v: &[Rational]) -> bool {
        self.in_span(v)
            && self
                .facets
                .iter()
                .all(|f| dot_rat(&f.normal, v).is_positive())
    }

    /// Local indices of generators that are extreme rays (pointed cones).
    pub fn extreme(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| {
                if self.rays[i].iter().all(|x| x.is_zero()) {
                    return false;
                }
                let normals: Vec<Vec<Rational>> = self
                    .facets
                    .iter()
                    .filter(|f| f.tight.contains(&i))
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&normals) + 1 == self.dim
            })
            .collect()
    }

    /// All faces as sorted local index sets, including the cone itself and
    /// (for pointed cones) the empty face.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let full: Vec<usize> = (0..self.rays.len()).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = vec![full];
        while let Some(face) = stack.pop() {
            if !found.insert(face.clone()) {
                continue;
            }
            for f in &self.facets {
                let next: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|i| f.tight.contains(i))
                    .collect();
                if next.len() < face.len() && !found.contains(&next) {
                    stack.push(next);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Generators of the smallest face containing every vector in `xs`.
    pub fn minimal_face_containing(&self, xs: &[Vec<Rational>]) -> Vec<usize> {
        let mut face: Vec<usize> = (0..self.rays.len()).collect();
        for f in &self.facets {
            if xs.iter().all(|x| dot_rat(&f.normal, x).is_zero()) {
                face.retain(|i| f.tight.contains(i));
            }
        }
        face
    }
}

/// A vector in `span(basis)` orthogonal to every vector of `on`; assumes the
/// orthogonality conditions cut the span down to a line.
pub fn normal_in_span(basis: &[Vec<Rational>], on: &[Vec<Rational>]) -> Vec<Rational> {
    let k = basis.len();
    let ambient = basis[0].len();
    let conditions: Vec<Vec<Rational>> = on
        .iter()
        .map(|r| basis.iter().map(|b| dot_rat(b, r)).collect())
        .collect();
    let kernel = nullspace(&conditions, k);
    let c = &kernel[0];
    let mut m = vec![Rational::zero(); ambient];
    for (cj, bj) in c.iter().zip(basis) {
        for (mi, bi) in m.iter_mut().zip(bj) {
            *mi += cj * bi;
        }
    }
    primitive_direction(&m)
        .map(|v| v.iter().map(rat_int).collect())
        .unwrap_or(m)
}

/// Extreme rays of `a ∩ b` for pointed cones, as primitive integer vectors.
pub fn intersection_extreme_rays(a: &ConeHull, b: &ConeHull) -> Vec<Vec<BigInt>> {
    let n = a.ambient;
    let eq_all: Vec<Vec<Rational>> = a.equations.iter().chain(&b.equations).cloned().collect();
    let eq: Vec<Vec<Rational>> = independent_subset(&eq_all)
        .into_iter()
        .map(|i| eq_all[i].clone())
        .collect();
    let ineq: Vec<Vec<Rational>> = a
        .facets
        .iter()
        .chain(&b.facets)
        .map(|f| f.normal.clone())
        .collect();
    if eq.len() >= n {
        return Vec::new();
    }
    let need = n - 1 - eq.len();
    let feasible = |x: &[Rational]| ineq.iter().all(|m| !dot_rat(m, x).is_negative());
    let mut out: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for subset in (0..ineq.len()).combinations(need) {
        let mut rows = eq.clone();
        rows.extend(subset.iter().map(|&i| ineq[i].clone()));
        if rank(&rows) != n - 1 {
            continue;
        }
        let ker = nullspace(&rows, n);
        let x = &ker[0];
        let neg: Vec<Rational> = x.iter().map(|v| -v.clone()).collect();
        for cand in [x.clone(), neg] {
            if feasible(&cand) {
                if let Some(p) = primitive_direction(&cand) {
                    out.insert(p);
                }
            }
        }
    }
    out.into_iter().collect()
}
