//! Fans, cones and the orbit–cone correspondence.

use crate::error::{Error, Result};
use crate::geometry::{intersection_extreme_rays, ConeHull};
use crate::lattice::{is_primitive, smith_normal_form, IntegerMatrix};
use crate::numbers::{dot_rat, fmt_ivec, int_rows, rvec};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A strongly convex rational polyhedral cone given by its extreme rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn new(rank: usize, rays: Vec<Vec<BigInt>>) -> Result<Self> {
        for r in &rays {
            if r.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: r.len(),
                });
            }
            if !is_primitive(r) {
                return Err(Error::NotPrimitive(fmt_ivec(r)));
            }
        }
        let hull = ConeHull::from_int_rays(rank, &rays);
        if !hull.is_pointed() {
            return Err(Error::InvalidCone("cone contains a line".into()));
        }
        if hull.extreme().len() != rays.len() || rays.iter().duplicates().next().is_some() {
            return Err(Error::InvalidCone("generators are not irredundant".into()));
        }
        Ok(Cone { rank, rays })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.ray_matrix().rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.rays, self.rank).expect("rays checked at construction")
    }
}

/// Generators extend to a lattice basis.
pub fn is_smooth_cone(cone: &Cone) -> bool {
    if cone.rays.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&cone.ray_matrix());
    snf.diagonal.iter().all(|d| d.is_one())
}

/// Index of the lattice spanned by the rays in its saturation.
pub fn cone_multiplicity(cone: &Cone) -> Result<BigInt> {
    if !cone.is_simplicial() {
        return Err(Error::NotSimplicial(Vec::new()));
    }
    if cone.rays.is_empty() {
        return Ok(BigInt::one());
    }
    Ok(smith_normal_form(&cone.ray_matrix())
        .diagonal
        .iter()
        .product())
}

/// A fan: a global ray list plus maximal cones given as ray-index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rank: usize,
    #[serde(with = "int_rows")]
    pub rays: Vec<Vec<BigInt>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    RayDimension { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { ray: usize, first: usize },
    RayIndexOutOfRange { cone: usize, ray: usize },
    EmptyIndexSet { cone: usize },
    NotStronglyConvex { cone: usize },
    RedundantRay { cone: usize, ray: usize },
    NonMaximalCone { cone: usize, inside: usize },
    NotFaceIntersection { first: usize, second: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::RayDimension { ray } => write!(f, "RayDimension at index {ray}"),
            Violation::NonPrimitiveRay { ray } => write!(f, "NonPrimitiveRay at index {ray}"),
            Violation::DuplicateRay { ray, first } => {
                write!(f, "DuplicateRay at index {ray} (same as {first})")
            }
            Violation::RayIndexOutOfRange { cone, ray } => {
                write!(f, "RayIndexOutOfRange: cone {cone} uses ray {ray}")
            }
            Violation::EmptyIndexSet { cone } => write!(f, "EmptyIndexSet at cone {cone}"),
            Violation::NotStronglyConvex { cone } => write!(f, "NotStronglyConvex at cone {cone}"),
            Violation::RedundantRay { cone, ray } => {
                write!(f, "RedundantRay: ray {ray} is not extreme in cone {cone}")
            }
            Violation::NonMaximalCone { cone, inside } => {
                write!(f, "NonMaximalCone: cone {cone} is a face of cone {inside}")
            }
            Violation::NotFaceIntersection { first, second } => {
                write!(f, "NotFaceIntersection between cones {first} and {second}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The torus orbit attached to a cone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitDescriptor {
    pub cone: Vec<usize>,
    pub orbit_dim: usize,
    pub is_singular: bool,
}

impl Fan {
    /// Builds a fan after normalizing cone index sets; geometric checks are
    /// left to [`validate_fan`].
    pub fn new(rank: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Self {
        let mut fan = Fan {
            rank,
            rays,
            max_cones,
        };
        fan.normalize();
        fan
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Self {
        Fan::new(
            rank,
            rays.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// Sorts index sets and the cone list; drops duplicates.
    pub fn normalize(&mut self) {
        for c in self.max_cones.iter_mut() {
            c.sort_unstable();
            c.dedup();
        }
        self.max_cones.sort();
        self.max_cones.dedup();
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn cone_rays(&self, idx: &[usize]) -> Vec<Vec<BigInt>> {
        idx.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// The cone spanned by the given rays; errors if they are not a cone's extreme rays.
    pub fn cone(&self, idx: &[usize]) -> Result<Cone> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.rays.len()) {
            return Err(Error::NotACone(vec![bad]));
        }
        Cone::new(self.rank, self.cone_rays(idx))
    }

    pub fn hull(&self, idx: &[usize]) -> ConeHull {
        ConeHull::from_int_rays(self.rank, &self.cone_rays(idx))
    }

    pub fn cone_dim(&self, idx: &[usize]) -> usize {
        crate::linalg::rank(
            &self
                .cone_rays(idx)
                .iter()
                .map(|r| rvec(r))
                .collect::<Vec<_>>(),
        )
    }

    /// Faces of one maximal cone as global ray-index sets.
    pub fn faces_of(&self, cone: &[usize]) -> Vec<Vec<usize>> {
        let is_simplex = self.cone_dim(cone) == cone.len();
        if is_simplex {
            return cone.iter().copied().powerset().collect();
        }
        self.hull(cone)
            .faces()
            .into_iter()
            .map(|f| f.into_iter().map(|i| cone[i]).collect())
            .collect()
    }

    /// Every cone of the fan (faces of maximal cones, zero cone included),
    /// sorted by dimension then lexicographically.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        set.insert(Vec::new());
        for c in &self.max_cones {
            for f in self.faces_of(c) {
                set.insert(f);
            }
        }
        let mut v: Vec<Vec<usize>> = set.into_iter().collect();
        v.sort_by(|a, b| {
            self.cone_dim(a)
                .cmp(&self.cone_dim(b))
                .then_with(|| a.cmp(b))
        });
        v
    }

    pub fn is_cone(&self, idx: &[usize]) -> bool {
        let mut s = idx.to_vec();
        s.sort_unstable();
        s.dedup();
        self.max_cones
            .iter()
            .filter(|c| s.iter().all(|i| c.contains(i)))
            .any(|c| self.faces_of(c).contains(&s))
    }

    /// Maximal cones containing `v` in their support.
    pub fn cones_containing(&self, v: &[BigInt]) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| self.hull(&self.max_cones[i]).contains_int(v))
            .collect()
    }

    pub fn in_support(&self, v: &[BigInt]) -> bool {
        !self.cones_containing(v).is_empty()
    }

    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }

    /// Smallest cone of the fan containing `v`, by ray indices.
    pub fn carrier(&self, v: &[BigInt]) -> Option<Vec<usize>> {
        let q = rvec(v);
        self.all_cones()
            .into_iter()
            .find(|c| self.hull(c).contains(&q))
    }

    pub fn is_smooth_at(&self, idx: &[usize]) -> bool {
        if idx.is_empty() {
            return true;
        }
        let m = IntegerMatrix::from_rows(&self.cone_rays(idx), self.rank).unwrap();
        smith_normal_form(&m).diagonal.iter().all(|d| d.is_one())
    }

    pub fn multiplicity_at(&self, idx: &[usize]) -> BigInt {
        if idx.is_empty() {
            return BigInt::one();
        }
        let m = IntegerMatrix::from_rows(&self.cone_rays(idx), self.rank).unwrap();
        smith_normal_form(&m).diagonal.iter().product()
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| self.is_smooth_at(c))
    }

    /// Ray matrix with one row per ray.
    pub fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.rays, self.rank).expect("ray dimensions")
    }

    /// Walls (codimension-one faces of full-dimensional maximal cones) and
    /// the maximal cones containing them.
    pub fn walls(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            if self.cone_dim(c) != self.rank {
                continue;
            }
            for f in self.hull(c).facets() {
                let w: Vec<usize> = f.tight.iter().map(|&i| c[i]).collect();
                walls.entry(w).or_default().push(ci);
            }
        }
        walls
    }
}

pub fn validate_fan(fan: &Fan) -> ValidationReport {
    let mut violations = Vec::new();
    let mut structural = false;
    for (i, r) in fan.rays.iter().enumerate() {
        if r.len() != fan.rank {
            violations.push(Violation::RayDimension { ray: i });
            structural = true;
        } else if !is_primitive(r) {
            violations.push(Violation::NonPrimitiveRay { ray: i });
        }
        if let Some(first) = fan.rays[..i].iter().position(|q| q == r) {
            violations.push(Violation::DuplicateRay { ray: i, first });
        }
    }
    for (ci, c) in fan.max_cones.iter().enumerate() {
        if c.is_empty() && fan.max_cones.len() > 1 {
            violations.push(Violation::EmptyIndexSet { cone: ci });
        }
        for &r in c {
            if r >= fan.rays.len() {
                violations.push(Violation::RayIndexOutOfRange { cone: ci, ray: r });
                structural = true;
            }
        }
    }
    if structural {
        return ValidationReport { violations };
    }
    let hulls: Vec<ConeHull> = fan.max_cones.iter().map(|c| fan.hull(c)).collect();
    let mut convex = vec![true; hulls.len()];
    for (ci, h) in hulls.iter().enumerate() {
        if !h.is_pointed() {
            violations.push(Violation::NotStronglyConvex { cone: ci });
            convex[ci] = false;
            continue;
        }
        let extreme = h.extreme();
        for local in 0..fan.max_cones[ci].len() {
            if !extreme.contains(&local) {
                violations.push(Violation::RedundantRay {
                    cone: ci,
                    ray: fan.max_cones[ci][local],
                });
            }
        }
    }
    for (a, b) in (0..hulls.len()).tuple_combinations() {
        if !(convex[a] && convex[b]) {
            continue;
        }
        let (ca, cb) = (&fan.max_cones[a], &fan.max_cones[b]);
        if ca.iter().all(|i| cb.contains(i)) {
            violations.push(Violation::NonMaximalCone { cone: a, inside: b });
            continue;
        }
        if cb.iter().all(|i| ca.contains(i)) {
            violations.push(Violation::NonMaximalCone { cone: b, inside: a });
            continue;
        }
        if !intersection_is_common_face(&hulls[a], &hulls[b]) {
            violations.push(Violation::NotFaceIntersection {
                first: a,
                second: b,
            });
        }
    }
    ValidationReport { violations }
}

/// Some facet normal of `a` is negative on every generator of `b`, so the
/// cones meet only at the origin.
fn meet_at_origin(a: &ConeHull, b: &ConeHull) -> bool {
    a.facets()
        .iter()
        .any(|f| b.rays().iter().all(|r| dot_rat(&f.normal, r).is_negative()))
}

fn intersection_is_common_face(a: &ConeHull, b: &ConeHull) -> bool {
    if meet_at_origin(a, b) || meet_at_origin(b, a) {
        return true;
    }
    let gens: Vec<_> = intersection_extreme_rays(a, b)
        .iter()
        .map(|r| rvec(r))
        .collect();
    let is_face_of = |h: &ConeHull, other: &ConeHull| {
        h.minimal_face_containing(&gens)
            .iter()
            .all(|&i| other.contains(&h.rays()[i]))
    };
    is_face_of(a, b) && is_face_of(b, a)
}

fn require_valid(fan: &Fan) -> Result<()> {
    let report = validate_fan(fan);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidFan(v.to_string())),
    }
}

/// Wall-pairing completeness test: pure of full dimension, every wall in
/// exactly two maximal cones, and maximal cones connected through walls.
pub fn is_complete(fan: &Fan) -> Result<bool> {
    require_valid(fan)?;
    Ok(is_complete_valid(fan))
}

/// [`is_complete`] for a fan already known to be valid.
pub(crate) fn is_complete_valid(fan: &Fan) -> bool {
    if fan.rank == 0 {
        return true;
    }
    if fan.max_cones.is_empty() || fan.max_cones.iter().any(|c| fan.cone_dim(c) != fan.rank) {
        return false;
    }
    let walls = fan.walls();
    if walls.values().any(|cs| cs.len() != 2) {
        return false;
    }
    let mut parent: Vec<usize> = (0..fan.max_cones.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for cs in walls.values() {
        let (a, b) = (find(&mut parent, cs[0]), find(&mut parent, cs[1]));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..fan.max_cones.len()).all(|i| find(&mut parent, i) == root)
}

pub fn is_simplicial(fan: &Fan) -> bool {
    fan.max_cones.iter().all(|c| fan.cone_dim(c) == c.len())
}

pub fn list_orbits(fan: &Fan) -> Vec<OrbitDescriptor> {
    let mut orbits: Vec<OrbitDescriptor> = fan
        .all_cones()
        .into_iter()
        .map(|c| OrbitDescriptor {
            orbit_dim: fan.rank - fan.cone_dim(&c),
            is_singular: !fan.is_smooth_at(&c),
            cone: c,
        })
        .collect();
    orbits.sort_by(|a, b| {
        b.orbit_dim
            .cmp(&a.orbit_dim)
            .then_with(|| a.cone.cmp(&b.cone))
    });
    orbits
}

/// Orbits of codimension at least two: the locus `I(X)`.
pub fn codim2_orbits(fan: &Fan) -> Vec<OrbitDescriptor> {
    list_orbits(fan)
        .into_iter()
        .filter(|o| o.orbit_dim + 2 <= fan.rank)
        .collect()
}

/// Minimal sets of rays that do not lie in a common cone.
pub fn primitive_collections(fan: &Fan) -> Result<Vec<Vec<usize>>> {
    if let Some(c) = fan.max_cones.iter().find(|c| fan.cone_dim(c) != c.len()) {
        return Err(Error::NotSimplicial(c.clone()));
    }
    let faces: BTreeSet<Vec<usize>> = fan.all_cones().into_iter().collect();
    let n = fan.rays.len();
    let mut out = Vec::new();
    for size in 1..=(fan.rank + 1).min(n) {
        for s in (0..n).combinations(size) {
            if faces.contains(&s) {
                continue;
            }
            let minimal = s.iter().all(|&drop| {
                faces.contains(&s.iter().copied().filter(|&i| i != drop).collect::<Vec<_>>())
            });
            if minimal {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// The toric singular locus as cones whose orbits are singular.
pub fn singular_cones(fan: &Fan) -> Vec<Vec<usize>> {
    fan.all_cones()
        .into_iter()
        .filter(|c| !fan.is_smooth_at(c))
        .collect()
}

/// Checks that every cone index set lies in the fan; used by operations that
/// take a cone argument.
pub fn require_cone(fan: &Fan, idx: &[usize]) -> Result<Vec<usize>> {
    let mut s = idx.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.iter().any(|&i| i >= fan.rays.len()) || !fan.is_cone(&s) {
        return Err(Error::NotACone(idx.to_vec()));
    }
    Ok(s)
}

pub(crate) fn ensure_valid(fan: &Fan) -> Result<()> {
    require_valid(fan)
}

impl Fan {
    pub fn zero_vector(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank]
    }
}

/// Small fans used throughout the tests and examples.
pub mod examples {
    use super::Fan;

    pub fn projective_line() -> Fan {
        Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]])
    }

    pub fn projective_plane() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
    }

    /// Weighted projective plane with weights (1,2,1).
    pub fn p121() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -2]],
            &[&[0, 1], &[1, 2], &[0, 2]],
        )
    }

    pub fn p1xp1() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
        )
    }

    /// Hirzebruch surface `F_a`.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        )
    }

    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let cones: Vec<Vec<usize>> = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        let rays_ref: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        let cones_ref: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
        Fan::from_i64(n, &rays_ref, &cones_ref)
    }

    /// Fan over the faces of the cube with vertices (±1,±1,±1).
    pub fn cube() -> Fan {
        let mut rays: Vec<[i64; 3]> = Vec::new();
        for x in [1, -1] {
            for y in [1, -1] {
                for z in [1, -1] {
                    rays.push([x, y, z]);
                }
            }
        }
        let mut cones = Vec::new();
        for axis in 0..3 {
            for sign in [1, -1] {
                let c: Vec<usize> = (0..8).filter(|&i| rays[i][axis] == sign).collect();
                cones.push(c);
            }
        }
        let rays_ref: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        let cones_ref: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
        Fan::from_i64(3, &rays_ref, &cones_ref)
    }

    /// P^1 x P^1 x P^1.
    pub fn p1_cubed() -> Fan {
        let rays: [&[i64]; 6] = [
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ];
        let mut cones = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    cones.push(vec![a, b, c]);
                }
            }
        }
        let cones_ref: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
        Fan::from_i64(3, &rays, &cones_ref)
    }

    /// A complete fan containing the square cone over
    /// (1,0,0),(0,1,0),(1,0,1),(0,1,1), completed by coning its boundary
    /// from (-1,-1,-1).
    pub fn square_cone_completion() -> Fan {
        let rays: [&[i64]; 5] = [
            &[1, 0, 0],
            &[0, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[-1, -1, -1],
        ];
        Fan::from_i64(
            3,
            &rays,
            &[
                &[0, 1, 2, 3],
                &[0, 1, 4],
                &[1, 3, 4],
                &[2, 3, 4],
                &[0, 2, 4],
            ],
        )
    }
}
