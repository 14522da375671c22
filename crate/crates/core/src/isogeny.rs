//! Isogenies of toric varieties: finite-index lattice inclusions `N' ⊆ N`
//! with the same fan.
//!
//! All lattices are stored in the coordinates of one fixed reference lattice
//! `Z^n`, so that isogenies over isogenies stay comparable. The fan's rays
//! are directions in those coordinates; they are re-primitivized only when a
//! fan is pulled back.

use crate::error::{Error, Result};
use crate::fan::{is_simplicial, list_orbits, require_cone, Fan, OrbitDescriptor};
use crate::lattice::{
    hermite_normal_form, saturation_with_complement, smith_normal_form, IntegerMatrix,
    SublatticeBasis,
};
use crate::linalg::solve_row_combination;
use crate::numbers::{int, primitive_direction, rvec, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isogeny {
    pub fan: Fan,
    /// The lattice `N` of the base variety.
    pub target_lattice: SublatticeBasis,
    /// The lattice `N'` of the covering variety, `N' ⊆ N`.
    pub source_lattice: SublatticeBasis,
    #[serde(with = "int")]
    pub degree: BigInt,
}

impl Isogeny {
    pub fn new(fan: Fan, target: SublatticeBasis, source: SublatticeBasis) -> Result<Self> {
        if target.ambient_rank != fan.rank || source.ambient_rank != fan.rank {
            return Err(Error::DimensionMismatch {
                expected: fan.rank,
                found: source.ambient_rank,
            });
        }
        let target = target.canonical();
        let source = source.canonical();
        let rel = source.relative_to(&target)?.ok_or_else(|| {
            Error::InvalidMatrix("source lattice is not contained in the target lattice".into())
        })?;
        let degree = SublatticeBasis::new(rel.cols(), rel)?.index()?;
        Ok(Isogeny {
            fan,
            target_lattice: target,
            source_lattice: source,
            degree,
        })
    }

    /// Isogeny of the standard lattice onto itself.
    pub fn identity(fan: Fan) -> Self {
        let n = fan.rank;
        Isogeny::new(
            fan,
            SublatticeBasis::standard(n),
            SublatticeBasis::standard(n),
        )
        .expect("identity isogeny")
    }

    /// Isogeny `(N', Δ) → (Z^n, Δ)`.
    pub fn over_standard(fan: Fan, source: SublatticeBasis) -> Result<Self> {
        let n = fan.rank;
        Isogeny::new(fan, SublatticeBasis::standard(n), source)
    }

    /// Source basis in target coordinates.
    pub fn relative_basis(&self) -> IntegerMatrix {
        self.source_lattice
            .relative_to(&self.target_lattice)
            .expect("dimensions checked")
            .expect("containment checked")
    }

    /// Smallest `r` with `r N ⊆ N'`.
    pub fn exponent(&self) -> BigInt {
        let snf = smith_normal_form(&self.relative_basis());
        snf.diagonal.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_identity(&self) -> bool {
        self.degree.is_one()
    }
}

/// Coordinates of the lattice-primitive generator of the ray through `v`
/// with respect to the canonical basis of `lattice`.
pub fn primitive_in(lattice: &SublatticeBasis, v: &[BigInt]) -> Vec<BigInt> {
    let basis: Vec<Vec<Rational>> = lattice
        .canonical()
        .basis
        .to_rows()
        .iter()
        .map(|r| rvec(r))
        .collect();
    let coords = solve_row_combination(&basis, &rvec(v)).expect("full-rank lattice spans v");
    primitive_direction(&coords).expect("nonzero ray")
}

/// Whether the cone is smooth with respect to `lattice`.
pub fn is_smooth_in(fan: &Fan, lattice: &SublatticeBasis, cone: &[usize]) -> bool {
    if cone.is_empty() {
        return true;
    }
    let rows: Vec<Vec<BigInt>> = cone
        .iter()
        .map(|&i| primitive_in(lattice, &fan.rays[i]))
        .collect();
    let m = IntegerMatrix::from_rows(&rows, fan.rank).unwrap();
    smith_normal_form(&m).diagonal.iter().all(|d| d.is_one())
}

/// The reverse isogeny `(rN, Δ) → (N', Δ)` with `r` the exponent of `N/N'`.
pub fn reverse_isogeny(iso: &Isogeny) -> Isogeny {
    let r = iso.exponent();
    let source = iso.target_lattice.scaled(&r);
    Isogeny::new(iso.fan.clone(), iso.source_lattice.clone(), source)
        .expect("r N lies in N' by choice of r")
}

/// Isogeny onto `(Z^n, Δ)` in which the cone `sigma` becomes smooth.
pub fn smoothing_isogeny(fan: &Fan, sigma: &[usize]) -> Result<Isogeny> {
    smoothing_isogeny_over(fan, &SublatticeBasis::standard(fan.rank), sigma)
}

/// As [`smoothing_isogeny`], over an arbitrary base lattice.
///
/// `N'` is spanned by the primitive generators of `sigma` together with a
/// complement of the saturated span of `sigma`; when `sigma` is
/// full-dimensional this is exactly the lattice the generators span.
pub fn smoothing_isogeny_over(
    fan: &Fan,
    base: &SublatticeBasis,
    sigma: &[usize],
) -> Result<Isogeny> {
    if let Some(c) = fan.max_cones.iter().find(|c| fan.cone_dim(c) != c.len()) {
        return Err(Error::NotSimplicial(c.clone()));
    }
    debug_assert!(is_simplicial(fan));
    let sigma = require_cone(fan, sigma)?;
    let n = fan.rank;
    let base = base.canonical();
    let gens: Vec<Vec<BigInt>> = sigma
        .iter()
        .map(|&i| primitive_in(&base, &fan.rays[i]))
        .collect();
    let mut rows = gens.clone();
    if gens.len() < n {
        let g = IntegerMatrix::from_rows(&gens, n)?;
        let (sat, fallback) = saturation_with_complement(&g);
        rows.extend(standard_complement(&sat, n).unwrap_or(fallback));
    }
    // back to reference coordinates
    let b = &base.basis;
    let source_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| b.left_apply(r)).collect();
    let source = SublatticeBasis::from_rows(n, &source_rows)?;
    Isogeny::new(fan.clone(), base, source)
}

/// Unit vectors on the non-pivot columns of the saturated basis, when they
/// complete it to a basis of `Z^n`.
fn standard_complement(sat: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(sat, n).ok()?);
    let pivots: Vec<usize> = h
        .to_rows()
        .iter()
        .filter_map(|r| r.iter().position(|x| !x.is_zero()))
        .collect();
    let comp: Vec<Vec<BigInt>> = (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|j| (0..n).map(|k| BigInt::from(u8::from(k == j))).collect())
        .collect();
    let mut all = sat.to_vec();
    all.extend(comp.iter().cloned());
    let det = IntegerMatrix::from_rows(&all, n).ok()?.determinant().ok()?;
    det.abs().is_one().then_some(comp)
}

/// The fan `Δ` written in coordinates of the source lattice `N'`.
pub fn pullback_fan(iso: &Isogeny) -> Fan {
    let rays = iso
        .fan
        .rays
        .iter()
        .map(|r| primitive_in(&iso.source_lattice, r))
        .collect();
    Fan::new(iso.fan.rank, rays, iso.fan.max_cones.clone())
}

/// Orbits of the base variety paired with orbits of the cover, cone by cone.
pub fn orbit_bijection(iso: &Isogeny) -> Vec<(OrbitDescriptor, OrbitDescriptor)> {
    let cover = pullback_fan(iso);
    let base = base_fan(iso);
    let below = list_orbits(&base);
    let above = list_orbits(&cover);
    below
        .into_iter()
        .map(|o| {
            let partner = above
                .iter()
                .find(|p| p.cone == o.cone)
                .cloned()
                .expect("same cone combinatorics on both sides");
            (o, partner)
        })
        .collect()
}

/// The fan `Δ` in coordinates of the target lattice `N`.
pub fn base_fan(iso: &Isogeny) -> Fan {
    let rays = iso
        .fan
        .rays
        .iter()
        .map(|r| primitive_in(&iso.target_lattice, r))
        .collect();
    Fan::new(iso.fan.rank, rays, iso.fan.max_cones.clone())
}

/// Composable sequence of isogenies: each step's target is the previous step's source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyChain {
    pub steps: Vec<Isogeny>,
    #[serde(with = "int")]
    pub composite_index: BigInt,
}

impl IsogenyChain {
    pub fn new(steps: Vec<Isogeny>) -> Result<Self> {
        for i in 1..steps.len() {
            if !steps[i]
                .target_lattice
                .same_lattice(&steps[i - 1].source_lattice)
                || steps[i].fan != steps[i - 1].fan
            {
                return Err(Error::NotComposable(i));
            }
        }
        let composite_index = steps.iter().map(|s| s.degree.clone()).product();
        Ok(IsogenyChain {
            steps,
            composite_index,
        })
    }
}

/// Collapses a chain into a single isogeny from the last source to the first target.
pub fn compose(chain: &IsogenyChain) -> Result<Isogeny> {
    let checked = IsogenyChain::new(chain.steps.clone())?;
    let (Some(first), Some(last)) = (checked.steps.first(), checked.steps.last()) else {
        return Err(Error::NotComposable(0));
    };
    let iso = Isogeny::new(
        first.fan.clone(),
        first.target_lattice.clone(),
        last.source_lattice.clone(),
    )?;
    if iso.degree != checked.composite_index {
        return Err(Error::Internal("degree is not multiplicative".into()));
    }
    Ok(iso)
}
