//! Proof scaffolds for curves through points avoiding a codimension-two
//! locus. Every constructive step is recorded with enough data to replay it;
//! deformation-theoretic steps are recorded as citations.

use crate::citations::{many_point_citations, two_point_citations, Citation, StepStatus};
use crate::curve::{
    interpolate_avoiding, points_equal, validate_point, wp_cover_weights, AvoidanceReport,
    CoxCurve, Ideal, Param, PointSpec,
};
use crate::error::{Error, Result};
use crate::fan::{codim2_orbits, is_complete, Fan, OrbitDescriptor};
use crate::isogeny::{is_smooth_in, pullback_fan, smoothing_isogeny_over, Isogeny, IsogenyChain};
use crate::lattice::SublatticeBasis;
use crate::refine::{qfactorialize, replay, resolve_marked, Refinement, SubdivisionStep};
use serde::{Deserialize, Serialize};

/// The locus `S` a curve has to avoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocusSpec {
    /// All orbits of codimension at least two.
    InvariantLocus,
    /// Union of the closures of the orbits of the given cones.
    Orbits { cones: Vec<Vec<usize>> },
    /// Union of the zero sets of the given ideals.
    Ideals { components: Vec<Ideal> },
}

/// One entry of the plan's step list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub step: String,
    pub status: StepStatus,
}

fn verified(step: &str) -> PlanEntry {
    PlanEntry {
        step: step.to_string(),
        status: StepStatus::Verified,
    }
}

/// One induction stage: the orbit handled, the closed set `Z` of orbits
/// already avoided, and the isogeny making the orbit's chart smooth (absent
/// when it is smooth in the current lattice).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub orbit: OrbitDescriptor,
    pub z_set: Vec<Vec<usize>>,
    pub isogeny: Option<Isogeny>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidancePlan {
    pub fan: Fan,
    pub points: Vec<PointSpec>,
    pub locus: LocusSpec,
    pub qfactorialization: Vec<SubdivisionStep>,
    pub simplicial_fan: Fan,
    pub reduction: Option<String>,
    /// Codimension ≥ 2 orbits of the simplicial fan, largest first.
    pub orbits: Vec<OrbitDescriptor>,
    /// Innermost orbit first.
    pub stages: Vec<Stage>,
    pub isogeny_chain: IsogenyChain,
    pub resolution: Option<Refinement>,
    pub entries: Vec<PlanEntry>,
    pub citations: Vec<Citation>,
    pub notes: Vec<String>,
}

fn check_points(fan: &Fan, points: &[PointSpec]) -> Result<()> {
    for p in points {
        validate_point(fan, p)?;
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points_equal(fan, &points[i], &points[j])? {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(())
}

/// Maximal cones whose fixed point is one of the points and is singular.
fn singular_fixed_points(fan: &Fan, points: &[PointSpec]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in points {
        let c = &p.vanishing_pattern;
        if fan.max_cones.contains(c)
            && fan.cone_dim(c) == fan.rank
            && !fan.is_smooth_at(c)
            && !out.contains(c)
        {
            out.push(c.clone());
        }
    }
    out
}

fn take_citations(resolution: &mut Option<Refinement>, citations: &mut Vec<Citation>) {
    if let Some(r) = resolution {
        for c in r.citations.drain(..) {
            if !citations.iter().any(|x| x.anchor == c.anchor) {
                citations.push(c);
            }
        }
    }
}

/// Scaffold for a weakly free curve through `p` and `q` avoiding `s`.
pub fn main_lemma_plan(
    fan: &Fan,
    p: &PointSpec,
    q: &PointSpec,
    s: &LocusSpec,
) -> Result<AvoidancePlan> {
    if !is_complete(fan)? {
        return Err(Error::NotComplete);
    }
    let points = vec![p.clone(), q.clone()];
    check_points(fan, &points)?;
    if let LocusSpec::Orbits { cones } = s {
        for c in cones {
            crate::fan::require_cone(fan, c)?;
        }
    }
    let qf = qfactorialize(fan)?;
    let simplicial = qf.fan.clone();
    let reduction = match s {
        LocusSpec::InvariantLocus => None,
        LocusSpec::Orbits { .. } => Some(
            "S is a union of invariant orbit closures of codimension at least two, hence contained in I(X); avoiding I(X) suffices"
                .to_string(),
        ),
        LocusSpec::Ideals { .. } => Some(
            "the part of S off I(X) is avoided by moving the curve within the smooth locus; the plan continues with S = I(X)"
                .to_string(),
        ),
    };
    let orbits = codim2_orbits(&simplicial);
    let mut stages = Vec::new();
    let mut lattice = SublatticeBasis::standard(fan.rank);
    let mut chain = Vec::new();
    for k in (0..orbits.len()).rev() {
        let orbit = orbits[k].clone();
        let z_set = orbits[k + 1..].iter().map(|o| o.cone.clone()).collect();
        let isogeny = if is_smooth_in(&simplicial, &lattice, &orbit.cone) {
            None
        } else {
            let iso = smoothing_isogeny_over(&simplicial, &lattice, &orbit.cone)?;
            lattice = iso.source_lattice.clone();
            chain.push(iso.clone());
            Some(iso)
        };
        stages.push(Stage {
            orbit,
            z_set,
            isogeny,
        });
    }
    let isogeny_chain = IsogenyChain::new(chain)?;
    let marked = singular_fixed_points(fan, &points);
    let mut resolution = if marked.is_empty() {
        None
    } else {
        Some(resolve_marked(fan, &marked)?)
    };
    let mut citations = two_point_citations();
    take_citations(&mut resolution, &mut citations);
    let mut entries = vec![
        verified("q-factorialization"),
        verified("orbit ordering"),
        verified("smoothing isogenies"),
    ];
    if resolution.is_some() {
        entries.push(verified("resolution of marked fixed points"));
    }
    entries.extend(citations.iter().map(|c| PlanEntry {
        step: c.step.clone(),
        status: c.status,
    }));
    let mut notes = Vec::new();
    if stages
        .iter()
        .any(|st| st.isogeny.is_some() && simplicial.cone_dim(&st.orbit.cone) < fan.rank)
    {
        notes.push(
            "smoothing lattices of non-maximal cones are completed by a complement of the saturated span"
                .to_string(),
        );
    }
    Ok(AvoidancePlan {
        fan: fan.clone(),
        points,
        locus: s.clone(),
        qfactorialization: qf.steps,
        simplicial_fan: simplicial,
        reduction,
        orbits,
        stages,
        isogeny_chain,
        resolution,
        entries,
        citations,
        notes,
    })
}

/// Result of re-running every effective claim of a plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanCheck {
    pub replay_matches: bool,
    pub suffixes_closed: bool,
    pub stages_smooth: bool,
    pub chain_composable: bool,
    pub resolution_smooth: bool,
    pub citations_unique: bool,
}

impl PlanCheck {
    pub fn passed(&self) -> bool {
        self.replay_matches
            && self.suffixes_closed
            && self.stages_smooth
            && self.chain_composable
            && self.resolution_smooth
            && self.citations_unique
    }
}

pub fn check_plan(plan: &AvoidancePlan) -> Result<PlanCheck> {
    let replay_matches = replay(&plan.fan, &plan.qfactorialization)? == plan.simplicial_fan;
    let f = &plan.simplicial_fan;
    let suffixes_closed = (0..plan.orbits.len()).all(|k| {
        let suffix: Vec<&Vec<usize>> = plan.orbits[k..].iter().map(|o| &o.cone).collect();
        suffix.iter().all(|c| {
            f.all_cones()
                .iter()
                .filter(|d| c.iter().all(|i| d.contains(i)))
                .all(|d| suffix.contains(&d))
        })
    });
    let stages_smooth = plan.stages.iter().all(|st| match &st.isogeny {
        None => true,
        Some(iso) => pullback_fan(iso).is_smooth_at(&st.orbit.cone),
    });
    let chain_composable = IsogenyChain::new(plan.isogeny_chain.steps.clone()).is_ok();
    let resolution_smooth = plan.resolution.as_ref().is_none_or(|r| r.fan.is_smooth());
    let mut anchors: Vec<&str> = plan.citations.iter().map(|c| c.anchor.as_str()).collect();
    anchors.sort_unstable();
    let before = anchors.len();
    anchors.dedup();
    Ok(PlanCheck {
        replay_matches,
        suffixes_closed,
        stages_smooth,
        chain_composable,
        resolution_smooth,
        citations_unique: before == anchors.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Smooth,
    SingularFixed,
}

/// A tooth of the comb: a curve through one point, attached to the central
/// curve at the symbolic parameter `attachment`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub point: usize,
    pub kind: PointKind,
    pub attachment: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comb {
    pub central: String,
    pub branches: Vec<Branch>,
}

/// A curve produced and checked while building a plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedCurve {
    pub curve: CoxCurve,
    pub params: Vec<Param>,
    pub degree: usize,
    pub seed: u64,
    pub report: AvoidanceReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremPlan {
    pub fan: Fan,
    pub points: Vec<PointSpec>,
    pub locus: Vec<Ideal>,
    pub kinds: Vec<PointKind>,
    pub comb: Comb,
    pub resolution: Option<Refinement>,
    pub curve: Option<VerifiedCurve>,
    pub entries: Vec<PlanEntry>,
    pub citations: Vec<Citation>,
}

/// Options for the constructive curve attached on ℙⁿ and rank-one targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveOptions {
    pub degree: Option<usize>,
    pub seed: u64,
}

/// Distinct parameters `(1:0), (0:1), (1:1), (1:2), …`.
pub fn default_params(r: usize) -> Vec<Param> {
    (0..r)
        .map(|i| match i {
            0 => Param::from_i64(1, 0),
            1 => Param::from_i64(0, 1),
            _ => Param::from_i64(1, i as i64 - 1),
        })
        .collect()
}

/// Scaffold for a curve through many points avoiding `s` away from them.
pub fn main_theorem_plan(
    fan: &Fan,
    points: &[PointSpec],
    s: &[Ideal],
    options: &CurveOptions,
) -> Result<TheoremPlan> {
    if !is_complete(fan)? {
        return Err(Error::NotComplete);
    }
    check_points(fan, points)?;
    let mut kinds = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let c = &p.vanishing_pattern;
        if fan.is_smooth_at(c) {
            kinds.push(PointKind::Smooth);
        } else if fan.cone_dim(c) == fan.rank {
            kinds.push(PointKind::SingularFixed);
        } else {
            return Err(Error::ToroidalizationOutOfScope(i));
        }
    }
    let comb = Comb {
        central: "C_0".to_string(),
        branches: kinds
            .iter()
            .enumerate()
            .map(|(i, &kind)| Branch {
                point: i,
                kind,
                attachment: format!("t_{}", i + 1),
            })
            .collect(),
    };
    let marked = singular_fixed_points(fan, points);
    let mut resolution = if marked.is_empty() {
        None
    } else {
        Some(resolve_marked(fan, &marked)?)
    };
    let mut citations = many_point_citations();
    take_citations(&mut resolution, &mut citations);
    let curve = if wp_cover_weights(fan).is_ok() {
        let params = default_params(points.len());
        let degree = options.degree.unwrap_or(points.len().max(1));
        let (curve, report) = interpolate_avoiding(fan, points, &params, s, degree, options.seed)?;
        Some(VerifiedCurve {
            curve,
            params,
            degree,
            seed: options.seed,
            report,
        })
    } else {
        None
    };
    let mut entries = vec![verified("point classification"), verified("comb blueprint")];
    if resolution.is_some() {
        entries.push(verified("resolution of marked fixed points"));
    }
    if curve.is_some() {
        entries.push(verified("interpolating curve avoiding S"));
    }
    entries.extend(citations.iter().map(|c| PlanEntry {
        step: c.step.clone(),
        status: c.status,
    }));
    Ok(TheoremPlan {
        fan: fan.clone(),
        points: points.to_vec(),
        locus: s.to_vec(),
        kinds,
        comb,
        resolution,
        curve,
        entries,
        citations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::citations::DIVISORIAL_GENERAL_MEMBER;
    use crate::curve::Verdict;
    use crate::fan::examples::*;
    use crate::numbers::{int, rat};

    #[test]
    fn lemma_on_p121() {
        let f = p121();
        let plan = main_lemma_plan(
            &f,
            &PointSpec::from_ints(&[1, 1, 1]),
            &PointSpec::from_ints(&[1, 2, 3]),
            &LocusSpec::InvariantLocus,
        )
        .unwrap();
        assert!(plan.qfactorialization.is_empty());
        assert_eq!(plan.orbits.len(), 3);
        assert_eq!(plan.isogeny_chain.steps.len(), 1);
        assert_eq!(plan.isogeny_chain.steps[0].degree, int(2));
        assert_eq!(plan.citations.len(), 3);
        assert!(plan.resolution.is_none());
        assert!(check_plan(&plan).unwrap().passed());
        let again = main_lemma_plan(
            &f,
            &PointSpec::from_ints(&[1, 1, 1]),
            &PointSpec::from_ints(&[1, 2, 3]),
            &LocusSpec::InvariantLocus,
        )
        .unwrap();
        assert_eq!(plan, again);
    }

    #[test]
    fn lemma_on_smooth_and_cube() {
        let plan = main_lemma_plan(
            &projective_plane(),
            &PointSpec::from_ints(&[1, 1, 1]),
            &PointSpec::from_ints(&[1, 0, 2]),
            &LocusSpec::InvariantLocus,
        )
        .unwrap();
        assert!(plan.isogeny_chain.steps.is_empty());
        assert!(check_plan(&plan).unwrap().passed());

        let plan = main_lemma_plan(
            &cube(),
            &PointSpec::from_ints(&[1; 8]),
            &PointSpec::from_ints(&[1, 2, 1, 1, 1, 1, 1, 1]),
            &LocusSpec::Orbits {
                cones: vec![vec![0, 1]],
            },
        )
        .unwrap();
        assert_eq!(plan.qfactorialization.len(), 6);
        assert!(plan.reduction.is_some());
        assert!(check_plan(&plan).unwrap().passed());

        assert!(matches!(
            main_lemma_plan(
                &projective_plane(),
                &PointSpec::from_ints(&[1, 1, 1]),
                &PointSpec::from_ints(&[2, 2, 2]),
                &LocusSpec::InvariantLocus
            ),
            Err(Error::DuplicatePoints(0, 1))
        ));
    }

    #[test]
    fn lemma_marks_singular_fixed_points() {
        let plan = main_lemma_plan(
            &p121(),
            &PointSpec::from_ints(&[0, 1, 0]),
            &PointSpec::from_ints(&[1, 1, 1]),
            &LocusSpec::InvariantLocus,
        )
        .unwrap();
        let r = plan.resolution.as_ref().unwrap();
        assert!(r.citations.is_empty());
        assert_eq!(plan.citations.len(), 4);
        assert!(plan
            .citations
            .iter()
            .any(|c| c.anchor == DIVISORIAL_GENERAL_MEMBER));
    }

    #[test]
    fn theorem_examples() {
        let p3 = projective_space(3);
        let pts = [
            PointSpec::from_ints(&[1, 0, 0, 0]),
            PointSpec::from_ints(&[0, 1, 0, 0]),
            PointSpec::from_ints(&[1, 1, 1, 1]),
        ];
        let line = Ideal::linear(
            "L",
            &[
                vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(-2, 1)],
                vec![rat(0, 1), rat(1, 1), rat(3, 1), rat(0, 1)],
            ],
        );
        let opts = CurveOptions {
            degree: None,
            seed: 1,
        };
        let plan = main_theorem_plan(&p3, &pts, &[line], &opts).unwrap();
        let c = plan.curve.as_ref().unwrap();
        assert_eq!(c.report.verdict, Verdict::Disjoint);
        assert_eq!(plan.comb.branches.len(), 3);

        let plan = main_theorem_plan(
            &p121(),
            &[
                PointSpec::from_ints(&[0, 1, 0]),
                PointSpec::from_ints(&[1, 1, 1]),
            ],
            &[],
            &opts,
        )
        .unwrap();
        assert_eq!(
            plan.kinds,
            vec![PointKind::SingularFixed, PointKind::Smooth]
        );
        assert!(plan.resolution.is_some());

        let plan = main_theorem_plan(
            &projective_plane(),
            &[],
            &[Ideal::coordinate("P", &[0, 1])],
            &opts,
        )
        .unwrap();
        assert!(plan.comb.branches.is_empty());
        assert_eq!(plan.curve.unwrap().report.verdict, Verdict::Disjoint);

        // ℙ(1,1,2,2): the line x0 = x1 = 0 is singular
        let weighted = Fan::from_i64(
            3,
            &[&[-1, -2, -2], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        );
        assert!(matches!(
            main_theorem_plan(
                &weighted,
                &[PointSpec::from_ints(&[0, 0, 1, 1])],
                &[],
                &opts
            ),
            Err(Error::ToroidalizationOutOfScope(0))
        ));
    }
}
