//! Proof steps that have no effective content and are therefore recorded,
//! not checked. Every plan carries each applicable entry exactly once.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Citation {
    /// Stable anchor identifying the step.
    pub anchor: String,
    /// Which part of the argument relies on it.
    pub step: String,
    pub statement: String,
    /// External literature backing the step, if any.
    pub reference: Option<String>,
    pub status: StepStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Verified,
    Cited,
}

fn cited(anchor: &str, step: &str, statement: &str, reference: Option<&str>) -> Citation {
    Citation {
        anchor: anchor.to_string(),
        step: step.to_string(),
        statement: statement.to_string(),
        reference: reference.map(str::to_string),
        status: StepStatus::Cited,
    }
}

pub const GENERAL_DEFORMATION_INCIDENCE: &str = "general-deformation-incidence";
pub const MOVE_OFF_SMOOTH_LOCUS: &str = "move-off-smooth-locus";
pub const IMAGE_OF_WEAKLY_FREE: &str = "image-of-weakly-free-curve";
pub const DIVISORIAL_GENERAL_MEMBER: &str = "divisorial-general-member";
pub const COMB_SMOOTHING: &str = "comb-smoothing";
pub const FREE_THROUGH_SMOOTH_POINTS: &str = "free-through-smooth-points";
pub const FREE_CURVE_AVOIDS_CODIM_TWO: &str = "free-curve-avoids-codim-two";
pub const WEAKLY_FREE_THROUGH_SINGULAR_POINTS: &str = "weakly-free-through-singular-points";

/// Deformation steps of the two-point avoidance argument, one per lemma used.
pub fn two_point_citations() -> Vec<Citation> {
    vec![
        cited(
            GENERAL_DEFORMATION_INCIDENCE,
            "orbit ordering",
            "a general member of a weakly free family meets some of finitely many proper subvarieties and misses the rest",
            None,
        ),
        cited(
            MOVE_OFF_SMOOTH_LOCUS,
            "reduction to I(X) and induction on orbits",
            "a sufficiently general weakly free curve through two points can be deformed off a codimension-two set away from the singular locus, keeping any set it already misses",
            Some("Kollár, Rational Curves on Algebraic Varieties, II.3.7 and II.3.11"),
        ),
        cited(
            IMAGE_OF_WEAKLY_FREE,
            "transfer along Q-factorialization and isogenies",
            "the image of a weakly free curve under a dominant morphism is weakly free for a general member of its family",
            None,
        ),
    ]
}

/// Curve-dependent condition of the special resolution: general members of
/// the family meet the exceptional locus only in divisorial points.
pub fn divisorial_general_member() -> Citation {
    cited(
        DIVISORIAL_GENERAL_MEMBER,
        "special resolution",
        "a sufficiently general member of the lifted family meets the preimage of the invariant locus only at divisorial points over the marked points",
        None,
    )
}

/// Deformation steps of the many-point construction.
pub fn many_point_citations() -> Vec<Citation> {
    vec![
        cited(
            WEAKLY_FREE_THROUGH_SINGULAR_POINTS,
            "branches through singular points",
            "each singular marked point is reached by a weakly free curve from the two-point argument",
            None,
        ),
        cited(
            FREE_THROUGH_SMOOTH_POINTS,
            "branches through smooth points",
            "a weakly free curve on the resolution whose general deformation is free",
            Some("Kollár, Rational Curves on Algebraic Varieties, II.3.11"),
        ),
        cited(
            COMB_SMOOTHING,
            "smoothing the comb",
            "a comb of free rational curves with enough teeth smooths to a free curve keeping the attachment points",
            Some("Kollár, Rational Curves on Algebraic Varieties, II.7.6"),
        ),
        cited(
            FREE_CURVE_AVOIDS_CODIM_TWO,
            "avoiding S",
            "a general deformation of a free curve through fixed points misses a given codimension-two set away from those points",
            Some("Kollár, Rational Curves on Algebraic Varieties, II.3.7"),
        ),
    ]
}
