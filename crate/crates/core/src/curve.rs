//! Rational curves `ℙ¹ → X` written in Cox coordinates: class-group
//! gradings, interpolation through points, and exact avoidance checks
//! against invariant or user-given loci.

use crate::error::{Error, Result};
use crate::fan::{is_complete, is_simplicial, primitive_collections, Fan};
use crate::lattice::{
    hermite_normal_form, integer_kernel, smith_normal_form, unimodular_inverse, IntegerMatrix,
};
use crate::linalg::rank;
use crate::numbers::{fmt_rational, int_rows, int_vec, parse_rational, rat, rat_vec, Rational};
use crate::poly::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Default seed when neither the caller nor the environment supplies one.
pub const DEFAULT_SEED: u64 = 0x5EED_0FC0_FFEE;
/// Attempts allowed for generic draws before giving up.
pub const RETRY_BUDGET: usize = 8;

/// Seed for the `attempt`-th draw of a stream.
pub fn derive_seed(seed: u64, attempt: usize) -> u64 {
    seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// A point `(s:t)` of `ℙ¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub s: Rational,
    pub t: Rational,
}

impl Param {
    pub fn new(s: Rational, t: Rational) -> Result<Self> {
        if s.is_zero() && t.is_zero() {
            return Err(Error::InvalidParameter("(0:0) is not a point".into()));
        }
        Ok(Param { s, t })
    }

    pub fn from_i64(s: i64, t: i64) -> Self {
        Param::new(rat(s, 1), rat(t, 1)).expect("nonzero parameter")
    }

    pub fn same_point(&self, o: &Param) -> bool {
        &self.s * &o.t == &self.t * &o.s
    }

    /// Coprime integer representative with the first nonzero entry positive.
    pub fn normalized(&self) -> Param {
        let den = self.s.denom().lcm(self.t.denom());
        let a = (&self.s * Rational::from_integer(den.clone())).to_integer();
        let b = (&self.t * Rational::from_integer(den)).to_integer();
        let mut g = a.gcd(&b);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            g = -g;
        }
        Param {
            s: Rational::from_integer(a / &g),
            t: Rational::from_integer(b / &g),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("parameter {text:?} is not of the form s:t")))?;
        let s = parse_rational(a.trim()).map_err(Error::Parse)?;
        let t = parse_rational(b.trim()).map_err(Error::Parse)?;
        Param::new(s, t)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", fmt_rational(&self.s), fmt_rational(&self.t))
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Param::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// `Σ c_k s^{D-k} t^k`. The zero form carries no degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: Option<usize>,
    coefficients: Vec<Rational>,
}

impl BinaryForm {
    /// Form of degree `coefficients.len() - 1`; all-zero input gives the zero
    /// form.
    pub fn new(coefficients: Vec<Rational>) -> Self {
        if coefficients.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        BinaryForm {
            degree: Some(coefficients.len() - 1),
            coefficients,
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    pub fn zero() -> Self {
        BinaryForm {
            degree: None,
            coefficients: Vec::new(),
        }
    }

    pub fn s() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `t_p s - s_p t`, vanishing exactly at `p`.
    pub fn vanishing_at(p: &Param) -> Self {
        Self::new(vec![p.t.clone(), -p.s.clone()])
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == Some(0)
    }

    pub fn eval(&self, p: &Param) -> Rational {
        let Some(d) = self.degree else {
            return Rational::zero();
        };
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * Pow::pow(&p.s, (d - k) as u32) * Pow::pow(&p.t, k as u32))
            .sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + o.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in o.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_ints(&[1]), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// Sum of two forms of the same degree (zero forms are neutral).
    pub fn add(&self, o: &Self) -> Result<Self> {
        match (self.degree, o.degree) {
            (None, _) => Ok(o.clone()),
            (_, None) => Ok(self.clone()),
            (Some(a), Some(b)) if a == b => Ok(Self::new(
                self.coefficients
                    .iter()
                    .zip(&o.coefficients)
                    .map(|(x, y)| x + y)
                    .collect(),
            )),
            (Some(a), Some(b)) => Err(Error::InvalidCurve(format!(
                "adding forms of degrees {a} and {b}"
            ))),
        }
    }

    /// Dehomogenization at `s = 1`, as a polynomial in `x = t/s`.
    pub fn dehomogenize(&self) -> QPoly {
        QPoly::new(self.coefficients.clone())
    }

    /// Multiplicity of the root `(0:1)`, i.e. the power of `s` dividing the
    /// form.
    pub fn s_multiplicity(&self) -> usize {
        match self.degree {
            None => 0,
            Some(d) => d - self.dehomogenize().degree().unwrap_or(0),
        }
    }

    fn from_poly(p: &QPoly, s_power: usize) -> Self {
        let mut c = p.coeffs().to_vec();
        c.extend(std::iter::repeat_n(Rational::zero(), s_power));
        Self::new(c)
    }

    /// Monic-normalized gcd of the nonzero forms; `None` if all are zero.
    pub fn gcd(forms: &[BinaryForm]) -> Option<BinaryForm> {
        let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
        if nonzero.is_empty() {
            return None;
        }
        let p = nonzero
            .iter()
            .fold(QPoly::zero(), |g, f| g.gcd(&f.dehomogenize()));
        let s = nonzero.iter().map(|f| f.s_multiplicity()).min().unwrap();
        Some(Self::from_poly(&p, s))
    }

    /// Irreducible factors over ℚ with multiplicities; the factor `s`
    /// accounts for the root `(0:1)`.
    pub fn factor(&self) -> Vec<(Vec<BigInt>, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let a = self.s_multiplicity();
        if a > 0 {
            out.push((vec![BigInt::one(), BigInt::zero()], a));
        }
        out.extend(self.dehomogenize().factor().1);
        out
    }
}

/// Rational root of a linear binary factor `g0 s + g1 t`.
pub fn linear_root(factor: &[BigInt]) -> Option<Param> {
    if factor.len() != 2 {
        return None;
    }
    Param::new(
        Rational::from_integer(factor[1].clone()),
        Rational::from_integer(-factor[0].clone()),
    )
    .ok()
    .map(|p| p.normalized())
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DegreeMarker {
    Degree(usize),
    Zero(String),
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: DegreeMarker,
    #[serde(with = "rat_vec")]
    coefficients: Vec<Rational>,
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let degree = match self.degree {
            Some(d) => DegreeMarker::Degree(d),
            None => DegreeMarker::Zero("zero".into()),
        };
        FormRepr {
            degree,
            coefficients: self.coefficients.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = FormRepr::deserialize(d)?;
        match r.degree {
            DegreeMarker::Zero(z) if z == "zero" => Ok(BinaryForm::zero()),
            DegreeMarker::Zero(z) => Err(D::Error::custom(format!("unknown degree marker {z:?}"))),
            DegreeMarker::Degree(deg) => {
                if r.coefficients.len() != deg + 1 {
                    return Err(D::Error::custom(format!(
                        "degree {deg} form needs {} coefficients, got {}",
                        deg + 1,
                        r.coefficients.len()
                    )));
                }
                let f = BinaryForm::new(r.coefficients);
                if f.is_zero() {
                    return Err(D::Error::custom("nonzero degree marker on a zero form"));
                }
                Ok(f)
            }
        }
    }
}

/// `Cl(X)` as `ℤ^free_rank ⊕ ⊕ ℤ/torsion_i` with the class of each `D_ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGrading {
    pub free_rank: usize,
    #[serde(with = "int_vec")]
    pub torsion: Vec<BigInt>,
    /// Per ray, the free coordinates of its class.
    #[serde(with = "int_rows")]
    pub free_degrees: Vec<Vec<BigInt>>,
    /// Per ray, its class in each torsion factor.
    #[serde(with = "int_rows")]
    pub torsion_degrees: Vec<Vec<BigInt>>,
}

impl ClassGrading {
    /// Class of `Σ a_ρ D_ρ`.
    pub fn class_of(&self, a: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let free = (0..self.free_rank)
            .map(|k| {
                a.iter()
                    .zip(&self.free_degrees)
                    .map(|(x, d)| x * &d[k])
                    .sum()
            })
            .collect();
        let tors = self
            .torsion
            .iter()
            .enumerate()
            .map(|(k, m)| {
                a.iter()
                    .zip(&self.torsion_degrees)
                    .map(|(x, d)| x * &d[k])
                    .sum::<BigInt>()
                    .mod_floor(m)
            })
            .collect();
        (free, tors)
    }
}

/// Class group of a complete fan: free part from the integer relations among
/// the rays (Hermite-reduced), torsion from the Smith form of the ray matrix.
pub fn class_grading(fan: &Fan) -> ClassGrading {
    let n = fan.rays.len();
    let r = fan.ray_matrix();
    let relations = integer_kernel(&r.transpose());
    let free_rows: Vec<Vec<BigInt>> = if relations.is_empty() {
        Vec::new()
    } else {
        let k = IntegerMatrix::from_rows(&relations, n).expect("relation width");
        let (h, _) = hermite_normal_form(&k);
        h.to_rows()
            .into_iter()
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect()
    };
    let free_degrees: Vec<Vec<BigInt>> = (0..n)
        .map(|rho| free_rows.iter().map(|row| row[rho].clone()).collect())
        .collect();
    let snf = smith_normal_form(&r);
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate() {
        if d > &BigInt::one() {
            torsion.push(d.clone());
            torsion_rows.push(snf.left.row(i).to_vec());
        }
    }
    let torsion_degrees = (0..n)
        .map(|rho| {
            torsion_rows
                .iter()
                .zip(&torsion)
                .map(|(row, m)| row[rho].mod_floor(m))
                .collect()
        })
        .collect();
    ClassGrading {
        free_rank: free_rows.len(),
        torsion,
        free_degrees,
        torsion_degrees,
    }
}

/// Weights of the weighted projective space covering a complete simplicial
/// fan with Picard number one.
pub fn wp_cover_weights(fan: &Fan) -> Result<Vec<BigInt>> {
    if fan.rays.len() != fan.rank + 1 || !is_simplicial(fan) || !is_complete(fan)? {
        return Err(Error::NotPicardOne);
    }
    let g = class_grading(fan);
    let q: Vec<BigInt> = g.free_degrees.iter().map(|d| d[0].clone()).collect();
    if q.iter().all(|x| x.is_positive()) {
        Ok(q)
    } else if q.iter().all(|x| x.is_negative()) {
        Ok(q.into_iter().map(|x| -x).collect())
    } else {
        Err(Error::NotPicardOne)
    }
}

/// A weighted projective space `ℙ(q)` presented as a fan in `ℤ^{n+1}/ℤq`,
/// sharing Cox coordinates with the rank-one target it covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCover {
    #[serde(with = "int_vec")]
    pub weights: Vec<BigInt>,
    pub fan: Fan,
}

pub fn weighted_cover(fan: &Fan) -> Result<WeightedCover> {
    let weights = wp_cover_weights(fan)?;
    Ok(WeightedCover {
        fan: weighted_projective_fan(&weights)?,
        weights,
    })
}

/// Fan of `ℙ(q)` for positive weights with `gcd = 1`.
pub fn weighted_projective_fan(weights: &[BigInt]) -> Result<Fan> {
    let m = weights.len();
    if m < 2 || weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidParameter(
            "weights must be positive, at least two".into(),
        ));
    }
    let g = weights.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if !g.is_one() {
        return Err(Error::InvalidParameter("weights must be coprime".into()));
    }
    let q = IntegerMatrix::from_rows(&[weights.to_vec()], m)?;
    let (_, complement) = crate::lattice::saturation_with_complement(&q);
    let mut rows = vec![weights.to_vec()];
    rows.extend(complement);
    let u = IntegerMatrix::from_rows(&rows, m)?;
    let inv = unimodular_inverse(&u);
    let rays: Vec<Vec<BigInt>> = (0..m).map(|i| inv.row(i)[1..].to_vec()).collect();
    let n = m - 1;
    let cones: Vec<Vec<usize>> = (0..m)
        .map(|skip| (0..m).filter(|&i| i != skip).collect())
        .collect();
    let rays = rays
        .into_iter()
        .map(|r| crate::lattice::primitive_vector(&r))
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan::new(n, rays, cones))
}

/// A map `ℙ¹ → X` given by one form per ray. `degree_class` is the degree
/// functional on the free part of the class group: form `ρ` has degree
/// `⟨degree_class, [D_ρ]⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxCurve {
    pub target: Fan,
    pub forms: Vec<BinaryForm>,
    #[serde(with = "int_vec")]
    pub degree_class: Vec<BigInt>,
}

impl CoxCurve {
    /// Nominal degree of each coordinate form.
    pub fn form_degrees(&self, grading: &ClassGrading) -> Vec<BigInt> {
        grading
            .free_degrees
            .iter()
            .map(|d| d.iter().zip(&self.degree_class).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CurveDiagnostic {
    FormCount {
        expected: usize,
        found: usize,
    },
    DegreeMismatch {
        ray: usize,
        expected: String,
        found: Option<usize>,
    },
    CommonFactor {
        collection: Vec<usize>,
        factor: BinaryForm,
    },
    AllZero {
        collection: Vec<usize>,
    },
}

impl fmt::Display for CurveDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveDiagnostic::FormCount { expected, found } => {
                write!(f, "expected {expected} forms, found {found}")
            }
            CurveDiagnostic::DegreeMismatch {
                ray,
                expected,
                found,
            } => match found {
                Some(d) => write!(f, "form {ray} has degree {d}, expected {expected}"),
                None => write!(f, "form {ray} is zero but degree {expected} is negative"),
            },
            CurveDiagnostic::CommonFactor { collection, factor } => write!(
                f,
                "forms {collection:?} share the factor {}",
                factor
                    .coefficients()
                    .iter()
                    .map(fmt_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            CurveDiagnostic::AllZero { collection } => {
                write!(f, "forms {collection:?} all vanish identically")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveValidation {
    pub valid: bool,
    pub diagnostics: Vec<CurveDiagnostic>,
}

/// Well-definedness: degrees match the grading and the forms of every
/// primitive collection have no common root.
pub fn validate_curve(c: &CoxCurve) -> Result<CurveValidation> {
    let fan = &c.target;
    let mut diagnostics = Vec::new();
    if c.forms.len() != fan.rays.len() {
        diagnostics.push(CurveDiagnostic::FormCount {
            expected: fan.rays.len(),
            found: c.forms.len(),
        });
        return Ok(CurveValidation {
            valid: false,
            diagnostics,
        });
    }
    let grading = class_grading(fan);
    if c.degree_class.len() != grading.free_rank {
        return Err(Error::GradingMismatch(format!(
            "degree class has {} entries, class group has free rank {}",
            c.degree_class.len(),
            grading.free_rank
        )));
    }
    for (rho, (f, expected)) in c.forms.iter().zip(c.form_degrees(&grading)).enumerate() {
        let ok = match f.degree() {
            None => !expected.is_negative(),
            Some(d) => BigInt::from(d) == expected,
        };
        if !ok {
            diagnostics.push(CurveDiagnostic::DegreeMismatch {
                ray: rho,
                expected: expected.to_string(),
                found: f.degree(),
            });
        }
    }
    for pc in primitive_collections(fan)? {
        let forms: Vec<BinaryForm> = pc.iter().map(|&i| c.forms[i].clone()).collect();
        match BinaryForm::gcd(&forms) {
            None => diagnostics.push(CurveDiagnostic::AllZero { collection: pc }),
            Some(g) if !g.is_constant() => diagnostics.push(CurveDiagnostic::CommonFactor {
                collection: pc,
                factor: g,
            }),
            Some(_) => {}
        }
    }
    Ok(CurveValidation {
        valid: diagnostics.is_empty(),
        diagnostics,
    })
}

/// A point of `X` by a Cox representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSpec {
    #[serde(with = "rat_vec")]
    pub cox_coords: Vec<Rational>,
    pub vanishing_pattern: Vec<usize>,
}

impl PointSpec {
    pub fn new(cox_coords: Vec<Rational>) -> Self {
        let vanishing_pattern = cox_coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i)
            .collect();
        PointSpec {
            cox_coords,
            vanishing_pattern,
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(|x| parse_rational(x.trim()).map_err(Error::Parse))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coords))
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cox_coords.iter().map(fmt_rational).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Checks the representative: coordinate count, recorded vanishing pattern,
/// and that the pattern spans a cone (the point avoids the irrelevant locus).
pub fn validate_point(fan: &Fan, p: &PointSpec) -> Result<()> {
    if p.cox_coords.len() != fan.rays.len() {
        return Err(Error::InvalidPoint(format!(
            "{} coordinates for {} rays",
            p.cox_coords.len(),
            fan.rays.len()
        )));
    }
    if PointSpec::new(p.cox_coords.clone()).vanishing_pattern != p.vanishing_pattern {
        return Err(Error::InvalidPoint(format!(
            "vanishing pattern {:?} disagrees with coordinates {p}",
            p.vanishing_pattern
        )));
    }
    if !fan.is_cone(&p.vanishing_pattern) {
        return Err(Error::InvalidPoint(format!(
            "{p} lies in the irrelevant locus: rays {:?} span no cone",
            p.vanishing_pattern
        )));
    }
    Ok(())
}

/// Equality in `X` of two Cox representatives: same zero set, and the
/// ratio vector on the nonzero coordinates is killed by every character
/// `m` orthogonal to the vanishing rays.
pub fn points_equal(fan: &Fan, a: &PointSpec, b: &PointSpec) -> Result<bool> {
    validate_point(fan, a)?;
    validate_point(fan, b)?;
    if a.vanishing_pattern != b.vanishing_pattern {
        return Ok(false);
    }
    let zero_rows: Vec<Vec<BigInt>> = a
        .vanishing_pattern
        .iter()
        .map(|&i| fan.rays[i].clone())
        .collect();
    let characters = if zero_rows.is_empty() {
        IntegerMatrix::identity(fan.rank).to_rows()
    } else {
        integer_kernel(&IntegerMatrix::from_rows(&zero_rows, fan.rank)?)
    };
    let ratios: Vec<Option<Rational>> = a
        .cox_coords
        .iter()
        .zip(&b.cox_coords)
        .map(|(x, y)| if x.is_zero() { None } else { Some(y / x) })
        .collect();
    for m in characters {
        let mut prod = Rational::one();
        for (rho, r) in ratios.iter().enumerate() {
            let Some(r) = r else { continue };
            let e: BigInt = m.iter().zip(&fan.rays[rho]).map(|(x, y)| x * y).sum();
            prod *= rational_pow(r, &e);
        }
        if !prod.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rational_pow(r: &Rational, e: &BigInt) -> Rational {
    let k = e.abs().to_u32().expect("exponent fits in u32");
    let p = Pow::pow(r, k);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

pub fn evaluate_curve(c: &CoxCurve, p: &Param) -> Result<PointSpec> {
    let coords: Vec<Rational> = c.forms.iter().map(|f| f.eval(p)).collect();
    let point = PointSpec::new(coords);
    validate_point(&c.target, &point)
        .map_err(|e| Error::InvalidCurve(format!("image of {p} is not a point: {e}")))?;
    Ok(point)
}

/// Weights of the target's Cox coordinates: ℙⁿ gives all ones.
fn interpolation_weights(fan: &Fan) -> Result<Vec<usize>> {
    wp_cover_weights(fan)?
        .iter()
        .map(|w| {
            w.to_usize()
                .ok_or_else(|| Error::InvalidParameter("weight too large".into()))
        })
        .collect()
}

fn check_interpolation_input(
    fan: &Fan,
    points: &[PointSpec],
    params: &[Param],
    d: usize,
) -> Result<Vec<usize>> {
    let weights = interpolation_weights(fan)?;
    if points.len() != params.len() {
        return Err(Error::InvalidParameter(format!(
            "{} points but {} parameters",
            points.len(),
            params.len()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let r = points.len();
    if d + 1 < r {
        return Err(Error::DegreeTooSmall {
            degree: d,
            points: r,
        });
    }
    for p in points {
        validate_point(fan, p)?;
    }
    for i in 0..r {
        for j in i + 1..r {
            if params[i].same_point(&params[j]) {
                return Err(Error::InvalidParameter(format!(
                    "parameters {} and {} coincide",
                    params[i], params[j]
                )));
            }
            if points_equal(fan, &points[i], &points[j])? {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(weights)
}

/// One generic interpolant: `f_ρ = Σ_i x_{iρ} L_i + W·g_ρ` with Lagrange
/// forms `L_i` of degree `d·q_ρ`, `W = Π (t_i s - s_i t)` and `g_ρ` drawn
/// uniformly from integers in `[-bound, bound]`.
fn draw_interpolant(
    weights: &[usize],
    points: &[PointSpec],
    params: &[Param],
    d: usize,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Vec<BinaryForm> {
    let r = points.len();
    let w = params.iter().fold(BinaryForm::from_ints(&[1]), |acc, p| {
        acc.mul(&BinaryForm::vanishing_at(p))
    });
    weights
        .iter()
        .enumerate()
        .map(|(rho, &q)| {
            let deg = d * q;
            let mut f = BinaryForm::zero();
            for i in 0..r {
                let x = &points[i].cox_coords[rho];
                if x.is_zero() {
                    continue;
                }
                let mut l = BinaryForm::from_ints(&[1]);
                for (k, p) in params.iter().enumerate() {
                    if k != i {
                        l = l.mul(&BinaryForm::vanishing_at(p));
                    }
                }
                let pad = if params[i].s.is_zero() {
                    BinaryForm::t()
                } else {
                    BinaryForm::s()
                };
                l = l.mul(&pad.pow((deg + 1 - r) as u32));
                let value = l.eval(&params[i]);
                f = f.add(&l.scale(&(x / value))).expect("equal degrees");
            }
            if deg >= r {
                let g: Vec<Rational> = (0..=deg - r)
                    .map(|_| rat(rng.random_range(-bound..=bound), 1))
                    .collect();
                f = f.add(&w.mul(&BinaryForm::new(g))).expect("equal degrees");
            }
            f
        })
        .collect()
}

fn attempt_bound(d: usize, attempt: usize) -> i64 {
    10 * (d as i64 + 1) * (1i64 << attempt.min(20))
}

fn draw_curve(
    fan: &Fan,
    weights: &[usize],
    points: &[PointSpec],
    params: &[Param],
    d: usize,
    seed: u64,
    attempt: usize,
) -> Result<Option<CoxCurve>> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, attempt));
    let forms = draw_interpolant(
        weights,
        points,
        params,
        d,
        &mut rng,
        attempt_bound(d, attempt),
    );
    let curve = CoxCurve {
        target: fan.clone(),
        forms,
        degree_class: vec![BigInt::from(d)],
    };
    if !validate_curve(&curve)?.valid {
        return Ok(None);
    }
    for (p, x) in params.iter().zip(points) {
        if !points_equal(fan, &evaluate_curve(&curve, p)?, x)? {
            return Err(Error::Internal(format!("interpolant misses {x} at {p}")));
        }
    }
    Ok(Some(curve))
}

/// A curve of degree `d` through `points[i]` at `params[i]` on ℙⁿ or a
/// Picard-rank-one target; coordinate `ρ` of weight `q_ρ` has degree `d·q_ρ`.
pub fn interpolate_through_points(
    fan: &Fan,
    points: &[PointSpec],
    params: &[Param],
    d: usize,
    seed: u64,
) -> Result<CoxCurve> {
    let weights = check_interpolation_input(fan, points, params, d)?;
    for attempt in 0..RETRY_BUDGET {
        if let Some(c) = draw_curve(fan, &weights, points, params, d, seed, attempt)? {
            return Ok(c);
        }
    }
    Err(Error::InterpolationFailed(format!(
        "no well-defined interpolant after {RETRY_BUDGET} draws"
    )))
}

/// One term `coeff · Π x_ρ^{e_ρ}` with variables named `x0, x1, …` after
/// ray indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "crate::numbers::rat")]
    pub coeff: Rational,
    pub monomial: BTreeMap<String, u32>,
}

/// Generators of a homogeneous ideal in the Cox ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    pub name: String,
    pub generators: Vec<Vec<Term>>,
}

pub fn variable_index(name: &str) -> Result<usize> {
    name.strip_prefix('x')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::Parse(format!("variable {name:?} is not of the form x<ray index>")))
}

/// Terms of one generator as coefficient and exponent vector.
type Generator = Vec<(Rational, Vec<u32>)>;

impl Ideal {
    /// Coordinate ideal `(x_ρ : ρ ∈ rays)`.
    pub fn coordinate(name: &str, rays: &[usize]) -> Self {
        Ideal {
            name: name.to_string(),
            generators: rays
                .iter()
                .map(|&r| {
                    vec![Term {
                        coeff: Rational::one(),
                        monomial: BTreeMap::from([(format!("x{r}"), 1)]),
                    }]
                })
                .collect(),
        }
    }

    /// Ideal of linear forms given by coefficient rows.
    pub fn linear(name: &str, rows: &[Vec<Rational>]) -> Self {
        Ideal {
            name: name.to_string(),
            generators: rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| Term {
                            coeff: c.clone(),
                            monomial: BTreeMap::from([(format!("x{i}"), 1)]),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn exponents(&self, n: usize) -> Result<Vec<Generator>> {
        self.generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|t| {
                        let mut e = vec![0u32; n];
                        for (v, &k) in &t.monomial {
                            let i = variable_index(v)?;
                            if i >= n {
                                return Err(Error::InvalidParameter(format!(
                                    "variable {v} but only {n} rays"
                                )));
                            }
                            e[i] += k;
                        }
                        Ok((t.coeff.clone(), e))
                    })
                    .collect()
            })
            .collect()
    }

    /// Rows of coefficients when every generator is linear.
    fn linear_rows(&self, n: usize) -> Result<Option<Vec<Vec<Rational>>>> {
        let mut rows = Vec::new();
        for g in self.exponents(n)? {
            let mut row = vec![Rational::zero(); n];
            for (c, e) in g {
                if e.iter().sum::<u32>() != 1 {
                    return Ok(None);
                }
                let i = e.iter().position(|&k| k == 1).unwrap();
                row[i] += c;
            }
            rows.push(row);
        }
        Ok(Some(rows))
    }

    /// Whether every generator vanishes at the representative.
    pub fn vanishes_at(&self, p: &PointSpec) -> Result<bool> {
        for g in self.exponents(p.cox_coords.len())? {
            let mut v = Rational::zero();
            for (c, e) in g {
                let mut term = c;
                for (x, &k) in p.cox_coords.iter().zip(&e) {
                    term *= Pow::pow(x, k);
                }
                v += term;
            }
            if !v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Ideal of the closure of the orbit of a cone.
pub fn orbit_closure_ideal(fan: &Fan, cone: &[usize]) -> Result<Ideal> {
    let c = crate::fan::require_cone(fan, cone)?;
    let label = c
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Ok(Ideal::coordinate(&format!("V({label})"), &c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Disjoint,
    Meets,
}

/// Where the curve meets a locus: a rational parameter, or an irreducible
/// factor of higher degree (coefficients of `s^{k-i} t^i`). An empty factor
/// means the whole curve lies in the locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub locus: String,
    pub param: Option<Param>,
    #[serde(with = "int_vec")]
    pub factor: Vec<BigInt>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub allowed_hits: Vec<Witness>,
    /// Components whose codimension was assumed rather than checked.
    #[serde(default)]
    pub declared: Vec<String>,
}

impl AvoidanceReport {
    pub fn unallowed(&self) -> usize {
        self.witnesses.len() - self.allowed_hits.len()
    }
}

fn check_homogeneous(
    grading: &ClassGrading,
    ideal: &Ideal,
    n: usize,
) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
    let mut classes = Vec::new();
    for (gi, g) in ideal.exponents(n)?.into_iter().enumerate() {
        let mut class = None;
        for (_, e) in &g {
            let a: Vec<BigInt> = e.iter().map(|&k| BigInt::from(k)).collect();
            let c = grading.class_of(&a);
            match &class {
                None => class = Some(c),
                Some(prev) if prev != &c => return Err(Error::Inhomogeneous(gi)),
                _ => {}
            }
        }
        classes
            .push(class.unwrap_or_else(|| (vec![BigInt::zero(); grading.free_rank], Vec::new())));
    }
    Ok(classes)
}

/// Pullbacks of the generators along the curve.
fn pullbacks(c: &CoxCurve, grading: &ClassGrading, ideal: &Ideal) -> Result<Vec<BinaryForm>> {
    let n = c.target.rays.len();
    let classes = check_homogeneous(grading, ideal, n)?;
    let mut out = Vec::new();
    for (g, (free, _)) in ideal.exponents(n)?.into_iter().zip(classes) {
        let deg: BigInt = free.iter().zip(&c.degree_class).map(|(a, b)| a * b).sum();
        let mut acc = BinaryForm::zero();
        for (coeff, e) in g {
            let mut term = BinaryForm::new(vec![coeff]);
            for (f, &k) in c.forms.iter().zip(&e) {
                if k > 0 {
                    term = term.mul(&f.pow(k));
                }
            }
            if let Some(td) = term.degree() {
                if BigInt::from(td) != deg {
                    return Err(Error::InvalidCurve(
                        "form degrees disagree with the grading".into(),
                    ));
                }
            }
            acc = acc.add(&term)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Exact intersection of the curve with each component of `S`: gcd of the
/// pulled-back generators, factored over ℚ. Rational roots matching an
/// allowed `(param, point)` pair are allowed hits.
pub fn avoidance_verify(
    c: &CoxCurve,
    components: &[Ideal],
    allowed: &[(Param, PointSpec)],
) -> Result<AvoidanceReport> {
    let grading = class_grading(&c.target);
    let mut witnesses = Vec::new();
    for ideal in components {
        let pulled = pullbacks(c, &grading, ideal)?;
        match BinaryForm::gcd(&pulled) {
            None => witnesses.push(Witness {
                locus: ideal.name.clone(),
                param: None,
                factor: Vec::new(),
                multiplicity: 1,
            }),
            Some(g) => {
                for (factor, multiplicity) in g.factor() {
                    witnesses.push(Witness {
                        locus: ideal.name.clone(),
                        param: linear_root(&factor),
                        factor,
                        multiplicity,
                    });
                }
            }
        }
    }
    let mut allowed_hits = Vec::new();
    for w in &witnesses {
        let Some(p) = &w.param else { continue };
        for (q, point) in allowed {
            if p.same_point(q) && points_equal(&c.target, &evaluate_curve(c, p)?, point)? {
                allowed_hits.push(w.clone());
                break;
            }
        }
    }
    let verdict = if allowed_hits.len() == witnesses.len() {
        Verdict::Disjoint
    } else {
        Verdict::Meets
    };
    Ok(AvoidanceReport {
        verdict,
        witnesses,
        allowed_hits,
        declared: Vec::new(),
    })
}

/// Rejects linear components of codimension below two; returns the names of
/// nonlinear components, whose codimension is taken on trust.
pub fn check_codimension(fan: &Fan, components: &[Ideal]) -> Result<Vec<String>> {
    let mut declared = Vec::new();
    for (i, ideal) in components.iter().enumerate() {
        match ideal.linear_rows(fan.rays.len())? {
            Some(rows) => {
                if rank(&rows) < 2 {
                    return Err(Error::CodimensionTooSmall(i));
                }
            }
            None => declared.push(ideal.name.clone()),
        }
    }
    Ok(declared)
}

/// Las Vegas search for a curve through the points that meets `S` only at
/// the prescribed points: draw, verify exactly, retry with a derived seed.
pub fn interpolate_avoiding(
    fan: &Fan,
    points: &[PointSpec],
    params: &[Param],
    components: &[Ideal],
    d: usize,
    seed: u64,
) -> Result<(CoxCurve, AvoidanceReport)> {
    let weights = check_interpolation_input(fan, points, params, d)?;
    let declared = check_codimension(fan, components)?;
    let allowed: Vec<(Param, PointSpec)> =
        params.iter().cloned().zip(points.iter().cloned()).collect();
    let mut unallowed = 0;
    for attempt in 0..RETRY_BUDGET {
        let Some(curve) = draw_curve(fan, &weights, points, params, d, seed, attempt)? else {
            continue;
        };
        let mut report = avoidance_verify(&curve, components, &allowed)?;
        report.declared = declared.clone();
        if report.verdict == Verdict::Disjoint {
            return Ok((curve, report));
        }
        unallowed = report.unallowed();
    }
    Err(Error::AvoidanceRetryExceeded {
        attempts: RETRY_BUDGET,
        unallowed,
    })
}

/// Reinterprets a curve on the weighted cover as a curve on a rank-one
/// target with the same Cox coordinates and weights.
pub fn pushforward_rank_one(c: &CoxCurve, target: &Fan) -> Result<CoxCurve> {
    let source_weights = wp_cover_weights(&c.target)?;
    let target_weights = wp_cover_weights(target)?;
    if source_weights != target_weights {
        return Err(Error::GradingMismatch(format!(
            "cover weights {source_weights:?} differ from target weights {target_weights:?}"
        )));
    }
    let out = CoxCurve {
        target: target.clone(),
        forms: c.forms.clone(),
        degree_class: c.degree_class.clone(),
    };
    let v = validate_curve(&out)?;
    if !v.valid {
        return Err(Error::InvalidCurve(v.diagnostics[0].to_string()));
    }
    Ok(out)
}
