//! Families of semistable modules over the projective line, encoded by
//! splitting types and homogeneous polynomial arrow matrices, and the nef
//! divisor number computed by two independent routes:
//!
//!   * the determinant route: c * sum_i theta_i deg det T_i with
//!     c = 1 / ((xi^2 + 1) lambda(v));
//!   * the charge route: Im(Z(u) / -Z(v)) for u_i = v_i + deg det T_i,
//!     evaluated in exact rational complex arithmetic.
//!
//! The two must agree exactly on every valid family; the positivity report
//! cross-checks them and tests the dichotomy between a vanishing number and
//! fiberwise S-equivalence over the finite sample P^1(F_p).

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField, Rational};
use crate::parse::FamilyBlock;
use crate::quiver::{DimensionVector, Path, QuiverPresentation};
use crate::rep::Representation;
use crate::stability::{is_theta_semistable, jh_factors, JHMultiset, StabilityParams};
use crate::Caps;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// A homogeneous bivariate polynomial over F_p, stored by coefficients of
/// s^d, s^{d-1} t, ..., t^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPoly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl HomogPoly {
    pub fn new(field: PrimeField, coeffs: Vec<u32>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs a degree");
        assert!(coeffs.iter().all(|&c| c < field.p()));
        HomogPoly { field, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn evaluate(&self, s: u32, t: u32) -> u32 {
        let f = self.field;
        let d = self.degree();
        let mut acc = 0u32;
        for (k, &c) in self.coeffs.iter().enumerate() {
            // coefficient of s^{d-k} t^k
            let term = f.mul(c, f.mul(f.pow(s, (d - k) as u64), f.pow(t, k as u64)));
            acc = f.add(acc, term);
        }
        acc
    }

    fn add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        if self.degree() != other.degree() {
            return Err(Error::DimensionMismatch(format!(
                "adding homogeneous polynomials of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(HomogPoly { field: self.field, coeffs })
    }

    fn mul(&self, other: &HomogPoly) -> HomogPoly {
        let f = self.field;
        let mut coeffs = vec![0u32; self.degree() + other.degree() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        HomogPoly { field: f, coeffs }
    }

    fn scale(&self, c: u32) -> HomogPoly {
        HomogPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    /// Render like `2s^2 + st + t^2`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let d = self.degree();
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match (d - k, k) {
                (0, 0) => String::new(),
                (i, 0) if i == 1 => "s".to_string(),
                (i, 0) => format!("s^{i}"),
                (0, j) if j == 1 => "t".to_string(),
                (0, j) => format!("t^{j}"),
                (i, j) => {
                    let s_part = if i == 1 { "s".to_string() } else { format!("s^{i}") };
                    let t_part = if j == 1 { "t".to_string() } else { format!("t^{j}") };
                    format!("{s_part}{t_part}")
                }
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}{mono}")
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

/// Matrix of homogeneous polynomials; `None` entries are the zero
/// polynomial of whatever degree the pattern demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Option<HomogPoly>>,
}

impl PolyMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        PolyMatrix { field, rows, cols, entries: vec![None; rows * cols] }
    }

    /// Build from sparse integer coefficient lists; entries not mentioned
    /// stay zero.
    pub fn from_entry_coeffs(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: &[(usize, usize, Vec<i64>)],
    ) -> Self {
        let mut m = Self::zero(field, rows, cols);
        for (r, c, coeffs) in entries {
            let reduced: Vec<u32> = coeffs.iter().map(|&x| field.from_i64(x)).collect();
            m.set(*r, *c, Some(HomogPoly::new(field, reduced)));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&HomogPoly> {
        self.entries[r * self.cols + c].as_ref()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Option<HomogPoly>) {
        let v = v.filter(|p| !p.is_zero());
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_none())
    }

    fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = PolyMatrix::zero(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = match (self.get(r, c), other.get(r, c)) {
                    (None, None) => None,
                    (Some(a), None) => Some(a.clone()),
                    (None, Some(b)) => Some(b.clone()),
                    (Some(a), Some(b)) => Some(a.add(b)?),
                };
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: Option<HomogPoly> = None;
                for k in 0..self.cols {
                    if let (Some(a), Some(b)) = (self.get(r, k), other.get(k, c)) {
                        let prod = a.mul(b);
                        acc = Some(match acc {
                            None => prod,
                            Some(cur) => cur.add(&prod)?,
                        });
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    fn scale(&self, c: u32) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for col in 0..self.cols {
                out.set(r, col, self.get(r, col).map(|p| p.scale(c)));
            }
        }
        out
    }

    fn evaluate(&self, field: PrimeField, s: u32, t: u32) -> FpMatrix {
        let mut m = FpMatrix::zero(field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if let Some(p) = self.get(r, c) {
                    m.set(r, c, p.evaluate(s, t));
                }
            }
        }
        m
    }
}

/// A closed point of P^1(F_p) in normalized homogeneous coordinates:
/// [1 : t] or [0 : 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P1Point {
    pub s: u32,
    pub t: u32,
}

impl P1Point {
    pub fn new(field: PrimeField, s: u32, t: u32) -> Result<Self> {
        let (s, t) = (s % field.p(), t % field.p());
        if s == 0 && t == 0 {
            return Err(Error::DimensionMismatch("[0:0] is not a point of P^1".into()));
        }
        Ok(if s != 0 {
            let inv = field.inv(s);
            P1Point { s: 1, t: field.mul(t, inv) }
        } else {
            P1Point { s: 0, t: 1 }
        })
    }

    pub fn display(&self) -> String {
        format!("[{}:{}]", self.s, self.t)
    }
}

/// All p + 1 points of the projective line over F_p, finite points first.
pub fn points_of_p1(field: PrimeField) -> Vec<P1Point> {
    let mut out: Vec<P1Point> = (0..field.p()).map(|t| P1Point { s: 1, t }).collect();
    out.push(P1Point { s: 0, t: 1 });
    out
}

/// A family over P^1: per vertex the splitting type of the bundle T_i as a
/// sum of line-bundle twists, per arrow a matrix of homogeneous polynomials
/// whose degrees follow the difference pattern of the twists. Degree
/// patterns and relation identities are enforced at construction.
#[derive(Debug, Clone)]
pub struct FamilyOverP1 {
    pres: Arc<QuiverPresentation>,
    field: PrimeField,
    splitting: Vec<Vec<i64>>,
    arrow_polys: Vec<PolyMatrix>,
}

impl FamilyOverP1 {
    pub fn new(
        pres: Arc<QuiverPresentation>,
        field: PrimeField,
        splitting: Vec<Vec<i64>>,
        arrow_polys: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if splitting.len() != pres.quiver.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} splitting types for {} vertices",
                splitting.len(),
                pres.quiver.num_vertices()
            )));
        }
        if arrow_polys.len() != pres.quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} polynomial matrices for {} arrows",
                arrow_polys.len(),
                pres.quiver.arrows().len()
            )));
        }
        let fam = FamilyOverP1 { pres, field, splitting, arrow_polys };
        fam.check_degree_pattern()?;
        fam.check_relations()?;
        Ok(fam)
    }

    /// Assemble from a parsed `family` block.
    pub fn from_block(pres: Arc<QuiverPresentation>, block: &FamilyBlock) -> Result<Self> {
        let field = PrimeField::new(block.p)?;
        let n = pres.quiver.num_vertices();
        let splitting: Vec<Vec<i64>> = (0..n)
            .map(|v| block.splitting.get(&v).cloned().unwrap_or_default())
            .collect();
        let mut arrow_polys = Vec::new();
        for (idx, a) in pres.quiver.arrows().iter().enumerate() {
            let rows = splitting[a.target].len();
            let cols = splitting[a.source].len();
            let mut m = PolyMatrix::zero(field, rows, cols);
            if let Some(entries) = block.polys.get(&idx) {
                for (r, c, coeffs) in entries {
                    if *r >= rows || *c >= cols {
                        return Err(Error::Semantic {
                            line: block.line,
                            msg: format!(
                                "poly entry ({r},{c}) outside the {rows}x{cols} matrix of arrow {}",
                                a.name
                            ),
                        });
                    }
                    let required = splitting[a.target][*r] - splitting[a.source][*c];
                    if required < 0 || coeffs.len() as i64 != required + 1 {
                        return Err(Error::DegreeMismatch {
                            arrow: a.name.clone(),
                            row: *r,
                            col: *c,
                            expected: required,
                            got: format!("{} coefficients", coeffs.len()),
                        });
                    }
                    let reduced: Vec<u32> = coeffs.iter().map(|&x| field.from_i64(x)).collect();
                    m.set(*r, *c, Some(HomogPoly::new(field, reduced)));
                }
            }
            arrow_polys.push(m);
        }
        FamilyOverP1::new(pres, field, splitting, arrow_polys)
    }

    fn check_degree_pattern(&self) -> Result<()> {
        for (idx, a) in self.pres.quiver.arrows().iter().enumerate() {
            let m = &self.arrow_polys[idx];
            let (rows, cols) = (self.splitting[a.target].len(), self.splitting[a.source].len());
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    arrow: a.name.clone(),
                    expected_rows: rows,
                    expected_cols: cols,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            for r in 0..rows {
                for c in 0..cols {
                    if let Some(p) = m.get(r, c) {
                        let required = self.splitting[a.target][r] - self.splitting[a.source][c];
                        if required < 0 || p.degree() as i64 != required {
                            return Err(Error::DegreeMismatch {
                                arrow: a.name.clone(),
                                row: r,
                                col: c,
                                expected: required,
                                got: format!("degree {}", p.degree()),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Relations must hold as identities of polynomial matrices.
    fn check_relations(&self) -> Result<()> {
        for rel in &self.pres.relations {
            let rows = self.splitting[rel.target()].len();
            let cols = self.splitting[rel.source()].len();
            let mut acc = PolyMatrix::zero(self.field, rows, cols);
            for (coef, path) in rel.terms() {
                let c = self.field.from_rational(coef)?;
                acc = acc.add(&self.evaluate_path_polys(path)?.scale(c))?;
            }
            if !acc.is_zero() {
                let witness = (0..rows)
                    .flat_map(|r| (0..cols).map(move |c| (r, c)))
                    .find_map(|(r, c)| acc.get(r, c).map(|p| (r, c, p.display())))
                    .unwrap();
                return Err(Error::RelationViolated {
                    relation: rel.display(&self.pres.quiver),
                    residual: format!("entry ({}, {}): {}", witness.0, witness.1, witness.2),
                });
            }
        }
        Ok(())
    }

    fn evaluate_path_polys(&self, path: &Path) -> Result<PolyMatrix> {
        let mut acc: Option<PolyMatrix> = None;
        for &idx in path.arrow_indices() {
            let m = &self.arrow_polys[idx];
            acc = Some(match acc {
                None => m.clone(),
                Some(prev) => m.mul(&prev)?,
            });
        }
        Ok(acc.expect("relation paths are nontrivial"))
    }

    pub fn presentation(&self) -> &Arc<QuiverPresentation> {
        &self.pres
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn splitting(&self) -> &[Vec<i64>] {
        &self.splitting
    }

    /// The class of every fiber: rank of T_i at vertex i.
    pub fn class(&self) -> DimensionVector {
        DimensionVector(self.splitting.iter().map(|s| s.len() as u32).collect())
    }

    /// deg det T_i = sum of the twists at vertex i.
    pub fn det_degrees(&self) -> Vec<i64> {
        self.splitting.iter().map(|s| s.iter().sum()).collect()
    }

    /// Evaluate the family at a point of P^1: a relation-checked module of
    /// the family class.
    pub fn fiber_at(&self, point: P1Point) -> Result<Representation> {
        let mats = self
            .arrow_polys
            .iter()
            .map(|m| m.evaluate(self.field, point.s, point.t))
            .collect();
        Representation::new(self.pres.clone(), self.field, self.class(), mats)
    }

    /// Full validation against a parameter point: the declared class must
    /// match and every fiber over P^1(F_p) must be theta-semistable.
    pub fn check(&self, params: &StabilityParams, caps: &Caps) -> Result<()> {
        if self.class() != *params.class() {
            return Err(Error::ClassMismatch {
                expected: params.class().to_string(),
                found: self.class().to_string(),
            });
        }
        for point in points_of_p1(self.field) {
            let fiber = self.fiber_at(point)?;
            if !is_theta_semistable(&fiber, params, caps)? {
                return Err(Error::UnstableFiber { point: point.display() });
            }
        }
        Ok(())
    }
}

/// The nef divisor number: an exact rational, nonnegative on valid
/// families.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NefNumber(pub Rational);

impl std::fmt::Display for NefNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn normalization_constant(params: &StabilityParams) -> Rational {
    // c = 1 / ((xi^2 + 1) lambda(v))
    let xi = params.xi();
    let denom = (xi * xi + Rational::one()) * params.lambda_of(params.class());
    Rational::one() / denom
}

/// Determinant route: c * sum_i theta_i deg det T_i.
pub fn ell_dot_c_determinant(fam: &FamilyOverP1, params: &StabilityParams) -> Result<NefNumber> {
    if fam.class() != *params.class() {
        return Err(Error::ClassMismatch {
            expected: params.class().to_string(),
            found: fam.class().to_string(),
        });
    }
    let weighted = fam
        .det_degrees()
        .iter()
        .zip(params.theta())
        .map(|(&d, t)| t * Rational::from(BigInt::from(d)))
        .fold(Rational::zero(), |a, b| a + b);
    Ok(NefNumber(normalization_constant(params) * weighted))
}

/// Charge route: form u_i = v_i + deg det T_i and compute
/// Im(Z(u) / -Z(v)) by exact rational complex division.
pub fn ell_dot_c_charge(fam: &FamilyOverP1, params: &StabilityParams) -> Result<NefNumber> {
    if fam.class() != *params.class() {
        return Err(Error::ClassMismatch {
            expected: params.class().to_string(),
            found: fam.class().to_string(),
        });
    }
    let u: Vec<Rational> = fam
        .class()
        .0
        .iter()
        .zip(fam.det_degrees())
        .map(|(&v_i, d)| Rational::from(BigInt::from(v_i as i64 + d)))
        .collect();
    let dot = |covector: &[Rational]| -> Rational {
        covector.iter().zip(&u).map(|(c, x)| c * x).fold(Rational::zero(), |a, b| a + b)
    };
    let lambda_u = dot(params.lambda());
    let (a, b) = (dot(params.theta()) + params.xi() * &lambda_u, lambda_u);
    let z_v = crate::stability::central_charge(params, params.class())?;
    if z_v.is_zero() {
        return Err(Error::ZeroCharge);
    }
    let (c, d) = (-&z_v.re, -&z_v.im);
    // Im((a + bi) / (c + di)) = (bc - ad) / (c^2 + d^2)
    let num = &b * &c - &a * &d;
    let den = &c * &c + &d * &d;
    Ok(NefNumber(num / den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DichotomyVerdict {
    /// positive number, witnessed by a pair of non-S-equivalent fibers
    ConfirmedPositive,
    /// zero number, all fibers S-equivalent
    ConfirmedZero,
    /// the finite sample contradicts the dichotomy; flagged, never silent
    Violated(String),
}

#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub ell_determinant: NefNumber,
    pub ell_charge: NefNumber,
    pub routes_agree: bool,
    pub nonnegative: bool,
    pub fibers: Vec<(P1Point, JHMultiset)>,
    pub all_fibers_s_equivalent: bool,
    pub verdict: DichotomyVerdict,
    /// the sampling caveat: closed points of P^1(F_p) stand in for general
    /// points over an infinite field
    pub note: &'static str,
}

pub const FINITE_FIELD_NOTE: &str = "checked over the p+1 closed points of P^1(F_p); \
finite-field sample stands in for general points over an algebraically closed field";

/// The full cross-checked report: both routes, nefness, per-point JH data
/// and the dichotomy verdict.
pub fn positivity_report(
    fam: &FamilyOverP1,
    params: &StabilityParams,
    caps: &Caps,
) -> Result<PositivityReport> {
    fam.check(params, caps)?;
    let ell_determinant = ell_dot_c_determinant(fam, params)?;
    let ell_charge = ell_dot_c_charge(fam, params)?;
    let routes_agree = ell_determinant == ell_charge;
    let nonnegative = !ell_determinant.0.is_negative();
    let mut fibers = Vec::new();
    for point in points_of_p1(fam.field()) {
        let fiber = fam.fiber_at(point)?;
        fibers.push((point, jh_factors(&fiber, params, caps)?));
    }
    let mut all_equiv = true;
    for (_, jh) in fibers.iter().skip(1) {
        if !fibers[0].1.matches(jh, caps)? {
            all_equiv = false;
            break;
        }
    }
    let is_zero = ell_determinant.0.is_zero();
    let verdict = if !nonnegative {
        DichotomyVerdict::Violated(format!(
            "nefness failed: ell.C = {} is negative",
            ell_determinant
        ))
    } else if is_zero && all_equiv {
        DichotomyVerdict::ConfirmedZero
    } else if !is_zero && !all_equiv {
        DichotomyVerdict::ConfirmedPositive
    } else if is_zero {
        DichotomyVerdict::Violated(
            "ell.C = 0 but some fibers are not S-equivalent".to_string(),
        )
    } else {
        DichotomyVerdict::Violated(format!(
            "ell.C = {} > 0 but all sampled fibers are S-equivalent",
            ell_determinant
        ))
    };
    Ok(PositivityReport {
        ell_determinant,
        ell_charge,
        routes_agree,
        nonnegative,
        fibers,
        all_fibers_s_equivalent: all_equiv,
        verdict,
        note: FINITE_FIELD_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn rat(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn rat_frac(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn taut() -> corpus::BundledFamily {
        corpus::family_by_name("k2_taut").unwrap()
    }

    fn constant() -> corpus::BundledFamily {
        corpus::family_by_name("k2_const").unwrap()
    }

    #[test]
    fn poly_evaluation() {
        let field = PrimeField::new(5).unwrap();
        // s^2 + 2 s t + 3 t^2
        let p = HomogPoly::new(field, vec![1, 2, 3]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.evaluate(1, 0), 1);
        assert_eq!(p.evaluate(0, 1), 3);
        assert_eq!(p.evaluate(1, 1), (1 + 2 + 3) % 5);
        assert_eq!(p.display(), "s^2 + 2st + 3t^2");
    }

    #[test]
    fn points_of_the_projective_line() {
        let field = PrimeField::new(3).unwrap();
        let pts = points_of_p1(field);
        assert_eq!(pts.len(), 4);
        assert_eq!(P1Point::new(field, 2, 1).unwrap(), P1Point { s: 1, t: 2 });
        assert!(P1Point::new(field, 0, 0).is_err());
    }

    #[test]
    fn tautological_fibers() {
        let bf = taut();
        let field = bf.family.field();
        let fiber = bf.family.fiber_at(P1Point::new(field, 1, 0).unwrap()).unwrap();
        assert_eq!(fiber.arrow_matrix(0).get(0, 0), 1);
        assert_eq!(fiber.arrow_matrix(1).get(0, 0), 0);
        let fiber = bf.family.fiber_at(P1Point::new(field, 1, 1).unwrap()).unwrap();
        assert_eq!(fiber.arrow_matrix(0).get(0, 0), 1);
        assert_eq!(fiber.arrow_matrix(1).get(0, 0), 1);
    }

    #[test]
    fn degree_pattern_is_enforced() {
        // declaring a degree-0 entry where the pattern demands degree 1
        let field = PrimeField::new(2).unwrap();
        let err = FamilyOverP1::new(
            corpus::k2(),
            field,
            vec![vec![0], vec![1]],
            vec![
                PolyMatrix::from_entry_coeffs(field, 1, 1, &[(0, 0, vec![1])]),
                PolyMatrix::from_entry_coeffs(field, 1, 1, &[(0, 0, vec![0, 1])]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }), "{err:?}");
    }

    #[test]
    fn polynomial_relation_identities_are_enforced() {
        // x constant invertible violates x*x = 0 identically
        let field = PrimeField::new(2).unwrap();
        let err = FamilyOverP1::new(
            corpus::loop_x2(),
            field,
            vec![vec![0]],
            vec![PolyMatrix::from_entry_coeffs(field, 1, 1, &[(0, 0, vec![1])])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::RelationViolated { .. }), "{err:?}");
    }

    #[test]
    fn det_degrees_sum_twists() {
        assert_eq!(taut().family.det_degrees(), vec![0, 1]);
        assert_eq!(constant().family.det_degrees(), vec![0, 0]);
        let field = PrimeField::new(2).unwrap();
        let fam = FamilyOverP1::new(
            corpus::k2(),
            field,
            vec![vec![1, -1], vec![0, 0]],
            vec![PolyMatrix::zero(field, 2, 2), PolyMatrix::zero(field, 2, 2)],
        )
        .unwrap();
        assert_eq!(fam.det_degrees(), vec![0, 0]);
    }

    #[test]
    fn worked_example_both_routes() {
        let bf = taut();
        let det = ell_dot_c_determinant(&bf.family, &bf.params).unwrap();
        let charge = ell_dot_c_charge(&bf.family, &bf.params).unwrap();
        assert_eq!(det.0, rat_frac(1, 2));
        assert_eq!(charge.0, rat_frac(1, 2));
    }

    #[test]
    fn constant_family_is_zero_by_both_routes() {
        let bf = constant();
        assert_eq!(ell_dot_c_determinant(&bf.family, &bf.params).unwrap().0, rat(0));
        assert_eq!(ell_dot_c_charge(&bf.family, &bf.params).unwrap().0, rat(0));
    }

    #[test]
    fn normalized_parameters_make_c_one() {
        // lambda(v) = 1 / (xi^2 + 1) with xi = 0: lambda = (1/2, 1/2)
        let bf = taut();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat_frac(1, 2), rat_frac(1, 2)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        assert_eq!(normalization_constant(&params), rat(1));
        let det = ell_dot_c_determinant(&bf.family, &params).unwrap();
        // ell.C = sum theta_i deg det T_i = -1*0 + 1*1
        assert_eq!(det.0, rat(1));
        assert_eq!(ell_dot_c_charge(&bf.family, &params).unwrap(), det);
    }

    #[test]
    fn positivity_report_on_the_tautological_family() {
        let caps = Caps::default();
        let bf = taut();
        let report = positivity_report(&bf.family, &bf.params, &caps).unwrap();
        assert!(report.routes_agree);
        assert!(report.nonnegative);
        assert_eq!(report.ell_determinant.0, rat_frac(1, 2));
        assert!(!report.all_fibers_s_equivalent);
        assert_eq!(report.verdict, DichotomyVerdict::ConfirmedPositive);
    }

    #[test]
    fn positivity_report_on_the_constant_family() {
        let caps = Caps::default();
        let bf = constant();
        let report = positivity_report(&bf.family, &bf.params, &caps).unwrap();
        assert_eq!(report.ell_determinant.0, rat(0));
        assert!(report.all_fibers_s_equivalent);
        assert_eq!(report.verdict, DichotomyVerdict::ConfirmedZero);
    }

    #[test]
    fn any_family_at_theta_zero_is_zero_and_equivalent() {
        let caps = Caps::default();
        let bf = taut();
        let params = StabilityParams::new(
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let report = positivity_report(&bf.family, &params, &caps).unwrap();
        assert_eq!(report.ell_determinant.0, rat(0));
        assert!(report.all_fibers_s_equivalent);
        assert_eq!(report.verdict, DichotomyVerdict::ConfirmedZero);
    }

    #[test]
    fn unstable_fibers_are_reported_with_their_point() {
        let caps = Caps::default();
        let bf = constant();
        // flip theta so the constant fiber (1, 0) is destabilized
        let params = StabilityParams::new(
            vec![rat(1), rat(-1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let err = bf.family.check(&params, &caps).unwrap_err();
        assert!(matches!(err, Error::UnstableFiber { .. }), "{err:?}");
    }

    #[test]
    fn twist_invariance_of_the_divisor_number() {
        // shifting every twist by a constant changes u by c*v and leaves
        // ell.C unchanged because theta(v) = 0
        let field = PrimeField::new(2).unwrap();
        let shifted = FamilyOverP1::new(
            corpus::k2(),
            field,
            vec![vec![3], vec![4]],
            vec![
                PolyMatrix::from_entry_coeffs(field, 1, 1, &[(0, 0, vec![1, 0])]),
                PolyMatrix::from_entry_coeffs(field, 1, 1, &[(0, 0, vec![0, 1])]),
            ],
        )
        .unwrap();
        let bf = taut();
        assert_eq!(
            ell_dot_c_charge(&shifted, &bf.params).unwrap(),
            ell_dot_c_charge(&bf.family, &bf.params).unwrap()
        );
        assert_eq!(
            ell_dot_c_determinant(&shifted, &bf.params).unwrap(),
            ell_dot_c_determinant(&bf.family, &bf.params).unwrap()
        );
    }
}
