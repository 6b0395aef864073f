//! The stability engine: central charges, exact phase comparison, King and
//! Bridgeland (semi)stability verdicts, Harder-Narasimhan filtrations,
//! Jordan-Hoelder factors and S-equivalence.
//!
//! All decisions are exact. Phases live in (0, 1] and are compared by
//! cross-multiplication; the comparison never touches floating point. The
//! hot loops run on scaled integer covectors when the parameters fit in
//! `i128`, falling back to big-integer arithmetic otherwise; both routes
//! compute the same signs.

use crate::error::{Error, Result};
use crate::knum::pairing;
use crate::linalg::Rational;
use crate::quiver::DimensionVector;
use crate::rep::{
    all_submodules, quotient, submodule_representation, Representation, Submodule,
};
use crate::Caps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// A point of the parameter space: theta on the wall-and-chamber side,
/// lambda in the positive cone, xi the real tilt, v the fixed class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityParams {
    theta: Vec<Rational>,
    lambda: Vec<Rational>,
    xi: Rational,
    v: DimensionVector,
}

impl StabilityParams {
    /// Validates the membership conditions: every lambda entry positive and
    /// theta(v) = 0.
    pub fn new(
        theta: Vec<Rational>,
        lambda: Vec<Rational>,
        xi: Rational,
        v: DimensionVector,
    ) -> Result<Self> {
        if theta.len() != v.len() || lambda.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "parameter lengths ({}, {}) against {} vertices",
                theta.len(),
                lambda.len(),
                v.len()
            )));
        }
        if v.is_zero() {
            return Err(Error::DimensionMismatch("the fixed class v must be nonzero".into()));
        }
        if lambda.iter().any(|l| !l.is_positive()) {
            return Err(Error::DimensionMismatch(
                "every lambda entry must be strictly positive".into(),
            ));
        }
        if !pairing(&theta, &v)?.is_zero() {
            return Err(Error::DimensionMismatch("theta(v) must vanish".into()));
        }
        Ok(StabilityParams { theta, lambda, xi, v })
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn xi(&self) -> &Rational {
        &self.xi
    }

    pub fn class(&self) -> &DimensionVector {
        &self.v
    }

    pub fn theta_of(&self, d: &DimensionVector) -> Rational {
        pairing(&self.theta, d).expect("length checked at construction")
    }

    pub fn lambda_of(&self, d: &DimensionVector) -> Rational {
        pairing(&self.lambda, d).expect("length checked at construction")
    }

    /// The support constant C = min_i lambda_i.
    pub fn support_constant(&self) -> Rational {
        self.lambda.iter().min().cloned().expect("lambda is nonempty")
    }
}

/// Exact value of the central charge: re = theta(d) + xi lambda(d),
/// im = lambda(d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeValue {
    pub re: Rational,
    pub im: Rational,
}

impl ChargeValue {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// |Z|^2 as an exact rational.
    pub fn norm_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Z(d) for a class with nonnegative entries; Z(0) = 0.
pub fn central_charge(params: &StabilityParams, d: &DimensionVector) -> Result<ChargeValue> {
    let theta = pairing(params.theta(), d)?;
    let lambda = pairing(params.lambda(), d)?;
    Ok(ChargeValue { re: theta + params.xi() * &lambda, im: lambda })
}

/// Compare phases of two nonzero charge values in the closed upper
/// half-plane, with the boundary convention that the negative real axis has
/// phase 1 (the greatest) and the positive real axis phase 0.
pub fn phase_compare(z1: &ChargeValue, z2: &ChargeValue) -> Result<Ordering> {
    #[derive(PartialEq, Eq)]
    enum Pos {
        PositiveAxis,
        Interior,
        NegativeAxis,
    }
    let classify = |z: &ChargeValue| -> Result<Pos> {
        if z.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if z.im.is_negative() {
            return Err(Error::ChargeOutOfRange { re: z.re.to_string(), im: z.im.to_string() });
        }
        Ok(if z.im.is_zero() {
            if z.re.is_positive() {
                Pos::PositiveAxis
            } else {
                Pos::NegativeAxis
            }
        } else {
            Pos::Interior
        })
    };
    let (p1, p2) = (classify(z1)?, classify(z2)?);
    Ok(match (p1, p2) {
        (Pos::NegativeAxis, Pos::NegativeAxis) | (Pos::PositiveAxis, Pos::PositiveAxis) => {
            Ordering::Equal
        }
        (Pos::NegativeAxis, _) => Ordering::Greater,
        (_, Pos::NegativeAxis) => Ordering::Less,
        (Pos::PositiveAxis, _) => Ordering::Less,
        (_, Pos::PositiveAxis) => Ordering::Greater,
        (Pos::Interior, Pos::Interior) => {
            // sign of re2 im1 - re1 im2
            (&z2.re * &z1.im).cmp(&(&z1.re * &z2.im))
        }
    })
}

/// Integer covectors with a shared positive scale, precomputed once per
/// parameter point so the per-class decisions avoid big-integer arithmetic.
enum ParamEval {
    /// re(d) and im(d) scaled by fixed positive constants; coefficients are
    /// small enough that all cross products stay inside i128.
    Fast { theta: Vec<i128>, re: Vec<i128>, im: Vec<i128> },
    /// Parameters too large for the integer fast path; every decision goes
    /// through exact rational arithmetic.
    Big,
}

/// Reusable decision context for one parameter point.
pub struct Decider<'a> {
    params: &'a StabilityParams,
    eval: ParamEval,
}

fn dims_fit(d: &DimensionVector) -> bool {
    d.0.iter().all(|&x| x <= 1 << 16)
}

fn integerize(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let nums = v.iter().map(|x| (x * Rational::from(den.clone())).to_integer()).collect();
    (nums, den)
}

impl<'a> Decider<'a> {
    pub fn new(params: &'a StabilityParams) -> Self {
        let (theta_num, theta_den) = integerize(params.theta());
        let (lambda_num, lambda_den) = integerize(params.lambda());
        let (xi_num, xi_den) = {
            let xi = params.xi();
            (xi.numer().clone(), xi.denom().clone())
        };
        // re(d) * (theta_den * xi_den * lambda_den)
        //   = xi_den * lambda_den * theta_num . d + xi_num * theta_den * lambda_num . d
        let re_big: Vec<BigInt> = (0..theta_num.len())
            .map(|i| {
                &xi_den * &lambda_den * &theta_num[i] + &xi_num * &theta_den * &lambda_num[i]
            })
            .collect();
        let im_big = lambda_num.clone();
        let fits = |v: &[BigInt]| v.iter().all(|x| x.abs() <= BigInt::from(1i128 << 30));
        let eval = if theta_num.len() <= 1024 && fits(&theta_num) && fits(&re_big) && fits(&im_big) {
            ParamEval::Fast {
                theta: theta_num.iter().map(|x| x.to_i128().unwrap()).collect(),
                re: re_big.iter().map(|x| x.to_i128().unwrap()).collect(),
                im: im_big.iter().map(|x| x.to_i128().unwrap()).collect(),
            }
        } else {
            ParamEval::Big
        };
        Decider { params, eval }
    }

    pub fn params(&self) -> &StabilityParams {
        self.params
    }

    /// Sign of theta(d).
    pub fn theta_sign(&self, d: &DimensionVector) -> Ordering {
        match &self.eval {
            ParamEval::Fast { theta, .. } if dims_fit(d) => {
                let dot: i128 = theta.iter().zip(&d.0).map(|(t, &x)| t * x as i128).sum();
                dot.cmp(&0)
            }
            _ => {
                let zero = Rational::zero();
                self.params.theta_of(d).cmp(&zero)
            }
        }
    }

    /// Compare phases of the charges of two nonzero nonnegative classes.
    /// Both charges lie strictly inside the upper half-plane because lambda
    /// is positive, so the cross-product sign decides.
    pub fn phase_cmp(&self, d1: &DimensionVector, d2: &DimensionVector) -> Ordering {
        debug_assert!(!d1.is_zero() && !d2.is_zero());
        match &self.eval {
            ParamEval::Fast { re, im, .. } if dims_fit(d1) && dims_fit(d2) => {
                let dot = |v: &[i128], d: &DimensionVector| -> i128 {
                    v.iter().zip(&d.0).map(|(t, &x)| t * x as i128).sum()
                };
                let lhs = dot(re, d2) * dot(im, d1);
                let rhs = dot(re, d1) * dot(im, d2);
                lhs.cmp(&rhs)
            }
            ParamEval::Fast { .. } | ParamEval::Big => {
                let (z1, z2) = (
                    central_charge(self.params, d1).expect("length checked"),
                    central_charge(self.params, d2).expect("length checked"),
                );
                phase_compare(&z1, &z2).expect("nonzero classes have nonzero charges")
            }
        }
    }

    /// King verdicts over a precomputed submodule lattice:
    /// (semistable, stable). The module class must equal the fixed class v.
    pub fn theta_verdict(
        &self,
        m: &Representation,
        subs: &[Submodule],
    ) -> Result<(bool, bool)> {
        if m.dim() != self.params.class() {
            return Err(Error::ClassMismatch {
                expected: self.params.class().to_string(),
                found: m.dim().to_string(),
            });
        }
        let mut semistable = true;
        let mut stable = true;
        for n in subs {
            if n.is_zero() || n.is_full() {
                continue;
            }
            match self.theta_sign(&n.dim()) {
                Ordering::Less => {
                    semistable = false;
                    stable = false;
                    break;
                }
                Ordering::Equal => stable = false,
                Ordering::Greater => {}
            }
        }
        // a module with no proper nonzero submodule is stable whenever it is
        // semistable; the loop above already encodes that
        Ok((semistable, semistable && stable))
    }

    /// Bridgeland verdict over a precomputed lattice: no submodule of
    /// strictly greater phase. Defined for any nonzero module, whatever its
    /// class.
    pub fn sigma_semistable(&self, m: &Representation, subs: &[Submodule]) -> bool {
        debug_assert!(!m.dim().is_zero());
        subs.iter()
            .filter(|n| !n.is_zero() && !n.is_full())
            .all(|n| self.phase_cmp(&n.dim(), m.dim()) != Ordering::Greater)
    }

    /// Strictly stable in the Bridgeland sense: every proper nonzero
    /// submodule has strictly smaller phase.
    pub fn sigma_stable(&self, m: &Representation, subs: &[Submodule]) -> bool {
        debug_assert!(!m.dim().is_zero());
        subs.iter()
            .filter(|n| !n.is_zero() && !n.is_full())
            .all(|n| self.phase_cmp(&n.dim(), m.dim()) == Ordering::Less)
    }
}

/// theta-semistability of a module of class v: theta(N) >= 0 for every
/// nonzero proper submodule.
pub fn is_theta_semistable(m: &Representation, params: &StabilityParams, caps: &Caps) -> Result<bool> {
    let subs = all_submodules(m, caps)?;
    Decider::new(params).theta_verdict(m, &subs).map(|(ss, _)| ss)
}

/// theta-stability: strict inequality on every nonzero proper submodule.
pub fn is_theta_stable(m: &Representation, params: &StabilityParams, caps: &Caps) -> Result<bool> {
    let subs = all_submodules(m, caps)?;
    Decider::new(params).theta_verdict(m, &subs).map(|(_, s)| s)
}

/// Bridgeland semistability with respect to the heart of finite-dimensional
/// modules: no submodule of strictly greater phase.
pub fn is_sigma_semistable(m: &Representation, params: &StabilityParams, caps: &Caps) -> Result<bool> {
    if m.dim().is_zero() {
        return Err(Error::ZeroCharge);
    }
    let subs = all_submodules(m, caps)?;
    Ok(Decider::new(params).sigma_semistable(m, &subs))
}

/// One step of a Harder-Narasimhan filtration.
#[derive(Debug, Clone)]
pub struct HNFactor {
    pub dim: DimensionVector,
    pub charge: ChargeValue,
    pub rep: Representation,
}

/// The Harder-Narasimhan filtration 0 = M_0 < M_1 < ... < M_k = M with
/// semistable factors of strictly decreasing phase.
#[derive(Debug, Clone)]
pub struct HNFiltration {
    pub chain: Vec<Submodule>,
    pub factors: Vec<HNFactor>,
}

impl HNFiltration {
    pub fn length(&self) -> usize {
        self.factors.len()
    }
}

pub fn hn_filtration(m: &Representation, params: &StabilityParams, caps: &Caps) -> Result<HNFiltration> {
    let subs = all_submodules(m, caps)?;
    hn_from_submodules(m, &subs, params)
}

/// HN filtration computed over a caller-supplied submodule list; the result
/// does not depend on the order of the list (the greedy maximum is unique,
/// and residual ties are an error, not a choice).
pub fn hn_from_submodules(
    m: &Representation,
    subs: &[Submodule],
    params: &StabilityParams,
) -> Result<HNFiltration> {
    if m.dim().is_zero() {
        return Err(Error::ZeroCharge);
    }
    let decider = Decider::new(params);
    let mut chain = vec![Submodule::zero(m)];
    let mut factors: Vec<HNFactor> = Vec::new();
    loop {
        let current = chain.last().unwrap().clone();
        if current.is_full() {
            break;
        }
        // maximal destabilizer of m / current: submodules strictly containing
        // `current`, compared first by factor phase, then by factor dimension
        let mut best: Option<(&Submodule, DimensionVector)> = None;
        let mut tie: Option<&Submodule> = None;
        for n in subs {
            if !n.contains(&current) || n == &current {
                continue;
            }
            let factor_dim = n.dim().sub(&current.dim());
            match &best {
                None => best = Some((n, factor_dim)),
                Some((_, best_dim)) => {
                    match decider
                        .phase_cmp(&factor_dim, best_dim)
                        .then(factor_dim.total().cmp(&best_dim.total()))
                    {
                        Ordering::Greater => {
                            best = Some((n, factor_dim));
                            tie = None;
                        }
                        Ordering::Equal => tie = Some(n),
                        Ordering::Less => {}
                    }
                }
            }
        }
        let (next, factor_dim) = best.expect("the full submodule strictly contains `current`");
        if let Some(other) = tie {
            // re-check: `other` ties with the final best
            let other_dim = other.dim().sub(&current.dim());
            if decider.phase_cmp(&other_dim, &factor_dim) == Ordering::Equal
                && other_dim.total() == factor_dim.total()
            {
                return Err(Error::NonUniqueDestabilizer(format!(
                    "{} and {} above {}",
                    next.dim(),
                    other.dim(),
                    current.dim()
                )));
            }
        }
        let factor_rep = factor_representation(m, next, &current)?;
        let charge = central_charge(params, &factor_dim)?;
        if let Some(prev) = factors.last() {
            debug_assert_eq!(
                phase_compare(&prev.charge, &charge).expect("nonzero factors"),
                Ordering::Greater,
                "HN phases must strictly decrease"
            );
        }
        factors.push(HNFactor { dim: factor_dim, charge, rep: factor_rep });
        chain.push(next.clone());
    }
    Ok(HNFiltration { chain, factors })
}

/// The subquotient N / C as a representation, for C <= N submodules of m.
fn factor_representation(m: &Representation, n: &Submodule, c: &Submodule) -> Result<Representation> {
    let outer = submodule_representation(m, n)?;
    // express C inside the coordinates of N's canonical basis
    let field = m.field();
    let spaces = (0..m.dim().len())
        .map(|v| {
            let outer_space = n.space(v);
            let pivots = outer_space.pivots();
            let vectors: Vec<Vec<u32>> = (0..c.space(v).dim())
                .map(|r| {
                    let w = c.space(v).basis().row(r);
                    // coordinates w.r.t. the RREF basis: peel off pivots
                    let mut remainder = w.to_vec();
                    let mut coords = vec![0u32; outer_space.dim()];
                    for (row, &pc) in pivots.iter().enumerate() {
                        let coeff = remainder[pc];
                        if coeff != 0 {
                            coords[row] = coeff;
                            for j in 0..remainder.len() {
                                let sub = field.mul(coeff, outer_space.basis().get(row, j));
                                remainder[j] = field.sub(remainder[j], sub);
                            }
                        }
                    }
                    debug_assert!(remainder.iter().all(|&x| x == 0), "C must sit inside N");
                    coords
                })
                .collect();
            crate::linalg::Subspace::from_vectors(field, outer_space.dim(), &vectors)
        })
        .collect();
    let inner = Submodule::new(&outer, spaces)?;
    quotient(&outer, &inner)
}

/// Multiset of stable factors of equal phase. Factors are stored in the
/// canonical computation order; comparison is up to isomorphism pairing.
#[derive(Debug, Clone)]
pub struct JHMultiset {
    pub factors: Vec<Representation>,
}

impl JHMultiset {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dims(&self) -> Vec<DimensionVector> {
        self.factors.iter().map(|f| f.dim().clone()).collect()
    }

    /// Multiset equality up to isomorphism.
    pub fn matches(&self, other: &JHMultiset, caps: &Caps) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        let mut used = vec![false; other.len()];
        for f in &self.factors {
            let mut found = false;
            for (k, g) in other.factors.iter().enumerate() {
                if used[k] || f.dim() != g.dim() {
                    continue;
                }
                if crate::rep::are_isomorphic(f, g, caps)? {
                    used[k] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Jordan-Hoelder factors of a sigma-semistable module: repeatedly extract
/// the minimal-dimension equal-phase stable submodule (ties broken by the
/// canonical submodule order) and pass to the quotient. Only the multiset is
/// canonical, and only the multiset is exposed.
pub fn jh_factors(m: &Representation, params: &StabilityParams, caps: &Caps) -> Result<JHMultiset> {
    if m.dim().is_zero() {
        return Err(Error::ZeroCharge);
    }
    let decider = Decider::new(params);
    {
        let subs = all_submodules(m, caps)?;
        if !decider.sigma_semistable(m, &subs) {
            return Err(Error::NotSemistable);
        }
    }
    let mut factors = Vec::new();
    let mut current = m.clone();
    while !current.dim().is_zero() {
        let subs = all_submodules(&current, caps)?;
        // submodule lists are canonically ordered: first equal-phase nonzero
        // entry is the minimal one with canonical tie-break
        let pick = subs
            .iter()
            .find(|n| {
                !n.is_zero() && decider.phase_cmp(&n.dim(), current.dim()) == Ordering::Equal
            })
            .expect("the full submodule has equal phase");
        let factor = submodule_representation(&current, pick)?;
        {
            let fsubs = all_submodules(&factor, caps)?;
            debug_assert!(
                decider.sigma_stable(&factor, &fsubs),
                "minimal equal-phase submodule must be stable"
            );
        }
        factors.push(factor);
        current = quotient(&current, pick)?;
    }
    factors.sort_by_key(|f| f.canonical_key());
    Ok(JHMultiset { factors })
}

/// Two semistable modules of equal phase are S-equivalent when their JH
/// multisets agree up to isomorphism. Differing phases simply return false.
pub fn s_equivalent(
    m: &Representation,
    n: &Representation,
    params: &StabilityParams,
    caps: &Caps,
) -> Result<bool> {
    let decider = Decider::new(params);
    if decider.phase_cmp(m.dim(), n.dim()) != Ordering::Equal {
        return Ok(false);
    }
    let jm = jh_factors(m, params, caps)?;
    let jn = jh_factors(n, params, caps)?;
    jm.matches(&jn, caps)
}

/// Conservative genericity check: false (with witnesses) when theta kills
/// any intermediate class 0 < w < v, true otherwise. A false answer can
/// still be generic when no witness class is realized by an actual
/// submodule of a semistable module.
pub fn is_generic(params: &StabilityParams) -> (bool, Vec<DimensionVector>) {
    let witnesses: Vec<DimensionVector> = crate::walls::intermediate_classes(params.class())
        .into_iter()
        .filter(|w| Decider::new(params).theta_sign(w) == Ordering::Equal)
        .collect();
    (witnesses.is_empty(), witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{FpMatrix, PrimeField};
    use std::sync::Arc;

    fn rat(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn std_params() -> StabilityParams {
        StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap()
    }

    fn k2_rep(a: u32, b: u32) -> Representation {
        let field = PrimeField::new(2).unwrap();
        Representation::new(
            corpus::k2(),
            field,
            DimensionVector(vec![1, 1]),
            vec![
                FpMatrix::from_rows(field, vec![vec![a]]),
                FpMatrix::from_rows(field, vec![vec![b]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn params_invariants_enforced() {
        assert!(StabilityParams::new(
            vec![rat(-1), rat(2)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1])
        )
        .is_err());
        assert!(StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(0)],
            rat(0),
            DimensionVector(vec![1, 1])
        )
        .is_err());
    }

    #[test]
    fn charge_worked_examples() {
        let params = std_params();
        let z = central_charge(&params, &DimensionVector(vec![1, 1])).unwrap();
        assert_eq!((z.re.clone(), z.im.clone()), (rat(0), rat(2)));
        let params2 = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(1),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let z2 = central_charge(&params2, &DimensionVector(vec![1, 0])).unwrap();
        assert_eq!((z2.re.clone(), z2.im.clone()), (rat(0), rat(1)));
        let zero = central_charge(&params, &DimensionVector(vec![0, 0])).unwrap();
        assert!(zero.is_zero());
    }

    fn charge(re: i64, im: i64) -> ChargeValue {
        ChargeValue { re: rat(re), im: rat(im) }
    }

    #[test]
    fn phase_comparison_cases() {
        assert_eq!(phase_compare(&charge(-1, 1), &charge(1, 1)).unwrap(), Ordering::Greater);
        assert_eq!(phase_compare(&charge(2, 2), &charge(1, 1)).unwrap(), Ordering::Equal);
        assert_eq!(phase_compare(&charge(-5, 0), &charge(0, 3)).unwrap(), Ordering::Greater);
        assert_eq!(phase_compare(&charge(1, 0), &charge(-1, 0)).unwrap(), Ordering::Less);
        assert!(phase_compare(&charge(0, 0), &charge(1, 1)).is_err());
    }

    #[test]
    fn king_verdicts_on_kronecker() {
        let caps = Caps::default();
        let params = std_params();
        assert!(is_theta_stable(&k2_rep(1, 0), &params, &caps).unwrap());
        assert!(!is_theta_semistable(&k2_rep(0, 0), &params, &caps).unwrap());
        // theta = 0 makes everything semistable and nothing with proper
        // nonzero submodules stable
        let zero_params = StabilityParams::new(
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        assert!(is_theta_semistable(&k2_rep(0, 0), &zero_params, &caps).unwrap());
        assert!(!is_theta_stable(&k2_rep(0, 0), &zero_params, &caps).unwrap());
        assert!(!is_theta_stable(&k2_rep(1, 0), &zero_params, &caps).unwrap());
    }

    #[test]
    fn sigma_agrees_with_theta_on_the_fixed_class() {
        let caps = Caps::default();
        let params = std_params();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let m = k2_rep(a, b);
            assert_eq!(
                is_sigma_semistable(&m, &params, &caps).unwrap(),
                is_theta_semistable(&m, &params, &caps).unwrap(),
            );
        }
    }

    #[test]
    fn simples_are_always_sigma_semistable() {
        let caps = Caps::default();
        let params = std_params();
        let s1 = crate::rep::vertex_simple(corpus::k2(), PrimeField::new(2).unwrap(), 0);
        assert!(is_sigma_semistable(&s1, &params, &caps).unwrap());
    }

    #[test]
    fn decomposable_module_is_sigma_unstable_off_the_wall() {
        let caps = Caps::default();
        let params = std_params();
        // S_1 (+) S_2 has the phase-3/4 submodule S_1
        assert!(!is_sigma_semistable(&k2_rep(0, 0), &params, &caps).unwrap());
    }

    #[test]
    fn hn_of_semistable_is_trivial() {
        let caps = Caps::default();
        let params = std_params();
        let hn = hn_filtration(&k2_rep(1, 0), &params, &caps).unwrap();
        assert_eq!(hn.length(), 1);
        assert_eq!(hn.factors[0].dim, DimensionVector(vec![1, 1]));
    }

    #[test]
    fn hn_of_the_split_module() {
        let caps = Caps::default();
        let params = std_params();
        let hn = hn_filtration(&k2_rep(0, 0), &params, &caps).unwrap();
        assert_eq!(hn.length(), 2);
        assert_eq!(hn.factors[0].dim, DimensionVector(vec![1, 0]));
        assert_eq!(hn.factors[1].dim, DimensionVector(vec![0, 1]));
        // flipping theta swaps the factors
        let flipped = StabilityParams::new(
            vec![rat(1), rat(-1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let hn2 = hn_filtration(&k2_rep(0, 0), &flipped, &caps).unwrap();
        assert_eq!(hn2.factors[0].dim, DimensionVector(vec![0, 1]));
        assert_eq!(hn2.factors[1].dim, DimensionVector(vec![1, 0]));
    }

    #[test]
    fn jh_on_the_wall_splits_into_simples() {
        let caps = Caps::default();
        let zero_params = StabilityParams::new(
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let jh = jh_factors(&k2_rep(a, b), &zero_params, &caps).unwrap();
            assert_eq!(
                jh.dims(),
                vec![DimensionVector(vec![0, 1]), DimensionVector(vec![1, 0])]
            );
        }
    }

    #[test]
    fn jh_of_stable_module_is_itself() {
        let caps = Caps::default();
        let params = std_params();
        let jh = jh_factors(&k2_rep(1, 0), &params, &caps).unwrap();
        assert_eq!(jh.len(), 1);
        assert_eq!(jh.factors[0].dim(), &DimensionVector(vec![1, 1]));
    }

    #[test]
    fn jh_multiplicities_are_tracked() {
        let caps = Caps::default();
        let field = PrimeField::new(2).unwrap();
        let s1 = crate::rep::vertex_simple(corpus::k2(), field, 0);
        let twice = s1.direct_sum(&s1).unwrap();
        let params = StabilityParams::new(
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![2, 0]),
        )
        .unwrap();
        let jh = jh_factors(&twice, &params, &caps).unwrap();
        assert_eq!(jh.len(), 2);
        assert!(jh.factors.iter().all(|f| f.dim() == &DimensionVector(vec![1, 0])));
    }

    #[test]
    fn s_equivalence_examples() {
        let caps = Caps::default();
        let zero_params = StabilityParams::new(
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let m = k2_rep(1, 0);
        let n = k2_rep(0, 1);
        assert!(s_equivalent(&m, &m, &zero_params, &caps).unwrap());
        assert!(s_equivalent(&m, &n, &zero_params, &caps).unwrap());
        // at generic theta the two stables are their own JH classes
        let params = std_params();
        assert!(!s_equivalent(&m, &n, &params, &caps).unwrap());
    }

    #[test]
    fn support_constant_is_min_lambda() {
        let params = StabilityParams::new(
            vec![rat(-5), rat(2)],
            vec![Rational::new(BigInt::from(1), BigInt::from(2)), rat(5)],
            rat(0),
            DimensionVector(vec![2, 5]),
        )
        .unwrap();
        assert_eq!(params.support_constant(), Rational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn genericity_examples() {
        let (ok, _) = is_generic(&std_params());
        assert!(ok);
        let zero_params = StabilityParams::new(
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let (ok, witnesses) = is_generic(&zero_params);
        assert!(!ok);
        assert_eq!(witnesses[0], DimensionVector(vec![0, 1]));
        let v22 = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![2, 2]),
        )
        .unwrap();
        let (ok, witnesses) = is_generic(&v22);
        assert!(!ok);
        assert!(witnesses.contains(&DimensionVector(vec![1, 1])));
    }

    #[test]
    fn hn_is_independent_of_submodule_order() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let caps = Caps::default();
        let params = std_params();
        let m = k2_rep(0, 0);
        let subs = all_submodules(&m, &caps).unwrap();
        let reference = hn_from_submodules(&m, &subs, &params).unwrap();
        for seed in 0..5u64 {
            let mut shuffled = subs.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let hn = hn_from_submodules(&m, &shuffled, &params).unwrap();
            let dims: Vec<_> = hn.factors.iter().map(|f| f.dim.clone()).collect();
            let ref_dims: Vec<_> = reference.factors.iter().map(|f| f.dim.clone()).collect();
            assert_eq!(dims, ref_dims);
            assert_eq!(
                hn.chain.iter().map(|s| s.canonical_key()).collect::<Vec<_>>(),
                reference.chain.iter().map(|s| s.canonical_key()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn scaling_invariance_of_decisions() {
        let caps = Caps::default();
        let params = std_params();
        let scaled = StabilityParams::new(
            vec![
                Rational::new(BigInt::from(-3), BigInt::from(2)),
                Rational::new(BigInt::from(3), BigInt::from(2)),
            ],
            vec![
                Rational::new(BigInt::from(3), BigInt::from(2)),
                Rational::new(BigInt::from(3), BigInt::from(2)),
            ],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let m = k2_rep(a, b);
            assert_eq!(
                is_theta_semistable(&m, &params, &caps).unwrap(),
                is_theta_semistable(&m, &scaled, &caps).unwrap()
            );
            assert_eq!(
                is_sigma_semistable(&m, &params, &caps).unwrap(),
                is_sigma_semistable(&m, &scaled, &caps).unwrap()
            );
        }
    }

    #[test]
    fn big_parameter_path_agrees_with_fast_path() {
        // coefficients big enough to force the BigInt evaluator
        let huge = BigInt::from(1i128 << 40);
        let params_big = StabilityParams::new(
            vec![
                Rational::from(-huge.clone()),
                Rational::from(huge.clone()),
            ],
            vec![Rational::from(huge.clone()), Rational::from(huge)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        let caps = Caps::default();
        let params = std_params();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let m = k2_rep(a, b);
            assert_eq!(
                is_theta_semistable(&m, &params, &caps).unwrap(),
                is_theta_semistable(&m, &params_big, &caps).unwrap()
            );
        }
    }

    #[test]
    fn support_property_on_small_reps() {
        // |Z(m)|^2 >= C^2 ||dim m||_inf^2 for a few modules
        let params = std_params();
        let c = params.support_constant();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let m = k2_rep(a, b);
            let z = central_charge(&params, m.dim()).unwrap();
            let bound = &c * &c * rat((m.dim().sup_norm() as i64) * (m.dim().sup_norm() as i64));
            assert!(z.norm_squared() >= bound);
        }
    }

    #[test]
    fn decider_requires_matching_class() {
        let caps = Caps::default();
        let params = std_params();
        let field = PrimeField::new(2).unwrap();
        let s1 = crate::rep::vertex_simple(corpus::k2(), field, 0);
        assert!(matches!(
            is_theta_semistable(&s1, &params, &caps),
            Err(Error::ClassMismatch { .. })
        ));
        // sigma-semistability does not care about the class
        assert!(is_sigma_semistable(&s1, &params, &caps).is_ok());
        let _ = Arc::strong_count(&corpus::k2());
    }
}
