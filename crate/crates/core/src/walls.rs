//! Wall-and-chamber geometry on the hyperplane Theta_v of stability
//! parameters: potential walls from intermediate classes, exact chamber
//! enumeration by Fourier-Motzkin elimination over the rationals, a
//! representation census, and census-based wall actuality.

use crate::corpus::{all_representations, assignment_count};
use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_form, rat_dot, rat_kernel, Rational};
use crate::quiver::{DimensionVector, QuiverPresentation};
use crate::rep::{all_submodules, are_isomorphic, Representation};
use crate::stability::{Decider, StabilityParams};
use crate::Caps;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// A wall: the hyperplane theta(w) = 0 inside Theta_v, tagged by the
/// lexicographically smallest intermediate class cutting it out.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    pub w: DimensionVector,
}

/// All classes w with 0 <= w <= v componentwise and w not in {0, v},
/// lexicographically ordered. This is the sound over-approximation of
/// destabilizing classes; wall dedup and actuality refine it.
pub fn intermediate_classes(v: &DimensionVector) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; v.len()];
    loop {
        let w = DimensionVector(cur.clone());
        if !w.is_zero() && w != *v {
            out.push(w);
        }
        let mut i = cur.len();
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= v.get(i) {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn rat_from(v: u32) -> Rational {
    Rational::from(BigInt::from(v))
}

/// A canonical rational basis of Theta_v = { theta : theta(v) = 0 }.
pub fn theta_basis(v: &DimensionVector) -> Vec<Vec<Rational>> {
    let row: Vec<Rational> = v.0.iter().map(|&x| rat_from(x)).collect();
    rat_kernel(&[row])
}

/// Coordinates of a point of Theta_v with respect to [`theta_basis`], or
/// None when the point does not lie on Theta_v.
pub fn theta_in_basis_coordinates(v: &DimensionVector, theta: &[Rational]) -> Option<Vec<Rational>> {
    let basis = theta_basis(v);
    let k = basis.len();
    let rows: Vec<Vec<Rational>> = (0..theta.len())
        .map(|j| {
            let mut row: Vec<Rational> = (0..k).map(|i| basis[i][j].clone()).collect();
            row.push(theta[j].clone());
            row
        })
        .collect();
    let (r, rank) = crate::linalg::rat_rref(&rows);
    // inconsistent iff some pivot lands in the augmented column
    for row in r.iter().take(rank) {
        let pivot = row.iter().position(|x| !x.is_zero())?;
        if pivot == k {
            return None;
        }
    }
    if rank != k {
        // the basis is independent, so a consistent system pins every y_i
        return (k == 0).then(Vec::new);
    }
    Some((0..k).map(|i| r[i][k].clone()).collect())
}

/// Potential walls: one canonical representative per distinct hyperplane
/// among the intermediate classes. Two classes cut out the same hyperplane
/// exactly when their restrictions to Theta_v are proportional; classes
/// proportional to v restrict to zero and define no wall at all (for
/// non-primitive v this degeneracy is what kills genericity, and it is
/// reported by the genericity check rather than listed as a wall).
pub fn potential_walls(v: &DimensionVector) -> Vec<Wall> {
    let basis = theta_basis(v);
    let mut seen: Vec<(Vec<Rational>, DimensionVector)> = Vec::new();
    for w in intermediate_classes(v) {
        let wr: Vec<Rational> = w.0.iter().map(|&x| rat_from(x)).collect();
        let restricted: Vec<Rational> = basis.iter().map(|b| rat_dot(b, &wr)).collect();
        if restricted.iter().all(|x| x.is_zero()) {
            continue;
        }
        let signature = primitive_integer_form(&restricted);
        match seen.iter_mut().find(|(sig, _)| *sig == signature) {
            Some((_, rep)) => {
                if w < *rep {
                    *rep = w;
                }
            }
            None => seen.push((signature, w)),
        }
    }
    let mut walls: Vec<Wall> = seen.into_iter().map(|(_, w)| Wall { w }).collect();
    walls.sort();
    walls
}

/// Sign of one chamber constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An open chamber: a realizable strict sign vector over the wall list,
/// together with one rational interior point (theta coordinates in the
/// ambient space, satisfying theta(v) = 0 exactly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<Sign>,
    pub witness: Vec<Rational>,
}

impl Chamber {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.as_char()).collect()
    }
}

/// Back-substitution strategy; two strategies give two distinct interior
/// points of the same chamber.
#[derive(Clone, Copy)]
enum Picker {
    First,
    Second,
}

/// Fourier-Motzkin feasibility with witness for a system of strict
/// homogeneous inequalities rows[k] . y > 0. Returns None when infeasible.
fn feasible_witness(rows: &[Vec<Rational>], nvars: usize, picker: Picker) -> Option<Vec<Rational>> {
    if rows.iter().any(|r| r.iter().all(|x| x.is_zero())) {
        return None; // a derived constraint reads 0 > 0
    }
    if nvars == 0 {
        // no all-zero rows and no variables means no rows at all
        return Some(Vec::new());
    }
    let j = nvars - 1;
    let mut pos: Vec<&Vec<Rational>> = Vec::new();
    let mut neg: Vec<&Vec<Rational>> = Vec::new();
    let mut derived: Vec<Vec<Rational>> = Vec::new();
    for r in rows {
        if r[j].is_positive() {
            pos.push(r);
        } else if r[j].is_negative() {
            neg.push(r);
        } else {
            derived.push(r[..j].to_vec());
        }
    }
    for p in &pos {
        for n in &neg {
            // positive combination cancelling the j-th coefficient
            let row: Vec<Rational> =
                (0..j).map(|k| &p[k] * (-&n[j]) + &n[k] * &p[j]).collect();
            derived.push(row);
        }
    }
    let partial = feasible_witness(&derived, j, picker)?;
    // bounds on y_j given the chosen earlier coordinates
    let eval_rest = |r: &Vec<Rational>| -> Rational {
        (0..j).map(|k| &r[k] * &partial[k]).fold(Rational::zero(), |a, b| a + b)
    };
    let mut lower: Option<Rational> = None; // y_j > lower
    for p in &pos {
        let bound = -eval_rest(p) / &p[j];
        lower = Some(match lower {
            Some(l) if l >= bound => l,
            _ => bound,
        });
    }
    let mut upper: Option<Rational> = None; // y_j < upper
    for n in &neg {
        let bound = -eval_rest(n) / &n[j];
        upper = Some(match upper {
            Some(u) if u <= bound => u,
            _ => bound,
        });
    }
    let one = Rational::one();
    let two = &one + &one;
    let y = match (lower, upper) {
        (Some(l), Some(u)) => {
            debug_assert!(l < u, "Fourier-Motzkin promised an open interval");
            match picker {
                Picker::First => (&l + &u) / &two,
                Picker::Second => (&l + &((&l + &u) / &two)) / &two,
            }
        }
        (Some(l), None) => match picker {
            Picker::First => &l + &one,
            Picker::Second => &l + &two,
        },
        (None, Some(u)) => match picker {
            Picker::First => &u - &one,
            Picker::Second => &u - &two,
        },
        (None, None) => match picker {
            Picker::First => one.clone(),
            Picker::Second => two.clone(),
        },
    };
    let mut out = partial;
    out.push(y);
    Some(out)
}

/// Constraint rows over the Theta_v coordinates for a prefix of signed
/// walls.
fn sign_rows(restricted: &[Vec<Rational>], signs: &[Sign]) -> Vec<Vec<Rational>> {
    signs
        .iter()
        .enumerate()
        .map(|(k, s)| match s {
            Sign::Plus => restricted[k].clone(),
            Sign::Minus => restricted[k].iter().map(|x| -x).collect(),
        })
        .collect()
}

/// Exact chamber enumeration: every realizable strict sign vector over the
/// walls, each with a rational interior witness, found by depth-first sign
/// assignment with Fourier-Motzkin pruning.
pub fn chambers(v: &DimensionVector, walls: &[Wall], caps: &Caps) -> Result<Vec<Chamber>> {
    if walls.len() > caps.max_walls {
        return Err(Error::cap("wall count for chamber enumeration", caps.max_walls as u64, walls.len() as u64));
    }
    if v.len() > caps.max_theta_vertices {
        return Err(Error::cap(
            "vertex count for chamber enumeration",
            caps.max_theta_vertices as u64,
            v.len() as u64,
        ));
    }
    let basis = theta_basis(v);
    let nvars = basis.len();
    let restricted: Vec<Vec<Rational>> = walls
        .iter()
        .map(|wall| {
            let wr: Vec<Rational> = wall.w.0.iter().map(|&x| rat_from(x)).collect();
            basis.iter().map(|b| rat_dot(b, &wr)).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut signs: Vec<Sign> = Vec::new();
    fn search(
        restricted: &[Vec<Rational>],
        nvars: usize,
        basis: &[Vec<Rational>],
        signs: &mut Vec<Sign>,
        out: &mut Vec<Chamber>,
    ) {
        let k = signs.len();
        if feasible_witness(&sign_rows(restricted, signs), nvars, Picker::First).is_none() {
            return;
        }
        if k == restricted.len() {
            let y = feasible_witness(&sign_rows(restricted, signs), nvars, Picker::First)
                .expect("checked feasible");
            out.push(Chamber { signs: signs.clone(), witness: coords_to_theta(basis, &y) });
            return;
        }
        for s in [Sign::Plus, Sign::Minus] {
            signs.push(s);
            search(restricted, nvars, basis, signs, out);
            signs.pop();
        }
    }
    search(&restricted, nvars, &basis, &mut signs, &mut out);
    Ok(out)
}

/// A second interior point of the same chamber, distinct from the stored
/// witness whenever the chamber has positive dimension.
pub fn second_witness(v: &DimensionVector, walls: &[Wall], chamber: &Chamber) -> Option<Vec<Rational>> {
    let basis = theta_basis(v);
    let restricted: Vec<Vec<Rational>> = walls
        .iter()
        .map(|wall| {
            let wr: Vec<Rational> = wall.w.0.iter().map(|&x| rat_from(x)).collect();
            basis.iter().map(|b| rat_dot(b, &wr)).collect()
        })
        .collect();
    let y = feasible_witness(&sign_rows(&restricted, &chamber.signs), basis.len(), Picker::Second)?;
    Some(coords_to_theta(&basis, &y))
}

fn coords_to_theta(basis: &[Vec<Rational>], y: &[Rational]) -> Vec<Rational> {
    if basis.is_empty() {
        return Vec::new();
    }
    let n = basis[0].len();
    let mut theta = vec![Rational::zero(); n];
    for (b, c) in basis.iter().zip(y) {
        for (t, x) in theta.iter_mut().zip(b) {
            *t = &*t + c * x;
        }
    }
    theta
}

/// Stability status of one isomorphism class in a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusStatus {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub rep: Representation,
    pub status: CensusStatus,
    /// number of enumerated representations isomorphic to this one
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub entries: Vec<CensusEntry>,
    /// false when an isomorphism search hit its cap and classes were listed
    /// separately instead of merged
    pub grouping_complete: bool,
}

impl CensusResult {
    pub fn count_with(&self, status: CensusStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

/// Exhaustive classification of all representations of class `v` over F_p
/// at the parameter `theta`, grouped by isomorphism. The lambda and xi
/// coordinates do not affect King verdicts, so the census fixes lambda = 1,
/// xi = 0.
pub fn census(
    pres: &Arc<QuiverPresentation>,
    p: u32,
    v: &DimensionVector,
    theta: &[Rational],
    caps: &Caps,
) -> Result<CensusResult> {
    let params = StabilityParams::new(
        theta.to_vec(),
        vec![Rational::one(); v.len()],
        Rational::zero(),
        v.clone(),
    )?;
    let total = assignment_count(pres, p, v).unwrap_or(u128::MAX);
    if total > caps.census as u128 {
        return Err(Error::cap("census enumeration", caps.census, total.min(u64::MAX as u128) as u64));
    }
    let reps = all_representations(pres, p, v, caps.census)
        .expect("assignment count checked above");
    classify_and_group(reps, &params, caps)
}

/// Classify a list of representations of the fixed class and group them by
/// isomorphism; shared by `census` and its partitioned variant.
pub fn classify_and_group(
    reps: Vec<Representation>,
    params: &StabilityParams,
    caps: &Caps,
) -> Result<CensusResult> {
    let decider = Decider::new(params);
    let mut entries: Vec<CensusEntry> = Vec::new();
    let mut grouping_complete = true;
    for rep in reps {
        let subs = all_submodules(&rep, caps)?;
        let (semi, stable) = decider.theta_verdict(&rep, &subs)?;
        let status = if stable {
            CensusStatus::Stable
        } else if semi {
            CensusStatus::StrictlySemistable
        } else {
            CensusStatus::Unstable
        };
        let mut merged = false;
        for entry in entries.iter_mut().filter(|e| e.status == status) {
            match are_isomorphic(&entry.rep, &rep, caps) {
                Ok(true) => {
                    entry.count += 1;
                    merged = true;
                    break;
                }
                Ok(false) => {}
                Err(e) if e.is_cap() => {
                    grouping_complete = false;
                }
                Err(e) => return Err(e),
            }
        }
        if !merged {
            entries.push(CensusEntry { rep, status, count: 1 });
        }
    }
    entries.sort_by_key(|e| e.rep.canonical_key());
    Ok(CensusResult { entries, grouping_complete })
}

/// A wall is actual when the census at a rational interior point of the
/// wall (inside Theta_v, off every other wall) contains a strictly
/// semistable representation.
pub fn actual_walls(
    pres: &Arc<QuiverPresentation>,
    p: u32,
    v: &DimensionVector,
    walls: &[Wall],
    caps: &Caps,
) -> Result<Vec<(Wall, bool)>> {
    let mut out = Vec::new();
    for (k, wall) in walls.iter().enumerate() {
        let theta = wall_interior_point(v, walls, k)?;
        let result = census(pres, p, v, &theta, caps)?;
        let actual = result.count_with(CensusStatus::StrictlySemistable) > 0;
        out.push((wall.clone(), actual));
    }
    Ok(out)
}

/// A rational point with theta(v) = 0, theta(w_k) = 0, and theta(w) != 0
/// for every other wall. Searched over integer combinations of a kernel
/// basis; distinct hyperplanes guarantee a generic combination works.
pub fn wall_interior_point(
    v: &DimensionVector,
    walls: &[Wall],
    k: usize,
) -> Result<Vec<Rational>> {
    let vrow: Vec<Rational> = v.0.iter().map(|&x| rat_from(x)).collect();
    let wrow: Vec<Rational> = walls[k].w.0.iter().map(|&x| rat_from(x)).collect();
    let kernel = rat_kernel(&[vrow, wrow]);
    let others: Vec<Vec<Rational>> = walls
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, wall)| wall.w.0.iter().map(|&x| rat_from(x)).collect())
        .collect();
    if kernel.is_empty() {
        let theta = vec![Rational::zero(); v.len()];
        if others.is_empty() {
            return Ok(theta);
        }
        return Err(Error::NoWallInteriorPoint { wall: walls[k].w.to_string() });
    }
    for t in 1i64..=50 {
        let mut theta = vec![Rational::zero(); v.len()];
        let mut weight = Rational::one();
        let step = Rational::from(BigInt::from(t));
        for b in &kernel {
            for (x, c) in theta.iter_mut().zip(b) {
                *x = &*x + &weight * c;
            }
            weight = &weight * &step;
        }
        if others.iter().all(|w| !rat_dot(&theta, w).is_zero()) {
            return Ok(theta);
        }
    }
    Err(Error::NoWallInteriorPoint { wall: walls[k].w.to_string() })
}
