//! The bundled example corpus: the quivers, representations, families and
//! parameter draws that the test suites, the benchmarks and the `sweep`
//! subcommand all share. Everything here is deterministic; randomized pieces
//! take an explicit seed.

use crate::family::{FamilyOverP1, PolyMatrix};
use crate::linalg::{PrimeField, Rational};
use crate::quiver::{Arrow, DimensionVector, Path, Quiver, QuiverPresentation, Relation};
use crate::rep::Representation;
use crate::stability::StabilityParams;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
    let arrows = arrows
        .iter()
        .map(|(name, src, tgt)| Arrow {
            name: name.to_string(),
            source: names.iter().position(|v| v == src).unwrap(),
            target: names.iter().position(|v| v == tgt).unwrap(),
        })
        .collect();
    Quiver::new(names, arrows).unwrap()
}

/// Kronecker quiver: two vertices, two parallel arrows `a, b: 1 -> 2`.
pub fn k2() -> Arc<QuiverPresentation> {
    Arc::new(QuiverPresentation::new(
        quiver(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]),
        vec![],
    ))
}

/// Linear A3 quiver `1 -f-> 2 -g-> 3`.
pub fn a3() -> Arc<QuiverPresentation> {
    Arc::new(QuiverPresentation::new(
        quiver(&["1", "2", "3"], &[("f", "1", "2"), ("g", "2", "3")]),
        vec![],
    ))
}

/// One loop `x` at a single vertex with the relation x^2 = 0.
pub fn loop_x2() -> Arc<QuiverPresentation> {
    let q = quiver(&["1"], &[("x", "1", "1")]);
    let x = q.arrow_index("x").unwrap();
    let xx = Path::from_arrows(&q, vec![x, x]).unwrap();
    let rel = Relation::new(vec![(Rational::from(BigInt::from(1)), xx)]).unwrap();
    Arc::new(QuiverPresentation::new(q, vec![rel]))
}

/// Three parallel arrows `x, y, z: 1 -> 2`.
pub fn kronecker3() -> Arc<QuiverPresentation> {
    Arc::new(QuiverPresentation::new(
        quiver(&["1", "2"], &[("x", "1", "2"), ("y", "1", "2"), ("z", "1", "2")]),
        vec![],
    ))
}

/// The four bundled quivers, with their display names.
pub fn bundled_quivers() -> Vec<(&'static str, Arc<QuiverPresentation>)> {
    vec![
        ("k2", k2()),
        ("a3", a3()),
        ("loop_x2", loop_x2()),
        ("kronecker3", kronecker3()),
    ]
}

fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// All dimension vectors for `n` vertices with total dimension in
/// `1..=max_total`, lexicographic.
pub fn dimension_vectors(n: usize, max_total: u32) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn walk(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<DimensionVector>) {
        if pos == cur.len() {
            let dv = DimensionVector(cur.clone());
            if !dv.is_zero() {
                out.push(dv);
            }
            return;
        }
        for d in 0..=left {
            cur[pos] = d;
            walk(cur, pos + 1, left - d, out);
        }
        cur[pos] = 0;
    }
    walk(&mut cur, 0, max_total, &mut out);
    out.sort();
    out
}

/// Enumerate every representation of class `v` over F_p, in odometer order
/// over the raw matrix entries; assignments violating the relations are
/// skipped. `None` when the assignment count exceeds `cap`.
pub fn all_representations(
    pres: &Arc<QuiverPresentation>,
    p: u32,
    v: &DimensionVector,
    cap: u64,
) -> Option<Vec<Representation>> {
    let count = assignment_count(pres, p, v)?;
    if count > cap as u128 {
        return None;
    }
    let field = PrimeField::new(p).unwrap();
    let shapes: Vec<(usize, usize)> = pres
        .quiver
        .arrows()
        .iter()
        .map(|a| (v.get(a.target) as usize, v.get(a.source) as usize))
        .collect();
    let total_entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut entries = vec![0u32; total_entries];
    let mut out = Vec::new();
    loop {
        if let Ok(rep) = Representation::from_flat_entries(pres.clone(), field, v.clone(), &shapes, &entries) {
            out.push(rep);
        }
        let mut i = 0;
        loop {
            if i == entries.len() {
                return Some(out);
            }
            entries[i] += 1;
            if entries[i] < p {
                break;
            }
            entries[i] = 0;
            i += 1;
        }
        if entries.is_empty() {
            return Some(out);
        }
    }
}

/// p^(total matrix entries) as u128, or None on overflow.
pub fn assignment_count(pres: &QuiverPresentation, p: u32, v: &DimensionVector) -> Option<u128> {
    let mut total: u32 = 0;
    for a in pres.quiver.arrows() {
        total = total.checked_add(v.get(a.target).checked_mul(v.get(a.source))?)?;
    }
    if total > 120 {
        return None;
    }
    (p as u128).checked_pow(total)
}

/// Deterministic sample of at most `n` distinct valid representations of
/// class `v`. Uniform over raw matrix assignments with rejection on the
/// relations, except for the square-zero loop where rejection would almost
/// never hit: there we draw X = P J P^{-1} with J a canonical square-zero
/// matrix, which reaches every square-zero X.
pub fn sample_representations(
    pres: &Arc<QuiverPresentation>,
    p: u32,
    v: &DimensionVector,
    n: usize,
    seed: u64,
) -> Vec<Representation> {
    let field = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: Vec<(usize, usize)> = pres
        .quiver
        .arrows()
        .iter()
        .map(|a| (v.get(a.target) as usize, v.get(a.source) as usize))
        .collect();
    let square_zero_loop = !pres.is_hereditary()
        && pres.quiver.num_vertices() == 1
        && pres.quiver.arrows().len() == 1;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < n && attempts < n * 1000 {
        attempts += 1;
        let entries: Vec<u32> = if square_zero_loop {
            sample_square_zero(field, v.get(0) as usize, &mut rng)
        } else {
            let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
            (0..total).map(|_| rng.gen_range(0..p)).collect()
        };
        if !seen.insert(entries.clone()) {
            continue;
        }
        if let Ok(rep) = Representation::from_flat_entries(pres.clone(), field, v.clone(), &shapes, &entries) {
            out.push(rep);
        }
    }
    out
}

/// Row-major entries of a random d x d matrix X with X^2 = 0, drawn as a
/// conjugate of the canonical rank-r square-zero matrix.
fn sample_square_zero(field: PrimeField, d: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    use crate::linalg::FpMatrix;
    let r = rng.gen_range(0..=(d / 2));
    let mut j = FpMatrix::zero(field, d, d);
    for k in 0..r {
        // e_{d-r+k} maps to e_k
        j.set(k, d - r + k, 1);
    }
    let basis = loop {
        let mut m = FpMatrix::zero(field, d, d);
        for i in 0..d {
            for c in 0..d {
                m.set(i, c, rng.gen_range(0..field.p()));
            }
        }
        if m.is_invertible() {
            break m;
        }
    };
    let inv = invert(&basis);
    let x = basis.mul(&j).mul(&inv);
    x.entries().to_vec()
}

fn invert(m: &crate::linalg::FpMatrix) -> crate::linalg::FpMatrix {
    use crate::linalg::FpMatrix;
    let d = m.rows();
    let field = m.field();
    let mut aug = FpMatrix::zero(field, d, 2 * d);
    for i in 0..d {
        for c in 0..d {
            aug.set(i, c, m.get(i, c));
        }
        aug.set(i, d + i, 1);
    }
    let rank = aug.rref_in_place();
    assert_eq!(rank, d, "matrix not invertible");
    let mut out = FpMatrix::zero(field, d, d);
    for i in 0..d {
        for c in 0..d {
            out.set(i, c, aug.get(i, d + c));
        }
    }
    out
}

/// Seeded draws of exact stability parameters for a fixed class: integer
/// theta solving theta(v) = 0, positive integer lambda, small rational xi.
/// Roughly one draw in four is rescaled by a non-integral rational so the
/// full rational path is exercised.
pub fn draw_params(v: &DimensionVector, count: usize, seed: u64) -> Vec<StabilityParams> {
    let n = v.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0a4a);
    let pivot = (0..n).rev().find(|&i| v.get(i) != 0).expect("nonzero class");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut theta: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        // clear theta(v) through the pivot coordinate
        let partial: i64 = (0..n)
            .filter(|&i| i != pivot)
            .map(|i| theta[i] * v.get(i) as i64)
            .sum();
        for (i, t) in theta.iter_mut().enumerate() {
            if i != pivot {
                *t *= v.get(pivot) as i64;
            }
        }
        theta[pivot] = -partial;
        let lambda: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
        let xi_num = rng.gen_range(-3..=3);
        let xi_den = *[1i64, 1, 2, 3].get(rng.gen_range(0..4)).unwrap();
        let scale = match rng.gen_range(0..4) {
            0 => rat_frac(1, 2),
            1 => rat_frac(2, 3),
            _ => rat(1),
        };
        let theta: Vec<Rational> = theta.iter().map(|&t| rat(t) * &scale).collect();
        let lambda: Vec<Rational> = lambda.iter().map(|&l| rat(l) * &scale).collect();
        let params = StabilityParams::new(theta, lambda, rat_frac(xi_num, xi_den), v.clone())
            .expect("draw satisfies the parameter invariants");
        out.push(params);
    }
    out
}

/// A named family with the parameters that make every fiber semistable.
pub struct BundledFamily {
    pub name: &'static str,
    pub family: FamilyOverP1,
    pub params: StabilityParams,
}

/// The bundled P^1-families. All are valid: degree patterns hold, relations
/// hold identically, and every fiber is semistable for the attached
/// parameters.
pub fn bundled_families() -> Vec<BundledFamily> {
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    let mut out = Vec::new();

    // Tautological K2 family: T_1 = O, T_2 = O(1), arrows (s, t).
    {
        let pres = k2();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![0], vec![1]],
            vec![
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![1, 0])]),
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![0, 1])]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        out.push(BundledFamily { name: "k2_taut", family, params });
    }

    // Constant K2 family: trivial bundles, arrows (1, 0).
    {
        let pres = k2();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![0], vec![0]],
            vec![
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![1])]),
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        out.push(BundledFamily { name: "k2_const", family, params });
    }

    // Constant family with equal twists: same fibers, shifted determinant
    // degrees that cancel against theta(v) = 0.
    {
        let pres = k2();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![1], vec![1]],
            vec![
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![1])]),
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        out.push(BundledFamily { name: "k2_twisted_const", family, params });
    }

    // K2 with doubled twist: arrows (s^2, t^2).
    {
        let pres = k2();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![0], vec![2]],
            vec![
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![1, 0, 0])]),
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![0, 0, 1])]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        out.push(BundledFamily { name: "k2_taut_twist2", family, params });
    }

    // Constant K2 family of class (1,2): coordinate embedding, stable fibers.
    {
        let pres = k2();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![0], vec![0, 0]],
            vec![
                PolyMatrix::from_entry_coeffs(f2, 2, 1, &[(0, 0, vec![1])]),
                PolyMatrix::from_entry_coeffs(f2, 2, 1, &[(1, 0, vec![1])]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-2), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 2]),
        )
        .unwrap();
        out.push(BundledFamily { name: "k2_const_v12", family, params });
    }

    // Tautological 3-Kronecker family over F_3: arrows (s, t, s+t).
    {
        let pres = kronecker3();
        let family = FamilyOverP1::new(
            pres.clone(),
            f3,
            vec![vec![0], vec![1]],
            vec![
                PolyMatrix::from_entry_coeffs(f3, 1, 1, &[(0, 0, vec![1, 0])]),
                PolyMatrix::from_entry_coeffs(f3, 1, 1, &[(0, 0, vec![0, 1])]),
                PolyMatrix::from_entry_coeffs(f3, 1, 1, &[(0, 0, vec![1, 1])]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1)],
            vec![rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1]),
        )
        .unwrap();
        out.push(BundledFamily { name: "kron3_taut", family, params });
    }

    // A3 family with one degree-one arrow; every fiber is strictly
    // semistable, so both routes must report zero.
    {
        let pres = a3();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![0], vec![0], vec![1]],
            vec![
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![1])]),
                PolyMatrix::from_entry_coeffs(f2, 1, 1, &[(0, 0, vec![1, 0])]),
            ],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(-1), rat(1), rat(0)],
            vec![rat(1), rat(1), rat(1)],
            rat(0),
            DimensionVector(vec![1, 1, 1]),
        )
        .unwrap();
        out.push(BundledFamily { name: "a3_taut", family, params });
    }

    // Constant nilpotent loop family: checks relations as polynomial
    // identities. Theta is forced to zero on a single vertex.
    {
        let pres = loop_x2();
        let family = FamilyOverP1::new(
            pres.clone(),
            f2,
            vec![vec![0, 0]],
            vec![PolyMatrix::from_entry_coeffs(f2, 2, 2, &[(0, 1, vec![1])])],
        )
        .unwrap();
        let params = StabilityParams::new(
            vec![rat(0)],
            vec![rat(1)],
            rat(0),
            DimensionVector(vec![2]),
        )
        .unwrap();
        out.push(BundledFamily { name: "loop_const_nilp", family, params });
    }

    out
}

/// Build a bundled family by name.
pub fn family_by_name(name: &str) -> Option<BundledFamily> {
    bundled_families().into_iter().find(|f| f.name == name)
}

/// A representation corpus entry: one quiver, one prime, one class, and
/// either the exhaustive list of representations or a deterministic sample.
pub struct CorpusSlice {
    pub quiver_name: &'static str,
    pub pres: Arc<QuiverPresentation>,
    pub p: u32,
    pub class: DimensionVector,
    pub reps: Vec<Representation>,
    pub exhaustive: bool,
}

/// The module corpus used by the acceptance suites: for each bundled quiver
/// and each class of total dimension <= `max_total`, every representation
/// when the assignment count fits under `exhaustive_cap`, otherwise a seeded
/// sample of `sample_n` valid representations.
pub fn module_corpus(
    p: u32,
    max_total: u32,
    exhaustive_cap: u64,
    sample_n: usize,
    seed: u64,
) -> Vec<CorpusSlice> {
    let mut out = Vec::new();
    for (name, pres) in bundled_quivers() {
        for class in dimension_vectors(pres.quiver.num_vertices(), max_total) {
            let (reps, exhaustive) = match all_representations(&pres, p, &class, exhaustive_cap) {
                Some(reps) => (reps, true),
                None => (sample_representations(&pres, p, &class, sample_n, seed), false),
            };
            if reps.is_empty() {
                continue;
            }
            out.push(CorpusSlice {
                quiver_name: name,
                pres: pres.clone(),
                p,
                class,
                reps,
                exhaustive,
            });
        }
    }
    out
}
