//! Finite-dimensional modules over a quiver algebra, over a prime field:
//! construction with relation checking, simples and projectives, the full
//! submodule lattice, quotients, Hom spaces and isomorphism testing.

use crate::error::{Error, Result};
use crate::linalg::{enumerate_all_subspaces, FpMatrix, PrimeField, Subspace};
use crate::quiver::{DimensionVector, Path, QuiverPresentation};
use crate::Caps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A representation of the quiver satisfying the relations: one matrix of
/// shape d_target x d_source per arrow. Immutable after construction.
#[derive(Clone)]
pub struct Representation {
    pres: Arc<QuiverPresentation>,
    field: PrimeField,
    dim: DimensionVector,
    mats: Vec<FpMatrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres)
            && self.field == other.field
            && self.dim == other.dim
            && self.mats == other.mats
    }
}

impl Eq for Representation {}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation(dim {} over F_{}", self.dim, self.field.p())?;
        for (i, m) in self.mats.iter().enumerate() {
            write!(f, ", {}: {}", self.pres.quiver.arrow(i).name, m)?;
        }
        write!(f, ")")
    }
}

impl Representation {
    /// Relation-checked construction. The matrices are indexed like the
    /// quiver's arrows.
    pub fn new(
        pres: Arc<QuiverPresentation>,
        field: PrimeField,
        dim: DimensionVector,
        mats: Vec<FpMatrix>,
    ) -> Result<Self> {
        if dim.len() != pres.quiver.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector has {} entries for {} vertices",
                dim.len(),
                pres.quiver.num_vertices()
            )));
        }
        if mats.len() != pres.quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                mats.len(),
                pres.quiver.arrows().len()
            )));
        }
        for (idx, a) in pres.quiver.arrows().iter().enumerate() {
            let (er, ec) = (dim.get(a.target) as usize, dim.get(a.source) as usize);
            let m = &mats[idx];
            if m.rows() != er || m.cols() != ec {
                return Err(Error::ShapeMismatch {
                    arrow: a.name.clone(),
                    expected_rows: er,
                    expected_cols: ec,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        let rep = Representation { pres, field, dim, mats };
        rep.check_relations()?;
        Ok(rep)
    }

    /// Construction from a flat row-major entry list covering all arrows in
    /// order; used by exhaustive enumeration.
    pub fn from_flat_entries(
        pres: Arc<QuiverPresentation>,
        field: PrimeField,
        dim: DimensionVector,
        shapes: &[(usize, usize)],
        entries: &[u32],
    ) -> Result<Self> {
        let mut mats = Vec::with_capacity(shapes.len());
        let mut off = 0;
        for &(r, c) in shapes {
            let mut m = FpMatrix::zero(field, r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, entries[off]);
                    off += 1;
                }
            }
            mats.push(m);
        }
        Representation::new(pres, field, dim, mats)
    }

    fn check_relations(&self) -> Result<()> {
        for rel in &self.pres.relations {
            let rows = self.dim.get(rel.target()) as usize;
            let cols = self.dim.get(rel.source()) as usize;
            let mut acc = FpMatrix::zero(self.field, rows, cols);
            for (coef, path) in rel.terms() {
                let c = self.field.from_rational(coef)?;
                acc = acc.add(&self.evaluate_path(path).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated {
                    relation: rel.display(&self.pres.quiver),
                    residual: acc.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Matrix of a path acting on the module: the first-applied arrow sits
    /// rightmost in the product.
    pub fn evaluate_path(&self, path: &Path) -> FpMatrix {
        if path.is_trivial() {
            return FpMatrix::identity(self.field, self.dim.get(path.source()) as usize);
        }
        let mut acc: Option<FpMatrix> = None;
        for &idx in path.arrow_indices() {
            let m = &self.mats[idx];
            acc = Some(match acc {
                None => m.clone(),
                Some(prev) => m.mul(&prev),
            });
        }
        acc.unwrap()
    }

    pub fn presentation(&self) -> &Arc<QuiverPresentation> {
        &self.pres
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> &DimensionVector {
        &self.dim
    }

    pub fn arrow_matrix(&self, idx: usize) -> &FpMatrix {
        &self.mats[idx]
    }

    pub fn is_zero_module(&self) -> bool {
        self.dim.is_zero()
    }

    /// Deterministic encoding used for canonical sort orders in tests and
    /// census output.
    pub fn canonical_key(&self) -> (Vec<u32>, Vec<u32>) {
        let mut entries = Vec::new();
        for m in &self.mats {
            entries.extend_from_slice(m.entries());
        }
        (self.dim.0.clone(), entries)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_same_world(other)?;
        let dim = self.dim.add(&other.dim);
        let mut mats = Vec::with_capacity(self.mats.len());
        for (idx, a) in self.pres.quiver.arrows().iter().enumerate() {
            let (m1, m2) = (&self.mats[idx], &other.mats[idx]);
            let mut m = FpMatrix::zero(
                self.field,
                dim.get(a.target) as usize,
                dim.get(a.source) as usize,
            );
            for r in 0..m1.rows() {
                for c in 0..m1.cols() {
                    m.set(r, c, m1.get(r, c));
                }
            }
            for r in 0..m2.rows() {
                for c in 0..m2.cols() {
                    m.set(m1.rows() + r, m1.cols() + c, m2.get(r, c));
                }
            }
            mats.push(m);
        }
        Representation::new(self.pres.clone(), self.field, dim, mats)
    }

    fn check_same_world(&self, other: &Representation) -> Result<()> {
        if self.field != other.field
            || !(Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres)
        {
            return Err(Error::IncompatibleRepresentations);
        }
        Ok(())
    }

    /// Bounded check that every nontrivial cyclic path of length at most
    /// `max_cycle_len` acts as zero (or, with `nilpotent`, acts nilpotently).
    /// For cyclic quivers this is a bounded check, not a proof beyond the
    /// bound; for acyclic quivers it is vacuously true.
    pub fn cycles_act_as_zero(&self, max_cycle_len: usize, nilpotent: bool, caps: &Caps) -> Result<bool> {
        assert!(max_cycle_len >= 1);
        let q = &self.pres.quiver;
        for v in 0..q.num_vertices() {
            for path in q.enumerate_paths(v, max_cycle_len, caps.paths)? {
                if path.is_trivial() || path.target() != path.source() {
                    continue;
                }
                let m = self.evaluate_path(&path);
                let ok = if nilpotent {
                    let mut power = m.clone();
                    for _ in 1..m.rows().max(1) {
                        power = power.mul(&m);
                    }
                    power.is_zero()
                } else {
                    m.is_zero()
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The simple module S_i: one-dimensional at vertex `i`, every arrow zero.
pub fn vertex_simple(pres: Arc<QuiverPresentation>, field: PrimeField, i: usize) -> Representation {
    let n = pres.quiver.num_vertices();
    let dim = DimensionVector::unit(n, i);
    let mats = pres
        .quiver
        .arrows()
        .iter()
        .map(|a| FpMatrix::zero(field, dim.get(a.target) as usize, dim.get(a.source) as usize))
        .collect();
    Representation::new(pres, field, dim, mats).expect("simple modules satisfy all relations")
}

/// The indecomposable projective P_i = Ae_i with basis the paths out of `i`,
/// arrows acting by concatenation. Only for acyclic quivers without
/// relations, where the paths really are a basis.
pub fn projective_module(
    pres: Arc<QuiverPresentation>,
    field: PrimeField,
    i: usize,
    caps: &Caps,
) -> Result<Representation> {
    let q = &pres.quiver;
    if !q.is_acyclic() {
        return Err(Error::Unsupported(
            "projective module".into(),
            "the quiver has cycles, so P_i is infinite-dimensional".into(),
        ));
    }
    if !pres.is_hereditary() {
        return Err(Error::Unsupported(
            "projective module".into(),
            "paths only form a basis of P_i when there are no relations".into(),
        ));
    }
    let paths = q.enumerate_paths(i, q.num_vertices(), caps.paths)?;
    // index paths per target vertex; order within a vertex follows the
    // global lexicographic path order
    let mut per_vertex: Vec<Vec<usize>> = vec![Vec::new(); q.num_vertices()];
    for (k, p) in paths.iter().enumerate() {
        per_vertex[p.target()].push(k);
    }
    let dim = DimensionVector(per_vertex.iter().map(|v| v.len() as u32).collect());
    let mut mats = Vec::new();
    for (arrow_idx, a) in q.arrows().iter().enumerate() {
        let rows = dim.get(a.target) as usize;
        let cols = dim.get(a.source) as usize;
        let mut m = FpMatrix::zero(field, rows, cols);
        for (col, &path_idx) in per_vertex[a.source].iter().enumerate() {
            // concatenating the arrow onto the path gives another basis path
            let mut extended = paths[path_idx].arrow_indices().to_vec();
            extended.push(arrow_idx);
            let row_path = paths
                .iter()
                .position(|p| p.arrow_indices() == extended.as_slice())
                .expect("extension of a path from i is a path from i");
            let row = per_vertex[a.target]
                .iter()
                .position(|&k| k == row_path)
                .expect("extended path lands at the arrow target");
            m.set(row, col, 1);
        }
        mats.push(m);
    }
    Representation::new(pres, field, dim, mats)
}

/// A submodule, stored as one canonical subspace per vertex; the defining
/// invariance M_a(U_i) <= U_j is checked at construction. Dimension vector
/// and the flat comparison key are cached: submodules live in sorted sets
/// on the hot paths.
#[derive(Clone)]
pub struct Submodule {
    spaces: Vec<Subspace>,
    dim: DimensionVector,
    /// [total dim, then per vertex: dim, basis entries...]; sorting by this
    /// key orders by total dimension first, then canonically
    key: Vec<u32>,
}

impl Submodule {
    pub fn new(parent: &Representation, spaces: Vec<Subspace>) -> Result<Self> {
        assert_eq!(spaces.len(), parent.dim().len());
        for (i, s) in spaces.iter().enumerate() {
            assert_eq!(s.ambient(), parent.dim().get(i) as usize);
        }
        let sub = Submodule::assemble(spaces);
        if !sub.is_invariant(parent) {
            return Err(Error::Semantic {
                line: 0,
                msg: "subspaces are not invariant under the arrow action".into(),
            });
        }
        Ok(sub)
    }

    fn assemble(spaces: Vec<Subspace>) -> Self {
        let dim = DimensionVector(spaces.iter().map(|s| s.dim() as u32).collect());
        let mut key = Vec::with_capacity(1 + spaces.iter().map(|s| 1 + s.basis().entries().len()).sum::<usize>());
        key.push(dim.total());
        for s in &spaces {
            key.push(s.dim() as u32);
            key.extend_from_slice(s.basis().entries());
        }
        Submodule { spaces, dim, key }
    }

    fn new_unchecked(spaces: Vec<Subspace>) -> Self {
        Submodule::assemble(spaces)
    }

    pub fn zero(parent: &Representation) -> Self {
        Submodule::assemble(
            (0..parent.dim().len())
                .map(|i| Subspace::zero(parent.field(), parent.dim().get(i) as usize))
                .collect(),
        )
    }

    pub fn full(parent: &Representation) -> Self {
        Submodule::assemble(
            (0..parent.dim().len())
                .map(|i| Subspace::full(parent.field(), parent.dim().get(i) as usize))
                .collect(),
        )
    }

    pub fn is_invariant(&self, parent: &Representation) -> bool {
        spaces_invariant(parent, |v| &self.spaces[v])
    }

    pub fn space(&self, vertex: usize) -> &Subspace {
        &self.spaces[vertex]
    }

    pub fn dim(&self) -> &DimensionVector {
        &self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(|s| s.is_full())
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.sum(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Submodule::assemble(spaces))
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.contains_subspace(b))
    }

    pub fn canonical_key(&self) -> &[u32] {
        &self.key
    }
}

/// Invariance of a vertexwise family of subspaces under all arrow actions.
fn spaces_invariant<'a>(
    parent: &Representation,
    space_at: impl Fn(usize) -> &'a Subspace,
) -> bool {
    parent.presentation().quiver.arrows().iter().enumerate().all(|(idx, a)| {
        let m = parent.arrow_matrix(idx);
        let src = space_at(a.source);
        let tgt = space_at(a.target);
        (0..src.dim()).all(|r| tgt.contains(&m.mul_vec(src.basis().row(r))))
    })
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Submodule {}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl std::fmt::Debug for Submodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Submodule(dim {})", self.dim())
    }
}

/// Invariant closure of a single vector placed at one vertex: the cyclic
/// submodule it generates.
fn cyclic_closure(parent: &Representation, vertex: usize, vector: &[u32]) -> Submodule {
    let field = parent.field();
    let n = parent.dim().len();
    let mut spaces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
    let mut canon: Vec<Subspace> = (0..n)
        .map(|i| Subspace::zero(field, parent.dim().get(i) as usize))
        .collect();
    let mut worklist: Vec<(usize, Vec<u32>)> = vec![(vertex, vector.to_vec())];
    while let Some((v, w)) = worklist.pop() {
        let reduced = canon[v].reduce(&w);
        if reduced.iter().all(|&x| x == 0) {
            continue;
        }
        spaces[v].push(reduced.clone());
        canon[v] = Subspace::from_vectors(field, parent.dim().get(v) as usize, &spaces[v]);
        for (idx, a) in parent.presentation().quiver.arrows().iter().enumerate() {
            if a.source == v {
                worklist.push((a.target, parent.arrow_matrix(idx).mul_vec(&reduced)));
            }
        }
    }
    Submodule::new_unchecked(canon)
}

/// The complete submodule lattice: join-closure of the cyclic submodules,
/// including zero and the module itself, canonical and duplicate-free.
/// Every submodule is a join of cyclic ones, so closing each lattice
/// element against the cyclic atoms reaches everything; the worklist runs
/// in canonical order for reproducible output. Errors with the partial
/// count when the lattice exceeds `caps.submodules`.
pub fn all_submodules(m: &Representation, caps: &Caps) -> Result<Vec<Submodule>> {
    let cap = caps.submodules;
    let field = m.field();
    // cyclic generators: one vector per projective line at each vertex
    let mut atoms: BTreeSet<Submodule> = BTreeSet::new();
    for v in 0..m.dim().len() {
        let d = m.dim().get(v) as usize;
        for vector in projective_vectors(field, d) {
            atoms.insert(cyclic_closure(m, v, &vector));
        }
    }
    let atoms: Vec<Submodule> = atoms.into_iter().collect();
    let mut set: BTreeSet<Submodule> = BTreeSet::new();
    set.insert(Submodule::zero(m));
    set.extend(atoms.iter().cloned());
    if set.len() > cap {
        return Err(Error::cap("submodule lattice", cap as u64, set.len() as u64));
    }
    let mut worklist: Vec<Submodule> = set.iter().cloned().collect();
    while let Some(w) = worklist.pop() {
        for atom in &atoms {
            if w.contains(atom) {
                continue;
            }
            let s = w.sum(atom)?;
            if !set.contains(&s) {
                set.insert(s.clone());
                worklist.push(s);
                if set.len() > cap {
                    return Err(Error::cap("submodule lattice", cap as u64, set.len() as u64));
                }
            }
        }
    }
    set.insert(Submodule::full(m));
    Ok(set.into_iter().collect())
}

/// Nonzero vectors of F_p^d, one representative per projective line: the
/// first nonzero coordinate is normalized to 1.
fn projective_vectors(field: PrimeField, d: usize) -> Vec<Vec<u32>> {
    let p = field.p();
    let mut out = Vec::new();
    for lead in 0..d {
        // entries before `lead` are zero, entry at `lead` is 1
        let tail = d - lead - 1;
        let mut counter = vec![0u32; tail];
        loop {
            let mut v = vec![0u32; d];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&counter);
            out.push(v);
            let mut i = 0;
            loop {
                if i == tail {
                    break;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == tail {
                break;
            }
        }
    }
    out
}

/// Exhaustive oracle for the submodule lattice: filter all tuples of
/// subspaces by arrow invariance. Exponentially slower than
/// [`all_submodules`]; exists to check it.
pub fn all_submodules_by_exhaustion(m: &Representation, cap: u64) -> Result<Vec<Submodule>> {
    let field = m.field();
    let per_vertex: Vec<Vec<Subspace>> = (0..m.dim().len())
        .map(|v| enumerate_all_subspaces(field, m.dim().get(v) as usize, cap))
        .collect::<Result<Vec<_>>>()?;
    let mut total: u128 = 1;
    for s in &per_vertex {
        total = total.saturating_mul(s.len() as u128);
    }
    if total > cap as u128 {
        return Err(Error::cap("exhaustive submodule oracle", cap, total.min(u64::MAX as u128) as u64));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        if spaces_invariant(m, |v| &per_vertex[v][idx[v]]) {
            let spaces: Vec<Subspace> = idx
                .iter()
                .enumerate()
                .map(|(v, &k)| per_vertex[v][k].clone())
                .collect();
            out.push(Submodule::new_unchecked(spaces));
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                out.sort();
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < per_vertex[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if idx.is_empty() {
            out.sort();
            return Ok(out);
        }
    }
}

/// Quotient by a submodule: induced matrices on the pivot-free coordinates
/// of the canonical bases, so the result is canonical and test-stable.
pub fn quotient(m: &Representation, n: &Submodule) -> Result<Representation> {
    if !n.is_invariant(m) {
        return Err(Error::Semantic {
            line: 0,
            msg: "quotient by a non-invariant subspace family".into(),
        });
    }
    let q = &m.presentation().quiver;
    let free: Vec<Vec<usize>> = (0..m.dim().len())
        .map(|v| {
            let pivots = n.space(v).pivots();
            (0..m.dim().get(v) as usize).filter(|c| !pivots.contains(c)).collect()
        })
        .collect();
    let dim = DimensionVector(free.iter().map(|f| f.len() as u32).collect());
    let mut mats = Vec::new();
    for (idx, a) in q.arrows().iter().enumerate() {
        let rows = dim.get(a.target) as usize;
        let cols = dim.get(a.source) as usize;
        let mut out = FpMatrix::zero(m.field(), rows, cols);
        for (col, &fc) in free[a.source].iter().enumerate() {
            let mut e = vec![0u32; m.dim().get(a.source) as usize];
            e[fc] = 1;
            let w = n.space(a.target).reduce(&m.arrow_matrix(idx).mul_vec(&e));
            for (row, &fr) in free[a.target].iter().enumerate() {
                out.set(row, col, w[fr]);
            }
        }
        mats.push(out);
    }
    Representation::new(m.presentation().clone(), m.field(), dim, mats)
}

/// The submodule as a representation in the coordinates of its canonical
/// basis rows.
pub fn submodule_representation(m: &Representation, n: &Submodule) -> Result<Representation> {
    if !n.is_invariant(m) {
        return Err(Error::Semantic {
            line: 0,
            msg: "restriction to a non-invariant subspace family".into(),
        });
    }
    let q = &m.presentation().quiver;
    let dim = n.dim().clone();
    let mut mats = Vec::new();
    for (idx, a) in q.arrows().iter().enumerate() {
        let rows = dim.get(a.target) as usize;
        let cols = dim.get(a.source) as usize;
        let mut out = FpMatrix::zero(m.field(), rows, cols);
        let target_space = n.space(a.target);
        let pivots = target_space.pivots();
        for col in 0..cols {
            let v = n.space(a.source).basis().row(col);
            let w = m.arrow_matrix(idx).mul_vec(v);
            debug_assert!(target_space.contains(&w));
            // coordinates w.r.t. an RREF basis are read off at the pivots
            let mut remainder = w;
            for (row, &pc) in pivots.iter().enumerate() {
                let c = remainder[pc];
                if c != 0 {
                    out.set(row, col, c);
                    for j in 0..remainder.len() {
                        let sub = m.field().mul(c, target_space.basis().get(row, j));
                        remainder[j] = m.field().sub(remainder[j], sub);
                    }
                }
            }
            debug_assert!(remainder.iter().all(|&x| x == 0));
        }
        mats.push(out);
    }
    Representation::new(m.presentation().clone(), m.field(), dim, mats)
}

/// Basis of the space of module homomorphisms m -> n: per-vertex matrices
/// commuting with every arrow action.
#[derive(Debug, Clone)]
pub struct HomSpace {
    basis: Vec<Vec<FpMatrix>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FpMatrix>] {
        &self.basis
    }
}

/// Solve the commuting-square system phi_j M_a = N_a phi_i exactly.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_same_world(n)?;
    let q = &m.presentation().quiver;
    let nv = m.dim().len();
    // unknowns: row-major entries of phi_v (n_v x m_v), laid out vertex by vertex
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::with_capacity(nv + 1);
        for v in 0..nv {
            out.push(acc);
            acc += (n.dim().get(v) * m.dim().get(v)) as usize;
        }
        out.push(acc);
        out
    };
    let unknowns = offsets[nv];
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let field = m.field();
    for (idx, a) in q.arrows().iter().enumerate() {
        let ma = m.arrow_matrix(idx);
        let na = n.arrow_matrix(idx);
        let (i, j) = (a.source, a.target);
        let (nj, mi) = (n.dim().get(j) as usize, m.dim().get(i) as usize);
        // (phi_j M_a - N_a phi_i)[r][c] = 0
        for r in 0..nj {
            for c in 0..mi {
                let mut row = vec![0u32; unknowns];
                // phi_j[r][k] * M_a[k][c]
                for k in 0..m.dim().get(j) as usize {
                    let pos = offsets[j] + r * m.dim().get(j) as usize + k;
                    row[pos] = field.add(row[pos], ma.get(k, c));
                }
                // - N_a[r][k] * phi_i[k][c]
                for k in 0..n.dim().get(i) as usize {
                    let pos = offsets[i] + k * m.dim().get(i) as usize + c;
                    row[pos] = field.sub(row[pos], na.get(r, k));
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        FpMatrix::identity(field, unknowns)
    } else {
        FpMatrix::from_rows(field, rows).kernel()
    };
    let mut basis = Vec::with_capacity(kernel.rows());
    for b in 0..kernel.rows() {
        let flat = kernel.row(b);
        let mut mats = Vec::with_capacity(nv);
        for v in 0..nv {
            let (nr, mc) = (n.dim().get(v) as usize, m.dim().get(v) as usize);
            let mut phi = FpMatrix::zero(field, nr, mc);
            for r in 0..nr {
                for c in 0..mc {
                    phi.set(r, c, flat[offsets[v] + r * mc + c]);
                }
            }
            mats.push(phi);
        }
        basis.push(mats);
    }
    Ok(HomSpace { basis })
}

/// Isomorphism test: equal dimension vectors and some element of the Hom
/// space invertible at every vertex. Exhaustive over the p^h Hom elements
/// when that count fits under `caps.iso`; otherwise a seeded randomized
/// search that errors out without a certificate when it finds nothing.
pub fn are_isomorphic(m: &Representation, n: &Representation, caps: &Caps) -> Result<bool> {
    m.check_same_world(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.dim().is_zero() {
        return Ok(true);
    }
    let hom = hom_space(m, n)?;
    let h = hom.dim();
    if h == 0 {
        return Ok(false);
    }
    let field = m.field();
    let p = field.p();
    let everywhere_invertible = |mats: &[FpMatrix]| mats.iter().all(|phi| phi.is_invertible());
    let combine = |coeffs: &[u32]| -> Vec<FpMatrix> {
        let nv = m.dim().len();
        (0..nv)
            .map(|v| {
                let mut acc = FpMatrix::zero(field, n.dim().get(v) as usize, m.dim().get(v) as usize);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        acc = acc.add(&hom.basis()[k][v].scale(c));
                    }
                }
                acc
            })
            .collect()
    };
    let total = (p as u128).checked_pow(h as u32);
    match total {
        Some(t) if t <= caps.iso as u128 => {
            let mut coeffs = vec![0u32; h];
            loop {
                let mut i = 0;
                loop {
                    if i == h {
                        return Ok(false);
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < p {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
                if everywhere_invertible(&combine(&coeffs)) {
                    return Ok(true);
                }
            }
        }
        _ => {
            // deterministic seeded search; absence of a certificate is an error
            let mut rng = ChaCha8Rng::seed_from_u64(0x15031_u64 ^ h as u64);
            for _ in 0..caps.iso_random_tries {
                let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
                if coeffs.iter().all(|&c| c == 0) {
                    continue;
                }
                if everywhere_invertible(&combine(&coeffs)) {
                    return Ok(true);
                }
            }
            Err(Error::IsoSearchInconclusive { hom_dim: h })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn k2_rep(p: u32, a: u32, b: u32) -> Representation {
        let pres = corpus::k2();
        let field = f(p);
        Representation::new(
            pres,
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
    fn kronecker_rep_construction() {
        let rep = k2_rep(3, 1, 0);
        assert_eq!(*rep.dim(), DimensionVector(vec![1, 1]));
    }

    #[test]
    fn nilpotent_loop_satisfies_relation() {
        let pres = corpus::loop_x2();
        let field = f(5);
        let x = FpMatrix::from_rows(field, vec![vec![0, 1], vec![0, 0]]);
        assert!(Representation::new(pres, field, DimensionVector(vec![2]), vec![x]).is_ok());
    }

    #[test]
    fn non_nilpotent_loop_violates_relation() {
        let pres = corpus::loop_x2();
        let field = f(5);
        let x = FpMatrix::from_rows(field, vec![vec![0, 1], vec![1, 0]]);
        let err = Representation::new(pres, field, DimensionVector(vec![2]), vec![x]).unwrap_err();
        assert!(matches!(err, Error::RelationViolated { .. }), "{err:?}");
    }

    #[test]
    fn simples_and_projectives_of_k2() {
        let pres = corpus::k2();
        let field = f(2);
        let caps = Caps::default();
        assert_eq!(*vertex_simple(pres.clone(), field, 0).dim(), DimensionVector(vec![1, 0]));
        let p1 = projective_module(pres.clone(), field, 0, &caps).unwrap();
        assert_eq!(*p1.dim(), DimensionVector(vec![1, 2]));
        let p2 = projective_module(pres, field, 1, &caps).unwrap();
        assert_eq!(*p2.dim(), DimensionVector(vec![0, 1]));
    }

    #[test]
    fn projective_dims_match_path_counts_everywhere() {
        let caps = Caps::default();
        for pres in [corpus::k2(), corpus::a3(), corpus::kronecker3()] {
            let q = &pres.quiver;
            for i in 0..q.num_vertices() {
                let proj = projective_module(pres.clone(), f(2), i, &caps).unwrap();
                let paths = q.enumerate_paths(i, q.num_vertices(), caps.paths).unwrap();
                for j in 0..q.num_vertices() {
                    let count = paths.iter().filter(|p| p.target() == j).count() as u32;
                    assert_eq!(proj.dim().get(j), count);
                }
            }
        }
    }

    #[test]
    fn projectives_of_cyclic_quivers_are_unsupported() {
        let caps = Caps::default();
        assert!(projective_module(corpus::loop_x2(), f(2), 0, &caps).is_err());
    }

    #[test]
    fn submodules_of_a_stable_kronecker_rep() {
        let rep = k2_rep(2, 1, 0);
        let subs = all_submodules(&rep, &Caps::default()).unwrap();
        let dims: Vec<DimensionVector> = subs.iter().map(|s| s.dim().clone()).collect();
        assert_eq!(
            dims,
            vec![
                DimensionVector(vec![0, 0]),
                DimensionVector(vec![0, 1]),
                DimensionVector(vec![1, 1]),
            ]
        );
    }

    #[test]
    fn submodules_of_the_decomposable_rep() {
        let rep = k2_rep(2, 0, 0);
        let subs = all_submodules(&rep, &Caps::default()).unwrap();
        let dims: Vec<DimensionVector> = subs.iter().map(|s| s.dim().clone()).collect();
        assert_eq!(
            dims,
            vec![
                DimensionVector(vec![0, 0]),
                DimensionVector(vec![0, 1]),
                DimensionVector(vec![1, 0]),
                DimensionVector(vec![1, 1]),
            ]
        );
    }

    #[test]
    fn lattice_always_contains_zero_and_full() {
        for (_, pres) in corpus::bundled_quivers() {
            for rep in corpus::sample_representations(&pres, 2, &DimensionVector(vec![1; pres.quiver.num_vertices()]), 5, 3) {
                let subs = all_submodules(&rep, &Caps::default()).unwrap();
                assert!(subs.iter().any(|s| s.is_zero()));
                assert!(subs.iter().any(|s| s.is_full()));
                for s in &subs {
                    assert!(s.is_invariant(&rep));
                }
            }
        }
    }

    #[test]
    fn lattice_matches_exhaustive_oracle_on_small_cases() {
        for (_, pres) in corpus::bundled_quivers() {
            let n = pres.quiver.num_vertices();
            for class in corpus::dimension_vectors(n, 3) {
                let Some(reps) = corpus::all_representations(&pres, 2, &class, 4096) else {
                    continue;
                };
                for rep in reps {
                    let fast = all_submodules(&rep, &Caps::default()).unwrap();
                    let slow = all_submodules_by_exhaustion(&rep, 1_000_000).unwrap();
                    assert_eq!(fast, slow, "lattice mismatch for {rep:?}");
                }
            }
        }
    }

    #[test]
    fn quotient_shapes_and_edges() {
        let rep = k2_rep(2, 1, 0);
        let subs = all_submodules(&rep, &Caps::default()).unwrap();
        let zero = &subs[0];
        let proper = subs.iter().find(|s| *s.dim() == DimensionVector(vec![0, 1])).unwrap();
        assert_eq!(quotient(&rep, zero).unwrap(), rep);
        let q = quotient(&rep, proper).unwrap();
        assert_eq!(*q.dim(), DimensionVector(vec![1, 0]));
        let full = subs.last().unwrap();
        assert!(quotient(&rep, full).unwrap().is_zero_module());
    }

    #[test]
    fn hom_between_different_simples_vanishes() {
        let pres = corpus::k2();
        let s1 = vertex_simple(pres.clone(), f(2), 0);
        let s2 = vertex_simple(pres, f(2), 1);
        assert_eq!(hom_space(&s1, &s2).unwrap().dim(), 0);
    }

    #[test]
    fn iso_is_reflexive_and_detects_difference() {
        let caps = Caps::default();
        let m = k2_rep(2, 1, 0);
        let n = k2_rep(2, 0, 1);
        assert!(are_isomorphic(&m, &m, &caps).unwrap());
        assert!(!are_isomorphic(&m, &n, &caps).unwrap());
    }

    #[test]
    fn iso_respects_base_change() {
        // conjugate a 2-dim loop rep by an invertible matrix: isomorphic
        let pres = corpus::loop_x2();
        let field = f(3);
        let x = FpMatrix::from_rows(field, vec![vec![0, 1], vec![0, 0]]);
        let m = Representation::new(pres.clone(), field, DimensionVector(vec![2]), vec![x]).unwrap();
        let g = FpMatrix::from_rows(field, vec![vec![1, 1], vec![0, 1]]);
        let ginv = FpMatrix::from_rows(field, vec![vec![1, 2], vec![0, 1]]);
        let conj = g.mul(m.arrow_matrix(0)).mul(&ginv);
        let n = Representation::new(pres, field, DimensionVector(vec![2]), vec![conj]).unwrap();
        assert!(are_isomorphic(&m, &n, &Caps::default()).unwrap());
    }

    #[test]
    fn direct_sum_assembles_blocks() {
        let pres = corpus::k2();
        let s1 = vertex_simple(pres.clone(), f(2), 0);
        let s2 = vertex_simple(pres, f(2), 1);
        let sum = s1.direct_sum(&s2).unwrap();
        assert_eq!(sum, k2_rep(2, 0, 0));
        assert_eq!(*sum.dim(), DimensionVector(vec![1, 1]));
    }

    #[test]
    fn cycle_predicate_on_the_loop() {
        let caps = Caps::default();
        let pres = corpus::loop_x2();
        let field = f(2);
        let nilp = Representation::new(
            pres.clone(),
            field,
            DimensionVector(vec![2]),
            vec![FpMatrix::from_rows(field, vec![vec![0, 1], vec![0, 0]])],
        )
        .unwrap();
        assert!(!nilp.cycles_act_as_zero(2, false, &caps).unwrap());
        assert!(nilp.cycles_act_as_zero(2, true, &caps).unwrap());
        // acyclic quivers are vacuously fine
        let k2rep = k2_rep(2, 1, 1);
        assert!(k2rep.cycles_act_as_zero(3, false, &caps).unwrap());
    }
}
