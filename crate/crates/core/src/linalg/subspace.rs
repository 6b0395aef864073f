use super::fp::{FpMatrix, PrimeField};
use crate::error::{Error, Result};

/// A subspace of F_p^n held in canonical form: the basis matrix is in RREF
/// with no zero rows, so two values are equal exactly when they describe the
/// same subspace. Pivot columns are cached; reduction against the basis is
/// the hot operation of the submodule machinery.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

fn pivots_of_rref(basis: &FpMatrix) -> Vec<usize> {
    let mut out = Vec::with_capacity(basis.rows());
    let mut col = 0;
    for row in 0..basis.rows() {
        while basis.get(row, col) == 0 {
            col += 1;
        }
        out.push(col);
        col += 1;
    }
    out
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { field, ambient, basis: FpMatrix::zero(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: FpMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`, canonicalized.
    pub fn from_spanning(m: &FpMatrix) -> Self {
        let (r, rank) = m.rref();
        let mut basis = FpMatrix::zero(m.field(), rank, m.cols());
        for i in 0..rank {
            for c in 0..m.cols() {
                basis.set(i, c, r.get(i, c));
            }
        }
        let pivots = pivots_of_rref(&basis);
        Subspace { field: m.field(), ambient: m.cols(), basis, pivots }
    }

    pub fn from_vectors(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        Self::from_spanning(&FpMatrix::from_rows(field, vectors.to_vec()))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Pivot columns of the canonical basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace: the result has zeros in all pivot
    /// coordinates and is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, out: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let basis_row = self.basis.row(row);
            for (x, &b) in out.iter_mut().zip(basis_row) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut tmp = v.to_vec();
        self.reduce_in_place(&mut tmp);
        tmp.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        Ok(Subspace::from_spanning(&self.basis.vstack(&other.basis)))
    }

    /// Orthogonal complement with respect to the standard dot product.
    /// Over a finite field this is still a dimension-reversing involution,
    /// which is all the intersection computation needs.
    pub fn perp(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field, self.ambient);
        }
        Subspace::from_spanning(&self.basis.kernel())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // (U cap V) = (U^perp + V^perp)^perp
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.field.p(),
                self.ambient,
                other.field.p(),
                other.ambient
            )));
        }
        Ok(())
    }

    /// Canonical encoding used for ordering and deduplication.
    pub fn canonical_key(&self) -> (usize, Vec<u32>) {
        (self.dim(), self.basis.entries().to_vec())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of F_{}^{}: {})", self.dim(), self.field.p(), self.ambient, self.basis)
    }
}

/// Gaussian binomial coefficient [n choose k]_p, the number of k-dimensional
/// subspaces of F_p^n.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Total number of subspaces of F_p^d (the Galois number).
pub fn subspace_count(d: usize, p: u32) -> u128 {
    (0..=d).map(|k| gaussian_binomial(d, k, p)).sum()
}

/// Every subspace of F_p^d exactly once, in canonical RREF form, ordered by
/// dimension and then by canonical key. Enumerates RREF matrices directly:
/// choose pivot columns, then fill the free entries.
pub fn enumerate_all_subspaces(field: PrimeField, d: usize, cap: u64) -> Result<Vec<Subspace>> {
    let total = subspace_count(d, field.p());
    if total > cap as u128 {
        return Err(Error::cap("subspace enumeration", cap, total.min(u64::MAX as u128) as u64));
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // free positions: (row, col) with col > pivots[row] and col not a pivot
            let is_pivot: Vec<bool> = {
                let mut s = vec![false; d];
                for &c in &pivots {
                    s[c] = true;
                }
                s
            };
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|row| {
                    let pivots = &pivots;
                    let is_pivot = &is_pivot;
                    ((pivots[row] + 1)..d)
                        .filter(move |&c| !is_pivot[c])
                        .map(move |c| (row, c))
                })
                .collect();
            let p = field.p();
            let mut fill = vec![0u32; free.len()];
            loop {
                let mut m = FpMatrix::zero(field, k, d);
                for (row, &pc) in pivots.iter().enumerate() {
                    m.set(row, pc, 1);
                }
                for (&(r, c), &v) in free.iter().zip(&fill) {
                    m.set(r, c, v);
                }
                out.push(Subspace { field, ambient: d, basis: m, pivots: pivots.clone() });
                // odometer over the free entries
                let mut i = 0;
                loop {
                    if i == fill.len() {
                        break;
                    }
                    fill[i] += 1;
                    if fill[i] < p {
                        break;
                    }
                    fill[i] = 0;
                    i += 1;
                }
                if i == fill.len() {
                    break;
                }
            }
        }
    }
    out.sort_by_key(|s| s.canonical_key());
    out.dedup_by_key(|s| s.canonical_key());
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
