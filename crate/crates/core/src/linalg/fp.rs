use crate::error::{Error, Result};
use std::fmt;

/// The field F_p for a prime p < 2^31. Elements are plain `u32` residues in
/// [0, p); all products are taken through `u64` so nothing overflows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse, by Fermat.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduce an arbitrary integer into [0, p).
    pub fn from_i64(&self, n: i64) -> u32 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u32
    }

    /// Reduce a rational p/q mod p; fails when q vanishes in the field.
    pub fn from_rational(&self, r: &super::Rational) -> Result<u32> {
        use num_traits::ToPrimitive;
        let p = num_bigint::BigInt::from(self.p);
        let num = (r.numer() % &p + &p) % &p;
        let den = (r.denom() % &p + &p) % &p;
        let den = den.to_u32().expect("residue fits u32");
        if den == 0 {
            return Err(Error::BadCharacteristic(r.to_string(), self.p));
        }
        let num = num.to_u32().expect("residue fits u32");
        Ok(self.mul(num, self.inv(den)))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &x in row {
                assert!(x < field.p(), "entry {} out of range mod {}", x, field.p());
                data.push(x);
            }
        }
        FpMatrix { field, rows: r, cols: c, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.p());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = self.field.mul(*x, c);
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = self.field.add(*x, y);
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let f = self.field;
        let p = f.p() as u64;
        let mut out = FpMatrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u64;
                    out.set(i, j, ((cur + a * other.get(k, j) as u64) % p) as u32);
                }
            }
        }
        out
    }

    /// Matrix-vector product (vector as a column).
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    acc = (acc + self.get(i, k) as u64 * x as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the rank.
    pub fn rref_in_place(&mut self) -> usize {
        let f = self.field;
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(r) = (pivot_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(pivot_row, r);
            let inv = f.inv(self.get(pivot_row, col));
            for c in col..self.cols {
                let v = self.get(pivot_row, c);
                self.set(pivot_row, c, f.mul(v, inv));
            }
            for r2 in 0..self.rows {
                if r2 == pivot_row {
                    continue;
                }
                let factor = self.get(r2, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r2, c);
                    let sub = f.mul(factor, self.get(pivot_row, c));
                    self.set(r2, c, f.sub(v, sub));
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Reduced row echelon form together with the rank.
    pub fn rref(&self) -> (FpMatrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place()
    }

    /// Basis of the right null space, as rows of a matrix in RREF.
    pub fn kernel(&self) -> FpMatrix {
        let f = self.field;
        let (r, rank) = self.rref();
        // pivot columns of the RREF
        let mut pivots = Vec::with_capacity(rank);
        let mut col = 0;
        for row in 0..rank {
            while r.get(row, col) == 0 {
                col += 1;
            }
            pivots.push(col);
        }
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &pivots {
                s[c] = true;
            }
            s
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut out = FpMatrix::zero(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(row, fc)));
            }
        }
        // rows come out in echelon shape already, but normalize to RREF form
        out.rref_in_place();
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(fm, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.field.p())?;
        for r in 0..self.rows {
            writeln!(fm, "  {:?}", self.row(r))?;
        }
        write!(fm, "]")
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                self.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            })
            .collect();
        write!(fm, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn primality_is_enforced() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2147483647).is_ok()); // 2^31 - 1
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = FpMatrix::identity(f(5), 3);
        let (r, rank) = m.rref();
        assert_eq!(r, m);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = FpMatrix::zero(f(3), 2, 4);
        let (r, rank) = m.rref();
        assert!(r.is_zero());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_dependent_rows_mod_7() {
        // [[2,4],[1,2]] over F_7 row-reduces to [[1,2],[0,0]] with rank 1
        let m = FpMatrix::from_rows(f(7), vec![vec![2, 4], vec![1, 2]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, FpMatrix::from_rows(f(7), vec![vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let m = FpMatrix::identity(f(3), 4);
        assert_eq!(m.kernel().rows(), 0);
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let m = FpMatrix::zero(f(5), 3, 4);
        let k = m.kernel();
        assert_eq!(k.rows(), 4);
        assert_eq!(k, FpMatrix::identity(f(5), 4));
    }

    #[test]
    fn kernel_of_sum_line_mod_3() {
        // x + y = 0 over F_3 has kernel spanned by (1, 2)
        let m = FpMatrix::from_rows(f(3), vec![vec![1, 1]]);
        let k = m.kernel();
        assert_eq!(k, FpMatrix::from_rows(f(3), vec![vec![1, 2]]));
    }

    #[test]
    fn from_rational_reduces_coefficients() {
        use num_bigint::BigInt;
        let field = f(7);
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(field.from_rational(&half).unwrap(), 4); // 2 * 4 = 8 = 1 mod 7
        let bad = Rat::new(BigInt::from(1), BigInt::from(7));
        assert!(field.from_rational(&bad).is_err());
    }

    use crate::linalg::Rational as Rat;
}
