use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used for all stability-parameter arithmetic.
pub type Rational = num_rational::Ratio<BigInt>;

/// Reduced row echelon form over the rationals; returns (rref, rank).
/// Rows are `Vec<Rational>`; ragged input is a caller bug.
pub fn rat_rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, usize) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        let Some(r) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].clone();
        for c in col..ncols {
            m[pivot_row][c] = &m[pivot_row][c] / &inv;
        }
        for r2 in 0..nrows {
            if r2 == pivot_row || m[r2][col].is_zero() {
                continue;
            }
            let factor = m[r2][col].clone();
            for c in col..ncols {
                let sub = &factor * &m[pivot_row][c];
                m[r2][c] = &m[r2][c] - sub;
            }
        }
        pivot_row += 1;
    }
    (m, pivot_row)
}

/// Basis of the right null space over the rationals, one basis vector per row.
/// Each vector is scaled to a primitive integer vector with positive leading
/// entry, so the output is canonical.
pub fn rat_kernel(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    if ncols == 0 {
        return Vec::new();
    }
    let (r, rank) = rat_rref(rows);
    let mut pivots = Vec::with_capacity(rank);
    let mut col = 0;
    for row in 0..rank {
        while r[row][col].is_zero() {
            col += 1;
        }
        pivots.push(col);
    }
    let is_pivot: Vec<bool> = {
        let mut s = vec![false; ncols];
        for &c in &pivots {
            s[c] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for fc in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[fc] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[row][fc].clone();
        }
        basis.push(primitive_integer_form(&v));
    }
    basis
}

/// Clear denominators and divide by the gcd; flip sign so the first nonzero
/// entry is positive. Canonical representative of the ray through `v`.
pub fn primitive_integer_form(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return v.to_vec();
    }
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    let sign = ints
        .iter()
        .find(|n| !n.is_zero())
        .map(|n| if n.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap();
    let div = gcd * sign;
    ints.into_iter().map(|n| Rational::from(n / &div)).collect()
}

/// Dot product of two rational vectors.
pub fn rat_dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
