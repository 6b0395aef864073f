//! The numerical Grothendieck group of a quiver algebra: the Euler form as
//! an integer matrix on the simple basis, its construction from projective
//! bimodule resolution data, and the perfect pairing with the projectives.

use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Rational};
use crate::parse::TorBlock;
use crate::quiver::{DimensionVector, QuiverPresentation};
use crate::rep::projective_module;
use crate::Caps;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Integer matrix E with chi(d, e) = d^T E e for classes in the simple
/// basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerMatrix {
    n: usize,
    entries: Vec<i64>, // row-major
}

impl EulerMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "Euler matrix must be square");
            entries.extend(r);
        }
        EulerMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// chi(d, e) = d^T E e, exact.
    pub fn chi(&self, d: &DimensionVector, e: &DimensionVector) -> i64 {
        assert_eq!(d.len(), self.n);
        assert_eq!(e.len(), self.n);
        let mut acc: i64 = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                acc += d.get(i) as i64 * self.get(i, j) * e.get(j) as i64;
            }
        }
        acc
    }
}

/// Closed-form Euler matrix of a hereditary path algebra of an acyclic
/// quiver: E_ij = delta_ij - #arrows(i -> j).
pub fn euler_form_acyclic(pres: &QuiverPresentation) -> Result<EulerMatrix> {
    if !pres.quiver.is_acyclic() {
        return Err(Error::Unsupported(
            "closed-form Euler matrix".into(),
            "the quiver has cycles; supply resolution data and use the Tor route".into(),
        ));
    }
    if !pres.is_hereditary() {
        return Err(Error::Unsupported(
            "closed-form Euler matrix".into(),
            "the algebra has relations; supply resolution data and use the Tor route".into(),
        ));
    }
    let n = pres.quiver.num_vertices();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let delta = if i == j { 1 } else { 0 };
                    delta - pres.quiver.arrow_count(i, j) as i64
                })
                .collect()
        })
        .collect();
    Ok(EulerMatrix::from_rows(rows))
}

/// Multiplicities of a minimal projective bimodule resolution: for each
/// degree l and vertex pair (i, j) the number of Ae_i (x) e_j A summands.
/// Degree zero is forced to be the identity pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorTable {
    n: usize,
    gldim: usize,
    entries: BTreeMap<(usize, usize, usize), u32>,
}

impl TorTable {
    pub fn new(n: usize, gldim: usize, entries: BTreeMap<(usize, usize, usize), u32>) -> Result<Self> {
        for (&(l, i, j), &d) in &entries {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch(format!(
                    "tor entry ({l},{i},{j}) out of range for {n} vertices"
                )));
            }
            if l == 0 && ((i == j && d != 1) || (i != j && d != 0)) {
                return Err(Error::Semantic {
                    line: 0,
                    msg: "degree-0 tor data must be the identity pattern".into(),
                });
            }
            if l > gldim {
                return Err(Error::Semantic {
                    line: 0,
                    msg: format!("tor entry in degree {l} above the declared global dimension {gldim}"),
                });
            }
        }
        Ok(TorTable { n, gldim, entries })
    }

    pub fn from_block(pres: &QuiverPresentation, block: &TorBlock) -> Result<Self> {
        Self::new(pres.quiver.num_vertices(), block.gldim, block.entries.clone())
    }

    /// The canonical table of a hereditary acyclic path algebra: identity in
    /// degree zero, arrow counts in degree one.
    pub fn hereditary(pres: &QuiverPresentation) -> Result<Self> {
        if !pres.quiver.is_acyclic() || !pres.is_hereditary() {
            return Err(Error::Unsupported(
                "canonical hereditary Tor table".into(),
                "only defined for acyclic quivers without relations".into(),
            ));
        }
        let n = pres.quiver.num_vertices();
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let arrows = pres.quiver.arrow_count(i, j) as u32;
                if arrows > 0 {
                    entries.insert((1, i, j), arrows);
                }
            }
        }
        TorTable::new(n, 1, entries)
    }

    pub fn gldim(&self) -> usize {
        self.gldim
    }

    pub fn get(&self, l: usize, i: usize, j: usize) -> u32 {
        if l == 0 {
            return if i == j { 1 } else { 0 };
        }
        self.entries.get(&(l, i, j)).copied().unwrap_or(0)
    }
}

/// E_ij = sum_l (-1)^l d^l_ij. The table is finitely supported by
/// construction; the declared global dimension records where the user
/// truncated.
pub fn euler_form_from_tor(tor: &TorTable) -> EulerMatrix {
    let n = tor.n;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..=tor.gldim)
                        .map(|l| {
                            let sign = if l % 2 == 0 { 1i64 } else { -1 };
                            sign * tor.get(l, i, j) as i64
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    EulerMatrix::from_rows(rows)
}

/// theta(d) = sum_i theta_i d_i, for theta written in the basis dual to the
/// simples.
pub fn pairing(theta: &[Rational], d: &DimensionVector) -> Result<Rational> {
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch(format!(
            "covector of length {} against class of length {}",
            theta.len(),
            d.len()
        )));
    }
    Ok(theta
        .iter()
        .zip(&d.0)
        .map(|(t, &x)| t * Rational::from(num_bigint::BigInt::from(x)))
        .fold(Rational::zero(), |a, b| a + b))
}

/// Outcome of checking chi([P_j], [S_i]) = delta_ij through the Euler
/// matrix: the projective dimension vectors double as the change of basis
/// between the simple-dual coordinates and the projective basis of the dual
/// group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub projective_dims: Vec<DimensionVector>,
    /// gram[j][i] = chi([P_j], [S_i])
    pub gram: Vec<Vec<i64>>,
    pub pass: bool,
}

/// Construct every projective over F_p, pair against the simples through
/// the closed-form Euler matrix, and demand the identity Gram matrix.
pub fn verify_perfect_pairing(
    pres: &Arc<QuiverPresentation>,
    p: u32,
    caps: &Caps,
) -> Result<PairingReport> {
    let field = PrimeField::new(p)?;
    let euler = euler_form_acyclic(pres)?;
    let n = pres.quiver.num_vertices();
    let mut projective_dims = Vec::with_capacity(n);
    for j in 0..n {
        let proj = projective_module(pres.clone(), field, j, caps)?;
        projective_dims.push(proj.dim().clone());
    }
    let gram: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| euler.chi(&projective_dims[j], &DimensionVector::unit(n, i)))
                .collect()
        })
        .collect();
    let pass = (0..n).all(|j| (0..n).all(|i| gram[j][i] == if i == j { 1 } else { 0 }));
    Ok(PairingReport { projective_dims, gram, pass })
}
