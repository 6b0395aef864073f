//! Quivers with relations and their path combinatorics.
//!
//! Composition convention, fixed once for the whole crate: paths act on the
//! left and are written right-to-left, so in the display form `g*f` the arrow
//! `f` is applied first. Internally a [`Path`] stores its arrows in
//! application order (first applied first); representation evaluation
//! multiplies matrices as `M_last * ... * M_first`.

use crate::error::{Error, Result};
use crate::linalg::Rational;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite quiver. Vertex identifiers are arbitrary tokens mapped to dense
/// indices `0..n` in declaration order; all arithmetic downstream uses the
/// dense indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_names.is_empty() {
            return Err(Error::DimensionMismatch("a quiver needs at least one vertex".into()));
        }
        for (i, v) in vertex_names.iter().enumerate() {
            if vertex_names[..i].contains(v) {
                return Err(Error::Semantic { line: 0, msg: format!("duplicate vertex `{v}`") });
            }
        }
        let n = vertex_names.len();
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::Semantic {
                    line: 0,
                    msg: format!("arrow `{}` references a missing vertex", a.name),
                });
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Semantic { line: 0, msg: format!("duplicate arrow `{}`", a.name) });
            }
        }
        Ok(Quiver { vertex_names, arrows })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertex_names[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    /// Decided by Kahn's topological sort: true iff no nontrivial cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.source == v {
                    indegree[a.target] -= 1;
                    if indegree[a.target] == 0 {
                        queue.push(a.target);
                    }
                }
            }
        }
        seen == n
    }

    /// All paths from `source` of length at most `max_len`, in lexicographic
    /// order on the application-order arrow index sequence (the trivial path
    /// comes first). For an acyclic quiver with `max_len >= |Q_0|` this is
    /// the complete set of paths out of `source`.
    pub fn enumerate_paths(&self, source: usize, max_len: usize, cap: usize) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        let mut stack: Vec<Path> = vec![Path::trivial(source)];
        // depth-first in arrow-index order yields lexicographic output
        fn walk(q: &Quiver, path: &Path, max_len: usize, cap: usize, out: &mut Vec<Path>) -> Result<()> {
            if out.len() >= cap {
                return Err(Error::cap("path enumeration", cap as u64, out.len() as u64 + 1));
            }
            out.push(path.clone());
            if path.len() == max_len {
                return Ok(());
            }
            for (idx, a) in q.arrows.iter().enumerate() {
                if a.source == path.target() {
                    walk(q, &path.extended(idx, a.target), max_len, cap, out)?;
                }
            }
            Ok(())
        }
        let start = stack.pop().unwrap();
        walk(self, &start, max_len, cap, &mut out)?;
        Ok(out)
    }
}

/// A path in a quiver: either the trivial path at a vertex (the idempotent
/// e_i) or a nonempty composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    /// Arrow indices in application order: `arrows[0]` acts first.
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path { source: vertex, target: vertex, arrows: Vec::new() }
    }

    /// Build from arrows listed in application order, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let first = *arrows.first().ok_or_else(|| {
            Error::DimensionMismatch("a nontrivial path needs at least one arrow".into())
        })?;
        let mut target = q.arrow(first).source;
        for &idx in &arrows {
            let a = q.arrow(idx);
            if a.source != target {
                return Err(Error::Semantic {
                    line: 0,
                    msg: format!(
                        "arrows `{}` and `{}` do not compose",
                        q.arrow(idx).name,
                        a.name
                    ),
                });
            }
            target = a.target;
        }
        Ok(Path { source: q.arrow(first).source, target, arrows })
    }

    fn extended(&self, arrow_idx: usize, new_target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow_idx);
        Path { source: self.source, target: new_target, arrows }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrow_indices(&self) -> &[usize] {
        &self.arrows
    }

    /// Display form, right-to-left: the first-applied arrow is rightmost.
    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            format!("e_{}", q.vertex_name(self.source))
        } else {
            self.arrows
                .iter()
                .rev()
                .map(|&i| q.arrow(i).name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A relation: a formal rational combination of parallel paths of length >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rational, Path)>) -> Result<Self> {
        use num_traits::Zero;
        if terms.is_empty() {
            return Err(Error::Semantic { line: 0, msg: "empty relation".into() });
        }
        let (src, tgt) = (terms[0].1.source(), terms[0].1.target());
        for (coef, path) in &terms {
            if coef.is_zero() {
                return Err(Error::Semantic { line: 0, msg: "zero coefficient in relation".into() });
            }
            if path.is_trivial() {
                return Err(Error::Semantic {
                    line: 0,
                    msg: "relation paths must have length at least one".into(),
                });
            }
            if path.source() != src || path.target() != tgt {
                return Err(Error::Semantic {
                    line: 0,
                    msg: "relation terms are not parallel".into(),
                });
            }
        }
        Ok(Relation { terms })
    }

    pub fn terms(&self) -> &[(Rational, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source()
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target()
    }

    /// True when some term is a bare arrow: such a relation deletes the
    /// arrow, which is legal but almost certainly a mistake.
    pub fn has_length_one_term(&self) -> bool {
        self.terms.iter().any(|(_, p)| p.len() == 1)
    }

    pub fn display(&self, q: &Quiver) -> String {
        use num_traits::{One, Signed};
        let mut out = String::new();
        for (i, (coef, path)) in self.terms.iter().enumerate() {
            let mag = coef.abs();
            if i == 0 {
                if coef.is_negative() {
                    out.push('-');
                }
            } else if coef.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                out.push_str(&format!("{}*", mag));
            }
            out.push_str(&path.display(q));
        }
        out
    }
}

/// A quiver together with the relations generating the ideal of A = kQ/I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Self {
        QuiverPresentation { quiver, relations }
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Per-vertex nonnegative integers: the class of a module in the simple
/// basis of the numerical Grothendieck group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub Vec<u32>);

impl DimensionVector {
    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimensionVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn add(&self, other: &DimensionVector) -> DimensionVector {
        assert_eq!(self.len(), other.len());
        DimensionVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; caller guarantees `other <= self`.
    pub fn sub(&self, other: &DimensionVector) -> DimensionVector {
        assert_eq!(self.len(), other.len());
        DimensionVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("dimension vector subtraction underflow"))
                .collect(),
        )
    }

    /// Componentwise partial order.
    pub fn leq(&self, other: &DimensionVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sup_norm(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn kronecker_is_acyclic_loop_is_not() {
        assert!(corpus::k2().quiver.is_acyclic());
        assert!(!corpus::loop_x2().quiver.is_acyclic());
        assert!(corpus::a3().quiver.is_acyclic());
    }

    #[test]
    fn paths_of_kronecker() {
        let q = &corpus::k2().quiver;
        let paths = q.enumerate_paths(0, 2, 10_000).unwrap();
        let shown: Vec<String> = paths.iter().map(|p| p.display(q)).collect();
        assert_eq!(shown, vec!["e_1", "a", "b"]);
    }

    #[test]
    fn paths_of_a3_from_the_source() {
        let q = &corpus::a3().quiver;
        let paths = q.enumerate_paths(0, 2, 10_000).unwrap();
        let shown: Vec<String> = paths.iter().map(|p| p.display(q)).collect();
        assert_eq!(shown, vec!["e_1", "f", "g*f"]);
    }

    #[test]
    fn paths_of_the_loop_grow_with_the_bound() {
        let q = &corpus::loop_x2().quiver;
        let paths = q.enumerate_paths(0, 3, 10_000).unwrap();
        let shown: Vec<String> = paths.iter().map(|p| p.display(q)).collect();
        assert_eq!(shown, vec!["e_1", "x", "x*x", "x*x*x"]);
    }

    #[test]
    fn path_enumeration_cap_fires_on_cyclic_quivers() {
        let q = &corpus::loop_x2().quiver;
        assert!(q.enumerate_paths(0, 50, 10).is_err());
    }

    #[test]
    fn paths_have_no_duplicates_and_compose() {
        for pres in [corpus::k2(), corpus::a3(), corpus::kronecker3()] {
            let q = &pres.quiver;
            for v in 0..q.num_vertices() {
                let paths = q.enumerate_paths(v, q.num_vertices(), 10_000).unwrap();
                let mut seqs: Vec<_> = paths.iter().map(|p| p.arrow_indices().to_vec()).collect();
                seqs.sort();
                seqs.dedup();
                assert_eq!(seqs.len(), paths.len());
                for p in &paths {
                    if !p.is_trivial() {
                        Path::from_arrows(q, p.arrow_indices().to_vec()).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn non_composable_arrows_rejected() {
        let q = &corpus::a3().quiver;
        // g then f is not composable under the right-to-left convention
        let g = q.arrow_index("g").unwrap();
        let f = q.arrow_index("f").unwrap();
        assert!(Path::from_arrows(q, vec![g, f]).is_err());
        assert!(Path::from_arrows(q, vec![f, g]).is_ok());
    }
}
