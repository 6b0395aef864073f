//! Parser for the quiver description document and its inverse serializer.
//!
//! The format is line-oriented UTF-8. `#` starts a comment; `/` separates
//! statements within one physical line. Statements:
//!
//! ```text
//! vertices <id> <id> ...
//! arrow <id> <src> <tgt>
//! relation <coef>*<path> [+|-] <coef>*<path> ...
//! rep <name> p=<prime> dim <d1> <d2> ...
//! mat <arrowid> <rows> <cols>: <entries row-major>
//! tor gldim <g>
//! tor_entry <l> <i> <j> <d>
//! params theta <q> ... lambda <q> ... xi <q> v <int> ...
//! family <name> p=<prime>
//! split <vertex> <twists...>
//! poly <arrowid> <row> <col>: <coeffs for s^d, s^{d-1} t, ..., t^d>
//! ```
//!
//! `<path>` is `arrowid(*arrowid)*` read right-to-left (the rightmost arrow
//! acts first) and `<coef>` is a rational `p/q`, defaulting to 1. `mat` lines
//! attach to the preceding `rep`, `split`/`poly` to the preceding `family`,
//! `tor_entry` to the preceding `tor`. Duplicate `vertices` lines are
//! forbidden. `poly` entries that are never set default to the zero
//! polynomial; `mat` row/col positions are 0-based in `poly` lines.

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::quiver::{Arrow, DimensionVector, Path, Quiver, QuiverPresentation, Relation};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

/// A representation block, still raw: matrices as integer entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RepBlock {
    pub name: String,
    pub p: u32,
    pub dim: DimensionVector,
    /// arrow index -> (rows, cols, row-major entries)
    pub matrices: BTreeMap<usize, (usize, usize, Vec<i64>)>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorBlock {
    pub gldim: usize,
    /// (degree l, row vertex i, col vertex j) -> multiplicity
    pub entries: BTreeMap<(usize, usize, usize), u32>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamsBlock {
    pub theta: Vec<Rational>,
    pub lambda: Vec<Rational>,
    pub xi: Rational,
    pub v: DimensionVector,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyBlock {
    pub name: String,
    pub p: u32,
    /// vertex index -> splitting type (twists of the line-bundle summands)
    pub splitting: BTreeMap<usize, Vec<i64>>,
    /// arrow index -> list of (row, col, coefficients highest s-power first)
    pub polys: BTreeMap<usize, Vec<(usize, usize, Vec<i64>)>>,
    pub line: usize,
}

/// Everything a description document can carry.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub presentation: QuiverPresentation,
    pub reps: Vec<RepBlock>,
    pub tor: Option<TorBlock>,
    pub params: Option<ParamsBlock>,
    pub families: Vec<FamilyBlock>,
}

/// Non-fatal diagnostics collected while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub msg: String,
}

/// Parse only the presentation part of a document (ignoring rep/params/...
/// blocks is an error here: this entry point expects a pure presentation).
pub fn parse_presentation(text: &str) -> Result<(QuiverPresentation, Vec<Warning>)> {
    let (doc, warnings) = parse_document(text)?;
    Ok((doc.presentation, warnings))
}

/// One statement: its tokens with (line, col) per token.
struct Stmt {
    line: usize,
    tokens: Vec<(usize, String)>, // (column, token)
}

impl Stmt {
    fn keyword(&self) -> &str {
        &self.tokens[0].1
    }

    fn err(&self, tok: usize, msg: impl Into<String>) -> Error {
        let col = self.tokens.get(tok).map_or_else(
            || self.tokens.last().map_or(1, |(c, t)| c + t.len()),
            |(c, _)| *c,
        );
        Error::Parse { line: self.line, col, msg: msg.into() }
    }

    fn arg(&self, i: usize, what: &str) -> Result<&str> {
        self.tokens
            .get(i)
            .map(|(_, t)| t.as_str())
            .ok_or_else(|| self.err(i, format!("expected {what}")))
    }

    fn args_from(&self, i: usize) -> impl Iterator<Item = (usize, &str)> {
        self.tokens.iter().skip(i).enumerate().map(move |(k, (_, t))| (i + k, t.as_str()))
    }
}

fn tokenize(text: &str) -> Vec<Stmt> {
    let mut stmts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut tokens: Vec<(usize, String)> = Vec::new();
        let mut cur = String::new();
        let mut cur_start = 0usize;
        let flush =
            |tokens: &mut Vec<(usize, String)>, cur: &mut String, cur_start: usize| {
                if !cur.is_empty() {
                    tokens.push((cur_start + 1, std::mem::take(cur)));
                }
            };
        for (bi, ch) in content.char_indices() {
            match ch {
                c if c.is_whitespace() => flush(&mut tokens, &mut cur, cur_start),
                '/' => {
                    // statement separator, except inside a rational like 1/2
                    let splits = cur.is_empty()
                        || !cur.chars().next().map_or(false, |c| c.is_ascii_digit() || c == '-');
                    if splits {
                        flush(&mut tokens, &mut cur, cur_start);
                        if !tokens.is_empty() {
                            stmts.push(Stmt { line, tokens: std::mem::take(&mut tokens) });
                        }
                    } else {
                        if cur.is_empty() {
                            cur_start = bi;
                        }
                        cur.push(ch);
                    }
                }
                ':' => {
                    flush(&mut tokens, &mut cur, cur_start);
                    tokens.push((bi + 1, ":".to_string()));
                }
                _ => {
                    if cur.is_empty() {
                        cur_start = bi;
                    }
                    cur.push(ch);
                }
            }
        }
        flush(&mut tokens, &mut cur, cur_start);
        if !tokens.is_empty() {
            stmts.push(Stmt { line, tokens });
        }
    }
    stmts
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(num, den))
}

enum Section {
    None,
    Rep(RepBlock),
    Tor(TorBlock),
    Family(FamilyBlock),
}

/// Parse a full description document.
pub fn parse_document(text: &str) -> Result<(Document, Vec<Warning>)> {
    let stmts = tokenize(text);
    let mut warnings = Vec::new();

    // first pass: the quiver itself
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(usize, String, String, String)> = Vec::new(); // (line, name, src, tgt)
    for s in &stmts {
        match s.keyword() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(s.err(0, "duplicate `vertices` line"));
                }
                let names: Vec<String> = s.args_from(1).map(|(_, t)| t.to_string()).collect();
                if names.is_empty() {
                    return Err(s.err(1, "expected at least one vertex id"));
                }
                vertices = Some(names);
            }
            "arrow" => {
                let name = s.arg(1, "arrow id")?.to_string();
                let src = s.arg(2, "source vertex")?.to_string();
                let tgt = s.arg(3, "target vertex")?.to_string();
                if s.tokens.len() > 4 {
                    return Err(s.err(4, "unexpected token after arrow declaration"));
                }
                arrows.push((s.line, name, src, tgt));
            }
            _ => {}
        }
    }
    let vertex_names = vertices.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing `vertices` line".to_string(),
    })?;
    let mut resolved_arrows = Vec::new();
    for (line, name, src, tgt) in &arrows {
        let source = vertex_names.iter().position(|v| v == src).ok_or(Error::Semantic {
            line: *line,
            msg: format!("unknown vertex {src}"),
        })?;
        let target = vertex_names.iter().position(|v| v == tgt).ok_or(Error::Semantic {
            line: *line,
            msg: format!("unknown vertex {tgt}"),
        })?;
        resolved_arrows.push(Arrow { name: name.clone(), source, target });
    }
    let quiver = Quiver::new(vertex_names, resolved_arrows).map_err(|e| match e {
        Error::Semantic { msg, .. } => Error::Semantic { line: 1, msg },
        other => other,
    })?;

    // second pass: relations and blocks
    let mut relations: Vec<Relation> = Vec::new();
    let mut reps: Vec<RepBlock> = Vec::new();
    let mut tor: Option<TorBlock> = None;
    let mut params: Option<ParamsBlock> = None;
    let mut families: Vec<FamilyBlock> = Vec::new();
    let mut section = Section::None;

    let close = |section: &mut Section,
                 reps: &mut Vec<RepBlock>,
                 tor: &mut Option<TorBlock>,
                 families: &mut Vec<FamilyBlock>| {
        match std::mem::replace(section, Section::None) {
            Section::None => {}
            Section::Rep(r) => reps.push(r),
            Section::Tor(t) => *tor = Some(t),
            Section::Family(f) => families.push(f),
        }
    };

    for s in &stmts {
        match s.keyword() {
            "vertices" | "arrow" => {
                close(&mut section, &mut reps, &mut tor, &mut families);
            }
            "relation" => {
                close(&mut section, &mut reps, &mut tor, &mut families);
                relations.push(parse_relation(s, &quiver, &mut warnings)?);
            }
            "rep" => {
                close(&mut section, &mut reps, &mut tor, &mut families);
                section = Section::Rep(parse_rep_header(s, &quiver)?);
            }
            "mat" => {
                let Section::Rep(ref mut block) = section else {
                    return Err(s.err(0, "`mat` outside a `rep` block"));
                };
                parse_mat(s, &quiver, block)?;
            }
            "tor" => {
                close(&mut section, &mut reps, &mut tor, &mut families);
                if tor.is_some() {
                    return Err(s.err(0, "duplicate `tor` block"));
                }
                if s.arg(1, "`gldim`")? != "gldim" {
                    return Err(s.err(1, "expected `gldim`"));
                }
                let g: usize = s
                    .arg(2, "global dimension")?
                    .parse()
                    .map_err(|_| s.err(2, "global dimension must be a nonnegative integer"))?;
                section = Section::Tor(TorBlock { gldim: g, entries: BTreeMap::new(), line: s.line });
            }
            "tor_entry" => {
                let Section::Tor(ref mut block) = section else {
                    return Err(s.err(0, "`tor_entry` outside a `tor` block"));
                };
                parse_tor_entry(s, &quiver, block)?;
            }
            "params" => {
                close(&mut section, &mut reps, &mut tor, &mut families);
                if params.is_some() {
                    return Err(s.err(0, "duplicate `params` block"));
                }
                params = Some(parse_params(s, &quiver)?);
            }
            "family" => {
                close(&mut section, &mut reps, &mut tor, &mut families);
                section = Section::Family(parse_family_header(s)?);
            }
            "split" => {
                let Section::Family(ref mut block) = section else {
                    return Err(s.err(0, "`split` outside a `family` block"));
                };
                parse_split(s, &quiver, block)?;
            }
            "poly" => {
                let Section::Family(ref mut block) = section else {
                    return Err(s.err(0, "`poly` outside a `family` block"));
                };
                parse_poly(s, &quiver, block)?;
            }
            other => {
                return Err(s.err(0, format!("unknown statement `{other}`")));
            }
        }
    }
    close(&mut section, &mut reps, &mut tor, &mut families);

    let presentation = QuiverPresentation::new(quiver, relations);
    Ok((Document { presentation, reps, tor, params, families }, warnings))
}

fn parse_relation(s: &Stmt, quiver: &Quiver, warnings: &mut Vec<Warning>) -> Result<Relation> {
    let mut terms: Vec<(Rational, Path)> = Vec::new();
    let mut sign = Rational::one();
    let mut expecting_term = true;
    for (i, tok) in s.args_from(1) {
        match tok {
            "+" | "-" if !expecting_term => {
                sign = if tok == "-" {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                expecting_term = true;
            }
            _ if expecting_term => {
                let (coef, path) = parse_term(s, i, tok, quiver)?;
                terms.push((sign.clone() * coef, path));
                expecting_term = false;
            }
            _ => return Err(s.err(i, "expected `+` or `-` between relation terms")),
        }
    }
    if expecting_term {
        return Err(s.err(s.tokens.len(), "relation ends with a dangling sign"));
    }
    let rel = Relation::new(terms).map_err(|e| match e {
        Error::Semantic { msg, .. } => Error::Semantic { line: s.line, msg },
        other => other,
    })?;
    if rel.has_length_one_term() {
        warnings.push(Warning {
            line: s.line,
            msg: "relation contains a length-1 path, which deletes an arrow".to_string(),
        });
    }
    Ok(rel)
}

fn parse_term(s: &Stmt, tok_idx: usize, tok: &str, quiver: &Quiver) -> Result<(Rational, Path)> {
    let parts: Vec<&str> = tok.split('*').collect();
    let (coef, path_parts) = match parse_rational(parts[0]) {
        Some(c) => (c, &parts[1..]),
        None => (Rational::one(), &parts[..]),
    };
    if path_parts.is_empty() {
        return Err(s.err(tok_idx, "coefficient without a path"));
    }
    // written right-to-left: the rightmost arrow is applied first
    let mut arrow_indices = Vec::with_capacity(path_parts.len());
    for part in path_parts.iter().rev() {
        let idx = quiver.arrow_index(part).ok_or(Error::Semantic {
            line: s.line,
            msg: format!("unknown arrow {part}"),
        })?;
        arrow_indices.push(idx);
    }
    let path = Path::from_arrows(quiver, arrow_indices).map_err(|e| match e {
        Error::Semantic { msg, .. } => Error::Semantic { line: s.line, msg },
        other => other,
    })?;
    Ok((coef, path))
}

fn parse_rep_header(s: &Stmt, quiver: &Quiver) -> Result<RepBlock> {
    let name = s.arg(1, "representation name")?.to_string();
    let ptok = s.arg(2, "p=<prime>")?;
    let p = ptok
        .strip_prefix("p=")
        .and_then(|x| x.parse::<u32>().ok())
        .ok_or_else(|| s.err(2, "expected p=<prime>"))?;
    if s.arg(3, "`dim`")? != "dim" {
        return Err(s.err(3, "expected `dim`"));
    }
    let mut dims = Vec::new();
    for (i, tok) in s.args_from(4) {
        let d: u32 = tok.parse().map_err(|_| s.err(i, "dimension must be a nonnegative integer"))?;
        dims.push(d);
    }
    if dims.len() != quiver.num_vertices() {
        return Err(Error::Semantic {
            line: s.line,
            msg: format!(
                "dimension vector has {} entries, quiver has {} vertices",
                dims.len(),
                quiver.num_vertices()
            ),
        });
    }
    Ok(RepBlock {
        name,
        p,
        dim: DimensionVector(dims),
        matrices: BTreeMap::new(),
        line: s.line,
    })
}

fn parse_mat(s: &Stmt, quiver: &Quiver, block: &mut RepBlock) -> Result<()> {
    let arrow = s.arg(1, "arrow id")?;
    let arrow_idx = quiver.arrow_index(arrow).ok_or(Error::Semantic {
        line: s.line,
        msg: format!("unknown arrow {arrow}"),
    })?;
    let rows: usize = s.arg(2, "row count")?.parse().map_err(|_| s.err(2, "bad row count"))?;
    let cols: usize = s.arg(3, "column count")?.parse().map_err(|_| s.err(3, "bad column count"))?;
    if s.arg(4, "`:`")? != ":" {
        return Err(s.err(4, "expected `:` before the entries"));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, tok) in s.args_from(5) {
        let e: i64 = tok.parse().map_err(|_| s.err(i, "matrix entries must be integers"))?;
        entries.push(e);
    }
    if entries.len() != rows * cols {
        return Err(Error::Semantic {
            line: s.line,
            msg: format!("expected {} entries, got {}", rows * cols, entries.len()),
        });
    }
    if block.matrices.insert(arrow_idx, (rows, cols, entries)).is_some() {
        return Err(Error::Semantic {
            line: s.line,
            msg: format!("duplicate matrix for arrow {arrow}"),
        });
    }
    Ok(())
}

fn parse_tor_entry(s: &Stmt, quiver: &Quiver, block: &mut TorBlock) -> Result<()> {
    let l: usize = s.arg(1, "degree")?.parse().map_err(|_| s.err(1, "bad degree"))?;
    let i = s.arg(2, "row vertex")?;
    let j = s.arg(3, "column vertex")?;
    let d: u32 = s.arg(4, "multiplicity")?.parse().map_err(|_| s.err(4, "bad multiplicity"))?;
    let vi = quiver.vertex_index(i).ok_or(Error::Semantic {
        line: s.line,
        msg: format!("unknown vertex {i}"),
    })?;
    let vj = quiver.vertex_index(j).ok_or(Error::Semantic {
        line: s.line,
        msg: format!("unknown vertex {j}"),
    })?;
    if l > block.gldim {
        return Err(Error::Semantic {
            line: s.line,
            msg: format!("tor entry in degree {l} exceeds the declared global dimension {}", block.gldim),
        });
    }
    block.entries.insert((l, vi, vj), d);
    Ok(())
}

fn parse_params(s: &Stmt, quiver: &Quiver) -> Result<ParamsBlock> {
    let n = quiver.num_vertices();
    let mut i = 1;
    let expect_kw = |s: &Stmt, i: usize, kw: &str| -> Result<()> {
        if s.arg(i, kw)? != kw {
            return Err(s.err(i, format!("expected `{kw}`")));
        }
        Ok(())
    };
    expect_kw(s, i, "theta")?;
    i += 1;
    let mut theta = Vec::with_capacity(n);
    for _ in 0..n {
        let tok = s.arg(i, "rational theta entry")?;
        theta.push(parse_rational(tok).ok_or_else(|| s.err(i, "bad rational"))?);
        i += 1;
    }
    expect_kw(s, i, "lambda")?;
    i += 1;
    let mut lambda = Vec::with_capacity(n);
    for _ in 0..n {
        let tok = s.arg(i, "rational lambda entry")?;
        lambda.push(parse_rational(tok).ok_or_else(|| s.err(i, "bad rational"))?);
        i += 1;
    }
    expect_kw(s, i, "xi")?;
    i += 1;
    let xi = parse_rational(s.arg(i, "rational xi")?).ok_or_else(|| s.err(i, "bad rational"))?;
    i += 1;
    expect_kw(s, i, "v")?;
    i += 1;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        let tok = s.arg(i, "dimension entry")?;
        v.push(tok.parse::<u32>().map_err(|_| s.err(i, "bad dimension entry"))?);
        i += 1;
    }
    if i != s.tokens.len() {
        return Err(s.err(i, "unexpected trailing tokens in `params`"));
    }
    Ok(ParamsBlock { theta, lambda, xi, v: DimensionVector(v), line: s.line })
}

fn parse_family_header(s: &Stmt) -> Result<FamilyBlock> {
    let name = s.arg(1, "family name")?.to_string();
    let ptok = s.arg(2, "p=<prime>")?;
    let p = ptok
        .strip_prefix("p=")
        .and_then(|x| x.parse::<u32>().ok())
        .ok_or_else(|| s.err(2, "expected p=<prime>"))?;
    Ok(FamilyBlock { name, p, splitting: BTreeMap::new(), polys: BTreeMap::new(), line: s.line })
}

fn parse_split(s: &Stmt, quiver: &Quiver, block: &mut FamilyBlock) -> Result<()> {
    let v = s.arg(1, "vertex id")?;
    let vi = quiver.vertex_index(v).ok_or(Error::Semantic {
        line: s.line,
        msg: format!("unknown vertex {v}"),
    })?;
    let mut twists = Vec::new();
    for (i, tok) in s.args_from(2) {
        twists.push(tok.parse::<i64>().map_err(|_| s.err(i, "twists must be integers"))?);
    }
    if block.splitting.insert(vi, twists).is_some() {
        return Err(Error::Semantic {
            line: s.line,
            msg: format!("duplicate splitting type for vertex {v}"),
        });
    }
    Ok(())
}

fn parse_poly(s: &Stmt, quiver: &Quiver, block: &mut FamilyBlock) -> Result<()> {
    let arrow = s.arg(1, "arrow id")?;
    let arrow_idx = quiver.arrow_index(arrow).ok_or(Error::Semantic {
        line: s.line,
        msg: format!("unknown arrow {arrow}"),
    })?;
    let row: usize = s.arg(2, "row")?.parse().map_err(|_| s.err(2, "bad row index"))?;
    let col: usize = s.arg(3, "column")?.parse().map_err(|_| s.err(3, "bad column index"))?;
    if s.arg(4, "`:`")? != ":" {
        return Err(s.err(4, "expected `:` before the coefficients"));
    }
    let mut coeffs = Vec::new();
    for (i, tok) in s.args_from(5) {
        coeffs.push(tok.parse::<i64>().map_err(|_| s.err(i, "coefficients must be integers"))?);
    }
    block.polys.entry(arrow_idx).or_default().push((row, col, coeffs));
    Ok(())
}

/// Serialize a presentation back into the document format. This is the exact
/// inverse of `parse_presentation` on its image.
pub fn render(pres: &QuiverPresentation) -> String {
    let q = &pres.quiver;
    let mut out = String::new();
    out.push_str("vertices ");
    out.push_str(&q.vertex_names().join(" "));
    out.push('\n');
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    for rel in &pres.relations {
        out.push_str("relation ");
        for (i, (coef, path)) in rel.terms().iter().enumerate() {
            use num_traits::Signed;
            let mag = coef.abs();
            if i == 0 {
                // a leading sign is not part of the grammar; emit the
                // coefficient explicitly instead
                if coef.is_negative() {
                    out.push_str(&format!("{}*", coef));
                } else if !mag.is_one() {
                    out.push_str(&format!("{}*", mag));
                }
            } else {
                out.push_str(if coef.is_negative() { " - " } else { " + " });
                if !mag.is_one() {
                    out.push_str(&format!("{}*", mag));
                }
            }
            out.push_str(&path.display(q));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_parses() {
        let (pres, warnings) =
            parse_presentation("vertices 1 2\narrow a 1 2\narrow b 1 2\n").unwrap();
        assert_eq!(pres.quiver.num_vertices(), 2);
        assert_eq!(pres.quiver.arrows().len(), 2);
        assert!(pres.relations.is_empty());
        assert!(warnings.is_empty());
        assert_eq!(pres, *crate::corpus::k2());
    }

    #[test]
    fn loop_with_square_relation_parses() {
        let (pres, warnings) = parse_presentation("vertices 1\narrow x 1 1\nrelation x*x\n").unwrap();
        assert_eq!(pres.relations.len(), 1);
        assert!(warnings.is_empty());
        assert_eq!(pres, *crate::corpus::loop_x2());
    }

    #[test]
    fn unknown_vertex_is_a_semantic_error() {
        let err = parse_presentation("vertices 1 2\narrow a 1 3\n").unwrap_err();
        match err {
            Error::Semantic { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("unknown vertex 3"), "{msg}");
            }
            other => panic!("expected semantic error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_presentation("vertices 1 2\nfrobnicate a\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_vertices_lines_forbidden() {
        assert!(parse_presentation("vertices 1\nvertices 2\n").is_err());
    }

    #[test]
    fn length_one_relation_warns() {
        let (_, warnings) =
            parse_presentation("vertices 1 2\narrow a 1 2\narrow b 1 2\nrelation a - b\n").unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].msg.contains("length-1"));
    }

    #[test]
    fn relation_with_coefficients_and_signs() {
        let text = "vertices 1 2 3\narrow f 1 2\narrow g 2 3\narrow h 1 2\nrelation 1/2*g*f - 3*g*h\n";
        let (pres, _) = parse_presentation(text).unwrap();
        let rel = &pres.relations[0];
        assert_eq!(rel.terms().len(), 2);
        assert_eq!(rel.terms()[0].0, Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(rel.terms()[1].0, Rational::from(BigInt::from(-3)));
    }

    #[test]
    fn non_parallel_relation_terms_rejected() {
        let text = "vertices 1 2 3\narrow f 1 2\narrow g 2 3\nrelation g*f + f\n";
        assert!(parse_presentation(text).is_err());
    }

    #[test]
    fn statements_can_share_a_line() {
        let text = "vertices 1 2 / arrow a 1 2 / arrow b 1 2";
        let (pres, _) = parse_presentation(text).unwrap();
        assert_eq!(pres, *crate::corpus::k2());
    }

    #[test]
    fn rep_block_round_trips_values() {
        let text = "vertices 1 2\narrow a 1 2\narrow b 1 2\nrep m p=3 dim 1 1 / mat a 1 1: 1 / mat b 1 1: 0\n";
        let (doc, _) = parse_document(text).unwrap();
        assert_eq!(doc.reps.len(), 1);
        let rep = &doc.reps[0];
        assert_eq!(rep.name, "m");
        assert_eq!(rep.p, 3);
        assert_eq!(rep.dim, DimensionVector(vec![1, 1]));
        assert_eq!(rep.matrices.len(), 2);
    }

    #[test]
    fn params_block_parses_rationals() {
        let text = "vertices 1 2\narrow a 1 2\nparams theta -1 1 lambda 1/2 5 xi -1/3 v 1 1\n";
        let (doc, _) = parse_document(text).unwrap();
        let p = doc.params.unwrap();
        assert_eq!(p.theta[0], Rational::from(BigInt::from(-1)));
        assert_eq!(p.lambda[0], Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(p.xi, Rational::new(BigInt::from(-1), BigInt::from(3)));
    }

    #[test]
    fn family_block_parses() {
        let text = "vertices 1 2\narrow a 1 2\narrow b 1 2\nfamily taut p=2\nsplit 1 0\nsplit 2 1\npoly a 0 0: 1 0\npoly b 0 0: 0 1\n";
        let (doc, _) = parse_document(text).unwrap();
        assert_eq!(doc.families.len(), 1);
        let fam = &doc.families[0];
        assert_eq!(fam.splitting[&0], vec![0]);
        assert_eq!(fam.splitting[&1], vec![1]);
    }

    #[test]
    fn tor_block_parses() {
        let text = "vertices 1\narrow x 1 1\nrelation x*x\ntor gldim 2\ntor_entry 1 1 1 1\ntor_entry 2 1 1 1\n";
        let (doc, _) = parse_document(text).unwrap();
        let tor = doc.tor.unwrap();
        assert_eq!(tor.gldim, 2);
        assert_eq!(tor.entries.len(), 2);
    }

    #[test]
    fn render_then_parse_is_identity_on_the_corpus() {
        for (_, pres) in crate::corpus::bundled_quivers() {
            let text = render(&pres);
            let (back, _) = parse_presentation(&text).unwrap();
            assert_eq!(back, *pres);
        }
    }
}
