//! One function per subcommand. Each returns a JSON document (rationals as
//! exact "p/q" strings, seed recorded at the top level) plus the exit code
//! to use; CSV plot data is attached where the subcommand supports it.

use crate::output::{dim_json, rat_decimal, rat_json, rat_str, rats_json};
use num_traits::Zero;
use quiverstab::corpus;
use quiverstab::error::Error;
use quiverstab::family::{
    ell_dot_c_charge, ell_dot_c_determinant, positivity_report, DichotomyVerdict, FamilyOverP1,
};
use quiverstab::knum::{euler_form_acyclic, euler_form_from_tor, verify_perfect_pairing, TorTable};
use quiverstab::linalg::{FpMatrix, PrimeField, Rational};
use quiverstab::parse::{Document, RepBlock};
use quiverstab::quiver::DimensionVector;
use quiverstab::rep::{all_submodules, Representation};
use quiverstab::stability::{
    hn_from_submodules, jh_factors, s_equivalent, Decider, StabilityParams,
};
use quiverstab::walls::{
    actual_walls, census, chambers, potential_walls, second_witness, theta_basis, CensusStatus,
};
use quiverstab::Caps;
use serde_json::{json, Value};
use std::sync::Arc;

pub struct Outcome {
    pub doc: Value,
    pub exit: i32,
    pub csv: Option<String>,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, exit: 0, csv: None }
    }
}

pub struct Ctx {
    pub caps: Caps,
    pub seed: u64,
    pub jobs: usize,
}

fn pres_of(doc: &Document) -> Arc<quiverstab::QuiverPresentation> {
    Arc::new(doc.presentation.clone())
}

fn build_rep(
    pres: &Arc<quiverstab::QuiverPresentation>,
    block: &RepBlock,
) -> Result<Representation, Error> {
    let field = PrimeField::new(block.p)?;
    let quiver = &pres.quiver;
    let mut mats = Vec::with_capacity(quiver.arrows().len());
    for (idx, a) in quiver.arrows().iter().enumerate() {
        let expected_rows = block.dim.get(a.target) as usize;
        let expected_cols = block.dim.get(a.source) as usize;
        match block.matrices.get(&idx) {
            Some((r, c, entries)) => {
                if *r != expected_rows || *c != expected_cols {
                    return Err(Error::ShapeMismatch {
                        arrow: a.name.clone(),
                        expected_rows,
                        expected_cols,
                        rows: *r,
                        cols: *c,
                    });
                }
                let mut m = FpMatrix::zero(field, *r, *c);
                for (k, &e) in entries.iter().enumerate() {
                    m.set(k / *c.max(&1), k % *c.max(&1), field.from_i64(e));
                }
                mats.push(m);
            }
            None => mats.push(FpMatrix::zero(field, expected_rows, expected_cols)),
        }
    }
    Representation::new(pres.clone(), field, block.dim.clone(), mats)
}

fn params_of(doc: &Document) -> Result<StabilityParams, Error> {
    let block = doc.params.as_ref().ok_or(Error::Semantic {
        line: 0,
        msg: "this subcommand needs a `params` block in the description file".into(),
    })?;
    StabilityParams::new(
        block.theta.clone(),
        block.lambda.clone(),
        block.xi.clone(),
        block.v.clone(),
    )
}

fn rep_blocks<'a>(doc: &'a Document, name: Option<&str>) -> Result<Vec<&'a RepBlock>, Error> {
    match name {
        None => Ok(doc.reps.iter().collect()),
        Some(n) => doc
            .reps
            .iter()
            .find(|r| r.name == n)
            .map(|r| vec![r])
            .ok_or(Error::Semantic { line: 0, msg: format!("no representation named `{n}`") }),
    }
}

fn rep_json(rep: &Representation) -> Value {
    let quiver = &rep.presentation().quiver;
    let mats: serde_json::Map<String, Value> = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let m = rep.arrow_matrix(idx);
            let rows: Vec<Value> = (0..m.rows())
                .map(|r| Value::Array(m.row(r).iter().map(|&x| Value::Number(x.into())).collect()))
                .collect();
            (a.name.clone(), Value::Array(rows))
        })
        .collect();
    json!({ "dim": dim_json(rep.dim()), "matrices": Value::Object(mats), "p": rep.field().p() })
}

pub fn check(
    doc: &Document,
    warnings: &[quiverstab::parse::Warning],
    ctx: &Ctx,
    cycles: Option<usize>,
    nilpotent: bool,
) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let mut all_valid = true;
    let params = match doc.params.as_ref() {
        None => None,
        Some(_) => match params_of(doc) {
            Ok(p) => Some(p),
            Err(e) => {
                all_valid = false;
                return Err(e);
            }
        },
    };
    let mut reps = Vec::new();
    for block in &doc.reps {
        let entry = match build_rep(&pres, block) {
            Ok(rep) => {
                let mut j = json!({
                    "name": block.name,
                    "valid": true,
                    "dim": dim_json(rep.dim()),
                    "p": block.p,
                });
                if let Some(bound) = cycles {
                    let ok = rep.cycles_act_as_zero(bound, nilpotent, &ctx.caps)?;
                    j["cycles_act_as_zero"] = json!(ok);
                    j["cycle_bound"] = json!(bound);
                    j["nilpotent_variant"] = json!(nilpotent);
                }
                j
            }
            Err(e) => {
                all_valid = false;
                json!({ "name": block.name, "valid": false, "error": e.to_string() })
            }
        };
        reps.push(entry);
    }
    let mut families = Vec::new();
    for block in &doc.families {
        let entry = match FamilyOverP1::from_block(pres.clone(), block) {
            Ok(fam) => {
                let mut j = json!({
                    "name": block.name,
                    "valid": true,
                    "class": dim_json(&fam.class()),
                    "det_degrees": fam.det_degrees(),
                });
                if let Some(ref p) = params {
                    match fam.check(p, &ctx.caps) {
                        Ok(()) => j["fibers_semistable"] = json!(true),
                        Err(e) => {
                            all_valid = false;
                            j["fibers_semistable"] = json!(false);
                            j["error"] = json!(e.to_string());
                        }
                    }
                }
                j
            }
            Err(e) => {
                all_valid = false;
                json!({ "name": block.name, "valid": false, "error": e.to_string() })
            }
        };
        families.push(entry);
    }
    let quiver = &doc.presentation.quiver;
    let doc_json = json!({
        "command": "check",
        "seed": ctx.seed,
        "presentation": {
            "vertices": quiver.vertex_names(),
            "arrows": quiver.arrows().iter().map(|a| json!({
                "name": a.name,
                "source": quiver.vertex_name(a.source),
                "target": quiver.vertex_name(a.target),
            })).collect::<Vec<_>>(),
            "relations": doc.presentation.relations.iter()
                .map(|r| Value::String(r.display(quiver)))
                .collect::<Vec<_>>(),
            "acyclic": quiver.is_acyclic(),
        },
        "warnings": warnings.iter().map(|w| json!({ "line": w.line, "message": w.msg })).collect::<Vec<_>>(),
        "reps": reps,
        "families": families,
        "params_present": doc.params.is_some(),
        "valid": all_valid,
    });
    Ok(Outcome { doc: doc_json, exit: if all_valid { 0 } else { 1 }, csv: None })
}

pub fn euler(doc: &Document, ctx: &Ctx) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let (matrix, source, gldim) = match euler_form_acyclic(&pres) {
        Ok(e) => (e, "closed_form", None),
        Err(closed_form_err) => match doc.tor.as_ref() {
            Some(block) => {
                let tor = TorTable::from_block(&pres, block)?;
                (euler_form_from_tor(&tor), "tor_table", Some(tor.gldim()))
            }
            None => return Err(closed_form_err),
        },
    };
    let mut j = json!({
        "command": "euler",
        "seed": ctx.seed,
        "euler_matrix": matrix.rows(),
        "source": source,
        "convention": "row i, column j carries the alternating sum over Ae_i (x) e_j A summands; \
validated against the hereditary closed form",
    });
    if let Some(g) = gldim {
        j["declared_gldim"] = json!(g);
        j["truncation"] = json!(format!("alternating sum truncated at the declared global dimension {g}"));
    }
    Ok(Outcome::ok(j))
}

pub fn pairing_report(doc: &Document, ctx: &Ctx, p: u32) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let report = verify_perfect_pairing(&pres, p, &ctx.caps)?;
    let doc_json = json!({
        "command": "pairing-report",
        "seed": ctx.seed,
        "p": p,
        "projective_dims": report.projective_dims.iter().map(dim_json).collect::<Vec<_>>(),
        "gram": report.gram,
        "pass": report.pass,
        "note": "gram[j][i] = chi([P_j], [S_i]); the projective dimension vectors give the \
change of basis between the simple-dual coordinates and the projective basis of the dual group",
    });
    Ok(Outcome { doc: doc_json, exit: if report.pass { 0 } else { 3 }, csv: None })
}

pub fn stable(doc: &Document, ctx: &Ctx, rep_name: Option<&str>) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let params = params_of(doc)?;
    let decider = Decider::new(&params);
    let mut results = Vec::new();
    for block in rep_blocks(doc, rep_name)? {
        let rep = build_rep(&pres, block)?;
        let subs = all_submodules(&rep, &ctx.caps)?;
        let sigma = if rep.dim().is_zero() {
            Value::Null
        } else {
            json!(decider.sigma_semistable(&rep, &subs))
        };
        let (theta_ss, theta_s, note) = if rep.dim() == params.class() {
            let (ss, s) = decider.theta_verdict(&rep, &subs)?;
            (json!(ss), json!(s), Value::Null)
        } else {
            (
                Value::Null,
                Value::Null,
                json!("class differs from the fixed v; theta verdicts undefined"),
            )
        };
        results.push(json!({
            "rep": block.name,
            "dim": dim_json(rep.dim()),
            "theta_semistable": theta_ss,
            "theta_stable": theta_s,
            "sigma_semistable": sigma,
            "note": note,
        }));
    }
    Ok(Outcome::ok(json!({
        "command": "stable",
        "seed": ctx.seed,
        "theta": rats_json(params.theta()),
        "v": dim_json(params.class()),
        "results": results,
    })))
}

pub fn hn(doc: &Document, ctx: &Ctx, rep_name: Option<&str>) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let params = params_of(doc)?;
    let mut results = Vec::new();
    for block in rep_blocks(doc, rep_name)? {
        let rep = build_rep(&pres, block)?;
        let subs = all_submodules(&rep, &ctx.caps)?;
        let hn = hn_from_submodules(&rep, &subs, &params)?;
        results.push(json!({
            "rep": block.name,
            "length": hn.length(),
            "chain_dims": hn.chain.iter().map(|s| dim_json(s.dim())).collect::<Vec<_>>(),
            "factors": hn.factors.iter().map(|f| json!({
                "dim": dim_json(&f.dim),
                "charge_re": rat_str(&f.charge.re),
                "charge_im": rat_str(&f.charge.im),
            })).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome::ok(json!({
        "command": "hn",
        "seed": ctx.seed,
        "results": results,
    })))
}

pub fn jh(doc: &Document, ctx: &Ctx, rep_name: Option<&str>) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let params = params_of(doc)?;
    let mut results = Vec::new();
    for block in rep_blocks(doc, rep_name)? {
        let rep = build_rep(&pres, block)?;
        let jh = jh_factors(&rep, &params, &ctx.caps)?;
        results.push(json!({
            "rep": block.name,
            "factor_count": jh.len(),
            "factors": jh.factors.iter().map(rep_json).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome::ok(json!({
        "command": "jh",
        "seed": ctx.seed,
        "results": results,
    })))
}

pub fn sequiv(doc: &Document, ctx: &Ctx, left: &str, right: &str) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let params = params_of(doc)?;
    let l = build_rep(&pres, rep_blocks(doc, Some(left))?[0])?;
    let r = build_rep(&pres, rep_blocks(doc, Some(right))?[0])?;
    let equivalent = s_equivalent(&l, &r, &params, &ctx.caps)?;
    Ok(Outcome::ok(json!({
        "command": "sequiv",
        "seed": ctx.seed,
        "left": left,
        "right": right,
        "s_equivalent": equivalent,
    })))
}

fn parse_class(v: &str) -> Result<DimensionVector, Error> {
    let entries: Result<Vec<u32>, _> = v.split(',').map(|x| x.trim().parse::<u32>()).collect();
    entries
        .map(DimensionVector)
        .map_err(|_| Error::Semantic { line: 0, msg: format!("bad class `{v}`; expected like 1,1") })
}

fn class_of(doc: &Document, flag: Option<&str>) -> Result<DimensionVector, Error> {
    match flag {
        Some(v) => parse_class(v),
        None => doc
            .params
            .as_ref()
            .map(|p| p.v.clone())
            .ok_or(Error::Semantic { line: 0, msg: "pass --v or add a `params` block".into() }),
    }
}

pub fn walls_cmd(
    doc: &Document,
    ctx: &Ctx,
    v_flag: Option<&str>,
    actual: bool,
    p: u32,
) -> Result<Outcome, Error> {
    let class = class_of(doc, v_flag)?;
    let walls = potential_walls(&class);
    let actuality: Vec<Value> = if actual {
        let pres = pres_of(doc);
        actual_walls(&pres, p, &class, &walls, &ctx.caps)?
            .into_iter()
            .map(|(w, a)| json!({ "w": dim_json(&w.w), "actual": a }))
            .collect()
    } else {
        walls.iter().map(|w| json!({ "w": dim_json(&w.w) })).collect()
    };
    Ok(Outcome::ok(json!({
        "command": "walls",
        "seed": ctx.seed,
        "v": dim_json(&class),
        "wall_count": walls.len(),
        "walls": actuality,
        "actuality_checked": actual,
        "note": "actuality is census-based over F_p at a wall-interior point; \
potential walls over-approximate the walls realized by actual submodule classes",
    })))
}

pub fn chambers_cmd(doc: &Document, ctx: &Ctx, v_flag: Option<&str>) -> Result<Outcome, Error> {
    let class = class_of(doc, v_flag)?;
    let walls = potential_walls(&class);
    let chs = chambers(&class, &walls, &ctx.caps)?;
    let chambers_json: Vec<Value> = chs
        .iter()
        .map(|ch| {
            let second = second_witness(&class, &walls, ch);
            json!({
                "signs": ch.sign_string(),
                "witness": rats_json(&ch.witness),
                "second_witness": second.map(|w| rats_json(&w)).unwrap_or(Value::Null),
            })
        })
        .collect();
    let csv = chamber_plot_csv(&class, &walls, &chs, ctx.seed);
    Ok(Outcome {
        doc: json!({
            "command": "chambers",
            "seed": ctx.seed,
            "v": dim_json(&class),
            "walls": walls.iter().map(|w| dim_json(&w.w)).collect::<Vec<_>>(),
            "chamber_count": chs.len(),
            "chambers": chambers_json,
        }),
        exit: 0,
        csv,
    })
}

/// Line-segment plot data for two-dimensional parameter spaces: each wall
/// as a segment through the origin in the coordinates of the Theta_v basis,
/// each chamber witness as a point.
fn chamber_plot_csv(
    class: &DimensionVector,
    walls: &[quiverstab::walls::Wall],
    chs: &[quiverstab::walls::Chamber],
    seed: u64,
) -> Option<String> {
    let basis = theta_basis(class);
    if basis.len() != 2 {
        return None;
    }
    let mut out = String::from("kind,index,x1,y1,x2,y2,signs,seed\n");
    for (k, wall) in walls.iter().enumerate() {
        // restriction of the wall functional: r . y = 0; direction (-r2, r1)
        let wr: Vec<Rational> = wall.w.0.iter().map(|&x| Rational::from(x.into())).collect();
        let r: Vec<Rational> = basis
            .iter()
            .map(|b| b.iter().zip(&wr).map(|(x, y)| x * y).fold(Rational::zero(), |a, c| a + c))
            .collect();
        let (dx, dy) = (-r[1].clone(), r[0].clone());
        out.push_str(&format!(
            "wall,{k},{},{},{},{},,{seed}\n",
            rat_decimal(&-&dx, 6),
            rat_decimal(&-&dy, 6),
            rat_decimal(&dx, 6),
            rat_decimal(&dy, 6),
        ));
    }
    for (k, ch) in chs.iter().enumerate() {
        let coords = quiverstab::walls::theta_in_basis_coordinates(class, &ch.witness);
        if let Some(y) = coords {
            out.push_str(&format!(
                "chamber,{k},{},{},,,{},{seed}\n",
                rat_decimal(&y[0], 6),
                rat_decimal(&y[1], 6),
                ch.sign_string(),
            ));
        }
    }
    Some(out)
}

pub fn census_cmd(
    doc: &Document,
    ctx: &Ctx,
    v_flag: Option<&str>,
    p: u32,
    theta_flag: Option<&str>,
) -> Result<Outcome, Error> {
    let class = class_of(doc, v_flag)?;
    let theta: Vec<Rational> = match theta_flag {
        Some(t) => t
            .split(',')
            .map(|x| {
                x.trim().parse::<Rational>().map_err(|_| Error::Semantic {
                    line: 0,
                    msg: format!("bad rational `{x}` in --theta"),
                })
            })
            .collect::<Result<_, _>>()?,
        None => doc
            .params
            .as_ref()
            .map(|pb| pb.theta.clone())
            .ok_or(Error::Semantic { line: 0, msg: "pass --theta or add a `params` block".into() })?,
    };
    let pres = pres_of(doc);
    let result = census(&pres, p, &class, &theta, &ctx.caps)?;
    let status_str = |s: CensusStatus| match s {
        CensusStatus::Stable => "stable",
        CensusStatus::StrictlySemistable => "strictly_semistable",
        CensusStatus::Unstable => "unstable",
    };
    let entries: Vec<Value> = result
        .entries
        .iter()
        .map(|e| {
            let mut j = rep_json(&e.rep);
            j["status"] = json!(status_str(e.status));
            j["count"] = json!(e.count);
            j
        })
        .collect();
    let mut csv = String::from("index,status,count,dim,seed\n");
    for (k, e) in result.entries.iter().enumerate() {
        csv.push_str(&format!(
            "{k},{},{},{},{}\n",
            status_str(e.status),
            e.count,
            e.rep.dim(),
            ctx.seed
        ));
    }
    Ok(Outcome {
        doc: json!({
            "command": "census",
            "seed": ctx.seed,
            "v": dim_json(&class),
            "p": p,
            "theta": rats_json(&theta),
            "stable_classes": result.count_with(CensusStatus::Stable),
            "strictly_semistable_classes": result.count_with(CensusStatus::StrictlySemistable),
            "unstable_classes": result.count_with(CensusStatus::Unstable),
            "grouping_complete": result.grouping_complete,
            "entries": entries,
        }),
        exit: 0,
        csv: Some(csv),
    })
}

pub fn nef(doc: &Document, ctx: &Ctx, family_name: Option<&str>) -> Result<Outcome, Error> {
    let pres = pres_of(doc);
    let params = params_of(doc)?;
    let blocks: Vec<_> = match family_name {
        None => doc.families.iter().collect(),
        Some(n) => {
            let found = doc.families.iter().find(|f| f.name == n).ok_or(Error::Semantic {
                line: 0,
                msg: format!("no family named `{n}`"),
            })?;
            vec![found]
        }
    };
    if blocks.is_empty() {
        return Err(Error::Semantic { line: 0, msg: "no `family` block in the file".into() });
    }
    let mut results = Vec::new();
    let mut violated = false;
    for block in blocks {
        let fam = FamilyOverP1::from_block(pres.clone(), block)?;
        let report = positivity_report(&fam, &params, &ctx.caps)?;
        let dichotomy = match &report.verdict {
            DichotomyVerdict::ConfirmedPositive => "confirmed_positive".to_string(),
            DichotomyVerdict::ConfirmedZero => "confirmed_zero".to_string(),
            DichotomyVerdict::Violated(why) => {
                violated = true;
                format!("violated: {why}")
            }
        };
        results.push(json!({
            "family": block.name,
            "ell_determinant": rat_str(&report.ell_determinant.0),
            "ell_charge": rat_str(&report.ell_charge.0),
            "routes_agree": report.routes_agree,
            "nonnegative": report.nonnegative,
            "all_fibers_s_equivalent": report.all_fibers_s_equivalent,
            "dichotomy": dichotomy,
            "fibers": report.fibers.iter().map(|(pt, jh)| json!({
                "point": pt.display(),
                "jh_factor_dims": jh.dims().iter().map(dim_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "note": report.note,
        }));
    }
    Ok(Outcome {
        doc: json!({
            "command": "nef",
            "seed": ctx.seed,
            "theta": rats_json(params.theta()),
            "v": dim_json(params.class()),
            "results": results,
        }),
        exit: if violated { 3 } else { 0 },
        csv: None,
    })
}

/// Randomized invariant sweeps over the built-in corpus. Work items are
/// dispatched to the configured worker pool; outputs are merged in the
/// canonical item order, so the bytes do not depend on the pool size.
pub fn sweep(ctx: &Ctx, suite: &str, draws: usize) -> Result<Outcome, Error> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.jobs.max(1))
        .build()
        .expect("worker pool");
    let suites: Vec<&str> = match suite {
        "all" => vec!["route-equality", "theta-sigma", "support", "hn-structure"],
        s => vec![s],
    };
    let mut suite_reports = Vec::new();
    let mut any_failures = false;
    for name in suites {
        let (cases, failures): (usize, Vec<String>) = match name {
            "route-equality" => {
                let families = corpus::bundled_families();
                let items: Vec<(usize, usize)> = (0..families.len())
                    .flat_map(|f| (0..draws).map(move |d| (f, d)))
                    .collect();
                let results: Vec<Option<String>> = pool.install(|| {
                    items
                        .par_iter()
                        .map(|&(f, d)| {
                            let bf = &families[f];
                            let params = corpus::draw_params(
                                &bf.family.class(),
                                1,
                                ctx.seed.wrapping_add((f * 1000 + d) as u64),
                            )
                            .pop()
                            .unwrap();
                            let det = ell_dot_c_determinant(&bf.family, &params).unwrap();
                            let charge = ell_dot_c_charge(&bf.family, &params).unwrap();
                            (det != charge).then(|| {
                                format!("family {} draw {d}: {det} vs {charge}", bf.name)
                            })
                        })
                        .collect()
                });
                (items.len(), results.into_iter().flatten().collect())
            }
            "theta-sigma" | "support" | "hn-structure" => {
                let slices = corpus::module_corpus(2, 3, 2048, 60, ctx.seed);
                let per_class = draws.clamp(1, 20);
                let items: Vec<(usize, usize)> = (0..slices.len())
                    .flat_map(|s| (0..per_class).map(move |d| (s, d)))
                    .collect();
                let caps = &ctx.caps;
                let results: Vec<Option<String>> = pool.install(|| {
                    items
                        .par_iter()
                        .map(|&(s, d)| {
                            let slice = &slices[s];
                            let params = corpus::draw_params(
                                &slice.class,
                                1,
                                ctx.seed.wrapping_add((s * 1000 + d) as u64),
                            )
                            .pop()
                            .unwrap();
                            let decider = Decider::new(&params);
                            for rep in &slice.reps {
                                let subs = all_submodules(rep, caps).ok()?;
                                match name {
                                    "theta-sigma" => {
                                        let (ss, _) = decider.theta_verdict(rep, &subs).ok()?;
                                        if ss != decider.sigma_semistable(rep, &subs) {
                                            return Some(format!(
                                                "{} class {} draw {d}: verdicts disagree",
                                                slice.quiver_name, slice.class
                                            ));
                                        }
                                    }
                                    "support" => {
                                        let z = quiverstab::stability::central_charge(
                                            &params,
                                            rep.dim(),
                                        )
                                        .ok()?;
                                        let c = params.support_constant();
                                        let sup = Rational::from(
                                            (rep.dim().sup_norm() as i64).into(),
                                        );
                                        if z.norm_squared() < &c * &c * &sup * &sup {
                                            return Some(format!(
                                                "{} class {}: support property fails",
                                                slice.quiver_name, slice.class
                                            ));
                                        }
                                    }
                                    _ => {
                                        let hn = hn_from_submodules(rep, &subs, &params).ok()?;
                                        let total = hn.factors.iter().fold(
                                            DimensionVector::zero(rep.dim().len()),
                                            |acc, f| acc.add(&f.dim),
                                        );
                                        if &total != rep.dim() {
                                            return Some(format!(
                                                "{} class {}: HN factors do not sum",
                                                slice.quiver_name, slice.class
                                            ));
                                        }
                                    }
                                }
                            }
                            None
                        })
                        .collect()
                });
                (items.len(), results.into_iter().flatten().collect())
            }
            other => {
                return Err(Error::Semantic {
                    line: 0,
                    msg: format!(
                        "unknown suite `{other}`; pick one of all, route-equality, theta-sigma, support, hn-structure"
                    ),
                })
            }
        };
        if !failures.is_empty() {
            any_failures = true;
        }
        suite_reports.push(json!({
            "suite": name,
            "cases": cases,
            "failures": failures.len(),
            "violations": failures,
        }));
    }
    Ok(Outcome {
        doc: json!({
            "command": "sweep",
            "seed": ctx.seed,
            "jobs": ctx.jobs,
            "suites": suite_reports,
        }),
        exit: if any_failures { 3 } else { 0 },
        csv: None,
    })
}
