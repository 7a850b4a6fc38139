use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use symlag_core::interp::{
    analyze as run_analysis, check_independence, r_vector, solve_constraints, validate_symmetric_basis, Admissibility,
    BasisSet, DeterminantMode, Independence, OrbitClass, Verdict, DEFAULT_DET_TOL,
};
use symlag_core::io::{parse_basis_json, parse_nodes_json};
use symlag_core::rational::{parse_snapped, tolerance_from_f64, Snap};
use symlag_core::{
    class_size, classify_point, equivalent, expand_orbit, k_matrix, orbit_vector, v_matrix, validate_symmetric, Error,
    NodeSet, OrbitType, Point, TypeTable,
};

use crate::render::{int, ints, join, matrix, strings, table, Report};
use crate::Config;

const INDEPENDENCE_ATTEMPTS: usize = 8;
const INDEPENDENCE_SEED: u64 = 0x5359_4d4c;

/// `a, b, .., z, a1, b1, ..`
fn fresh_names() -> impl Iterator<Item = String> {
    (0usize..).map(|i| {
        let letter = (b'a' + (i % 26) as u8) as char;
        match i / 26 {
            0 => letter.to_string(),
            k => format!("{letter}{k}"),
        }
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_basis(path: &Path, n: Option<usize>) -> Result<BasisSet> {
    let (n, functions) =
        parse_basis_json(&read(path)?, n).with_context(|| format!("in basis file {}", path.display()))?;
    validate_symmetric_basis(n, functions).with_context(|| format!("in basis file {}", path.display()))
}

fn load_nodes(cfg: &Config, path: &Path) -> Result<(NodeSet, Vec<Snap>)> {
    let tol = cfg.snap_tol.map(tolerance_from_f64).transpose()?;
    let parsed =
        parse_nodes_json(&read(path)?, tol.as_ref()).with_context(|| format!("in node file {}", path.display()))?;
    let set =
        validate_symmetric(parsed.n, parsed.points).with_context(|| format!("in node file {}", path.display()))?;
    Ok((set, parsed.snaps))
}

fn snaps_json(snaps: &[Snap]) -> Value {
    Value::Array(
        snaps
            .iter()
            .map(|s| json!({"input": s.input, "exact": s.exact.to_string(), "snapped": s.snapped.to_string()}))
            .collect(),
    )
}

fn snap_lines(snaps: &[Snap]) -> String {
    snaps
        .iter()
        .map(|s| format!("note: snapped {} to {}\n", s.input, s.snapped))
        .collect()
}

fn admissibility_json(a: &Admissibility, order: &[OrbitType]) -> Value {
    let types = |idx: &[usize]| Value::Array(idx.iter().map(|&i| json!(order[i])).collect());
    match a {
        Admissibility::Admissible { orbit_vector } => json!({
            "status": "admissible",
            "orbit_vector": ints(orbit_vector),
        }),
        Admissibility::Infeasible { negative, fractional } => json!({
            "status": "infeasible",
            "negative": types(negative),
            "fractional": types(fractional),
        }),
    }
}

fn basis_orbits_json(b: &BasisSet) -> Value {
    Value::Array(
        b.orbits()
            .iter()
            .map(|o| {
                json!({
                    "functions": strings(o.members.iter().map(|&i| &b.functions()[i])),
                    "class": o.class,
                })
            })
            .collect(),
    )
}

fn class_label(c: &OrbitClass) -> String {
    match c {
        OrbitClass::Realizable { ty } => format!("type {ty}"),
        OrbitClass::NotRealizable { size } => format!("size {size}, not realizable by point orbits"),
    }
}

pub fn types(n: usize) -> Result<Report> {
    let table_ = TypeTable::new(n)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (i, t) in table_.types().iter().enumerate() {
        let pattern = t.pattern(&mut fresh_names());
        rows.push(vec![
            (i + 1).to_string(),
            t.to_string(),
            pattern.clone(),
            t.orbit_size().to_string(),
            t.stabilizer_order().to_string(),
        ]);
        entries.push(json!({
            "rank": i + 1,
            "type": t,
            "pattern": pattern,
            "orbit_size": int(&t.orbit_size()),
            "stabilizer_order": int(&t.stabilizer_order()),
        }));
    }
    let header = ["rank", "type", "pattern", "orbit size", "stabilizer"].map(String::from);
    Ok(Report::new(
        "types",
        json!({"n": n, "types": entries}),
        table(&header, &rows),
        0,
    ))
}

fn labelled_matrix<T: ToString>(order: &[OrbitType], entries: &[Vec<T>]) -> String {
    let header: Vec<String> = std::iter::once(String::new())
        .chain(order.iter().map(|t| t.to_string()))
        .collect();
    let rows: Vec<Vec<String>> = order
        .iter()
        .zip(entries)
        .map(|(t, row)| {
            std::iter::once(t.to_string())
                .chain(row.iter().map(|v| v.to_string()))
                .collect()
        })
        .collect();
    table(&header, &rows)
}

pub fn vmatrix(n: usize) -> Result<Report> {
    let v = v_matrix(n)?;
    let det = v.determinant();
    let minors = v.leading_minors();
    let symmetric = v.is_symmetric();
    let positive_definite = v.is_positive_definite();
    let mut text = labelled_matrix(&v.order, &v.entries);
    text.push_str(&format!("\ndet(V) = {det}\n"));
    text.push_str(&format!("leading principal minors: {}\n", join(&minors, ", ")));
    text.push_str(&format!("symmetric: {}\n", yes_no(symmetric)));
    text.push_str(&format!("positive definite: {}\n", yes_no(positive_definite)));
    Ok(Report::new(
        "vmatrix",
        json!({
            "n": n,
            "order": v.order,
            "entries": matrix(&v.entries),
            "determinant": int(&det),
            "leading_minors": ints(&minors),
            "symmetric": symmetric,
            "positive_definite": positive_definite,
        }),
        text,
        0,
    ))
}

pub fn kmatrix(n: usize) -> Result<Report> {
    let k = k_matrix(n)?;
    let sizes: Vec<_> = k.order.iter().map(class_size).collect();
    let triangular = k.is_triangular() && k.diagonal_positive();
    let mut text = String::from("rows: orbit types; columns: conjugacy classes by cycle type\n");
    text.push_str(&labelled_matrix(&k.order, &k.entries));
    text.push_str(&format!("\nclass sizes: {}\n", join(&sizes, ", ")));
    text.push_str(&format!(
        "triangular with positive diagonal (zero whenever the class type exceeds the orbit type): {}\n",
        yes_no(triangular)
    ));
    Ok(Report::new(
        "kmatrix",
        json!({
            "n": n,
            "order": k.order,
            "entries": matrix(&k.entries),
            "class_sizes": ints(&sizes),
            "triangular": triangular,
        }),
        text,
        0,
    ))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze(
    cfg: &Config,
    basis_path: &Path,
    nodes_path: &Path,
    n: Option<usize>,
    float: bool,
    independence: bool,
) -> Result<Report> {
    let (nodes, snaps) = load_nodes(cfg, nodes_path)?;
    let basis = load_basis(basis_path, n.or(Some(nodes.n())))?;
    if basis.n() != nodes.n() {
        bail!("basis is in {} variables but nodes are in R^{}", basis.n(), nodes.n());
    }
    let mode = if float {
        DeterminantMode::Float {
            rel_tol: cfg.det_tol.unwrap_or(DEFAULT_DET_TOL),
        }
    } else {
        DeterminantMode::Exact
    };
    let analysis = run_analysis(&basis, &nodes, cfg.limit(), mode)?;
    let independence = independence.then(|| {
        let mut rng = StdRng::seed_from_u64(INDEPENDENCE_SEED);
        check_independence(&basis, INDEPENDENCE_ATTEMPTS, &mut rng)
    });

    let verdict = match analysis.unisolvence.as_ref().map(|u| u.verdict) {
        Some(Verdict::Unisolvent) => "unisolvent",
        Some(Verdict::NumericallyIndeterminate) => "indeterminate",
        _ => "not-unisolvent",
    };
    let reasons = analysis.reasons();
    let nec = &analysis.necessary;
    let order = TypeTable::new(nodes.n())?.types().to_vec();
    let mut notices = nec.notices.clone();
    if let Some(Independence::Inconclusive { best_rank }) = independence {
        notices.push(format!(
            "basis may be linearly dependent: best sampled rank {best_rank} of {}",
            basis.len()
        ));
    }

    let json = json!({
        "n": nodes.n(),
        "verdict": verdict,
        "reasons": reasons,
        "conditions": nec.checks,
        "order": order,
        "node_orbit_vector": nec.node_vector.counts,
        "basis_orbits": basis_orbits_json(&basis),
        "r": nec.r,
        "solution": nec.system.as_ref().map(|s| strings(&s.solution)),
        "admissibility": nec.system.as_ref().map(|s| admissibility_json(&s.admissibility, &order)),
        "determinant": analysis.unisolvence.as_ref().map(|u| u.to_json()),
        "independence": independence,
        "notices": notices,
        "snaps": snaps_json(&snaps),
    });

    let mut text = snap_lines(&snaps);
    text.push_str(&format!(
        "basis: {} functions in {} orbits; nodes: {} points in {} orbits\n",
        basis.len(),
        basis.orbits().len(),
        nodes.len(),
        nodes.orbits().len()
    ));
    for o in basis.orbits() {
        let members = join(o.members.iter().map(|&i| &basis.functions()[i]), ", ");
        text.push_str(&format!("  function orbit [{}]: {members}\n", class_label(&o.class)));
    }
    text.push_str(&format!("orbit types: {}\n", join(&order, " ")));
    text.push_str(&format!(
        "node orbit vector: ({})\n",
        join(&nec.node_vector.counts, ",")
    ));
    if let Some(r) = &nec.r {
        text.push_str(&format!("r: ({})\n", join(r, ",")));
    }
    if let Some(s) = &nec.system {
        text.push_str(&format!("required orbit vector X: ({})\n", join(&s.solution, ",")));
    }
    let rows: Vec<Vec<String>> = nec
        .checks
        .iter()
        .map(|c| {
            vec![
                c.condition.reason().trim_end_matches(" mismatch").to_string(),
                format!("{:?}", c.status).to_lowercase(),
                c.detail.clone(),
            ]
        })
        .collect();
    text.push_str(&table(&["check", "status", "detail"].map(String::from), &rows));
    if let Some(u) = &analysis.unisolvence {
        text.push_str(&format!("determinant: {}\n", u.to_json()["determinant"]).replace('"', ""));
    }
    if let Some(ind) = independence {
        text.push_str(&format!("independence: {ind:?}\n"));
    }
    for note in &notices {
        text.push_str(&format!("note: {note}\n"));
    }
    text.push_str(&format!("verdict: {verdict}"));
    if !reasons.is_empty() {
        text.push_str(&format!(" ({})", reasons.join("; ")));
    }
    text.push('\n');
    let code = if analysis.is_unisolvent() { 0 } else { 1 };
    Ok(Report::new("analyze", json, text, code))
}

pub fn solve(cfg: &Config, basis_path: &Path, n: Option<usize>) -> Result<Report> {
    let basis = load_basis(basis_path, n)?;
    let r = match r_vector(&basis, cfg.limit()) {
        Ok(r) => r,
        Err(Error::Capacity { n, limit }) => bail!(
            "computing r needs every element of S_{n}, beyond the enumeration limit {limit}; \
             raise --enum-limit (or SYMLAG_ENUM_LIMIT) to at least {n} if the run time is acceptable"
        ),
        Err(e) => return Err(e.into()),
    };
    let v = v_matrix(basis.n())?;
    let rhs: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
    let system = solve_constraints(&v, &rhs)?;
    let order = v.order.clone();

    let mut notices = Vec::new();
    for o in basis.orbits() {
        if let OrbitClass::NotRealizable { size } = o.class {
            notices.push(format!(
                "basis orbit of size {size} (containing {}) is not realizable by point orbits",
                basis.functions()[o.members[0]]
            ));
        }
    }

    let mut text = format!("orbit types: {}\n", join(&order, " "));
    text.push_str(&format!("r: ({})\n", join(&r, ",")));
    text.push_str(&format!("X: ({})\n", join(&system.solution, ",")));
    let mut template = Vec::new();
    let code = match &system.admissibility {
        Admissibility::Admissible { orbit_vector } => {
            text.push_str("admissible\ntemplate:\n");
            let mut names = fresh_names();
            for (t, count) in order.iter().zip(orbit_vector) {
                let count: usize = count.to_string().parse()?;
                if count == 0 {
                    continue;
                }
                let patterns: Vec<String> = (0..count).map(|_| t.pattern(&mut names)).collect();
                let summary = format!("{count} orbit(s) of pattern {}", t.pattern(&mut fresh_names()));
                text.push_str(&format!("  {summary}: {}\n", patterns.join(", ")));
                template.push(json!({
                    "type": t,
                    "count": count,
                    "orbit_size": int(&t.orbit_size()),
                    "patterns": patterns,
                    "summary": summary,
                }));
            }
            0
        }
        Admissibility::Infeasible { negative, fractional } => {
            text.push_str("infeasible: no symmetric unisolvent node set exists\n");
            for (what, idx) in [("negative", negative), ("fractional", fractional)] {
                if !idx.is_empty() {
                    text.push_str(&format!(
                        "  {what} entries at types {}\n",
                        join(idx.iter().map(|&i| &order[i]), " ")
                    ));
                }
            }
            1
        }
    };
    for note in &notices {
        text.push_str(&format!("note: {note}\n"));
    }
    Ok(Report::new(
        "solve",
        json!({
            "n": basis.n(),
            "order": order,
            "r": r,
            "solution": strings(&system.solution),
            "admissibility": admissibility_json(&system.admissibility, &v.order),
            "template": template,
            "basis_orbits": basis_orbits_json(&basis),
            "notices": notices,
        }),
        text,
        code,
    ))
}

pub fn equiv(cfg: &Config, paths: &[PathBuf]) -> Result<Report> {
    let [a, b] = paths else {
        bail!("equiv takes exactly two --nodes files, got {}", paths.len());
    };
    let (s1, snaps1) = load_nodes(cfg, a)?;
    let (s2, snaps2) = load_nodes(cfg, b)?;
    let eq = equivalent(&s1, &s2)?;
    let order = TypeTable::new(s1.n())?.types().to_vec();

    let mut text = snap_lines(&snaps1);
    text.push_str(&snap_lines(&snaps2));
    text.push_str(&format!("orbit types: {}\n", join(&order, " ")));
    text.push_str(&format!("left orbit vector:  ({})\n", join(&eq.left.counts, ",")));
    text.push_str(&format!("right orbit vector: ({})\n", join(&eq.right.counts, ",")));
    text.push_str(if eq.equivalent {
        "equivalent\n"
    } else {
        "not equivalent\n"
    });
    if let Some(w) = &eq.witness {
        text.push_str("equivariant bijection:\n");
        for (x, y) in &w.pairs {
            text.push_str(&format!("  {x} -> {y}\n"));
        }
    }
    let snaps: Vec<Snap> = snaps1.into_iter().chain(snaps2).collect();
    Ok(Report::new(
        "equiv",
        json!({
            "n": s1.n(),
            "order": order,
            "left": eq.left.counts,
            "right": eq.right.counts,
            "equivalent": eq.equivalent,
            "witness": eq.witness.map(|w| w.pairs),
            "snaps": snaps_json(&snaps),
        }),
        text,
        if eq.equivalent { 0 } else { 1 },
    ))
}

fn parse_point(cfg: &Config, text: &str) -> Result<(Point, Vec<Snap>)> {
    let tol = cfg.snap_tol.map(tolerance_from_f64).transpose()?;
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut snaps = Vec::new();
    let mut coords = Vec::new();
    for part in inner.split(',') {
        let (x, snap) = parse_snapped(part.trim(), tol.as_ref()).with_context(|| format!("in point {text}"))?;
        coords.push(x);
        snaps.extend(snap);
    }
    Ok((Point::new(coords), snaps))
}

pub fn classify(cfg: &Config, nodes: Option<&Path>, point: Option<&str>) -> Result<Report> {
    if let Some(text) = point {
        let (p, snaps) = parse_point(cfg, text)?;
        let ty = classify_point(&p)?;
        let rank = TypeTable::new(p.n())?.rank(&ty)?;
        let canonical = p.canonical_arrangement();
        let orbit_len = expand_orbit(&p).len();
        let mut text = snap_lines(&snaps);
        text.push_str(&format!(
            "point {p}: type {ty} (rank {rank}), orbit size {}, stabilizer order {}, canonical form {canonical}\n",
            ty.orbit_size(),
            ty.stabilizer_order()
        ));
        return Ok(Report::new(
            "classify",
            json!({
                "n": p.n(),
                "point": p,
                "type": ty,
                "rank": rank,
                "orbit_size": orbit_len,
                "stabilizer_order": int(&ty.stabilizer_order()),
                "canonical": canonical,
                "snaps": snaps_json(&snaps),
            }),
            text,
            0,
        ));
    }
    let path = nodes.context("classify needs --nodes or --point")?;
    let (set, snaps) = load_nodes(cfg, path)?;
    let table_ = TypeTable::new(set.n())?;
    let ov = orbit_vector(&set)?;
    let mut rows = Vec::new();
    let mut orbits = Vec::new();
    for o in set.orbits() {
        let rank = table_.rank(&o.ty)?;
        rows.push(vec![
            o.representative.to_string(),
            o.ty.to_string(),
            rank.to_string(),
            o.points.len().to_string(),
        ]);
        orbits.push(json!({
            "representative": o.representative,
            "type": o.ty,
            "rank": rank,
            "size": o.points.len(),
        }));
    }
    let mut text = snap_lines(&snaps);
    text.push_str(&table(
        &["representative", "type", "rank", "size"].map(String::from),
        &rows,
    ));
    text.push_str(&format!("orbit types: {}\n", join(table_.types(), " ")));
    text.push_str(&format!("orbit vector: ({})\n", join(&ov.counts, ",")));
    Ok(Report::new(
        "classify",
        json!({
            "n": set.n(),
            "points": set.len(),
            "orbits": orbits,
            "order": table_.types(),
            "orbit_vector": ov.counts,
            "snaps": snaps_json(&snaps),
        }),
        text,
        0,
    ))
}
