use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use knotsym::analysis::{
    batch_verify, certify_spa, check_amphicheiral_necessary, manifest_entries, BatchOptions, BatchReport,
    Catalog,
};
use knotsym::construct::{
    expand_almost, expand_template, parse_twist_list, rosette, BraidWord, QuarterTemplate, TwistSpec,
};
use knotsym::invariants::{alexander, goeritz, jones};
use knotsym::{parse_dt, parse_pd, Diagram, DiagramFile, Error, LaurentPoly, Result};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::input::{self, Loaded};
use crate::{BatchArgs, BuildArgs, CheckArgs, ExpandArgs, FuzzArgs, InputArg, OutputOpts, Report};

const MANIFEST_CHUNK: usize = 256;

/// 1 for a failed property of the input, 2 for anything malformed.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotAKnot { .. } | Error::MultiComponentRosette(_) => 1,
        _ => 2,
    }
}

fn json_body(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn ok(body: String) -> Result<Report> {
    Ok(Report {
        body: Some(body),
        code: 0,
    })
}

fn catalog(out: &OutputOpts) -> Result<Catalog> {
    match &out.catalog {
        Some(p) => Catalog::load(p),
        None => Ok(Catalog::builtin()),
    }
}

fn diagram_json(d: &Diagram) -> serde_json::Value {
    json!({
        "pd": d.to_string(),
        "crossings": d.crossing_count(),
        "components": d.component_count(),
        "free_loops": d.free_loops(),
        "writhe": d.writhe(),
    })
}

/// `(σ1 σ2^-1)^n` on three strands, returning `n`.
fn rosette_power(w: &BraidWord) -> Option<usize> {
    let l = w.letters();
    (w.strands() == 3 && !l.is_empty() && l.len().is_multiple_of(2) && l.chunks(2).all(|c| c == [1, -2]))
        .then_some(l.len() / 2)
}

pub fn build(a: &BuildArgs, out: &OutputOpts) -> Result<Report> {
    let s = &a.source;
    let d = if let Some(b) = &s.braid {
        let w: BraidWord = b.parse()?;
        let d = w.closure();
        if a.knot_only && !d.is_knot() {
            if let Some(n) = rosette_power(&w) {
                return Err(Error::MultiComponentRosette(n as i64));
            }
        }
        d
    } else if let Some(t) = &s.dt {
        parse_dt(t)?
    } else if let Some(t) = &s.pd {
        parse_pd(t)?
    } else if let Some(n) = s.rosette {
        rosette(n)?
    } else {
        unreachable!("clap requires one source")
    };
    if a.knot_only {
        d.ensure_knot()?;
    }
    if out.json() {
        ok(json_body(&diagram_json(&d)))
    } else {
        ok(DiagramFile::plain(d).to_string())
    }
}

pub fn expand(a: &ExpandArgs, out: &OutputOpts) -> Result<Report> {
    let t = QuarterTemplate::load(&a.template)?;
    let mut spec = TwistSpec::new(parse_twist_list(&a.x)?, parse_twist_list(&a.y)?);
    if spec.x_twists.len() != t.x_slots() {
        return Err(Error::TwistSpec(format!(
            "{}: {} x twists given for {} slots",
            t.name,
            spec.x_twists.len(),
            t.x_slots()
        )));
    }
    let e = match &a.switch {
        Some(sw) => {
            spec = spec.with_switch(sw.parse()?);
            expand_almost(&t, &spec)?
        }
        None => expand_template(&t, &spec)?,
    };
    let cert = certify_spa(&e.diagram, &e.rho);
    let failures: Vec<String> = cert
        .as_ref()
        .err()
        .map(|f| f.iter().map(ToString::to_string).collect())
        .unwrap_or_default();
    let code = if cert.is_ok() { 0 } else { 1 };
    let body = if out.json() {
        let mut v = diagram_json(&e.diagram);
        v["template"] = json!(t.name);
        v["spec"] = json!(spec.to_string());
        v["rho"] = json!(e.rho);
        v["partial"] = json!(e.partial.to_string());
        v["certificate"] = json!({ "valid": cert.is_ok(), "failures": failures });
        json_body(&v)
    } else {
        let file = DiagramFile {
            diagram: e.diagram,
            rho: Some(e.rho),
            partial: Some(e.partial),
        };
        let mut s = format!("# {}{}\n", t.name, spec);
        if !failures.is_empty() {
            s.push_str(&format!("# certificate failed: {}\n", failures.join("; ")));
        }
        s.push_str(&file.to_string());
        s
    };
    Ok(Report {
        body: Some(body),
        code,
    })
}

#[derive(Serialize)]
struct InvariantsOut {
    crossings: usize,
    writhe: i64,
    determinant: u64,
    goeritz_determinant: u64,
    alexander: String,
    jones: String,
    bracket: String,
}

fn sparse(p: &LaurentPoly) -> String {
    p.to_sparse_string()
}

pub fn invariants(a: &InputArg, out: &OutputOpts) -> Result<Report> {
    let Loaded { diagram: d, .. } = input::load(&a.input)?;
    let report = d.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(
            report.issues.iter().map(ToString::to_string).collect(),
        ));
    }
    d.ensure_knot()?;
    let alex = alexander(&d)?;
    let j = jones(&d)?;
    let o = InvariantsOut {
        crossings: d.crossing_count(),
        writhe: d.writhe(),
        determinant: alex.determinant(),
        goeritz_determinant: goeritz(&d)?.abs_determinant(),
        alexander: sparse(&alex.delta),
        jones: sparse(&j.jones_in_t()),
        bracket: sparse(&j.bracket),
    };
    if out.json() {
        return ok(json_body(&o));
    }
    ok(format!(
        "crossings:   {}\nwrithe:      {}\ndeterminant: {}\nalexander:   {}\njones:       {}\nbracket:     {}\n",
        o.crossings,
        o.writhe,
        o.determinant,
        alex.delta.display_in("t"),
        j.jones_in_t().display_in("t"),
        j.bracket.display_in("A"),
    ))
}

#[derive(Serialize)]
struct CheckLine {
    name: &'static str,
    pass: bool,
    detail: String,
}

pub fn check(a: &CheckArgs, out: &OutputOpts) -> Result<Report> {
    let Loaded {
        diagram: d,
        rho,
        partial,
    } = input::load(&a.input.input)?;
    let mut lines = Vec::new();
    let v = d.validate();
    lines.push(CheckLine {
        name: "valid diagram",
        pass: v.is_valid(),
        detail: v
            .issues
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    });
    if v.is_valid() {
        d.ensure_knot()?;
        if a.spa {
            let r = check_amphicheiral_necessary(&d)?;
            lines.push(CheckLine {
                name: "Jones palindromic",
                pass: r.jones_palindromic,
                detail: format!("V = {}", r.jones.compress_exponents(2).display_in("t")),
            });
            lines.push(CheckLine {
                name: "Alexander square",
                pass: r.alexander_square(),
                detail: match &r.alexander_root {
                    Some(f) => format!("Δ = ({})^2", f.display_in("t")),
                    None => format!("Δ = {}", r.alexander.display_in("t")),
                },
            });
        }
        if let Some(rho) = &rho {
            let c = certify_spa(&d, rho);
            lines.push(CheckLine {
                name: "SPA certificate",
                pass: c.is_ok(),
                detail: c
                    .err()
                    .map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
                    .unwrap_or_default(),
            });
        }
        if let Some(j) = &partial {
            let (dk, dj) = (alexander(&d)?.determinant(), alexander(j)?.determinant());
            lines.push(CheckLine {
                name: "det = det(J)^2",
                pass: dk == dj * dj,
                detail: format!("{dk} vs {dj}^2"),
            });
        }
    }
    let passed = lines.iter().all(|l| l.pass);
    let body = if out.json() {
        json_body(&json!({ "checks": lines, "passed": passed }))
    } else {
        let mut s = String::new();
        for l in &lines {
            s.push_str(&format!("{} {}", if l.pass { "✓" } else { "✗" }, l.name));
            if !l.detail.is_empty() {
                s.push_str(&format!("  ({})", l.detail));
            }
            s.push('\n');
        }
        s
    };
    Ok(Report {
        body: Some(body),
        code: if passed { 0 } else { 1 },
    })
}

pub fn identify(a: &InputArg, out: &OutputOpts) -> Result<Report> {
    let d = input::load(&a.input)?.diagram;
    let found = catalog(out)?.identify(&d)?;
    if out.json() {
        let c: Vec<_> = found
            .iter()
            .map(|c| json!({ "name": c.name, "mirror": c.mirror, "amphicheiral": c.amphicheiral, "display": c.to_string() }))
            .collect();
        return ok(json_body(&json!({ "candidates": c })));
    }
    if found.is_empty() {
        return ok("no catalog match\n".into());
    }
    ok(found.iter().map(|c| format!("{c}\n")).collect())
}

/// Reads the manifest in chunks so large sweeps never sit in memory as
/// specs; text rows are written as each chunk finishes.
pub fn batch(a: &BatchArgs, out: &OutputOpts) -> Result<Report> {
    let file = std::fs::File::open(&a.manifest)?;
    let base = a.manifest.parent().map(Path::to_path_buf).unwrap_or_default();
    let opts = BatchOptions {
        base_dir: base,
        catalog: Some(catalog(out)?),
        jobs: a.jobs,
    };
    let mut sink = out.sink()?;
    if !out.json() {
        writeln!(sink, "{}", BatchReport::text_header())?;
    }
    let mut rows = Vec::new();
    let mut lines = BufReader::new(file).lines();
    loop {
        let mut chunk = Vec::new();
        for line in lines.by_ref() {
            chunk.extend(manifest_entries(&line?));
            if chunk.len() == MANIFEST_CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        let part = batch_verify(&chunk, &opts)?;
        if !out.json() {
            for r in &part.rows {
                writeln!(sink, "{}", r.to_text_line())?;
            }
        }
        rows.extend(part.rows);
    }
    let report = BatchReport::from_rows(rows);
    if out.json() {
        sink.write_all(report.to_json().as_bytes())?;
        writeln!(sink)?;
    } else {
        writeln!(sink, "{}", report.summary.to_text_line())?;
    }
    sink.flush()?;
    Ok(Report {
        body: None,
        code: if report.all_passed() { 0 } else { 1 },
    })
}

type Fingerprint = (LaurentPoly, LaurentPoly, u64);

fn fingerprint(d: &Diagram) -> Result<Fingerprint> {
    Ok((
        alexander(d)?.delta,
        jones(d)?.jones,
        goeritz(d)?.abs_determinant(),
    ))
}

pub fn fuzz(a: &FuzzArgs, out: &OutputOpts) -> Result<Report> {
    let bases: Vec<(String, Diagram)> = if a.inputs.is_empty() {
        catalog(out)?
            .entries()
            .iter()
            .take(20)
            .map(|e| Ok((e.name.clone(), e.code.to_diagram()?)))
            .collect::<Result<_>>()?
    } else {
        a.inputs
            .iter()
            .map(|s| Ok((s.clone(), input::load(s)?.diagram)))
            .collect::<Result<_>>()?
    };
    let mut rng = StdRng::seed_from_u64(a.seed);
    let (mut moves, mut failures) = (0usize, Vec::new());
    for (name, base) in &bases {
        base.ensure_knot()?;
        let want = fingerprint(base)?;
        for w in 0..a.walks {
            let walk = base.random_walk(a.steps, base.crossing_count() + a.headroom, &mut rng);
            moves += walk.len();
            let end = walk.last().map_or(base, |(_, d)| d);
            if fingerprint(end)? != want {
                failures.push(json!({ "base": name, "walk": w, "pd": end.to_string() }));
            }
        }
    }
    let walks = bases.len() * a.walks;
    let body = if out.json() {
        json_body(&json!({ "seed": a.seed, "walks": walks, "moves": moves, "failures": failures }))
    } else {
        let mut s = format!(
            "seed {}: {walks} walks, {moves} moves, {} invariant changes\n",
            a.seed,
            failures.len()
        );
        for f in &failures {
            s.push_str(&format!("changed: {f}\n"));
        }
        s
    };
    Ok(Report {
        body: Some(body),
        code: if failures.is_empty() { 0 } else { 1 },
    })
}
