//! The five command pipelines.  Each returns the final stdout text;
//! errors carry their exit code (2 parse/validation, 3 resource bound,
//! 4 internal).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use wseq_core::abgroup;
use wseq_core::classify::{
    count_classes_with_cap, gamma_table_provider, CountMode, GammaProvider, Outcome,
};
use wseq_core::dga::FreeDGA;
use wseq_core::whitehead::{
    characteristic_pair, sequences_isomorphic, whitehead_sequence, SequenceComparison,
};

use crate::errors::CliError;
use crate::formats::{self, render_dga, render_group};
use crate::report::*;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {}", path.display(), e)))
}

fn word_cap_env() -> Result<Option<usize>, CliError> {
    match std::env::var("WSEQ_WORD_CAP") {
        Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|_| {
            CliError::Invalid(format!("WSEQ_WORD_CAP must be a nonnegative integer, got '{}'", v))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Invalid(e.to_string())),
    }
}

fn load_dga(path: &Path) -> Result<(FreeDGA, Vec<String>), CliError> {
    let text = read(path)?;
    let as_parse = |err| CliError::Parse { path: path.display().to_string(), err };
    let doc = formats::parse_dga(&text).map_err(as_parse)?;
    let mut d = formats::build_dga(&doc).map_err(as_parse)?;
    if let Some(cap) = word_cap_env()? {
        d.set_word_cap(cap);
    }
    Ok((d, doc.annotations))
}

fn fmt_matrix(m: &[Vec<i128>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn note_lines(out: &mut Vec<String>, notes: &[String]) {
    for n in notes {
        out.push(format!("note: {}", n));
    }
}

/* ## homology ## */

pub fn homology(path: &Path, max_degree: Option<usize>, json: bool) -> Result<String, CliError> {
    let (d, notes) = load_dga(path)?;
    let n_max = max_degree.unwrap_or_else(|| d.max_degree());
    let lp = d.linear_part();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let module = lp.homology(n).group().clone();
        let algebra = d.truncation_homology(n_max, n)?.group().clone();
        rows.push(HomologyRow {
            degree: n,
            module: render_group(&module),
            algebra: render_group(&algebra),
        });
    }
    let rep = HomologyReport {
        command: "homology".into(),
        file: path.display().to_string(),
        max_degree: n_max,
        rows,
        notes,
    };
    if json {
        return to_json(&rep);
    }
    let mut out = Vec::new();
    for r in &rep.rows {
        out.push(format!(
            "degree {}: H(V,d) = {}   H(T(V<={})) = {}",
            r.degree, r.module, rep.max_degree, r.algebra
        ));
    }
    note_lines(&mut out, &rep.notes);
    Ok(out.join("\n"))
}

/* ## whitehead ## */

pub fn whitehead(path: &Path, range: (usize, usize), json: bool) -> Result<String, CliError> {
    let (d, notes) = load_dga(path)?;
    let data = whitehead_sequence(&d, range)?;
    let mut degrees = Vec::new();
    for dd in data.degrees.values() {
        degrees.push(WhiteheadDegree {
            degree: dd.degree,
            h_module: render_group(&dd.hn_v),
            h_algebra: render_group(&dd.hn_t),
            gamma: render_group(&dd.gamma.group),
            b: HomJson::from_hom(&dd.b)?,
            coker_b: render_group(&dd.b.cokernel().0),
            phi: HomJson::from_hom(&dd.phi)?,
            ext_bracket: ExtJson::from_ext(&dd.ext_bracket)?,
            ext_brace: ExtJson::from_ext(&dd.ext_brace)?,
            perfect: dd.n_perfect,
            quasi_perfect: dd.quasi_n_perfect,
        });
    }
    let rep = WhiteheadReport {
        command: "whitehead".into(),
        file: path.display().to_string(),
        range: [range.0, range.1],
        perfect: degrees.iter().all(|x| x.perfect),
        quasi_perfect: degrees.iter().all(|x| x.quasi_perfect),
        degrees,
        exactness: "verified".into(),
        notes,
    };
    if json {
        return to_json(&rep);
    }
    let mut out = Vec::new();
    for x in &rep.degrees {
        out.push(format!("degree {}:", x.degree));
        out.push(format!("  H(V,d) = {}", x.h_module));
        out.push(format!("  H(T(V)) = {}", x.h_algebra));
        out.push(format!("  gamma = {}", x.gamma));
        out.push(format!(
            "  b_{} = {} : {} -> {}",
            x.degree + 1,
            fmt_matrix(&x.b.matrix),
            x.b.domain,
            x.b.codomain
        ));
        out.push(format!("  coker b_{} = {}", x.degree + 1, x.coker_b));
        out.push(format!(
            "  phi_{} = {} : {} -> {}",
            x.degree,
            fmt_matrix(&x.phi.matrix),
            x.phi.domain,
            x.phi.codomain
        ));
        out.push(format!(
            "  ext bracket: ambient = {}, trivial = {}",
            x.ext_bracket.ambient, x.ext_bracket.trivial
        ));
        out.push(format!(
            "  ext brace: ambient = {}, trivial = {}",
            x.ext_brace.ambient, x.ext_brace.trivial
        ));
    }
    for x in &rep.degrees {
        out.push(format!("degree {}: perfect = {}", x.degree, x.perfect));
        out.push(format!("degree {}: quasi-perfect = {}", x.degree, x.quasi_perfect));
    }
    out.push(format!("exactness: {}", rep.exactness));
    out.push(format!("perfect on {}..{}: {}", range.0, range.1, rep.perfect));
    out.push(format!("quasi-perfect on {}..{}: {}", range.0, range.1, rep.quasi_perfect));
    note_lines(&mut out, &rep.notes);
    Ok(out.join("\n"))
}

/* ## classify ## */

pub fn classify(
    path: &Path,
    provider_arg: &str,
    max_degree: usize,
    equivalence: &str,
    json: bool,
) -> Result<String, CliError> {
    let text = read(path)?;
    let (h, mut notes) = formats::parse_hgr(&text)
        .map_err(|err| CliError::Parse { path: path.display().to_string(), err })?;
    let mode = match equivalence {
        "naive" => CountMode::Naive,
        "orbit" => CountMode::Orbit,
        other => return Err(CliError::Invalid(format!("unknown equivalence '{}'", other))),
    };
    let provider = match provider_arg {
        "realized" => GammaProvider::Realized,
        "closed-form" => GammaProvider::ClosedForm,
        other => match other.strip_prefix("table:") {
            Some(p) => {
                let tpath = Path::new(p);
                let ttext = read(tpath)?;
                let (t, tnotes) = formats::parse_gamma_table(&ttext)
                    .map_err(|err| CliError::Parse { path: p.to_string(), err })?;
                notes.extend(tnotes);
                gamma_table_provider(t)?
            }
            None => {
                return Err(CliError::Invalid(format!(
                    "unknown provider '{}' (expected realized, closed-form or table:<file>)",
                    other
                )))
            }
        },
    };
    let cap = word_cap_env()?;
    let r = count_classes_with_cap(&h, &provider, max_degree, mode, cap);

    let mut gamma_map: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    if let Outcome::Finite { representatives, .. } = &r.outcome {
        for s in representatives {
            for (&n, g) in &s.gamma_log {
                gamma_map.entry(n).or_default().insert(render_group(g));
            }
        }
    }
    if matches!(provider, GammaProvider::ClosedForm) && max_degree >= 10 {
        let t44 = abgroup::tor(&h.get(4), &h.get(4));
        if !t44.is_trivial() {
            notes.push(format!(
                "gamma 9 includes the summand Tor(H4, H4) = {}; evaluations that drop it shrink the stage-10 choice set",
                render_group(&t44)
            ));
        }
    }
    if r.lower_bound {
        notes.push("count is a lower bound: some induced actions were undefined".into());
    }

    let (outcome, count, infinite_at, reason) = match &r.outcome {
        Outcome::Finite { count, .. } => ("finite", Some(*count), None, None),
        Outcome::Infinite { degree } => ("infinite", None, Some(*degree), None),
        Outcome::Unknown { reason } => ("unknown", None, None, Some(reason.clone())),
    };
    let rep = ClassifyReport {
        command: "classify".into(),
        file: path.display().to_string(),
        provider: provider_arg.to_string(),
        equivalence: equivalence.to_string(),
        max_degree,
        outcome: outcome.into(),
        stages: r.stage_counts.clone(),
        count,
        infinite_at,
        reason,
        lower_bound: r.lower_bound,
        gammas: gamma_map
            .into_iter()
            .map(|(degree, values)| GammaJson { degree, values: values.into_iter().collect() })
            .collect(),
        notes,
    };
    if json {
        return to_json(&rep);
    }
    let mut out = Vec::new();
    let stages: Vec<String> = rep.stages.iter().map(|c| c.to_string()).collect();
    out.push(format!("stages: {}", stages.join(" ")));
    match (&rep.count, &rep.infinite_at, &rep.reason) {
        (Some(c), _, _) => out.push(format!("count: {}", c)),
        (_, Some(n), _) => out.push(format!("INFINITE at degree {}", n)),
        (_, _, Some(reason)) => out.push(format!("UNKNOWN: {}", reason)),
        _ => return Err(CliError::Internal("empty outcome".into())),
    }
    for g in &rep.gammas {
        out.push(format!("gamma {} = {}", g.degree, g.values.join(" | ")));
    }
    note_lines(&mut out, &rep.notes);
    Ok(out.join("\n"))
}

/* ## compare ## */

pub fn compare(
    a_path: &Path,
    b_path: &Path,
    range: (usize, usize),
    json: bool,
) -> Result<String, CliError> {
    let (da, mut notes) = load_dga(a_path)?;
    let (db, notes_b) = load_dga(b_path)?;
    notes.extend(notes_b);
    let sa = whitehead_sequence(&da, range)?;
    let sb = whitehead_sequence(&db, range)?;
    let cmp = sequences_isomorphic(&sa, &sb)?;
    let (verdict, witness) = match cmp {
        SequenceComparison::Yes(w) => {
            let pack = |m: &BTreeMap<usize, abgroup::AbHom>| -> Result<Vec<DegreeHom>, CliError> {
                m.iter()
                    .map(|(&degree, hom)| Ok(DegreeHom { degree, map: HomJson::from_hom(hom)? }))
                    .collect()
            };
            (
                "yes",
                Some(WitnessJson { f: pack(&w.f)?, gamma: pack(&w.gamma)?, h: pack(&w.h)? }),
            )
        }
        SequenceComparison::No => ("no", None),
        SequenceComparison::Unknown => ("unknown", None),
    };
    let rep = CompareReport {
        command: "compare".into(),
        files: [a_path.display().to_string(), b_path.display().to_string()],
        range: [range.0, range.1],
        isomorphic: verdict.into(),
        witness,
        notes,
    };
    if json {
        return to_json(&rep);
    }
    let mut out = vec![format!("isomorphic: {}", rep.isomorphic)];
    if let Some(w) = &rep.witness {
        for dh in &w.f {
            out.push(format!(
                "f {} = {} : {} -> {}",
                dh.degree,
                fmt_matrix(&dh.map.matrix),
                dh.map.domain,
                dh.map.codomain
            ));
        }
        for dh in &w.gamma {
            out.push(format!(
                "gamma {} = {} : {} -> {}",
                dh.degree,
                fmt_matrix(&dh.map.matrix),
                dh.map.domain,
                dh.map.codomain
            ));
        }
        for dh in &w.h {
            out.push(format!(
                "h {} = {} : {} -> {}",
                dh.degree,
                fmt_matrix(&dh.map.matrix),
                dh.map.domain,
                dh.map.codomain
            ));
        }
    }
    note_lines(&mut out, &rep.notes);
    Ok(out.join("\n"))
}

/* ## split ## */

pub fn split(path: &Path, range: (usize, usize), json: bool) -> Result<String, CliError> {
    let (d, notes) = load_dga(path)?;
    let pair = characteristic_pair(&d)?;
    let mut pi = Vec::new();
    for (&n, cls) in &pair.pi {
        if n < range.0 || n > range.1 {
            continue;
        }
        pi.push(PiJson {
            degree: n,
            ambient: render_group(&cls.ambient),
            trivial: cls.trivial,
            representative: matrix_json(&cls.representative)?,
        });
    }
    let header = vec![format!("perfect differential of {}", path.display())];
    let rep = SplitReport {
        command: "split".into(),
        file: path.display().to_string(),
        range: [range.0, range.1],
        dga: render_dga(&pair.perfect_dga, &header),
        pi,
        notes,
    };
    if json {
        return to_json(&rep);
    }
    // π classes and notes ride along as comments so the whole output is
    // itself a valid document
    let mut out = rep.dga.trim_end().to_string();
    for p in &rep.pi {
        out.push_str(&format!(
            "\n# pi {}: ambient = {}, trivial = {}, representative = {}",
            p.degree,
            p.ambient,
            p.trivial,
            fmt_matrix(&p.representative)
        ));
    }
    for n in &rep.notes {
        out.push_str(&format!("\n# note: {}", n));
    }
    Ok(out)
}
