//! Plain-text rendering of the documents the CLI emits.

use std::fmt::Write;

use crate::doc::{
    CheckDoc, ClassificationDoc, Cochain3Doc, CohomologousDoc, ErrorDoc, FactorSetDoc, H3Doc, ReportDoc, StrictifyDoc,
    WitnessDoc,
};

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn checks(out: &mut String, checks: &[CheckDoc]) {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        let witness = c.witness.as_deref().map_or_else(|| "none".to_string(), list);
        let verdict = if c.pass { "pass" } else { "FAIL" };
        writeln!(out, "  {:<width$}  {verdict}  witness: {witness}", c.name).unwrap();
    }
}

pub fn report(r: &ReportDoc) -> String {
    let mut out = String::new();
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    writeln!(out, "checks: {} ({} failed)", r.checks.len(), failed).unwrap();
    checks(&mut out, &r.checks);
    out
}

fn table(out: &mut String, indent: usize, label: &str, rows: &[Vec<usize>]) {
    writeln!(out, "{:indent$}{label}:", "").unwrap();
    for r in rows {
        writeln!(out, "{:indent$}  {}", "", list(r)).unwrap();
    }
}

fn cube(out: &mut String, label: &str, t: &[Vec<Vec<usize>>]) {
    for (i, plane) in t.iter().enumerate() {
        table(out, 2, &format!("{label}[{i}]"), plane);
    }
}

pub fn cochain3(c: &Cochain3Doc) -> String {
    let mut out = String::from("cochain:\n");
    cube(&mut out, "h_ppp", &c.h_ppp);
    cube(&mut out, "h_ppg", &c.h_ppg);
    cube(&mut out, "h_pgg", &c.h_pgg);
    out
}

pub fn h3(r: &H3Doc) -> String {
    let mut out = String::new();
    writeln!(out, "H3 order: {}", r.order).unwrap();
    writeln!(out, "invariant factors: {}", list(&r.invariant_factors)).unwrap();
    match &r.representatives {
        Some(reps) => {
            writeln!(out, "representatives: {}", reps.len()).unwrap();
            for (i, h) in reps.iter().enumerate() {
                write!(out, "#{i} {}", cochain3(h)).unwrap();
            }
        }
        None => writeln!(out, "representatives: omitted").unwrap(),
    }
    out
}

pub fn factor_set(fs: &FactorSetDoc) -> String {
    let mut out = String::from("factor set:\n");
    cube(&mut out, "xi", &fs.xi);
    let mut keys: Vec<&String> = fs.phi.keys().collect();
    keys.sort_by_key(|k| k.parse::<usize>().unwrap_or(usize::MAX));
    for s in keys {
        writeln!(out, "  sigma {s}:").unwrap();
        writeln!(out, "    phi: {}", list(&fs.phi[s])).unwrap();
        if let Some(f) = fs.f.get(s) {
            writeln!(out, "    f: {}", list(f)).unwrap();
        }
        if let Some(c) = fs.c.get(s) {
            writeln!(out, "    c: {c}").unwrap();
        }
        if let Some(ft) = fs.ftilde.get(s) {
            table(&mut out, 4, "ftilde", ft);
        }
        if let Some(row) = fs.t.get(s) {
            let mut taus: Vec<&String> = row.keys().collect();
            taus.sort_by_key(|k| k.parse::<usize>().unwrap_or(usize::MAX));
            for tau in taus {
                writeln!(out, "    t[{tau}]: {}", list(&row[tau])).unwrap();
            }
        }
    }
    out
}

fn witness(out: &mut String, w: &WitnessDoc) {
    table(out, 2, "u", &w.u);
}

pub fn strictify(d: &StrictifyDoc) -> String {
    let mut out = factor_set(&d.factor_set);
    out.push_str("witness:\n");
    witness(&mut out, &d.witness);
    out
}

pub fn cohomologous(d: &CohomologousDoc) -> String {
    let mut out = format!("cohomologous: {}\n", d.cohomologous);
    match &d.witness {
        Some(w) => {
            out.push_str("witness:\n");
            witness(&mut out, w);
        }
        None => out.push_str("witness: none\n"),
    }
    out
}

pub fn classification(d: &ClassificationDoc) -> String {
    let mut out = String::new();
    writeln!(out, "cocycles with the base constraint: {}", d.cocycle_count).unwrap();
    writeln!(out, "cohomology classes: {}", d.cohomology_classes).unwrap();
    writeln!(out, "factor set classes: {}", d.factor_set_classes).unwrap();
    writeln!(out, "congruence classes: {}", d.congruence_classes).unwrap();
    writeln!(out, "bijection verified: {}", d.bijection_verified).unwrap();
    writeln!(out, "{:>5}  {:<16}  {}", "class", "fingerprint", "cocycle (ppg | pgg)").unwrap();
    for (i, p) in d.pairing.iter().enumerate() {
        let flat = |t: &[Vec<Vec<usize>>]| list(&t.concat().concat());
        writeln!(out, "{i:>5}  {:<16}  {} | {}", p.fingerprint, flat(&p.cocycle.h_ppg), flat(&p.cocycle.h_pgg)).unwrap();
    }
    checks(&mut out, &d.checks);
    out
}

pub fn error(e: &ErrorDoc) -> String {
    format!("error ({}): {}\n", e.error, e.message)
}
