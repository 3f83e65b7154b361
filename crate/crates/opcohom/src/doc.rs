//! JSON documents and their conversion to and from the core types.
//!
//! Group and A elements are indices; A is indexed in mixed radix over its
//! invariant factors, first coordinate most significant. Tables keyed by a
//! Γ element use the decimal index as the key.

use std::collections::BTreeMap;

use opcohom_core::algebra::{
    validate_action, validate_group_with_relabeling, EquivariantModule, FiniteAbelianGroup, FiniteGroup, PiModule,
};
use opcohom_core::classify::ClassificationReport;
use opcohom_core::cochain::{Cochain1, Cochain2, Cochain3};
use opcohom_core::factorset::{CohomologyWitness, FactorSet};
use opcohom_core::grcat::{build_gr_category, GrCategory};
use opcohom_core::homology::H3Result;
use opcohom_core::{Check, Report};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Core(#[from] opcohom_core::Error),
}

pub type DocResult<T> = Result<T, DocError>;

fn shape<T>(msg: impl Into<String>) -> DocResult<T> {
    Err(DocError::Shape(msg.into()))
}

pub type Table = BTreeMap<String, Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianDoc {
    pub invariant_factors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub maps: Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub pi: GroupDoc,
    pub gamma: GroupDoc,
    pub a: AbelianDoc,
    pub pi_on_a: ActionDoc,
    pub gamma_on_pi: ActionDoc,
    pub gamma_on_a: ActionDoc,
}

/// 𝒮(Π, A, ξ)
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub pi: GroupDoc,
    pub a: AbelianDoc,
    pub pi_on_a: ActionDoc,
    pub xi: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cochain1Doc {
    pub f: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cochain2Doc {
    pub g_pp: Vec<Vec<usize>>,
    pub g_pg: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cochain3Doc {
    pub h_ppp: Vec<Vec<Vec<usize>>>,
    pub h_ppg: Vec<Vec<Vec<usize>>>,
    pub h_pgg: Vec<Vec<Vec<usize>>>,
}

/// A factor set together with the category it lives over and Γ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSetDoc {
    pub pi: GroupDoc,
    pub gamma: GroupDoc,
    pub a: AbelianDoc,
    pub pi_on_a: ActionDoc,
    pub xi: Vec<Vec<Vec<usize>>>,
    pub phi: Table,
    pub f: Table,
    pub ftilde: BTreeMap<String, Vec<Vec<usize>>>,
    pub c: BTreeMap<String, usize>,
    pub t: BTreeMap<String, Table>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H3Doc {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub representatives: Option<Vec<Cochain3Doc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub checks: Vec<CheckDoc>,
}

/// `u[x][σ]`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub u: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrictifyDoc {
    pub factor_set: FactorSetDoc,
    pub witness: WitnessDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologousDoc {
    pub cohomologous: bool,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingDoc {
    pub cocycle: Cochain3Doc,
    pub factor_set: FactorSetDoc,
    pub fingerprint: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationDoc {
    pub module: ModuleDoc,
    pub xi: Vec<Vec<Vec<usize>>>,
    pub cocycle_count: usize,
    pub cohomology_classes: usize,
    pub factor_set_classes: usize,
    pub congruence_classes: usize,
    pub pairing: Vec<PairingDoc>,
    pub checks: Vec<CheckDoc>,
    pub bijection_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub error: String,
    pub message: String,
}

pub fn parse<T: DeserializeOwned>(text: &str) -> DocResult<T> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with object keys sorted.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

// ---- dense tables ----

fn flat2(t: &[Vec<usize>], rows: usize, cols: usize, bound: usize, what: &str) -> DocResult<Vec<usize>> {
    if t.len() != rows || t.iter().any(|r| r.len() != cols) {
        return shape(format!("{what} must be a {rows}x{cols} table"));
    }
    let out: Vec<usize> = t.concat();
    if let Some(v) = out.iter().find(|&&v| v >= bound) {
        return shape(format!("{what} has entry {v} outside 0..{bound}"));
    }
    Ok(out)
}

fn flat3(t: &[Vec<Vec<usize>>], dims: [usize; 3], bound: usize, what: &str) -> DocResult<Vec<usize>> {
    let [a, b, c] = dims;
    if t.len() != a {
        return shape(format!("{what} must be a {a}x{b}x{c} table"));
    }
    let mut out = Vec::with_capacity(a * b * c);
    for plane in t {
        out.extend(flat2(plane, b, c, bound, what).map_err(|_| DocError::Shape(format!("{what} must be a {a}x{b}x{c} table with entries in 0..{bound}")))?);
    }
    Ok(out)
}

fn nest2(v: &[usize], cols: usize) -> Vec<Vec<usize>> {
    if cols == 0 {
        return Vec::new();
    }
    v.chunks(cols).map(<[usize]>::to_vec).collect()
}

fn nest3(v: &[usize], b: usize, c: usize) -> Vec<Vec<Vec<usize>>> {
    v.chunks(b * c).map(|p| nest2(p, c)).collect()
}

/// Entries keyed "0" … "k-1", exactly.
fn indexed<'a, T>(map: &'a BTreeMap<String, T>, k: usize, what: &str) -> DocResult<Vec<&'a T>> {
    if map.len() != k {
        return shape(format!("{what} needs exactly the keys 0..{k}"));
    }
    (0..k)
        .map(|i| map.get(&i.to_string()).ok_or_else(|| DocError::Shape(format!("{what} is missing key \"{i}\""))))
        .collect()
}

fn keyed<T: Clone>(items: &[T]) -> BTreeMap<String, T> {
    items.iter().enumerate().map(|(i, v)| (i.to_string(), v.clone())).collect()
}

// ---- groups, modules, categories ----

pub fn group_from_doc(doc: &GroupDoc) -> DocResult<FiniteGroup> {
    if doc.order != doc.table.len() {
        return shape(format!("order {} does not match a table of {} rows", doc.order, doc.table.len()));
    }
    let (g, relabel) = validate_group_with_relabeling(&doc.table)?;
    if relabel.iter().enumerate().any(|(i, &j)| i != j) {
        return shape("the identity must be element 0");
    }
    Ok(g)
}

pub fn group_to_doc(g: &FiniteGroup) -> GroupDoc {
    GroupDoc { order: g.order(), table: g.rows() }
}

pub fn abelian_from_doc(doc: &AbelianDoc) -> DocResult<FiniteAbelianGroup> {
    Ok(FiniteAbelianGroup::new(&doc.invariant_factors)?)
}

pub fn abelian_to_doc(a: &FiniteAbelianGroup) -> AbelianDoc {
    AbelianDoc { invariant_factors: a.factors().to_vec() }
}

pub fn action_maps(doc: &ActionDoc, actor: &FiniteGroup, what: &str) -> DocResult<Vec<Vec<usize>>> {
    Ok(indexed(&doc.maps, actor.order(), what)?.into_iter().cloned().collect())
}

pub fn action_to_doc(maps: &[Vec<usize>]) -> ActionDoc {
    ActionDoc { maps: keyed(maps) }
}

fn pi_module(pi: &GroupDoc, a: &AbelianDoc, pi_on_a: &ActionDoc) -> DocResult<PiModule> {
    let pi = group_from_doc(pi)?;
    let a = abelian_from_doc(a)?;
    let maps = action_maps(pi_on_a, &pi, "pi_on_a")?;
    Ok(PiModule::new(pi, a, maps)?)
}

pub fn module_from_doc(doc: &ModuleDoc) -> DocResult<EquivariantModule> {
    let base = pi_module(&doc.pi, &doc.a, &doc.pi_on_a)?;
    let gamma = group_from_doc(&doc.gamma)?;
    let gp = validate_action(&gamma, &base.pi, action_maps(&doc.gamma_on_pi, &gamma, "gamma_on_pi")?)?;
    let ga = validate_action(&gamma, &base.a, action_maps(&doc.gamma_on_a, &gamma, "gamma_on_a")?)?;
    Ok(EquivariantModule::new(base, gamma, gp, ga)?)
}

pub fn module_to_doc(em: &EquivariantModule) -> ModuleDoc {
    ModuleDoc {
        pi: group_to_doc(em.pi()),
        gamma: group_to_doc(&em.gamma),
        a: abelian_to_doc(em.a()),
        pi_on_a: action_to_doc(em.base.pi_on_a.maps()),
        gamma_on_pi: action_to_doc(em.gamma_on_pi.maps()),
        gamma_on_a: action_to_doc(em.gamma_on_a.maps()),
    }
}

fn xi_table(module: &PiModule, xi: &[Vec<Vec<usize>>]) -> DocResult<Vec<usize>> {
    let n = module.pi.order();
    flat3(xi, [n, n, n], module.a.order(), "xi")
}

pub fn category_from_doc(doc: &CategoryDoc) -> DocResult<GrCategory> {
    let module = pi_module(&doc.pi, &doc.a, &doc.pi_on_a)?;
    let xi = xi_table(&module, &doc.xi)?;
    Ok(build_gr_category(module, xi)?)
}

pub fn category_to_doc(c: &GrCategory) -> CategoryDoc {
    let m = c.module();
    let n = m.pi.order();
    CategoryDoc {
        pi: group_to_doc(&m.pi),
        a: abelian_to_doc(&m.a),
        pi_on_a: action_to_doc(m.pi_on_a.maps()),
        xi: nest3(c.xi(), n, n),
    }
}

// ---- cochains ----

fn dims(em: &EquivariantModule) -> (usize, usize, usize) {
    (em.pi().order(), em.gamma.order(), em.a().order())
}

pub fn cochain1_from_doc(em: &EquivariantModule, doc: &Cochain1Doc) -> DocResult<Cochain1> {
    let (n, _, q) = dims(em);
    if doc.f.len() != n {
        return shape(format!("f must have {n} entries"));
    }
    if let Some(v) = doc.f.iter().find(|&&v| v >= q) {
        return shape(format!("f has entry {v} outside 0..{q}"));
    }
    Ok(Cochain1 { n, f: doc.f.clone() })
}

pub fn cochain1_to_doc(c: &Cochain1) -> Cochain1Doc {
    Cochain1Doc { f: c.f.clone() }
}

pub fn cochain2_from_doc(em: &EquivariantModule, doc: &Cochain2Doc) -> DocResult<Cochain2> {
    let (n, m, q) = dims(em);
    Ok(Cochain2 { n, m, pp: flat2(&doc.g_pp, n, n, q, "g_pp")?, pg: flat2(&doc.g_pg, n, m, q, "g_pg")? })
}

pub fn cochain2_to_doc(c: &Cochain2) -> Cochain2Doc {
    Cochain2Doc { g_pp: nest2(&c.pp, c.n), g_pg: nest2(&c.pg, c.m) }
}

pub fn cochain3_from_doc(em: &EquivariantModule, doc: &Cochain3Doc) -> DocResult<Cochain3> {
    let (n, m, q) = dims(em);
    Ok(Cochain3 {
        n,
        m,
        ppp: flat3(&doc.h_ppp, [n, n, n], q, "h_ppp")?,
        ppg: flat3(&doc.h_ppg, [n, n, m], q, "h_ppg")?,
        pgg: flat3(&doc.h_pgg, [n, m, m], q, "h_pgg")?,
    })
}

pub fn cochain3_to_doc(c: &Cochain3) -> Cochain3Doc {
    Cochain3Doc { h_ppp: nest3(&c.ppp, c.n, c.n), h_ppg: nest3(&c.ppg, c.n, c.m), h_pgg: nest3(&c.pgg, c.m, c.m) }
}

// ---- factor sets ----

/// Shapes and ranges only; the laws are `validate_factor_set`'s business.
pub fn factor_set_from_doc(doc: &FactorSetDoc) -> DocResult<FactorSet> {
    let module = pi_module(&doc.pi, &doc.a, &doc.pi_on_a)?;
    let xi = xi_table(&module, &doc.xi)?;
    let base = build_gr_category(module, xi)?;
    let gamma = group_from_doc(&doc.gamma)?;
    let (n, m, q) = (base.module().pi.order(), gamma.order(), base.module().a.order());

    let perms = |t: &Table, len: usize, what: &str| -> DocResult<Vec<Vec<usize>>> {
        indexed(t, m, what)?
            .into_iter()
            .map(|p| flat2(std::slice::from_ref(p), 1, len, len, what))
            .collect()
    };
    let phi = perms(&doc.phi, n, "phi")?;
    let f = perms(&doc.f, q, "f")?;
    let ftilde = indexed(&doc.ftilde, m, "ftilde")?
        .into_iter()
        .map(|t| flat2(t, n, n, q, "ftilde"))
        .collect::<DocResult<Vec<_>>>()?;
    let c: Vec<usize> = indexed(&doc.c, m, "c")?.into_iter().copied().collect();
    if let Some(v) = c.iter().find(|&&v| v >= q) {
        return shape(format!("c has entry {v} outside 0..{q}"));
    }
    let t = indexed(&doc.t, m, "t")?
        .into_iter()
        .map(|row| {
            indexed(row, m, "t")?
                .into_iter()
                .map(|col| flat2(std::slice::from_ref(col), 1, n, q, "t"))
                .collect::<DocResult<Vec<_>>>()
        })
        .collect::<DocResult<Vec<_>>>()?;
    Ok(FactorSet { base, gamma, phi, f, ftilde, c, t })
}

pub fn factor_set_to_doc(fs: &FactorSet) -> FactorSetDoc {
    let cat = category_to_doc(&fs.base);
    let n = fs.n();
    FactorSetDoc {
        pi: cat.pi,
        gamma: group_to_doc(&fs.gamma),
        a: cat.a,
        pi_on_a: cat.pi_on_a,
        xi: cat.xi,
        phi: keyed(&fs.phi),
        f: keyed(&fs.f),
        ftilde: keyed(&fs.ftilde.iter().map(|t| nest2(t, n)).collect::<Vec<_>>()),
        c: keyed(&fs.c),
        t: keyed(&fs.t.iter().map(|row| keyed(row)).collect::<Vec<_>>()),
    }
}

pub fn witness_from_doc(fs: &FactorSet, doc: &WitnessDoc) -> DocResult<CohomologyWitness> {
    let (n, m) = (fs.n(), fs.m());
    Ok(CohomologyWitness { u: flat2(&doc.u, n, m, fs.base.module().a.order(), "u")? })
}

pub fn witness_to_doc(w: &CohomologyWitness, m: usize) -> WitnessDoc {
    WitnessDoc { u: nest2(&w.u, m) }
}

// ---- reports ----

pub fn check_to_doc(c: &Check) -> CheckDoc {
    CheckDoc { name: c.name.clone(), pass: c.pass, witness: c.witness.clone() }
}

pub fn report_to_doc(r: &Report) -> ReportDoc {
    ReportDoc { checks: r.checks.iter().map(check_to_doc).collect() }
}

pub fn report_from_doc(doc: &ReportDoc) -> Report {
    Report {
        checks: doc
            .checks
            .iter()
            .map(|c| Check { name: c.name.clone(), pass: c.pass, witness: c.witness.clone() })
            .collect(),
    }
}

pub fn h3_to_doc(r: &H3Result) -> H3Doc {
    H3Doc {
        order: r.order,
        invariant_factors: r.invariant_factors.clone(),
        representatives: r.representatives.as_ref().map(|v| v.iter().map(cochain3_to_doc).collect()),
    }
}

pub fn classification_to_doc(r: &ClassificationReport) -> ClassificationDoc {
    let n = r.module.pi().order();
    ClassificationDoc {
        module: module_to_doc(&r.module),
        xi: nest3(&r.xi, n, n),
        cocycle_count: r.cocycle_count,
        cohomology_classes: r.cohomology_classes,
        factor_set_classes: r.factor_set_classes,
        congruence_classes: r.congruence_classes,
        pairing: r
            .pairing
            .iter()
            .map(|p| PairingDoc {
                cocycle: cochain3_to_doc(&p.cocycle),
                factor_set: factor_set_to_doc(&p.factor_set),
                fingerprint: p.fingerprint.clone(),
            })
            .collect(),
        checks: r.checks.checks.iter().map(check_to_doc).collect(),
        bijection_verified: r.bijection_verified,
    }
}
