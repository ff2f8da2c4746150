//! End-to-end jobs: load an algebra, realize an element, decompose, semisimplify, certify.
//! Also the golden table and swap-orbit sweeps.

use crate::algebra::{ModularSuperAlgebra, SuperDim};
use crate::chevalley::{chevalley_basis, generated_form, gl, reduce_mod_p};
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::field::{self, FpVector};
use crate::repalpha::{jordan_decompose, realize, structured_decompose, ChainDecomposition, Realization};
use crate::roots::{cartan_matrix, derive_tilde, is_admissible, swap_orbit, Coloring, Gcm, Parity};
use crate::semisimplify::{semisimplify, SemisimplifiedAlgebra};
use crate::superalgebra::gen_subquotient;
use crate::verify::{
    auxiliary_targets, certify, certify_even_type, certify_subquotient, custom_plan_g36, find_generators,
    generator_images, inherited_grading, lex_simple_grades, lookup_target, match_matrix, match_target, plan_images,
    recognize_even_type, target_catalog, Certificate, Conclusion, GeneratorImages, TargetInfo,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

/// Upper bound on simple systems visited by the odd-reflection search.
const SEARCH_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Plan {
    G36,
}

impl std::str::FromStr for Plan {
    type Err = Error;
    fn from_str(s: &str) -> Result<Plan> {
        match s.to_lowercase().as_str() {
            "g36" | "g(3,6)" => Ok(Plan::G36),
            _ => Err(Error::UnknownName(s.into())),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Job {
    /// Catalog name (`e8`, `b3`, `gl3`) or path to a JSON file `{name?, cartan, parity, p}`.
    pub algebra: String,
    pub p: Option<u32>,
    pub element: Option<String>,
    pub subset: Option<Vec<usize>>,
    pub target: Option<String>,
    pub plan: Option<Plan>,
}

impl Job {
    pub fn new(algebra: &str, p: u32, element: &str) -> Job {
        Job { algebra: algebra.into(), p: Some(p), element: Some(element.into()), ..Job::default() }
    }
}

#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub name: String,
    pub gcm: Option<Gcm>,
    pub algebra: Arc<ModularSuperAlgebra>,
}

#[derive(Deserialize)]
struct AlgebraFile {
    name: Option<String>,
    cartan: Vec<Vec<i64>>,
    #[serde(default)]
    parity: Vec<u8>,
    p: Option<u32>,
}

fn gl_rank(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("gl")?;
    rest.trim_matches(|c| c == '(' || c == ')').parse().ok()
}

pub fn load_algebra(source: &str, p: Option<u32>) -> Result<LoadedAlgebra> {
    let path = Path::new(source);
    if source.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{source}: {e}")))?;
        let file: AlgebraFile = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{source}: {e}")))?;
        if file.parity.iter().any(|&b| b != 0) {
            return Err(Error::InvalidInput("input algebras must be purely even".into()));
        }
        let p = p.or(file.p).unwrap_or(3);
        let gcm = Gcm::even(file.cartan)?;
        let algebra = Arc::new(reduce_mod_p(&chevalley_basis(&gcm)?, p)?);
        return Ok(LoadedAlgebra { name: file.name.unwrap_or_else(|| "custom".into()), gcm: Some(gcm), algebra });
    }
    let name = source.to_lowercase();
    let p = p.unwrap_or(3);
    if let Some(n) = gl_rank(&name) {
        return Ok(LoadedAlgebra { name, gcm: None, algebra: Arc::new(gl(n, p)?) });
    }
    // `g2:gen` is the Z-form spanned by brackets of the generators
    let (base, generated) = match name.strip_suffix(":gen") {
        Some(b) => (b, true),
        None => (name.as_str(), false),
    };
    let gcm = cartan_matrix(base)?;
    let mut z = chevalley_basis(&gcm)?;
    if generated {
        z = generated_form(&z)?;
    }
    let algebra = Arc::new(reduce_mod_p(&z, p)?);
    Ok(LoadedAlgebra { name, gcm: Some(gcm), algebra })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    Structured,
    Generic,
    PlanG36,
}

/// A realized element with its chain decomposition.
pub struct Prepared {
    pub source: LoadedAlgebra,
    pub element: String,
    /// `S` when the element is `Σ_{i∈S} e_i`.
    pub simple_support: Option<Vec<usize>>,
    /// Diagram nodes on which the element has nonzero weight.
    pub weight_support: Vec<usize>,
    pub realization: Realization,
    pub decomposition: ChainDecomposition,
    pub route: Route,
}

impl Prepared {
    pub fn p(&self) -> u32 {
        self.realization.modulus()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.decomposition.counts()
    }

    pub fn semisimplify(&self) -> Result<SemisimplifiedAlgebra> {
        semisimplify(&self.realization, &self.decomposition)
    }
}

fn subset_expr(s: &[usize]) -> String {
    s.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("+")
}

fn simple_sum(g: &ModularSuperAlgebra, rank: usize, v: &FpVector) -> Option<Vec<usize>> {
    let mut s = Vec::new();
    let mut rest = v.clone();
    for i in 1..=rank {
        let x = g.named(&format!("e{i}"))?;
        if rest.get(x) == 1 {
            s.push(i);
            rest.set(x, 0);
        }
    }
    (rest.is_zero() && !s.is_empty()).then_some(s)
}

pub fn prepare(job: &Job) -> Result<Prepared> {
    let source = load_algebra(&job.algebra, job.p)?;
    let g = source.algebra.clone();
    let element = match (&job.element, &job.subset, job.plan) {
        (Some(e), _, _) => e.clone(),
        (None, Some(s), _) => subset_expr(s),
        (None, None, Some(Plan::G36)) => "e1+e2+e6+e8".into(),
        (None, None, None) => return Err(Error::InvalidInput("give --element or --subset".into())),
    };
    let (_, v) = parse_element(&element, &g)?;
    let rank = source.gcm.as_ref().map_or(0, |a| a.n());
    let simple_support = simple_sum(&g, rank, &v);
    if let Some(s) = &job.subset {
        let mut s = s.clone();
        s.sort_unstable();
        if simple_support.as_ref() != Some(&s) {
            return Err(Error::InvalidInput(format!("element {element} is not the sum over {s:?}")));
        }
    }
    let weight_support = match g.grading() {
        Some(w) => {
            let mut nodes: Vec<usize> = v
                .support()
                .flat_map(|(x, _)| w[x].iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, _)| k + 1))
                .collect();
            nodes.sort_unstable();
            nodes.dedup();
            nodes
        }
        None => Vec::new(),
    };
    let r = realize(g, v)?;
    let structured = match (&source.gcm, &simple_support) {
        (Some(a), Some(s)) if r.modulus() == 3 && is_admissible(a, s) => Some((a.clone(), s.clone())),
        _ => None,
    };
    let (route, decomposition) = match (job.plan, structured) {
        (Some(Plan::G36), _) => (Route::PlanG36, custom_plan_g36(&r)?),
        (None, Some((a, s))) => (Route::Structured, structured_decompose(&r, &a, &s)?),
        (None, None) => (Route::Generic, jordan_decompose(&r)?),
    };
    Ok(Prepared { source, element, simple_support, weight_support, realization: r, decomposition, route })
}

/// Grading of the semisimplification inherited from the root grading, when there is one.
pub fn grades_of(prep: &Prepared, ss: &SemisimplifiedAlgebra) -> Option<Vec<Vec<i32>>> {
    inherited_grading(ss, prep.realization.algebra(), &prep.weight_support).ok()
}

fn tilde_target(prep: &Prepared) -> Option<Gcm> {
    derive_tilde(prep.source.gcm.as_ref()?, prep.simple_support.as_ref()?).ok().map(|t| t.0)
}

fn gcm_matches(candidate: &Gcm, target: &TargetInfo) -> bool {
    let Some(t) = &target.gcm else { return false };
    let b: Vec<Vec<u32>> = candidate.entries().iter().map(|r| r.iter().map(|&x| field::reduce(x, target.p)).collect()).collect();
    match_matrix(&b, candidate.parity(), t, target.p).is_some()
}

/// Target read off the diagram: the first admissible member of the swap orbit of `S`
/// whose derived matrix is a catalog matrix; otherwise a target identified by its even part.
pub fn infer_target(prep: &Prepared, superdim: SuperDim) -> Option<TargetInfo> {
    if prep.route == Route::PlanG36 {
        return lookup_target("g(3,6)").ok();
    }
    let targets: Vec<TargetInfo> = target_catalog().into_iter().chain(auxiliary_targets()).collect();
    if let (Some(a), Some(s), 3) = (&prep.source.gcm, &prep.simple_support, prep.p()) {
        let orbit = Coloring::new(a.clone(), s.iter().copied()).map(|c| swap_orbit(&c)).unwrap_or_default();
        for m in orbit {
            let Ok((t, _)) = derive_tilde(a, &m.coloring.black_vec()) else { continue };
            if let Some(found) = targets.iter().find(|x| gcm_matches(&t, x)) {
                return Some(found.clone());
            }
        }
    }
    targets.into_iter().find(|t| t.gcm.is_none() && t.p == prep.p() && t.superdim == superdim)
}

/// Generator images for a target: the plan or chain tags when available, else a search
/// over simple systems of the inherited grading.
pub fn find_images(prep: &Prepared, ss: &SemisimplifiedAlgebra, target: &Gcm) -> Option<(GeneratorImages, usize)> {
    let g = &ss.algebra;
    let tagged = match prep.route {
        Route::PlanG36 => plan_images(ss).ok(),
        Route::Structured => generator_images(ss, prep.source.gcm.as_ref()?, prep.simple_support.as_ref()?).ok(),
        Route::Generic => None,
    };
    if let Some(t) = &tagged {
        if let Some((m, _)) = match_target(g, t, target) {
            return Some((m, 0));
        }
    }
    let grades = grades_of(prep, ss)?;
    if let Some(t) = &tagged {
        let start: Option<Vec<Vec<i32>>> = t.e.iter().map(|v| v.leading().map(|x| grades[x].clone())).collect();
        if let Some(found) = start.and_then(|s| find_generators(g, &grades, s, target, SEARCH_LIMIT)) {
            return Some(found);
        }
    }
    find_generators(g, &grades, lex_simple_grades(&grades), target, SEARCH_LIMIT)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyOutcome {
    pub target: String,
    pub inferred: bool,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subquotient: Option<Certificate>,
    /// The subquotient's conclusion for auxiliary targets, the certificate's otherwise.
    pub effective: Conclusion,
}

pub fn certify_prepared(prep: &Prepared, ss: &SemisimplifiedAlgebra, target: Option<&str>) -> Result<CertifyOutcome> {
    let (source, inferred) = match target {
        Some(t) => (lookup_target(t)?, false),
        None => (
            infer_target(prep, ss.superdim())
                .ok_or_else(|| Error::InvalidInput("no target given and none could be inferred".into()))?,
            true,
        ),
    };
    if source.p != prep.p() {
        return Err(Error::InvalidInput(format!("{} lives in characteristic {}", source.name, source.p)));
    }
    let g = &ss.algebra;
    let Some(gcm) = source.gcm.clone() else {
        let grades = grades_of(prep, ss).ok_or_else(|| Error::PreconditionViolated("no inherited grading".into()))?;
        let c = certify_even_type(g, &grades, &source)?;
        let effective = c.conclusion;
        return Ok(CertifyOutcome { target: source.name, inferred, certificate: c, subquotient: None, effective });
    };
    let found = find_images(prep, ss, &gcm);
    let mut c = certify(g, found.as_ref().map(|f| &f.0), &source)?;
    if let Some((_, k)) = &found {
        c.odd_reflections = *k;
    }
    let auxiliary = auxiliary_targets().iter().any(|t| t.name == source.name);
    let subquotient = match &found {
        Some((gens, _)) if c.conclusion != Conclusion::Verified => Some(certify_subquotient(g, gens, &source)?),
        _ => None,
    };
    let effective = match (&subquotient, auxiliary) {
        (Some(s), true) => s.conclusion,
        _ => c.conclusion,
    };
    Ok(CertifyOutcome { target: source.name, inferred, certificate: c, subquotient, effective })
}

fn vector_json(g: &ModularSuperAlgebra, v: &FpVector) -> Value {
    let p = v.modulus();
    Value::Array(v.support().map(|(x, c)| json!([g.label(x), field::signed(c, p)])).collect())
}

pub fn decomposition_json(prep: &Prepared) -> Value {
    let g = prep.realization.algebra();
    let chains: Vec<Value> = prep
        .decomposition
        .chains()
        .iter()
        .enumerate()
        .map(|(k, c)| json!({"index": k, "length": c.len(), "tag": c.tag(), "head": vector_json(g, c.head())}))
        .collect();
    json!({
        "algebra": prep.source.name,
        "p": prep.p(),
        "element": prep.element,
        "route": prep.route,
        "block_counts": prep.counts(),
        "chains": chains,
    })
}

pub fn certificate_json(prep: &Prepared, ss: &SemisimplifiedAlgebra, out: &CertifyOutcome) -> Value {
    let c = &out.certificate;
    json!({
        "algebra": prep.source.name,
        "element": prep.element,
        "p": prep.p(),
        "route": prep.route,
        "block_counts": prep.counts(),
        "superdim": [ss.superdim().even, ss.superdim().odd],
        "target": out.target,
        "target_inferred": out.inferred,
        "relations": c.relations,
        "generation": c.generation_pass,
        "odd_cubes": c.odd_cubes_pass,
        "conclusion": out.effective,
        "certificate": c,
        "subquotient": out.subquotient,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Certificate,
    Subquotient,
    Even,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub algebra: String,
    #[serde(default = "three")]
    pub p: u32,
    pub elements: Vec<String>,
    pub counts: Option<Vec<usize>>,
    pub superdim: Option<[usize; 2]>,
    pub kind: RowKind,
    pub target: Option<String>,
    pub plan: Option<String>,
    pub even_type: Option<String>,
    pub subquotient: Option<[usize; 2]>,
}

fn three() -> u32 {
    3
}

#[derive(Deserialize)]
struct GoldenFile {
    schema: u32,
    row: Vec<GoldenRow>,
}

pub fn golden_rows() -> Vec<GoldenRow> {
    let file: GoldenFile = toml::from_str(include_str!("../data/golden_table.toml")).expect("embedded table parses");
    assert_eq!(file.schema, 1);
    file.row
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementResult {
    pub element: String,
    pub counts: Vec<usize>,
    pub superdim: SuperDim,
    pub conclusion: Option<Conclusion>,
    pub even_type: Option<String>,
    pub subquotient: Option<SuperDim>,
    pub pass: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub row: GoldenRow,
    pub elements: Vec<ElementResult>,
    pub pass: bool,
}

fn sd(x: [usize; 2]) -> SuperDim {
    SuperDim::new(x[0], x[1])
}

pub fn evaluate_element(row: &GoldenRow, element: &str) -> Result<ElementResult> {
    let job = Job {
        algebra: row.algebra.clone(),
        p: Some(row.p),
        element: Some(element.into()),
        plan: row.plan.as_deref().map(str::parse).transpose()?,
        ..Job::default()
    };
    let prep = prepare(&job)?;
    let ss = prep.semisimplify()?;
    let mut out = ElementResult {
        element: element.into(),
        counts: prep.counts(),
        superdim: ss.superdim(),
        conclusion: None,
        even_type: None,
        subquotient: None,
        pass: true,
        notes: vec![],
    };
    if let Some(c) = &row.counts {
        out.pass &= &out.counts == c;
    }
    if let Some(s) = row.superdim {
        out.pass &= out.superdim == sd(s);
    }
    match row.kind {
        RowKind::Certificate | RowKind::Subquotient => {
            let c = certify_prepared(&prep, &ss, row.target.as_deref())?;
            out.conclusion = Some(c.effective);
            out.pass &= c.effective == Conclusion::Verified;
            if let Some(q) = &c.subquotient {
                out.subquotient = Some(parse_superdim(&q.superdim));
            }
            if row.kind == RowKind::Subquotient {
                out.pass &= row.subquotient.map(sd) == out.subquotient;
            }
        }
        RowKind::Even => {
            let grades = grades_of(&prep, &ss).ok_or_else(|| Error::PreconditionViolated("no inherited grading".into()))?;
            let ty = recognize_even_type(&ss.algebra, &grades)?;
            out.pass &= ss.algebra.is_purely_even() && Some(&ty.label) == row.even_type.as_ref() && ty.dim == ss.algebra.dim();
            out.even_type = Some(ty.label);
        }
        RowKind::Report => {
            // tag images checked against the derived matrix, for information only
            if let (Some(t), Route::Structured) = (tilde_target(&prep), prep.route) {
                let gens = generator_images(&ss, prep.source.gcm.as_ref().unwrap(), prep.simple_support.as_ref().unwrap())?;
                let sq = gen_subquotient(&ss.algebra, &gens.all())?;
                out.subquotient = Some(sq.quotient.superdim());
                let matched = match_target(&ss.algebra, &gens, &t).is_some();
                out.notes.push(format!("tag images {} the derived matrix", if matched { "realize" } else { "do not realize" }));
            }
            out.conclusion = Some(Conclusion::Inconclusive);
            out.notes.push("no target is expected for this row".into());
        }
    }
    Ok(out)
}

fn parse_superdim(s: &str) -> SuperDim {
    let inner = s.trim_matches(|c| c == '(' || c == ')');
    let mut it = inner.split('|').map(|x| x.trim().parse().unwrap_or(0));
    SuperDim::new(it.next().unwrap_or(0), it.next().unwrap_or(0))
}

/// Evaluates every row; work runs in parallel, results keep the table's order.
pub fn evaluate_table(rows: &[GoldenRow]) -> Vec<RowResult> {
    let work: Vec<(usize, &str)> =
        rows.iter().enumerate().flat_map(|(k, r)| r.elements.iter().map(move |e| (k, e.as_str()))).collect();
    let results: Vec<(usize, ElementResult)> = work
        .par_iter()
        .map(|&(k, e)| {
            let r = evaluate_element(&rows[k], e).unwrap_or_else(|err| ElementResult {
                element: e.into(),
                counts: vec![],
                superdim: SuperDim::new(0, 0),
                conclusion: None,
                even_type: None,
                subquotient: None,
                pass: false,
                notes: vec![err.to_string()],
            });
            (k, r)
        })
        .collect();
    rows.iter()
        .enumerate()
        .map(|(k, row)| {
            let elements: Vec<ElementResult> = results.iter().filter(|r| r.0 == k).map(|r| r.1.clone()).collect();
            let pass = elements.iter().all(|e| e.pass);
            RowResult { row: row.clone(), elements, pass }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberResult {
    pub counts: Vec<usize>,
    pub superdim: SuperDim,
    /// Certificate of the full semisimplification.
    pub conclusion: Option<Conclusion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subquotient: Option<Conclusion>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapMember {
    pub subset: Vec<usize>,
    pub path: Vec<(usize, usize)>,
    pub admissible: bool,
    #[serde(flatten)]
    pub result: MemberResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapReport {
    pub algebra: String,
    pub start: Vec<usize>,
    pub target: Option<String>,
    pub members: Vec<SwapMember>,
    pub counts_agree: bool,
    pub conclusions_agree: bool,
}

/// Results per (algebra, black set, target), shared between sweeps.
#[derive(Default)]
pub struct MemberCache(Mutex<HashMap<(String, Vec<usize>, Option<String>), MemberResult>>);

fn evaluate_member(algebra: &str, subset: &[usize], target: Option<&str>) -> Result<MemberResult> {
    let prep = prepare(&Job { algebra: algebra.into(), p: Some(3), subset: Some(subset.to_vec()), ..Job::default() })?;
    let ss = prep.semisimplify()?;
    let out = target.map(|t| certify_prepared(&prep, &ss, Some(t))).transpose()?;
    Ok(MemberResult {
        counts: prep.counts(),
        superdim: ss.superdim(),
        conclusion: out.as_ref().map(|o| o.certificate.conclusion),
        subquotient: out.and_then(|o| o.subquotient).map(|q| q.conclusion),
    })
}

/// Orbit of `subset` under legal swaps (p = 3), each member decomposed and, when the
/// start determines a target, certified against it.
pub fn swaps(algebra: &str, subset: &[usize], certify: bool, cache: Option<&MemberCache>) -> Result<SwapReport> {
    if subset.is_empty() {
        return Err(Error::InvalidInput("the subset must be nonempty".into()));
    }
    let source = load_algebra(algebra, Some(3))?;
    let gcm = source.gcm.clone().ok_or_else(|| Error::InvalidInput(format!("{algebra} has no Dynkin diagram")))?;
    let orbit = swap_orbit(&Coloring::new(gcm.clone(), subset.iter().copied())?);
    let target = if certify {
        let targets: Vec<TargetInfo> = target_catalog().into_iter().chain(auxiliary_targets()).collect();
        orbit.iter().find_map(|m| {
            let (t, _) = derive_tilde(&gcm, &m.coloring.black_vec()).ok()?;
            targets.iter().find(|x| gcm_matches(&t, x)).map(|x| x.name.clone())
        })
    } else {
        None
    };
    let members: Vec<SwapMember> = orbit
        .par_iter()
        .map(|m| {
            let s = m.coloring.black_vec();
            let key = (source.name.clone(), s.clone(), target.clone());
            let cached = cache.and_then(|c| c.0.lock().unwrap().get(&key).cloned());
            let result = match cached {
                Some(r) => r,
                None => {
                    let r = evaluate_member(&source.name, &s, target.as_deref())?;
                    if let Some(c) = cache {
                        c.0.lock().unwrap().insert(key, r.clone());
                    }
                    r
                }
            };
            Ok(SwapMember { admissible: is_admissible(&gcm, &s), subset: s, path: m.path.clone(), result })
        })
        .collect::<Result<_>>()?;
    let counts_agree = members.windows(2).all(|w| w[0].result.counts == w[1].result.counts);
    let conclusions_agree = members.windows(2).all(|w| w[0].result.conclusion == w[1].result.conclusion);
    Ok(SwapReport { algebra: source.name, start: subset.to_vec(), target, members, counts_agree, conclusions_agree })
}

/// Parity pattern of a target as a bit string, for display.
pub fn parity_bits(p: &[Parity]) -> String {
    p.iter().map(|q| q.bit().to_string()).collect()
}
