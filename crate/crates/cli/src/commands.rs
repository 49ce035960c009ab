//! Command bodies. Each one returns a [`Report`]; files are written only when asked.

use std::fs;
use std::io::Read as _;
use std::path::Path;

use serde_json::{json, Value};

use qlab_core::catalog;
use qlab_core::homs::find_involutions;
use qlab_core::nucleus::{coequalizer as quotient_by, involution_criterion, minimality_certificate, DEFAULT_EXHAUSTIVE_MINIMALITY};
use qlab_core::props::property_report;
use qlab_core::quantic::{quantic_frame_check, quantic_frame_facts, spectrum_pushout};
use qlab_core::spectral::{quantic_frame_topologize, spectral_topology};
use qlab_core::sq2::enumerate_strictly_quantized;
use qlab_core::tensor::{tensor_quantale, Twist};
use qlab_core::topology::{convergence_check, default_ambient, involution_by_interior, separation_report, sober_check, QTopology};
use qlab_core::{Elem, Error, Quantale};

use crate::error::CliError;
use crate::qnt;
use crate::report::Report;

/// Size caps and the sampling seed shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_elements: usize,
    pub max_tensor: usize,
    pub max_opens: usize,
    pub seed: u64,
}

/// Reads a quantale from a `.qnt` path, from stdin for `-`, or from the catalog by name.
pub fn load(source: &str, limits: &Limits) -> Result<Quantale, CliError> {
    let io = |source_err| CliError::Io { path: source.into(), source: source_err };
    let q = if source == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        qnt::parse(&text, limits.max_elements)?
    } else if Path::new(source).exists() {
        qnt::parse(&fs::read_to_string(source).map_err(io)?, limits.max_elements)?
    } else if let Ok(q) = catalog::catalog(source) {
        q
    } else {
        return Err(CliError::Usage(format!("`{source}` is neither a readable file nor a catalog name")));
    };
    if q.len() > limits.max_elements {
        return Err(CliError::Usage(format!("{} has {} elements, above --max-elements {}", q.name(), q.len(), limits.max_elements)));
    }
    Ok(q)
}

fn write_out(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn names(q: &Quantale, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| q.elem_name(x).to_string()).collect()
}

fn set_line(q: &Quantale, xs: &[Elem]) -> String {
    format!("{{{}}}", names(q, xs).join(", "))
}

/// Parses `a->b c->d` (or comma separated) into an element map from `dom` to `cod`.
pub fn parse_map(spec: &str, dom: &Quantale, cod: &Quantale) -> Result<Vec<Elem>, CliError> {
    let mut out: Vec<Option<Elem>> = vec![None; dom.len()];
    for item in spec.split([' ', ',']).filter(|s| !s.is_empty()) {
        let (a, b) = item.split_once("->").ok_or_else(|| CliError::Usage(format!("expected `a->b`, found `{item}`")))?;
        out[dom.index(a)?] = Some(cod.index(b)?);
    }
    out.iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| CliError::Usage(format!("map leaves `{}` unassigned", dom.elem_name(a)))))
        .collect()
}

/// The map sending each element to the element of the same name.
fn by_name(dom: &Quantale, cod: &Quantale) -> Result<Vec<Elem>, CliError> {
    dom.elements()
        .map(|a| cod.index(dom.elem_name(a)).map_err(|_| CliError::Usage(format!("no element `{}` in {}; pass an explicit map", dom.elem_name(a), cod.name()))))
        .collect()
}

pub fn check(q: &Quantale) -> Report {
    let mut r = Report::new(format!("check {}", q.name()));
    r.line(format!("quantale {} ({} elements)", q.name(), q.len()));
    let props = property_report(q);
    let mut flags = serde_json::Map::new();
    for (name, v) in props.flags() {
        r.line(format!("  {name}: {}", if v { "yes" } else { "no" }));
        flags.insert(name.into(), v.into());
    }
    r.set("elements", q.len());
    r.set("properties", Value::Object(flags));
    let (l, rt, i) = q.sided_subquantales();
    for (key, sub) in [("left-sided", &l), ("right-sided", &rt), ("two-sided", &i)] {
        r.line(format!("{key} elements: {}", set_line(q, &sub.elements)));
        r.set(key, names(q, &sub.elements));
    }
    let spec = q.spectrum();
    let strong = q.strong_spectrum();
    r.line(format!("spectrum: {}", set_line(q, &spec)));
    r.line(format!("strong spectrum: {}", set_line(q, &strong)));
    r.set("spectrum", names(q, &spec));
    r.set("strong_spectrum", names(q, &strong));
    if let Ok(h) = q.hermitian_spectrum() {
        r.line(format!("hermitian spectrum: {}", set_line(q, &h)));
        r.set("hermitian_spectrum", names(q, &h));
    }
    match props.broken_implication() {
        Some(w) => {
            r.line(format!("inconsistent flags: {w}"));
            r.set("inconsistent", w);
            r.pass = false;
        }
        None => r.set("inconsistent", Value::Null),
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SpectrumKind {
    All,
    Strong,
    Hermitian,
}

pub fn spectrum(q: &Quantale, kind: SpectrumKind) -> Result<Report, CliError> {
    let mut r = Report::new(format!("spectrum {} --{}", q.name(), format!("{kind:?}").to_lowercase()));
    let ps = match kind {
        SpectrumKind::All => q.spectrum(),
        SpectrumKind::Strong => q.strong_spectrum(),
        SpectrumKind::Hermitian => q.hermitian_spectrum()?,
    };
    r.line(format!("{} primes: {}", ps.len(), set_line(q, &ps)));
    r.set("primes", names(q, &ps));
    Ok(r)
}

pub fn involutions(q: &Quantale) -> Report {
    let mut r = Report::new(format!("involutions {}", q.name()));
    let all = find_involutions(q);
    r.line(format!("{} involutions", all.len()));
    let mut maps = Vec::new();
    for inv in &all {
        let pairs: Vec<String> = q.elements().map(|a| format!("{}->{}", q.elem_name(a), q.elem_name(inv[a]))).collect();
        r.line(format!("  {}", pairs.join(" ")));
        maps.push(pairs.join(" "));
    }
    r.set("involutions", maps);
    r
}

pub fn tensor(q: &Quantale, s: &Quantale, out: Option<&str>, limits: &Limits) -> Result<Report, CliError> {
    let mut r = Report::new(format!("tensor {} {}", q.name(), s.name()));
    let t = tensor_quantale(q, s, limits.max_tensor)?;
    let tq = &t.quantale;
    r.line(format!("{}: {} elements", tq.name(), tq.len()));
    r.set("name", tq.name());
    r.set("elements", names(tq, &tq.elements().collect::<Vec<_>>()));
    for (key, v) in [("semi-unital", tq.is_semi_unital()), ("bisymmetric", tq.is_bisymmetric()), ("pre-idempotent", tq.is_pre_idempotent())] {
        r.line(format!("  {key}: {}", if v { "yes" } else { "no" }));
        r.set(key, v);
    }
    if let Some(path) = out {
        write_out(path, &qnt::export(tq))?;
        r.line(format!("written to {path}"));
    }
    Ok(r)
}

pub fn coequalizer(q: &Quantale, pairs: &[String], out: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new(format!("coequalizer {} {}", q.name(), pairs.join(" ")));
    let pairs: Vec<(Elem, Elem)> = pairs
        .iter()
        .map(|p| {
            let (a, b) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("expected `a=b`, found `{p}`")))?;
            Ok((q.index(a)?, q.index(b)?))
        })
        .collect::<Result<_, CliError>>()?;
    let qq = quotient_by(q, &pairs)?;
    let fixed = qq.nucleus.fixed_points();
    r.line(format!("nucleus fixed points: {}", set_line(q, fixed)));
    r.set("fixed_points", names(q, fixed));
    let table: Vec<String> = q.elements().map(|a| format!("{}->{}", q.elem_name(a), q.elem_name(qq.nucleus.apply(a)))).collect();
    r.line(format!("nucleus: {}", table.join(" ")));
    r.set("nucleus", table);
    r.line(format!("quotient: {} elements", qq.quotient.len()));
    r.set("quotient_size", qq.quotient.len());
    let m = minimality_certificate(q, &pairs, &qq.nucleus, DEFAULT_EXHAUSTIVE_MINIMALITY);
    r.set("minimality_exhaustive", m.exhaustive);
    r.check("least", m.minimal);
    if q.involution().is_some() {
        let c = involution_criterion(&qq)?;
        r.set("nucleus_involutive", c.nucleus_involutive);
        r.line(format!("nucleus involutive: {}", if c.nucleus_involutive { "yes" } else { "no" }));
        r.check("involution criterion agrees", c.agree());
    }
    if let Some(path) = out {
        write_out(path, &qnt::export(&qq.quotient))?;
        r.line(format!("written to {path}"));
    }
    Ok(r)
}

pub fn quantic_frame(q: &Quantale, limits: &Limits) -> Result<Report, CliError> {
    let mut r = Report::new(format!("quantic-frame {}", q.name()));
    let rep = match quantic_frame_check(q, limits.max_tensor) {
        Ok(rep) => rep,
        Err(Error::PreconditionFailed(what)) => {
            r.line(format!("not {what}"));
            r.set("precondition_failed", what);
            r.pass = false;
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    for (key, ok, w) in [
        ("sided elements idempotent", rep.cond_a, &rep.cond_a_witness),
        ("two-sided elements hermitian", rep.cond_b, &rep.cond_b_witness),
        ("pushout of the sided parts", rep.cond_c, &rep.cond_c_witness),
    ] {
        r.check(key, ok);
        if let Some(w) = w {
            r.line(format!("  witness: {w}"));
            r.set(&format!("{key} witness"), w.as_str());
        }
    }
    r.line(format!("two-sided part: {}", set_line(q, &rep.commutative_part)));
    r.set("two_sided_part", names(q, &rep.commutative_part));
    if rep.is_quantic_frame() {
        let f = quantic_frame_facts(q, &rep)?;
        let phi: Vec<String> = f.phi.iter().map(|&(p, v)| format!("{}->{}", q.elem_name(p), q.elem_name(v))).collect();
        r.line(format!("primes of the left-sided part to hermitian primes: {}", phi.join(" ")));
        r.set("phi", phi);
        r.check("projection involutive", f.projection_involutive);
        r.check("hermitian primes correspond", f.adjoint_bijection && f.projection_inverse);
        r.check("zero divisors transfer", f.zero_divisor_free == f.commutative_part_zero_divisor_free && f.no_sided_zero_products != Some(false));
        r.check("phi bijective", f.phi_bijective);
    }
    Ok(r)
}

/// Inputs of [`pushout_spectrum`].
pub struct PushoutArgs<'a> {
    pub left: &'a Quantale,
    pub right: &'a Quantale,
    pub base: &'a Quantale,
    pub left_map: Option<&'a str>,
    pub right_map: Option<&'a str>,
    pub to_right: Option<&'a str>,
    pub to_left: Option<&'a str>,
}

pub fn pushout_spectrum(a: &PushoutArgs, out: Option<&str>, limits: &Limits) -> Result<Report, CliError> {
    let (l, rq, i) = (a.left, a.right, a.base);
    let mut r = Report::new(format!("pushout-spectrum {} {} {}", l.name(), rq.name(), i.name()));
    let pick = |spec: Option<&str>, dom: &Quantale, cod: &Quantale| match spec {
        Some(s) => parse_map(s, dom, cod),
        None => by_name(dom, cod),
    };
    let q_l = pick(a.left_map, i, l)?;
    let q_r = pick(a.right_map, i, rq)?;
    let twist = Twist { to_right: pick(a.to_right, l, rq)?, to_left: pick(a.to_left, rq, l)? };
    let p = spectrum_pushout(l, rq, i, &q_l, &q_r, &twist, limits.max_tensor)?;
    let omega = &p.omega.quotient;
    r.line(format!("tensor: {} elements; pushout: {} elements", p.tensor.quantale.len(), omega.len()));
    r.set("tensor_size", p.tensor.quantale.len());
    r.set("pushout_size", omega.len());
    r.check("coequalizers agree", p.twisted.agree());
    r.check("left-sided part recovered", p.left_isomorphic);
    r.check("primes match hermitian primes", p.hermitian_bijection);
    if let Some(path) = out {
        write_out(path, &qnt::export(omega))?;
        r.line(format!("written to {path}"));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Strong,
    Hermitian,
    LeftPrimes,
}

impl std::str::FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "σs" | "s" | "sigma-s" | "strong" => Ok(Space::Strong),
            "σh" | "h" | "sigma-h" | "hermitian" => Ok(Space::Hermitian),
            "σL" | "L" | "l" | "sigma-L" | "left" => Ok(Space::LeftPrimes),
            _ => Err(format!("unknown space `{s}` (expected σs, σh or σL)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TopologyReport {
    Separation,
    Sober,
    Base,
    Convergence,
    Interior,
}

fn show_all(t: &QTopology, fs: &[Vec<Elem>]) -> Vec<String> {
    fs.iter().map(|f| t.show(f)).collect()
}

pub fn topologize(q: &Quantale, space: Space, reports: &[TopologyReport], out: Option<&str>, limits: &Limits) -> Result<Report, CliError> {
    let label = match space {
        Space::Strong => "σs",
        Space::Hermitian => "σh",
        Space::LeftPrimes => "σL",
    };
    let mut r = Report::new(format!("topologize {} --space {label}", q.name()));
    let ambient = default_ambient();
    let (t, points, elementary): (QTopology, Vec<Elem>, Option<Vec<Vec<Elem>>>) = match space {
        Space::Strong | Space::Hermitian => {
            let s = spectral_topology(q, space == Space::Hermitian, &ambient, limits.max_opens)?;
            r.check("displayed base form generates", s.base_form_generates);
            r.check("elements map homomorphically", s.phi_hom);
            (s.topology, s.points, None)
        }
        Space::LeftPrimes => {
            let qt = quantic_frame_topologize(q, &ambient, limits.max_tensor, limits.max_opens)?;
            r.check("B formulas agree", qt.formulas_agree);
            r.check("elementary base generates", qt.base_generates);
            (qt.topology, qt.points, Some(qt.elementary_base))
        }
    };
    r.line(format!("points: {}", set_line(q, &points)));
    r.line(format!("opens: {}", t.opens().len()));
    r.set("points", names(q, &points));
    r.set("opens", t.opens().len());
    r.set("ambient", ambient.name());
    for rep in reports {
        match rep {
            TopologyReport::Base => {
                let jirr = t.base();
                if let Some(b) = &elementary {
                    r.line(format!("base: {} opens", b.len()));
                    for f in b {
                        r.line(format!("  {}", t.show(f)));
                    }
                    r.set("base", show_all(&t, b));
                }
                r.line(format!("join-irreducible opens: {}", jirr.len()));
                for f in &jirr {
                    r.line(format!("  {}", t.show(f)));
                }
                r.set("join_irreducible_base", show_all(&t, &jirr));
            }
            TopologyReport::Separation => {
                let s = separation_report(&t);
                let pts = |v: &[(usize, usize)]| -> Vec<String> { v.iter().map(|&(x, y)| format!("({},{})", t.points()[x], t.points()[y])).collect() };
                let mut sep = serde_json::Map::new();
                for (key, ok, fails) in [
                    ("T0", s.t0, &s.t0_failures),
                    ("Frechet", s.frechet, &s.frechet_failures),
                    ("Hausdorff", s.hausdorff, &s.hausdorff_failures),
                    ("strong Hausdorff", s.strong_hausdorff, &s.strong_hausdorff_failures),
                ] {
                    let f = pts(fails);
                    r.line(format!("{key}: {}{}", if ok { "yes" } else { "no" }, if f.is_empty() { String::new() } else { format!(" failing at {}", f.join(" ")) }));
                    sep.insert(key.into(), json!({ "holds": ok, "failures": f }));
                }
                r.set("separation", Value::Object(sep));
            }
            TopologyReport::Sober => {
                let s2: Vec<Elem> = (0..6).collect();
                let s = sober_check(&t, &s2)?;
                r.line(format!("strong involutive module homs into Q2: {}", s.homs.len()));
                r.set("sober_homs", s.homs.len());
                r.check("sober", s.sober);
            }
            TopologyReport::Convergence => {
                let c = convergence_check(&t, limits.seed, 500)?;
                let pairs: Vec<String> = c.limit_pairs.iter().map(|&(x, y)| format!("({},{})", t.points()[x], t.points()[y])).collect();
                r.line(format!("distinct left/right limits possible at: {}", if pairs.is_empty() { "none".into() } else { pairs.join(" ") }));
                r.line(format!("sampled filters: {} valid of {} (seed {})", c.sampled_valid, c.sampled, limits.seed));
                r.set("limit_pairs", pairs);
                r.set("seed", limits.seed);
                r.check("unique limits iff strongly Hausdorff", c.holds());
            }
            TopologyReport::Interior => {
                let c = involution_by_interior(&t, limits.seed, 2000)?;
                r.line(format!("closed under involution: {}", if c.closed_under_involution { "yes" } else { "no" }));
                if let Some(w) = &c.witness {
                    r.line(format!("  witness: {}", t.show(w)));
                }
                r.set("sampled", c.sampled);
                r.check("interior characterizes involution", c.agree());
            }
        }
    }
    if let Some(path) = out {
        write_out(path, &qnt::export_topology(&format!("{}-{label}", q.name()), &t))?;
        r.line(format!("written to {path}"));
    }
    Ok(r)
}

pub fn enumerate_sq2(out_dir: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new("enumerate-sq2");
    let all = enumerate_strictly_quantized();
    r.line(format!("{} isomorphism classes", all.len()));
    let mut rows = Vec::new();
    for q in &all {
        r.line(format!("  {}: {} elements", q.name(), q.len()));
        rows.push(json!({ "name": q.name(), "elements": q.len() }));
        if let Some(dir) = out_dir {
            write_out(&format!("{dir}/{}.qnt", q.name()), &qnt::export(q))?;
        }
    }
    r.set("classes", rows);
    Ok(r)
}

/// The catalog listing, or a single entry as `.qnt` text.
pub fn catalog_entry(name: Option<&str>) -> Result<Result<String, Report>, CliError> {
    match name {
        Some(n) => Ok(Ok(qnt::export(&catalog::catalog(n)?))),
        None => {
            let mut r = Report::new("catalog");
            let mut rows = Vec::new();
            for n in catalog::NAMES {
                let q = catalog::catalog(n)?;
                r.line(format!("{n}: {} elements", q.len()));
                rows.push(json!({ "name": n, "elements": q.len() }));
            }
            r.set("entries", rows);
            Ok(Err(r))
        }
    }
}
