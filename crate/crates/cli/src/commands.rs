use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use freeknot::complexes::{
    check_parity_constraints, complex_class, double_complex, file::to_json, genus_bound, is_normal_cylinder,
    meridian_parity, parse_complex, smooth_interior_line, ComplexError, CylinderDiagram, ParityViolation, Regluing,
    StandardComplex,
};
use freeknot::diagram::{canonical_code, crossing_kind, CrossingKind, Diagram, Enumerator};
use freeknot::parity::{component_parity, is_odd, parities, tower as parity_tower, CrossingOrder, Terminal};
use freeknot::slice::{deduce as close, elementary_certificate, parse_facts, theorem_preconditions, DeduceError};
use freeknot::smoothing::{classify_smoothing, smooth as smooth_at, SmoothingChoice};
use serde_json::{json, Value};

use crate::input::{diagram, diagrams, read_file};
use crate::report::{usage, violation, Failure, Report, VIOLATION};

/// Chord counts above this are refused by `enumerate`.
pub const HARD_MAX_CHORDS: usize = 8;
pub const MAX_CHORDS_VAR: &str = "FKT_MAX_CHORDS";

pub fn parse(code: &str) -> Result<Report, Failure> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for d in diagrams(code)? {
        let canonical = canonical_code(&d);
        let _ = writeln!(
            text,
            "{d}\n  canonical: {canonical}\n  components: {}\n  crossings: {}",
            d.component_count(),
            d.crossing_count()
        );
        rows.push(json!({
            "code": d.to_string(),
            "canonical": canonical,
            "components": d.component_count(),
            "crossings": d.crossing_count(),
        }));
    }
    Ok(Report::new("parse", json!({ "diagrams": rows }), text))
}

pub fn parity(code: &str) -> Result<Report, Failure> {
    let d = diagram(code)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let (rule, odd) = if d.component_count() == 1 {
        for (c, p) in parities(&d).map_err(usage)? {
            let _ = writeln!(text, "{}: {p}", d.label(c));
            rows.push(json!({ "crossing": d.label(c), "parity": p }));
        }
        let odd = is_odd(&d).map_err(usage)?;
        let _ = writeln!(text, "odd: {}", yes(odd));
        ("gaussian", Some(odd))
    } else {
        for c in d.crossings() {
            let p = component_parity(&d, c).map_err(usage)?;
            let kind = kind_name(crossing_kind(&d, c).map_err(usage)?);
            let _ = writeln!(text, "{}: {p} ({kind})", d.label(c));
            rows.push(json!({ "crossing": d.label(c), "parity": p, "kind": kind }));
        }
        let _ = writeln!(text, "odd: not defined for {} components", d.component_count());
        ("mixed_odd", None)
    };
    let body = json!({ "code": d.to_string(), "rule": rule, "crossings": rows, "is_odd": odd });
    Ok(Report::new("parity", body, text))
}

pub fn tower(code: &str) -> Result<Report, Failure> {
    let d = diagram(code)?;
    let t = parity_tower(&d).map_err(usage)?;
    let mut text = String::new();
    let levels: Vec<String> = t.levels().iter().map(Diagram::to_string).collect();
    for (k, l) in levels.iter().enumerate() {
        let _ = writeln!(text, "level {k}: {l}");
    }
    let mut orders = Vec::new();
    for (&c, o) in t.orders() {
        let order = match o {
            CrossingOrder::Finite(k) => json!(k),
            CrossingOrder::StablyEven => json!("stably_even"),
        };
        let shown = order.as_str().map(str::to_string).unwrap_or_else(|| order.to_string());
        let _ = writeln!(text, "order of {}: {shown}", d.label(c));
        orders.push(json!({ "crossing": d.label(c), "order": order }));
    }
    let stably: Vec<&str> = t.stably_even().into_iter().map(|c| d.label(c)).collect();
    let order = t.iterated_odd_order();
    let _ = writeln!(text, "stably even: {}", list(&stably));
    match order {
        Some(k) => writeln!(text, "iteratively odd, order {k}"),
        None => writeln!(text, "not iteratively odd"),
    }
    .ok();
    let terminal = match t.terminal() {
        Terminal::CrossingFree => "crossing_free",
        Terminal::Fixpoint => "fixpoint",
    };
    let body = json!({
        "code": d.to_string(),
        "levels": levels,
        "terminal": terminal,
        "orders": orders,
        "stably_even": stably,
        "iteratively_odd": order.is_some(),
        "order": order,
    });
    Ok(Report::new("tower", body, text))
}

pub fn smooth(code: &str, crossing: &str, choice: &str) -> Result<Report, Failure> {
    let d = diagram(code)?;
    let c = d.crossing(crossing).ok_or_else(|| usage(format!("unknown crossing {crossing}")))?;
    let choice: SmoothingChoice = choice.parse().map_err(usage)?;
    let after = smooth_at(&d, c, choice).map_err(usage)?;
    let kind = classify_smoothing(&d, c, choice).map_err(usage)?;
    let text = format!(
        "{after}\n  components: {} -> {}\n  smoothing: {kind}\n",
        d.component_count(),
        after.component_count()
    );
    let body = json!({
        "code": d.to_string(),
        "crossing": crossing,
        "choice": choice.to_string(),
        "result": after.to_string(),
        "components_before": d.component_count(),
        "components_after": after.component_count(),
        "kind": kind.to_string(),
    });
    Ok(Report::new("smooth", body, text))
}

pub fn slice(code: &str, allow_self_pairs: bool) -> Result<Report, Failure> {
    let d = diagram(code)?;
    if d.component_count() != 1 {
        return Err(violation(format!(
            "slice certificates need a 1-component diagram, got {} components; record facts and use deduce",
            d.component_count()
        )));
    }
    let cert = elementary_certificate(&d, allow_self_pairs).map_err(usage)?;
    let scope = theorem_preconditions(&d);
    let found = cert.is_some();
    let verdict = if found { "elementary slice" } else { "not elementary slice" };
    // With an odd number of chords no matching exists at all, so the
    // equivalence for odd diagrams settles sliceness outright.
    let backed = scope.odd && d.crossing_count() % 2 == 1;
    let (basis, conclusion) = if backed {
        ("theorem-backed", "not slice: the diagram is odd, so sliceness equals elementary sliceness")
    } else if scope.odd {
        ("predicate-level", "odd diagram: sliceness equals elementary sliceness, here decided by the certificate predicate")
    } else {
        ("predicate-level", "sliceness is not decided by the certificate search for this diagram")
    };
    let mut text = String::new();
    let certificate = cert.map(|c| {
        let matching: Vec<[&str; 2]> = c.matching.iter().map(|[x, y]| [d.label(*x), d.label(*y)]).collect();
        for (m, arcs) in matching.iter().zip(&c.arcs) {
            let arcs: Vec<String> = arcs.iter().map(|[a, b]| format!("({a},{b})")).collect();
            let _ = writeln!(text, "pair {{{}, {}}}: arcs {}", m[0], m[1], arcs.join(" "));
        }
        json!({ "matching": matching, "arcs": c.arcs })
    });
    if !found {
        text.push_str("certificate: none\n");
    }
    let _ = writeln!(text, "verdict: {verdict} ({basis})\n{conclusion}");
    let body = json!({
        "code": d.to_string(),
        "self_pairs_allowed": allow_self_pairs,
        "certificate": certificate,
        "verdict": verdict,
        "basis": basis,
        "conclusion": conclusion,
        "scope": scope,
    });
    Ok(Report::new("slice", body, text))
}

fn load_complex(file: &Path) -> Result<StandardComplex, Failure> {
    parse_complex(&read_file(file)?).map_err(|e| complex_failure(file, e))
}

fn complex_failure(file: &Path, e: ComplexError) -> Failure {
    let msg = format!("{}: {e}", file.display());
    match e {
        ComplexError::Schema(_) | ComplexError::UnknownLine(_) => usage(msg),
        _ => violation(msg),
    }
}

fn genus_summary(k: &StandardComplex) -> Value {
    let s = k.surface();
    json!({
        "euler_characteristic": k.euler_characteristic(),
        "components": s.component_count(),
        "orientable": s.is_orientable(),
        "total_genus": s.total_genus().ok(),
        "closed": k.is_closed(),
    })
}

fn describe_violation(v: &ParityViolation) -> String {
    match v {
        ParityViolation::CuspAtOddCrossing { line, crossing } => {
            format!("line {line} joins a cusp to the odd crossing {crossing}")
        }
        ParityViolation::TripleParitySum { triple, crossings, parities } => format!(
            "triple point {triple}: crossings {} have parities {}, an odd sum",
            crossings.join(", "),
            parities.map(|p| p.to_string()).join(", ")
        ),
    }
}

pub fn complex_validate(file: &Path) -> Result<Report, Failure> {
    let k = load_complex(file)?;
    let class = complex_class(&k);
    let report = k.surface().genus_report();
    let parity = match check_parity_constraints(&k) {
        Ok(v) => Some(v),
        Err(ComplexError::NoBoundary) => None,
        Err(e) => return Err(complex_failure(file, e)),
    };
    let mut text = String::new();
    let flags = [
        ("general", class.general),
        ("cusp_free", class.cusp_free),
        ("triple_free", class.triple_free),
        ("elementary", class.elementary),
        ("purified", class.purified),
    ];
    let set: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
    let _ = writeln!(text, "class: {}", list(&set));
    let _ = writeln!(text, "euler characteristic: {}", k.euler_characteristic());
    for (i, c) in report.iter().enumerate() {
        let genus = c.genus.map_or("non-orientable".to_string(), |g| format!("genus {g}"));
        let _ = writeln!(text, "component {i}: chi {}, {} boundary circle(s), {genus}", c.chi, c.boundary_circles);
    }
    let _ = writeln!(
        text,
        "lines: {} ({} interior), cusps: {}, triple points: {}",
        k.lines().len(),
        k.interior_line_count(),
        k.cusps().len(),
        k.triples().len()
    );
    match &parity {
        None => text.push_str("parity constraints: not applicable (no boundary)\n"),
        Some(v) if v.is_empty() => text.push_str("parity constraints: satisfied\n"),
        Some(v) => {
            text.push_str("parity constraints: violated\n");
            for x in v {
                let _ = writeln!(text, "  {}", describe_violation(x));
            }
        }
    }
    let violated = parity.as_ref().is_some_and(|v| !v.is_empty());
    let body = json!({
        "class": class_json(&k),
        "surface": genus_summary(&k),
        "genus_report": report,
        "lines": k.lines().len(),
        "interior_lines": k.interior_line_count(),
        "cusps": k.cusps().len(),
        "triples": k.triples().len(),
        "parity": {
            "checked": parity.is_some(),
            "violations": parity.unwrap_or_default(),
        },
    });
    let r = Report::new("complex validate", body, text);
    Ok(if violated { r.with_status(VIOLATION) } else { r })
}

fn class_json(k: &StandardComplex) -> Value {
    let c = complex_class(k);
    json!({
        "general": c.general,
        "cusp_free": c.cusp_free,
        "triple_free": c.triple_free,
        "elementary": c.elementary,
        "purified": c.purified,
    })
}

fn write_out(out: Option<&Path>, k: &StandardComplex) -> Result<(), Failure> {
    if let Some(path) = out {
        fs::write(path, to_json(k) + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn complex_smooth(file: &Path, line: u32, choice: &str, out: Option<&Path>) -> Result<Report, Failure> {
    let k = load_complex(file)?;
    let choice: Regluing = choice.parse().map_err(usage)?;
    let after = smooth_interior_line(&k, line, choice).map_err(|e| complex_failure(file, e))?;
    write_out(out, &after)?;
    let (s0, s1) = (k.surface(), after.surface());
    let (n0, n1) = (s0.component_count() as i64, s1.component_count() as i64);
    let (g0, g1) = (s0.total_genus().ok(), s1.total_genus().ok());
    let bound = g0.map(|g| genus_bound(g, n0, n1));
    let holds = match (g1, bound) {
        (Some(g), Some(b)) => Some(g <= b),
        _ => None,
    };
    let mut text = format!(
        "smoothed line {line} with regluing {choice}\n  chi: {} -> {}\n  components: {n0} -> {n1}\n",
        k.euler_characteristic(),
        after.euler_characteristic()
    );
    match (g1, bound, holds) {
        (Some(g), Some(b), Some(h)) => {
            let _ = writeln!(text, "  genus: {} -> {g}, bound {b}: {}", g0.unwrap_or_default(), if h { "holds" } else { "fails" });
        }
        _ => text.push_str("  genus bound: not applicable (non-orientable)\n"),
    }
    if let Some(p) = out {
        let _ = writeln!(text, "  written to {}", p.display());
    }
    let body = json!({
        "line": line,
        "choice": choice.to_string(),
        "before": genus_summary(&k),
        "after": genus_summary(&after),
        "genus_bound": bound,
        "bound_holds": holds,
        "lines_after": after.lines().len(),
        "cusps_after": after.cusps().len(),
        "out": out.map(|p| p.display().to_string()),
    });
    let r = Report::new("complex smooth", body, text);
    Ok(if holds == Some(false) { r.with_status(VIOLATION) } else { r })
}

pub fn complex_double(file: &Path, out: Option<&Path>) -> Result<Report, Failure> {
    let k = load_complex(file)?;
    let kk = double_complex(&k).map_err(|e| complex_failure(file, e))?;
    write_out(out, &kk)?;
    let complex: Value = serde_json::from_str(&to_json(&kk)).expect("complex files are JSON");
    let text = match out {
        Some(p) => format!(
            "doubled complex: chi {}, {} component(s), {} interior line(s)\n  written to {}\n",
            kk.euler_characteristic(),
            kk.surface().component_count(),
            kk.interior_line_count(),
            p.display()
        ),
        None => to_json(&kk) + "\n",
    };
    let body = json!({
        "before": genus_summary(&k),
        "after": genus_summary(&kk),
        "interior_lines": kk.interior_line_count(),
        "sections": kk.sections().len(),
        "out": out.map(|p| p.display().to_string()),
        "complex": if out.is_some() { Value::Null } else { complex },
    });
    Ok(Report::new("complex double", body, text))
}

pub fn cylinder_check(file: &Path, verbose: bool) -> Result<Report, Failure> {
    let c = CylinderDiagram::parse(&read_file(file)?).map_err(|e| complex_failure(file, e))?;
    let n = is_normal_cylinder(&c);
    let even = meridian_parity(&c);
    let mut text = format!("normal: {}\n", yes(n.normal));
    if let Some(v) = n.first_violation {
        let _ = writeln!(text, "first violation: condition {} (curve {}, partner {})", v.condition, v.curve, v.partner);
    }
    let _ = writeln!(text, "meridian parity: {}", if even { "even" } else { "odd" });
    let mut body = json!({
        "curves": c.curves.len(),
        "normal": n.normal,
        "first_violation": n.first_violation,
        "meridian_parity_even": even,
    });
    if verbose {
        let _ = writeln!(
            text,
            "condition 1, partner on a single circle: {}\ncondition 1, partner on the curve's circle: {}",
            yes(n.condition1_single_circle),
            yes(n.condition1_same_circle)
        );
        body["condition1_single_circle"] = json!(n.condition1_single_circle);
        body["condition1_same_circle"] = json!(n.condition1_same_circle);
    }
    let r = Report::new("cylinder check", body, text);
    // normal diagrams always have even meridian parity
    Ok(if n.normal && !even { r.with_status(VIOLATION) } else { r })
}

fn chord_cap(flag: Option<usize>) -> Result<usize, Failure> {
    let default = match std::env::var(MAX_CHORDS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{MAX_CHORDS_VAR}={v} is not a number")))?,
        Err(_) => freeknot::diagram::DEFAULT_MAX_CHORDS,
    };
    let n = flag.unwrap_or(default);
    if n > HARD_MAX_CHORDS {
        return Err(usage(format!("at most {HARD_MAX_CHORDS} chords can be enumerated, got {n}")));
    }
    Ok(n)
}

#[derive(Default)]
struct Census {
    diagrams: usize,
    odd: usize,
    all_mixed: usize,
    iteratively_odd: BTreeMap<usize, usize>,
    stably_even: usize,
    certificates: usize,
}

impl Census {
    fn add(&mut self, d: &Diagram) -> Result<(), Failure> {
        self.diagrams += 1;
        if d.component_count() > 1 {
            if d.crossings().all(|c| crossing_kind(d, c) == Ok(CrossingKind::Mixed)) {
                self.all_mixed += 1;
            }
            return Ok(());
        }
        let t = parity_tower(d).map_err(usage)?;
        self.odd += usize::from(is_odd(d).map_err(usage)?);
        if let Some(k) = t.iterated_odd_order() {
            *self.iteratively_odd.entry(k).or_default() += 1;
        }
        self.stably_even += usize::from(!t.stably_even().is_empty());
        self.certificates += usize::from(elementary_certificate(d, false).map_err(usage)?.is_some());
        Ok(())
    }

    fn json(&self, one: bool) -> Value {
        let only = |n: usize| if one { json!(n) } else { Value::Null };
        json!({
            "diagrams": self.diagrams,
            "odd": only(self.odd),
            "iteratively_odd": if one { json!(self.iteratively_odd) } else { Value::Null },
            "stably_even": only(self.stably_even),
            "certificate_found": only(self.certificates),
            "all_mixed": if one { Value::Null } else { json!(self.all_mixed) },
        })
    }

    fn text(&self, one: bool) -> String {
        if !one {
            return format!("diagrams {}, all crossings mixed {}", self.diagrams, self.all_mixed);
        }
        let orders: Vec<String> = self.iteratively_odd.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        format!(
            "diagrams {}, odd {}, iteratively odd by order {{{}}}, with stably even crossings {}, certificate found {}",
            self.diagrams,
            self.odd,
            orders.join(", "),
            self.stably_even,
            self.certificates
        )
    }
}

pub fn enumerate(max_chords: Option<usize>, components: usize, stats: bool) -> Result<Report, Failure> {
    let n = chord_cap(max_chords)?;
    if components == 0 {
        return Err(usage("--components must be at least 1"));
    }
    let one = components == 1;
    let gen = Enumerator::with_bound(HARD_MAX_CHORDS);
    let mut total = Census::default();
    let mut rows = Vec::new();
    let mut text = String::new();
    for chords in 0..=n {
        let mut row = Census::default();
        for d in gen.exact(chords, components).map_err(usage)? {
            row.add(&d)?;
            total.add(&d)?;
        }
        if stats {
            let _ = writeln!(text, "{chords} chords: {}", row.text(one));
            let mut j = row.json(one);
            j["chords"] = json!(chords);
            rows.push(j);
        }
    }
    let _ = writeln!(text, "total up to {n} chords: {}", total.text(one));
    let mut body = json!({ "max_chords": n, "components": components, "total": total.json(one) });
    if stats {
        body["by_chords"] = json!(rows);
    }
    Ok(Report::new("enumerate", body, text))
}

pub fn deduce(facts: &Path) -> Result<Report, Failure> {
    let input = parse_facts(&read_file(facts)?).map_err(|e| usage(format!("{}: {e}", facts.display())))?;
    let out = close(&input).map_err(|e| match e {
        DeduceError::Contradiction { .. } => violation(e),
        other => usage(other),
    })?;
    let mut text = String::new();
    for d in &out {
        let _ = writeln!(text, "{}  [{}] {}", d.fact, d.rule, d.citation);
    }
    if out.is_empty() {
        text.push_str("nothing new follows\n");
    }
    let body = json!({ "facts": input.len(), "deductions": out });
    Ok(Report::new("deduce", body, text))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(items: &[&str]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn kind_name(k: CrossingKind) -> &'static str {
    match k {
        CrossingKind::Pure => "pure",
        CrossingKind::Mixed => "mixed",
    }
}
