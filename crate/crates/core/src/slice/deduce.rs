//! Closure of recorded facts under the known sliceness results.
//!
//! Genus information is kept as one-sided bounds. The chain between the
//! restricted genera moves upper bounds from a larger genus to a smaller
//! one and lower bounds the other way, and nothing else.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeduceError {
    #[error("malformed facts file: {0}")]
    Schema(String),
    #[error("fact {index}: {detail}")]
    BadFact { index: usize, detail: String },
    #[error("contradiction about {subject}: {first} versus {second}")]
    Contradiction { subject: String, first: String, second: String },
}

/// Genus flavours, ordered from largest to smallest in the chain
/// `g ≥ g0 ≥ g_el` and `g ≥ g_prime ≥ g_el`. `Surface` is the genus of a
/// complex's own surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusKind {
    G,
    G0,
    GPrime,
    GEl,
    GP,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusBound {
    pub kind: GenusKind,
    pub side: Side,
    pub value: i64,
}

/// A cobordism from the subject to `to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cobordism {
    pub to: String,
    pub genus: i64,
    #[serde(default)]
    pub elementary: bool,
    #[serde(default)]
    pub triple_free: bool,
    /// Some double line joins a cusp to the boundary.
    #[serde(default)]
    pub cusp_boundary_lines: bool,
}

/// The subject complex arises from `from` by smoothing one double line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothingRecord {
    pub from: String,
    pub components_before: i64,
    pub components_after: i64,
    /// The result is a connected oriented surface.
    #[serde(default)]
    pub connected_oriented: bool,
}

/// The subject diagram smoothed at `crossing` gives `result`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition {
    pub crossing: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "predicate", content = "value", rename_all = "snake_case")]
pub enum Predicate {
    Odd(bool),
    /// Order of iterated oddness, `None` when not iteratively odd.
    IterativelyOdd(Option<usize>),
    AllMixed(bool),
    Components(usize),
    ElementarySlice(bool),
    Slice(bool),
    /// Slice with no cusps and only exterior triple points.
    SliceExteriorTriplesOnly(bool),
    /// Slice with no exterior triple points.
    SliceWithoutExteriorTriples(bool),
    GenusBound(GenusBound),
    /// A genus-0 spanning complex has a line from this crossing to a cusp.
    HasCrossingCuspLine(String),
    StablyEven(String),
    Cobordism(Cobordism),
    Smoothing(SmoothingRecord),
    GoodSmoothing(Transition),
    BadSmoothing(Transition),
    /// Some component is capped by a disc.
    HasSliceComponent(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fact {
    pub subject: String,
    #[serde(flatten)]
    pub predicate: Predicate,
}

impl Fact {
    pub fn new(subject: impl Into<String>, predicate: Predicate) -> Self {
        Fact {
            subject: subject.into(),
            predicate,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(&self.predicate).expect("facts serialize");
        let name = v["predicate"].as_str().unwrap_or_default().to_string();
        match v.get("value") {
            Some(val) => write!(f, "{}: {}={}", self.subject, name, val),
            None => write!(f, "{}: {}", self.subject, name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub fact: Fact,
    pub rule: &'static str,
    pub citation: &'static str,
    pub premises: Vec<Fact>,
}

/// One entry of a facts file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFact {
    pub subject: String,
    pub predicate: String,
    #[serde(default)]
    pub value: Value,
    #[serde(default)]
    pub provenance: Option<String>,
}

fn truth(v: &Value) -> Result<Option<bool>, String> {
    match v {
        Value::Bool(b) => Ok(Some(*b)),
        Value::String(s) if s == "true" => Ok(Some(true)),
        Value::String(s) if s == "false" => Ok(Some(false)),
        Value::String(s) if s == "unknown" => Ok(None),
        Value::Null => Ok(Some(true)),
        other => Err(format!("expected true, false or unknown, got {other}")),
    }
}

fn typed<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, String> {
    serde_json::from_value(v.clone()).map_err(|e| e.to_string())
}

impl RawFact {
    /// The typed fact; `None` for facts whose value is `unknown`.
    pub fn to_fact(&self) -> Result<Option<Fact>, String> {
        use Predicate as P;
        let v = &self.value;
        let p = match self.predicate.as_str() {
            "odd" => truth(v)?.map(P::Odd),
            "all_mixed" => truth(v)?.map(P::AllMixed),
            "elementary_slice" => truth(v)?.map(P::ElementarySlice),
            "slice" => truth(v)?.map(P::Slice),
            "slice_exterior_triples_only" => truth(v)?.map(P::SliceExteriorTriplesOnly),
            "slice_without_exterior_triples" => truth(v)?.map(P::SliceWithoutExteriorTriples),
            "has_slice_component" => truth(v)?.map(P::HasSliceComponent),
            "iteratively_odd" => match v {
                Value::Bool(false) => Some(P::IterativelyOdd(None)),
                Value::String(s) if s == "unknown" => None,
                other => Some(P::IterativelyOdd(Some(typed(other)?))),
            },
            "components" => Some(P::Components(typed(v)?)),
            "genus_bound" => Some(P::GenusBound(typed(v)?)),
            "has_crossing_cusp_line" => Some(P::HasCrossingCuspLine(crossing(v)?)),
            "stably_even" => Some(P::StablyEven(crossing(v)?)),
            "cobordism" => Some(P::Cobordism(typed(v)?)),
            "smoothing" => Some(P::Smoothing(typed(v)?)),
            "good_smoothing" => Some(P::GoodSmoothing(typed(v)?)),
            "bad_smoothing" => Some(P::BadSmoothing(typed(v)?)),
            other => return Err(format!("unknown predicate {other:?}")),
        };
        Ok(p.map(|p| Fact::new(self.subject.clone(), p)))
    }
}

fn crossing(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(format!("expected a crossing label, got {other}")),
    }
}

/// Parses a JSON list of `{subject, predicate, value, provenance}`.
pub fn parse_facts(text: &str) -> Result<Vec<Fact>, DeduceError> {
    let raw: Vec<RawFact> = serde_json::from_str(text).map_err(|e| DeduceError::Schema(e.to_string()))?;
    let mut out = Vec::new();
    for (index, r) in raw.iter().enumerate() {
        if let Some(f) = r.to_fact().map_err(|detail| DeduceError::BadFact { index, detail })? {
            out.push(f);
        }
    }
    Ok(out)
}

struct Rule {
    id: &'static str,
    citation: &'static str,
    apply: fn(&Base) -> Vec<(Fact, Vec<Fact>)>,
}

pub(crate) mod cite {
    pub const ODD_CRITERION: &str =
        "sliceness criterion for odd framed 4-graphs: a 1-component odd graph is slice exactly when it is elementary slice";
    pub const MIXED_CRITERION: &str =
        "sliceness criterion for 2-component graphs whose crossings are all mixed: slice exactly when elementary slice";
    pub const ITERATED_EXTERIOR: &str = "a 1-component iteratively odd graph is slice exactly when it is slice with no cusps and only exterior triple points";
    pub const ITERATED_ELEMENTARY: &str =
        "a 1-component iteratively odd graph is elementary slice exactly when it is slice with no exterior triple points";
    pub const CUSP_STABLY_EVEN: &str =
        "in a slice graph every crossing joined to a cusp by a double line of a spanning complex is stably even";
    pub const SMOOTHING_GENUS: &str = "smoothing a double line of a surface knot of genus g into a connected oriented surface gives genus at most g";
    pub const GENUS_ESTIMATE: &str =
        "smoothing a double line of an n-component surface link of total genus g into n' components gives total genus at most g + (n' - n)";
    pub const COBORDISM_ELEMENTARY: &str = "a genus g cobordism without triple points and without lines from cusps to the boundary yields an elementary cobordism of genus at most g";
    pub const ODD_COBORDISM: &str =
        "two odd free knots are genus 0 cobordant exactly when they are elementary genus 0 cobordant";
    pub const GOOD_SMOOTHING: &str = "if a genus 0 complex has a line from crossing x to a cusp, the one-component smoothing at x is slice";
    pub const BAD_SMOOTHING: &str = "if a genus 0 complex has a line from crossing x to a cusp, some component of the two-component smoothing at x is capped with a disc";
    pub const GENUS_CHAIN: &str = "ordering of the genera of a framed 4-graph: g >= g0 >= g_el >= 0 and g >= g' >= g_el";
    pub const GENUS_ZERO: &str = "definition: slice means genus 0, elementary slice means elementary genus 0";
}

struct Base {
    facts: Vec<Fact>,
    set: BTreeSet<Fact>,
}

impl Base {
    fn about<'a>(&'a self, subject: &'a str) -> impl Iterator<Item = &'a Predicate> + 'a {
        self.facts.iter().filter(move |f| f.subject == subject).map(|f| &f.predicate)
    }

    fn has(&self, subject: &str, p: &Predicate) -> bool {
        self.set.contains(&Fact::new(subject, p.clone()))
    }

    fn best(&self, subject: &str, kind: GenusKind, side: Side) -> Option<i64> {
        let vals = self.about(subject).filter_map(|p| match p {
            Predicate::GenusBound(b) if b.kind == kind && b.side == side => Some(b.value),
            _ => None,
        });
        match side {
            Side::Upper => vals.min(),
            Side::Lower => vals.max(),
        }
    }

    fn bound(&self, subject: &str, kind: GenusKind, side: Side) -> Option<Fact> {
        self.best(subject, kind, side)
            .map(|value| Fact::new(subject, Predicate::GenusBound(GenusBound { kind, side, value })))
    }

    fn subjects(&self) -> Vec<String> {
        let mut s: Vec<String> = self.facts.iter().map(|f| f.subject.clone()).collect();
        s.sort();
        s.dedup();
        s
    }
}

fn f(subject: &str, p: Predicate) -> Fact {
    Fact::new(subject, p)
}

/// `A ∧ X(v) ⇒ Y(v)` in both directions, for a pair of boolean predicates
/// made equivalent under the hypotheses.
fn equivalence(
    b: &Base,
    hyp: impl Fn(&Base, &str) -> Option<Vec<Fact>>,
    x: fn(bool) -> Predicate,
    y: fn(bool) -> Predicate,
) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for s in b.subjects() {
        let Some(h) = hyp(b, &s) else { continue };
        for v in [true, false] {
            for (from, to) in [(x(v), y(v)), (y(v), x(v))] {
                if b.has(&s, &from) {
                    let mut prem = h.clone();
                    prem.push(f(&s, from.clone()));
                    out.push((f(&s, to), prem));
                }
            }
        }
    }
    out
}

fn odd_hyp(b: &Base, s: &str) -> Option<Vec<Fact>> {
    b.has(s, &Predicate::Odd(true)).then(|| vec![f(s, Predicate::Odd(true))])
}

fn iterated_hyp(b: &Base, s: &str) -> Option<Vec<Fact>> {
    b.about(s).find_map(|p| match p {
        Predicate::IterativelyOdd(Some(k)) => Some(vec![f(s, Predicate::IterativelyOdd(Some(*k)))]),
        _ => None,
    })
}

fn mixed_hyp(b: &Base, s: &str) -> Option<Vec<Fact>> {
    let (c, m) = (Predicate::Components(2), Predicate::AllMixed(true));
    (b.has(s, &c) && b.has(s, &m)).then(|| vec![f(s, c), f(s, m)])
}

fn rule_odd(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    equivalence(b, odd_hyp, Predicate::ElementarySlice, Predicate::Slice)
}

fn rule_mixed(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    equivalence(b, mixed_hyp, Predicate::ElementarySlice, Predicate::Slice)
}

fn rule_iterated_exterior(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    equivalence(b, iterated_hyp, Predicate::Slice, Predicate::SliceExteriorTriplesOnly)
}

fn rule_iterated_elementary(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    equivalence(b, iterated_hyp, Predicate::ElementarySlice, Predicate::SliceWithoutExteriorTriples)
}

fn rule_stably_even(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for fact in &b.facts {
        if let Predicate::HasCrossingCuspLine(c) = &fact.predicate {
            let s = &fact.subject;
            if b.has(s, &Predicate::Slice(true)) {
                out.push((
                    f(s, Predicate::StablyEven(c.clone())),
                    vec![f(s, Predicate::Slice(true)), fact.clone()],
                ));
            }
        }
    }
    out
}

fn smoothing_upper(b: &Base, connected_only: bool) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for fact in &b.facts {
        let Predicate::Smoothing(r) = &fact.predicate else { continue };
        if connected_only != r.connected_oriented {
            continue;
        }
        let Some(prior) = b.bound(&r.from, GenusKind::Surface, Side::Upper) else { continue };
        let Predicate::GenusBound(g) = prior.predicate else { unreachable!() };
        let value = if connected_only {
            g.value
        } else {
            g.value + (r.components_after - r.components_before)
        };
        out.push((
            f(
                &fact.subject,
                Predicate::GenusBound(GenusBound {
                    kind: GenusKind::Surface,
                    side: Side::Upper,
                    value,
                }),
            ),
            vec![fact.clone(), prior],
        ));
    }
    out
}

fn rule_smoothing_genus(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    smoothing_upper(b, true)
}

fn rule_genus_estimate(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    smoothing_upper(b, false)
}

fn rule_cobordism_elementary(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for fact in &b.facts {
        let Predicate::Cobordism(c) = &fact.predicate else { continue };
        if !c.elementary && c.triple_free && !c.cusp_boundary_lines {
            let derived = Cobordism {
                elementary: true,
                ..c.clone()
            };
            out.push((f(&fact.subject, Predicate::Cobordism(derived)), vec![fact.clone()]));
        }
    }
    out
}

fn rule_odd_cobordism(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for fact in &b.facts {
        let Predicate::Cobordism(c) = &fact.predicate else { continue };
        if c.elementary || c.genus != 0 {
            continue;
        }
        let (a, z) = (Predicate::Odd(true), Predicate::Odd(true));
        if b.has(&fact.subject, &a) && b.has(&c.to, &z) {
            let derived = Cobordism {
                to: c.to.clone(),
                genus: 0,
                elementary: true,
                triple_free: true,
                cusp_boundary_lines: false,
            };
            out.push((
                f(&fact.subject, Predicate::Cobordism(derived)),
                vec![fact.clone(), f(&fact.subject, a), f(&c.to, z)],
            ));
        }
    }
    out
}

fn transitions(b: &Base, good: bool) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for fact in &b.facts {
        let t = match (&fact.predicate, good) {
            (Predicate::GoodSmoothing(t), true) | (Predicate::BadSmoothing(t), false) => t,
            _ => continue,
        };
        let witness = f(&fact.subject, Predicate::HasCrossingCuspLine(t.crossing.clone()));
        if !b.set.contains(&witness) {
            continue;
        }
        let p = if good {
            Predicate::Slice(true)
        } else {
            Predicate::HasSliceComponent(true)
        };
        out.push((f(&t.result, p), vec![witness, fact.clone()]));
    }
    out
}

fn rule_good_smoothing(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    transitions(b, true)
}

fn rule_bad_smoothing(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    transitions(b, false)
}

fn rule_genus_zero(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    let pairs: [(fn(bool) -> Predicate, GenusKind); 2] =
        [(Predicate::Slice, GenusKind::G), (Predicate::ElementarySlice, GenusKind::GEl)];
    for s in b.subjects() {
        for (pred, kind) in pairs {
            let up = |v| f(&s, Predicate::GenusBound(GenusBound { kind, side: Side::Upper, value: v }));
            let low = |v| f(&s, Predicate::GenusBound(GenusBound { kind, side: Side::Lower, value: v }));
            if b.has(&s, &pred(true)) {
                out.push((up(0), vec![f(&s, pred(true))]));
            }
            if b.has(&s, &pred(false)) {
                out.push((low(1), vec![f(&s, pred(false))]));
            }
            if let Some(u) = b.best(&s, kind, Side::Upper) {
                if u <= 0 {
                    out.push((f(&s, pred(true)), vec![up(u)]));
                }
            }
            if let Some(l) = b.best(&s, kind, Side::Lower) {
                if l >= 1 {
                    out.push((f(&s, pred(false)), vec![low(l)]));
                }
            }
        }
    }
    out
}

/// Larger genus first; `g_el` is below both `g0` and `g_prime`.
const CHAIN: [(GenusKind, GenusKind); 4] = [
    (GenusKind::G, GenusKind::G0),
    (GenusKind::G0, GenusKind::GEl),
    (GenusKind::G, GenusKind::GPrime),
    (GenusKind::GPrime, GenusKind::GEl),
];

fn rule_chain(b: &Base) -> Vec<(Fact, Vec<Fact>)> {
    let mut out = Vec::new();
    for s in b.subjects() {
        for (big, small) in CHAIN {
            if let Some(u) = b.bound(&s, big, Side::Upper) {
                let value = b.best(&s, big, Side::Upper).unwrap();
                out.push((
                    f(&s, Predicate::GenusBound(GenusBound { kind: small, side: Side::Upper, value })),
                    vec![u],
                ));
            }
            if let Some(l) = b.bound(&s, small, Side::Lower) {
                let value = b.best(&s, small, Side::Lower).unwrap();
                out.push((
                    f(&s, Predicate::GenusBound(GenusBound { kind: big, side: Side::Lower, value })),
                    vec![l],
                ));
            }
        }
    }
    out
}

const RULES: &[Rule] = &[
    Rule { id: "odd-criterion", citation: cite::ODD_CRITERION, apply: rule_odd },
    Rule { id: "mixed-criterion", citation: cite::MIXED_CRITERION, apply: rule_mixed },
    Rule { id: "iterated-odd-exterior", citation: cite::ITERATED_EXTERIOR, apply: rule_iterated_exterior },
    Rule { id: "iterated-odd-elementary", citation: cite::ITERATED_ELEMENTARY, apply: rule_iterated_elementary },
    Rule { id: "cusp-stably-even", citation: cite::CUSP_STABLY_EVEN, apply: rule_stably_even },
    Rule { id: "cobordism-elementary", citation: cite::COBORDISM_ELEMENTARY, apply: rule_cobordism_elementary },
    Rule { id: "odd-cobordism", citation: cite::ODD_COBORDISM, apply: rule_odd_cobordism },
    Rule { id: "good-smoothing-slice", citation: cite::GOOD_SMOOTHING, apply: rule_good_smoothing },
    Rule { id: "smoothing-genus", citation: cite::SMOOTHING_GENUS, apply: rule_smoothing_genus },
    Rule { id: "genus-estimate", citation: cite::GENUS_ESTIMATE, apply: rule_genus_estimate },
    Rule { id: "bad-smoothing-cap", citation: cite::BAD_SMOOTHING, apply: rule_bad_smoothing },
    Rule { id: "genus-zero", citation: cite::GENUS_ZERO, apply: rule_genus_zero },
    Rule { id: "genus-chain", citation: cite::GENUS_CHAIN, apply: rule_chain },
];

/// Key under which two facts about one subject must agree.
fn conflict(a: &Predicate, b: &Predicate) -> bool {
    use Predicate as P;
    match (a, b) {
        (P::Odd(x), P::Odd(y))
        | (P::AllMixed(x), P::AllMixed(y))
        | (P::ElementarySlice(x), P::ElementarySlice(y))
        | (P::Slice(x), P::Slice(y))
        | (P::SliceExteriorTriplesOnly(x), P::SliceExteriorTriplesOnly(y))
        | (P::SliceWithoutExteriorTriples(x), P::SliceWithoutExteriorTriples(y))
        | (P::HasSliceComponent(x), P::HasSliceComponent(y)) => x != y,
        (P::IterativelyOdd(x), P::IterativelyOdd(y)) => x != y,
        (P::Components(x), P::Components(y)) => x != y,
        (P::GenusBound(x), P::GenusBound(y)) if x.kind == y.kind && x.side != y.side => {
            let (u, l) = if x.side == Side::Upper { (x, y) } else { (y, x) };
            u.value < l.value
        }
        _ => false,
    }
}

fn redundant(b: &Base, fact: &Fact) -> bool {
    if b.set.contains(fact) {
        return true;
    }
    match &fact.predicate {
        Predicate::GenusBound(g) => match (g.side, b.best(&fact.subject, g.kind, g.side)) {
            (Side::Upper, Some(u)) => u <= g.value,
            (Side::Lower, Some(l)) => l >= g.value,
            (Side::Lower, None) => g.value <= 0,
            _ => false,
        },
        _ => false,
    }
}

fn admit(b: &mut Base, fact: Fact) -> Result<(), DeduceError> {
    if let Some(other) = b.facts.iter().find(|o| o.subject == fact.subject && conflict(&o.predicate, &fact.predicate)) {
        return Err(DeduceError::Contradiction {
            subject: fact.subject.clone(),
            first: other.to_string(),
            second: fact.to_string(),
        });
    }
    b.set.insert(fact.clone());
    b.facts.push(fact);
    Ok(())
}

/// The facts derivable from `facts`, in derivation order, each with the
/// rule that produced it. Facts already present are not repeated, so
/// feeding the closure back in yields nothing new.
pub fn deduce(facts: &[Fact]) -> Result<Vec<Deduction>, DeduceError> {
    let mut base = Base {
        facts: Vec::new(),
        set: BTreeSet::new(),
    };
    for fact in facts {
        if !base.set.contains(fact) {
            admit(&mut base, fact.clone())?;
        }
    }
    let mut out = Vec::new();
    loop {
        let mut grew = false;
        for rule in RULES {
            for (fact, premises) in (rule.apply)(&base) {
                if redundant(&base, &fact) {
                    continue;
                }
                admit(&mut base, fact.clone())?;
                out.push(Deduction {
                    fact,
                    rule: rule.id,
                    citation: rule.citation,
                    premises,
                });
                grew = true;
            }
        }
        if !grew {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Predicate as P;

    fn first_about(ds: &[Deduction], fact: &Fact) -> Option<&'static str> {
        ds.iter().find(|d| &d.fact == fact).map(|d| d.rule)
    }

    #[test]
    fn odd_criterion_both_ways() {
        let yes = deduce(&[f("K", P::Odd(true)), f("K", P::ElementarySlice(true))]).unwrap();
        assert_eq!(first_about(&yes, &f("K", P::Slice(true))), Some("odd-criterion"));
        let no = deduce(&[f("K", P::Odd(true)), f("K", P::ElementarySlice(false))]).unwrap();
        assert_eq!(first_about(&no, &f("K", P::Slice(false))), Some("odd-criterion"));
    }

    #[test]
    fn contradictions_are_errors() {
        let e = deduce(&[f("K", P::Slice(true)), f("K", P::Slice(false))]);
        assert!(matches!(e, Err(DeduceError::Contradiction { .. })));
        let e = deduce(&[f("K", P::Odd(true)), f("K", P::ElementarySlice(false)), f("K", P::Slice(true))]);
        assert!(e.is_err());
    }

    #[test]
    fn closure_is_idempotent() {
        let input = vec![
            f("K", P::Components(2)),
            f("K", P::AllMixed(true)),
            f("K", P::ElementarySlice(false)),
        ];
        let ds = deduce(&input).unwrap();
        let mut all = input.clone();
        all.extend(ds.iter().map(|d| d.fact.clone()));
        assert!(deduce(&all).unwrap().is_empty());
    }

    #[test]
    fn smoothing_estimates() {
        let ds = deduce(&[
            f("L", P::GenusBound(GenusBound { kind: GenusKind::Surface, side: Side::Upper, value: 2 })),
            f(
                "M",
                P::Smoothing(SmoothingRecord {
                    from: "L".into(),
                    components_before: 3,
                    components_after: 2,
                    connected_oriented: false,
                }),
            ),
        ])
        .unwrap();
        let want = f("M", P::GenusBound(GenusBound { kind: GenusKind::Surface, side: Side::Upper, value: 1 }));
        assert_eq!(first_about(&ds, &want), Some("genus-estimate"));
    }

    #[test]
    fn raw_facts() {
        let text = r#"[
            {"subject": "K", "predicate": "odd", "value": true, "provenance": "computed"},
            {"subject": "K", "predicate": "slice", "value": "unknown"},
            {"subject": "K", "predicate": "iteratively_odd", "value": 2},
            {"subject": "K", "predicate": "genus_bound", "value": {"kind": "g0", "side": "upper", "value": 3}}
        ]"#;
        let facts = parse_facts(text).unwrap();
        assert_eq!(facts.len(), 3);
        assert!(parse_facts(r#"[{"subject": "K", "predicate": "shiny"}]"#).is_err());
    }
}
