//! Gauss-code presentations of framed 4-graphs.
//!
//! A [`Diagram`] is a list of cyclic words, one per unicursal component.
//! Every crossing label occurs exactly twice across all words; the two
//! passes through a crossing are its two opposite pairs of half-edges, so
//! the framing needs no separate storage.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Default ceiling on the number of chords accepted by enumeration.
pub const DEFAULT_MAX_CHORDS: usize = 6;

/// Token standing for a component without crossings.
pub const EMPTY_CIRCLE: &str = "()";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("empty Gauss code (write \"()\" for a circle without crossings)")]
    Empty,
    #[error("component {0} is empty (write \"()\" for a circle without crossings)")]
    EmptyComponent(usize),
    #[error("\"()\" must stand alone as a component")]
    MisplacedEmptyCircle,
    #[error("label {label} occurs {count} time(s); every crossing must occur exactly twice")]
    Occurrences { label: String, count: usize },
    #[error("unknown crossing {0}")]
    UnknownCrossing(String),
    #[error("expected a 1-component diagram, got {0} components")]
    NotOneComponent(usize),
    #[error("expected a diagram with at least 2 components, got {0}")]
    NotMultiComponent(usize),
    #[error("enumeration of {requested} chords exceeds the bound of {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("a diagram needs at least one component")]
    NoComponents,
}

/// Identity of a crossing inside a diagram. Ids are assigned in
/// first-occurrence order at parse time and survive deletions and
/// smoothings, so a crossing of `project(d)` is still a crossing of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Crossing(pub u32);

impl Crossing {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One pass through a crossing: which word, and where in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub component: usize,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrossingKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    words: Vec<Vec<Crossing>>,
    labels: Vec<String>,
    positions: BTreeMap<Crossing, [Occurrence; 2]>,
}

impl Diagram {
    /// A single circle without crossings.
    pub fn circle() -> Self {
        Diagram {
            words: vec![Vec::new()],
            labels: Vec::new(),
            positions: BTreeMap::new(),
        }
    }

    /// Builds a diagram from token words. Labels are normalized to ids in
    /// first-occurrence order; the tokens themselves are kept for display.
    pub fn from_tokens<S: AsRef<str>>(words: &[Vec<S>]) -> Result<Self, DiagramError> {
        if words.is_empty() {
            return Err(DiagramError::NoComponents);
        }
        let mut ids: HashMap<&str, Crossing> = HashMap::new();
        let mut labels = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(words.len());
        for word in words {
            let mut w = Vec::with_capacity(word.len());
            for tok in word {
                let tok = tok.as_ref();
                if tok == EMPTY_CIRCLE {
                    return Err(DiagramError::MisplacedEmptyCircle);
                }
                let c = *ids.entry(tok).or_insert_with(|| {
                    labels.push(tok.to_string());
                    counts.push(0);
                    Crossing(labels.len() as u32 - 1)
                });
                counts[c.index()] += 1;
                w.push(c);
            }
            out.push(w);
        }
        if let Some(i) = counts.iter().position(|&n| n != 2) {
            return Err(DiagramError::Occurrences {
                label: labels[i].clone(),
                count: counts[i],
            });
        }
        Ok(Self::assemble(out, labels))
    }

    /// Convenience constructor for numeric codes such as `[[1, 2, 1, 2]]`.
    pub fn from_numbers(words: &[Vec<u32>]) -> Result<Self, DiagramError> {
        let toks: Vec<Vec<String>> = words
            .iter()
            .map(|w| w.iter().map(u32::to_string).collect())
            .collect();
        Self::from_tokens(&toks)
    }

    fn assemble(words: Vec<Vec<Crossing>>, labels: Vec<String>) -> Self {
        let mut seen: BTreeMap<Crossing, Vec<Occurrence>> = BTreeMap::new();
        for (component, w) in words.iter().enumerate() {
            for (index, &c) in w.iter().enumerate() {
                seen.entry(c).or_default().push(Occurrence { component, index });
            }
        }
        let positions = seen
            .into_iter()
            .map(|(c, occ)| {
                debug_assert_eq!(occ.len(), 2, "crossing {c:?} must occur twice");
                (c, [occ[0], occ[1]])
            })
            .collect();
        Diagram {
            words,
            labels,
            positions,
        }
    }

    /// Rebuilds with new words over the same label table.
    pub(crate) fn with_words(&self, words: Vec<Vec<Crossing>>) -> Self {
        Self::assemble(words, self.labels.clone())
    }

    pub fn components(&self) -> &[Vec<Crossing>] {
        &self.words
    }

    pub fn component_count(&self) -> usize {
        self.words.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.positions.len()
    }

    pub fn crossings(&self) -> impl Iterator<Item = Crossing> + '_ {
        self.positions.keys().copied()
    }

    pub fn contains(&self, c: Crossing) -> bool {
        self.positions.contains_key(&c)
    }

    pub fn label(&self, c: Crossing) -> &str {
        &self.labels[c.index()]
    }

    /// Looks up a crossing by its printed label.
    pub fn crossing(&self, label: &str) -> Option<Crossing> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Crossing(i as u32))
            .filter(|c| self.contains(*c))
    }

    pub fn occurrences(&self, c: Crossing) -> Option<[Occurrence; 2]> {
        self.positions.get(&c).copied()
    }

    pub(crate) fn require(&self, c: Crossing) -> Result<[Occurrence; 2], DiagramError> {
        self.occurrences(c)
            .ok_or_else(|| DiagramError::UnknownCrossing(format!("#{}", c.0)))
    }

    pub(crate) fn require_one_component(&self) -> Result<&[Crossing], DiagramError> {
        match self.words.as_slice() {
            [w] => Ok(w),
            _ => Err(DiagramError::NotOneComponent(self.words.len())),
        }
    }

    pub fn is_crossing_free(&self) -> bool {
        self.positions.is_empty()
    }

    /// Erases both occurrences of `c`; the word structure is otherwise kept.
    pub fn without(&self, c: Crossing) -> Result<Self, DiagramError> {
        self.require(c)?;
        Ok(self.without_all(|x| x == c))
    }

    pub(crate) fn without_all(&self, drop: impl Fn(Crossing) -> bool) -> Self {
        let words = self
            .words
            .iter()
            .map(|w| w.iter().copied().filter(|&x| !drop(x)).collect())
            .collect();
        self.with_words(words)
    }

    /// Minimal code over rotations and reversals of every word, component
    /// reorderings and relabelings in first-occurrence order.
    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        let variants: Vec<Vec<Vec<Crossing>>> = self.words.iter().map(|w| word_variants(w)).collect();
        let mut best: Option<Vec<Vec<u32>>> = None;
        let k = self.words.len();
        for perm in (0..k).permutations(k) {
            for choice in perm
                .iter()
                .map(|&i| variants[i].iter())
                .multi_cartesian_product()
            {
                let better = match &best {
                    None => true,
                    Some(b) => compare_relabeled(&choice, b, self.labels.len()) == Ordering::Less,
                };
                if better {
                    best = Some(relabel(&choice, self.labels.len()));
                }
            }
        }
        best.unwrap_or_else(|| vec![Vec::new()])
    }

    pub fn canonical_code(&self) -> String {
        format_key(&self.canonical_key())
    }

    /// The canonical representative, labelled 1..n.
    pub fn canonical(&self) -> Self {
        Diagram::from_numbers(&self.canonical_key()).expect("canonical key is a valid code")
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.crossing_count() == other.crossing_count()
            && self.component_count() == other.component_count()
            && self.canonical_key() == other.canonical_key()
    }

    /// True when this diagram, read as a numeric code, already is its own
    /// canonical key. Cheaper than computing the key: gives up on the
    /// first smaller variant.
    fn is_canonical_numbering(&self, key: &[Vec<u32>]) -> bool {
        let variants: Vec<Vec<Vec<Crossing>>> = self.words.iter().map(|w| word_variants(w)).collect();
        let k = self.words.len();
        for perm in (0..k).permutations(k) {
            for choice in perm
                .iter()
                .map(|&i| variants[i].iter())
                .multi_cartesian_product()
            {
                if compare_relabeled(&choice, key, self.labels.len()) == Ordering::Less {
                    return false;
                }
            }
        }
        true
    }
}

fn word_variants(w: &[Crossing]) -> Vec<Vec<Crossing>> {
    if w.is_empty() {
        return vec![Vec::new()];
    }
    let n = w.len();
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..n {
        let rot: Vec<Crossing> = w[r..].iter().chain(&w[..r]).copied().collect();
        let mut rev = rot.clone();
        rev.reverse();
        out.push(rot);
        out.push(rev);
    }
    out.sort();
    out.dedup();
    out
}

fn relabel(words: &[&Vec<Crossing>], label_count: usize) -> Vec<Vec<u32>> {
    let mut map = vec![0u32; label_count];
    let mut next = 0u32;
    words
        .iter()
        .map(|w| {
            w.iter()
                .map(|c| {
                    let slot = &mut map[c.index()];
                    if *slot == 0 {
                        next += 1;
                        *slot = next;
                    }
                    *slot
                })
                .collect()
        })
        .collect()
}

/// Compares the relabeling of `words` against `target` lexicographically,
/// stopping at the first difference.
fn compare_relabeled(words: &[&Vec<Crossing>], target: &[Vec<u32>], label_count: usize) -> Ordering {
    let mut map = vec![0u32; label_count];
    let mut next = 0u32;
    for (w, t) in words.iter().zip(target) {
        for (i, c) in w.iter().enumerate() {
            let Some(&tv) = t.get(i) else {
                return Ordering::Greater;
            };
            let slot = &mut map[c.index()];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            match (*slot).cmp(&tv) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        if w.len() < t.len() {
            return Ordering::Less;
        }
    }
    words.len().cmp(&target.len())
}

fn format_key(key: &[Vec<u32>]) -> String {
    key.iter()
        .map(|w| {
            if w.is_empty() {
                EMPTY_CIRCLE.to_string()
            } else {
                w.iter().join(" ")
            }
        })
        .join(" / ")
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            if w.is_empty() {
                f.write_str(EMPTY_CIRCLE)?;
            } else {
                let s = w.iter().map(|c| self.label(*c)).join(" ");
                f.write_str(&s)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

/// Parses whitespace-separated labels, components separated by `/`, with
/// `()` for a component without crossings.
pub fn parse_gauss_code(text: &str) -> Result<Diagram, DiagramError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(DiagramError::Empty);
    }
    let mut words: Vec<Vec<&str>> = Vec::new();
    for (i, part) in text.split('/').enumerate() {
        let part = part.trim();
        if part == EMPTY_CIRCLE {
            words.push(Vec::new());
            continue;
        }
        let toks: Vec<&str> = part.split_whitespace().collect();
        if toks.is_empty() {
            return Err(DiagramError::EmptyComponent(i));
        }
        words.push(toks);
    }
    Diagram::from_tokens(&words)
}

pub fn serialize(d: &Diagram) -> String {
    d.to_string()
}

/// Symmetric 0/1 linking matrix of a 1-component diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacementMatrix {
    crossings: Vec<Crossing>,
    linked: Vec<Vec<bool>>,
}

impl InterlacementMatrix {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    fn idx(&self, c: Crossing) -> Option<usize> {
        self.crossings.binary_search(&c).ok()
    }

    pub fn linked(&self, a: Crossing, b: Crossing) -> bool {
        match (self.idx(a), self.idx(b)) {
            (Some(i), Some(j)) => self.linked[i][j],
            _ => false,
        }
    }

    /// How many chords `c` is linked with; `None` for an unknown crossing.
    pub fn row_sum(&self, c: Crossing) -> Option<usize> {
        self.idx(c)
            .map(|i| self.linked[i].iter().filter(|&&b| b).count())
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.linked
            .iter()
            .map(|r| r.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }
}

pub fn interlacement(d: &Diagram) -> Result<InterlacementMatrix, DiagramError> {
    d.require_one_component()?;
    let crossings: Vec<Crossing> = d.crossings().collect();
    let span: Vec<(usize, usize)> = crossings
        .iter()
        .map(|&c| {
            let [a, b] = d.positions[&c];
            (a.index, b.index)
        })
        .collect();
    let inside = |(lo, hi): (usize, usize), p: usize| lo < p && p < hi;
    let n = crossings.len();
    let mut linked = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let (y1, y2) = span[j];
                linked[i][j] = inside(span[i], y1) != inside(span[i], y2);
            }
        }
    }
    Ok(InterlacementMatrix { crossings, linked })
}

/// Number of unicursal components, and which components each crossing
/// touches (one entry for pure crossings, two for mixed ones).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicursalComponents {
    pub count: usize,
    pub touching: BTreeMap<Crossing, Vec<usize>>,
}

pub fn unicursal_components(d: &Diagram) -> UnicursalComponents {
    let touching = d
        .positions
        .iter()
        .map(|(&c, [a, b])| {
            let mut comps = vec![a.component, b.component];
            comps.dedup();
            (c, comps)
        })
        .collect();
    UnicursalComponents {
        count: d.component_count(),
        touching,
    }
}

pub fn crossing_kind(d: &Diagram, c: Crossing) -> Result<CrossingKind, DiagramError> {
    let [a, b] = d.require(c)?;
    Ok(if a.component == b.component {
        CrossingKind::Pure
    } else {
        CrossingKind::Mixed
    })
}

pub fn canonical_code(d: &Diagram) -> String {
    d.canonical_code()
}

/// Every word over `n` labels in which each label occurs twice and labels
/// first appear in increasing order. There are (2n-1)!! of them.
fn double_occurrence_sequences(n: usize) -> Vec<Vec<u32>> {
    fn go(seq: &mut Vec<u32>, counts: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * n {
            out.push(seq.clone());
            return;
        }
        let opened = counts.len();
        for l in 0..opened {
            if counts[l] == 1 {
                counts[l] = 2;
                seq.push(l as u32 + 1);
                go(seq, counts, n, out);
                seq.pop();
                counts[l] = 1;
            }
        }
        if opened < n {
            counts.push(1);
            seq.push(opened as u32 + 1);
            go(seq, counts, n, out);
            seq.pop();
            counts.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(2 * n), &mut Vec::new(), n, &mut out);
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Isomorphism classes of diagrams with exactly `chords` crossings and
/// `components` components, one canonical representative each, in
/// increasing canonical-key order.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    bound: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            bound: DEFAULT_MAX_CHORDS,
        }
    }
}

impl Enumerator {
    pub fn with_bound(bound: usize) -> Self {
        Enumerator { bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn exact(&self, chords: usize, components: usize) -> Result<Vec<Diagram>, DiagramError> {
        if chords > self.bound {
            return Err(DiagramError::BoundExceeded {
                requested: chords,
                bound: self.bound,
            });
        }
        if components == 0 {
            return Err(DiagramError::NoComponents);
        }
        let mut found: Vec<(Vec<Vec<u32>>, Diagram)> = Vec::new();
        let seqs = double_occurrence_sequences(chords);
        for split in compositions(2 * chords, components) {
            for seq in &seqs {
                let mut words = Vec::with_capacity(components);
                let mut at = 0;
                for &len in &split {
                    words.push(seq[at..at + len].to_vec());
                    at += len;
                }
                let d = Diagram::from_numbers(&words).expect("generated codes are valid");
                if d.is_canonical_numbering(&words) {
                    found.push((words, d));
                }
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(found.into_iter().map(|(_, d)| d).collect())
    }

    /// All classes with at most `max_chords` crossings, by chord count.
    pub fn up_to(&self, max_chords: usize, components: usize) -> Result<Vec<Diagram>, DiagramError> {
        let mut all = Vec::new();
        for n in 0..=max_chords {
            all.extend(self.exact(n, components)?);
        }
        Ok(all)
    }
}

/// Diagrams with exactly `chords` crossings under the default bound.
pub fn enumerate_diagrams(chords: usize, components: usize) -> Result<Vec<Diagram>, DiagramError> {
    Enumerator::default().exact(chords, components)
}

/// Diagrams with at most `max_chords` crossings under the default bound.
pub fn enumerate_up_to(max_chords: usize, components: usize) -> Result<Vec<Diagram>, DiagramError> {
    Enumerator::default().up_to(max_chords, components)
}
