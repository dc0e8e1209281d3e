//! The two resolutions of a crossing, and chord deletion.

use std::fmt;
use std::str::FromStr;

use crate::diagram::{Crossing, Diagram, DiagramError};

/// The two framing-respecting resolutions of a crossing.
///
/// On a pure crossing, `Split` cuts the word into the two segments between
/// the occurrences, while `Reverse` keeps one word and reverses one of the
/// segments. On a mixed crossing both choices merge the two words; `Split`
/// concatenates them as read, `Reverse` reverses the second one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SmoothingChoice {
    Split,
    Reverse,
}

impl SmoothingChoice {
    pub const BOTH: [SmoothingChoice; 2] = [SmoothingChoice::Split, SmoothingChoice::Reverse];

    pub fn other(self) -> Self {
        match self {
            SmoothingChoice::Split => SmoothingChoice::Reverse,
            SmoothingChoice::Reverse => SmoothingChoice::Split,
        }
    }
}

impl fmt::Display for SmoothingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmoothingChoice::Split => "split",
            SmoothingChoice::Reverse => "reverse",
        })
    }
}

impl FromStr for SmoothingChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "split" => Ok(SmoothingChoice::Split),
            "reverse" => Ok(SmoothingChoice::Reverse),
            other => Err(format!("unknown smoothing choice {other:?} (expected split or reverse)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmoothingKind {
    /// The number of unicursal components does not grow.
    Good,
    Bad,
}

impl fmt::Display for SmoothingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmoothingKind::Good => "good",
            SmoothingKind::Bad => "bad",
        })
    }
}

pub fn smooth(d: &Diagram, c: Crossing, choice: SmoothingChoice) -> Result<Diagram, DiagramError> {
    let [a, b] = d.require(c)?;
    let mut words: Vec<Vec<Crossing>> = d.components().to_vec();
    if a.component == b.component {
        let w = &words[a.component];
        let (i, j) = (a.index, b.index);
        let inner: Vec<Crossing> = w[i + 1..j].to_vec();
        let outer: Vec<Crossing> = w[j + 1..].iter().chain(&w[..i]).copied().collect();
        match choice {
            SmoothingChoice::Split => {
                words[a.component] = inner;
                words.insert(a.component + 1, outer);
            }
            SmoothingChoice::Reverse => {
                let mut merged = inner;
                merged.extend(outer.into_iter().rev());
                words[a.component] = merged;
            }
        }
    } else {
        let open = |occ: crate::diagram::Occurrence| -> Vec<Crossing> {
            let w = &words[occ.component];
            w[occ.index + 1..].iter().chain(&w[..occ.index]).copied().collect()
        };
        let (first, second) = if a.component < b.component { (a, b) } else { (b, a) };
        let mut merged = open(first);
        let mut tail = open(second);
        if choice == SmoothingChoice::Reverse {
            tail.reverse();
        }
        merged.extend(tail);
        words[first.component] = merged;
        words.remove(second.component);
    }
    Ok(d.with_words(words))
}

/// Erases both occurrences of `c`; the number of components is unchanged.
pub fn delete_chord(d: &Diagram, c: Crossing) -> Result<Diagram, DiagramError> {
    d.without(c)
}

pub fn classify_smoothing(
    d: &Diagram,
    c: Crossing,
    choice: SmoothingChoice,
) -> Result<SmoothingKind, DiagramError> {
    let after = smooth(d, c, choice)?;
    Ok(if after.component_count() <= d.component_count() {
        SmoothingKind::Good
    } else {
        SmoothingKind::Bad
    })
}

/// The resolution of `c` that keeps the number of components from growing,
/// preferring `Reverse` when both do.
pub fn good_choice(d: &Diagram, c: Crossing) -> Result<SmoothingChoice, DiagramError> {
    for choice in [SmoothingChoice::Reverse, SmoothingChoice::Split] {
        if classify_smoothing(d, c, choice)? == SmoothingKind::Good {
            return Ok(choice);
        }
    }
    unreachable!("a reverse smoothing never adds components")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gauss_code;

    fn d(s: &str) -> Diagram {
        parse_gauss_code(s).unwrap()
    }

    fn at(s: &str, l: &str, choice: SmoothingChoice) -> String {
        let x = d(s);
        smooth(&x, x.crossing(l).unwrap(), choice).unwrap().to_string()
    }

    #[test]
    fn smooth_examples() {
        assert_eq!(at("1 2 1 2", "1", SmoothingChoice::Split), "2 / 2");
        assert_eq!(at("1 2 1 2", "1", SmoothingChoice::Reverse), "2 2");
        assert_eq!(at("1 1", "1", SmoothingChoice::Split), "() / ()");
        assert_eq!(at("1 1", "1", SmoothingChoice::Reverse), "()");
    }

    #[test]
    fn reverse_flips_the_outer_segment() {
        // inner "2 3", outer "4 2 3 4" reversed
        assert_eq!(at("1 2 3 1 4 2 3 4", "1", SmoothingChoice::Reverse), "2 3 4 3 2 4");
        assert_eq!(at("1 2 3 1 4 2 3 4", "1", SmoothingChoice::Split), "2 3 / 4 2 3 4");
    }

    #[test]
    fn mixed_crossings_merge() {
        assert_eq!(at("1 2 / 1 2", "1", SmoothingChoice::Split), "2 2");
        assert_eq!(at("1 2 / 1 2", "1", SmoothingChoice::Reverse), "2 2");
        assert_eq!(at("1 2 3 / 1 3 2", "1", SmoothingChoice::Split), "2 3 3 2");
        assert_eq!(at("1 2 3 / 1 3 2", "1", SmoothingChoice::Reverse), "2 3 2 3");
        assert_eq!(at("() / 1 1 2 / 2 3 3", "2", SmoothingChoice::Split), "() / 1 1 3 3");
    }

    #[test]
    fn delete_examples() {
        let x = d("1 2 1 2");
        assert_eq!(delete_chord(&x, x.crossing("1").unwrap()).unwrap().to_string(), "2 2");
        let y = d("1 1");
        assert_eq!(delete_chord(&y, y.crossing("1").unwrap()).unwrap().to_string(), "()");
        let z = d("1 2 / 1 2");
        assert_eq!(delete_chord(&z, z.crossing("2").unwrap()).unwrap().to_string(), "1 / 1");
        assert!(delete_chord(&z, Crossing(5)).is_err());
    }

    #[test]
    fn classification_examples() {
        let x = d("1 2 1 2");
        let one = x.crossing("1").unwrap();
        assert_eq!(classify_smoothing(&x, one, SmoothingChoice::Reverse), Ok(SmoothingKind::Good));
        assert_eq!(classify_smoothing(&x, one, SmoothingChoice::Split), Ok(SmoothingKind::Bad));
        let y = d("1 2 / 1 2");
        for choice in SmoothingChoice::BOTH {
            assert_eq!(
                classify_smoothing(&y, y.crossing("1").unwrap(), choice),
                Ok(SmoothingKind::Good)
            );
        }
        assert_eq!(good_choice(&x, one), Ok(SmoothingChoice::Reverse));
    }
}
