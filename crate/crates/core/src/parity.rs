//! Gaussian parity, the parity projection and its iteration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diagram::{crossing_kind, interlacement, Crossing, CrossingKind, Diagram, DiagramError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        u8::from(self.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity of every crossing of a 1-component diagram.
pub fn parities(d: &Diagram) -> Result<BTreeMap<Crossing, Parity>, DiagramError> {
    let m = interlacement(d)?;
    Ok(m.crossings()
        .iter()
        .map(|&c| (c, Parity::from_count(m.row_sum(c).unwrap_or(0))))
        .collect())
}

/// Odd iff the chord of `c` is linked with an odd number of chords.
pub fn gaussian_parity(d: &Diagram, c: Crossing) -> Result<Parity, DiagramError> {
    d.require_one_component()?;
    d.require(c)?;
    let m = interlacement(d)?;
    Ok(Parity::from_count(m.row_sum(c).unwrap_or(0)))
}

/// Parity for links: mixed crossings are odd, pure ones even.
pub fn component_parity(d: &Diagram, c: Crossing) -> Result<Parity, DiagramError> {
    if d.component_count() < 2 {
        return Err(DiagramError::NotMultiComponent(d.component_count()));
    }
    Ok(match crossing_kind(d, c)? {
        CrossingKind::Mixed => Parity::Odd,
        CrossingKind::Pure => Parity::Even,
    })
}

/// Every crossing odd; vacuously true for the crossing-free circle.
pub fn is_odd(d: &Diagram) -> Result<bool, DiagramError> {
    Ok(parities(d)?.values().all(|p| p.is_odd()))
}

/// Deletes every odd crossing.
pub fn project(d: &Diagram) -> Result<Diagram, DiagramError> {
    let p = parities(d)?;
    Ok(d.without_all(|c| p[&c].is_odd()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CrossingOrder {
    /// Present in level `k`, deleted on the way to level `k + 1`.
    Finite(usize),
    StablyEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    CrossingFree,
    Fixpoint,
}

/// The levels `d = Γ⁰, Γ¹, …, Γᵐ`. The last level is either crossing-free
/// or a fixpoint of the projection; the fixpoint is not repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTower {
    levels: Vec<Diagram>,
    orders: BTreeMap<Crossing, CrossingOrder>,
    terminal: Terminal,
}

impl ParityTower {
    pub fn levels(&self) -> &[Diagram] {
        &self.levels
    }

    pub fn orders(&self) -> &BTreeMap<Crossing, CrossingOrder> {
        &self.orders
    }

    pub fn order(&self, c: Crossing) -> Option<CrossingOrder> {
        self.orders.get(&c).copied()
    }

    pub fn terminal(&self) -> Terminal {
        self.terminal
    }

    pub fn top(&self) -> &Diagram {
        self.levels.last().expect("a tower has at least one level")
    }

    /// Smallest positive `k` with `Γᵏ` crossing-free, if there is one.
    pub fn iterated_odd_order(&self) -> Option<usize> {
        match self.terminal {
            Terminal::CrossingFree => Some((self.levels.len() - 1).max(1)),
            Terminal::Fixpoint => None,
        }
    }

    pub fn stably_even(&self) -> BTreeSet<Crossing> {
        match self.terminal {
            Terminal::CrossingFree => BTreeSet::new(),
            Terminal::Fixpoint => self.top().crossings().collect(),
        }
    }
}

pub fn tower(d: &Diagram) -> Result<ParityTower, DiagramError> {
    d.require_one_component()?;
    let mut levels = vec![d.clone()];
    let mut orders = BTreeMap::new();
    loop {
        let cur = levels.last().unwrap();
        if cur.is_crossing_free() {
            return Ok(ParityTower {
                levels,
                orders,
                terminal: Terminal::CrossingFree,
            });
        }
        let p = parities(cur)?;
        let level = levels.len() - 1;
        let odd: Vec<Crossing> = p.iter().filter(|(_, v)| v.is_odd()).map(|(c, _)| *c).collect();
        if odd.is_empty() {
            for c in cur.crossings() {
                orders.insert(c, CrossingOrder::StablyEven);
            }
            return Ok(ParityTower {
                levels,
                orders,
                terminal: Terminal::Fixpoint,
            });
        }
        for &c in &odd {
            orders.insert(c, CrossingOrder::Finite(level));
        }
        let next = cur.without_all(|c| p[&c].is_odd());
        levels.push(next);
    }
}

/// `Some(k)` with the minimal order when the tower ends crossing-free.
pub fn is_iteratively_odd(d: &Diagram) -> Result<Option<usize>, DiagramError> {
    Ok(tower(d)?.iterated_odd_order())
}

pub fn stably_even_set(d: &Diagram) -> Result<BTreeSet<Crossing>, DiagramError> {
    Ok(tower(d)?.stably_even())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gauss_code;

    fn d(s: &str) -> Diagram {
        parse_gauss_code(s).unwrap()
    }

    fn c(d: &Diagram, l: &str) -> Crossing {
        d.crossing(l).unwrap()
    }

    #[test]
    fn gaussian_parity_examples() {
        let a = d("1 2 1 2");
        assert_eq!(gaussian_parity(&a, c(&a, "1")), Ok(Parity::Odd));
        let b = d("1 1");
        assert_eq!(gaussian_parity(&b, c(&b, "1")), Ok(Parity::Even));
        let t = d("1 2 3 1 2 3");
        assert_eq!(gaussian_parity(&t, c(&t, "2")), Ok(Parity::Even));
        assert!(gaussian_parity(&d("1 2 / 1 2"), Crossing(0)).is_err());
        assert!(gaussian_parity(&a, Crossing(7)).is_err());
    }

    #[test]
    fn component_parity_examples() {
        let a = d("1 2 / 1 2");
        assert_eq!(component_parity(&a, c(&a, "1")), Ok(Parity::Odd));
        let b = d("1 1 2 / 2");
        assert_eq!(component_parity(&b, c(&b, "1")), Ok(Parity::Even));
        assert_eq!(component_parity(&b, c(&b, "2")), Ok(Parity::Odd));
        assert_eq!(
            component_parity(&d("1 1"), Crossing(0)),
            Err(DiagramError::NotMultiComponent(1))
        );
    }

    #[test]
    fn oddness_and_projection() {
        assert_eq!(is_odd(&d("1 2 1 2")), Ok(true));
        assert_eq!(is_odd(&d("1 1")), Ok(false));
        assert_eq!(is_odd(&d("()")), Ok(true));
        assert_eq!(project(&d("1 2 1 2")).unwrap().to_string(), "()");
        assert_eq!(project(&d("1 1")).unwrap().to_string(), "1 1");
        assert_eq!(project(&d("1 2 1 3 2 4 3 4")).unwrap().to_string(), "2 3 2 3");
        assert!(project(&d("1 1 / 2 2")).is_err());
    }

    #[test]
    fn tower_examples() {
        let a = d("1 2 1 2");
        let t = tower(&a).unwrap();
        let levels: Vec<String> = t.levels().iter().map(|l| l.to_string()).collect();
        assert_eq!(levels, vec!["1 2 1 2", "()"]);
        assert_eq!(t.order(c(&a, "1")), Some(CrossingOrder::Finite(0)));
        assert_eq!(t.order(c(&a, "2")), Some(CrossingOrder::Finite(0)));
        assert_eq!(t.terminal(), Terminal::CrossingFree);

        let b = d("1 2 1 3 2 4 3 4");
        let t = tower(&b).unwrap();
        assert_eq!(t.levels().len(), 3);
        assert!(t.top().is_crossing_free());
        for (l, k) in [("1", 0), ("4", 0), ("2", 1), ("3", 1)] {
            assert_eq!(t.order(c(&b, l)), Some(CrossingOrder::Finite(k)), "crossing {l}");
        }

        let e = d("1 2 3 1 2 3");
        let t = tower(&e).unwrap();
        assert_eq!(t.levels().len(), 1);
        assert_eq!(t.terminal(), Terminal::Fixpoint);
        assert!(t.orders().values().all(|o| *o == CrossingOrder::StablyEven));
    }

    #[test]
    fn iterated_oddness_examples() {
        assert_eq!(is_iteratively_odd(&d("1 2 1 2")), Ok(Some(1)));
        assert_eq!(is_iteratively_odd(&d("1 2 1 3 2 4 3 4")), Ok(Some(2)));
        assert_eq!(is_iteratively_odd(&d("1 1")), Ok(None));
        assert_eq!(is_iteratively_odd(&d("()")), Ok(Some(1)));
    }

    #[test]
    fn stably_even_examples() {
        let e = d("1 2 3 1 2 3");
        assert_eq!(stably_even_set(&e).unwrap().len(), 3);
        let f = d("1 2 1 3 2 3");
        assert_eq!(stably_even_set(&f).unwrap(), BTreeSet::from([c(&f, "2")]));
        assert!(stably_even_set(&d("1 2 1 2")).unwrap().is_empty());
    }
}
