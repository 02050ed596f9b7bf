//! Dynkin types: formal sums of simple root-system symbols A_l, D_m, E_n.
//!
//! Components are kept in a fixed canonical order (family A before D before
//! E, index descending within a family), which pins down the basis order of
//! the associated root lattices and makes diagram-symmetry bookkeeping
//! deterministic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

/// One simple component, e.g. `A16` or `D5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub family: Family,
    pub index: u32,
}

impl Component {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(Component { family, index })
        } else {
            Err(Error::InvalidDynkin(format!("{family}{index}")))
        }
    }

    pub fn rank(&self) -> u32 {
        self.index
    }

    /// Number of roots of the component's root system.
    pub fn root_count(&self) -> u64 {
        let l = self.index as u64;
        match self.family {
            Family::A => l * (l + 1),
            Family::D => 2 * l * (l - 1),
            Family::E => match self.index {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// Dynkin diagram edges in Bourbaki node numbering, zero-based.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.index as usize;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                // Chain on nodes 0..n-2, fork nodes n-2 and n-1 both joined
                // to node n-3.
                let mut e: Vec<(usize, usize)> = (0..n.saturating_sub(3))
                    .map(|i| (i, i + 1))
                    .collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // Branch node 1 hangs off node 3 of the chain 0-2-3-4-5(-6)(-7).
                let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
                if n >= 7 {
                    e.push((5, 6));
                }
                if n == 8 {
                    e.push((6, 7));
                }
                e
            }
        }
    }

    /// Positive-definite Cartan matrix in the Bourbaki node order.
    pub fn cartan(&self) -> IntMatrix {
        let n = self.index as usize;
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(2));
        }
        for (i, j) in self.edges() {
            m.set(i, j, BigInt::from(-1));
            m.set(j, i, BigInt::from(-1));
        }
        m
    }

    /// Generators of the diagram automorphism group, as permutations of the
    /// component's nodes. A_1, E_7 and E_8 have none; D_4 gets the full
    /// triality S_3 via two transpositions of its outer nodes.
    pub fn diagram_automorphism_generators(&self) -> Vec<Vec<usize>> {
        let n = self.index as usize;
        match self.family {
            Family::A if n >= 2 => vec![(0..n).rev().collect()],
            Family::A => vec![],
            Family::D if n == 4 => {
                vec![transposition(n, 2, 3), transposition(n, 0, 2)]
            }
            Family::D => vec![transposition(n, n - 2, n - 1)],
            Family::E if n == 6 => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(0, 5);
                p.swap(2, 4);
                vec![p]
            }
            Family::E => vec![],
        }
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

/// A Dynkin type: a multiset of simple components, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinType {
    components: Vec<Component>,
}

impl DynkinType {
    pub fn new(mut components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DynkinParse("empty type".to_owned()));
        }
        for c in &components {
            Component::new(c.family, c.index)?;
        }
        components.sort_by_key(|c| (c.family, std::cmp::Reverse(c.index)));
        Ok(DynkinType { components })
    }

    /// Parse "A16+A2+A1" style text; "2A7" abbreviates two A7 components.
    /// Case-insensitive and whitespace-tolerant.
    pub fn parse(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for raw in s.split('+') {
            let piece: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if piece.is_empty() {
                return Err(Error::DynkinParse(s.to_owned()));
            }
            let bytes = piece.as_bytes();
            let mut pos = 0;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mult: u32 = if pos == 0 {
                1
            } else {
                piece[..pos].parse().map_err(|_| Error::DynkinParse(s.to_owned()))?
            };
            if mult == 0 || pos >= bytes.len() {
                return Err(Error::DynkinParse(s.to_owned()));
            }
            let family = match bytes[pos].to_ascii_uppercase() {
                b'A' => Family::A,
                b'D' => Family::D,
                b'E' => Family::E,
                _ => return Err(Error::DynkinParse(s.to_owned())),
            };
            let index: u32 = piece[pos + 1..]
                .parse()
                .map_err(|_| Error::DynkinParse(s.to_owned()))?;
            let c = Component::new(family, index)?;
            for _ in 0..mult {
                components.push(c);
            }
        }
        DynkinType::new(components)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn root_count(&self) -> u64 {
        self.components.iter().map(|c| c.root_count()).sum()
    }

    /// Canonical text form, multiplicities collapsed: "A16+A2+A1", "2A7+D5".
    pub fn canonical_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut mult = 1;
            while i + mult < self.components.len() && self.components[i + mult] == c {
                mult += 1;
            }
            if mult == 1 {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{mult}{c}"));
            }
            i += mult;
        }
        parts.join("+")
    }

    /// Offset of each component's node block in the concatenated basis.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            offsets.push(acc);
            acc += c.rank() as usize;
        }
        offsets
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DynkinType::parse(s)
    }
}
