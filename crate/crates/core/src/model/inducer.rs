use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unordered pair `{p(u,i), p(v,j)}` of distinct vertices at distinct
/// positions, stored with `i < j`. Labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Inducer {
    pub u: usize,
    pub i: usize,
    pub v: usize,
    pub j: usize,
}

impl Inducer {
    /// Canonicalizes so that the first position is the smaller one.
    pub fn new(u: usize, i: usize, v: usize, j: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidInducer { u, i, v, j, reason };
        if u == v {
            return Err(invalid("vertices must differ"));
        }
        if i == j {
            return Err(invalid("positions must differ"));
        }
        Ok(if i < j {
            Self { u, i, v, j }
        } else {
            Self { u: v, i: j, v: u, j: i }
        })
    }

    /// As [`Inducer::new`], also requiring every label to lie in `1..=n`.
    pub fn checked(n: usize, u: usize, i: usize, v: usize, j: usize) -> Result<Self> {
        if [u, i, v, j].iter().any(|&x| x == 0 || x > n) {
            return Err(Error::InvalidInducer {
                u,
                i,
                v,
                j,
                reason: "label outside 1..=n",
            });
        }
        Self::new(u, i, v, j)
    }

    /// The two `(vertex, position)` pins.
    pub fn pins(&self) -> [(usize, usize); 2] {
        [(self.u, self.i), (self.v, self.j)]
    }
}

impl fmt::Display for Inducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{},{}}}", self.u, self.i, self.v, self.j)
    }
}

/// `n^2 (n-1)^2 / 2`, the number of canonical inducers.
pub fn total_inducers(n: usize) -> usize {
    n * n * (n.saturating_sub(1)) * (n.saturating_sub(1)) / 2
}

/// A set of canonical inducers, iterated in `(u, i, v, j)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionSet {
    members: BTreeSet<Inducer>,
}

impl ExclusionSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true when the inducer was not already present.
    pub fn insert(&mut self, ind: Inducer) -> bool {
        self.members.insert(ind)
    }

    pub fn contains(&self, ind: &Inducer) -> bool {
        self.members.contains(ind)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Inducer> + '_ {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.members.union(&other.members).copied().collect()
    }

    /// Every canonical inducer for `n`.
    pub fn all(n: usize) -> Self {
        let mut s = Self::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for u in 1..=n {
                    for v in (1..=n).filter(|&v| v != u) {
                        s.insert(Inducer { u, i, v, j });
                    }
                }
            }
        }
        s
    }

    /// One `u i v j` line per member.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ind in &self.members {
            out.push_str(&format!("{} {} {} {}\n", ind.u, ind.i, ind.v, ind.j));
        }
        out
    }

    /// Reads `u i v j` lines; blank lines and `#` comments are skipped and
    /// non-canonical orientations are accepted.
    pub fn from_text(text: &str, n: usize) -> Result<Self> {
        let mut s = Self::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: k + 1, message };
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| parse_err(format!("expected integer, found `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let [u, i, v, j] = nums[..] else {
                return Err(parse_err(format!("expected `u i v j`, found `{line}`")));
            };
            s.insert(Inducer::checked(n, u, i, v, j).map_err(|e| parse_err(e.to_string()))?);
        }
        Ok(s)
    }
}

impl FromIterator<Inducer> for ExclusionSet {
    fn from_iter<T: IntoIterator<Item = Inducer>>(iter: T) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl Extend<Inducer> for ExclusionSet {
    fn extend<T: IntoIterator<Item = Inducer>>(&mut self, iter: T) {
        self.members.extend(iter)
    }
}

impl<'a> IntoIterator for &'a ExclusionSet {
    type Item = &'a Inducer;
    type IntoIter = std::collections::btree_set::Iter<'a, Inducer>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
