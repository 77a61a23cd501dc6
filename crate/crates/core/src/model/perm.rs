use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::inducer::Inducer;

/// `perm[u-1] = i` means the `i`-th arc of the cycle enters vertex `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PermutationMatrix {
    perm: Vec<usize>,
}

impl PermutationMatrix {
    /// Builds from 1-based positions, rejecting anything that is not a
    /// bijection of `1..=n`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &i in &perm {
            if i == 0 || i > n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{perm:?} is not a bijection of 1..={n}"
                )));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Position of vertex `u`.
    pub fn position(&self, u: usize) -> usize {
        self.perm[u - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Vertices in cycle order: entry `k` is entered by arc `k + 1`.
    pub fn vertex_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (u, &i) in self.perm.iter().enumerate() {
            order[i - 1] = u + 1;
        }
        order
    }

    /// The `n(n-1)/2` inducers pinning every vertex to its position.
    pub fn inducers(&self) -> Vec<Inducer> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 1..=n {
            for v in u + 1..=n {
                out.push(Inducer::new(u, self.position(u), v, self.position(v)).expect("bijection"));
            }
        }
        out.sort();
        out
    }

    pub fn covers(&self, ind: &Inducer) -> bool {
        self.position(ind.u) == ind.i && self.position(ind.v) == ind.j
    }
}

impl TryFrom<Vec<usize>> for PermutationMatrix {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PermutationMatrix> for Vec<usize> {
    fn from(p: PermutationMatrix) -> Self {
        p.perm
    }
}

impl fmt::Display for PermutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cover of a permutation, in canonical order.
pub fn inducers_of(p: &PermutationMatrix) -> Vec<Inducer> {
    p.inducers()
}

/// Encodes a closed walk `n+1 -> ... -> n+1` visiting every vertex once.
pub fn cycle_to_permutation(cycle: &[usize], n: usize) -> Result<PermutationMatrix> {
    let start = n + 1;
    let bad = |why: &str| Error::NotHamiltonCycle(format!("{cycle:?}: {why}"));
    if cycle.len() != n + 2 {
        return Err(bad("expected n+2 entries (start repeated at the end)"));
    }
    if cycle[0] != start || cycle[n + 1] != start {
        return Err(bad("must start and end at vertex n+1"));
    }
    let mut perm = vec![0; n];
    for (k, &u) in cycle[1..=n].iter().enumerate() {
        if u == 0 || u > n {
            return Err(bad("interior vertex outside 1..=n"));
        }
        if perm[u - 1] != 0 {
            return Err(bad("vertex repeated"));
        }
        perm[u - 1] = k + 1;
    }
    PermutationMatrix::new(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cover() {
        let ind = inducers_of(&PermutationMatrix::identity(3));
        let expected: Vec<Inducer> = [(1, 1, 2, 2), (1, 1, 3, 3), (2, 2, 3, 3)]
            .iter()
            .map(|&(u, i, v, j)| Inducer::new(u, i, v, j).unwrap())
            .collect();
        assert_eq!(ind, expected);
    }

    #[test]
    fn rotated_cover() {
        let p = PermutationMatrix::new(vec![2, 3, 1]).unwrap();
        let mut expected: Vec<Inducer> = [(1, 2, 2, 3), (1, 2, 3, 1), (2, 3, 3, 1)]
            .iter()
            .map(|&(u, i, v, j)| Inducer::new(u, i, v, j).unwrap())
            .collect();
        expected.sort();
        assert_eq!(inducers_of(&p), expected);
        assert_eq!(inducers_of(&PermutationMatrix::new(vec![4, 2, 1, 3]).unwrap()).len(), 6);
    }

    #[test]
    fn cycles_encode() {
        assert_eq!(
            cycle_to_permutation(&[4, 1, 2, 3, 4], 3).unwrap(),
            PermutationMatrix::identity(3)
        );
        let rev = cycle_to_permutation(&[4, 3, 2, 1, 4], 3).unwrap();
        assert_eq!(rev.as_slice(), &[3, 2, 1]);
        assert_eq!(rev.vertex_order(), vec![3, 2, 1]);
        assert!(cycle_to_permutation(&[4, 1, 1, 3, 4], 3).is_err());
        assert!(cycle_to_permutation(&[4, 1, 2, 4], 3).is_err());
        assert!(cycle_to_permutation(&[1, 4, 2, 3, 1], 3).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(PermutationMatrix::new(vec![1, 1, 2]).is_err());
        assert!(PermutationMatrix::new(vec![0, 1, 2]).is_err());
        assert!(serde_json::from_str::<PermutationMatrix>("[2,2]").is_err());
    }
}
