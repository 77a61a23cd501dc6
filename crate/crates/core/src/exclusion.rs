//! Exclusion sets built from graph instances.
//!
//! A Hamilton cycle through the start vertex `n+1` is a permutation of the
//! remaining vertices. Every inducer added here pins two vertices at a
//! sequence distance that no path of the graph can realise, so each one
//! covers only extraneous cycles.

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::model::{Cell, ExclusionSet, Inducer, PermutationMatrix, VarLattice, VarState};

/// Runs the three exclusion sweeps over `g`: arcs into the start vertex,
/// arcs out of it, and every ordered pair of other vertices.
pub fn build_exclusion_set(g: &DirectedGraph) -> ExclusionSet {
    let mut g = g.clone();
    let n = g.model_size();
    let start = g.start_vertex();
    let mut e = ExclusionSet::new();
    let add = |e: &mut ExclusionSet, u, i, v, j| {
        e.insert(Inducer::new(u, i, v, j).expect("distinct vertices and positions"));
    };

    // Last arc: a path u -> start of length k puts u at position n+1-k.
    for u in 1..=n {
        let arc = g.has_arc(u, start) as usize;
        let m = g.with_arc_deleted(u, start, |g| g.shortest_path(u, start).value());
        for k in arc + 1..m {
            let pos = n + 1 - k;
            for v in (1..=n).filter(|&v| v != u) {
                for j in (1..=n).filter(|&j| j != pos) {
                    add(&mut e, v, j, u, pos);
                }
            }
        }
    }

    // First arc: a path start -> v of length k puts v at position k.
    for v in 1..=n {
        let arc = g.has_arc(start, v) as usize;
        let m = g.with_arc_deleted(start, v, |g| g.shortest_path(start, v).value());
        for k in arc + 1..m {
            for u in (1..=n).filter(|&u| u != v) {
                for i in (1..=n).filter(|&i| i != k) {
                    add(&mut e, v, k, u, i);
                }
            }
        }
    }

    for u in 1..=n {
        for v in (1..=n).filter(|&v| v != u) {
            let arc = g.has_arc(u, v) as usize;
            let m = g.with_arc_deleted(u, v, |g| g.shortest_path(u, v).value());
            for k in arc + 1..m {
                for l in 1..=n - k {
                    add(&mut e, u, l, v, l + k);
                }
            }
        }
    }
    e
}

/// Sets every member's q cell to Zero without propagating. Returns false if
/// some member was already One, leaving the lattice contradicted.
pub fn apply_exclusion(e: &ExclusionSet, lattice: &mut VarLattice) -> Result<bool> {
    let mut ok = true;
    for ind in e {
        ok &= lattice.assign(Cell::Q(*ind), VarState::Zero)?;
    }
    Ok(ok)
}

/// `(p, q)` counts of cells not Zero; q counts canonical cells only.
pub fn count_free(lattice: &VarLattice) -> (usize, usize) {
    lattice.count_free()
}

/// Exclusion set of `P^T G P = H` over `n x n` 0/1 matrices: every product
/// `p(u,i) p(v,j)` with `G[u][v] = 1` feeding an equation whose right side
/// `H[i][j]` is 0.
pub fn build_noniso_exclusion(g: &[Vec<bool>], h: &[Vec<bool>]) -> Result<ExclusionSet> {
    let n = g.len();
    if h.len() != n || g.iter().chain(h).any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected two square matrices of equal size, got {}x{} and {}x{}",
            n,
            g.first().map_or(0, Vec::len),
            h.len(),
            h.first().map_or(0, Vec::len)
        )));
    }
    let mut e = ExclusionSet::new();
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u && g[u][v]) {
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i && !h[i][j]) {
                    e.insert(Inducer::new(u + 1, i + 1, v + 1, j + 1)?);
                }
            }
        }
    }
    Ok(e)
}

/// True when the vertex map `u -> p(u)` carries `g` onto `h` exactly,
/// i.e. `G[u][v] = H[p(u)][p(v)]` for all pairs.
pub fn is_isomorphism(p: &PermutationMatrix, g: &[Vec<bool>], h: &[Vec<bool>]) -> bool {
    let n = g.len();
    p.n() == n
        && h.len() == n
        && (0..n).all(|u| (0..n).all(|v| g[u][v] == h[p.position(u + 1) - 1][p.position(v + 1) - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin_graph, Builtin};

    #[test]
    fn complete_graph_excludes_nothing() {
        for k in 3..8 {
            let g = builtin_graph(Builtin::Complete(k)).unwrap();
            assert!(build_exclusion_set(&g).is_empty());
        }
    }

    #[test]
    fn missing_arcs_exclude_adjacent_positions() {
        let g = builtin_graph(Builtin::Petersen).unwrap();
        let e = build_exclusion_set(&g);
        let n = g.model_size();
        for u in 1..=n {
            for v in (1..=n).filter(|&v| v != u && !g.has_arc(u, v)) {
                for l in 1..n {
                    assert!(e.contains(&Inducer::new(u, l, v, l + 1).unwrap()));
                }
            }
        }
    }

    #[test]
    fn petersen_exclusion_size() {
        let g = builtin_graph(Builtin::Petersen).unwrap();
        let e = build_exclusion_set(&g);
        assert_eq!(e.len(), 1734);
        let mut lat = VarLattice::new(9).unwrap();
        assert!(apply_exclusion(&e, &mut lat).unwrap());
        assert_eq!(count_free(&lat).1, 858);
    }

    #[test]
    fn noniso_examples() {
        let k3 = vec![
            vec![false, true, true],
            vec![true, false, true],
            vec![true, true, false],
        ];
        assert!(build_noniso_exclusion(&k3, &k3).unwrap().is_empty());

        let mut g = vec![vec![false; 3]; 3];
        g[0][1] = true;
        let mut h = vec![vec![false; 3]; 3];
        h[0][1] = true;
        let e = build_noniso_exclusion(&g, &h).unwrap();
        assert!(!e.contains(&Inducer::new(1, 1, 2, 2).unwrap()));
        assert!(e.contains(&Inducer::new(1, 1, 2, 3).unwrap()));

        assert!(build_noniso_exclusion(&k3, &g[..2]).is_err());
    }

    #[test]
    fn noniso_matches_direct_expansion() {
        // directed 3-cycle against the empty graph: every product term of
        // every equation has a zero right side
        let mut g = vec![vec![false; 3]; 3];
        for u in 0..3 {
            g[u][(u + 1) % 3] = true;
        }
        let h = vec![vec![false; 3]; 3];
        let e = build_noniso_exclusion(&g, &h).unwrap();
        let mut expected = ExclusionSet::new();
        for i in 0..3 {
            for j in 0..3 {
                for u in 0..3 {
                    for v in 0..3 {
                        if g[u][v] && u != v && i != j && !h[i][j] {
                            expected.insert(Inducer::new(u + 1, i + 1, v + 1, j + 1).unwrap());
                        }
                    }
                }
            }
        }
        assert_eq!(e, expected);
        assert_eq!(e.len(), 18);
    }

    #[test]
    fn isomorphism_check() {
        let mut g = vec![vec![false; 3]; 3];
        g[0][1] = true;
        let mut h = vec![vec![false; 3]; 3];
        h[2][0] = true;
        assert!(is_isomorphism(&PermutationMatrix::new(vec![3, 1, 2]).unwrap(), &g, &h));
        assert!(!is_isomorphism(&PermutationMatrix::identity(3), &g, &h));
    }
}
