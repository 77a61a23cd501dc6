//! Perfect matchings on the vertex/position screen via augmenting paths.

/// Maximum bipartite matching of rows `0..n` against columns `0..n` where
/// `allowed(row, col)` holds. Returns `col_of[row]` when the matching is
/// perfect.
pub fn perfect_matching(n: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let adj: Vec<Vec<usize>> = (0..n).map(|r| (0..n).filter(|&c| allowed(r, c)).collect()).collect();
    let mut row_of = vec![usize::MAX; n];
    let mut seen = vec![0usize; n];
    for r in 0..n {
        // stamp r + 1 separates the visit marks of successive searches
        if !augment(r, r + 1, &adj, &mut row_of, &mut seen) {
            return None;
        }
    }
    let mut col_of = vec![0; n];
    for (c, &r) in row_of.iter().enumerate() {
        col_of[r] = c;
    }
    Some(col_of)
}

fn augment(r: usize, stamp: usize, adj: &[Vec<usize>], row_of: &mut [usize], seen: &mut [usize]) -> bool {
    for &c in &adj[r] {
        if seen[c] == stamp {
            continue;
        }
        seen[c] = stamp;
        if row_of[c] == usize::MAX || augment(row_of[c], stamp, adj, row_of, seen) {
            row_of[c] = r;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hall(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> bool {
        (0u32..1 << n).all(|rows| {
            let nbhd = (0..n)
                .filter(|&c| (0..n).any(|r| rows >> r & 1 == 1 && allowed(r, c)))
                .count();
            nbhd >= rows.count_ones() as usize
        })
    }

    #[test]
    fn agrees_with_hall_condition() {
        for n in 1..=4 {
            let cells = n * n;
            for mask in 0u32..1 << cells {
                let allowed = |r: usize, c: usize| mask >> (r * n + c) & 1 == 1;
                let m = perfect_matching(n, allowed);
                assert_eq!(m.is_some(), hall(n, &allowed), "n={n} mask={mask:b}");
                if let Some(col_of) = m {
                    assert!(col_of.iter().enumerate().all(|(r, &c)| allowed(r, c)));
                    let mut cols = col_of.clone();
                    cols.sort();
                    assert_eq!(cols, (0..n).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn oversubscribed_column() {
        let free = [(0, 0), (1, 0), (2, 1), (2, 2)];
        assert!(perfect_matching(3, |r, c| free.contains(&(r, c))).is_none());
    }
}
