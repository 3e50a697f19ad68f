//! Helpers shared by the integration tests.

#![allow(dead_code)]

use cayley_chroma::cayley::SimpleGraph;
use cayley_chroma::intmat::IntMatrix;

/// Smallest `k` admitting a proper coloring, by enumerating every
/// assignment of `k` colors with vertex 0 fixed to color 0. Meant for
/// graphs with at most ten vertices. `None` when the graph has a loop.
pub fn brute_force_chi(g: &SimpleGraph) -> Option<u32> {
    if g.has_loops() {
        return None;
    }
    let n = g.vertex_count();
    if n == 0 {
        return Some(0);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (1..=n as u32).find(|&k| {
        let mut colors = vec![0u32; n];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return true;
            }
            let mut i = 1;
            while i < n && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i >= n {
                return false;
            }
            colors[i] += 1;
        }
    })
}

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).expect("rectangular")
}

/// Some column sum is odd, computed directly.
pub fn has_odd_column_sum(m: &IntMatrix) -> bool {
    let m = m.to_i64().expect("small entries");
    (0..m.cols()).any(|j| (0..m.rows()).map(|i| *m.get(i, j)).sum::<i64>() % 2 != 0)
}

/// Rows that are entirely zero, computed directly.
pub fn zero_rows(m: &IntMatrix) -> usize {
    (0..m.rows())
        .filter(|&i| {
            m.row(i)
                .iter()
                .all(|v| v.sign() == num_bigint::Sign::NoSign)
        })
        .count()
}
