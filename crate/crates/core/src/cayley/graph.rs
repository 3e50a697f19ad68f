use std::collections::VecDeque;
use std::fmt::Write as _;

/// Finite undirected graph with sorted, deduplicated neighbor lists and
/// per-vertex loop flags. Loops are not listed as neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
    loops: Vec<bool>,
}

impl SimpleGraph {
    pub fn from_adjacency(adj: Vec<Vec<u32>>, loops: Vec<bool>) -> Self {
        debug_assert_eq!(adj.len(), loops.len());
        SimpleGraph { adj, loops }
    }

    /// Build from an edge list; `(v, v)` marks a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut loops = vec![false; n];
        for &(u, v) in edges {
            if u == v {
                loops[u] = true;
            } else {
                adj[u].push(v as u32);
                adj[v].push(u as u32);
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        SimpleGraph { adj, loops }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return self.loops[u];
        }
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Each edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .map(move |&v| (u, v as usize))
                .filter(|(u, v)| u < v)
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, nbrs)| {
            nbrs.iter()
                .all(|&v| self.adj[v as usize].binary_search(&(u as u32)).is_ok())
        })
    }

    /// Two-coloring by BFS; loops make a graph non-bipartite.
    pub fn is_bipartite(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("visited");
                for &v in &self.adj[u] {
                    match side[v as usize] {
                        None => {
                            side[v as usize] = Some(!su);
                            queue.push_back(v as usize);
                        }
                        Some(sv) if sv == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Plain edge list: the vertex count, then one `u v` pair per line
    /// (0-indexed, `u <= v`; `v v` is a loop).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for (v, &l) in self.loops.iter().enumerate() {
            if l {
                writeln!(out, "{v} {v}").expect("write to string");
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").expect("write to string");
        }
        out
    }
}
