//! Exact chromatic numbers of finite graphs: DSATUR branch and bound with
//! a greedy clique lower bound.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::cayley::SimpleGraph;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A color in `[0, count)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringAssignment {
    pub colors: Vec<u32>,
    pub count: u32,
}

impl ColoringAssignment {
    /// Proper: in range, no loops, no monochromatic edge.
    pub fn is_proper(&self, g: &SimpleGraph) -> bool {
        if self.colors.len() != g.vertex_count() || g.has_loops() {
            return false;
        }
        self.colors.iter().all(|&c| c < self.count)
            && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub node_budget: u64,
    /// A known lower bound on the chromatic number (e.g. from a graph that
    /// maps homomorphically into this one). The search stops as soon as a
    /// coloring with this many colors is found.
    pub lower_hint: u32,
    /// Only colorings with at most this many colors are sought.
    pub color_limit: Option<u32>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            lower_hint: 0,
            color_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    /// The graph has a loop.
    Uncolorable,
    Exact {
        chi: u32,
        coloring: ColoringAssignment,
        nodes: u64,
    },
    /// Search stopped early: `lower <= chi <= best.count` (when present).
    BudgetExceeded {
        lower: u32,
        best: Option<ColoringAssignment>,
        nodes: u64,
    },
    /// The search finished without a coloring within the color limit, so
    /// `chi >= lower`.
    AboveLimit { lower: u32, nodes: u64 },
}

impl ExactOutcome {
    pub fn chi(&self) -> Option<u32> {
        match self {
            ExactOutcome::Exact { chi, .. } => Some(*chi),
            _ => None,
        }
    }

    /// Best proven upper bound with its coloring.
    pub fn best_coloring(&self) -> Option<&ColoringAssignment> {
        match self {
            ExactOutcome::Exact { coloring, .. } => Some(coloring),
            ExactOutcome::BudgetExceeded { best, .. } => best.as_ref(),
            ExactOutcome::Uncolorable | ExactOutcome::AboveLimit { .. } => None,
        }
    }

    /// Best proven lower bound.
    pub fn lower(&self) -> Option<u32> {
        match self {
            ExactOutcome::Exact { chi, .. } => Some(*chi),
            ExactOutcome::BudgetExceeded { lower, .. } | ExactOutcome::AboveLimit { lower, .. } => {
                Some(*lower)
            }
            ExactOutcome::Uncolorable => None,
        }
    }
}

/// Greedy clique grown from the highest-degree vertex (lowest index wins
/// ties), adding neighbors in decreasing degree order.
pub fn greedy_clique(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let deg = g.degrees();
    let start = (0..n)
        .max_by_key(|&v| (deg[v], Reverse(v)))
        .expect("nonempty");
    let mut candidates: Vec<usize> = g.neighbors(start).iter().map(|&u| u as usize).collect();
    candidates.sort_by_key(|&u| (Reverse(deg[u]), u));
    let mut clique = vec![start];
    for u in candidates {
        if clique.iter().all(|&w| g.is_adjacent(u, w)) {
            clique.push(u);
        }
    }
    clique
}

const UNCOLORED: u32 = u32::MAX;

struct Search<'g> {
    g: &'g SimpleGraph,
    palette: usize,
    color: Vec<u32>,
    sat_count: Vec<u32>,
    sat: Vec<u32>,
    degree: Vec<u32>,
    queue: BTreeSet<(Reverse<u32>, Reverse<u32>, u32)>,
}

impl<'g> Search<'g> {
    fn new(g: &'g SimpleGraph) -> Self {
        let n = g.vertex_count();
        let degree: Vec<u32> = g.degrees().iter().map(|&d| d as u32).collect();
        let palette = degree.iter().copied().max().unwrap_or(0) as usize + 1;
        let queue = (0..n as u32)
            .map(|v| (Reverse(0), Reverse(degree[v as usize]), v))
            .collect();
        Search {
            g,
            palette,
            color: vec![UNCOLORED; n],
            sat_count: vec![0; n * palette],
            sat: vec![0; n],
            degree,
            queue,
        }
    }

    fn key(&self, v: usize) -> (Reverse<u32>, Reverse<u32>, u32) {
        (Reverse(self.sat[v]), Reverse(self.degree[v]), v as u32)
    }

    fn next_vertex(&self) -> Option<usize> {
        self.queue.first().map(|&(_, _, v)| v as usize)
    }

    fn blocked(&self, v: usize, c: u32) -> bool {
        self.sat_count[v * self.palette + c as usize] > 0
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.queue.remove(&self.key(v));
        self.color[v] = c;
        for &u in self.g.neighbors(v) {
            let u = u as usize;
            let slot = &mut self.sat_count[u * self.palette + c as usize];
            *slot += 1;
            if *slot == 1 {
                let uncolored = self.color[u] == UNCOLORED;
                if uncolored {
                    self.queue.remove(&self.key(u));
                }
                self.sat[u] += 1;
                if uncolored {
                    self.queue.insert(self.key(u));
                }
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for &u in self.g.neighbors(v) {
            let u = u as usize;
            let slot = &mut self.sat_count[u * self.palette + c as usize];
            *slot -= 1;
            if *slot == 0 {
                let uncolored = self.color[u] == UNCOLORED;
                if uncolored {
                    self.queue.remove(&self.key(u));
                }
                self.sat[u] -= 1;
                if uncolored {
                    self.queue.insert(self.key(u));
                }
            }
        }
        self.queue.insert(self.key(v));
    }
}

struct Frame {
    vertex: usize,
    next_color: u32,
    used_before: u32,
}

pub fn exact_chromatic(g: &SimpleGraph, opts: &ExactOptions) -> ExactOutcome {
    if g.has_loops() {
        return ExactOutcome::Uncolorable;
    }
    let n = g.vertex_count();
    if n == 0 {
        let coloring = ColoringAssignment {
            colors: Vec::new(),
            count: 0,
        };
        return ExactOutcome::Exact {
            chi: 0,
            coloring,
            nodes: 0,
        };
    }
    let lower = (greedy_clique(g).len() as u32).max(opts.lower_hint);
    if let Some(limit) = opts.color_limit.filter(|&l| l < lower) {
        return ExactOutcome::AboveLimit {
            lower: lower.max(limit + 1),
            nodes: 0,
        };
    }
    let mut search = Search::new(g);
    let palette = search.palette as u32;
    let mut best_count = opts.color_limit.map_or(palette, |l| l.min(palette)) + 1;
    let mut best: Option<Vec<u32>> = None;
    let mut nodes = 0u64;

    let first = search.next_vertex().expect("nonempty graph");
    let mut frames = vec![Frame {
        vertex: first,
        next_color: 0,
        used_before: 0,
    }];
    let mut exhausted = true;
    while let Some(frame) = frames.last_mut() {
        let v = frame.vertex;
        if search.color[v] != UNCOLORED {
            search.unassign(v);
        }
        // colors 0..=used_before, keeping the total strictly below best_count
        let limit = frame.used_before.min(best_count.saturating_sub(2));
        let choice = (frame.next_color..=limit).find(|&c| !search.blocked(v, c));
        let Some(c) = choice else {
            frames.pop();
            continue;
        };
        if best_count <= 1 {
            frames.pop();
            continue;
        }
        frame.next_color = c + 1;
        let used = frame.used_before.max(c + 1);
        search.assign(v, c);
        nodes += 1;
        if nodes > opts.node_budget {
            exhausted = false;
            break;
        }
        match search.next_vertex() {
            None => {
                best_count = used;
                best = Some(search.color.clone());
                if best_count <= lower {
                    break;
                }
            }
            Some(u) => frames.push(Frame {
                vertex: u,
                next_color: 0,
                used_before: used,
            }),
        }
    }

    let best = best.map(|colors| ColoringAssignment {
        colors,
        count: best_count,
    });
    match best {
        Some(coloring) if exhausted || coloring.count <= lower => ExactOutcome::Exact {
            chi: coloring.count,
            coloring,
            nodes,
        },
        None if exhausted => ExactOutcome::AboveLimit {
            lower: lower.max(best_count),
            nodes,
        },
        best => ExactOutcome::BudgetExceeded { lower, best, nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::circulant_graph;

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    fn chi(g: &SimpleGraph) -> u32 {
        match exact_chromatic(g, &ExactOptions::default()) {
            ExactOutcome::Exact { chi, coloring, .. } => {
                assert!(coloring.is_proper(g));
                chi
            }
            other => panic!("{other:?}"),
        }
    }

    /// Independent check: try every assignment with k colors.
    fn brute_force(g: &SimpleGraph) -> u32 {
        let n = g.vertex_count();
        for k in 1..=n as u32 {
            let mut colors = vec![0u32; n];
            loop {
                if g.edges().all(|(u, v)| colors[u] != colors[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n && colors[i] == k - 1 {
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                colors[i] += 1;
            }
        }
        0
    }

    #[test]
    fn examples() {
        assert_eq!(chi(circulant_graph(5, 1, 2).unwrap().graph()), 5);
        assert_eq!(chi(&cycle(5)), 3);
        assert_eq!(chi(&cycle(6)), 2);
        assert_eq!(chi(circulant_graph(9, 1, 2).unwrap().graph()), 3);
        assert_eq!(chi(&SimpleGraph::from_edges(3, &[])), 1);
        assert_eq!(chi(&SimpleGraph::from_edges(0, &[])), 0);
        let looped = SimpleGraph::from_edges(2, &[(0, 1), (0, 0)]);
        assert_eq!(
            exact_chromatic(&looped, &ExactOptions::default()),
            ExactOutcome::Uncolorable
        );
    }

    #[test]
    fn agrees_with_brute_force_on_small_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::from_edges(n, &edges);
            assert_eq!(chi(&g), brute_force(&g), "edges {edges:?}");
        }
    }

    #[test]
    fn budget_exhaustion_keeps_bounds() {
        // a tiny budget must still report consistent bounds
        let g = circulant_graph(13, 1, 5).unwrap();
        match exact_chromatic(
            g.graph(),
            &ExactOptions {
                node_budget: 14,
                ..ExactOptions::default()
            },
        ) {
            ExactOutcome::BudgetExceeded { lower, best, .. } => {
                let best = best.expect("first descent completes");
                assert!(best.is_proper(g.graph()));
                assert!(lower <= best.count);
            }
            ExactOutcome::Exact { chi, .. } => assert_eq!(chi, 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(chi(g.graph()), 4);
    }

    #[test]
    fn lower_hint_stops_early() {
        let g = circulant_graph(9, 1, 2).unwrap();
        let out = exact_chromatic(
            g.graph(),
            &ExactOptions {
                node_budget: 1_000,
                lower_hint: 3,
                color_limit: None,
            },
        );
        assert_eq!(out.chi(), Some(3));
    }

    #[test]
    fn color_limit() {
        let g = circulant_graph(7, 1, 3).unwrap();
        let limited = |l| {
            exact_chromatic(
                g.graph(),
                &ExactOptions {
                    color_limit: Some(l),
                    ..ExactOptions::default()
                },
            )
        };
        assert!(matches!(
            limited(3),
            ExactOutcome::AboveLimit { lower: 4, .. }
        ));
        assert_eq!(limited(4).chi(), Some(4));
        assert_eq!(limited(1).lower(), Some(3));
    }
}
