//! Finite graphs built from a Heuberger matrix: the whole graph when
//! `Z^m / H` is finite, finite quotients `Z^m / (H + N·Z^m)`, and balls
//! around the identity coset of the possibly infinite graph.

mod graph;

use std::collections::HashMap;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intmat::{column_hnf, smith_normal_form, IntMatError, IntMatrix, Scalar};

pub use graph::SimpleGraph;

pub const DEFAULT_BALL_CAP: usize = 20_000;
pub const DEFAULT_QUOTIENT_CAP: usize = 250_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CayleyError {
    #[error(transparent)]
    IntMat(#[from] IntMatError),
    #[error("{what} needs more than {limit} vertices")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("quotient modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("circulant modulus must be nonzero")]
    ZeroModulus,
    #[error("gcd(a, b, n) = {0} != 1: circulant would be disconnected")]
    Disconnected(String),
    #[error("n divides a generator: circulant would have loops")]
    Loop,
}

pub type Result<T, E = CayleyError> = std::result::Result<T, E>;

/// `Z_{d_1} ⊕ … ⊕ Z_{d_k}` with the images of `e_1, …, e_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>, generators: Vec<Vec<u64>>) -> Self {
        assert!(
            factors.iter().all(|&d| d >= 1),
            "invariant factors must be positive"
        );
        let generators = generators
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), factors.len(), "generator arity");
                g.iter().zip(&factors).map(|(x, d)| x % d).collect()
            })
            .collect();
        FiniteAbelianGroup {
            factors,
            generators,
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Least common multiple of the invariant factors.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, d| acc.lcm(d))
    }

    /// Mixed-radix index; the last factor varies fastest.
    pub fn index_of(&self, element: &[u64]) -> usize {
        element
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (x, d)| acc * (*d as usize) + (*x as usize))
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % *d as usize) as u64;
            index /= *d as usize;
        }
        out
    }

    fn shifted(&self, element: &[u64], delta: &[u64], negate: bool) -> Vec<u64> {
        element
            .iter()
            .zip(delta)
            .zip(&self.factors)
            .map(|((x, g), d)| if negate { (x + d - g) % d } else { (x + g) % d })
            .collect()
    }

    pub fn is_identity(&self, element: &[u64]) -> bool {
        element.iter().all(|&x| x == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientGroup {
    Finite(FiniteAbelianGroup),
    Infinite { free_rank: usize },
}

/// `Z^m / H` via the Smith normal form `L·M·R = D`: `v ↦ L·v mod d`.
pub fn quotient_group(m: &IntMatrix) -> Result<QuotientGroup> {
    let snf = smith_normal_form(m)?;
    if snf.free_rank > 0 {
        return Ok(QuotientGroup::Infinite {
            free_rank: snf.free_rank,
        });
    }
    let factors: Vec<BigInt> = snf.invariant_factors.clone();
    let factors_u64 = factors
        .iter()
        .map(|d| {
            d.to_u64()
                .ok_or(IntMatError::Overflow(crate::intmat::Overflow))
        })
        .collect::<Result<Vec<u64>, _>>()?;
    let left = snf.left.matrix();
    let generators = (0..m.rows())
        .map(|j| {
            (0..m.rows())
                .map(|i| {
                    Integer::mod_floor(left.get(i, j), &factors[i])
                        .to_u64()
                        .expect("residue below factor")
                })
                .collect()
        })
        .collect();
    Ok(QuotientGroup::Finite(FiniteAbelianGroup::new(
        factors_u64,
        generators,
    )))
}

/// `Cay(G, {±g_i})` on an explicit finite abelian group.
#[derive(Debug, Clone)]
pub struct FiniteCayleyGraph {
    group: FiniteAbelianGroup,
    graph: SimpleGraph,
}

impl FiniteCayleyGraph {
    pub fn new(group: FiniteAbelianGroup, max_vertices: usize) -> Result<Self> {
        let order = group.order();
        if order > max_vertices as u64 {
            return Err(CayleyError::BudgetExceeded {
                what: "finite Cayley graph",
                limit: max_vertices,
            });
        }
        let n = order as usize;
        let mut adj = Vec::with_capacity(n);
        let mut loops = vec![false; n];
        for (v, has_loop) in loops.iter_mut().enumerate() {
            let x = group.element(v);
            let mut nbrs = Vec::with_capacity(2 * group.generators.len());
            for g in &group.generators {
                if group.is_identity(g) {
                    *has_loop = true;
                    continue;
                }
                for negate in [false, true] {
                    nbrs.push(group.index_of(&group.shifted(&x, g, negate)) as u32);
                }
            }
            nbrs.sort_unstable();
            nbrs.dedup();
            adj.push(nbrs);
        }
        Ok(FiniteCayleyGraph {
            group,
            graph: SimpleGraph::from_adjacency(adj, loops),
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// Graph of `Z^m / (H + N·Z^m)`, which receives a homomorphism from the
/// graph of `M` and so bounds its chromatic number from above.
pub fn finite_quotient_graph(
    m: &IntMatrix,
    modulus: u64,
    max_vertices: usize,
) -> Result<FiniteCayleyGraph> {
    if modulus < 2 {
        return Err(CayleyError::ModulusTooSmall(modulus));
    }
    let mut scaled = IntMatrix::<BigInt>::identity(m.rows())?;
    for i in 0..m.rows() {
        scaled.set(i, i, BigInt::from(modulus));
    }
    match quotient_group(&m.hcat(&scaled)?)? {
        QuotientGroup::Finite(group) => FiniteCayleyGraph::new(group, max_vertices),
        QuotientGroup::Infinite { .. } => unreachable!("N·I has full rank"),
    }
}

/// The whole graph when `Z^m / H` is finite.
pub fn full_graph(m: &IntMatrix, max_vertices: usize) -> Result<Option<FiniteCayleyGraph>> {
    match quotient_group(m)? {
        QuotientGroup::Finite(group) => Ok(Some(FiniteCayleyGraph::new(group, max_vertices)?)),
        QuotientGroup::Infinite { .. } => Ok(None),
    }
}

/// Induced subgraph on the cosets within distance `radius` of `H`.
#[derive(Debug, Clone)]
pub struct BallGraph {
    radius: u32,
    vertices: Vec<Vec<i64>>,
    distances: Vec<u32>,
    graph: SimpleGraph,
}

impl BallGraph {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Canonical coset representatives; index 0 is the identity coset.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn distances(&self) -> &[u32] {
        &self.distances
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// Breadth-first ball in `Cay(Z^m / H, {±e_i})`, cosets canonicalized by
/// reduction against the Hermite basis of `M`.
pub fn ball(m: &IntMatrix, radius: u32, max_vertices: usize) -> Result<BallGraph> {
    let small = m.try_convert::<i64>()?;
    let basis = column_hnf(&small)?;
    let dim = m.rows();
    let step = |v: &[i64], i: usize, delta: i64| -> Result<Vec<i64>> {
        let mut w = v.to_vec();
        w[i] = Scalar::checked_add(&w[i], &delta).map_err(IntMatError::from)?;
        Ok(basis.reduce(&w)?)
    };

    let origin = basis.reduce(&vec![0; dim])?;
    let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
    let mut vertices = vec![origin.clone()];
    let mut distances = vec![0u32];
    index.insert(origin, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if distances[v] == radius {
            continue;
        }
        for i in 0..dim {
            for delta in [1, -1] {
                let w = step(&vertices[v], i, delta)?;
                if index.contains_key(&w) {
                    continue;
                }
                if vertices.len() == max_vertices {
                    return Err(CayleyError::BudgetExceeded {
                        what: "ball",
                        limit: max_vertices,
                    });
                }
                index.insert(w.clone(), vertices.len() as u32);
                vertices.push(w);
                distances.push(distances[v] + 1);
                queue.push_back(vertices.len() - 1);
            }
        }
    }

    let mut adj = Vec::with_capacity(vertices.len());
    let mut loops = vec![false; vertices.len()];
    for (v, x) in vertices.iter().enumerate() {
        let mut nbrs = Vec::new();
        for i in 0..dim {
            for delta in [1, -1] {
                let w = step(x, i, delta)?;
                if w == *x {
                    loops[v] = true;
                } else if let Some(&u) = index.get(&w) {
                    nbrs.push(u);
                }
            }
        }
        nbrs.sort_unstable();
        nbrs.dedup();
        adj.push(nbrs);
    }
    Ok(BallGraph {
        radius,
        vertices,
        distances,
        graph: SimpleGraph::from_adjacency(adj, loops),
    })
}

/// Parameters of the circulant `C_n(a, b) = Cay(Z_|n|, {±a, ±b})`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CirculantParams {
    #[serde(serialize_with = "crate::intmat::serialize_int")]
    pub n: BigInt,
    #[serde(serialize_with = "crate::intmat::serialize_int")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::intmat::serialize_int")]
    pub b: BigInt,
}

impl CirculantParams {
    /// Checks `n != 0`, `gcd(a, b, n) = 1`, `n ∤ a`, `n ∤ b`.
    pub fn new(n: impl Into<BigInt>, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (n, a, b) = (n.into(), a.into(), b.into());
        if Zero::is_zero(&n) {
            return Err(CayleyError::ZeroModulus);
        }
        let g = a.gcd(&b).gcd(&n);
        if !One::is_one(&g) {
            return Err(CayleyError::Disconnected(g.to_string()));
        }
        if a.is_multiple_of(&n) || b.is_multiple_of(&n) {
            return Err(CayleyError::Loop);
        }
        Ok(CirculantParams { n, a, b })
    }

    /// `|n|`, the number of vertices.
    pub fn modulus(&self) -> BigInt {
        self.n.abs()
    }
}

pub fn circulant_graph(n: i64, a: i64, b: i64) -> Result<FiniteCayleyGraph> {
    CirculantParams::new(n, a, b)?;
    let modulus = n.unsigned_abs();
    let gens = [a, b]
        .iter()
        .map(|g| vec![g.rem_euclid(modulus as i64) as u64])
        .collect();
    FiniteCayleyGraph::new(FiniteAbelianGroup::new(vec![modulus], gens), usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat;

    #[test]
    fn quotient_group_examples() {
        match quotient_group(&intmat![[3, 0], [1, 3]]).unwrap() {
            QuotientGroup::Finite(g) => {
                assert_eq!(g.factors(), &[1, 9]);
                assert_eq!(g.order(), 9);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            quotient_group(&intmat![[1, 0], [0, 1], [3, 4]]).unwrap(),
            QuotientGroup::Infinite { free_rank: 1 }
        );
        match quotient_group(&intmat![[1, 0], [0, 1]]).unwrap() {
            QuotientGroup::Finite(g) => {
                assert_eq!(g.order(), 1);
                assert!(g.generators().iter().all(|x| g.is_identity(x)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quotient_graph_examples() {
        let g = finite_quotient_graph(&intmat![[1], [1], [1]], 3, DEFAULT_QUOTIENT_CAP).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.group().generators().len(), 3);

        let g = finite_quotient_graph(&intmat![[1, 0], [0, 1], [3, 4]], 8, DEFAULT_QUOTIENT_CAP)
            .unwrap();
        assert_eq!(g.vertex_count(), 8);
        // connection set {±1, ±3, ±4} mod 8 has 5 distinct nonzero elements
        assert!(g.graph().degrees().iter().all(|&d| d == 5));
        let c = circulant_graph(8, 1, 3).unwrap();
        let mut expected: Vec<Vec<u32>> = c.graph().adjacency().to_vec();
        for (v, nbrs) in expected.iter_mut().enumerate() {
            nbrs.push(((v + 4) % 8) as u32);
            nbrs.sort_unstable();
        }
        // Same circulant up to relabelling by a unit of Z_8; compare degree and edge count.
        assert_eq!(
            g.graph().edge_count(),
            expected.iter().map(Vec::len).sum::<usize>() / 2
        );

        let even = intmat![[2, 1], [1, 1], [1, 0]];
        let q = finite_quotient_graph(&even, 2, DEFAULT_QUOTIENT_CAP).unwrap();
        assert!(q.graph().is_bipartite());
        assert_eq!(
            finite_quotient_graph(&even, 1, 10).unwrap_err(),
            CayleyError::ModulusTooSmall(1)
        );
    }

    #[test]
    fn ball_examples() {
        let b = ball(&intmat![[1, 0], [0, 1], [3, 4]], 0, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.vertex_count(), 1);
        assert_eq!(b.graph().edge_count(), 0);

        let b = ball(&intmat![[2], [3]], 1, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.vertex_count(), 5);

        let b = ball(&intmat![[1, 0], [0, 1], [3, 4]], 2, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.vertex_count(), 17);

        let err = ball(&intmat![[1, 0], [0, 1], [3, 4]], 50, 100).unwrap_err();
        assert_eq!(
            err,
            CayleyError::BudgetExceeded {
                what: "ball",
                limit: 100
            }
        );
    }

    #[test]
    fn ball_records_loops() {
        let b = ball(&intmat![[2, 3]], 1, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.vertex_count(), 1);
        assert!(b.graph().has_loops());
    }

    #[test]
    fn circulant_examples() {
        let k5 = circulant_graph(5, 1, 2).unwrap();
        assert_eq!(k5.graph().edge_count(), 10);
        let c4 = circulant_graph(4, 1, 3).unwrap();
        assert_eq!(c4.graph().edge_count(), 4);
        assert!(c4.graph().degrees().iter().all(|&d| d == 2));
        let c9 = circulant_graph(9, 1, 2).unwrap();
        assert!(c9.graph().degrees().iter().all(|&d| d == 4));

        assert_eq!(
            circulant_graph(0, 1, 2).unwrap_err(),
            CayleyError::ZeroModulus
        );
        assert_eq!(
            circulant_graph(6, 2, 4).unwrap_err(),
            CayleyError::Disconnected("2".into())
        );
        assert_eq!(circulant_graph(5, 5, 1).unwrap_err(), CayleyError::Loop);
        assert!(circulant_graph(-5, 1, 2).is_ok());
    }
}
