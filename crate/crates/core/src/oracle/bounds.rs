//! Sandwich bounds: exact colorings of balls bound the chromatic number
//! from below, exact colorings of finite quotients bound it from above.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::cyclic::{circulant_image, cyclic_coloring, is_homomorphism};
use super::exact::{
    exact_chromatic, ColoringAssignment, ExactOptions, ExactOutcome, DEFAULT_NODE_BUDGET,
};
use crate::cayley::{
    ball, finite_quotient_graph, full_graph, FiniteCayleyGraph, DEFAULT_BALL_CAP,
    DEFAULT_QUOTIENT_CAP,
};
use crate::chromatic::ChromaticResult;
use crate::intmat::{has_loops, serialize_int, IntMatrix, LoopWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub ball_radii: Vec<u32>,
    pub moduli: Vec<u64>,
    pub node_budget: u64,
    pub ball_cap: usize,
    pub quotient_cap: usize,
    /// Try colorings of cyclic images before the `N·Z^m` quotients.
    pub cyclic_images: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            ball_radii: vec![2, 3, 4, 5],
            moduli: (2..=12).collect(),
            node_budget: DEFAULT_NODE_BUDGET,
            ball_cap: DEFAULT_BALL_CAP,
            quotient_cap: DEFAULT_QUOTIENT_CAP,
            cyclic_images: true,
        }
    }
}

impl OracleConfig {
    fn exact(&self, lower_hint: u32) -> ExactOptions {
        ExactOptions {
            node_budget: self.node_budget,
            lower_hint,
            color_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LowerWitness {
    /// At least one vertex.
    Trivial,
    /// At least one edge: some generator is not in the lattice.
    Edge,
    /// An odd column sum gives an odd cycle.
    NonBipartite {
        column: usize,
        #[serde(serialize_with = "serialize_int")]
        sum: BigInt,
    },
    /// Chromatic number (or a proven lower bound when `exact` is false) of
    /// the ball of this radius.
    Ball {
        radius: u32,
        vertices: usize,
        exact: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: u32,
    pub witness: LowerWitness,
    /// Whether some ball was colored exactly within budget.
    pub ball_resolved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuotientSource {
    /// The whole (finite) graph.
    Full,
    Modulus {
        modulus: u64,
    },
    /// The circulant `Cay(Z_n, {±g_i})` under `e_i ↦ g_i`.
    Cyclic {
        modulus: u64,
        images: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub value: u32,
    pub source: QuotientSource,
    pub factors: Vec<u64>,
    pub coloring: ColoringAssignment,
}

impl UpperBound {
    /// Rebuild the quotient and check the coloring edge by edge.
    pub fn verify(&self, m: &IntMatrix, cap: usize) -> bool {
        let graph = match &self.source {
            QuotientSource::Full => full_graph(m, cap).ok().flatten(),
            QuotientSource::Modulus { modulus } => finite_quotient_graph(m, *modulus, cap).ok(),
            QuotientSource::Cyclic { modulus, images } => is_homomorphism(m, *modulus, images)
                .then(|| circulant_image(*modulus, images))
                .flatten(),
        };
        match graph {
            Some(g) => {
                g.group().factors() == self.factors.as_slice()
                    && self.coloring.count == self.value
                    && self.coloring.is_proper(g.graph())
            }
            None => false,
        }
    }
}

/// Cheap lower bound without any search: 1, 2 with an edge, 3 when some
/// column sum is odd.
fn structural_lower_bound(m: &IntMatrix) -> LowerBound {
    let sums = m.column_sums().expect("BigInt sums");
    let two = BigInt::from(2);
    if let Some(column) = sums.iter().position(|s| !s.is_multiple_of(&two)) {
        let witness = LowerWitness::NonBipartite {
            column,
            sum: sums[column].clone(),
        };
        return LowerBound {
            value: 3,
            witness,
            ball_resolved: false,
        };
    }
    if m.rows() > 0 {
        return LowerBound {
            value: 2,
            witness: LowerWitness::Edge,
            ball_resolved: false,
        };
    }
    LowerBound {
        value: 1,
        witness: LowerWitness::Trivial,
        ball_resolved: false,
    }
}

/// Maximum of the structural bound and the chromatic numbers of balls of
/// the configured radii, stopping early once `stop_at` is reached.
///
/// Loop-free graphs only: a ball with a loop is skipped.
pub fn lower_bound(m: &IntMatrix, cfg: &OracleConfig, stop_at: Option<u32>) -> LowerBound {
    let mut best = structural_lower_bound(m);
    for &radius in &cfg.ball_radii {
        if stop_at.is_some_and(|s| best.value >= s) {
            break;
        }
        let Ok(b) = ball(m, radius, cfg.ball_cap) else {
            continue;
        };
        let (value, exact) = match exact_chromatic(b.graph(), &cfg.exact(best.value)) {
            ExactOutcome::Exact { chi, .. } => (chi, true),
            ExactOutcome::BudgetExceeded { lower, .. } | ExactOutcome::AboveLimit { lower, .. } => {
                (lower, false)
            }
            ExactOutcome::Uncolorable => continue,
        };
        best.ball_resolved |= exact;
        if value > best.value {
            best.value = value;
            best.witness = LowerWitness::Ball {
                radius,
                vertices: b.vertex_count(),
                exact,
            };
        }
    }
    best
}

/// Nodes spent per quotient in the first pass of [`upper_bound`].
const QUICK_NODE_BUDGET: u64 = 20_000;

fn build_quotient(
    m: &IntMatrix,
    cfg: &OracleConfig,
    source: &QuotientSource,
) -> Option<FiniteCayleyGraph> {
    let g = match *source {
        QuotientSource::Full => full_graph(m, cfg.quotient_cap).ok().flatten()?,
        QuotientSource::Modulus { modulus } => {
            finite_quotient_graph(m, modulus, cfg.quotient_cap).ok()?
        }
        QuotientSource::Cyclic { .. } => return None,
    };
    (!g.graph().has_loops()).then_some(g)
}

/// Minimum over the full graph (when finite) and the loop-free quotients
/// `Z^m / (H + N·Z^m)` of their chromatic numbers, as far as the node
/// budget reaches, stopping once `stop_at` is reached. Quotients over the
/// vertex cap are skipped.
///
/// Cyclic images `Z^m / H → Z_n` needing at most `max(stop_at, 2)`
/// colors are tried first (when enabled), for each configured modulus. Then a cheap pass
/// over all quotients, since a quotient that is hard to color often comes
/// before an easy one. The full-budget pass only looks for colorings
/// better than the best so far.
pub fn upper_bound(m: &IntMatrix, cfg: &OracleConfig, stop_at: u32) -> Option<UpperBound> {
    let target = stop_at.max(2);
    for &modulus in cfg.moduli.iter().filter(|_| cfg.cyclic_images) {
        if let Some((images, coloring)) = cyclic_coloring(m, modulus, target) {
            let source = QuotientSource::Cyclic { modulus, images };
            return Some(UpperBound {
                value: coloring.count,
                source,
                factors: vec![modulus],
                coloring,
            });
        }
    }
    let sources = std::iter::once(QuotientSource::Full).chain(
        cfg.moduli
            .iter()
            .map(|&modulus| QuotientSource::Modulus { modulus }),
    );
    let quick = cfg.node_budget.min(QUICK_NODE_BUDGET);
    let mut best: Option<UpperBound> = None;
    let mut built = Vec::new();
    let attempt = |source: &QuotientSource,
                   g: &FiniteCayleyGraph,
                   budget: u64,
                   best: &mut Option<UpperBound>| {
        let opts = ExactOptions {
            node_budget: budget,
            lower_hint: stop_at,
            color_limit: best.as_ref().map(|b| b.value - 1),
        };
        let Some(coloring) = exact_chromatic(g.graph(), &opts).best_coloring().cloned() else {
            return;
        };
        // never emit an unchecked coloring
        if coloring.is_proper(g.graph()) {
            let factors = g.group().factors().to_vec();
            *best = Some(UpperBound {
                value: coloring.count,
                source: source.clone(),
                factors,
                coloring,
            });
        }
    };
    for source in sources {
        let Some(g) = build_quotient(m, cfg, &source) else {
            continue;
        };
        attempt(&source, &g, quick, &mut best);
        if best.as_ref().is_some_and(|b| b.value <= stop_at) {
            return best;
        }
        built.push((source, g));
    }
    if quick < cfg.node_budget {
        for (source, g) in &built {
            attempt(source, g, cfg.node_budget, &mut best);
            if best.as_ref().is_some_and(|b| b.value <= stop_at) {
                break;
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SandwichStatus {
    Confirmed {
        k: u32,
    },
    Bounds {
        lower: u32,
        upper: Option<u32>,
    },
    LoopsConfirmed {
        witness: LoopWitness,
    },
    /// No upper bound, and no ball could be colored exactly.
    BudgetExceeded {
        lower: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub status: SandwichStatus,
    pub lower: Option<LowerBound>,
    pub upper: Option<UpperBound>,
    /// The claim disagrees with a proven bound or with the loop check.
    pub contradiction: bool,
}

impl SandwichReport {
    pub fn is_confirmed(&self) -> bool {
        matches!(
            self.status,
            SandwichStatus::Confirmed { .. } | SandwichStatus::LoopsConfirmed { .. }
        )
    }
}

/// Audit a claimed result against independent bounds.
pub fn sandwich_verify(
    m: &IntMatrix,
    claimed: &ChromaticResult,
    cfg: &OracleConfig,
) -> SandwichReport {
    let loops = has_loops(m).expect("BigInt arithmetic");
    if let Some(found) = loops {
        let (witness, contradiction) = match claimed {
            ChromaticResult::Uncolorable { witness } if witness.verify(m) => {
                (witness.clone(), false)
            }
            _ => (found, true),
        };
        return SandwichReport {
            status: SandwichStatus::LoopsConfirmed { witness },
            lower: None,
            upper: None,
            contradiction,
        };
    }
    if matches!(claimed, ChromaticResult::Uncolorable { .. }) {
        let lower = structural_lower_bound(m);
        let status = SandwichStatus::Bounds {
            lower: lower.value,
            upper: None,
        };
        return SandwichReport {
            status,
            lower: Some(lower),
            upper: None,
            contradiction: true,
        };
    }

    // Balls first when the claim asks for more than the structural bound,
    // so the quotient search can stop at the claimed value. Only lower
    // bounds are taken from this, so a wrong claim cannot hide.
    let quick = structural_lower_bound(m);
    let (mut lower, ball_stop) = match claimed.value() {
        Some(k) if k > quick.value => (lower_bound(m, cfg, Some(k)), Some(k)),
        _ => (quick, None),
    };
    let upper = upper_bound(m, cfg, lower.value);
    let target = upper.as_ref().map(|u| u.value);
    let open = target.is_none_or(|u| u > lower.value);
    // a ball pass that stayed below its target has tried every radius
    let balls_done = ball_stop.is_some_and(|k| lower.value < k);
    if open && !balls_done {
        let mut again = lower_bound(m, cfg, target);
        again.ball_resolved |= lower.ball_resolved;
        if again.value >= lower.value {
            lower = again;
        }
    }
    let (l, u) = (lower.value, upper.as_ref().map(|u| u.value));
    let contradiction = match (claimed.value(), u) {
        (Some(k), Some(u)) => l > k || u < k || l > u,
        (Some(k), None) => l > k,
        (None, Some(u)) => l > u,
        (None, None) => false,
    };
    let status = match u {
        Some(u) if u == l => SandwichStatus::Confirmed { k: l },
        None if !lower.ball_resolved => SandwichStatus::BudgetExceeded { lower: l },
        u => SandwichStatus::Bounds { lower: l, upper: u },
    };
    SandwichReport {
        status,
        lower: Some(lower),
        upper,
        contradiction,
    }
}
