//! Seeded self-checks: random or exhaustive matrices, each run through the
//! engine, the certificate checker, the sandwich oracle and a random
//! isomorphism.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::Args;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CliError, OracleArgs};
use crate::chromatic::{chi, ChromaticResult};
use crate::intmat::{IntMatrix, SignedPermWitness, UnimodularWitness};
use crate::oracle::{sandwich_verify, verify_certificate, OracleConfig, SandwichStatus};

/// Exhaustive sweeps larger than this are refused.
const MAX_EXHAUSTIVE: u64 = 2_000_000;
/// How many failing matrices are listed in the summary.
const MAX_LISTED: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Random(u64),
    All,
}

impl FromStr for Count {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(Count::All);
        }
        s.parse()
            .map(Count::Random)
            .map_err(|_| format!("expected a count or `all`, got {s:?}"))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Random(n) => write!(f, "{n}"),
            Count::All => write!(f, "all"),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 5)]
    pub rows: usize,
    #[arg(long, default_value_t = 2)]
    pub cols: usize,
    /// Entries are drawn from `[-B, B]`.
    #[arg(long = "entry-bound", default_value_t = 3)]
    pub entry_bound: u32,
    /// Number of random matrices, or `all` for every matrix in range.
    #[arg(long, default_value = "100")]
    pub count: Count,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the sandwich oracle.
    #[arg(long = "no-sandwich")]
    pub no_sandwich: bool,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(data).expect("rectangular")
}

pub fn random_signed_permutation<R: Rng>(rng: &mut R, n: usize) -> SignedPermWitness {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    SignedPermWitness::from_perm(&perm, &signs).expect("valid permutation")
}

/// A product of `steps` random shears with multipliers in `[-shear, shear]`,
/// then a random column sign.
pub fn random_unimodular<R: Rng>(
    rng: &mut R,
    n: usize,
    steps: usize,
    shear: i64,
) -> UnimodularWitness {
    let mut u = IntMatrix::identity(n).expect("n >= 1");
    if n >= 2 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let t = BigInt::from(rng.gen_range(-shear..=shear));
            u.add_col_multiple(i, j, &t).expect("in range");
        }
    }
    if rng.gen() {
        let j = rng.gen_range(0..n);
        u.negate_col(j).expect("in range");
    }
    UnimodularWitness::new(u).expect("determinant ±1")
}

/// The `index`-th matrix in the lexicographic sweep of `[-B, B]^(rows·cols)`.
fn nth_matrix(index: u64, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let base = (2 * bound + 1) as u64;
    let mut digits = vec![0i64; rows * cols];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % base) as i64 - bound;
        rest /= base;
    }
    IntMatrix::from_rows(
        digits
            .chunks(cols)
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
    .expect("rectangular")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuzzSummary {
    pub header: String,
    pub cases: u64,
    pub uncolorable: u64,
    /// `by_value[k]` counts `Chi(k)` answers.
    pub by_value: Vec<u64>,
    pub beyond_rank_two: u64,
    pub engine_errors: u64,
    pub certificate_failures: u64,
    pub invariance_failures: u64,
    pub bound_contradictions: u64,
    pub confirmed: u64,
    pub loops_confirmed: u64,
    pub bounds_only: u64,
    pub budget_exceeded: u64,
    pub failures: Vec<String>,
}

impl FuzzSummary {
    pub fn contradictions(&self) -> u64 {
        self.engine_errors
            + self.certificate_failures
            + self.invariance_failures
            + self.bound_contradictions
    }

    fn fail(&mut self, what: &str, m: &IntMatrix) {
        if self.failures.len() < MAX_LISTED {
            self.failures.push(format!("{what}: {m:?}"));
        }
    }

    fn record(&mut self, r: &ChromaticResult) {
        match r {
            ChromaticResult::Uncolorable { .. } => self.uncolorable += 1,
            ChromaticResult::BeyondRankTwo { .. } => self.beyond_rank_two += 1,
            ChromaticResult::Chi { k, .. } => {
                let k = *k as usize;
                if self.by_value.len() <= k {
                    self.by_value.resize(k + 1, 0);
                }
                self.by_value[k] += 1;
            }
        }
    }

    fn record_status(&mut self, s: &SandwichStatus) {
        match s {
            SandwichStatus::Confirmed { .. } => self.confirmed += 1,
            SandwichStatus::LoopsConfirmed { .. } => self.loops_confirmed += 1,
            SandwichStatus::Bounds { .. } => self.bounds_only += 1,
            SandwichStatus::BudgetExceeded { .. } => self.budget_exceeded += 1,
        }
    }

    /// Fraction of sandwiched cases settled exactly.
    pub fn resolution_rate(&self) -> f64 {
        let total = self.confirmed + self.loops_confirmed + self.bounds_only + self.budget_exceeded;
        if total == 0 {
            return 0.0;
        }
        (self.confirmed + self.loops_confirmed) as f64 / total as f64
    }
}

impl fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        writeln!(f, "cases: {}", self.cases)?;
        let values: Vec<String> = self
            .by_value
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(k, n)| format!("chi{k}={n}"))
            .collect();
        writeln!(
            f,
            "outcomes: uncolorable={} {} beyond_rank_two={}",
            self.uncolorable,
            values.join(" "),
            self.beyond_rank_two
        )?;
        writeln!(
            f,
            "sandwich: confirmed={} loops_confirmed={} bounds={} budget_exceeded={} resolution_rate={:.3}",
            self.confirmed,
            self.loops_confirmed,
            self.bounds_only,
            self.budget_exceeded,
            self.resolution_rate()
        )?;
        writeln!(f, "engine errors: {}", self.engine_errors)?;
        writeln!(f, "certificate failures: {}", self.certificate_failures)?;
        writeln!(f, "invariance failures: {}", self.invariance_failures)?;
        writeln!(f, "bound contradictions: {}", self.bound_contradictions)?;
        for line in &self.failures {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "contradictions: {}", self.contradictions())
    }
}

fn check_case(
    m: &IntMatrix,
    rng: &mut ChaCha8Rng,
    cfg: Option<&OracleConfig>,
    s: &mut FuzzSummary,
) {
    s.cases += 1;
    let result = match chi(m) {
        Ok(r) => r,
        Err(_) => {
            s.engine_errors += 1;
            s.fail("engine error", m);
            return;
        }
    };
    s.record(&result);
    if !verify_certificate(m, &result) {
        s.certificate_failures += 1;
        s.fail("certificate rejected", m);
    }
    let p = random_signed_permutation(rng, m.rows());
    let conjugated = match m.cols() {
        0 => None,
        n => {
            let u = random_unimodular(rng, n, 2 * n + 2, 3);
            p.matrix().mul(m).and_then(|pm| pm.mul(u.matrix())).ok()
        }
    };
    let images = conjugated.into_iter().chain([m.with_zero_row()]);
    for image in images {
        if !chi(&image).is_ok_and(|r| r.same_outcome(&result)) {
            s.invariance_failures += 1;
            s.fail("invariance", m);
        }
    }
    if let Some(cfg) = cfg {
        let report = sandwich_verify(m, &result, cfg);
        s.record_status(&report.status);
        if report.contradiction {
            s.bound_contradictions += 1;
            s.fail("bound contradiction", m);
        }
    }
}

/// Run the sweep and return its summary. Deterministic in the arguments.
pub fn fuzz(args: &FuzzArgs) -> Result<FuzzSummary, CliError> {
    if args.rows == 0 {
        return Err(CliError::Usage("--rows must be at least 1".into()));
    }
    let bound = i64::from(args.entry_bound);
    let cfg = (!args.no_sandwich).then(|| args.oracle.config());
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut s = FuzzSummary {
        header: format!(
            "fuzz: rows={} cols={} entry-bound={} count={} seed={}",
            args.rows, args.cols, args.entry_bound, args.count, args.seed
        ),
        ..FuzzSummary::default()
    };
    match args.count {
        Count::Random(n) => {
            for _ in 0..n {
                let m = random_matrix(&mut rng, args.rows, args.cols, bound);
                check_case(&m, &mut rng, cfg.as_ref(), &mut s);
            }
        }
        Count::All => {
            let cells = u32::try_from(args.rows * args.cols).unwrap_or(u32::MAX);
            let total = (2 * bound as u64 + 1)
                .checked_pow(cells)
                .filter(|&t| t <= MAX_EXHAUSTIVE);
            let Some(total) = total else {
                return Err(CliError::Usage(format!(
                    "exhaustive sweep exceeds {MAX_EXHAUSTIVE} matrices"
                )));
            };
            for index in 0..total {
                let m = nth_matrix(index, args.rows, args.cols, bound);
                check_case(&m, &mut rng, cfg.as_ref(), &mut s);
            }
        }
    }
    Ok(s)
}

/// `fuzz` subcommand: prints the summary, exit code 1 on any contradiction.
pub fn run_fuzz(args: &FuzzArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let s = fuzz(args)?;
    write!(out, "{s}")?;
    Ok(if s.contradictions() == 0 { 0 } else { 1 })
}
