//! Colorings pulled back along homomorphisms `Z^m / H → Z_n`.
//!
//! Sending `e_i` to `g_i` is a homomorphism from `Z^m / H` exactly when
//! every column of `M` satisfies `Σ g_i·M_ij ≡ 0 (mod n)`, and it maps the
//! graph onto `Cay(Z_n, {±g_i})`. With every `g_i` nonzero that circulant
//! has no loops, and any coloring of it pulls back. Large quotients that
//! are hard to search often contain such a small image.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::exact::{exact_chromatic, ColoringAssignment, ExactOptions};
use crate::cayley::{FiniteAbelianGroup, FiniteCayleyGraph};
use crate::intmat::IntMatrix;

/// Largest residue table (`n^cols` states) the solver will allocate.
const MAX_STATES: usize = 1 << 16;

/// Generator subsets are bitmasks over `1..n`.
const MAX_CYCLIC_MODULUS: u64 = 24;

/// `Cay(Z_n, {±g_i})`.
pub(crate) fn circulant_image(n: u64, images: &[u64]) -> Option<FiniteCayleyGraph> {
    let group = FiniteAbelianGroup::new(vec![n], images.iter().map(|&g| vec![g]).collect());
    FiniteCayleyGraph::new(group, n as usize).ok()
}

/// Every column of `m` lies in the kernel of `e_i ↦ images[i]` mod `n`.
pub(crate) fn is_homomorphism(m: &IntMatrix, n: u64, images: &[u64]) -> bool {
    if images.len() != m.rows() || n == 0 {
        return false;
    }
    let n = BigInt::from(n);
    (0..m.cols()).all(|j| {
        let s: BigInt = images
            .iter()
            .enumerate()
            .map(|(i, &g)| BigInt::from(g) * m.get(i, j))
            .sum();
        s.mod_floor(&n).is_zero()
    })
}

fn chromatic_at_most(n: u64, mask: u32, k: u32) -> bool {
    let images: Vec<u64> = (1..n).filter(|s| mask >> s & 1 == 1).collect();
    let Some(g) = circulant_image(n, &images) else {
        return false;
    };
    let opts = ExactOptions {
        color_limit: Some(k),
        ..ExactOptions::default()
    };
    exact_chromatic(g.graph(), &opts)
        .chi()
        .is_some_and(|c| c <= k)
}

/// Inclusion-maximal symmetric sets `T ⊆ Z_n \ {0}` with
/// `χ(Cay(Z_n, T)) <= k`, largest first.
fn maximal_colorable_sets(n: u64, k: u32) -> Vec<u32> {
    let half = (n / 2) as u32;
    let mut subsets: Vec<u32> = (1u32..1 << half).collect();
    subsets.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
    let mut kept: Vec<u32> = Vec::new();
    for s in subsets {
        let mask = (1..=half)
            .filter(|&p| s >> (p - 1) & 1 == 1)
            .fold(0u32, |acc, p| acc | 1 << p | 1 << (n as u32 - p));
        if kept.iter().any(|&t| t & mask == mask) {
            continue;
        }
        if chromatic_at_most(n, mask, k) {
            kept.push(mask);
        }
    }
    kept
}

/// Some `g` with every `g_i` in `allowed` and `Σ g_i·row_i ≡ 0 (mod n)`,
/// by dynamic programming over the residue vector of partial sums.
fn solve(rows: &[Vec<u64>], n: u64, allowed: u32) -> Option<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let states = (n as usize)
        .checked_pow(cols as u32)
        .filter(|&s| s <= MAX_STATES)?;
    let step = |state: usize, row: &[u64], g: u64| -> usize {
        let mut rest = state;
        let mut out = 0;
        let mut scale = 1;
        for &entry in row {
            let digit = (rest % n as usize) as u64;
            rest /= n as usize;
            out += ((digit + g * entry) % n) as usize * scale;
            scale *= n as usize;
        }
        out
    };
    let values: Vec<u64> = (1..n).filter(|s| allowed >> s & 1 == 1).collect();
    // back[i][state] = (previous state, g_i) for the first way to reach it
    let mut back: Vec<Vec<Option<(usize, u64)>>> = Vec::with_capacity(rows.len());
    let mut reached = vec![false; states];
    reached[0] = true;
    for row in rows {
        let mut layer = vec![None; states];
        let mut next = vec![false; states];
        for state in (0..states).filter(|&s| reached[s]) {
            for &g in &values {
                let t = step(state, row, g);
                if !next[t] {
                    next[t] = true;
                    layer[t] = Some((state, g));
                }
            }
        }
        back.push(layer);
        reached = next;
    }
    if !reached[0] {
        return None;
    }
    let mut images = vec![0; rows.len()];
    let mut state = 0;
    for (i, layer) in back.iter().enumerate().rev() {
        let (prev, g) = layer[state].expect("reached states have a predecessor");
        images[i] = g;
        state = prev;
    }
    Some(images)
}

/// A homomorphism onto a circulant of modulus `n` whose image needs at
/// most `k` colors, with a coloring of that image.
pub(crate) fn cyclic_coloring(
    m: &IntMatrix,
    n: u64,
    k: u32,
) -> Option<(Vec<u64>, ColoringAssignment)> {
    if !(2..=MAX_CYCLIC_MODULUS).contains(&n) || m.rows() == 0 {
        return None;
    }
    let big_n = BigInt::from(n);
    let rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&big_n).to_u64().expect("residue below n"))
                .collect()
        })
        .collect();
    for allowed in maximal_colorable_sets(n, k) {
        let Some(images) = solve(&rows, n, allowed) else {
            continue;
        };
        let g = circulant_image(n, &images)?;
        let coloring = exact_chromatic(g.graph(), &ExactOptions::default())
            .best_coloring()
            .cloned()?;
        if coloring.count <= k && coloring.is_proper(g.graph()) && is_homomorphism(m, n, &images) {
            return Some((images, coloring));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat;

    #[test]
    fn finds_the_images_missed_by_large_quotients() {
        let m = intmat![[2, 0], [1, -3], [3, 1], [3, 0], [-1, 0], [-3, 0], [-4, 0]];
        assert!(cyclic_coloring(&m, 3, 3).is_none());
        let (images, coloring) = cyclic_coloring(&m, 6, 3).unwrap();
        assert!(is_homomorphism(&m, 6, &images));
        assert_eq!(coloring.count, 3);

        let m = intmat![
            [-3, -4],
            [4, -2],
            [0, -2],
            [2, -3],
            [4, 1],
            [4, 1],
            [4, -4],
            [-2, -1]
        ];
        assert!(cyclic_coloring(&m, 3, 3).is_some());
    }

    #[test]
    fn maximal_sets_of_small_moduli() {
        // Z_4: {±1} is bipartite, {±1, 2} is K_4
        assert_eq!(maximal_colorable_sets(4, 2), vec![0b1010, 0b0100]);
        assert_eq!(maximal_colorable_sets(4, 4), vec![0b1110]);
        // K_5 needs five colors
        assert!(maximal_colorable_sets(5, 4).iter().all(|&t| t != 0b11110));
    }

    #[test]
    fn four_chromatic_family_has_no_three_colored_image() {
        let m = intmat![[1, 0], [0, 1], [3, 4]];
        assert!((2..=12).all(|n| cyclic_coloring(&m, n, 3).is_none()));
        let (images, coloring) = cyclic_coloring(&m, 7, 4).unwrap();
        assert!(is_homomorphism(&m, 7, &images));
        assert_eq!(coloring.count, 4);
    }
}
