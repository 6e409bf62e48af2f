//! Shared oracles for the integration suites. Everything here is an
//! independent route to an answer: brute-force searches and a second
//! arithmetic stack, kept deliberately separate from the library code
//! paths they cross-check.

#![allow(dead_code)]

use fdclab::spaces::FinSpace;
use fdclab::Dist;
use num::rational::BigRational;
use num::{BigInt, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Minimal n (up to n_limit) such that the points can be colored with
/// n+1 colors so that every color class splits into r-components of
/// diameter <= bound. Exhaustive backtracking over point colorings;
/// restricting any valid cover to a partition only shrinks pieces, so
/// searching colorings loses nothing.
pub fn exact_asdim_at_scale(
    space: &FinSpace,
    r: u64,
    bound: u64,
    n_limit: usize,
) -> Option<usize> {
    for n in 0..=n_limit {
        let mut colors = vec![usize::MAX; space.len()];
        if color_search(space, r, bound, n + 1, &mut colors, 0) {
            return Some(n);
        }
    }
    None
}

fn color_search(
    space: &FinSpace,
    r: u64,
    bound: u64,
    color_count: usize,
    colors: &mut [usize],
    point: usize,
) -> bool {
    if point == space.len() {
        return true;
    }
    for c in 0..color_count {
        colors[point] = c;
        if class_valid(space, r, bound, colors, c, point)
            && color_search(space, r, bound, color_count, colors, point + 1)
        {
            return true;
        }
    }
    colors[point] = usize::MAX;
    false
}

/// Checks the color class of `c` restricted to points 0..=last: its
/// r-components must all have diameter <= bound. Components are grown
/// by naive BFS, an independent route from the union-find in the crate.
fn class_valid(space: &FinSpace, r: u64, bound: u64, colors: &[usize], c: usize, last: usize) -> bool {
    let members: Vec<usize> = (0..=last).filter(|&p| colors[p] == c).collect();
    for component in naive_components(space, &members, r) {
        for (i, &a) in component.iter().enumerate() {
            for &b in &component[..i] {
                if space.dist(a, b) > Dist::Fin(bound) {
                    return false;
                }
            }
        }
    }
    true
}

/// R-components of a subset by breadth-first search.
pub fn naive_components(space: &FinSpace, members: &[usize], r: u64) -> Vec<Vec<usize>> {
    let mut seen = vec![false; members.len()];
    let mut out = Vec::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        let mut queue = vec![start];
        seen[start] = true;
        let mut component = Vec::new();
        while let Some(i) = queue.pop() {
            component.push(members[i]);
            for j in 0..members.len() {
                if !seen[j] && space.dist(members[i], members[j]) <= Dist::Fin(r) {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        component.sort_unstable();
        out.push(component);
    }
    out.sort();
    out
}

/// A random pseudometric space with up to max_points points: shortest
/// paths over a random weighted graph, so the triangle inequality holds
/// by construction and disconnected pairs sit at infinity.
pub fn random_space(rng: &mut ChaCha8Rng, max_points: usize) -> FinSpace {
    let n = rng.random_range(4..=max_points);
    let mut dist = vec![Dist::Inf; n * n];
    for i in 0..n {
        dist[i * n + i] = Dist::ZERO;
    }
    for i in 0..n {
        for j in 0..i {
            if rng.random_range(0..100) < 40 {
                let w = rng.random_range(1..=8u64);
                dist[i * n + j] = Dist::Fin(w);
                dist[j * n + i] = Dist::Fin(w);
            }
        }
    }
    // a few pseudometric collapses: distance-0 identifications
    for _ in 0..n / 4 {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i != j {
            dist[i * n + j] = Dist::ZERO;
            dist[j * n + i] = Dist::ZERO;
        }
    }
    // Floyd-Warshall closure
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = dist[i * n + k] + dist[k * n + j];
                if through < dist[i * n + j] {
                    dist[i * n + j] = through;
                }
            }
        }
    }
    FinSpace::new(n, dist).expect("shortest-path matrix is a pseudometric")
}

/// Rank of an integer matrix over Q by Gaussian elimination in exact
/// rational arithmetic; the second route against the crate's
/// fraction-free integer elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for c in 0..cols {
            m[rank][c] = &m[rank][c] / &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let v = &m[r][c] - &factor * &m[rank][c];
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
