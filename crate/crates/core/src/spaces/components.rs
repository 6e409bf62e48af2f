//! R-connected components, disjointness and boundedness predicates.

use serde::Serialize;

use super::{FinSpace, MetricFamily};
use crate::dist::Dist;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// A partition of a space into R-connected components.
#[derive(Clone, Debug, Serialize)]
pub struct Partition {
    /// Blocks as sorted point lists, ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
    /// block_of[point] = index into blocks.
    pub block_of: Vec<usize>,
    /// Largest block diameter.
    pub max_diameter: Dist,
}

/// Union-find over the graph with an edge wherever d <= R. Two blocks
/// are at distance > R from each other by construction.
pub fn r_components(space: &FinSpace, radius: u64) -> Partition {
    let n = space.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in 0..i {
            if space.dist(i, j) <= Dist::Fin(radius) {
                uf.union(i, j);
            }
        }
    }
    let mut block_index: Vec<Option<usize>> = vec![None; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0usize; n];
    for p in 0..n {
        let root = uf.find(p);
        let idx = match block_index[root] {
            Some(idx) => idx,
            None => {
                blocks.push(Vec::new());
                block_index[root] = Some(blocks.len() - 1);
                blocks.len() - 1
            }
        };
        blocks[idx].push(p);
        block_of[p] = idx;
    }
    let max_diameter = blocks
        .iter()
        .map(|b| space.subset_diameter(b))
        .max()
        .unwrap_or(Dist::ZERO);
    Partition {
        blocks,
        block_of,
        max_diameter,
    }
}

/// Result of an r-disjointness check, with a witness when it fails.
#[derive(Clone, Debug, Serialize)]
pub struct DisjointnessCheck {
    pub disjoint: bool,
    /// (piece_a, piece_b, point_a, point_b, distance) for the first
    /// failing pair; pieces that overlap report distance 0 at the
    /// shared point.
    pub violation: Option<(usize, usize, usize, usize, Dist)>,
}

impl DisjointnessCheck {
    fn ok() -> DisjointnessCheck {
        DisjointnessCheck {
            disjoint: true,
            violation: None,
        }
    }

    fn fail(a: usize, b: usize, x: usize, y: usize, d: Dist) -> DisjointnessCheck {
        DisjointnessCheck {
            disjoint: false,
            violation: Some((a, b, x, y, d)),
        }
    }
}

/// True iff the pieces are pairwise at set distance > r. Infinity counts
/// as > r; overlapping pieces fail with a distance-0 diagnostic.
pub fn is_r_disjoint(pieces: &[Vec<usize>], space: &FinSpace, r: u64) -> DisjointnessCheck {
    for (a, pa) in pieces.iter().enumerate() {
        for (b, pb) in pieces.iter().enumerate().skip(a + 1) {
            for &x in pa {
                if pb.contains(&x) {
                    return DisjointnessCheck::fail(a, b, x, x, Dist::ZERO);
                }
            }
            for &x in pa {
                for &y in pb {
                    let d = space.dist(x, y);
                    if d <= Dist::Fin(r) {
                        return DisjointnessCheck::fail(a, b, x, y, d);
                    }
                }
            }
        }
    }
    DisjointnessCheck::ok()
}

/// Supremum of member diameters; Inf as soon as one member contains a
/// pair at infinite distance.
pub fn uniform_bound(family: &MetricFamily) -> Dist {
    family
        .members()
        .iter()
        .map(|m| m.diameter())
        .max()
        .unwrap_or(Dist::ZERO)
}

/// Semi-boundedness certificate: every distance is < r or infinite.
/// On finite data the least such r always exists (max finite distance
/// plus one), so the verdict carries the window caveat rather than an
/// unbounded branch.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SemiBounded {
    pub r: u64,
}

pub fn semi_bounded(family: &MetricFamily) -> SemiBounded {
    let mut max_finite = 0u64;
    for m in family.members() {
        for i in 0..m.len() {
            for j in 0..i {
                if let Dist::Fin(d) = m.dist(i, j) {
                    max_finite = max_finite.max(d);
                }
            }
        }
    }
    SemiBounded { r: max_finite + 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::tests::line_space;

    #[test]
    fn components_of_line_subset() {
        // {0,1,5,6} in Z with R=2: two blocks, max diameter 1
        let s = line_space(&[0, 1, 5, 6]);
        let p = r_components(&s, 2);
        assert_eq!(p.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(p.max_diameter, Dist::Fin(1));
        assert_eq!(p.block_of, vec![0, 0, 1, 1]);
    }

    #[test]
    fn big_radius_gives_one_block() {
        let s = line_space(&[0, 1, 5, 6]);
        let p = r_components(&s, 6);
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.max_diameter, Dist::Fin(6));
    }

    #[test]
    fn blocks_are_pairwise_separated() {
        let s = line_space(&[0, 1, 5, 6, 20]);
        let p = r_components(&s, 3);
        let check = is_r_disjoint(&p.blocks, &s, 3);
        assert!(check.disjoint);
    }

    #[test]
    fn disjointness_thresholds() {
        let s = line_space(&[0, 1, 5, 6]);
        let pieces = vec![vec![0, 1], vec![2, 3]];
        assert!(is_r_disjoint(&pieces, &s, 3).disjoint); // distance 4 > 3
        let check = is_r_disjoint(&pieces, &s, 4);
        assert!(!check.disjoint); // distance 4 is not > 4
        assert_eq!(check.violation, Some((0, 1, 1, 2, Dist::Fin(4))));
    }

    #[test]
    fn overlap_fails_with_distance_zero() {
        let s = line_space(&[0, 1, 5]);
        let pieces = vec![vec![0, 1], vec![1, 2]];
        let check = is_r_disjoint(&pieces, &s, 0);
        assert_eq!(check.violation, Some((0, 1, 1, 1, Dist::ZERO)));
    }

    #[test]
    fn infinite_distance_is_always_disjoint() {
        let dist = vec![Dist::ZERO, Dist::Inf, Dist::Inf, Dist::ZERO];
        let s = FinSpace::new(2, dist).unwrap();
        assert!(is_r_disjoint(&[vec![0], vec![1]], &s, u64::MAX - 1).disjoint);
    }

    #[test]
    fn family_bounds() {
        let fam = MetricFamily::new(
            "test",
            vec![line_space(&[0, 1, 2, 3, 4, 5]), line_space(&[0, 9])],
        )
        .unwrap();
        assert_eq!(uniform_bound(&fam), Dist::Fin(9));
        assert_eq!(semi_bounded(&fam).r, 10);

        let singles = MetricFamily::new("pts", vec![line_space(&[0]), line_space(&[3])]).unwrap();
        assert_eq!(uniform_bound(&singles), Dist::ZERO);
    }

    #[test]
    fn semi_bounded_sees_through_infinity() {
        // blocks of diameter <= 3 at mutual distance INF
        let mut dist = vec![Dist::Inf; 16];
        for i in 0..4 {
            dist[i * 4 + i] = Dist::ZERO;
        }
        let mut set = |i: usize, j: usize, v: Dist| {
            dist[i * 4 + j] = v;
            dist[j * 4 + i] = v;
        };
        set(0, 1, Dist::Fin(3));
        set(2, 3, Dist::Fin(2));
        let s = FinSpace::new(4, dist).unwrap();
        let fam = MetricFamily::of_one("blocks", s);
        assert_eq!(uniform_bound(&fam), Dist::Inf);
        assert_eq!(semi_bounded(&fam).r, 4);
    }
}
