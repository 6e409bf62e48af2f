//! Brick covers for windows onto Z and Z^2.
//!
//! 1-D: bricks of side r+1 with alternating colors; same-color bricks
//! are r+2 apart.
//!
//! 2-D: square bricks of side L = 3(r+1) in a staircase pattern: the
//! bricks of column a are shifted upward by a*(r+1), and brick (a,b)
//! gets color (a-b) mod 3. Same-color bricks in adjacent columns are
//! then r+2 apart vertically, bricks two columns apart are L+1 apart
//! horizontally, and bricks in one column repeat with vertical gap
//! 2L+1, so the cover is r-disjoint within each color under both the
//! l1 and the l_inf lattice metric.

use std::collections::BTreeMap;

use super::{AsdimCertificate, Piece};
use crate::dist::Dist;
use crate::spaces::MetricFamily;

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Builds the brick cover at scale r for a family whose members carry
/// 1- or 2-dimensional grid coordinates. Returns None when coordinates
/// are missing or of unsupported dimension. The caller still verifies
/// the result; the certificate's bound is the measured maximum piece
/// diameter.
pub fn brick_cover(family: &MetricFamily, r: u64) -> Option<AsdimCertificate> {
    let s = r as i64 + 1;
    let mut covers = Vec::with_capacity(family.len());
    let mut max_color = 0usize;
    let mut max_diam = 0u64;
    for space in family.members() {
        let coords = space.coords()?;
        let dim = coords.first().map(|c| c.len()).unwrap_or(1);
        if dim == 0 || dim > 2 {
            return None;
        }
        // brick key -> (color, points)
        let mut bricks: BTreeMap<Vec<i64>, (usize, Vec<usize>)> = BTreeMap::new();
        for (pt, c) in coords.iter().enumerate() {
            let (key, color) = match dim {
                1 => {
                    let a = floor_div(c[0], s);
                    (vec![a], (a.rem_euclid(2)) as usize)
                }
                _ => {
                    let l = 3 * s;
                    let a = floor_div(c[0], l);
                    let b = floor_div(c[1] - a * s, l);
                    (vec![a, b], ((a - b).rem_euclid(3)) as usize)
                }
            };
            bricks.entry(key).or_insert_with(|| (color, Vec::new())).1.push(pt);
        }
        let mut cover = Vec::with_capacity(bricks.len());
        for (_, (color, points)) in bricks {
            max_color = max_color.max(color);
            if let Dist::Fin(d) = space.subset_diameter(&points) {
                max_diam = max_diam.max(d);
            } else {
                return None; // grid windows have finite diameters
            }
            cover.push(Piece { color, points });
        }
        covers.push(cover);
    }
    Some(AsdimCertificate {
        n: max_color,
        scale: r,
        bound: max_diam,
        covers,
    })
}
