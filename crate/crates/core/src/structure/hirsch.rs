//! Hirsch rank of a normal series with abelian factors: the sum over
//! the factors of the rational rank of each finitely presented abelian
//! factor, computed by exact integer elimination.

use num::bigint::BigInt;
use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::StructError;

/// One abelian factor: a generator count and integer relation rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPresentation {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

impl FactorPresentation {
    pub fn free(generators: usize) -> FactorPresentation {
        FactorPresentation {
            generators,
            relations: Vec::new(),
        }
    }
}

/// An ordered list of abelian factor presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSeries {
    factors: Vec<FactorPresentation>,
}

impl NormalSeries {
    pub fn new(factors: Vec<FactorPresentation>) -> Result<NormalSeries, StructError> {
        for factor in &factors {
            for (row, rel) in factor.relations.iter().enumerate() {
                if rel.len() != factor.generators {
                    return Err(StructError::RelationWidth {
                        row,
                        got: rel.len(),
                        expected: factor.generators,
                    });
                }
            }
        }
        Ok(NormalSeries { factors })
    }

    pub fn factors(&self) -> &[FactorPresentation] {
        &self.factors
    }

    /// Concatenation of two series (refinement bookkeeping).
    pub fn concat(&self, other: &NormalSeries) -> NormalSeries {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.clone());
        NormalSeries { factors }
    }
}

/// Rank of an integer matrix over the rationals, by fraction-free
/// (Bareiss) elimination in exact big-integer arithmetic.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            let factor = m[r][col].clone();
            for c in 0..cols {
                let num = &m[r][c] * &pivot - &factor * &m[rank][c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss divisibility");
                m[r][c] = num / &prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Sum over the factors of (generators - rank of the relation matrix):
/// the rational dimension of each abelian factor tensored with Q.
pub fn hirsch_rank(series: &NormalSeries) -> u64 {
    series
        .factors()
        .iter()
        .map(|f| (f.generators - integer_rank(&f.relations).min(f.generators)) as u64)
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeEntry {
    pub name: String,
    pub rank: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub bound: u64,
    pub entries: Vec<ProbeEntry>,
    pub all_pass: bool,
}

/// Checks user-declared solvable subgroups (each given by a normal
/// series) against a uniform Hirsch-rank bound. An empty candidate list
/// passes vacuously.
pub fn solvable_bound_probe(candidates: &[(String, NormalSeries)], bound: u64) -> ProbeReport {
    let entries: Vec<ProbeEntry> = candidates
        .iter()
        .map(|(name, series)| {
            let rank = hirsch_rank(series);
            ProbeEntry {
                name: name.clone(),
                rank,
                pass: rank <= bound,
            }
        })
        .collect();
    let all_pass = entries.iter().all(|e| e.pass);
    ProbeReport {
        bound,
        entries,
        all_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_factors_sum_their_ranks() {
        // [Z^2, Z] -> 3
        let series = NormalSeries::new(vec![
            FactorPresentation::free(2),
            FactorPresentation::free(1),
        ])
        .unwrap();
        assert_eq!(hirsch_rank(&series), 3);
    }

    #[test]
    fn torsion_relations_drop_rank() {
        // 2 generators with relation 2a = 0: Z + Z/2, rank 1
        let series = NormalSeries::new(vec![FactorPresentation {
            generators: 2,
            relations: vec![vec![2, 0]],
        }])
        .unwrap();
        assert_eq!(hirsch_rank(&series), 1);
    }

    #[test]
    fn full_rank_relations_give_zero() {
        let series = NormalSeries::new(vec![
            FactorPresentation {
                generators: 2,
                relations: vec![vec![2, 0], vec![0, 3]],
            },
            FactorPresentation {
                generators: 1,
                relations: vec![vec![5]],
            },
        ])
        .unwrap();
        assert_eq!(hirsch_rank(&series), 0);
    }

    #[test]
    fn rank_ignores_redundant_relations() {
        // rows [2,4], [1,2], [3,6] all proportional: rank 1
        let series = NormalSeries::new(vec![FactorPresentation {
            generators: 2,
            relations: vec![vec![2, 4], vec![1, 2], vec![3, 6]],
        }])
        .unwrap();
        assert_eq!(hirsch_rank(&series), 1);
    }

    #[test]
    fn rank_is_additive_over_concatenation() {
        let a = NormalSeries::new(vec![FactorPresentation::free(2)]).unwrap();
        let b = NormalSeries::new(vec![FactorPresentation {
            generators: 3,
            relations: vec![vec![1, 1, 1]],
        }])
        .unwrap();
        assert_eq!(
            hirsch_rank(&a.concat(&b)),
            hirsch_rank(&a) + hirsch_rank(&b)
        );
    }

    #[test]
    fn bad_relation_width_rejected() {
        let out = NormalSeries::new(vec![FactorPresentation {
            generators: 2,
            relations: vec![vec![1, 2, 3]],
        }]);
        assert!(matches!(out, Err(StructError::RelationWidth { .. })));
    }

    #[test]
    fn probe_reports_pass_and_fail() {
        let heisenberg = NormalSeries::new(vec![
            FactorPresentation::free(1),
            FactorPresentation::free(2),
        ])
        .unwrap();
        let report =
            solvable_bound_probe(&[("heis".into(), heisenberg.clone())], 3);
        assert!(report.all_pass);
        assert_eq!(report.entries[0].rank, 3);
        let report = solvable_bound_probe(&[("heis".into(), heisenberg)], 2);
        assert!(!report.all_pass);
        let report = solvable_bound_probe(&[], 0);
        assert!(report.all_pass);
    }

    #[test]
    fn bareiss_handles_larger_entries() {
        let rows = vec![
            vec![10, -7, 3, 1],
            vec![2, 8, -9, 4],
            vec![12, 1, -6, 5],
            vec![7, 11, -13, 2],
        ];
        // row 2 = row 0 + row 1, the rest are independent: rank 3
        assert_eq!(integer_rank(&rows), 3);
    }
}
