//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Every tolerance here is zero; every bound is pinned
//! in the assertions. Run with `--nocapture` to see the lines.

mod common;

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fdclab::algebra::{GroupElement, Mat, PrimeField, RatFunc};
use fdclab::config::GroupSpec;
use fdclab::decomp::{
    asdim_to_fdc, brick_cover, equivariant_lift, greedy_asdim, verify_asdim, verify_equivariant,
    verify_fdc, AsdimCertificate, DecompTree, EqMember, FailKind, GreedyOptions, LeafCert,
    MemberSplit,
};
use fdclab::norms::{length, length_coord, norm_axiom_check, valuation, MetricProfile, NormSpec, Val};
use fdclab::spaces::{
    ball_space, grid_space, quotient, quotient_by_subgroup, r_components, FinSpace, GridMetric,
    GroupAction, MetricFamily,
};
use fdclab::structure::{hirsch_rank, th_factorize, FactorPresentation, NormalSeries};
use fdclab::Dist;

fn criterion(number: u32, name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("criterion {number:02} ({name}): PASS - {detail}"),
        Err(msg) => {
            println!("criterion {number:02} ({name}): FAIL - {msg}");
            panic!("criterion {number:02} ({name}) failed: {msg}");
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, field: PrimeField, max_deg: usize) -> fdclab::algebra::Poly {
    let deg = rng.random_range(0..=max_deg);
    let coeffs: Vec<u64> = (0..=deg)
        .map(|_| rng.random_range(0..field.modulus()))
        .collect();
    fdclab::algebra::Poly::from_residues(field, &coeffs)
}

fn random_ratfunc(rng: &mut ChaCha8Rng, field: PrimeField, max_deg: usize) -> RatFunc {
    let num = random_poly(rng, field, max_deg);
    let den = loop {
        let d = random_poly(rng, field, max_deg);
        if !d.is_zero() {
            break d;
        }
    };
    RatFunc::new(num, den).expect("nonzero denominator")
}

fn random_invertible(
    rng: &mut ChaCha8Rng,
    field: PrimeField,
    dim: usize,
    max_deg: usize,
) -> GroupElement {
    loop {
        let rows: Vec<Vec<RatFunc>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| random_ratfunc(rng, field, max_deg))
                    .collect()
            })
            .collect();
        if let Ok(g) = GroupElement::try_new(Mat::from_rows(rows).expect("square")) {
            return g;
        }
    }
}

// -------------------------------------------------------------------
// 1. exact-algebra suite
// -------------------------------------------------------------------
#[test]
fn criterion_01_exact_algebra() {
    criterion(1, "exact algebra", || {
        let started = Instant::now();
        let mut checks = 0usize;
        for p in [2u64, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(100 + p);
            for _ in 0..250 {
                let a = random_ratfunc(&mut rng, field, 4);
                let b = random_ratfunc(&mut rng, field, 4);
                let c = random_ratfunc(&mut rng, field, 4);
                // ring axioms, exact structural equality of canonical forms
                if a.add(&b) != b.add(&a) {
                    return Err(format!("commutativity of + fails over F_{p}(t)"));
                }
                if a.add(&b).add(&c) != a.add(&b.add(&c)) {
                    return Err(format!("associativity of + fails over F_{p}(t)"));
                }
                if a.mul(&b).mul(&c) != a.mul(&b.mul(&c)) {
                    return Err(format!("associativity of * fails over F_{p}(t)"));
                }
                if a.mul(&b.add(&c)) != a.mul(&b).add(&a.mul(&c)) {
                    return Err(format!("distributivity fails over F_{p}(t)"));
                }
                if !a.is_zero() {
                    let inv = a.inverse().map_err(|e| e.to_string())?;
                    if !a.mul(&inv).is_one() {
                        return Err(format!("a * a^-1 != 1 over F_{p}(t)"));
                    }
                }
                checks += 1;
            }
            for i in 0..100 {
                let dim = if i % 2 == 0 { 2 } else { 3 };
                let g = random_invertible(&mut rng, field, dim, 2);
                let gi = g.inverse();
                let prod = g.mul(&gi).map_err(|e| e.to_string())?;
                if !prod.is_identity() {
                    return Err(format!("g * g^-1 != I over F_{p}(t)"));
                }
                checks += 1;
            }
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs_f64() >= 10.0 {
            return Err(format!("took {elapsed:.2?}, limit is 10 s"));
        }
        Ok(format!("{checks} randomized checks, zero tolerance, {elapsed:.2?}"))
    });
}

// -------------------------------------------------------------------
// 2. norm and length axioms on group windows
// -------------------------------------------------------------------
fn gl2_window() -> (Vec<GroupElement>, FinSpace, MetricProfile) {
    let f = PrimeField::new(2).unwrap();
    let profile = MetricProfile::new(vec![NormSpec::TAdic, NormSpec::Degree]).unwrap();
    let e = |rows: Vec<Vec<RatFunc>>| GroupElement::try_new(Mat::from_rows(rows).unwrap()).unwrap();
    let one = RatFunc::one(f);
    let zero = RatFunc::zero(f);
    let t = RatFunc::t(f);
    let gens = vec![
        e(vec![vec![one.clone(), t.clone()], vec![zero.clone(), one.clone()]]),
        e(vec![vec![one.clone(), one.clone()], vec![zero.clone(), one.clone()]]),
        e(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]),
        e(vec![vec![t.clone(), zero.clone()], vec![zero.clone(), one.clone()]]),
    ];
    let ball = ball_space(&gens, 4, &profile, 500).unwrap();
    (ball.elements, ball.space, profile)
}

fn gl3_window() -> (Vec<GroupElement>, FinSpace, MetricProfile) {
    let f = PrimeField::new(3).unwrap();
    let profile = MetricProfile::new(vec![NormSpec::TAdic, NormSpec::Degree]).unwrap();
    let e = |rows: Vec<Vec<RatFunc>>| GroupElement::try_new(Mat::from_rows(rows).unwrap()).unwrap();
    let one = RatFunc::one(f);
    let zero = RatFunc::zero(f);
    let t = RatFunc::t(f);
    let gens = vec![
        e(vec![
            vec![one.clone(), t.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ]),
        e(vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), one.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ]),
        e(vec![
            vec![zero.clone(), zero.clone(), one.clone()],
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
        ]),
        e(vec![
            vec![t.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ]),
    ];
    let ball = ball_space(&gens, 3, &profile, 500).unwrap();
    (ball.elements, ball.space, profile)
}

fn window_axioms(
    label: &str,
    elements: &[GroupElement],
    space: &FinSpace,
    profile: &MetricProfile,
) -> Result<String, String> {
    let n = elements.len();
    if n > 500 {
        return Err(format!("{label}: window has {n} > 500 elements"));
    }
    let lengths: Vec<u64> = elements
        .iter()
        .map(|g| length(g, profile).scalar())
        .collect();
    if lengths[0] != 0 {
        return Err(format!("{label}: l(e) != 0"));
    }
    for (i, g) in elements.iter().enumerate() {
        if length(&g.inverse(), profile).scalar() != lengths[i] {
            return Err(format!("{label}: l(g) != l(g^-1) at point {i}"));
        }
    }
    // subadditivity over every ordered pair, exact
    let bad_pair = (0..n).into_par_iter().find_map_any(|i| {
        for j in 0..n {
            let gh = elements[i].mul(&elements[j]).expect("same dim");
            if length(&gh, profile).scalar() > lengths[i] + lengths[j] {
                return Some((i, j));
            }
        }
        None
    });
    if let Some((i, j)) = bad_pair {
        return Err(format!("{label}: l(gh) > l(g) + l(h) for pair ({i},{j})"));
    }
    // triangle inequality over every triple of the window matrix
    for i in 0..n {
        for j in 0..n {
            let dij = space.dist(i, j);
            for k in 0..n {
                if dij > space.dist(i, k) + space.dist(k, j) {
                    return Err(format!("{label}: triangle fails on ({i},{k},{j})"));
                }
            }
        }
    }
    // ultrametric norm axioms on every pair of distinct window entries
    let mut entries: HashSet<RatFunc> = HashSet::new();
    for g in elements {
        for e in g.mat().entries().iter().chain(g.inv_mat().entries()) {
            entries.insert(e.clone());
        }
    }
    let entries: Vec<RatFunc> = entries.into_iter().collect();
    for norm in profile.norms() {
        for (a, x) in entries.iter().enumerate() {
            for y in &entries[..=a] {
                let vx = valuation(x, norm);
                let vy = valuation(y, norm);
                let vxy = valuation(&x.mul(y), norm);
                let expected = match (vx, vy) {
                    (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
                    _ => Val::Infinite,
                };
                if vxy != expected {
                    return Err(format!("{label}: v(xy) != v(x) + v(y) under {norm}"));
                }
                if valuation(&x.add(y), norm) < vx.min(vy) {
                    return Err(format!("{label}: ultrametric fails under {norm}"));
                }
            }
        }
    }
    Ok(format!(
        "{label}: {n} elements, {} entry values",
        entries.len()
    ))
}

#[test]
fn criterion_02_norm_length_axioms() {
    criterion(2, "norm/length axioms", || {
        let (e2, s2, p2) = gl2_window();
        let d2 = window_axioms("GL_2(F_2(t))", &e2, &s2, &p2)?;
        let (e3, s3, p3) = gl3_window();
        let d3 = window_axioms("GL_3(F_3(t))", &e3, &s3, &p3)?;
        Ok(format!("{d2}; {d3}; all pairs/triples exact"))
    });
}

// -------------------------------------------------------------------
// 3. D-formula on diagonal uniformizer powers
// -------------------------------------------------------------------
#[test]
fn criterion_03_diagonal_formula() {
    criterion(3, "D-formula", || {
        let mut instances = 0usize;
        for p in [2u64, 3] {
            let field = PrimeField::new(p).unwrap();
            let t = RatFunc::t(field);
            for dim in [2usize, 3] {
                let mut exps = vec![-5i64; dim];
                loop {
                    let mut mat = Mat::identity(dim, field);
                    for (i, &k) in exps.iter().enumerate() {
                        mat.set(i, i, t.pow(k).map_err(|e| e.to_string())?);
                    }
                    let g = GroupElement::try_new(mat).map_err(|e| e.to_string())?;
                    let expected = exps.iter().map(|k| k.unsigned_abs()).max().unwrap();
                    let got = length_coord(&g, &NormSpec::TAdic);
                    if got != expected {
                        return Err(format!(
                            "diag(t^{exps:?}) has length {got}, expected {expected}"
                        ));
                    }
                    instances += 1;
                    // next exponent vector
                    let mut i = 0;
                    loop {
                        if i == dim {
                            break;
                        }
                        exps[i] += 1;
                        if exps[i] <= 5 {
                            break;
                        }
                        exps[i] = -5;
                        i += 1;
                    }
                    if i == dim {
                        break;
                    }
                }
            }
        }
        Ok(format!("{instances} diagonal instances, exact equality"))
    });
}

// -------------------------------------------------------------------
// 4. TH factorization
// -------------------------------------------------------------------
#[test]
fn criterion_04_th_factorization() {
    criterion(4, "TH factorization", || {
        let started = Instant::now();
        let norm = NormSpec::TAdic;
        let profile = MetricProfile::single(norm.clone());
        let mut done = 0usize;
        let f3 = PrimeField::new(3).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4040);
        let mut targets: Vec<GroupElement> = Vec::new();
        for _ in 0..100 {
            targets.push(random_invertible(&mut rng, f3, 2, 3));
        }
        for _ in 0..50 {
            targets.push(random_invertible(&mut rng, f2, 3, 3));
        }
        for g in &targets {
            let th = th_factorize(g, &norm).map_err(|e| e.to_string())?;
            th.verify(&norm).map_err(|e| format!("verification: {e}"))?;
            let d = fdclab::norms::pseudometric(g, &th.t, &profile).map_err(|e| e.to_string())?;
            if d != 0 {
                return Err(format!("d(g, t) = {d} != 0"));
            }
            done += 1;
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs_f64() >= 30.0 {
            return Err(format!("took {elapsed:.2?}, limit is 30 s"));
        }
        Ok(format!(
            "{done} factorizations verified, h and h^-1 integral, d(g,t) = 0, {elapsed:.2?}"
        ))
    });
}

// -------------------------------------------------------------------
// 5. unipotent windows have asdim 0 at scale, quotients stay bounded
// -------------------------------------------------------------------
#[test]
fn criterion_05_unipotent_asdim_zero() {
    criterion(5, "U_3 quotients at scale", || {
        let text = std::fs::read_to_string(
            concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/u3_f2t.spec"),
        )
        .map_err(|e| e.to_string())?;
        let spec = GroupSpec::parse(&text).map_err(|e| e.to_string())?;
        if spec.subgroups.len() < 3 {
            return Err("need at least three declared finite subgroups".into());
        }
        let ball = ball_space(&spec.generator_elements(), 4, &spec.profile, 20_000)
            .map_err(|e| e.to_string())?;
        let mut members = vec![ball.space.clone()];
        for (_, subgroup) in &spec.subgroups {
            let (qspace, _) = quotient_by_subgroup(&ball.elements, subgroup, &spec.profile)
                .map_err(|e| e.to_string())?;
            members.push(qspace);
        }
        let family = MetricFamily::new("U3 window and quotients", members.clone())
            .map_err(|e| e.to_string())?;
        let mut detail = Vec::new();
        for r in [1u64, 2, 4] {
            let total = r_components(&members[0], r);
            for (qi, q) in members[1..].iter().enumerate() {
                let quot = r_components(q, r);
                if quot.max_diameter > total.max_diameter {
                    return Err(format!(
                        "scale {r}: quotient {qi} has component diameter {} > total {}",
                        quot.max_diameter, total.max_diameter
                    ));
                }
            }
            let cert = greedy_asdim(&family, r, 0, GreedyOptions::default())
                .map_err(|e| e.to_string())?;
            if cert.n != 0 {
                return Err(format!("scale {r}: expected an n = 0 certificate"));
            }
            let check = verify_asdim(&cert, &family).map_err(|e| e.to_string())?;
            if !check.passed() {
                return Err(format!("scale {r}: certificate failed verification"));
            }
            detail.push(format!("r={r}: n=0, bound {}", cert.bound));
        }
        Ok(format!(
            "window {} points, {} quotients; {}",
            ball.elements.len(),
            spec.subgroups.len(),
            detail.join("; ")
        ))
    });
}

// -------------------------------------------------------------------
// 6. verifiers accept the reference certificates and reject corruptions
// -------------------------------------------------------------------
fn z_interval_data() -> (AsdimCertificate, MetricFamily) {
    let family = MetricFamily::of_one("Z[0,20]", grid_space(&[(0, 20)], GridMetric::L1));
    let cert = brick_cover(&family, 3).unwrap();
    (cert, family)
}

#[test]
fn criterion_06_verifiers_and_corruptions() {
    criterion(6, "verifiers + corruptions", || {
        // reference certificates pass
        let (z_cert, z_family) = z_interval_data();
        if !verify_asdim(&z_cert, &z_family).map_err(|e| e.to_string())?.passed() {
            return Err("Z-interval certificate rejected".into());
        }
        let plane_family =
            MetricFamily::of_one("Z^2", grid_space(&[(0, 24), (0, 24)], GridMetric::LInf));
        let plane_cert = brick_cover(&plane_family, 4).unwrap();
        if !verify_asdim(&plane_cert, &plane_family)
            .map_err(|e| e.to_string())?
            .passed()
        {
            return Err("Z^2 brick certificate rejected".into());
        }
        let z_tree = asdim_to_fdc(&z_cert, &z_family).map_err(|e| e.to_string())?;
        if !verify_fdc(&z_family, &z_tree).map_err(|e| e.to_string())?.passed() {
            return Err("Z-interval tree rejected".into());
        }

        // five corruptions, one invariant each, all rejected with a location
        let mut rejected = 0;

        // (a) coverage: drop a point from the only piece containing it
        let mut bad = z_cert.clone();
        bad.covers[0][0].points.retain(|&p| p != 0);
        let report = verify_asdim(&bad, &z_family).map_err(|e| e.to_string())?;
        match report.failure {
            Some(f) if f.kind == FailKind::Coverage && f.location.contains("point 0") => {
                rejected += 1;
            }
            other => return Err(format!("coverage corruption not caught: {other:?}")),
        }

        // (b) disjointness: recolor a piece next to a same-colored one
        let mut bad = z_cert.clone();
        bad.covers[0][1].color = 0; // bricks [0,3] and [4,7] now share color 0
        let report = verify_asdim(&bad, &z_family).map_err(|e| e.to_string())?;
        match report.failure {
            Some(f) if f.kind == FailKind::Disjointness && f.location.contains("color 0") => {
                rejected += 1;
            }
            other => return Err(format!("disjointness corruption not caught: {other:?}")),
        }

        // (c) bound: claim a smaller diameter than the pieces have
        let mut bad = z_cert.clone();
        bad.bound = 2;
        let report = verify_asdim(&bad, &z_family).map_err(|e| e.to_string())?;
        match report.failure {
            Some(f) if f.kind == FailKind::DiameterBound && f.location.contains("diameter") => {
                rejected += 1;
            }
            other => return Err(format!("bound corruption not caught: {other:?}")),
        }

        // (d) split: remove a piece from V so the node no longer covers
        let mut bad_tree = z_tree.clone();
        if let DecompTree::Node { splits, .. } = &mut bad_tree {
            splits[0].v_pieces.pop();
        }
        let report = verify_fdc(&z_family, &bad_tree).map_err(|e| e.to_string())?;
        match report.failure {
            Some(f) if f.kind == FailKind::Split && f.location.contains("member 0") => {
                rejected += 1;
            }
            other => return Err(format!("split corruption not caught: {other:?}")),
        }

        // (e) equivariance: a split that the action does not preserve
        let space = grid_space(&[(-2, 2)], GridMetric::L1);
        let flip: Vec<usize> = (0..5).rev().collect();
        let action = GroupAction::new(&space, vec![(0..5).collect(), flip]).unwrap();
        let members = vec![EqMember {
            space,
            action,
        }];
        let tree = fdclab::decomp::EquivariantTree::Node {
            scale: 0,
            splits: vec![fdclab::decomp::EqSplit {
                u_pieces: vec![vec![0, 1]],
                v_pieces: vec![vec![2, 3, 4]],
                u_index_action: vec![vec![0], vec![0]],
                v_index_action: vec![vec![0], vec![0]],
            }],
            u_child: Box::new(fdclab::decomp::EquivariantTree::Leaf { semi_bound: 6 }),
            v_child: Box::new(fdclab::decomp::EquivariantTree::Leaf { semi_bound: 6 }),
        };
        let report = verify_equivariant(&members, &tree).map_err(|e| e.to_string())?;
        match report.failure {
            Some(f) if f.kind == FailKind::Equivariance && f.location.contains("piece") => {
                rejected += 1;
            }
            other => return Err(format!("equivariance corruption not caught: {other:?}")),
        }

        Ok(format!(
            "reference certificates pass; {rejected}/5 corruptions rejected with located counterexamples"
        ))
    });
}

// -------------------------------------------------------------------
// 7. exhaustive oracle never beats greedy from below
// -------------------------------------------------------------------
#[test]
fn criterion_07_oracle_equivalence() {
    criterion(7, "greedy vs exhaustive oracle", || {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(777);
        let mut compared = 0usize;
        let mut capped_hits = 0usize;
        for round in 0..50 {
            let space = common::random_space(&mut rng, 12);
            let family = MetricFamily::of_one(format!("random {round}"), space.clone());
            let r = rng.random_range(1..=4u64);
            let capped = greedy_asdim(
                &family,
                r,
                3,
                GreedyOptions {
                    max_piece_diameter: Some(2 * r),
                },
            );
            let cert = match capped {
                Ok(cert) => {
                    capped_hits += 1;
                    cert
                }
                // no certificate at that budget proves nothing; fall back
                Err(_) => greedy_asdim(&family, r, 3, GreedyOptions::default())
                    .map_err(|e| e.to_string())?,
            };
            let exact = common::exact_asdim_at_scale(&space, r, cert.bound, cert.n);
            match exact {
                Some(n_exact) => {
                    if n_exact > cert.n {
                        return Err(format!(
                            "round {round}: oracle found {n_exact} > greedy {}",
                            cert.n
                        ));
                    }
                }
                None => {
                    return Err(format!(
                        "round {round}: oracle found no certificate though greedy did"
                    ));
                }
            }
            compared += 1;
        }
        let elapsed = started.elapsed();
        if elapsed.as_secs_f64() >= 120.0 {
            return Err(format!("took {elapsed:.2?}, limit is 2 min"));
        }
        Ok(format!(
            "{compared} spaces compared ({capped_hits} with the capped greedy), exact <= greedy everywhere, {elapsed:.2?}"
        ))
    });
}

// -------------------------------------------------------------------
// 8. Hirsch ranks against the rational-rank oracle
// -------------------------------------------------------------------
#[test]
fn criterion_08_hirsch_rank() {
    criterion(8, "Hirsch rank", || {
        let series = NormalSeries::new(vec![
            FactorPresentation::free(2),
            FactorPresentation::free(1),
        ])
        .unwrap();
        if hirsch_rank(&series) != 3 {
            return Err("[Z^2, Z] should have rank 3".into());
        }
        let series = NormalSeries::new(vec![FactorPresentation {
            generators: 2,
            relations: vec![vec![2, 0]],
        }])
        .unwrap();
        if hirsch_rank(&series) != 1 {
            return Err("Z + Z/2 should have rank 1".into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(888);
        for round in 0..10 {
            let factor_count = rng.random_range(1..=3usize);
            let mut factors = Vec::new();
            let mut expected = 0u64;
            for _ in 0..factor_count {
                let generators = rng.random_range(1..=4usize);
                let rows = rng.random_range(0..=3usize);
                let relations: Vec<Vec<i64>> = (0..rows)
                    .map(|_| (0..generators).map(|_| rng.random_range(-9..=9i64)).collect())
                    .collect();
                expected += (generators - common::rational_rank(&relations).min(generators)) as u64;
                factors.push(FactorPresentation {
                    generators,
                    relations,
                });
            }
            let series = NormalSeries::new(factors).unwrap();
            let got = hirsch_rank(&series);
            if got != expected {
                return Err(format!(
                    "round {round}: integer elimination gives {got}, rational oracle {expected}"
                ));
            }
        }
        Ok("fixed examples and 10 randomized series agree with the rational-rank oracle".into())
    });
}

// -------------------------------------------------------------------
// 9. equivariant lifting
// -------------------------------------------------------------------
fn cycle_space(m: usize, offset_dist: &[u64]) -> FinSpace {
    // m points on a cycle; offset_dist[k] is the distance at cyclic
    // offset k, for k in 0..=m/2
    let mut matrix = vec![Dist::ZERO; m * m];
    for i in 0..m {
        for j in 0..m {
            let off = (i as i64 - j as i64).rem_euclid(m as i64) as usize;
            matrix[i * m + j] = Dist::Fin(offset_dist[off.min(m - off)]);
        }
    }
    FinSpace::new(m, matrix).unwrap()
}

#[test]
fn criterion_09_equivariant_lifting() {
    criterion(9, "equivariant lifting", || {
        // (order, offset distances, leaf scale)
        let instances: Vec<(usize, Vec<u64>, u64)> = vec![
            (2, vec![0, 1], 1),
            (3, vec![0, 1], 1),
            (4, vec![0, 5, 2], 2),
        ];
        let mut detail = Vec::new();
        for (order, dists, r) in instances {
            let space = cycle_space(order, &dists);
            let m = space.len();
            let rotations: Vec<Vec<usize>> = (0..order)
                .map(|s| (0..m).map(|i| (i + s) % m).collect())
                .collect();
            let action = GroupAction::new(&space, rotations).map_err(|e| e.to_string())?;
            let (qspace, proj) = quotient(&space, &action).map_err(|e| e.to_string())?;
            let bound = match qspace.diameter() {
                Dist::Fin(d) => d,
                Dist::Inf => return Err("quotient should be bounded".into()),
            };
            let base = DecompTree::Leaf(LeafCert::Bounded { bound });
            let members = vec![EqMember {
                space: space.clone(),
                action,
            }];
            let (tree, lift) = equivariant_lift(&base, &members, &[proj], r)
                .map_err(|e| e.to_string())?;
            let check = verify_equivariant(&members, &tree).map_err(|e| e.to_string())?;
            if !check.passed() {
                return Err(format!(
                    "order {order}: pointwise equivariance check failed: {:?}",
                    check.failure
                ));
            }
            let kr = lift.k as u64 * r;
            if lift.max_leaf_piece_diameter > kr {
                return Err(format!(
                    "order {order}: piece diameter {} exceeds k*r = {kr}",
                    lift.max_leaf_piece_diameter
                ));
            }
            detail.push(format!(
                "order {order}: k={}, pieces <= {} <= k*r={kr}",
                lift.k, lift.max_leaf_piece_diameter
            ));
        }
        Ok(detail.join("; "))
    });
}

// -------------------------------------------------------------------
// 10. CLI reproducibility and golden files
// -------------------------------------------------------------------
fn strip_timestamp(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"generated_at\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_10_cli_reproducibility() {
    criterion(10, "CLI reproducibility", || {
        let bin = env!("CARGO_BIN_EXE_fdclab");
        let spec = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/u3_f2t.spec");
        let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
        let experiments = [
            "balls",
            "axioms",
            "quotient-family",
            "asdim-scan",
            "fdc-pipeline",
            "th-factorize",
            "triangularize",
            "hirsch",
            "equivariant",
        ];
        for experiment in experiments {
            let mut outputs: Vec<(String, Vec<(String, String)>)> = Vec::new();
            for run in 0..2 {
                let out_dir = tmp.path().join(format!("{experiment}-{run}"));
                let status = Command::new(bin)
                    .args([
                        "run",
                        experiment,
                        "--spec",
                        spec,
                        "--radius",
                        "3",
                        "--seed",
                        "42",
                        "--out",
                    ])
                    .arg(&out_dir)
                    .status()
                    .map_err(|e| e.to_string())?;
                if !status.success() {
                    return Err(format!("{experiment} run {run} exited with {status}"));
                }
                let report = std::fs::read_to_string(
                    out_dir.join(format!("{experiment}-report.json")),
                )
                .map_err(|e| e.to_string())?;
                let mut files = Vec::new();
                for entry in std::fs::read_dir(&out_dir).map_err(|e| e.to_string())? {
                    let entry = entry.map_err(|e| e.to_string())?;
                    let name = entry.file_name().to_string_lossy().into_owned();
                    if name.ends_with(".json") {
                        continue;
                    }
                    files.push((
                        name,
                        std::fs::read_to_string(entry.path()).map_err(|e| e.to_string())?,
                    ));
                }
                files.sort();
                outputs.push((report, files));
            }
            let (first_report, first_files) = &outputs[0];
            let (second_report, second_files) = &outputs[1];
            if strip_timestamp(first_report) != strip_timestamp(second_report) {
                return Err(format!("{experiment}: reports differ beyond the timestamp"));
            }
            if first_files != second_files {
                return Err(format!("{experiment}: certificate files differ"));
            }
        }
        // golden-file comparison for two experiments on the committed spec
        for experiment in ["hirsch", "asdim-scan"] {
            let out_dir = tmp.path().join(format!("golden-{experiment}"));
            let status = Command::new(bin)
                .args([
                    "run",
                    experiment,
                    "--spec",
                    spec,
                    "--radius",
                    "3",
                    "--seed",
                    "42",
                    "--out",
                ])
                .arg(&out_dir)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("golden {experiment} run failed"));
            }
            let actual = std::fs::read_to_string(
                out_dir.join(format!("{experiment}-report.json")),
            )
            .map_err(|e| e.to_string())?;
            let golden_path = format!(
                "{}/tests/data/golden/{experiment}-report.json",
                env!("CARGO_MANIFEST_DIR")
            );
            let golden = std::fs::read_to_string(&golden_path)
                .map_err(|e| format!("missing golden file {golden_path}: {e}"))?;
            if strip_timestamp(&actual) != strip_timestamp(&golden) {
                return Err(format!("{experiment}: output deviates from the golden file"));
            }
        }
        Ok("9 experiments byte-identical across runs (modulo timestamp); golden files match".into())
    });
}
