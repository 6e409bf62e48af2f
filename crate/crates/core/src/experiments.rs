//! Experiment orchestration: each experiment takes a parsed group spec,
//! runs a deterministic pipeline, and produces a report plus any
//! certificate files. Experiments never print; the CLI handles IO.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{GroupElement, Mat, PrimeField, Poly, RatFunc};
use crate::config::{GroupSpec, WindowParams};
use crate::decomp::{
    asdim_to_fdc, equivariant_lift, greedy_asdim, tree_to_dot, verify_equivariant, verify_fdc,
    DecompError, EqMember, GreedyOptions,
};
use crate::norms::{length, norm_axiom_check, pseudometric};
use crate::report::{Report, Verdict};
use crate::spaces::{
    ball_space, left_mult_action, quotient, quotient_by_subgroup, r_components, saturate_window,
    space_from_elements, BallWindow, MetricFamily, SpaceError,
};
use crate::structure::{solvable_bound_probe, th_factorize, triangularize_unipotent, StructError};

pub const EXPERIMENTS: &[&str] = &[
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

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown experiment {0:?}; expected one of {EXPERIMENTS:?}")]
    Unknown(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Struct(#[from] StructError),
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub radius: Option<u32>,
    pub scales: Option<Vec<u64>>,
    pub cap: Option<usize>,
    pub seed: u64,
    /// Hirsch-rank bound for the solvable probe.
    pub bound: Option<u64>,
}

/// A finished experiment: the report plus certificate files to write
/// next to it (relative path, contents).
pub struct ExperimentOutput {
    pub report: Report,
    pub files: Vec<(String, String)>,
}

pub fn run_experiment(
    spec: &GroupSpec,
    spec_text: &str,
    name: &str,
    opts: &RunOptions,
) -> Result<ExperimentOutput, ExperimentError> {
    let window = WindowParams {
        radius: opts.radius.unwrap_or(spec.window.radius),
        cap: opts.cap.unwrap_or(spec.window.cap),
        scales: opts.scales.clone().unwrap_or_else(|| spec.window.scales.clone()),
    };
    let mut report = Report::new(name, spec_text, window.clone(), opts.seed);
    let mut files: Vec<(String, String)> = Vec::new();
    let outcome = match name {
        "balls" => run_balls(spec, &window, &mut report, &mut files),
        "axioms" => run_axioms(spec, &window, opts.seed, &mut report),
        "quotient-family" => run_quotient_family(spec, &window, &mut report),
        "asdim-scan" => run_asdim_scan(spec, &window, &mut report, &mut files),
        "fdc-pipeline" => run_fdc_pipeline(spec, &window, &mut report, &mut files),
        "th-factorize" => run_th_factorize(spec, opts.seed, &mut report),
        "triangularize" => run_triangularize(spec, &mut report),
        "hirsch" => run_hirsch(spec, opts.bound, &mut report),
        "equivariant" => run_equivariant(spec, &window, &mut report),
        other => return Err(ExperimentError::Unknown(other.to_string())),
    }?;
    report.verdict = outcome;
    Ok(ExperimentOutput { report, files })
}

/// Window construction shared by the window-based experiments; a cap
/// overflow becomes a budget verdict rather than an error.
fn build_window(
    spec: &GroupSpec,
    window: &WindowParams,
) -> Result<Result<BallWindow, usize>, ExperimentError> {
    match ball_space(
        &spec.generator_elements(),
        window.radius,
        &spec.profile,
        window.cap,
    ) {
        Ok(ball) => Ok(Ok(ball)),
        Err(SpaceError::CapExceeded { size, .. }) => Ok(Err(size)),
        Err(e) => Err(e.into()),
    }
}

fn run_balls(
    spec: &GroupSpec,
    window: &WindowParams,
    report: &mut Report,
    files: &mut Vec<(String, String)>,
) -> Result<Verdict, ExperimentError> {
    let ball = match build_window(spec, window)? {
        Ok(ball) => ball,
        Err(size) => {
            report.results = json!({ "reached": size, "cap": window.cap });
            return Ok(Verdict::BudgetExceeded);
        }
    };
    let mut sizes = vec![0usize; window.radius as usize + 1];
    for &r in &ball.word_radius {
        sizes[r as usize] += 1;
    }
    let cumulative: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    report.results = json!({
        "points": ball.elements.len(),
        "new_per_radius": sizes,
        "ball_sizes": cumulative,
        "diameter": ball.space.diameter().to_string(),
    });
    files.push(("window-space.txt".into(), ball.space.to_text()));
    report.certificates.push("window-space.txt".into());
    Ok(Verdict::Pass)
}

fn random_poly(rng: &mut ChaCha8Rng, field: PrimeField, max_deg: usize) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.random_range(0..field.modulus())).collect();
    Poly::from_residues(field, &coeffs)
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
            .map(|_| (0..dim).map(|_| random_ratfunc(rng, field, max_deg)).collect())
            .collect();
        let mat = Mat::from_rows(rows).expect("square rows");
        if let Ok(g) = GroupElement::try_new(mat) {
            return g;
        }
    }
}

fn run_axioms(
    spec: &GroupSpec,
    window: &WindowParams,
    seed: u64,
    report: &mut Report,
) -> Result<Verdict, ExperimentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = spec.field;
    let mut norm_results = Vec::new();
    let mut ok = true;
    for norm in spec.profile.norms() {
        let samples: Vec<(RatFunc, RatFunc)> = (0..200)
            .map(|_| {
                (
                    random_ratfunc(&mut rng, field, 4),
                    random_ratfunc(&mut rng, field, 4),
                )
            })
            .collect();
        let check = norm_axiom_check(norm, &samples);
        ok &= check.passed();
        norm_results.push(json!({
            "norm": norm.to_string(),
            "pairs": check.pairs_checked,
            "pass": check.passed(),
            "violation": check.violation.as_ref().map(|v| format!("{}: {}", v.axiom, v.detail)),
        }));
    }
    let ball = match build_window(spec, window)? {
        Ok(ball) => ball,
        Err(size) => {
            report.results = json!({ "reached": size, "cap": window.cap });
            return Ok(Verdict::BudgetExceeded);
        }
    };
    let n = ball.elements.len();
    let lengths: Vec<u64> = ball
        .elements
        .iter()
        .map(|g| length(g, &spec.profile).scalar())
        .collect();
    let length_ok = lengths[0] == 0; // identity is point 0
    let mut symmetry_ok = true;
    let mut subadditive_ok = true;
    for (i, g) in ball.elements.iter().enumerate() {
        if length(&g.inverse(), &spec.profile).scalar() != lengths[i] {
            symmetry_ok = false;
        }
    }
    'outer: for g in &ball.elements {
        for h in &ball.elements {
            let gh = g.mul(h).map_err(SpaceError::from)?;
            if length(&gh, &spec.profile).scalar()
                > length(g, &spec.profile).scalar() + length(h, &spec.profile).scalar()
            {
                subadditive_ok = false;
                break 'outer;
            }
        }
    }
    // triangle inequality on the window matrix, all triples
    let mut triangle_ok = true;
    'tri: for i in 0..n {
        for j in 0..n {
            let dij = ball.space.dist(i, j);
            for k in 0..n {
                if dij > ball.space.dist(i, k) + ball.space.dist(k, j) {
                    triangle_ok = false;
                    break 'tri;
                }
            }
        }
    }
    // left invariance on sampled triples (k, g, h): d(kg, kh) = d(g, h)
    let mut left_invariant_ok = true;
    for _ in 0..200.min(n * n) {
        let k = &ball.elements[rng.random_range(0..n)];
        let g = &ball.elements[rng.random_range(0..n)];
        let h = &ball.elements[rng.random_range(0..n)];
        let kg = k.mul(g).map_err(SpaceError::from)?;
        let kh = k.mul(h).map_err(SpaceError::from)?;
        let d1 = pseudometric(g, h, &spec.profile).map_err(SpaceError::from)?;
        let d2 = pseudometric(&kg, &kh, &spec.profile).map_err(SpaceError::from)?;
        if d1 != d2 {
            left_invariant_ok = false;
            break;
        }
    }
    ok &= length_ok && symmetry_ok && subadditive_ok && triangle_ok && left_invariant_ok;
    report.results = json!({
        "norm_axioms": norm_results,
        "window_points": n,
        "identity_length_zero": length_ok,
        "length_symmetric": symmetry_ok,
        "length_subadditive": subadditive_ok,
        "triangle_inequality": triangle_ok,
        "left_invariant": left_invariant_ok,
    });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn run_quotient_family(
    spec: &GroupSpec,
    window: &WindowParams,
    report: &mut Report,
) -> Result<Verdict, ExperimentError> {
    let ball = match build_window(spec, window)? {
        Ok(ball) => ball,
        Err(size) => {
            report.results = json!({ "reached": size, "cap": window.cap });
            return Ok(Verdict::BudgetExceeded);
        }
    };
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, subgroup) in &spec.subgroups {
        let (qspace, proj) = quotient_by_subgroup(&ball.elements, subgroup, &spec.profile)?;
        // the projection must be 1-Lipschitz
        let mut lipschitz = true;
        for i in 0..ball.elements.len() {
            for j in 0..i {
                if qspace.dist(proj[i], proj[j]) > ball.space.dist(i, j) {
                    lipschitz = false;
                }
            }
        }
        let mut per_scale = Vec::new();
        for &r in &window.scales {
            let total = r_components(&ball.space, r);
            let quot = r_components(&qspace, r);
            let bounded = quot.max_diameter <= total.max_diameter;
            ok &= bounded;
            per_scale.push(json!({
                "scale": r,
                "total_max_component_diameter": total.max_diameter.to_string(),
                "quotient_max_component_diameter": quot.max_diameter.to_string(),
                "quotient_bounded_by_total": bounded,
            }));
        }
        ok &= lipschitz;
        rows.push(json!({
            "subgroup": name,
            "order": subgroup.len(),
            "quotient_points": qspace.len(),
            "projection_1_lipschitz": lipschitz,
            "scales": per_scale,
        }));
    }
    report.results = json!({
        "window_points": ball.elements.len(),
        "subgroups": rows,
    });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

/// The window together with its quotients by every declared subgroup.
fn window_family(
    spec: &GroupSpec,
    ball: &BallWindow,
) -> Result<MetricFamily, ExperimentError> {
    let mut members = vec![ball.space.clone()];
    for (_, subgroup) in &spec.subgroups {
        let (qspace, _) = quotient_by_subgroup(&ball.elements, subgroup, &spec.profile)?;
        members.push(qspace);
    }
    Ok(MetricFamily::new("window and quotients", members).map_err(ExperimentError::Space)?)
}

fn run_asdim_scan(
    spec: &GroupSpec,
    window: &WindowParams,
    report: &mut Report,
    files: &mut Vec<(String, String)>,
) -> Result<Verdict, ExperimentError> {
    let ball = match build_window(spec, window)? {
        Ok(ball) => ball,
        Err(size) => {
            report.results = json!({ "reached": size, "cap": window.cap });
            return Ok(Verdict::BudgetExceeded);
        }
    };
    let family = window_family(spec, &ball)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for &r in &window.scales {
        match greedy_asdim(&family, r, 4, GreedyOptions::default()) {
            Ok(cert) => {
                let file = format!("asdim-scale-{r}.txt");
                files.push((file.clone(), cert.to_text()));
                report.certificates.push(file);
                rows.push(json!({
                    "scale": r,
                    "n": cert.n,
                    "bound": cert.bound,
                    "pieces": cert.covers.iter().map(|c| c.len()).collect::<Vec<_>>(),
                }));
            }
            Err(e) => {
                ok = false;
                rows.push(json!({
                    "scale": r,
                    "no_certificate_found": e.to_string(),
                }));
            }
        }
    }
    report.results = json!({
        "family_members": family.len(),
        "window_points": ball.elements.len(),
        "scales": rows,
    });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn run_fdc_pipeline(
    spec: &GroupSpec,
    window: &WindowParams,
    report: &mut Report,
    files: &mut Vec<(String, String)>,
) -> Result<Verdict, ExperimentError> {
    let ball = match build_window(spec, window)? {
        Ok(ball) => ball,
        Err(size) => {
            report.results = json!({ "reached": size, "cap": window.cap });
            return Ok(Verdict::BudgetExceeded);
        }
    };
    let family = window_family(spec, &ball)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for &r in &window.scales {
        let cert = match greedy_asdim(&family, r, 4, GreedyOptions::default()) {
            Ok(cert) => cert,
            Err(e) => {
                ok = false;
                rows.push(json!({ "scale": r, "no_certificate_found": e.to_string() }));
                continue;
            }
        };
        let tree = asdim_to_fdc(&cert, &family)?;
        let check = verify_fdc(&family, &tree)?;
        ok &= check.passed();
        let tree_file = format!("fdc-tree-scale-{r}.txt");
        let dot_file = format!("fdc-tree-scale-{r}.dot");
        files.push((tree_file.clone(), tree.to_text()));
        files.push((
            dot_file.clone(),
            tree_to_dot(&tree, &format!("fdc_scale_{r}")),
        ));
        report.certificates.push(tree_file);
        report.certificates.push(dot_file);
        rows.push(json!({
            "scale": r,
            "depth": tree.depth(),
            "verified": check.passed(),
            "failure": check.failure.as_ref().map(|f| f.location.clone()),
        }));
    }
    report.results = json!({
        "family_members": family.len(),
        "scales": rows,
    });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn run_th_factorize(
    spec: &GroupSpec,
    seed: u64,
    report: &mut Report,
) -> Result<Verdict, ExperimentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let norm = &spec.profile.norms()[0];
    let mut rows = Vec::new();
    let mut ok = true;
    let mut targets: Vec<(String, GroupElement)> = spec
        .generators
        .iter()
        .map(|(n, g)| (format!("generator {n}"), g.clone()))
        .collect();
    for i in 0..25 {
        targets.push((
            format!("random {i}"),
            random_invertible(&mut rng, spec.field, spec.dim, 2),
        ));
    }
    for (name, g) in &targets {
        let th = th_factorize(g, norm)?;
        let verified = th.verify(norm);
        ok &= verified.is_ok();
        rows.push(json!({
            "element": name,
            "diagonal_exponents": th.exponents,
            "verified": verified.is_ok(),
            "failure": verified.err(),
        }));
    }
    report.results = json!({
        "norm": norm.to_string(),
        "factorizations": rows,
    });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn run_triangularize(spec: &GroupSpec, report: &mut Report) -> Result<Verdict, ExperimentError> {
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, subgroup) in &spec.subgroups {
        let non_unipotent = subgroup.iter().position(|g| !g.is_unipotent());
        if let Some(idx) = non_unipotent {
            rows.push(json!({
                "subgroup": name,
                "status": "not_unipotent",
                "offending_element": idx,
            }));
            continue;
        }
        match triangularize_unipotent(subgroup) {
            Ok(p) => {
                rows.push(json!({
                    "subgroup": name,
                    "status": "triangularized",
                    "conjugator": p.mat().to_string(),
                }));
            }
            Err(e) => {
                ok = false;
                rows.push(json!({
                    "subgroup": name,
                    "status": "failed",
                    "error": e.to_string(),
                }));
            }
        }
    }
    report.results = json!({ "subgroups": rows });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn run_hirsch(
    spec: &GroupSpec,
    bound: Option<u64>,
    report: &mut Report,
) -> Result<Verdict, ExperimentError> {
    let probe = solvable_bound_probe(&spec.series, bound.unwrap_or(u64::MAX));
    let rows: Vec<Value> = probe
        .entries
        .iter()
        .map(|e| {
            json!({
                "series": e.name,
                "hirsch_rank": e.rank,
                "within_bound": e.pass,
            })
        })
        .collect();
    report.results = json!({
        "bound": bound,
        "series": rows,
    });
    Ok(if bound.is_none() || probe.all_pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    })
}

fn run_equivariant(
    spec: &GroupSpec,
    window: &WindowParams,
    report: &mut Report,
) -> Result<Verdict, ExperimentError> {
    let ball = match build_window(spec, window)? {
        Ok(ball) => ball,
        Err(size) => {
            report.results = json!({ "reached": size, "cap": window.cap });
            return Ok(Verdict::BudgetExceeded);
        }
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, subgroup) in &spec.subgroups {
        let saturated = saturate_window(&ball.elements, subgroup)?;
        let space = space_from_elements(&saturated, &spec.profile)?;
        let action = left_mult_action(&saturated, subgroup, &space)?;
        let (qspace, proj) = quotient(&space, &action)?;
        let qfamily = MetricFamily::of_one(format!("{name} quotient"), qspace);
        let mut per_scale = Vec::new();
        for &r in &window.scales {
            let cert = greedy_asdim(&qfamily, r, 4, GreedyOptions::default())?;
            let base = asdim_to_fdc(&cert, &qfamily)?;
            let members = vec![EqMember {
                space: space.clone(),
                action: action.clone(),
            }];
            match equivariant_lift(&base, &members, &[proj.clone()], r) {
                Ok((tree, lift)) => {
                    let check = verify_equivariant(&members, &tree)?;
                    ok &= check.passed();
                    per_scale.push(json!({
                        "scale": r,
                        "verified": check.passed(),
                        "k": lift.k,
                        "chain_bound": lift.chain_bound,
                        "max_leaf_piece_diameter": lift.max_leaf_piece_diameter,
                    }));
                }
                Err(e) => {
                    ok = false;
                    per_scale.push(json!({ "scale": r, "error": e.to_string() }));
                }
            }
        }
        rows.push(json!({
            "subgroup": name,
            "saturated_points": saturated.len(),
            "scales": per_scale,
        }));
    }
    report.results = json!({
        "window_points": ball.elements.len(),
        "subgroups": rows,
    });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}
