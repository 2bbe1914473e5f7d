use anyhow::Result;
use serde_json::json;

use fusion_core::bounds::{check_ectff2, design_to_sphere_map_check, ectff2_moments, sic_to_eitff, SicSystem};
use fusion_core::grassmann::{check_tff, chs_embed, embedding_dim, FrameJson};
use fusion_core::lifting::{certify_lift, lift, repair_disjointness, LiftSpec, LiftedDesignJson, PhasePolicy};
use fusion_core::orbits::{
    brute_force_f, delta, enumerate_orbit, f_value, orbit_size, scaling_family, search_range, solve_single_orbit,
    two_point_test, union_condition, OrbitParams, OrbitUnion, Probe, SolutionClass,
};
use fusion_core::sphere::{check_spherical_design_pairwise, check_weighted_design_moments, AnyPointSet, PointSetJson};
use fusion_core::{Certificate, Error, FrameConfig, Subspace, WeightedPointSet};

use crate::args::*;
use crate::output::{read_frame, read_json, usage, write_artifact, write_json, Meta, Report};

pub struct Ctx {
    pub mode: ModeArg,
    pub meta: Meta,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Drop exact data when float arithmetic was requested.
fn in_mode(frame: FrameConfig, mode: ModeArg) -> Result<FrameConfig> {
    if mode == ModeArg::Exact {
        return Ok(frame);
    }
    let subs = frame
        .subspaces()
        .iter()
        .map(|s| Subspace::from_orthonormal_basis(s.basis().clone()))
        .collect::<fusion_core::Result<Vec<_>>>()?;
    Ok(FrameConfig::new(subs, frame.weights().to_vec())?)
}

fn params(d: usize, a: usize, b: usize) -> Result<OrbitParams> {
    OrbitParams::new(d, a, b).map_err(|e| usage(e.to_string()))
}

pub fn orbit(args: &OrbitArgs, ctx: &Ctx) -> Result<Report> {
    let p = params(args.d, args.a, args.b)?;
    let n = orbit_size(p);
    let dl = delta(p);
    let mut passed = true;
    let mut line = format!("N={n}, Δ={dl}");
    let mut result = json!({
        "params": p,
        "size": n.to_string(),
        "delta": dl,
        "f_e1": f_value(p, Probe::E1),
        "f_e12": f_value(p, Probe::E12),
    });
    if args.brute_force {
        let b1 = brute_force_f(p, Probe::E1)?;
        let b2 = brute_force_f(p, Probe::E12)?;
        let agree = b1 == f_value(p, Probe::E1) && b2 == f_value(p, Probe::E12);
        passed &= agree;
        line.push_str(&format!(", brute force: {}", verdict(agree)));
        result["brute_force"] = json!({ "f_e1": b1, "f_e12": b2, "agrees": agree });
    }
    if args.check_tff2 || args.out.is_some() {
        let planes = enumerate_orbit(p)?;
        let frame = FrameConfig::equal_weight(planes)?;
        if args.check_tff2 {
            let two = two_point_test(&OrbitUnion::single(p))?;
            let tff = check_tff(&in_mode(frame.clone(), ctx.mode)?, 2)?;
            let ok = two.passed() && tff.passed();
            passed &= ok && two.passed() == tff.passed();
            line.push_str(&format!(", TFF₂: {}", verdict(ok)));
            result["two_point"] = serde_json::to_value(&two)?;
            result["tff"] = serde_json::to_value(&tff)?;
        }
        if let Some(path) = &args.out {
            write_artifact(path, &ctx.meta, FrameJson::from(&frame))?;
        }
    }
    Report::new(vec![line], passed, result)
}

pub fn check_tff_cmd(args: &CheckTffArgs, ctx: &Ctx) -> Result<Report> {
    let mut result = json!({});
    let mut lines = Vec::new();
    let frame = match (&args.input, &args.orbits) {
        (Some(path), None) => read_frame(path)?,
        (None, Some(path)) => {
            let u: OrbitUnion = serde_json::from_value(read_json(path)?)
                .map_err(|e| usage(format!("{}: not an orbit union: {e}", path.display())))?;
            let cond = union_condition(&u);
            lines.push(format!("{u}: Σ NΔ = {} ({})", cond.sum, verdict(cond.verdict.passed())));
            result["union_condition"] = serde_json::to_value(&cond)?;
            if args.t == 2 {
                let two = two_point_test(&u)?;
                lines.push(format!("two-point test: {}", verdict(two.passed())));
                result["two_point"] = serde_json::to_value(&two)?;
            }
            u.to_frame()?
        }
        _ => return Err(usage("give exactly one of --in or --orbits")),
    };
    let frame = in_mode(frame, ctx.mode)?;
    let cert = check_tff(&frame, args.t)?;
    lines.push(format!(
        "{} subspaces in G({}, {}), TFF_{} ({} mode): {}",
        frame.len(),
        frame.dim(),
        frame.ambient_dim(),
        args.t,
        mode_name(&cert),
        verdict(cert.passed())
    ));
    let passed = cert.passed();
    result["certificate"] = serde_json::to_value(&cert)?;
    Report::new(lines, passed, result)
}

fn mode_name(c: &Certificate) -> &'static str {
    match c.mode {
        fusion_core::Mode::Exact => "exact",
        fusion_core::Mode::Float => "float",
    }
}

fn class_name(c: SolutionClass) -> &'static str {
    match c {
        SolutionClass::Pure => "pure",
        SolutionClass::SingleOrbitPair => "single_orbit_pair",
    }
}

pub fn search(args: &SearchArgs, ctx: &Ctx) -> Result<Report> {
    if args.orbits != 2 {
        return Err(usage(format!("only two-orbit searches are supported, got --orbits {}", args.orbits)));
    }
    if args.min_d > args.max_d {
        return Err(usage("--min-d exceeds --max-d"));
    }
    let sols = search_range(args.min_d, args.max_d, args.odd, args.include_single);
    let mut csv = String::from("d,a1,b1,a2,b2,class,N1,N2\n");
    for s in &sols {
        let n1 = orbit_size(OrbitParams { d: s.d, a: s.first.0, b: s.first.1 });
        let n2 = orbit_size(OrbitParams { d: s.d, a: s.second.0, b: s.second.1 });
        csv.push_str(&format!(
            "{},{},{},{},{},{},{n1},{n2}\n",
            s.d,
            s.first.0,
            s.first.1,
            s.second.0,
            s.second.1,
            class_name(s.class)
        ));
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, &csv)?;
    }
    let lines: Vec<String> = match args.format {
        TableFormat::Csv => csv.lines().map(String::from).collect(),
        TableFormat::Table => {
            let mut out = vec![format!("{:>5}  {:<10} {:<10} {}", "d", "orbit 1", "orbit 2", "class")];
            for s in &sols {
                out.push(format!(
                    "{:>5}  {:<10} {:<10} {}",
                    s.d,
                    format!("({},{})", s.first.0, s.first.1),
                    format!("({},{})", s.second.0, s.second.1),
                    class_name(s.class)
                ));
            }
            let mut dims: Vec<usize> = sols.iter().map(|s| s.d).collect();
            dims.dedup();
            let dims: Vec<String> = dims.iter().map(usize::to_string).collect();
            out.push(format!("dimensions with solutions: {}", dims.join(", ")));
            out
        }
    };
    let result = json!({ "solutions": sols });
    if let Some(path) = &args.out {
        write_artifact(path, &ctx.meta, &result)?;
    }
    Report::new(lines, true, result)
}

pub fn solve_single(args: &SolveSingleArgs, _ctx: &Ctx) -> Result<Report> {
    let dims: Vec<usize> = match (args.d, args.min_d, args.max_d) {
        (Some(d), None, None) => vec![d],
        (None, Some(lo), hi) => (lo..=hi.unwrap_or(lo)).collect(),
        _ => return Err(usage("give --d or --min-d [--max-d]")),
    };
    if dims.iter().any(|&d| d < 2) {
        return Err(usage("dimensions must be at least 2"));
    }
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for d in dims {
        let sols = solve_single_orbit(d);
        let text: Vec<String> = sols.iter().map(|(a, b)| format!("({a},{b})")).collect();
        lines.push(format!("d={d}: {}", if text.is_empty() { "none".into() } else { text.join(" ") }));
        rows.push(json!({ "d": d, "solutions": sols }));
    }
    Report::new(lines, true, rows)
}

pub fn scale(args: &ScaleArgs, _ctx: &Ctx) -> Result<Report> {
    let hi = args.max_s.unwrap_or(args.s);
    if hi < args.s {
        return Err(usage("--max-s is below --s"));
    }
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut passed = true;
    for s in args.s..=hi {
        let p = scaling_family(args.d0, args.a0, args.b0, s).map_err(|e| usage(e.to_string()))?;
        let dl = delta(p);
        passed &= dl.is_zero();
        lines.push(format!("s={s}: (d, a, b) = ({}, {}, {}), Δ={dl}", p.d, p.a, p.b));
        rows.push(json!({ "s": s, "params": p, "delta": dl }));
    }
    Report::new(lines, passed, rows)
}

fn parse_orbit(spec: &str) -> Result<OrbitParams> {
    let parts: Vec<usize> = spec
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("--orbit expects d,a,b, got {spec:?}")))?;
    match parts[..] {
        [d, a, b] => params(d, a, b),
        _ => Err(usage(format!("--orbit expects d,a,b, got {spec:?}"))),
    }
}

pub fn lift_cmd(args: &LiftArgs, ctx: &Ctx) -> Result<Report> {
    let frame = match (&args.orbit, &args.input) {
        (Some(spec), None) => FrameConfig::equal_weight(enumerate_orbit(parse_orbit(spec)?)?)?,
        (None, Some(path)) => read_frame(path)?,
        _ => return Err(usage("give exactly one of --orbit or --in")),
    };
    let frame = in_mode(frame, ctx.mode)?;
    if args.polygon < 2 {
        return Err(usage("--polygon needs at least 2 vertices"));
    }
    let t = match args.t {
        Some(t) if (1..=2).contains(&t) => t,
        Some(t) => return Err(usage(format!("--t must be 1 or 2, got {t}"))),
        None => {
            if check_tff(&frame, 2)?.passed() {
                2
            } else {
                1
            }
        }
    };
    let mut spec = LiftSpec::new(frame, t, args.polygon as u32 - 1, args.seed);
    if let Some(phase) = args.fixed_phase {
        spec = spec.with_phase(PhasePolicy::Fixed { phase });
    }
    let mut design = lift(&spec)?;
    if args.repair {
        design = repair_disjointness(&design, args.seed)?;
    }
    let r = args.verify.unwrap_or(design.strength);
    let cert = certify_lift(&design, r)?;
    let diag = cert.diagnostics.iter().all(Certificate::passed);
    let lines = vec![format!(
        "{} points on S^{}, declared strength {}, certificate at {r}: {} (diagnostic at {}: {})",
        design.result.len(),
        design.result.dim() - 1,
        design.strength,
        verdict(cert.passed()),
        r + 1,
        verdict(diag)
    )];
    let json_design = LiftedDesignJson::from(&design);
    if let Some(path) = &args.out {
        write_artifact(path, &ctx.meta, &json_design)?;
    }
    let result = json!({
        "mode": "float",
        "mode_note": "polygon vertices are irrational in general, so lifts use float arithmetic",
        "t": t,
        "points": design.result.len(),
        "strength": design.strength,
        "total_weight": design.total_weight,
        "certificate": cert,
    });
    Report::new(lines, cert.passed(), result)
}

fn read_point_set(path: &std::path::Path) -> Result<AnyPointSet> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("design") {
        v = inner.take();
    }
    let json: PointSetJson =
        serde_json::from_value(v).map_err(|e| usage(format!("{}: not a point set: {e}", path.display())))?;
    Ok(AnyPointSet::from_json(json)?)
}

fn design_checks<T: fusion_core::numerics::Scalar>(
    x: &WeightedPointSet<T>,
    t: u32,
    which: Criterion,
) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    if matches!(which, Criterion::Moments | Criterion::Both) {
        out.push(check_weighted_design_moments(x, t)?);
    }
    if matches!(which, Criterion::Pairwise | Criterion::Both) {
        if x.has_equal_weights() {
            out.push(check_spherical_design_pairwise(x, t)?);
        } else if which == Criterion::Pairwise {
            return Err(usage("the pairwise criterion needs equal weights"));
        }
    }
    Ok(out)
}

pub fn verify_design(args: &VerifyDesignArgs, ctx: &Ctx) -> Result<Report> {
    let set = read_point_set(&args.input)?;
    let certs = match (&set, ctx.mode) {
        (AnyPointSet::Exact(x), ModeArg::Exact) => design_checks(x, args.t, args.criterion)?,
        (AnyPointSet::Exact(x), ModeArg::Float) => design_checks(&x.to_f64(), args.t, args.criterion)?,
        (AnyPointSet::Float(x), _) => design_checks(x, args.t, args.criterion)?,
    };
    let passed = certs.iter().all(Certificate::passed);
    let lines = certs
        .iter()
        .map(|c| format!("{} at t={} ({} mode): {}", c.criterion, args.t, mode_name(c), verdict(c.passed())))
        .collect();
    let result = json!({ "certificates": certs });
    if let Some(path) = &args.out {
        write_json(path, &crate::output::envelope(&ctx.meta, passed, &result))?;
    }
    Report::new(lines, passed, result)
}

pub fn bounds(args: &BoundsArgs, ctx: &Ctx) -> Result<Report> {
    let rep = ectff2_moments(args.d, args.n).map_err(|e| usage(e.to_string()))?;
    let lines = vec![
        format!("d={}, N={}: e1,0 = {}, mean e2 = {}, gap = {}", rep.d, rep.n, rep.e10, rep.e2_mean, rep.gap),
        format!("predicted Σ P(2,2) = {}", rep.p22_sum),
        format!(
            "bounds {} <= N <= {}: lower {}, upper {}; class {}",
            rep.lower_bound,
            rep.upper_bound,
            verdict(rep.lower_ok),
            verdict(rep.upper_ok),
            serde_json::to_value(rep.class)?.as_str().unwrap_or_default()
        ),
    ];
    if let Some(path) = &args.out {
        write_artifact(path, &ctx.meta, &rep)?;
    }
    Report::new(lines, true, rep)
}

pub fn check_ectff2_cmd(args: &CheckEctff2Args, ctx: &Ctx) -> Result<Report> {
    let frame = in_mode(read_frame(&args.input)?, ctx.mode)?;
    let check = check_ectff2(frame.subspaces())?;
    let mut lines = vec![
        format!("equi-chordal: {}", verdict(check.equichordal.passed())),
        format!("equi-isoclinic: {}", verdict(check.equiisoclinic.passed())),
        format!("TFF_2: {}", verdict(check.tff.passed())),
        format!("ECTFF_2 certificate: {}", verdict(check.passed())),
    ];
    if check.odd_dimension_exclusion {
        lines.push("equi-isoclinic planes in odd dimension cannot form a tight 2-fusion frame".into());
    }
    let passed = check.passed();
    let result = serde_json::to_value(&check)?;
    if let Some(path) = &args.out {
        write_json(path, &crate::output::envelope(&ctx.meta, passed, &result))?;
    }
    Report::new(lines, passed, result)
}

pub fn sic_lift(args: &SicLiftArgs, ctx: &Ctx) -> Result<Report> {
    if args.n != 2 {
        return Err(usage(format!("no built-in SIC fiducial for n = {}; only n = 2 is available", args.n)));
    }
    let sic = SicSystem::tetrahedral();
    let planes = sic_to_eitff(&sic)?;
    let check = check_ectff2(&planes)?;
    let d = 2 * args.n;
    let lines = vec![
        format!(
            "{} planes in G(2,{d}), cos^2 = {}, TFF_2: {}, EI: {}",
            planes.len(),
            check.equiisoclinic.common,
            verdict(check.tff.passed()),
            verdict(check.equiisoclinic.passed())
        ),
        format!("N = d^2/4: {}", planes.len() * 4 == d * d),
    ];
    if let Some(path) = &args.out {
        write_artifact(path, &ctx.meta, FrameJson::from(&FrameConfig::equal_weight(planes.clone())?))?;
    }
    let passed = check.passed();
    let result = json!({
        "mode": "float",
        "mode_note": "the SIC plane projectors are not all rational, so checks use float arithmetic",
        "sic": sic,
        "check": check,
    });
    Report::new(lines, passed, result)
}

pub fn embed(args: &EmbedArgs, ctx: &Ctx) -> Result<Report> {
    let frame = in_mode(read_frame(&args.input)?, ctx.mode)?;
    let planes = frame.subspaces();
    let image_dim = embedding_dim(frame.ambient_dim());
    let points = planes.iter().map(chs_embed).collect::<fusion_core::Result<Vec<_>>>()?;
    let n = points.len();
    let image = PointSetJson::Float { d: image_dim, points, weights: vec![1.0; n] };
    let check = design_to_sphere_map_check(planes)?;
    if let Some(path) = &args.out {
        write_artifact(path, &ctx.meta, &image)?;
    }
    let lines = vec![
        format!("{n} points on the unit sphere of R^{image_dim}"),
        format!(
            "Grassmann 4-design: {}, image 2-design: {}, Σ P(2) = {}, image degree-1 sum = {:e}",
            verdict(check.design4.passed()),
            verdict(check.image.passed()),
            check.p2_sum,
            check.image_degree1_sum
        ),
    ];
    let passed = check.implication_holds;
    Report::new(lines, passed, json!({ "check": check }))
}

/// Core errors caused by the request rather than by the tool.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_)
            | Error::Unsupported(_)
            | Error::CapExceeded { .. }
            | Error::DimensionMismatch(_)
            | Error::Degenerate(_)
            | Error::Parse(_)
            | Error::Empty(_)
    )
}
