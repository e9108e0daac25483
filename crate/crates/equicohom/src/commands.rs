//! Command implementations shared by the CLI binary and the C bindings.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::{subgroup_key, CochainSpec, CompiledBundle, HomotopyInputSpec};
use crate::classify::{
    check_lift, check_vertical_homotopy, cochain_to_lift, cylinder_twisting, lift_to_cochain,
    vertical_homotopy, Cylinder,
};
use crate::cohomology::{
    apply_delta, bredon_to_twisted_hom, build_deltas, check_comparison_hypotheses,
    cohomology_groups, random_cochain, random_cocycle, twisted_delta, twisted_to_bredon_hom,
    EquivariantCochain, Flavor, GComplexCtx,
};
use crate::equivariant::{fixed_base_vertex, is_g_connected};
use crate::error::{Error, Result};
use crate::localsys::{rebase_twisting, LocalSystem};
use crate::report::{CheckReport, DegreeReport, GroupReport, Hypotheses, Parameters, Report};
use crate::simplicial::SimplexRef;
use crate::zmodule::AbHom;

fn hypotheses(bundle: &CompiledBundle) -> Hypotheses {
    Hypotheses {
        g_connected: is_g_connected(&bundle.gset, &bundle.oc),
        fixed_base_vertex: fixed_base_vertex(&bundle.gset).is_some(),
        has_path_system: bundle.paths.is_some(),
    }
}

/// Structural validation happens at compile time; this reports the outcome
/// together with the hypothesis diagnostics.
pub fn cmd_validate(bundle: &CompiledBundle, bundle_name: &str) -> Report {
    let mut checks = vec![
        CheckReport::pass("group_axioms"),
        CheckReport::pass("simplicial_identities"),
        CheckReport::pass("action_compatibility"),
        CheckReport::pass("coefficient_diagrams"),
        CheckReport::pass("twisting_cocycle"),
    ];
    if bundle.paths.is_some() {
        checks.push(CheckReport::pass("path_system"));
    }
    Report {
        command: "validate".to_string(),
        bundle: bundle_name.to_string(),
        parameters: Parameters::default(),
        degrees: Vec::new(),
        checks,
        hypotheses: Some(hypotheses(bundle)),
        status: "pass".to_string(),
        timing_ms: None,
    }
}

fn requested_degrees(bundle: &CompiledBundle, degrees: Option<Vec<usize>>) -> Result<Vec<usize>> {
    let degs = degrees.unwrap_or_else(|| bundle.degrees.clone());
    let top = bundle.gset.truncation();
    for &n in &degs {
        if n + 1 > top {
            return Err(Error::Validation(format!(
                "degree {n} needs truncation at least {}, bundle has {top}",
                n + 1
            )));
        }
    }
    Ok(degs)
}

pub fn cmd_cohomology(
    bundle: &CompiledBundle,
    bundle_name: &str,
    flavor: Flavor,
    degrees: Option<Vec<usize>>,
) -> Result<Report> {
    let degs = requested_degrees(bundle, degrees)?;
    let ctx = GComplexCtx::new(&bundle.gset, &bundle.oc);
    let system;
    let deltas = match flavor {
        Flavor::Twisted => {
            build_deltas(&ctx, &bundle.coeffs, &bundle.kappa, Flavor::Twisted, None)?
        }
        Flavor::Bredon => {
            check_comparison_hypotheses(&bundle.gset, &bundle.oc)?;
            let paths = bundle.paths.as_ref().ok_or_else(|| {
                Error::PathMissing("the compatibility flavor needs a path system".to_string())
            })?;
            system = LocalSystem::new(
                &bundle.gset,
                &bundle.oc,
                &bundle.coeffs,
                &bundle.kappa,
                paths,
            )?;
            build_deltas(
                &ctx,
                &bundle.coeffs,
                &bundle.kappa,
                Flavor::Bredon,
                Some(&system),
            )?
        }
    };
    let groups = cohomology_groups(&deltas)?;
    let degrees = degs
        .iter()
        .map(|&n| {
            let report = GroupReport::of(&groups[n]);
            DegreeReport {
                degree: n,
                bredon: (flavor == Flavor::Bredon).then(|| GroupReport::of(&groups[n])),
                twisted: (flavor == Flavor::Twisted).then_some(report),
                equal: None,
            }
        })
        .collect();
    Ok(Report {
        command: "cohomology".to_string(),
        bundle: bundle_name.to_string(),
        parameters: Parameters {
            degrees: Some(degs),
            flavor: Some(flavor.to_string()),
            ..Parameters::default()
        },
        degrees,
        checks: Vec::new(),
        hypotheses: Some(hypotheses(bundle)),
        status: "pass".to_string(),
        timing_ms: None,
    })
}

/// Run both pipelines on the same bundle: the compatibility complex from
/// raw labels and paths, the twisted complex from the rebased cocycle.
/// Verifies that the comparison maps are mutually inverse cochain maps,
/// that both coboundaries square to zero on random cochains, and that the
/// invariant factors agree in every requested degree, exactly.
pub fn cmd_compare(
    bundle: &CompiledBundle,
    bundle_name: &str,
    degrees: Option<Vec<usize>>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    check_comparison_hypotheses(&bundle.gset, &bundle.oc)?;
    let paths = bundle.paths.as_ref().ok_or_else(|| {
        Error::PathMissing("comparison needs a path system".to_string())
    })?;
    let degs = requested_degrees(bundle, degrees)?;
    let ctx = GComplexCtx::new(&bundle.gset, &bundle.oc);
    let system = LocalSystem::new(
        &bundle.gset,
        &bundle.oc,
        &bundle.coeffs,
        &bundle.kappa,
        paths,
    )?;
    let based = rebase_twisting(&system)?;
    log::debug!("rebased the twisting cocycle through the path system");
    let mut checks = Vec::new();
    let rebased_valid =
        crate::localsys::validate_twisting(&bundle.gset, &bundle.oc, &bundle.coeffs.pi, &based);
    if rebased_valid.is_valid() {
        checks.push(CheckReport::pass("rebased_twisting_validates"));
    } else {
        checks.push(CheckReport::fail(
            "rebased_twisting_validates",
            rebased_valid.violations.join("; "),
        ));
    }

    let bredon = build_deltas(&ctx, &bundle.coeffs, &bundle.kappa, Flavor::Bredon, Some(&system))?;
    let twisted = build_deltas(&ctx, &bundle.coeffs, &based, Flavor::Twisted, None)?;

    // Coboundaries square to zero, symbolically and on random cochains.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut square_ok = true;
    let mut witness = None;
    for (name, deltas) in [("bredon", &bredon), ("twisted", &twisted)] {
        for pair in deltas.windows(2) {
            if !pair[1].compose(&pair[0]).is_zero_hom() {
                square_ok = false;
                witness = Some(format!("{name} coboundary composite is nonzero"));
            }
        }
        for n in 0..deltas.len().saturating_sub(1) {
            for _ in 0..samples {
                let f = random_cochain(&ctx, &bundle.coeffs, n, Flavor::Twisted, &mut rng);
                let ddf = apply_delta(
                    &deltas[n + 1],
                    &apply_delta(&deltas[n], &f, &ctx, &bundle.coeffs),
                    &ctx,
                    &bundle.coeffs,
                );
                if !ddf.is_zero(&ctx, &bundle.coeffs) {
                    square_ok = false;
                    witness = Some(format!("{name} coboundary fails on a degree-{n} cochain"));
                }
            }
        }
    }
    checks.push(if square_ok {
        CheckReport::pass("coboundary_squares_to_zero")
    } else {
        CheckReport::fail("coboundary_squares_to_zero", witness.unwrap_or_default())
    });

    // Comparison maps: mutually inverse and intertwining.
    let mut roundtrip_ok = true;
    let mut cochain_map_ok = true;
    for n in 0..=ctx.truncation() {
        let to_tw = bredon_to_twisted_hom(&system, &ctx, n)?;
        let back = twisted_to_bredon_hom(&system, &ctx, n)?;
        let id = AbHom::identity(&to_tw.domain);
        if !back.compose(&to_tw).equals(&id) || !to_tw.compose(&back).equals(&id) {
            roundtrip_ok = false;
        }
        if n < ctx.truncation() {
            let up = bredon_to_twisted_hom(&system, &ctx, n + 1)?;
            if !twisted[n].compose(&to_tw).equals(&up.compose(&bredon[n])) {
                cochain_map_ok = false;
            }
        }
    }
    checks.push(if roundtrip_ok {
        CheckReport::pass("comparison_maps_mutually_inverse")
    } else {
        CheckReport::fail(
            "comparison_maps_mutually_inverse",
            "composite differs from the identity".to_string(),
        )
    });
    checks.push(if cochain_map_ok {
        CheckReport::pass("comparison_intertwines_coboundaries")
    } else {
        CheckReport::fail(
            "comparison_intertwines_coboundaries",
            "coboundary squares do not commute".to_string(),
        )
    });

    let hb = cohomology_groups(&bredon)?;
    let ht = cohomology_groups(&twisted)?;
    let degrees = degs
        .iter()
        .map(|&n| {
            let equal = hb[n].rank() == ht[n].rank() && hb[n].torsion() == ht[n].torsion();
            DegreeReport {
                degree: n,
                bredon: Some(GroupReport::of(&hb[n])),
                twisted: Some(GroupReport::of(&ht[n])),
                equal: Some(equal),
            }
        })
        .collect();

    let mut report = Report {
        command: "compare".to_string(),
        bundle: bundle_name.to_string(),
        parameters: Parameters {
            degrees: Some(degs),
            samples: Some(samples),
            seed: Some(seed),
            ..Parameters::default()
        },
        degrees,
        checks,
        hypotheses: Some(hypotheses(bundle)),
        status: String::new(),
        timing_ms: None,
    };
    report.status = if report.all_pass() { "pass" } else { "fail" }.to_string();
    Ok(report)
}

/// Classification round-trips at one degree: lift every sampled cochain,
/// validate the lift, reconstruct the cochain, and certify the
/// cocycle/kernel correspondence.
pub fn cmd_classify(
    bundle: &CompiledBundle,
    bundle_name: &str,
    degree: usize,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let ctx = GComplexCtx::new(&bundle.gset, &bundle.oc);
    if degree + 1 > ctx.truncation() {
        return Err(Error::Validation(format!(
            "classification at degree {degree} needs truncation at least {}",
            degree + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = twisted_delta(&ctx, &bundle.coeffs, &bundle.kappa, degree)?;

    let mut lift_ok = true;
    let mut roundtrip_ok = true;
    let mut rebuild_ok = true;
    let mut cocycle_ok = true;
    let mut witness = Vec::new();
    for s in 0..samples {
        let t = if s % 2 == 0 {
            random_cochain(&ctx, &bundle.coeffs, degree, Flavor::Twisted, &mut rng)
        } else {
            random_cocycle(&ctx, &bundle.coeffs, &delta, degree, Flavor::Twisted, &mut rng)
        };
        let lift = cochain_to_lift(&ctx, &bundle.coeffs, &bundle.kappa, &t)?;
        let bad = check_lift(&ctx, &bundle.coeffs, &bundle.kappa, &lift);
        if !bad.is_empty() {
            lift_ok = false;
            witness.push(bad[0].clone());
        }
        let back = lift_to_cochain(&ctx, &bundle.coeffs, &bundle.kappa, &lift)?;
        if !back.equals(&ctx, &bundle.coeffs, &t) {
            roundtrip_ok = false;
        }
        let again = cochain_to_lift(&ctx, &bundle.coeffs, &bundle.kappa, &back)?;
        for (key, c) in &lift.cochains {
            if !again.cochains[key].equals(bundle.coeffs.m0.group(key.0), c) {
                rebuild_ok = false;
            }
        }
        let is_cocycle = apply_delta(&delta, &t, &ctx, &bundle.coeffs).is_zero(&ctx, &bundle.coeffs);
        if is_cocycle != lift.lands_in_cocycles(&bundle.coeffs) {
            cocycle_ok = false;
        }
    }
    let mut checks = Vec::new();
    checks.push(if lift_ok {
        CheckReport::pass("lift_invariants")
    } else {
        CheckReport::fail("lift_invariants", witness.join("; "))
    });
    checks.push(if roundtrip_ok {
        CheckReport::pass("cochain_lift_cochain_roundtrip")
    } else {
        CheckReport::fail("cochain_lift_cochain_roundtrip", String::new())
    });
    checks.push(if rebuild_ok {
        CheckReport::pass("lift_cochain_lift_roundtrip")
    } else {
        CheckReport::fail("lift_cochain_lift_roundtrip", String::new())
    });
    checks.push(if cocycle_ok {
        CheckReport::pass("cocycles_match_kernel_lifts")
    } else {
        CheckReport::fail("cocycles_match_kernel_lifts", String::new())
    });

    let mut report = Report {
        command: "classify".to_string(),
        bundle: bundle_name.to_string(),
        parameters: Parameters {
            degree: Some(degree),
            samples: Some(samples),
            seed: Some(seed),
            ..Parameters::default()
        },
        degrees: Vec::new(),
        checks,
        hypotheses: Some(hypotheses(bundle)),
        status: String::new(),
        timing_ms: None,
    };
    report.status = if report.all_pass() { "pass" } else { "fail" }.to_string();
    if report.status == "fail" {
        return Err(Error::LiftInvariantViolation(
            "a classification verdict failed; see the report".to_string(),
        ));
    }
    Ok(report)
}

fn cochain_from_spec(
    bundle: &CompiledBundle,
    ctx: &GComplexCtx,
    spec: &CochainSpec,
) -> Result<EquivariantCochain> {
    let n = spec.degree;
    if n > ctx.truncation() {
        return Err(Error::Validation(format!("cochain degree {n} exceeds the truncation")));
    }
    let mut f = EquivariantCochain::zero(ctx, &bundle.coeffs, n, Flavor::Twisted);
    for (name, coords) in &spec.values {
        let r = bundle
            .gset
            .space
            .lookup(name)
            .ok_or_else(|| Error::Validation(format!("unknown simplex {name:?}")))?;
        if r.dim != n {
            return Err(Error::Validation(format!(
                "{name:?} has dimension {}, cochain degree is {n}",
                r.dim
            )));
        }
        let (pos, g) = ctx.orbit_lookup[n][r.idx];
        if g != bundle.gset.group.identity() {
            return Err(Error::Validation(format!(
                "{name:?} is not an orbit representative; use {:?}",
                bundle.gset.space.name(SimplexRef {
                    dim: n,
                    idx: ctx.orbits[n][pos].rep
                })
            )));
        }
        let h = ctx.stabilizer_ids[n][pos];
        let gens = bundle.coeffs.m0.group(h).generators();
        if coords.len() != gens {
            return Err(Error::Validation(format!(
                "{name:?} expects {gens} coordinates (coefficients at subgroup {})",
                subgroup_key(bundle.oc.subgroup_elements(h))
            )));
        }
        f.blocks[pos] = coords.iter().map(|&v| BigInt::from(v)).collect();
    }
    Ok(f)
}

pub enum HomotopyInput {
    Generate { pairs: usize, seed: u64 },
    Explicit(HomotopyInputSpec),
}

/// Construct vertical homotopies between cohomologous cocycles and verify
/// the projection and end-restriction conditions.
pub fn cmd_homotopy(
    bundle: &CompiledBundle,
    bundle_name: &str,
    degree: usize,
    input: HomotopyInput,
) -> Result<Report> {
    let ctx = GComplexCtx::new(&bundle.gset, &bundle.oc);
    if degree == 0 || degree + 1 > ctx.truncation() {
        return Err(Error::Validation(format!(
            "homotopy degree must be between 1 and {}",
            ctx.truncation().saturating_sub(1)
        )));
    }
    let cyl = Cylinder::new(&bundle.gset)?;
    let cyl_ctx = GComplexCtx::new(&cyl.gset, &bundle.oc);
    let kappa_cyl = cylinder_twisting(&cyl, &bundle.oc, &bundle.coeffs, &bundle.kappa)?;
    let delta_n = twisted_delta(&ctx, &bundle.coeffs, &bundle.kappa, degree)?;
    let delta_prev = twisted_delta(&ctx, &bundle.coeffs, &bundle.kappa, degree - 1)?;

    let mut cases: Vec<(EquivariantCochain, EquivariantCochain, Option<EquivariantCochain>)> =
        Vec::new();
    let mut parameters = Parameters {
        degree: Some(degree),
        ..Parameters::default()
    };
    match input {
        HomotopyInput::Generate { pairs, seed } => {
            parameters.pairs = Some(pairs);
            parameters.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..pairs {
                let f1 = random_cocycle(
                    &ctx,
                    &bundle.coeffs,
                    &delta_n,
                    degree,
                    Flavor::Twisted,
                    &mut rng,
                );
                let h = random_cochain(&ctx, &bundle.coeffs, degree - 1, Flavor::Twisted, &mut rng);
                let f0 = f1.add(&apply_delta(&delta_prev, &h, &ctx, &bundle.coeffs));
                cases.push((f0, f1, Some(h)));
            }
        }
        HomotopyInput::Explicit(spec) => {
            let f0 = cochain_from_spec(bundle, &ctx, &spec.f0)?;
            let f1 = cochain_from_spec(bundle, &ctx, &spec.f1)?;
            let h = spec
                .h
                .as_ref()
                .map(|h| cochain_from_spec(bundle, &ctx, h))
                .transpose()?;
            cases.push((f0, f1, h));
        }
    }

    let mut verdict_ok = true;
    let mut witness = Vec::new();
    for (f0, f1, h) in &cases {
        let hom = vertical_homotopy(
            &ctx,
            &cyl,
            &cyl_ctx,
            &bundle.coeffs,
            &bundle.kappa,
            &kappa_cyl,
            f0,
            f1,
            h.as_ref(),
        )?;
        let g0 = cochain_to_lift(&ctx, &bundle.coeffs, &bundle.kappa, f0)?;
        let g1 = cochain_to_lift(&ctx, &bundle.coeffs, &bundle.kappa, f1)?;
        let bad = check_vertical_homotopy(
            &ctx,
            &cyl,
            &cyl_ctx,
            &bundle.coeffs,
            &bundle.kappa,
            &kappa_cyl,
            &hom.lift,
            &g0,
            &g1,
        );
        if !bad.is_empty() {
            verdict_ok = false;
            witness.push(bad[0].clone());
        }
    }

    let mut checks = vec![CheckReport::pass("homotopies_constructed")];
    checks.push(if verdict_ok {
        CheckReport::pass("projection_and_end_restrictions")
    } else {
        CheckReport::fail("projection_and_end_restrictions", witness.join("; "))
    });

    let mut report = Report {
        command: "homotopy".to_string(),
        bundle: bundle_name.to_string(),
        parameters,
        degrees: Vec::new(),
        checks,
        hypotheses: Some(hypotheses(bundle)),
        status: String::new(),
        timing_ms: None,
    };
    report.status = if report.all_pass() { "pass" } else { "fail" }.to_string();
    if report.status == "fail" {
        return Err(Error::LiftInvariantViolation(
            "a homotopy verdict failed; see the report".to_string(),
        ));
    }
    Ok(report)
}
