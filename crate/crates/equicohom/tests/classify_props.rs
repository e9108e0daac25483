//! Classification machinery checks: simplicial-identity audits for every
//! pointwise-constructed object, the orbit-cell cochain isomorphism with
//! its naturality square, lift round-trips, and vertical homotopies.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use equicohom::classify::{
    canonical_twist, check_lift, check_simplicial_identities, check_vertical_homotopy,
    classifying_map, cochain_to_lift, cylinder_twisting, em_to_ots_cochain, fundamental_cochain,
    lift_to_cochain, ots_cochain_to_em, pullback_twisting, restrict_lift_to_end, tcp_degeneracy,
    tcp_face, tcp_map, tuples, vertical_homotopy, wbar_degeneracy, wbar_face, wbar_simplices,
    Cylinder, EmCochain, TcpSimplex, WBarSimplex,
};
use equicohom::cohomology::{
    apply_delta, evaluate, random_cochain, random_cocycle, twisted_delta, EquivariantCochain,
    Flavor, GComplexCtx,
};
use equicohom::equivariant::{orbit_times_simplex, FinGroup, GSimplicialSet, OrbitCategory};
use equicohom::localsys::{
    twist_of_simplex, validate_twisting, CoefficientData, TwistingCocycle,
};
use equicohom::simplicial::FormalSimplex;
use equicohom::testkit::*;

fn random_em(
    coeffs: &CoefficientData,
    h: usize,
    n: usize,
    q: usize,
    rng: &mut impl Rng,
) -> EmCochain {
    let mut c = EmCochain::zero(coeffs, h, n, q);
    for v in &mut c.values {
        for x in v.iter_mut() {
            *x = BigInt::from(rng.random_range(-9i64..=9));
        }
    }
    c
}

#[test]
fn classifying_complex_passes_the_identity_suite() {
    for (group, max_dim) in [(FinGroup::cyclic(2), 4usize), (symmetric_3(), 3)] {
        let cells: Vec<(usize, WBarSimplex)> = (0..=max_dim)
            .flat_map(|q| {
                wbar_simplices(&group, 0, q)
                    .into_iter()
                    .map(move |w| (q, w))
            })
            .collect();
        let g1 = group.clone();
        let g2 = group.clone();
        let bad = check_simplicial_identities(
            &cells,
            &move |_, w, i| wbar_face(&g1, w, i),
            &move |_, w, j| wbar_degeneracy(&g2, w, j),
            &|a, b| a == b,
            "classifying complex",
        );
        assert!(bad.is_empty(), "{bad:?}");

        // The first-entry projection satisfies all four twisting
        // identities with respect to this face convention.
        for (q, w) in &cells {
            let q = *q;
            if q >= 2 {
                let k = canonical_twist(w).unwrap();
                let k0 = canonical_twist(&wbar_face(&group, w, 0).unwrap()).unwrap();
                let k1 = canonical_twist(&wbar_face(&group, w, 1).unwrap()).unwrap();
                assert_eq!(k, group.mul(group.inv(k0), k1));
                for j in 2..=q {
                    let kf = canonical_twist(&wbar_face(&group, w, j).unwrap()).unwrap();
                    assert_eq!(k, kf);
                }
            }
            if q >= 1 {
                let k = canonical_twist(w).unwrap();
                for j in 1..=q {
                    let ks =
                        canonical_twist(&wbar_degeneracy(&group, w, j).unwrap()).unwrap();
                    assert_eq!(k, ks);
                }
            }
            let s0 = wbar_degeneracy(&group, w, 0).unwrap();
            assert_eq!(canonical_twist(&s0).unwrap(), group.identity());
        }
    }
}

#[test]
fn simplex_cochain_model_passes_the_identity_suite() {
    // The simplicial abelian group of normalized cochains on standard
    // simplices, through the same generic checker as everything else.
    let oc = OrbitCategory::new(FinGroup::cyclic(2));
    let coeffs = coeffs_z_sign(&oc);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 0..=2usize {
        let cells: Vec<(usize, EmCochain)> = (0..=3)
            .map(|q| (q, random_em(&coeffs, 0, n, q, &mut rng)))
            .collect();
        let group = coeffs.m0.group(0).clone();
        let bad = check_simplicial_identities(
            &cells,
            &|_, c: &EmCochain, i| Ok(c.face(i)),
            &|_, c: &EmCochain, j| Ok(c.degeneracy(j)),
            &|a: &EmCochain, b: &EmCochain| a.equals(&group, b),
            "simplex cochain model",
        );
        assert!(bad.is_empty(), "{bad:?}");
    }
}

#[test]
fn twisted_product_cells_pass_the_identity_suite() {
    let oc = OrbitCategory::new(FinGroup::cyclic(2));
    let coeffs = coeffs_z_sign(&oc);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cells = Vec::new();
    for q in 0..=3usize {
        for w in wbar_simplices(&coeffs.pi.groups[0], 0, q) {
            let c = random_em(&coeffs, 0, 1, q, &mut rng);
            cells.push((q, TcpSimplex { cochain: c, base: w }));
        }
    }
    let co1 = coeffs.clone();
    let co2 = coeffs.clone();
    let group = coeffs.m0.group(0).clone();
    let bad = check_simplicial_identities(
        &cells,
        &move |_, t, i| tcp_face(&co1, t, i),
        &move |_, t, j| tcp_degeneracy(&co2, t, j),
        &|a: &TcpSimplex, b: &TcpSimplex| {
            a.base == b.base && a.cochain.equals(&group, &b.cochain)
        },
        "twisted product",
    );
    assert!(bad.is_empty(), "{bad:?}");

    // Kernel cells stay kernel cells under every face: coboundaries of
    // one-lower-degree cochains are cocycles, and the twisted face of a
    // cocycle component is again a cocycle.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in 1..=3usize {
        for w in wbar_simplices(&coeffs.pi.groups[0], 0, q) {
            let cocycle = random_em(&coeffs, 0, 0, q, &mut rng).delta();
            assert!(cocycle.delta().is_zero(coeffs.m0.group(0)));
            let t = TcpSimplex {
                cochain: cocycle,
                base: w,
            };
            for i in 0..=q {
                let f = tcp_face(&coeffs, &t, i).unwrap();
                assert!(f.cochain.delta().is_zero(coeffs.m0.group(0)));
            }
        }
    }

    // The quoted leading-face formula, directly.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let c = random_em(&coeffs, 0, 1, 2, &mut rng);
    let w = WBarSimplex {
        subgroup: 0,
        entries: vec![1, 0],
    };
    let t = TcpSimplex {
        cochain: c.clone(),
        base: w,
    };
    let f0 = tcp_face(&coeffs, &t, 0).unwrap();
    assert_eq!(f0.base.entries, vec![0]);
    let expected = c.face(0).map_values(coeffs.phi.act(0, 1), 0);
    assert!(f0.cochain.equals(coeffs.m0.group(0), &expected));
}

#[test]
fn classifying_map_properties() {
    let theta = theta_graph();
    let oc = OrbitCategory::new(theta.group.clone());
    let coeffs = coeffs_z_sign(&oc);
    let kappa = uniform_twist(&theta, &oc, |e| if e == 2 { 0 } else { 1 });
    assert!(validate_twisting(&theta, &oc, &coeffs.pi, &kappa).is_valid());

    for h in 0..oc.subgroup_count() {
        let mask = theta.fixed_mask(oc.subgroup_elements(h));
        // Vertices go to the empty tuple.
        for v in 0..theta.space.count(0) {
            if mask[0][v] {
                let x = FormalSimplex::nondegenerate(0, v);
                let w = classifying_map(&theta, &coeffs, &kappa, h, &x).unwrap();
                assert!(w.entries.is_empty());
            }
        }
        // Edges go to the singleton of their label; the first entry always
        // recovers the twisting value.
        for q in 1..=theta.truncation() {
            for x in theta.space.all_formal(q) {
                if !mask[x.base.dim][x.base.idx] {
                    continue;
                }
                let w = classifying_map(&theta, &coeffs, &kappa, h, &x).unwrap();
                assert_eq!(w.entries.len(), q);
                assert_eq!(
                    canonical_twist(&w).unwrap(),
                    twist_of_simplex(&theta, &coeffs.pi, &kappa, h, &x).unwrap()
                );
                // Simpliciality against the classifying-complex structure.
                let group = &coeffs.pi.groups[h];
                for i in 0..=q {
                    let a = classifying_map(
                        &theta,
                        &coeffs,
                        &kappa,
                        h,
                        &theta.space.face(&x, i).unwrap(),
                    )
                    .unwrap();
                    let b = wbar_face(group, &w, i).unwrap();
                    assert_eq!(a, b);
                }
                if q + 1 <= theta.truncation() {
                    for j in 0..=q {
                        let a = classifying_map(
                            &theta,
                            &coeffs,
                            &kappa,
                            h,
                            &theta.space.degeneracy(&x, j),
                        )
                        .unwrap();
                        let b = wbar_degeneracy(group, &w, j).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}

#[test]
fn fundamental_cochain_values_and_naturality() {
    let oc = OrbitCategory::new(FinGroup::cyclic(2));
    let coeffs = coeffs_weighted_theta(&oc);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // Zero cochain evaluates to zero; the 0-dimensional formula reads the
    // single vertex value.
    let z = EmCochain::zero(&coeffs, 0, 1, 1);
    let w = WBarSimplex {
        subgroup: 0,
        entries: vec![1],
    };
    let t = TcpSimplex {
        cochain: z,
        base: w,
    };
    assert!(coeffs
        .m0
        .group(0)
        .is_zero_element(&fundamental_cochain(&t).unwrap()));

    let mut c0 = EmCochain::zero(&coeffs, 0, 0, 0);
    c0.set_value(&[0], vec![BigInt::from(7)]);
    let t0 = TcpSimplex {
        cochain: c0,
        base: WBarSimplex {
            subgroup: 0,
            entries: vec![],
        },
    };
    assert_eq!(fundamental_cochain(&t0).unwrap(), vec![BigInt::from(7)]);

    // Dimension guard.
    let c_wrong = EmCochain::zero(&coeffs, 0, 1, 2);
    let t_wrong = TcpSimplex {
        cochain: c_wrong,
        base: WBarSimplex {
            subgroup: 0,
            entries: vec![0, 0],
        },
    };
    assert!(fundamental_cochain(&t_wrong).is_err());

    // Naturality: evaluating after the structure map equals transporting
    // the evaluation (weighted coefficients keep this nontrivial).
    for (mid, m) in oc.morphisms.iter().enumerate() {
        for _ in 0..20 {
            let n = 1;
            let c = random_em(&coeffs, m.dst, n, n, &mut rng);
            let entries: Vec<usize> = (0..n).map(|_| rng.random_range(0..2)).collect();
            let t = TcpSimplex {
                cochain: c,
                base: WBarSimplex {
                    subgroup: m.dst,
                    entries,
                },
            };
            let moved = tcp_map(&coeffs, mid, m.src, &t);
            let lhs = fundamental_cochain(&moved).unwrap();
            let rhs = coeffs.m0.map(mid).apply(&fundamental_cochain(&t).unwrap());
            let diff: Vec<BigInt> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            assert!(coeffs.m0.group(m.src).is_zero_element(&diff));
        }
    }
}

/// Build the pullback data the lift construction uses, for a given simplex
/// of a fixture, and return the orbit-cell complex with its twisting.
fn ots_with_pullback(
    gset: &GSimplicialSet,
    oc: &OrbitCategory,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    h: usize,
    q: usize,
    x: &FormalSimplex,
) -> (
    equicohom::equivariant::OrbitTimesSimplex,
    TwistingCocycle,
) {
    let ots = orbit_times_simplex(oc, h, q, q);
    let pulled = pullback_twisting(gset, oc, coeffs, kappa, &ots, x).unwrap();
    (ots, pulled)
}

#[test]
fn orbit_cell_cochain_iso_roundtrips_and_is_a_cochain_map() {
    let theta = theta_graph();
    let oc = OrbitCategory::new(theta.group.clone());
    let coeffs = coeffs_z_sign(&oc);
    let kappa = uniform_twist(&theta, &oc, |e| if e == 2 { 0 } else { 1 });
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    for h in 0..oc.subgroup_count() {
        for q in 1..=3usize {
            // Pull the twisting back along a fixed edge's equivariant
            // simplex when one exists at this level; otherwise along a
            // degenerate vertex simplex.
            let mask = theta.fixed_mask(oc.subgroup_elements(h));
            let x = if q <= theta.truncation()
                && (0..theta.space.count(q)).any(|i| mask[q][i])
            {
                let idx = (0..theta.space.count(q)).find(|&i| mask[q][i]).unwrap();
                FormalSimplex::nondegenerate(q, idx)
            } else {
                // q-fold degeneracy of a fixed vertex
                let mut v = FormalSimplex::nondegenerate(0, 0);
                for j in 0..q {
                    v = theta.space.degeneracy(&v, j);
                }
                v
            };
            let (ots, kots) = ots_with_pullback(&theta, &oc, &coeffs, &kappa, h, q, &x);
            assert!(
                validate_twisting(&ots.gset, &oc, &coeffs.pi, &kots).is_valid(),
                "pulled-back twisting validates"
            );
            let ots_ctx = GComplexCtx::new(&ots.gset, &oc);
            for n in 0..=2usize.min(q) {
                for _ in 0..10 {
                    let f = random_cochain(&ots_ctx, &coeffs, n, Flavor::Twisted, &mut rng);
                    let em = ots_cochain_to_em(&ots, &ots_ctx, &coeffs, &kots, h, n, q, &f)
                        .unwrap();
                    let back =
                        em_to_ots_cochain(&ots, &ots_ctx, &coeffs, &kots, h, &em).unwrap();
                    assert!(back.equals(&ots_ctx, &coeffs, &f));

                    // Round trip the other way from a random plain cochain.
                    let c = random_em(&coeffs, h, n, q, &mut rng);
                    let up = em_to_ots_cochain(&ots, &ots_ctx, &coeffs, &kots, h, &c).unwrap();
                    let down =
                        ots_cochain_to_em(&ots, &ots_ctx, &coeffs, &kots, h, n, q, &up).unwrap();
                    assert!(down.equals(coeffs.m0.group(h), &c));

                    // Vertex-0 tuples skip the untwisting entirely.
                    for t in tuples(q, n + 1) {
                        if t[0] != 0 {
                            continue;
                        }
                        let cell = ots.cell(0, &t).unwrap();
                        let direct = evaluate(
                            &ots_ctx,
                            &coeffs,
                            &f,
                            h,
                            &FormalSimplex::nondegenerate(cell.dim, cell.idx),
                        )
                        .unwrap();
                        let diff: Vec<BigInt> =
                            em.value(&t).iter().zip(&direct).map(|(a, b)| a - b).collect();
                        assert!(coeffs.m0.group(h).is_zero_element(&diff));
                    }

                    // Cochain map: untwisting intertwines the twisted
                    // coboundary with the plain simplicial one.
                    if n < q {
                        let delta = twisted_delta(&ots_ctx, &coeffs, &kots, n).unwrap();
                        let df = apply_delta(&delta, &f, &ots_ctx, &coeffs);
                        let lhs =
                            ots_cochain_to_em(&ots, &ots_ctx, &coeffs, &kots, h, n + 1, q, &df)
                                .unwrap();
                        let rhs = em.delta();
                        assert!(lhs.equals(coeffs.m0.group(h), &rhs));
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_cell_cochain_iso_naturality_square() {
    // For every orbit morphism: transporting coefficients after untwisting
    // over the target equals untwisting the pulled-back cochain over the
    // source.
    let theta = theta_graph();
    let oc = OrbitCategory::new(theta.group.clone());
    let coeffs = coeffs_weighted_theta(&oc);
    let kappa = uniform_twist(&theta, &oc, |e| if e == 2 { 0 } else { 1 });
    let mut rng = ChaCha8Rng::seed_from_u64(13);

    for (mid, m) in oc.morphisms.iter().enumerate() {
        for q in 1..=3usize {
            for n in 0..=2usize.min(q) {
                // A simplex of the fixture fixed by the target subgroup so
                // that both pullbacks come from one equivariant simplex.
                let mask = theta.fixed_mask(oc.subgroup_elements(m.dst));
                let z = if q <= theta.truncation()
                    && (0..theta.space.count(q)).any(|i| mask[q][i])
                {
                    let idx = (0..theta.space.count(q)).find(|&i| mask[q][i]).unwrap();
                    FormalSimplex::nondegenerate(q, idx)
                } else {
                    let mut v = FormalSimplex::nondegenerate(0, 0);
                    for j in 0..q {
                        v = theta.space.degeneracy(&v, j);
                    }
                    v
                };
                let gz = theta.act(m.rep, &z);
                let (ots_k, kappa_k) =
                    ots_with_pullback(&theta, &oc, &coeffs, &kappa, m.dst, q, &z);
                let (ots_h, kappa_h) =
                    ots_with_pullback(&theta, &oc, &coeffs, &kappa, m.src, q, &gz);
                let ctx_k = GComplexCtx::new(&ots_k.gset, &oc);
                let ctx_h = GComplexCtx::new(&ots_h.gset, &oc);
                for _ in 0..10 {
                    let f = random_cochain(&ctx_k, &coeffs, n, Flavor::Twisted, &mut rng);
                    // Left leg: untwist over the target, transport.
                    let ek = ots_cochain_to_em(&ots_k, &ctx_k, &coeffs, &kappa_k, m.dst, n, q, &f)
                        .unwrap();
                    let left = ek.map_values(coeffs.m0.map(mid), m.src);
                    // Right leg: pull the cochain back along the orbit map,
                    // then untwist over the source. The pullback of the
                    // cell (aH, t) is (a g K, t).
                    let mut pulled =
                        EquivariantCochain::zero(&ctx_h, &coeffs, n, Flavor::Twisted);
                    if n <= ctx_h.truncation() {
                        for (pos, orbit) in ctx_h.orbits[n].iter().enumerate() {
                            let (cpos, tuple) = &ots_h.cells[n][orbit.rep];
                            assert_eq!(*cpos, 0);
                            let moved = oc.group.mul(ots_h.cosets[0], m.rep);
                            let kpos = ots_k.coset_position(&oc, m.dst, moved);
                            let cell = ots_k.cell(kpos, tuple).unwrap();
                            pulled.blocks[pos] = evaluate(
                                &ctx_k,
                                &coeffs,
                                &f,
                                m.src,
                                &FormalSimplex::nondegenerate(cell.dim, cell.idx),
                            )
                            .unwrap();
                        }
                    }
                    let right =
                        ots_cochain_to_em(&ots_h, &ctx_h, &coeffs, &kappa_h, m.src, n, q, &pulled)
                            .unwrap();
                    assert!(
                        left.equals(coeffs.m0.group(m.src), &right),
                        "naturality square fails along morphism {mid} (q={q}, n={n})"
                    );
                }
            }
        }
    }
}

struct ClassifyFixture {
    name: &'static str,
    gset: GSimplicialSet,
    coeffs_of: fn(&OrbitCategory) -> CoefficientData,
    labels: fn(usize) -> usize,
}

fn classify_fixtures() -> Vec<ClassifyFixture> {
    vec![
        ClassifyFixture {
            name: "circle_sign",
            gset: circle(2),
            coeffs_of: coeffs_z_sign,
            labels: |_| 1,
        },
        ClassifyFixture {
            name: "theta_flip",
            gset: theta_graph(),
            coeffs_of: coeffs_z_sign,
            labels: |e| if e == 2 { 0 } else { 1 },
        },
        ClassifyFixture {
            name: "free_circles",
            gset: free_circles(),
            coeffs_of: coeffs_z_sign,
            labels: |_| 1,
        },
        ClassifyFixture {
            name: "circle_mod4",
            gset: circle(2),
            coeffs_of: coeffs_z4_flip,
            labels: |_| 1,
        },
        ClassifyFixture {
            name: "pillow",
            gset: pillow(),
            coeffs_of: coeffs_trivial_z,
            labels: |_| 0,
        },
    ]
}

#[test]
fn lift_roundtrips_and_cocycle_detection() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for fx in classify_fixtures() {
        let oc = OrbitCategory::new(fx.gset.group.clone());
        let coeffs = (fx.coeffs_of)(&oc);
        let kappa = uniform_twist(&fx.gset, &oc, fx.labels);
        let ctx = GComplexCtx::new(&fx.gset, &oc);
        for n in 0..ctx.truncation() {
            let delta = twisted_delta(&ctx, &coeffs, &kappa, n).unwrap();
            // The zero cochain lifts to zero fiber components.
            let zero = EquivariantCochain::zero(&ctx, &coeffs, n, Flavor::Twisted);
            let zlift = cochain_to_lift(&ctx, &coeffs, &kappa, &zero).unwrap();
            for ((h, _, _), c) in &zlift.cochains {
                assert!(c.is_zero(coeffs.m0.group(*h)), "{}", fx.name);
            }
            for _ in 0..12 {
                let t = random_cochain(&ctx, &coeffs, n, Flavor::Twisted, &mut rng);
                let lift = cochain_to_lift(&ctx, &coeffs, &kappa, &t).unwrap();
                let bad = check_lift(&ctx, &coeffs, &kappa, &lift);
                assert!(bad.is_empty(), "{}: {bad:?}", fx.name);
                let back = lift_to_cochain(&ctx, &coeffs, &kappa, &lift).unwrap();
                assert!(back.equals(&ctx, &coeffs, &t), "{}", fx.name);

                // Rebuilding the lift from the recovered cochain gives the
                // same fiber components.
                let again = cochain_to_lift(&ctx, &coeffs, &kappa, &back).unwrap();
                for (key, c) in &lift.cochains {
                    let group = coeffs.m0.group(key.0);
                    assert!(again.cochains[key].equals(group, c), "{}", fx.name);
                }

                // Cocycles land in the kernel subcomplex, non-cocycles do
                // not (degreewise equivalence).
                let dt = apply_delta(&delta, &t, &ctx, &coeffs);
                assert_eq!(
                    dt.is_zero(&ctx, &coeffs),
                    lift.lands_in_cocycles(&coeffs),
                    "{}",
                    fx.name
                );

                // The fiberwise coboundary of the lift corresponds to the
                // twisted coboundary of the cochain.
                let lifted_delta = lift.delta();
                let down = lift_to_cochain(&ctx, &coeffs, &kappa, &lifted_delta).unwrap();
                assert!(down.equals(&ctx, &coeffs, &dt), "{}", fx.name);

                // And genuine cocycles from the kernel lattice land in the
                // subcomplex.
                let z = random_cocycle(&ctx, &coeffs, &delta, n, Flavor::Twisted, &mut rng);
                let zlift = cochain_to_lift(&ctx, &coeffs, &kappa, &z).unwrap();
                assert!(zlift.lands_in_cocycles(&coeffs), "{}", fx.name);
            }
        }
    }
}

#[test]
fn vertical_homotopies_connect_cohomologous_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for fx in classify_fixtures() {
        let oc = OrbitCategory::new(fx.gset.group.clone());
        let coeffs = (fx.coeffs_of)(&oc);
        let kappa = uniform_twist(&fx.gset, &oc, fx.labels);
        let ctx = GComplexCtx::new(&fx.gset, &oc);
        let cyl = Cylinder::new(&fx.gset).unwrap();
        let cyl_ctx = GComplexCtx::new(&cyl.gset, &oc);
        let kappa_cyl = cylinder_twisting(&cyl, &oc, &coeffs, &kappa).unwrap();
        assert!(
            validate_twisting(&cyl.gset, &oc, &coeffs.pi, &kappa_cyl).is_valid(),
            "{}: cylinder twisting validates",
            fx.name
        );

        let n = 1;
        if ctx.truncation() < n + 1 {
            continue;
        }
        let delta_n = twisted_delta(&ctx, &coeffs, &kappa, n).unwrap();
        let delta_prev = twisted_delta(&ctx, &coeffs, &kappa, n - 1).unwrap();
        for round in 0..6 {
            let f1 = random_cocycle(&ctx, &coeffs, &delta_n, n, Flavor::Twisted, &mut rng);
            let h = random_cochain(&ctx, &coeffs, n - 1, Flavor::Twisted, &mut rng);
            let dh = apply_delta(&delta_prev, &h, &ctx, &coeffs);
            let f0 = f1.add(&dh);

            let hom = vertical_homotopy(
                &ctx, &cyl, &cyl_ctx, &coeffs, &kappa, &kappa_cyl, &f0, &f1,
                Some(&h),
            )
            .unwrap();
            let g0 = cochain_to_lift(&ctx, &coeffs, &kappa, &f0).unwrap();
            let g1 = cochain_to_lift(&ctx, &coeffs, &kappa, &f1).unwrap();
            let bad = check_vertical_homotopy(
                &ctx, &cyl, &cyl_ctx, &coeffs, &kappa, &kappa_cyl, &hom.lift, &g0, &g1,
            );
            assert!(bad.is_empty(), "{}: {bad:?}", fx.name);

            // Constant homotopy when the cocycles agree.
            if round == 0 {
                let constant = vertical_homotopy(
                    &ctx, &cyl, &cyl_ctx, &coeffs, &kappa, &kappa_cyl, &f1, &f1, None,
                )
                .unwrap();
                let bad = check_vertical_homotopy(
                    &ctx, &cyl, &cyl_ctx, &coeffs, &kappa, &kappa_cyl, &constant.lift, &g1,
                    &g1,
                );
                assert!(bad.is_empty(), "{}: {bad:?}", fx.name);

                // A perturbed homotopy is rejected.
                let mut broken = hom.lift.clone();
                let mut hit = false;
                for (key, c) in broken.cochains.iter_mut() {
                    if coeffs.m0.group(key.0).is_trivial() || c.values.is_empty() {
                        continue;
                    }
                    c.values[0][0] += 1;
                    hit = true;
                    break;
                }
                if hit {
                    let bad = check_vertical_homotopy(
                        &ctx, &cyl, &cyl_ctx, &coeffs, &kappa, &kappa_cyl, &broken, &g0, &g1,
                    );
                    assert!(!bad.is_empty(), "{}: perturbation must be rejected", fx.name);
                }

                // Restricting the homotopy to either end recovers the lifts.
                let r0 = restrict_lift_to_end(&cyl, &ctx, &hom.lift, 0).unwrap();
                for (key, c) in &r0.cochains {
                    assert!(c.equals(coeffs.m0.group(key.0), &g0.cochains[key]));
                }

                // A wrong witness is refused.
                if !dh.is_zero(&ctx, &coeffs) {
                    let err = vertical_homotopy(
                        &ctx, &cyl, &cyl_ctx, &coeffs, &kappa, &kappa_cyl, &f1, &f1,
                        Some(&h),
                    )
                    .unwrap_err();
                    assert!(matches!(err, equicohom::Error::NotCohomologous(_)));
                }
            }
        }
    }
}
