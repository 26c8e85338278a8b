//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::{Command, ExitCode};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cathom::chain::{verify_chain_map, verify_homotopy, ChainComplex, HomotopyCheck, MapCheck};
use cathom::chfunctor::{
    ch_category, ch_functor_between, ch_nat_transf_between, homotopy_report, normalized_homotopy,
    ChResult,
};
use cathom::fincat::{
    catalog, compose_functors, FinCategory, Functor, FunctorDescription, NatTransf,
};
use cathom::nerve::{check_two_coskeletal, nerve, FillerViolation, SimplicialMap};
use cathom::twovect::{
    category_to_graph, eckmann_hilton_exhaustive, graph_to_category, solve_composition,
    CompositionSolution, ReflexiveVectGraph,
};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn test_categories() -> Vec<(&'static str, FinCategory)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    vec![
        ("walking arrow", catalog::walking_arrow()),
        ("commutative square", catalog::commutative_square()),
        ("discrete-3", catalog::discrete(3)),
        ("B(Z/2)", catalog::cyclic_group(2)),
        ("B(Z/3)", catalog::cyclic_group(3)),
        (
            "random 4-object poset",
            catalog::random_poset(&mut rng, 4, 0.5),
        ),
    ]
}

fn test_graphs() -> Vec<ReflexiveVectGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut out = vec![ReflexiveVectGraph::plane_arrows()];
    for _ in 0..20 {
        let d0 = rng.gen_range(0..=3);
        let d1 = rng.gen_range(d0.max(1)..=6);
        out.push(ReflexiveVectGraph::random(&mut rng, d0, d1));
    }
    out
}

fn ac1() -> Verdict {
    let mut detail = Vec::new();
    for (n, expected_pairs) in [(2, 2 * 2 * 2 * 2), (3, 9 * 81 * 81)] {
        let s = eckmann_hilton_exhaustive(n);
        ensure(s.pairs_checked == expected_pairs, || {
            format!("size {n}: {} pairs", s.pairs_checked)
        })?;
        ensure(s.counterexamples.is_empty(), || {
            format!("size {n}: {:?}", s.counterexamples)
        })?;
        detail.push(format!(
            "size {n}: {} pairs, {} with interchange",
            s.pairs_checked, s.interchange_pairs
        ));
    }
    Ok(format!("{}; 0 counterexamples", detail.join(", ")))
}

fn ac2() -> Verdict {
    let graphs = test_graphs();
    for (k, g) in graphs.iter().enumerate() {
        match solve_composition(g).map_err(|e| e.to_string())? {
            CompositionSolution::Unique {
                equals_diamond: true,
                ..
            } => {}
            other => return Err(format!("graph {k}: {other:?}")),
        }
    }
    Ok(format!(
        "{} graphs, all Unique and equal to the diamond matrix",
        graphs.len()
    ))
}

fn ac3() -> Verdict {
    let mut graphs = test_graphs();
    let z = cathom::ratlinalg::Matrix::zeros(0, 0);
    graphs.push(ReflexiveVectGraph::new(0, 0, z.clone(), z.clone(), z).unwrap());
    for (k, g) in graphs.iter().enumerate() {
        let c = graph_to_category(g);
        ensure(&category_to_graph(&c) == g, || {
            format!("graph {k}: graph round trip")
        })?;
        let back = graph_to_category(&category_to_graph(&c));
        ensure(
            back == c && back.compose_matrix() == c.compose_matrix(),
            || format!("graph {k}: category round trip"),
        )?;
        ensure(back.same_composition(&c), || {
            format!("graph {k}: composition differs")
        })?;
    }
    Ok(format!("{} instances, both directions exact", graphs.len()))
}

fn square_zero(c: &ChainComplex) -> bool {
    (1..c.top_degree()).all(|n| (c.boundary(n) * c.boundary(n + 1)).is_zero())
}

fn ac4() -> Verdict {
    let mut names = Vec::new();
    for (name, c) in test_categories() {
        let r = ch_category(Arc::new(c), 5).map_err(|e| e.to_string())?;
        ensure(square_zero(&r.complex), || format!("{name}: alternating"))?;
        ensure(square_zero(&r.normalized), || format!("{name}: normalized"))?;
        names.push(name);
    }
    Ok(format!(
        "truncation 5, alternating and normalized: {}",
        names.join(", ")
    ))
}

fn ac5() -> Verdict {
    let cases = [
        ("walking arrow", catalog::walking_arrow(), [1, 0, 0, 0]),
        ("discrete-3", catalog::discrete(3), [3, 0, 0, 0]),
        ("B(Z/2)", catalog::cyclic_group(2), [1, 0, 0, 0]),
        (
            "commutative square",
            catalog::commutative_square(),
            [1, 0, 0, 0],
        ),
    ];
    let mut detail = Vec::new();
    for (name, c, expected) in cases {
        let r = ch_category(Arc::new(c), 5).map_err(|e| e.to_string())?;
        for (kind, complex) in [("alternating", &r.complex), ("normalized", &r.normalized)] {
            let b = complex.betti(3).map_err(|e| e.to_string())?;
            ensure(b == expected, || format!("{name} ({kind}): {b:?}"))?;
        }
        detail.push(format!("{name} {expected:?}"));
    }
    Ok(detail.join(", "))
}

fn ac6() -> Verdict {
    let mut checked = 0;
    for (name, c) in test_categories() {
        let n = nerve(&c, 3);
        let report = check_two_coskeletal(n.set(), false).map_err(|e| e.to_string())?;
        ensure(report.is_ok(), || {
            format!("{name}: {:?}", report.violations)
        })?;
        checked += report.checked[0].1;
    }
    let z2 = catalog::cyclic_group(2);
    let n = nerve(&z2, 3);
    let g = z2.morphism_id("g").unwrap();
    let ggg = n
        .chains(3)
        .iter()
        .position(|ch| ch.morphisms == [g, g, g])
        .unwrap();
    let mutilated = n.set().without_simplex(3, ggg).map_err(|e| e.to_string())?;
    let report = check_two_coskeletal(&mutilated, false).map_err(|e| e.to_string())?;
    ensure(
        matches!(
            report.violations.as_slice(),
            [FillerViolation::MissingFiller { dim: 3, .. }]
        ),
        || format!("mutilated: {:?}", report.violations),
    )?;
    Ok(format!(
        "6 nerves Ok ({checked} boundaries); mutilated B(Z/2) gives MissingFiller"
    ))
}

fn check_transformation(a: &NatTransf, truncation: usize) -> Result<usize, String> {
    let src = ch_category(a.from().source().clone(), truncation).map_err(|e| e.to_string())?;
    let tgt = ch_category(a.from().target().clone(), truncation).map_err(|e| e.to_string())?;
    let h = ch_nat_transf_between(a, &src, &tgt).map_err(|e| e.to_string())?;
    ensure(h.checked_degrees().end + 1 >= truncation, || {
        "too few degrees".into()
    })?;
    ensure(verify_homotopy(&h) == HomotopyCheck::Ok, || {
        "alternating homotopy identity".into()
    })?;
    let hn = normalized_homotopy(&h, &src, &tgt).map_err(|e| e.to_string())?;
    ensure(verify_homotopy(&hn) == HomotopyCheck::Ok, || {
        "normalized homotopy identity".into()
    })?;
    let report = homotopy_report(a, &src, &tgt).map_err(|e| e.to_string())?;
    let mut literal = 0;
    for s in &report.splits {
        if s.b != s.a {
            ensure(s.literal, || {
                format!("h1({}) = {} is not B - A", s.morphism, s.image)
            })?;
            literal += 1;
        }
    }
    Ok(literal)
}

fn ac7() -> Verdict {
    let truncation = 4;
    let arrow = Arc::new(catalog::walking_arrow());
    let square = Arc::new(catalog::commutative_square());
    let (top, bottom) = catalog::square_path_functors(&arrow, &square);
    let alpha = catalog::square_transformation(&top, &bottom);
    let mut splits =
        check_transformation(&alpha, truncation).map_err(|e| format!("square: {e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random = 6;
    for k in 0..random {
        let a = catalog::random_transformation(&mut rng, 4);
        ensure(
            a.from().source().object_count() <= 5 && a.from().target().object_count() <= 5,
            || format!("triple {k} is too large"),
        )?;
        splits +=
            check_transformation(&a, truncation).map_err(|e| format!("random triple {k}: {e}"))?;
    }
    Ok(format!(
        "square + {random} random triples, degrees 0..{} both complexes; {splits} h1 columns equal B - A",
        truncation - 1
    ))
}

fn square_to_arrow(square: &Arc<FinCategory>, arrow: &Arc<FinCategory>) -> Functor {
    let pairs = |v: &[(&str, &str)]| {
        v.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    let raw = FunctorDescription {
        objects: pairs(&[("0", "x"), ("1", "x"), ("2", "y"), ("3", "y")]),
        morphisms: pairs(&[
            ("a", "id_x"),
            ("b", "f"),
            ("c", "f"),
            ("d", "id_y"),
            ("ba", "f"),
        ]),
    };
    Functor::from_description(square.clone(), arrow.clone(), &raw).unwrap()
}

fn ac8() -> Verdict {
    let truncation = 4;
    let arrow = Arc::new(catalog::walking_arrow());
    let square = Arc::new(catalog::commutative_square());
    let point = Arc::new(catalog::terminal());
    let (top, bottom) = catalog::square_path_functors(&arrow, &square);
    let collapse = square_to_arrow(&square, &arrow);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random = catalog::random_transformation(&mut rng, 4);
    let rf = random.from().clone();
    let to_point = Functor::constant(rf.target().clone(), point.clone(), 0);

    let pairs: Vec<(Functor, Functor)> = vec![
        (top.clone(), collapse.clone()),
        (bottom, collapse.clone()),
        (collapse.clone(), top),
        (
            Functor::identity(arrow.clone()),
            Functor::constant(arrow.clone(), square.clone(), 3),
        ),
        (rf, to_point),
    ];
    let mut pipelines: Vec<(Arc<FinCategory>, ChResult)> = Vec::new();
    let mut pipeline = |c: &Arc<FinCategory>| -> ChResult {
        if let Some((_, r)) = pipelines
            .iter()
            .find(|(k, _)| Arc::ptr_eq(k, c) || **k == **c)
        {
            return r.clone();
        }
        let r = ch_category(c.clone(), truncation).unwrap();
        pipelines.push((c.clone(), r.clone()));
        r
    };
    for (k, (f, g)) in pairs.iter().enumerate() {
        let gf = compose_functors(g, f).map_err(|e| e.to_string())?;
        let (a, b, c) = (
            pipeline(f.source()),
            pipeline(f.target()),
            pipeline(g.target()),
        );
        let chf = ch_functor_between(f, &a, &b).map_err(|e| e.to_string())?;
        let chg = ch_functor_between(g, &b, &c).map_err(|e| e.to_string())?;
        let chgf = ch_functor_between(&gf, &a, &c).map_err(|e| e.to_string())?;
        for m in [&chf, &chg, &chgf] {
            ensure(verify_chain_map(m) == MapCheck::Ok, || {
                format!("pair {k}: not a chain map")
            })?;
        }
        ensure(chgf == chg.after(&chf).map_err(|e| e.to_string())?, || {
            format!("pair {k}: Ch(G∘F) ≠ Ch(G)Ch(F)")
        })?;
        let nf = a.nerve.map_functor(f, &b.nerve);
        let ng = b.nerve.map_functor(g, &c.nerve);
        let ngf: SimplicialMap = a.nerve.map_functor(&gf, &c.nerve);
        ensure(ngf == ng.after(&nf), || {
            format!("pair {k}: N(G∘F) ≠ N(G)N(F)")
        })?;
    }
    Ok(format!(
        "{} composable pairs, truncation {truncation}, chain maps and nerve maps",
        pairs.len()
    ))
}

fn ac9() -> Verdict {
    let arrow = nerve(&catalog::walking_arrow(), 3);
    ensure(arrow.set().counts() == [2, 3, 4, 5], || {
        format!("walking arrow {:?}", arrow.set().counts())
    })?;
    let z2 = nerve(&catalog::cyclic_group(2), 4);
    ensure(z2.set().counts() == [1, 2, 4, 8, 16], || {
        format!("B(Z/2) {:?}", z2.set().counts())
    })?;
    let nd = z2.set().nondegenerate_counts();
    ensure(nd == [1, 1, 1, 1, 1], || {
        format!("B(Z/2) nondegenerate {nd:?}")
    })?;
    Ok("[2, 3, 4, 5]; [1, 2, 4, 8, 16]; nondegenerate [1, 1, 1, 1, 1]".into())
}

fn ac10() -> Verdict {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/square.json");
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let out = Command::new(env!("CARGO_BIN_EXE_cathom"))
                .args(["homology", fixture, "--max-dim", "4"])
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || {
                format!("exit {:?}", out.status.code())
            })?;
            Ok(out.stdout)
        })
        .collect::<Result<_, String>>()?;
    ensure(runs[0] == runs[1], || "outputs differ".into())?;
    Ok(format!("{} identical bytes", runs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        (
            "AC1 Eckmann-Hilton exhaustive on carriers of size 2 and 3",
            ac1,
        ),
        ("AC2 unit laws force the diamond composition", ac2),
        ("AC3 reflexive graph and 2-vector space round trips", ac3),
        ("AC4 boundary squares to zero", ac4),
        ("AC5 Betti numbers in degrees 0..3", ac5),
        ("AC6 nerves are 2-coskeletal", ac6),
        ("AC7 natural transformations give chain homotopies", ac7),
        ("AC8 functoriality of N and Ch", ac8),
        ("AC9 nerve simplex counts", ac9),
        ("AC10 homology output is byte-deterministic", ac10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
