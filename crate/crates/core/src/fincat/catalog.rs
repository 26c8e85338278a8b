//! Standard small categories and generators for random ones.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{
    CategoryDescription, CompositeDescription, FinCategory, Functor, FunctorDescription,
    MorphismDescription, NatTransf,
};

fn mor(id: &str, src: &str, tgt: &str) -> MorphismDescription {
    MorphismDescription {
        id: id.into(),
        src: src.into(),
        tgt: tgt.into(),
    }
}

fn comp(g: &str, f: &str, result: &str) -> CompositeDescription {
    CompositeDescription {
        g: g.into(),
        f: f.into(),
        result: result.into(),
    }
}

fn build(raw: CategoryDescription) -> FinCategory {
    FinCategory::from_description(&raw).expect("catalog category must validate")
}

pub fn empty() -> FinCategory {
    build(CategoryDescription::default())
}

/// One object, one (identity) morphism.
pub fn terminal() -> FinCategory {
    build(CategoryDescription {
        objects: vec!["*".into()],
        morphisms: vec![mor("id", "*", "*")],
        identities: [("*".into(), "id".into())].into(),
        compose: vec![],
    })
}

/// `x → y`
pub fn walking_arrow() -> FinCategory {
    build(CategoryDescription {
        objects: vec!["x".into(), "y".into()],
        morphisms: vec![
            mor("id_x", "x", "x"),
            mor("id_y", "y", "y"),
            mor("f", "x", "y"),
        ],
        identities: [("x".into(), "id_x".into()), ("y".into(), "id_y".into())].into(),
        compose: vec![],
    })
}

/// Two parallel arrows `u, v : s → t`.
pub fn parallel_pair() -> FinCategory {
    build(CategoryDescription {
        objects: vec!["s".into(), "t".into()],
        morphisms: vec![
            mor("id_s", "s", "s"),
            mor("id_t", "t", "t"),
            mor("u", "s", "t"),
            mor("v", "s", "t"),
        ],
        identities: [("s".into(), "id_s".into()), ("t".into(), "id_t".into())].into(),
        compose: vec![],
    })
}

/// Objects 0..3 with `a: 0→1`, `b: 1→3`, `c: 0→2`, `d: 2→3` and the
/// diagonal `ba = b∘a = d∘c`.
pub fn commutative_square() -> FinCategory {
    let objects: Vec<String> = (0..4).map(|k| k.to_string()).collect();
    let mut morphisms: Vec<_> = (0..4)
        .map(|k| mor(&format!("id{k}"), &k.to_string(), &k.to_string()))
        .collect();
    morphisms.extend([
        mor("a", "0", "1"),
        mor("b", "1", "3"),
        mor("c", "0", "2"),
        mor("d", "2", "3"),
        mor("ba", "0", "3"),
    ]);
    build(CategoryDescription {
        identities: (0..4).map(|k| (k.to_string(), format!("id{k}"))).collect(),
        objects,
        morphisms,
        compose: vec![comp("b", "a", "ba"), comp("d", "c", "ba")],
    })
}

/// `n` objects and only identities.
pub fn discrete(n: usize) -> FinCategory {
    build(CategoryDescription {
        objects: (0..n).map(|k| k.to_string()).collect(),
        morphisms: (0..n)
            .map(|k| mor(&format!("id{k}"), &k.to_string(), &k.to_string()))
            .collect(),
        identities: (0..n).map(|k| (k.to_string(), format!("id{k}"))).collect(),
        compose: vec![],
    })
}

fn power_name(k: usize) -> String {
    match k {
        0 => "e".into(),
        1 => "g".into(),
        k => format!("g{k}"),
    }
}

/// The one-object category `B(ℤ/n)` with morphisms `e, g, g2, …`.
pub fn cyclic_group(n: usize) -> FinCategory {
    assert!(n >= 1, "cyclic group order must be positive");
    let mut compose = Vec::new();
    for i in 1..n {
        for j in 1..n {
            compose.push(comp(
                &power_name(i),
                &power_name(j),
                &power_name((i + j) % n),
            ));
        }
    }
    build(CategoryDescription {
        objects: vec!["*".into()],
        morphisms: (0..n).map(|k| mor(&power_name(k), "*", "*")).collect(),
        identities: [("*".into(), "e".into())].into(),
        compose,
    })
}

/// One object, morphisms `{e, g}` with `g∘g = g`.
pub fn idempotent_monoid() -> FinCategory {
    build(CategoryDescription {
        objects: vec!["*".into()],
        morphisms: vec![mor("e", "*", "*"), mor("g", "*", "*")],
        identities: [("*".into(), "e".into())].into(),
        compose: vec![comp("g", "g", "g")],
    })
}

/// Thin category on `0..n` generated by `relations` (pairs `i ≤ j`), closed
/// under reflexivity and transitivity. Morphisms are named `id{i}` and `i<=j`.
pub fn preorder(n: usize, relations: &[(usize, usize)]) -> FinCategory {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in relations {
        le[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let name = |i: usize, j: usize| {
        if i == j {
            format!("id{i}")
        } else {
            format!("{i}<={j}")
        }
    };
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                morphisms.push(mor(&name(i, j), &i.to_string(), &j.to_string()));
            }
        }
    }
    let mut compose = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i && le[i][j]) {
            for k in (0..n).filter(|&k| k != j && le[j][k]) {
                compose.push(comp(&name(j, k), &name(i, j), &name(i, k)));
            }
        }
    }
    build(CategoryDescription {
        objects: (0..n).map(|k| k.to_string()).collect(),
        morphisms,
        identities: (0..n).map(|k| (k.to_string(), name(k, k))).collect(),
        compose,
    })
}

/// Cartesian product; objects `(x,y)` and morphisms `(f,g)`.
pub fn product(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let pair = |p: &str, q: &str| format!("({p},{q})");
    let mut objects = Vec::new();
    let mut identities = std::collections::BTreeMap::new();
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            let o = pair(a.object_name(x), b.object_name(y));
            identities.insert(
                o.clone(),
                pair(
                    a.morphism_name(a.identity(x)),
                    b.morphism_name(b.identity(y)),
                ),
            );
            objects.push(o);
        }
    }
    let mut morphisms = Vec::new();
    for f in a.morphisms() {
        for g in b.morphisms() {
            morphisms.push(mor(
                &pair(&f.id, &g.id),
                &pair(a.object_name(f.src), b.object_name(g.src)),
                &pair(a.object_name(f.tgt), b.object_name(g.tgt)),
            ));
        }
    }
    let mut compose = Vec::new();
    for f2 in 0..a.morphism_count() {
        for f1 in 0..a.morphism_count() {
            let Some(f) = a.compose(f2, f1) else { continue };
            for g2 in 0..b.morphism_count() {
                for g1 in 0..b.morphism_count() {
                    let Some(g) = b.compose(g2, g1) else { continue };
                    compose.push(comp(
                        &pair(a.morphism_name(f2), b.morphism_name(g2)),
                        &pair(a.morphism_name(f1), b.morphism_name(g1)),
                        &pair(a.morphism_name(f), b.morphism_name(g)),
                    ));
                }
            }
        }
    }
    build(CategoryDescription {
        objects,
        morphisms,
        identities,
        compose,
    })
}

/// Random poset on `n` objects: each pair `i < j` is related with
/// probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinCategory {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    preorder(n, &rel)
}

/// The two functors `walking arrow → square` picking the top path
/// (`f ↦ a`) and the bottom path (`f ↦ d`).
pub fn square_path_functors(
    arrow: &Arc<FinCategory>,
    square: &Arc<FinCategory>,
) -> (Functor, Functor) {
    let make = |x: &str, y: &str, f: &str| {
        Functor::from_description(
            arrow.clone(),
            square.clone(),
            &FunctorDescription {
                objects: [("x".into(), x.into()), ("y".into(), y.into())].into(),
                morphisms: [("f".into(), f.into())].into(),
            },
        )
        .expect("path functor")
    };
    (make("0", "1", "a"), make("2", "3", "d"))
}

/// The vertical edges `c` and `b` as a transformation top path ⇒ bottom path.
pub fn square_transformation(top: &Functor, bottom: &Functor) -> NatTransf {
    let sq = top.target();
    let comps = vec![sq.morphism_id("c").unwrap(), sq.morphism_id("b").unwrap()];
    NatTransf::from_components(top.clone(), bottom.clone(), comps).expect("square transformation")
}

/// Every monotone object map between two thin categories.
fn monotone_maps(src: &FinCategory, tgt: &FinCategory) -> Vec<Vec<usize>> {
    let n = src.object_count();
    let m = tgt.object_count();
    let le = |c: &FinCategory, i: usize, j: usize| !c.hom(i, j).is_empty();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        let ok = (0..n).all(|i| (0..n).all(|j| !le(src, i, j) || le(tgt, cur[i], cur[j])));
        if ok {
            out.push(cur.clone());
        }
        let mut k = 0;
        while k < n {
            cur[k] += 1;
            if cur[k] < m {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

/// A random parallel pair of functors with a transformation between them.
///
/// Source and target are products `P × B(ℤ/m)` of random posets with a
/// cyclic group. Both functors share the group homomorphism `g ↦ g^k`; the
/// poset parts are monotone maps `φ ≤ γ` and the group part of every
/// component is one fixed element `h`, so naturality holds by construction.
pub fn random_transformation<R: Rng>(rng: &mut R, max_objects: usize) -> NatTransf {
    let m = rng.gen_range(1..=3usize);
    let max = max_objects.max(1);
    let nc = rng.gen_range(1..=max);
    let pc = random_poset(rng, nc, 0.5);
    let nd = rng.gen_range(1..=max);
    let pd = random_poset(rng, nd, 0.6);
    let z = cyclic_group(m);
    let c = Arc::new(product(&pc, &z));
    let d = Arc::new(product(&pd, &z));
    let k = rng.gen_range(0..m);
    let h = rng.gen_range(0..m);

    let maps = monotone_maps(&pc, &pd);
    let phi = maps
        .choose(rng)
        .expect("constant maps are monotone")
        .clone();
    let above: Vec<&Vec<usize>> = maps
        .iter()
        .filter(|g| (0..phi.len()).all(|i| !pd.hom(phi[i], g[i]).is_empty()))
        .collect();
    let distinct: Vec<&Vec<usize>> = above.iter().copied().filter(|g| **g != phi).collect();
    let gamma = if distinct.is_empty() {
        phi.clone()
    } else {
        (*distinct.choose(rng).unwrap()).clone()
    };

    let functor = |poset_map: &[usize]| {
        let mut raw = FunctorDescription::default();
        for x in 0..pc.object_count() {
            for s in 0..z.object_count() {
                raw.objects.insert(
                    format!("({},{})", pc.object_name(x), z.object_name(s)),
                    format!("({},{})", pd.object_name(poset_map[x]), z.object_name(s)),
                );
            }
        }
        for f in pc.morphisms() {
            let img = pd.hom(poset_map[f.src], poset_map[f.tgt])[0];
            for g in 0..m {
                raw.morphisms.insert(
                    format!("({},{})", f.id, z.morphism_name(g)),
                    format!(
                        "({},{})",
                        pd.morphism_name(img),
                        z.morphism_name((g * k) % m)
                    ),
                );
            }
        }
        Functor::from_description(c.clone(), d.clone(), &raw).expect("generated functor")
    };
    let from = functor(&phi);
    let to = functor(&gamma);
    let comps = (0..c.object_count())
        .map(|xo| {
            let x = xo / z.object_count();
            let arrow = pd.hom(phi[x], gamma[x])[0];
            d.morphism_id(&format!(
                "({},{})",
                pd.morphism_name(arrow),
                z.morphism_name(h)
            ))
            .unwrap()
        })
        .collect();
    NatTransf::from_components(from, to, comps).expect("generated transformation is natural")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalog_sizes() {
        assert_eq!(walking_arrow().morphism_count(), 3);
        assert_eq!(commutative_square().morphism_count(), 9);
        assert_eq!(cyclic_group(5).morphism_count(), 5);
        assert_eq!(discrete(3).composite_count(), 3);
        assert_eq!(preorder(3, &[(0, 1), (1, 2)]).morphism_count(), 6);
        assert_eq!(
            product(&walking_arrow(), &cyclic_group(2)).morphism_count(),
            6
        );
        assert!(empty().objects().is_empty());
    }

    #[test]
    fn random_transformations_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let t = random_transformation(&mut rng, 4);
            assert!(t.from().source().object_count() <= 4);
            assert!(t.from().target().object_count() <= 4);
            assert!(t.from().source().brute_force_associative());
        }
    }
}
