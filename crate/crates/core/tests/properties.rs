use std::collections::BTreeSet;

use pnclass::classes::{self, normal_closure, quotient};
use pnclass::constructors::{self, Builder};
use pnclass::galois::FiniteField;
use pnclass::graphs::{self, ClassGraph};
use pnclass::numbers::{factorial, gcd, multiplicative_order};
use pnclass::verifier::{check_pn, lemma1_crosscheck, witness_is_valid};
use pnclass::{compose, decompose, Group, Permutation};
use proptest::prelude::*;

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Groups small enough to check exhaustively, with distinct structure.
fn small_groups() -> Vec<Group> {
    use constructors::*;
    vec![
        cyclic(12).unwrap(),
        abelian(&[2, 2, 3]).unwrap(),
        dihedral(5).unwrap(),
        dihedral(6).unwrap(),
        dicyclic(3).unwrap(),
        dicyclic(4).unwrap(),
        symmetric(4).unwrap(),
        alternating(5).unwrap(),
        semidirect_cyclic(7, 3, 2).unwrap().group,
        elementary_semidirect(3, 2, &[vec![0, 2], vec![1, 0]], 4)
            .unwrap()
            .group,
        direct_product(&cyclic(4).unwrap(), &symmetric(3).unwrap()).unwrap(),
        psl2(7).unwrap(),
        sl2(5).unwrap(),
    ]
}

/// Every vertex subset, largest clique by exhaustion.
fn brute_force_clique_number(g: &ClassGraph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let clique = verts
            .iter()
            .enumerate()
            .all(|(a, &i)| verts[a + 1..].iter().all(|&j| g.adjacent(i, j)));
        if clique {
            best = best.max(verts.len());
        }
    }
    best
}

fn arb_graph() -> impl Strategy<Value = ClassGraph> {
    (0usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .collect();
            ClassGraph::from_edges(n, &edges)
        })
    })
}

proptest! {
    #[test]
    fn compose_is_associative(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_order(a in arb_perm(9)) {
        prop_assert!(compose(&a, &a.inverse()).unwrap().is_identity());
        let k = a.order();
        prop_assert!(a.pow(k).is_identity());
        for j in 1..k {
            prop_assert!(!a.pow(j).is_identity());
        }
    }

    #[test]
    fn generated_groups_are_closed(a in arb_perm(5), b in arb_perm(5)) {
        let g = Group::generate(vec![a.clone(), b.clone()], 1000).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        for x in g.elements() {
            prop_assert!(g.contains(&x.inverse()));
            prop_assert_eq!(g.order() as u64 % x.order(), 0);
            for y in g.generators() {
                prop_assert!(g.contains(&compose(x, y).unwrap()));
            }
        }
        let again = Group::generate(vec![a, b], 1000).unwrap();
        prop_assert_eq!(g.elements(), again.elements());
    }

    #[test]
    fn clique_search_matches_exhaustion(g in arb_graph()) {
        let exact = brute_force_clique_number(&g);
        prop_assert_eq!(graphs::max_clique(&g), exact);
        for n in 1..=g.vertex_count() + 1 {
            let found = graphs::has_k_n(&g, n);
            prop_assert_eq!(found.is_some(), n <= exact);
            if let Some(w) = found {
                prop_assert_eq!(w.len(), n);
                for (a, &i) in w.iter().enumerate() {
                    for &j in &w[a + 1..] {
                        prop_assert!(g.adjacent(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_random(
        (p, f) in prop_oneof![Just((2u32, 4u32)), Just((3, 3)), Just((5, 2)), Just((11, 1)), Just((2, 7))],
        seed in any::<[u32; 3]>(),
    ) {
        let field = FiniteField::new(p, f).unwrap();
        let [a, b, c] = seed.map(|s| field.element(s % field.size()));
        prop_assert_eq!(field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)));
        prop_assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
        prop_assert_eq!(field.sub(field.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(field.mul(a, field.inv(a).unwrap()), field.one());
            prop_assert_eq!((field.size() as u64 - 1) % field.mult_order(a).unwrap(), 0);
        }
    }
}

#[test]
fn class_invariants_on_small_groups() {
    for g in small_groups() {
        let d = decompose(&g);
        let total: usize = d.classes().iter().map(|c| c.size).sum();
        assert_eq!(total, g.order());
        assert_eq!(
            d.classes().iter().filter(|c| c.size == 1).count(),
            d.center_size()
        );
        for (i, c) in d.classes().iter().enumerate() {
            assert_eq!(g.order() % c.size, 0);
            assert_eq!(c.size * d.centralizer_order(i), g.order());
            assert_eq!(c.is_central, c.size == 1);
            for &m in &c.members {
                assert_eq!(g.element(m).order(), c.element_order);
                assert_eq!(d.class_of(m), i);
            }
        }
        // deterministic order by (element order, size, least member)
        let keys: Vec<_> = d
            .classes()
            .iter()
            .map(|c| (c.element_order, c.size, c.representative.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}

#[test]
fn graph_invariants_on_small_groups() {
    for g in small_groups() {
        let d = decompose(&g);
        let order = graphs::order_class_graph(&d);
        let size = graphs::size_class_graph(&d);
        assert_eq!(order.vertices, size.vertices);
        assert_eq!(order.vertex_count(), d.non_central().count());
        for graph in [&order, &size] {
            for i in 0..graph.vertex_count() {
                assert!(!graph.adjacent(i, i));
                for j in 0..graph.vertex_count() {
                    assert_eq!(graph.adjacent(i, j), graph.adjacent(j, i));
                }
            }
            assert_eq!(graphs::max_clique(graph), brute_force_clique_number(graph));
            let mut last = true;
            for n in 1..=graph.vertex_count() + 1 {
                let has = graphs::has_k_n(graph, n).is_some();
                assert!(last || !has, "monotonicity");
                last = has;
            }
        }
        let prime = graphs::prime_graph(&g);
        let primes: BTreeSet<u64> = pnclass::numbers::prime_divisors(g.order() as u64)
            .into_iter()
            .collect();
        assert_eq!(prime.vertex_count(), primes.len());
    }
}

#[test]
fn pn_and_lemma1_on_small_groups() {
    for g in small_groups() {
        let d = decompose(&g);
        assert!(
            lemma1_crosscheck(&d, 2..=8).unwrap().consistent,
            "{}",
            g.name()
        );
        for n in 2..=6 {
            let r = check_pn(&d, n);
            assert!(witness_is_valid(&d, &r));
            assert_eq!(r.satisfied, r.per_prime_counts.values().all(|&c| c < n));
        }
    }
}

#[test]
fn quotient_order_divides() {
    for g in small_groups() {
        let d = decompose(&g);
        let mut normals = vec![d.center()];
        if !g.is_abelian() {
            normals.push(classes::derived_subgroup(&g));
        }
        for n in normals {
            let q = quotient(&g, &n).unwrap();
            assert_eq!(q.group.order() * n.order(), g.order());
            for (i, x) in g.elements().iter().enumerate() {
                assert_eq!(x.order() % q.group.element(q.projection[i]).order(), 0);
            }
            // projection is a homomorphism on generator products
            for a in g.generators() {
                for (i, x) in g.elements().iter().enumerate().step_by(5) {
                    let ax = g.index_of(&compose(a, x).unwrap()).unwrap();
                    let ia = g.index_of(a).unwrap();
                    let lhs = q.group.element(q.projection[ax]);
                    let rhs = compose(
                        q.group.element(q.projection[ia]),
                        q.group.element(q.projection[i]),
                    )
                    .unwrap();
                    assert_eq!(lhs, &rhs);
                }
            }
        }
    }
}

#[test]
fn simple_groups_have_no_proper_normal_closures() {
    let b = Builder::default();
    for g in [
        b.psl2(5).unwrap(),
        b.psl2(7).unwrap(),
        b.psl2(9).unwrap(),
        b.psl2(11).unwrap(),
        b.psl2(13).unwrap(),
        b.alternating(7).unwrap(),
        b.suzuki8().unwrap(),
    ] {
        let d = decompose(&g);
        for (_, c) in d.non_central() {
            let n = normal_closure(&g, std::slice::from_ref(&c.representative)).unwrap();
            assert_eq!(n.order(), g.order());
        }
    }
}

#[test]
fn order_formulas() {
    let b = Builder::default();
    for n in 1..=7u64 {
        assert_eq!(b.symmetric(n).unwrap().order() as u64, factorial(n));
        assert_eq!(
            b.alternating(n).unwrap().order() as u64,
            (factorial(n) / 2).max(1)
        );
    }
    for n in 2..=9u64 {
        assert_eq!(b.dihedral(n).unwrap().order() as u64, 2 * n);
        assert_eq!(b.dicyclic(n).unwrap().order() as u64, 4 * n);
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17] {
        assert_eq!(
            b.psl2(q).unwrap().order() as u64,
            q * (q * q - 1) / gcd(2, q - 1)
        );
    }
    for q in [3u64, 5, 7] {
        assert_eq!(b.sl2(q).unwrap().order() as u64, q * (q * q - 1));
    }
    let q = 8u64;
    assert_eq!(
        b.suzuki8().unwrap().order() as u64,
        q * q * (q * q + 1) * (q - 1)
    );
}

#[test]
fn suzuki_acts_transitively_on_65_points() {
    let g = constructors::suzuki8().unwrap();
    let mut reached = BTreeSet::from([0u32]);
    let mut frontier = vec![0u32];
    while let Some(pt) = frontier.pop() {
        for s in g.generators() {
            let img = s.apply(pt);
            if reached.insert(img) {
                frontier.push(img);
            }
        }
    }
    assert_eq!(reached.len(), 65);
    // orbit-stabilizer: |G| = 65 * |G_0|
    let stabilizer = g.elements().iter().filter(|x| x.apply(0) == 0).count();
    assert_eq!(stabilizer * 65, 29120);
}

/// Frobenius flag against the definition: no nontrivial complement element
/// centralizes a nontrivial kernel element.
#[test]
fn semidirect_frobenius_flag_matches_brute_force() {
    for m in 2..=16u64 {
        for g in 1..m {
            let Some(k) = multiplicative_order(g, m) else {
                continue;
            };
            let sd = constructors::semidirect_cyclic(m, k, g).unwrap();
            let group = &sd.group;
            assert_eq!(group.order() as u64, m * k);
            let kernel = group.subgroup(vec![group.generators()[0].clone()]).unwrap();
            let complement: Vec<&Permutation> = group
                .elements()
                .iter()
                .filter(|x| x.apply(0) == 0 && !x.is_identity())
                .collect();
            assert_eq!(complement.len() as u64, k - 1);
            let brute = complement.iter().all(|c| {
                kernel
                    .elements()
                    .iter()
                    .filter(|t| !t.is_identity())
                    .all(|t| t.conjugate_by(c) != *t)
            });
            assert_eq!(sd.fixed_point_free, brute, "m={m} k={k} g={g}");
        }
    }
}

#[test]
fn psl2_spectra_contain_torus_orders() {
    for q in [5u64, 9, 13] {
        let g = constructors::psl2(q).unwrap();
        let spec = classes::spectrum(&g);
        assert!(spec.contains(&((q - 1) / 2)));
        assert!(spec.contains(&q.div_ceil(2)));
        let p = pnclass::numbers::prime_divisors(q)[0];
        let bound = p.max(q.div_ceil(2));
        assert!(spec.iter().all(|&o| o <= bound), "q={q}: {spec:?}");
    }
}
