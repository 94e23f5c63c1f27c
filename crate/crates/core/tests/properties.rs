use std::sync::Arc;

use graphprod::cli::Config;
use graphprod::complex::{build_skeleton, closed_form_census, induced_complex_map, path_agreement};
use graphprod::induce::{phi_gamma, phi_kernel, phi_word};
use graphprod::kernels::{in_kernel, project, random_word, sample_kernel};
use graphprod::oracle::{bfs_equal, random_equivalent, BfsVerdict};
use graphprod::{Context, GroupElem, SetMapFamily, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CONTEXTS: &[&str] = &[
    "d-infinity",
    "c2-c2-edge",
    "z-free2",
    "c4-c2",
    "c3-free2",
    "v4-free2",
    "c2-c2-c2-edge01",
    "c2-path3",
    "mixed-path3",
];

const FINITE: &[&str] = &["d-infinity", "c2-c2-edge", "c4-c2", "c2-c2-c2-edge01", "c2-path3", "mixed-path3"];

fn context(name: &str) -> Arc<Context> {
    Config::builtin().context(name).unwrap().clone()
}

fn family(name: &str) -> SetMapFamily {
    Config::builtin().family(name).unwrap().clone()
}

fn word(ctx: &Arc<Context>, seed: u64, len: usize) -> Word {
    random_word(&mut ChaCha8Rng::seed_from_u64(seed), ctx, len)
}

fn tuple_indices(w: &Word) -> Vec<u32> {
    project(w)
        .0
        .iter()
        .map(|e| match e {
            GroupElem::Finite(i) => *i,
            other => panic!("finite coordinate expected, got {other:?}"),
        })
        .collect()
}

#[test]
fn spec_examples_for_normal_form() {
    let edge = context("c2-c2-edge");
    let free = context("d-infinity");
    let p = |c: &Arc<Context>, t: &str| Word::parse(c.clone(), t).unwrap().normalize();
    assert!(p(&free, "v0:1 v0:1").is_empty());
    assert_eq!(p(&edge, "v1:1 v0:1").to_string(), "v0:1 v1:1");
    assert_eq!(p(&edge, "v0:1 v1:1 v0:1").to_string(), "v1:1");
    assert_eq!(p(&free, "v0:1 v1:1 v0:1 v1:1").normal_length(), 4);
    assert_eq!(p(&free, "v0:1").distance(&p(&free, "v1:1")).unwrap(), 2);
    let z = context("z-free2");
    assert_eq!(p(&z, "v0:3").inv().to_string(), "v0:-3");
}

#[test]
fn minimal_bfs_representatives_share_canonical_form() {
    let ctx = context("c2-path3");
    for seed in 0..40 {
        let w = word(&ctx, seed, 5).normalize();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
        let v = random_equivalent(&mut rng, &w, 4);
        assert_eq!(bfs_equal(&w, &v, 1_000_000).unwrap(), BfsVerdict::Equal, "{w} vs {v}");
        assert_eq!(v.normalize(), w.normalize());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent(c in 0..CONTEXTS.len(), seed: u64, len in 0usize..16) {
        let ctx = context(CONTEXTS[c]);
        let w = word(&ctx, seed, len);
        let n = w.normalize();
        prop_assert!(n.is_canonical());
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(n.len() <= len);
    }

    #[test]
    fn equivalent_words_share_canonical_form(c in 0..CONTEXTS.len(), seed: u64, len in 0usize..12, steps in 0usize..20) {
        let ctx = context(CONTEXTS[c]);
        let w = word(&ctx, seed, len);
        let v = random_equivalent(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed), &w, steps);
        prop_assert_eq!(v.normalize(), w.normalize());
        prop_assert!(v.represents_same(&w).unwrap());
    }

    #[test]
    fn group_laws(c in 0..CONTEXTS.len(), seed: u64, a in 0usize..8, b in 0usize..8, d in 0usize..8) {
        let ctx = context(CONTEXTS[c]);
        let x = word(&ctx, seed, a);
        let y = word(&ctx, seed.wrapping_add(1), b);
        let z = word(&ctx, seed.wrapping_add(2), d);
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert!(x.mul(&x.inv()).unwrap().is_empty());
        prop_assert!(x.inv().mul(&x).unwrap().is_empty());
        prop_assert_eq!(x.mul(&Word::empty(ctx.clone())).unwrap(), x.normalize());
        prop_assert_eq!(x.mul(&y).unwrap().inv(), y.inv().mul(&x.inv()).unwrap());
    }

    #[test]
    fn metric_axioms(c in 0..CONTEXTS.len(), seed: u64, a in 0usize..8, b in 0usize..8, d in 0usize..8) {
        let ctx = context(CONTEXTS[c]);
        let g = word(&ctx, seed, a);
        let h = word(&ctx, seed.wrapping_add(1), b);
        let k = word(&ctx, seed.wrapping_add(2), d);
        let dist = |u: &Word, v: &Word| u.distance(v).unwrap();
        prop_assert_eq!(dist(&g, &g), 0);
        prop_assert_eq!(dist(&g, &h) == 0, g.normalize() == h.normalize());
        prop_assert_eq!(dist(&g, &h), dist(&h, &g));
        prop_assert!(dist(&g, &k) <= dist(&g, &h) + dist(&h, &k));
        let kg = k.mul(&g).unwrap();
        let kh = k.mul(&h).unwrap();
        prop_assert_eq!(dist(&kg, &kh), dist(&g, &h));
        prop_assert_eq!(Word::empty(ctx.clone()).distance(&g).unwrap(), g.normal_length());
    }

    #[test]
    fn projection_is_a_homomorphism(c in 0..CONTEXTS.len(), seed: u64, a in 0usize..10, b in 0usize..10) {
        let ctx = context(CONTEXTS[c]);
        let u = word(&ctx, seed, a);
        let v = word(&ctx, seed.wrapping_add(7), b);
        prop_assert_eq!(project(&u.mul(&v).unwrap()), project(&u).mul(&project(&v), &ctx));
        prop_assert_eq!(project(&u.normalize()), project(&u));
    }

    #[test]
    fn sampled_kernel_words_are_in_kernel(c in 0..CONTEXTS.len(), seed: u64, len in 0usize..12) {
        let ctx = context(CONTEXTS[c]);
        let w = sample_kernel(seed, len, &ctx);
        prop_assert!(in_kernel(&w));
        prop_assert!(w.normal_length() <= len + ctx.vertex_count());
    }

    #[test]
    fn induced_maps_are_homomorphisms_on_the_kernel(
        f in prop::sample::select(vec!["c2-to-z", "z-to-c2", "c4-to-c2", "c2-to-c4", "swap", "c3-relabel", "c4-to-v4"]),
        seed: u64,
        a in 0usize..8,
        b in 0usize..8,
    ) {
        let fam = family(f);
        let u = sample_kernel(seed, a, fam.source());
        let v = sample_kernel(seed.wrapping_add(3), b, fam.source());
        let uv = u.mul(&v).unwrap();
        let lhs = phi_kernel(&uv, &fam).unwrap();
        let rhs = phi_kernel(&u, &fam).unwrap().mul(&phi_kernel(&v, &fam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(in_kernel(&phi_kernel(&u, &fam).unwrap()));
    }

    #[test]
    fn injective_families_preserve_normal_length(
        f in prop::sample::select(vec!["c2-to-z", "c2-to-c4", "swap", "c3-relabel", "c4-to-v4"]),
        seed: u64,
        len in 0usize..10,
    ) {
        let fam = family(f);
        let w = sample_kernel(seed, len, fam.source());
        prop_assert_eq!(phi_kernel(&w, &fam).unwrap().normal_length(), w.normal_length());
    }

    #[test]
    fn induced_map_is_well_defined(
        f in prop::sample::select(vec!["c2-to-z", "z-to-c2", "c4-to-c2", "c4-to-v4"]),
        seed: u64,
        len in 0usize..10,
        steps in 0usize..16,
    ) {
        let fam = family(f);
        let w = sample_kernel(seed, len, fam.source());
        let v = random_equivalent(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xabc), &w, steps);
        prop_assert_eq!(phi_gamma(&w, &fam).unwrap(), phi_gamma(&v, &fam).unwrap());
    }

    #[test]
    fn based_family_induces_the_same_kernel_map(
        f in prop::sample::select(vec!["swap", "c3-relabel", "c4-to-v4", "c2-to-c4", "z-to-c2"]),
        seed: u64,
        len in 0usize..10,
    ) {
        let fam = family(f);
        let based = fam.based();
        prop_assert!(based.preserves_identity());
        let w = sample_kernel(seed, len, fam.source());
        prop_assert_eq!(phi_kernel(&w, &fam).unwrap(), phi_kernel(&w, &based).unwrap());
    }

    #[test]
    fn parity_map_retracts_the_inclusion(seed: u64, len in 0usize..12) {
        let f = family("c2-to-z");
        let g = family("z-to-c2");
        let w = sample_kernel(seed, len, f.source());
        let back = phi_kernel(&phi_kernel(&w, &f).unwrap(), &g).unwrap();
        prop_assert_eq!(back, w.normalize());
    }

    #[test]
    fn edge_path_ends_at_the_projection(c in 0..FINITE.len(), seed: u64, len in 0usize..12) {
        let ctx = context(FINITE[c]);
        let sk = build_skeleton(&ctx, 100_000).unwrap();
        let w = word(&ctx, seed, len);
        let path = sk.edge_path(&w, sk.identity_vertex()).unwrap();
        prop_assert_eq!(path.len(), w.len() + 1);
        prop_assert_eq!(sk.tuple(*path.last().unwrap()), tuple_indices(&w));
        for pair in path.windows(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            prop_assert!(sk.edges().contains(&(u, v)));
        }
    }

    #[test]
    fn complex_map_follows_the_induced_word(
        f in prop::sample::select(vec!["c4-to-c2", "c2-to-c4", "swap", "c3-relabel", "c4-to-v4"]),
        seed: u64,
        len in 0usize..10,
    ) {
        let fam = family(f);
        let sk = build_skeleton(fam.source(), 100_000).unwrap();
        let tk = build_skeleton(fam.target(), 100_000).unwrap();
        let map = induced_complex_map(&sk, &tk, &fam).unwrap();
        prop_assert!(map.broken_edges.is_empty());
        let w = word(fam.source(), seed, len);
        prop_assert_eq!(path_agreement(&sk, &tk, &map, &fam, &w).unwrap(), Ok(()));
        prop_assert_eq!(phi_word(&w, &fam).unwrap().len() + map.map_path(&sk.edge_path(&w, sk.identity_vertex()).unwrap()).1.len(), w.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_structure_and_census(
        orders in prop::collection::vec(1u32..5, 1..4),
        mask: u8,
    ) {
        let n = orders.len();
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        let graph = graphprod::SimplicialGraph::new(n, edges.clone()).unwrap();
        let groups = orders.iter().map(|&o| Arc::new(graphprod::Group::cyclic(o).unwrap())).collect();
        let ctx = Arc::new(Context::new(graph, groups).unwrap());
        let sk = build_skeleton(&ctx, 100_000).unwrap();
        sk.check_cayley().unwrap();
        prop_assert_eq!(sk.census().unwrap(), closed_form_census(&orders, edges));
    }
}
