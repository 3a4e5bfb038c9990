//! Cross-module checks on randomly generated subgroups of F(x, y, z).

use freesep_core::{
    apply_endomorphism, isolation_scan, separability_scan, Alphabet, FiniteGroup, Homomorphism,
    Index, Letter, ScanBounds, SubgroupGraph, SymmetricGroup, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max: usize) -> Word {
    let len = rng.random_range(1..=max);
    Word::reduce((0..len).map(|_| Letter::new(rng.random_range(0..rank), rng.random())))
}

fn random_subgroup(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Word> {
    let k = rng.random_range(1..=3);
    (0..k).map(|_| random_word(rng, rank, 6)).collect()
}

#[test]
fn products_of_generators_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = Alphabet::standard(3).unwrap();
    for _ in 0..200 {
        let gens = random_subgroup(&mut rng, 3);
        let graph = SubgroupGraph::build(&a, &gens).unwrap();
        for _ in 0..10 {
            // A random word in the generators, pushed through the substitution.
            let k = gens.len();
            let abstract_word = random_word(&mut rng, k, 5);
            let product = apply_endomorphism(&gens, &abstract_word).unwrap();
            assert!(graph.contains(&product), "{gens:?} ∌ {product}");
        }
    }
}

#[test]
fn non_members_get_separating_representations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = Alphabet::standard(3).unwrap();
    let mut separated = 0;
    for _ in 0..200 {
        let gens = random_subgroup(&mut rng, 3);
        let graph = SubgroupGraph::build(&a, &gens).unwrap();
        let f = random_word(&mut rng, 3, 8);
        match graph.separating_permutation_rep(&f) {
            Ok(rep) => {
                assert!(!graph.contains(&f));
                assert!(rep.separates(graph.basepoint(), &gens, &f));
                let hom = Homomorphism::from(&rep);
                assert_ne!(hom.evaluate(&f)[graph.basepoint()], graph.basepoint());
                separated += 1;
            }
            Err(_) => assert!(graph.contains(&f)),
        }
    }
    assert!(separated > 100);
}

#[test]
fn cyclic_quotient_kernels() {
    // ⟨x^p, y, x y x⁻¹, …⟩ is the kernel of F → ℤ/p sending x ↦ 1, y ↦ 0.
    let a = Alphabet::standard(2).unwrap();
    for p in [2u64, 3, 5] {
        let x = Word::generator(0);
        let y = Word::generator(1);
        let mut gens = vec![x.power(p as i64)];
        for i in 0..p as i64 {
            gens.push(x.power(i).multiply(&y).multiply(&x.power(-i)));
        }
        let graph = SubgroupGraph::build(&a, &gens).unwrap();
        assert_eq!(graph.index_info(), Index::Finite(p as usize));
        let bounds = ScanBounds::new(1, [p as u32]).unwrap();
        assert_eq!(isolation_scan(&graph, &bounds).len(), 2);

        let target = FiniteGroup::cyclic(p, 1).unwrap();
        let scan = separability_scan(&gens, &x, &[target], 1_000_000).unwrap();
        assert_eq!(scan.homs_separating(), (p - 1) as u128);
    }
}

#[test]
fn symmetric_images_match_graph_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = Alphabet::standard(2).unwrap();
    let h = SubgroupGraph::build(&a, &[a.parse("xYXyx").unwrap(), a.parse("y").unwrap()]).unwrap();
    for _ in 0..50 {
        let f = random_word(&mut rng, 2, 10);
        let Ok(rep) = h.separating_permutation_rep(&f) else { continue };
        let sym = SymmetricGroup { degree: rep.degree() };
        let hom = Homomorphism::new(sym, rep.images().to_vec());
        for _ in 0..10 {
            let w = random_word(&mut rng, 2, 12);
            assert_eq!(hom.evaluate(&w)[0], rep.act(0, &w));
        }
    }
}
