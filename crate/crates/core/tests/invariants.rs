use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modrep::analysis::{analyze, AnalysisOptions};
use modrep::meataxe::composition_multiplicities;
use modrep::module::{dual, hom_dim, regular_module, spin, sub_quotient};
use modrep::{builtin, Field, GroupAlgebra};

fn algebra(name: &str, p: u32, k: u32) -> GroupAlgebra {
    GroupAlgebra::new(&builtin(name).unwrap(), &Field::gf(p, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn analysis_does_not_depend_on_seed(seed in any::<u64>(), which in 0usize..3) {
        let (name, p, k) = [("S3", 3, 1), ("A4", 2, 2), ("S4", 2, 1)][which];
        let alg = algebra(name, p, k);
        let a = analyze(&alg, &AnalysisOptions { seed, fault: None }).unwrap();
        let b = analyze(&alg, &AnalysisOptions { seed: 0, fault: None }).unwrap();
        prop_assert!(a.all_passed());
        prop_assert_eq!(a.simples.dims(), b.simples.dims());
        prop_assert_eq!(&a.cartan, &b.cartan);
        prop_assert_eq!(a.pim_dims(), b.pim_dims());
        prop_assert_eq!(&a.blocks.parts, &b.blocks.parts);
    }

    #[test]
    fn cyclic_submodules_split_into_simples(seed in any::<u64>()) {
        let alg = algebra("A4", 2, 2);
        let a = analyze(&alg, &AnalysisOptions::default()).unwrap();
        let reg = regular_module(&alg);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = alg.random(&mut rng);
        let (sub, quot) = sub_quotient(&reg, &spin(&reg, &[v.0]).unwrap()).unwrap();
        for m in [sub, quot] {
            if m.dim() == 0 {
                continue;
            }
            let mults = composition_multiplicities(&m, &a.simples.simples, seed).unwrap();
            let total: usize = mults.iter().zip(a.simples.dims()).map(|(c, d)| c * d).sum();
            prop_assert_eq!(total, m.dim());
            // Hom(M, N) and Hom(N*, M*) have the same dimension
            let d = dual(&m);
            prop_assert_eq!(hom_dim(&m, &reg).unwrap(), hom_dim(&dual(&reg), &d).unwrap());
        }
    }
}
