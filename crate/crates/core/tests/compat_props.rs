mod common;

use common::matching;
use dcm_core::compat::{are_disjoint_compatible, degree, flip, flippable_partitions, neighbors, partition_between};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbors_are_compatible_and_symmetric(m in matching(1, 11)) {
        let ns = neighbors(&m);
        prop_assert_eq!(ns.len() as u64, degree(&m));
        for x in &ns {
            prop_assert!(are_disjoint_compatible(&m, x).unwrap());
            prop_assert!(neighbors(x).binary_search(&m).is_ok());
        }
    }

    #[test]
    fn neighbors_commute_with_symmetries(m in matching(1, 10), s in 0i64..20) {
        let mut rotated: Vec<_> = neighbors(&m).iter().map(|x| x.rotate(s)).collect();
        rotated.sort();
        prop_assert_eq!(neighbors(&m.rotate(s)), rotated);
        let mut reflected: Vec<_> = neighbors(&m).iter().map(|x| x.reflect()).collect();
        reflected.sort();
        prop_assert_eq!(neighbors(&m.reflect()), reflected);
    }

    #[test]
    fn partitions_biject_with_neighbors(m in matching(1, 10)) {
        for p in flippable_partitions(&m) {
            let x = flip(&m, &p).unwrap();
            let back = partition_between(&m, &x).unwrap().unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(flip(&x, &p.image()).unwrap(), m.clone());
        }
    }
}
