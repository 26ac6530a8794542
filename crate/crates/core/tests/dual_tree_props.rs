mod common;

use common::matching;
use dcm_core::dual_tree::{find_antiblocks, find_blocks, rotationally_equivalent, rotationally_equivalent_by_tree};
use dcm_core::{from_dual_tree, to_dual_tree, EmbeddedTree, Matching};
use proptest::prelude::*;

proptest! {
    #[test]
    fn dual_tree_round_trip(m in matching(1, 14)) {
        let t = to_dual_tree(&m);
        prop_assert_eq!(t.num_vertices(), m.k() + 1);
        prop_assert_eq!(from_dual_tree(&t).unwrap(), m.clone());
        let json = serde_json::to_string(&t).unwrap();
        let back: EmbeddedTree = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn leaves_are_boundary_edges(m in matching(2, 14)) {
        let t = to_dual_tree(&m);
        let boundary = m.edges().iter().filter(|&&e| m.is_boundary(e)).count();
        prop_assert_eq!(t.leaves().len(), boundary);
    }

    #[test]
    fn remark_is_rotation(m in matching(1, 10), s in 1u16..21) {
        let s = (s - 1) % m.num_points() as u16 + 1;
        let t = to_dual_tree(&m).remark(s).unwrap();
        prop_assert_eq!(from_dual_tree(&t).unwrap(), m.rotate(1 - s as i64));
    }

    #[test]
    fn rotation_classes_agree(m in matching(2, 8), s in 0i64..16, other in matching(2, 8)) {
        let r = m.rotate(s);
        prop_assert!(rotationally_equivalent(&m, &r).unwrap());
        prop_assert!(rotationally_equivalent_by_tree(&m, &r).unwrap());
        if other.k() == m.k() {
            prop_assert_eq!(
                rotationally_equivalent(&m, &other).unwrap(),
                rotationally_equivalent_by_tree(&m, &other).unwrap()
            );
        }
    }

    #[test]
    fn separated_pairs_flip_into_each_other(m in matching(3, 12)) {
        let n = m.num_points();
        for b in find_blocks(&m) {
            let p: Vec<u16> = (0..4).map(|i| m.wrap(b.first as i64 + i)).collect();
            let mut pairs: Vec<(u16, u16)> = m.edges().iter()
                .filter(|e| !b.edges.contains(e))
                .map(|e| (e.a, e.b))
                .collect();
            pairs.push((p[0], p[1]));
            pairs.push((p[2], p[3]));
            let flipped = Matching::validate(n / 2, &pairs).unwrap();
            prop_assert!(find_antiblocks(&flipped).iter().any(|a| a.first == b.first));
        }
    }
}
