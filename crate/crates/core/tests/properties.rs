mod common;

use partial_match::trees::{Point, SearchTree, TreeKind};
use proptest::prelude::*;

const SEED: u64 = 2024;

fn check(r: common::Check) {
    match r {
        Ok(msg) => eprintln!("{msg}"),
        Err(msg) => panic!("{msg}"),
    }
}

#[test]
fn insertion_changes_cost_by_zero_or_one() {
    check(common::insertion_monotonicity(SEED, 300));
}

#[test]
fn traversal_matches_region_count() {
    check(common::oracle_equivalence(SEED, 1000));
}

#[test]
fn profile_integral_is_the_width_sum() {
    check(common::double_counting(SEED, 200));
}

#[test]
fn profile_matches_traversal() {
    check(common::profile_pointwise(SEED, 200));
}

#[test]
fn uniform_lines_average_to_the_integral() {
    check(common::uniform_query_identity(SEED, 20, 4000, 4.0));
}

#[test]
fn root_split_is_multinomial() {
    check(common::multinomial_root_split(SEED, 4000, 51, 0.3, 0.6));
}

fn point_sets(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..max)
}

fn kinds() -> impl Strategy<Value = TreeKind> {
    prop::sample::select(TreeKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prop_monotone_insertion(pts in point_sets(60), kind in kinds(), s in 0.0..=1.0f64) {
        let mut tree = SearchTree::with_discriminant_seed(kind, 9);
        let mut last = 0;
        for (x, y) in pts {
            if tree.insert(Point::new(x, y)).is_err() {
                continue;
            }
            let c = tree.partial_match_cost(s);
            prop_assert!(c == last || c == last + 1, "{} -> {}", last, c);
            last = c;
        }
    }

    #[test]
    fn prop_region_count_oracle(pts in point_sets(200), kind in kinds(), s in 0.0..=1.0f64) {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        if let Ok(tree) = SearchTree::build(&pts, kind) {
            prop_assert_eq!(tree.partial_match_cost(s), common::region_count(&tree, s));
            prop_assert_eq!(tree.cost_profile().eval(s), tree.partial_match_cost(s));
        }
    }

    #[test]
    fn prop_children_nest_and_partition(pts in point_sets(80)) {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        if let Ok(tree) = SearchTree::build(&pts, TreeKind::Quadtree) {
            for node in tree.nodes() {
                prop_assert!(node.region.contains(node.point));
                let mut area = 0.0;
                for c in node.children() {
                    let child = &tree.nodes()[c];
                    prop_assert!(child.region.is_within(&node.region));
                    area += child.region.area();
                }
                prop_assert!(area <= node.region.area() + 1e-12);
            }
        }
    }
}
