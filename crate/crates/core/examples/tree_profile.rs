//! Builds a quadtree, queries it, and prints its whole cost profile.

use partial_match::rng::{replicate_stream, tag};
use partial_match::trees::{sample_uniform_points, Point, SearchTree, TreeKind};

fn main() -> partial_match::Result<()> {
    // the two-point tree: the second point lands in the north-west quadrant
    let small = SearchTree::build(&[Point::new(0.5, 0.5), Point::new(0.25, 0.75)], TreeKind::Quadtree)?;
    println!("two points: C(0.3) = {}, C(0.7) = {}", small.partial_match_cost(0.3), small.partial_match_cost(0.7));

    let mut rng = replicate_stream(7, tag::DEMO, 0, 0);
    let pts = sample_uniform_points(10_000, &mut rng);
    let tree = SearchTree::build(&pts, TreeKind::Quadtree)?;
    let profile = tree.cost_profile();
    let (worst, at) = profile.max();
    println!("n = {}, height {}", tree.len(), tree.height());
    for s in [0.0, 0.1, 0.25, 0.5, 0.75, 1.0] {
        println!("C({s}) = {}", tree.partial_match_cost(s));
    }
    println!("{} constant pieces, worst query {worst} at s = {at:.6}", profile.pieces().count());
    println!("profile integral {:.6} = sum of region widths {:.6}", profile.integral(), tree.total_width());

    // the profile as CSV (s_left, s_right, cost); only the first lines here
    let mut buf = Vec::new();
    profile.write_csv(&mut buf)?;
    for line in String::from_utf8_lossy(&buf).lines().take(6) {
        println!("{line}");
    }
    Ok(())
}
