use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{Point, Region};
use super::profile::CostProfile;
use crate::error::{Error, Result};

/// Which multidimensional search tree to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeKind {
    /// Point quadtree: every node splits its region into four quadrants.
    Quadtree,
    /// 2-d tree with discriminant x, y, x, ... by depth.
    Kd,
    /// 2-d tree whose nodes each draw their discriminant uniformly.
    RelaxedKd,
}

impl TreeKind {
    pub const ALL: [TreeKind; 3] = [TreeKind::Quadtree, TreeKind::Kd, TreeKind::RelaxedKd];

    pub fn as_str(self) -> &'static str {
        match self {
            TreeKind::Quadtree => "quadtree",
            TreeKind::Kd => "kd",
            TreeKind::RelaxedKd => "relaxed_kd",
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadtree" | "quad" => Ok(TreeKind::Quadtree),
            "kd" => Ok(TreeKind::Kd),
            "relaxed_kd" | "relaxed-kd" | "relaxed" => Ok(TreeKind::RelaxedKd),
            other => Err(Error::Config(format!("unknown tree kind `{other}`"))),
        }
    }
}

/// Split axis of a k-d node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    X,
    Y,
}

/// Quadrant of a quadtree node, numbered as in the usual figure layout:
/// 1 = SW, 2 = NW, 3 = SE, 4 = NE.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    SouthWest = 0,
    NorthWest = 1,
    SouthEast = 2,
    NorthEast = 3,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] =
        [Quadrant::SouthWest, Quadrant::NorthWest, Quadrant::SouthEast, Quadrant::NorthEast];

    /// Quadrant of `p` relative to the split point `at`; ties go high.
    #[inline]
    pub fn of(p: Point, at: Point) -> Quadrant {
        match (p.x >= at.x, p.y >= at.y) {
            (false, false) => Quadrant::SouthWest,
            (false, true) => Quadrant::NorthWest,
            (true, false) => Quadrant::SouthEast,
            (true, true) => Quadrant::NorthEast,
        }
    }

    /// 1-based label.
    pub fn label(self) -> u8 {
        self as u8 + 1
    }
}

pub(crate) const NIL: u32 = u32::MAX;

/// One stored point with its region. Quadtree nodes use all four child
/// slots (indexed by [`Quadrant`]); k-d nodes use slot 0 (low) and 1 (high).
#[derive(Debug, Clone)]
pub struct Node {
    pub point: Point,
    pub region: Region,
    pub axis: Option<Axis>,
    pub depth: u32,
    children: [u32; 4],
}

impl Node {
    /// Arena indices of the non-empty children.
    pub fn children(&self) -> impl Iterator<Item = usize> + '_ {
        self.children.iter().filter(|&&c| c != NIL).map(|&c| c as usize)
    }

    /// Child in a given slot, if present.
    pub fn child(&self, slot: usize) -> Option<usize> {
        self.children.get(slot).filter(|&&c| c != NIL).map(|&c| c as usize)
    }
}

/// A quadtree or k-d tree over points of the unit square, stored as a node
/// arena with the root at index 0.
#[derive(Debug, Clone)]
pub struct SearchTree {
    kind: TreeKind,
    nodes: Vec<Node>,
    discriminants: Option<ChaCha8Rng>,
}

/// Seed of the discriminant stream of relaxed k-d trees built without an
/// explicit seed.
pub const DEFAULT_DISCRIMINANT_SEED: u64 = 0x5eed_4b44;

impl SearchTree {
    pub fn new(kind: TreeKind) -> Self {
        Self::with_discriminant_seed(kind, DEFAULT_DISCRIMINANT_SEED)
    }

    /// Empty tree; `seed` drives the per-node axis draws of relaxed k-d trees
    /// and is ignored by the other kinds.
    pub fn with_discriminant_seed(kind: TreeKind, seed: u64) -> Self {
        let discriminants = (kind == TreeKind::RelaxedKd).then(|| ChaCha8Rng::seed_from_u64(seed));
        Self { kind, nodes: Vec::new(), discriminants }
    }

    /// Inserts `points` in order. Fails on points outside the unit square or
    /// on any two points sharing an x or a y coordinate.
    pub fn build(points: &[Point], kind: TreeKind) -> Result<Self> {
        Self::build_seeded(points, kind, DEFAULT_DISCRIMINANT_SEED)
    }

    pub fn build_seeded(points: &[Point], kind: TreeKind, seed: u64) -> Result<Self> {
        check_distinct_coordinates(points)?;
        let mut tree = Self::with_discriminant_seed(kind, seed);
        tree.nodes.reserve(points.len());
        for &p in points {
            tree.insert_unchecked(p.validated()?);
        }
        Ok(tree)
    }

    /// Inserts a single point. Ties are only detected against the nodes on
    /// the insertion path, which are the only ones whose routing they affect.
    pub fn insert(&mut self, p: Point) -> Result<()> {
        let p = p.validated()?;
        let mut cur = 0usize;
        if !self.nodes.is_empty() {
            loop {
                let node = &self.nodes[cur];
                if node.point.x == p.x || node.point.y == p.y {
                    return Err(Error::DuplicateCoordinate { first: node.point, second: p });
                }
                match node.children[self.slot_for(node, p)] {
                    NIL => break,
                    next => cur = next as usize,
                }
            }
        }
        self.insert_unchecked(p);
        Ok(())
    }

    fn insert_unchecked(&mut self, p: Point) {
        if self.nodes.is_empty() {
            let axis = self.axis_for_depth(0);
            self.nodes.push(Node { point: p, region: Region::UNIT, axis, depth: 0, children: [NIL; 4] });
            return;
        }
        let mut cur = 0usize;
        loop {
            let node = &self.nodes[cur];
            let slot = self.slot_for(node, p);
            match node.children[slot] {
                NIL => break self.attach(cur, slot, p),
                next => cur = next as usize,
            }
        }
    }

    #[inline]
    fn slot_for(&self, node: &Node, p: Point) -> usize {
        match node.axis {
            None => Quadrant::of(p, node.point) as usize,
            Some(Axis::X) => usize::from(p.x >= node.point.x),
            Some(Axis::Y) => usize::from(p.y >= node.point.y),
        }
    }

    fn attach(&mut self, parent: usize, slot: usize, p: Point) {
        let (region, depth) = {
            let node = &self.nodes[parent];
            (child_region(node, slot), node.depth + 1)
        };
        let axis = self.axis_for_depth(depth);
        let idx = u32::try_from(self.nodes.len()).expect("tree size exceeds u32 index space");
        self.nodes.push(Node { point: p, region, axis, depth, children: [NIL; 4] });
        self.nodes[parent].children[slot] = idx;
    }

    fn axis_for_depth(&mut self, depth: u32) -> Option<Axis> {
        match self.kind {
            TreeKind::Quadtree => None,
            TreeKind::Kd => Some(if depth % 2 == 0 { Axis::X } else { Axis::Y }),
            TreeKind::RelaxedKd => {
                let rng = self.discriminants.as_mut().expect("relaxed k-d tree owns a discriminant stream");
                Some(if rng.random::<bool>() { Axis::X } else { Axis::Y })
            }
        }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> Option<&Node> {
        self.nodes.first()
    }

    pub fn height(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth + 1).max().unwrap_or(0)
    }

    /// Number of nodes in the subtree rooted at arena index `idx`.
    pub fn subtree_size(&self, idx: usize) -> usize {
        let mut stack = vec![idx];
        let mut count = 0;
        while let Some(i) = stack.pop() {
            count += 1;
            stack.extend(self.nodes[i].children());
        }
        count
    }

    /// Number of nodes visited by a partial match query for the vertical
    /// line at `s`.
    pub fn partial_match_cost(&self, s: f64) -> u64 {
        if self.nodes.is_empty() {
            return 0;
        }
        let mut count = 0u64;
        let mut stack: Vec<u32> = Vec::with_capacity(64);
        stack.push(0);
        while let Some(i) = stack.pop() {
            let node = &self.nodes[i as usize];
            count += 1;
            let c = &node.children;
            match node.axis {
                None => {
                    let (a, b) = if s < node.point.x { (c[0], c[1]) } else { (c[2], c[3]) };
                    push_live(&mut stack, a);
                    push_live(&mut stack, b);
                }
                Some(Axis::X) => push_live(&mut stack, c[usize::from(s >= node.point.x)]),
                Some(Axis::Y) => {
                    push_live(&mut stack, c[0]);
                    push_live(&mut stack, c[1]);
                }
            }
        }
        count
    }

    /// The whole function s -> C_n(s) in one pass.
    pub fn cost_profile(&self) -> CostProfile {
        CostProfile::from_extents(self.nodes.iter().map(|n| (n.region.x_lo, n.region.x_hi)))
    }

    /// Worst query `(S_n, s*)`, with `s*` the left end of the first interval
    /// attaining the maximum.
    pub fn worst_query_cost(&self) -> (u64, f64) {
        self.cost_profile().max()
    }

    /// Sum of node region widths, equal to the integral of the cost profile.
    pub fn total_width(&self) -> f64 {
        crate::stats::neumaier_sum(self.nodes.iter().map(|n| n.region.width()))
    }
}

#[inline]
fn push_live(stack: &mut Vec<u32>, c: u32) {
    if c != NIL {
        stack.push(c);
    }
}

fn child_region(node: &Node, slot: usize) -> Region {
    let at = node.point;
    match node.axis {
        None => {
            let (west, east) = node.region.split_x(at.x);
            let half = if slot < 2 { west } else { east };
            let (south, north) = half.split_y(at.y);
            if slot % 2 == 0 {
                south
            } else {
                north
            }
        }
        Some(Axis::X) => {
            let (lo, hi) = node.region.split_x(at.x);
            if slot == 0 {
                lo
            } else {
                hi
            }
        }
        Some(Axis::Y) => {
            let (lo, hi) = node.region.split_y(at.y);
            if slot == 0 {
                lo
            } else {
                hi
            }
        }
    }
}

fn check_distinct_coordinates(points: &[Point]) -> Result<()> {
    for coord in [|p: &Point| p.x, |p: &Point| p.y] {
        let mut values: Vec<f64> = points.iter().map(coord).collect();
        values.sort_unstable_by(f64::total_cmp);
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            let mut hits = points.iter().filter(|p| coord(p) == w[0]);
            let (first, second) = (*hits.next().expect("duplicate present"), *hits.next().expect("duplicate present"));
            return Err(Error::DuplicateCoordinate { first, second });
        }
    }
    Ok(())
}
