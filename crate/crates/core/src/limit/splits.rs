use crate::rng::{open_unit, splitmix64};

/// A node of the infinite 4-ary tree: its depth and its path, read as a
/// base-4 number with one digit per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeAddress {
    pub depth: u32,
    pub path: u64,
}

/// Deepest level an address can name.
pub const MAX_DEPTH: u32 = 31;

impl NodeAddress {
    pub const ROOT: NodeAddress = NodeAddress { depth: 0, path: 0 };

    /// Child `i` in `0..4`: 0 = SW, 1 = NW, 2 = SE, 3 = NE.
    #[inline]
    pub fn child(self, i: u64) -> NodeAddress {
        debug_assert!(i < 4 && self.depth < MAX_DEPTH);
        NodeAddress { depth: self.depth + 1, path: self.path * 4 + i }
    }

    /// Position in breadth-first order; unique across all depths.
    #[inline]
    pub fn level_order_index(self) -> u64 {
        ((1u64 << (2 * self.depth)) - 1) / 3 + self.path
    }
}

/// The split variables `(U_u, V_u)` attached to every node of the tree.
pub trait SplitSource: Sync {
    fn split(&self, node: NodeAddress) -> (f64, f64);
}

/// Independent uniform splits, computed as a keyed hash of the node address,
/// so that a node's split never depends on which other nodes were expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashedSplits {
    key: u64,
}

impl HashedSplits {
    pub fn new(seed: u64) -> Self {
        Self { key: splitmix64(seed ^ 0x6a09_e667_f3bc_c909) }
    }
}

impl SplitSource for HashedSplits {
    #[inline]
    fn split(&self, node: NodeAddress) -> (f64, f64) {
        let z = splitmix64(self.key ^ splitmix64(node.level_order_index()));
        (open_unit(splitmix64(z)), open_unit(splitmix64(z ^ 0xbb67_ae85_84ca_a73b)))
    }
}

/// The same split at every node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedSplits {
    pub u: f64,
    pub v: f64,
}

impl SplitSource for FixedSplits {
    fn split(&self, _: NodeAddress) -> (f64, f64) {
        (self.u, self.v)
    }
}
