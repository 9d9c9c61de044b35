//! Generic block systems by Atkinson's union-find refinement.

use rayon::prelude::*;

use super::group::PermGroup;
use crate::error::{Error, Result};

/// Degree cap for the all-pairs primitivity driver and for BSGS work.
pub const BSGS_CAP: usize = 1 << 12;

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        a
    }
}

/// A partition of the points into blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    /// Block label of each point: the least point of its block.
    labels: Vec<usize>,
    block_size: usize,
}

impl BlockSystem {
    fn from_union_find(uf: &mut UnionFind) -> BlockSystem {
        let n = uf.parent.len();
        let mut least = vec![usize::MAX; n];
        let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        for (x, &r) in roots.iter().enumerate() {
            least[r] = least[r].min(x);
        }
        let labels: Vec<usize> = roots.iter().map(|&r| least[r]).collect();
        let block_size = labels.iter().filter(|&&l| l == labels[0]).count();
        BlockSystem { labels, block_size }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_count(&self) -> usize {
        self.labels.len() / self.block_size.max(1)
    }

    pub fn block_of(&self, point: usize) -> Vec<usize> {
        let l = self.labels[point];
        (0..self.labels.len()).filter(|&x| self.labels[x] == l).collect()
    }

    /// Singletons or the whole set.
    pub fn is_trivial(&self) -> bool {
        self.block_size == 1 || self.block_size == self.labels.len()
    }
}

/// The finest block system in which `a` and `b` share a block.
pub fn minimal_blocks(group: &PermGroup, a: usize, b: usize) -> Result<BlockSystem> {
    let n = group.degree();
    let orbit = group.orbit(0).len();
    if orbit != n {
        return Err(Error::Intransitive { orbit, degree: n });
    }
    Ok(minimal_blocks_unchecked(group, a, b))
}

fn minimal_blocks_unchecked(group: &PermGroup, a: usize, b: usize) -> BlockSystem {
    let mut uf = UnionFind::new(group.degree());
    let mut queue = Vec::new();
    if uf.find(a) != uf.find(b) {
        uf.union(a, b);
        queue.push((a, b));
    }
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let u = uf.find(g.apply(x));
            let v = uf.find(g.apply(y));
            if u != v {
                uf.union(u, v);
                queue.push((u, v));
            }
        }
    }
    BlockSystem::from_union_find(&mut uf)
}

/// Tries every pair `(0, beta)`. Returns a nontrivial block system, or `None`
/// when the group is primitive. The first system found in order of `beta` is
/// returned, so the result is deterministic.
pub fn find_block_system(group: &PermGroup) -> Result<Option<BlockSystem>> {
    let n = group.degree();
    if n > BSGS_CAP {
        return Err(Error::DegreeCap {
            what: "all-pairs block search",
            cap_name: "BSGS/blocks",
            degree: n as u64,
            cap: BSGS_CAP as u64,
        });
    }
    let orbit = group.orbit(0).len();
    if orbit != n {
        return Err(Error::Intransitive { orbit, degree: n });
    }
    Ok((1..n).into_par_iter().find_map_first(|beta| {
        let sys = minimal_blocks_unchecked(group, 0, beta);
        (!sys.is_trivial()).then_some(sys)
    }))
}

pub fn is_primitive(group: &PermGroup) -> Result<bool> {
    Ok(find_block_system(group)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DensePerm;

    #[test]
    fn klein_four_blocks() {
        let a = DensePerm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let b = DensePerm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        let g = PermGroup::new(4, vec![a, b]).unwrap();
        let sys = minimal_blocks(&g, 0, 1).unwrap();
        assert_eq!(sys.block_of(0), vec![0, 1]);
        assert_eq!(sys.block_of(2), vec![2, 3]);
        assert_eq!(sys.block_count(), 2);
        assert!(!is_primitive(&g).unwrap());
    }

    #[test]
    fn two_transitive_is_primitive() {
        // Sym(7) and the cyclic group of prime order 7 are primitive.
        let a = DensePerm::from_cycles(7, &[&[0, 1]]).unwrap();
        let b = DensePerm::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap();
        assert!(is_primitive(&PermGroup::new(7, vec![a, b.clone()]).unwrap()).unwrap());
        assert!(is_primitive(&PermGroup::new(7, vec![b]).unwrap()).unwrap());
        // Cyclic of order 6 is not.
        let c = DensePerm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let sys = find_block_system(&PermGroup::new(6, vec![c]).unwrap())
            .unwrap()
            .unwrap();
        assert!(!sys.is_trivial());
    }

    #[test]
    fn intransitive_rejected() {
        let a = DensePerm::from_cycles(4, &[&[0, 1]]).unwrap();
        let g = PermGroup::new(4, vec![a]).unwrap();
        assert!(matches!(minimal_blocks(&g, 0, 1), Err(Error::Intransitive { .. })));
    }
}
