use std::sync::Arc;

use super::{FiniteGroup, GroupError};
use crate::bitset::BitSet;

/// A subgroup stored as an explicit sorted element set (always contains 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: BitSet,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(parent_order: usize, members: Vec<usize>) -> Self {
        let mut mask = BitSet::new(parent_order);
        for &m in &members {
            mask.insert(m);
        }
        Subgroup { members, mask }
    }

    /// Validates that `members` is closed under products and inverses.
    pub fn new(g: &FiniteGroup, members: &[usize]) -> Result<Self, GroupError> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() != Some(&0) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        if let Some(&x) = sorted.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::NotSubgroup(format!("element {x} out of range")));
        }
        let s = Self::from_sorted_unchecked(g.order(), sorted);
        for &a in &s.members {
            if !s.contains(g.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.members {
                if !s.contains(g.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(s)
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g.order(), vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g.order(), g.elements().collect())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// `g H g⁻¹`
    pub fn conjugate(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| group.conjugate(g, h)).collect();
        members.sort_unstable();
        Self::from_sorted_unchecked(group.order(), members)
    }
}

/// Smallest subgroup containing `gens`, by breadth-first closure.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut mask = BitSet::new(g.order());
    mask.insert(0);
    let mut members = vec![0];
    let mut gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in &gens {
            let y = g.mul(x, s);
            if !mask.contains(y) {
                mask.insert(y);
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    Subgroup { members, mask }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
        .collect();
    Subgroup::from_sorted_unchecked(g.order(), members)
}

pub fn intersection(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let members = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
    Subgroup::from_sorted_unchecked(g.order(), members)
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.elements()
        .all(|x| h.members.iter().all(|&m| h.contains(g.conjugate(x, m))))
}

/// Largest normal subgroup of `g` contained in `h`: the intersection of all
/// conjugates of `h`.
pub fn normal_core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut core = h.clone();
    for x in g.elements() {
        if core.is_trivial() {
            break;
        }
        core = intersection(g, &core, &h.conjugate(g, x));
    }
    core
}

/// Left cosets `xH` of a subgroup, with the induced left action of `G`.
///
/// Cosets are numbered in order of their smallest element, so the coset of
/// the identity is 0 and each representative is the least element of its coset.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group_order: usize,
    subgroup: Subgroup,
    coset_of: Vec<u32>,
    representatives: Vec<u32>,
    // action[g * count + c] = coset of g·rep(c)
    action: Vec<u32>,
}

pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> Arc<CosetSpace> {
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = representatives.len() as u32;
        representatives.push(x as u32);
        for &m in h.members() {
            coset_of[g.mul(x, m)] = c;
        }
    }
    let count = representatives.len();
    let mut action = Vec::with_capacity(n * count);
    for a in 0..n {
        for &r in &representatives {
            action.push(coset_of[g.mul(a, r as usize)]);
        }
    }
    Arc::new(CosetSpace {
        group_order: n,
        subgroup: h.clone(),
        coset_of,
        representatives,
        action,
    })
}

impl CosetSpace {
    /// Index `[G:H]`.
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    #[inline]
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    #[inline]
    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c] as usize
    }

    /// Coset `g·(cH)`.
    #[inline]
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.action[g * self.count() + c] as usize
    }

    /// Elements of coset `c`, ascending.
    pub fn members_of(&self, c: usize) -> Vec<usize> {
        (0..self.group_order).filter(|&x| self.coset_of(x) == c).collect()
    }

    /// Cosets fixed by `g`.
    pub fn fixed_cosets(&self, g: usize) -> BitSet {
        let mut s = BitSet::new(self.count());
        for c in 0..self.count() {
            if self.act(g, c) == c {
                s.insert(c);
            }
        }
        s
    }
}
