use super::{FiniteLoop, LoopError, LoopHom, Subloop};

fn sorted_set(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// First violated coset equation, described for error messages.
fn normality_violation(l: &FiniteLoop, n: &Subloop) -> Option<String> {
    let ns = n.members();
    for x in l.elements() {
        let xn = sorted_set(ns.iter().map(|&m| l.mul(x, m)).collect());
        let nx = sorted_set(ns.iter().map(|&m| l.mul(m, x)).collect());
        if xn != nx {
            return Some(format!("x∘N != N∘x for x={x}"));
        }
        for y in l.elements() {
            let xy = l.mul(x, y);
            let lhs = sorted_set(ns.iter().map(|&m| l.mul(l.mul(x, m), y)).collect());
            let rhs = sorted_set(ns.iter().map(|&m| l.mul(x, l.mul(m, y))).collect());
            if lhs != rhs {
                return Some(format!("(x∘N)∘y != x∘(N∘y) for x={x}, y={y}"));
            }
            let lhs = sorted_set(ns.iter().map(|&m| l.mul(x, l.mul(y, m))).collect());
            let rhs = sorted_set(ns.iter().map(|&m| l.mul(xy, m)).collect());
            if lhs != rhs {
                return Some(format!("x∘(y∘N) != (x∘y)∘N for x={x}, y={y}"));
            }
        }
    }
    None
}

/// Checks the three coset equations
/// `x∘N = N∘x`, `(x∘N)∘y = x∘(N∘y)`, `x∘(y∘N) = (x∘y)∘N` for all `x, y`.
pub fn is_normal_subloop(l: &FiniteLoop, n: &Subloop) -> bool {
    normality_violation(l, n).is_none()
}

/// Quotient `L/N` together with the block data.
#[derive(Clone, Debug)]
pub struct FactorLoop {
    pub quotient: FiniteLoop,
    /// `block_of[x]` is the block containing `x`.
    pub block_of: Vec<usize>,
    /// Blocks `x∘N` ordered by smallest element; block 0 is `N`.
    pub blocks: Vec<Vec<usize>>,
}

impl FactorLoop {
    /// The natural map `L → L/N`.
    pub fn projection(&self) -> LoopHom {
        LoopHom {
            image: self.block_of.clone(),
        }
    }
}

/// Builds `L/N` on the blocks `x∘N`. Every representative pair is
/// recomputed; any dependence on representatives is reported as `NotNormal`.
pub fn factor_loop(l: &FiniteLoop, n: &Subloop) -> Result<FactorLoop, LoopError> {
    let size = l.order();
    let mut block_of = vec![usize::MAX; size];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in l.elements() {
        if block_of[x] != usize::MAX {
            continue;
        }
        let b = blocks.len();
        let block = sorted_set(n.members().iter().map(|&m| l.mul(x, m)).collect());
        for &y in &block {
            if block_of[y] != usize::MAX {
                return Err(LoopError::NotNormal(format!(
                    "blocks {}∘N and {}∘N overlap without coinciding",
                    blocks[block_of[y]].first().copied().unwrap_or(0),
                    x
                )));
            }
            block_of[y] = b;
        }
        blocks.push(block);
    }
    let k = blocks.len();
    let mut table = vec![usize::MAX; k * k];
    for a in l.elements() {
        for c in l.elements() {
            let (ba, bc) = (block_of[a], block_of[c]);
            let prod = block_of[l.mul(a, c)];
            let cell = &mut table[ba * k + bc];
            if *cell == usize::MAX {
                *cell = prod;
            } else if *cell != prod {
                return Err(LoopError::NotNormal(format!(
                    "block product {ba}·{bc} depends on representatives ({a},{c})"
                )));
            }
        }
    }
    let quotient = FiniteLoop::from_trusted_table(k, table);
    Ok(FactorLoop {
        quotient,
        block_of,
        blocks,
    })
}

/// Elements that commute with everything and associate in all three
/// positions with every pair.
pub fn centre_of_loop(l: &FiniteLoop) -> Subloop {
    let members = l
        .elements()
        .filter(|&a| {
            l.elements().all(|x| {
                l.mul(a, x) == l.mul(x, a)
                    && l.elements().all(|y| {
                        l.mul(a, l.mul(x, y)) == l.mul(l.mul(a, x), y)
                            && l.mul(x, l.mul(a, y)) == l.mul(l.mul(x, a), y)
                            && l.mul(x, l.mul(y, a)) == l.mul(l.mul(x, y), a)
                    })
            })
        })
        .collect();
    Subloop::from_sorted_unchecked(l.order(), members)
}
