use super::{FiniteGroup, GroupError, Mapping, Subgroup};
use crate::perm::Permutation;

/// Largest `n` accepted by [`symmetric`]; the table of S8 alone would need
/// several gigabytes.
pub const MAX_SYMMETRIC_DEGREE: usize = 7;

fn positive(n: usize, what: &str) -> Result<(), GroupError> {
    if n == 0 {
        Err(GroupError::InvalidArgument(format!("{what} needs n >= 1")))
    } else {
        Ok(())
    }
}

/// Integers mod `n` under addition; element `i` is the residue `i`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    positive(n, "cyclic")?;
    let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    Ok(FiniteGroup::from_trusted_table(n, table))
}

/// Dihedral group of order `2n`. Index `i < n` is the rotation `r^i`, index
/// `n + i` is the reflection `r^i s`, with `s r = r⁻¹ s`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    positive(n, "dihedral")?;
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (ra, sa) = (a % n, a >= n);
            let (rb, sb) = (b % n, b >= n);
            // r^ra s^sa r^rb s^sb = r^(ra ± rb) s^(sa xor sb)
            let r = if sa { (ra + n - rb) % n } else { (ra + rb) % n };
            table.push(if sa ^ sb { n + r } else { r });
        }
    }
    Ok(FiniteGroup::from_trusted_table(order, table))
}

/// Quaternion group: indices 0..8 are 1, −1, i, −i, j, −j, k, −k.
pub fn quaternion8() -> FiniteGroup {
    // unit: 0=1, 1=i, 2=j, 3=k; element index = 2*unit + sign
    let unit_mul = |u: usize, v: usize| -> (usize, bool) {
        match (u, v) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = unit_mul(a / 2, b / 2);
            let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
            table.push(2 * u + sign);
        }
    }
    FiniteGroup::from_trusted_table(8, table)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn symmetric_index(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

/// The permutation with lexicographic rank `index` among permutations of `0..n`.
pub fn symmetric_element(n: usize, mut index: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        out.push(pool.remove(index / f));
        index %= f;
    }
    out
}

/// Symmetric group on `0..n`. Elements are permutations in lexicographic
/// order (index 0 is the identity); the product `p·q` applies `q` first.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    positive(n, "symmetric")?;
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(GroupError::SizeCapExceeded {
            what: format!("symmetric({n})"),
            cap: MAX_SYMMETRIC_DEGREE,
        });
    }
    let order = factorial(n);
    let perms: Vec<Permutation> = (0..order)
        .map(|i| Permutation::from_images(&symmetric_element(n, i)).expect("valid permutation"))
        .collect();
    let mut table = Vec::with_capacity(order * order);
    for p in &perms {
        for q in &perms {
            table.push(symmetric_index(&p.compose(q).images()));
        }
    }
    Ok(FiniteGroup::from_trusted_table(order, table))
}

/// Stabilizer of `point` inside `symmetric(n)`.
pub fn symmetric_point_stabilizer(n: usize, point: usize) -> Result<Subgroup, GroupError> {
    if point >= n {
        return Err(GroupError::InvalidArgument(format!("point {point} outside 0..{n}")));
    }
    let order = factorial(n);
    let members = (0..order).filter(|&i| symmetric_element(n, i)[point] == point).collect();
    Ok(Subgroup::from_sorted_unchecked(order, members))
}

/// Direct product with lexicographic index pairing, left-associated:
/// for two factors `(i, j) ↦ i·|G₂| + j`.
pub fn direct_product(factors: &[&FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    let Some((first, rest)) = factors.split_first() else {
        return Err(GroupError::InvalidArgument("direct product of no factors".into()));
    };
    let mut acc = (*first).clone();
    for g in rest {
        let (n1, n2) = (acc.order(), g.order());
        let n = n1 * n2;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / n2, a % n2);
                let (b1, b2) = (b / n2, b % n2);
                table.push(acc.mul(a1, b1) * n2 + g.mul(a2, b2));
            }
        }
        acc = FiniteGroup::from_trusted_table(n, table);
    }
    Ok(acc)
}

/// Projection of `direct_product(factors)` onto factor `k`.
pub fn projection(factors: &[&FiniteGroup], k: usize) -> Mapping {
    let orders: Vec<usize> = factors.iter().map(|g| g.order()).collect();
    let total: usize = orders.iter().product();
    let stride: usize = orders[k + 1..].iter().product();
    Mapping {
        source_order: total,
        target_order: orders[k],
        image: (0..total).map(|x| (x / stride) % orders[k]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center, is_homomorphism, make_group};

    #[test]
    fn builders_satisfy_axioms() {
        for g in [
            cyclic(1).unwrap(),
            cyclic(6).unwrap(),
            dihedral(1).unwrap(),
            dihedral(4).unwrap(),
            dihedral(5).unwrap(),
            quaternion8(),
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
        ] {
            let again = make_group(&g.rows()).expect("builder output validates");
            assert_eq!(again, g);
        }
    }

    #[test]
    fn orders() {
        let c3 = cyclic(3).unwrap();
        let s3 = symmetric(3).unwrap();
        let c2 = cyclic(2).unwrap();
        assert_eq!(direct_product(&[&c3, &s3, &c2]).unwrap().order(), 36);
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert!(cyclic(0).is_err());
        assert!(matches!(symmetric(8), Err(GroupError::SizeCapExceeded { .. })));
    }

    #[test]
    fn quaternion_center_by_brute_force() {
        let q = quaternion8();
        let commuting: Vec<usize> = (0..8)
            .filter(|&a| (0..8).all(|b| q.mul(a, b) == q.mul(b, a)))
            .collect();
        assert_eq!(commuting, vec![0, 1]);
        assert_eq!(center(&q).members(), &[0, 1]);
        assert!(!q.is_abelian());
        assert_eq!(q.element_order(2), 4);
    }

    #[test]
    fn lexicographic_ranks() {
        for i in 0..24 {
            assert_eq!(symmetric_index(&symmetric_element(4, i)), i);
        }
        assert_eq!(symmetric_element(3, 1), vec![0, 2, 1]);
        let stab = symmetric_point_stabilizer(4, 3).unwrap();
        assert_eq!(stab.order(), 6);
    }

    #[test]
    fn projections_are_homomorphisms() {
        let c3 = cyclic(3).unwrap();
        let s3 = symmetric(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let factors = [&c3, &s3, &c2];
        let g = direct_product(&factors).unwrap();
        for k in 0..3 {
            let p = projection(&factors, k);
            assert!(is_homomorphism(&g, factors[k], &p));
            assert!(p.is_surjective());
        }
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral(4).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(d.element_order(r), 4);
        assert_eq!(d.element_order(s), 2);
        assert_eq!(d.mul(s, r), d.mul(d.inv(r), s));
        assert_eq!(center(&d).members(), &[0, 2]);
    }
}
