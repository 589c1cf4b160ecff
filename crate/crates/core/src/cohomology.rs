//! Integral cohomology of finite abelian groups.
//!
//! Built from two ingredients: the closed form for cyclic groups
//! (`Z` in degree 0, nothing in odd degrees, `Z/m` in positive even
//! degrees) and the Kunneth formula for a product, whose degree-`n` part
//! is the sum of the tensor terms in degree `n` and the Tor terms in
//! degree `n + 1`. The table of `V_G` values for the groups that act
//! symplectically on a K3 surface is also provided, with the computed
//! value reported next to the tabulated one.

use crate::abelian::FGAbelianGroup;
use crate::linalg::Int;
use crate::{Error, Result};
use num_integer::Integer as _;

/// `H^n(Z/m, Z)`: `Z` for `n = 0`, zero in odd degrees, `Z/m` in
/// positive even degrees.
pub fn cyclic_cohomology(m: u64, n: usize) -> FGAbelianGroup {
    if n == 0 {
        FGAbelianGroup::free(1)
    } else if n % 2 == 1 {
        FGAbelianGroup::trivial()
    } else {
        FGAbelianGroup::cyclic(m)
    }
}

/// Tensor product of finitely generated abelian groups:
/// `Z tensor A = A` and `Z/n tensor Z/m = Z/gcd(n, m)`, extended
/// bilinearly over the cyclic decompositions.
pub fn tensor_fg(a: &FGAbelianGroup, b: &FGAbelianGroup) -> FGAbelianGroup {
    let mut torsion: Vec<Int> = Vec::new();
    // Free x free contributes free rank; free x torsion keeps torsion.
    let free_rank = a.free_rank() * b.free_rank();
    for d in a.torsion() {
        for _ in 0..b.free_rank() {
            torsion.push(d.clone());
        }
    }
    for e in b.torsion() {
        for _ in 0..a.free_rank() {
            torsion.push(e.clone());
        }
    }
    for d in a.torsion() {
        for e in b.torsion() {
            torsion.push(d.gcd(e));
        }
    }
    FGAbelianGroup::from_parts(free_rank, torsion)
}

/// Torsion product: `Tor(Z, A) = 0` and `Tor(Z/n, Z/m) = Z/gcd(n, m)`.
pub fn tor_fg(a: &FGAbelianGroup, b: &FGAbelianGroup) -> FGAbelianGroup {
    let mut torsion: Vec<Int> = Vec::new();
    for d in a.torsion() {
        for e in b.torsion() {
            torsion.push(d.gcd(e));
        }
    }
    FGAbelianGroup::from_parts(0, torsion)
}

/// Cohomology of a finite abelian group in all degrees up to a bound.
#[derive(Clone, Debug)]
pub struct GradedCohomology {
    orders: Vec<u64>,
    groups: Vec<FGAbelianGroup>,
}

impl GradedCohomology {
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn degree(&self, n: usize) -> &FGAbelianGroup {
        &self.groups[n]
    }

    pub fn max_degree(&self) -> usize {
        self.groups.len() - 1
    }
}

fn kunneth_step(left: &[FGAbelianGroup], m: u64, out_len: usize) -> Vec<FGAbelianGroup> {
    let mut out = Vec::with_capacity(out_len);
    for n in 0..out_len {
        let mut acc = FGAbelianGroup::trivial();
        for p in 0..=n {
            acc = acc.direct_sum(&tensor_fg(&left[p], &cyclic_cohomology(m, n - p)));
        }
        for p in 0..=n + 1 {
            acc = acc.direct_sum(&tor_fg(&left[p], &cyclic_cohomology(m, n + 1 - p)));
        }
        out.push(acc);
    }
    out
}

/// Cohomology `H^0 .. H^max_degree` of the product of cyclic groups of
/// the given orders. Orders must be positive; order 1 factors are
/// allowed and contribute nothing.
pub fn graded_cohomology(orders: &[u64], max_degree: usize) -> Result<GradedCohomology> {
    if orders.contains(&0) {
        return Err(Error::ZeroOrder);
    }
    // Each Kunneth fold consumes one internal degree via the Tor shift.
    let mut len = max_degree + orders.len() + 2;
    let mut groups: Vec<FGAbelianGroup> = (0..len)
        .map(|n| if n == 0 { FGAbelianGroup::free(1) } else { FGAbelianGroup::trivial() })
        .collect();
    for &m in orders {
        len -= 1;
        groups = kunneth_step(&groups, m, len);
    }
    groups.truncate(max_degree + 1);
    Ok(GradedCohomology { orders: orders.to_vec(), groups })
}

/// `H^n(G, Z)` for the product of cyclic groups of the given orders.
pub fn cohomology(orders: &[u64], degree: usize) -> Result<FGAbelianGroup> {
    Ok(graded_cohomology(orders, degree)?.degree(degree).clone())
}

/// One row of the `V_G` comparison: the tabulated value for the group,
/// the degree-3 cohomology computed from the Kunneth formula, and
/// whether they agree. Agreement is reported, never forced.
#[derive(Clone, Debug)]
pub struct VTableRow {
    pub group: FGAbelianGroup,
    pub tabulated: FGAbelianGroup,
    pub computed: FGAbelianGroup,
    pub agrees: bool,
}

/// Looks up the tabulated `V_G` for one of the eight listed group shapes
/// and computes `H^3(G, Z)` alongside it. Input in any cyclic-factor
/// order; unlisted shapes are an error.
pub fn v_table(orders: &[u64]) -> Result<VTableRow> {
    let group = FGAbelianGroup::from_cyclic_orders(orders);
    if group.free_rank() != 0 {
        return Err(Error::UntabulatedGroup(group.to_string()));
    }
    let factors: Vec<u64> = group
        .torsion()
        .iter()
        .map(|d| u64::try_from(d).expect("tabulated orders are small"))
        .collect();
    let tabulated = match factors.as_slice() {
        // Any cyclic group, including the trivial one.
        [] | [_] => FGAbelianGroup::trivial(),
        [2, 2] => FGAbelianGroup::cyclic(2),
        [2, 2, 2] => FGAbelianGroup::cyclic(2).power(3),
        [2, 2, 2, 2] => FGAbelianGroup::cyclic(2).power(6),
        [3, 3] => FGAbelianGroup::cyclic(3),
        [2, 4] => FGAbelianGroup::cyclic(4),
        [4, 4] => FGAbelianGroup::cyclic(4),
        [2, 6] => FGAbelianGroup::cyclic(6),
        _ => return Err(Error::UntabulatedGroup(group.to_string())),
    };
    let computed = cohomology(orders, 3)?;
    let agrees = tabulated == computed;
    Ok(VTableRow { group, tabulated, computed, agrees })
}

/// The eight tabulated group shapes, as cyclic-order lists (with `Z/n`
/// represented by a single generic witness per `n` up to 8).
pub fn tabulated_shapes() -> Vec<Vec<u64>> {
    let mut shapes: Vec<Vec<u64>> = (2..=8).map(|n| vec![n]).collect();
    shapes.push(vec![2, 2]);
    shapes.push(vec![2, 2, 2]);
    shapes.push(vec![2, 2, 2, 2]);
    shapes.push(vec![3, 3]);
    shapes.push(vec![2, 4]);
    shapes.push(vec![4, 4]);
    shapes.push(vec![2, 6]);
    shapes
}

/// All abelian groups of order `n`, as lists of prime-power cyclic
/// factors.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn partitions(k: u32) -> Vec<Vec<u32>> {
        fn rec(k: u32, max: u32) -> Vec<Vec<u32>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=k.min(max)).rev() {
                for mut rest in rec(k - first, first) {
                    let mut p = vec![first];
                    p.append(&mut rest);
                    out.push(p);
                }
            }
            out
        }
        rec(k, k)
    }

    let mut factorization: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factorization.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        factorization.push((rest, 1));
    }

    let mut groups: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factorization {
        let mut next = Vec::new();
        for part in partitions(e) {
            for g in &groups {
                let mut h = g.clone();
                for k in &part {
                    h.push(p.pow(*k));
                }
                next.push(h);
            }
        }
        groups = next;
    }
    groups
}
