//! Finitely generated abelian groups in invariant-factor form.

use crate::linalg::{self, ExactMatrix, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`. Two groups compare equal
/// exactly when they are isomorphic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(&[order])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant
    /// factors; orders equal to 1 contribute nothing.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        Self::from_parts(0, orders.iter().map(|&n| Int::from(n)).collect())
    }

    /// Builds a group from a free rank and a list of torsion orders that
    /// need not satisfy the divisibility chain yet.
    pub fn from_parts(free_rank: usize, torsion: Vec<Int>) -> Self {
        let torsion: Vec<Int> = torsion.into_iter().map(|d| d.abs()).collect();
        assert!(torsion.iter().all(|d| !d.is_zero()), "torsion order must be nonzero");
        let nontrivial: Vec<Int> = torsion.into_iter().filter(|d| !d.is_one()).collect();
        if nontrivial.is_empty() {
            return Self { free_rank, torsion: Vec::new() };
        }
        // The Smith normal form of diag(d_1, ..., d_k) renormalizes any
        // cyclic decomposition into the invariant-factor chain.
        let n = nontrivial.len();
        let diag = ExactMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Rat::from_integer(nontrivial[r].clone())
            } else {
                Rat::zero()
            }
        });
        let factors = linalg::snf(&diag).invariant_factors();
        Self { free_rank, torsion: factors }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group; `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        Self::from_parts(self.free_rank + other.free_rank, torsion)
    }

    /// `n`-fold direct sum of `self`.
    pub fn power(&self, n: usize) -> Self {
        let mut acc = Self::trivial();
        for _ in 0..n {
            acc = acc.direct_sum(self);
        }
        acc
    }
}

impl fmt::Display for FGAbelianGroup {
    /// Renders as `0`, `Z`, `Z^2`, `Z/4`, `(Z/2)^3`, or sums such as
    /// `Z + (Z/2)^2 + Z/4`, with equal factors grouped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            let count = j - i;
            if count == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{count}"));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_coprime_factors() {
        // Z/2 x Z/3 = Z/6 and Z/4 x Z/6 = Z/2 x Z/12.
        assert_eq!(FGAbelianGroup::from_cyclic_orders(&[2, 3]), FGAbelianGroup::cyclic(6));
        assert_eq!(
            FGAbelianGroup::from_cyclic_orders(&[4, 6]),
            FGAbelianGroup::from_cyclic_orders(&[2, 12])
        );
        assert_eq!(
            FGAbelianGroup::from_cyclic_orders(&[2, 4]).torsion(),
            &[Int::from(2), Int::from(4)]
        );
    }

    #[test]
    fn order_and_triviality() {
        assert!(FGAbelianGroup::from_cyclic_orders(&[1, 1]).is_trivial());
        assert_eq!(FGAbelianGroup::from_cyclic_orders(&[2, 2]).order(), Some(Int::from(4)));
        assert_eq!(FGAbelianGroup::free(2).order(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FGAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(FGAbelianGroup::cyclic(2).power(3).to_string(), "(Z/2)^3");
        assert_eq!(
            FGAbelianGroup::free(1).direct_sum(&FGAbelianGroup::from_cyclic_orders(&[2, 4])).to_string(),
            "Z + Z/2 + Z/4"
        );
    }
}
