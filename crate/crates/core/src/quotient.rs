//! Translation subgroups of `(Z/2Z)^4` acting on the Kummer model.
//!
//! A coordinate subgroup `G` (spanned by standard generators `alpha_i` for
//! `i` in a subset `S` of `{1,2,3,4}`) permutes the sixteen curve classes
//! by `K_a -> K_{a+g}` and fixes every omega class. This module computes
//! the invariant lattice of the action, the branch-curve lattice `M_G` and
//! its orthogonal complement `P_G`, the image of the dual of `P_G` under
//! the pullback map `theta` (which multiplies pairings by `|G|`), and the
//! index of that image inside the invariant lattice.

use crate::abelian::FGAbelianGroup;
use crate::kummer::{
    self, add_vec, curve_vector, half_sum, k3_kummer_model, omega_coord, omega_vector, scale_vec,
    AffineSubspace, TorsionIndex, DIM, OMEGA_PAIRS,
};
use crate::lattice::{self, Lattice};
use crate::linalg::{self, rat, rint, ExactMatrix, Int, Rat};
use crate::{Error, Result};
use num_traits::Zero;

/// A subgroup of `(Z/2Z)^4` spanned by standard generators `alpha_i`,
/// `i` in a nonempty subset of `{1,2,3,4}` (the coordinates doubled by
/// the corresponding quotient of the torus).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranslationSubgroup {
    coords: Vec<u8>,
}

impl TranslationSubgroup {
    pub fn new(coords: &[u8]) -> Result<Self> {
        let mut sorted: Vec<u8> = coords.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(Error::BadSubgroup("empty coordinate set".into()));
        }
        if let Some(&bad) = sorted.iter().find(|&&i| !(1..=4).contains(&i)) {
            return Err(Error::BadSubgroup(format!("coordinate {bad} is outside 1..=4")));
        }
        Ok(Self { coords: sorted })
    }

    /// Parses a comma-separated coordinate list such as `"1,2,4"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords: std::result::Result<Vec<u8>, _> =
            text.split(',').map(|t| t.trim().parse::<u8>()).collect();
        match coords {
            Ok(c) => Self::new(&c),
            Err(_) => Err(Error::BadSubgroup(format!("cannot parse {text:?}"))),
        }
    }

    /// The doubled coordinates, sorted.
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    /// Number of independent generators, `|S|`.
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn order(&self) -> usize {
        1 << self.coords.len()
    }

    pub fn generators(&self) -> Vec<TorsionIndex> {
        self.coords.iter().map(|&i| TorsionIndex::alpha(i)).collect()
    }

    /// All `2^|S|` elements of the subgroup.
    pub fn elements(&self) -> Vec<TorsionIndex> {
        let mut out = Vec::with_capacity(self.order());
        for bits in 0..self.order() {
            let mut g = TorsionIndex::zero();
            for (pos, &i) in self.coords.iter().enumerate() {
                if bits >> pos & 1 == 1 {
                    g = g + TorsionIndex::alpha(i);
                }
            }
            out.push(g);
        }
        out
    }

    pub fn contains(&self, g: TorsionIndex) -> bool {
        (1..=4).all(|i| g.coord(i) == 0 || self.coords.contains(&i))
    }

    /// True when the restriction of `a` to the subgroup coordinates is
    /// zero, i.e. `a` survives to the quotient side unchanged.
    pub fn restriction_is_zero(&self, a: TorsionIndex) -> bool {
        self.coords.iter().all(|&i| a.coord(i) == 0)
    }

    /// Display tag such as `(Z/2)^2`.
    pub fn group_name(&self) -> String {
        match self.rank() {
            1 => "Z/2".to_string(),
            k => format!("(Z/2)^{k}"),
        }
    }
}

/// The action of a group element in the basis of the 22-generator model:
/// an integral, Gram-preserving involution.
#[derive(Clone, Debug)]
pub struct ActionMatrix {
    matrix: ExactMatrix,
}

impl ActionMatrix {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
}

/// Ambient permutation induced by translation by `g`: `K_a -> K_{a+g}`,
/// identity on the omega block.
fn translation_permutation(g: TorsionIndex) -> ExactMatrix {
    let mut t = ExactMatrix::zero(DIM, DIM);
    for a in TorsionIndex::all() {
        t[(a.index(), (a + g).index())] = rint(1);
    }
    for c in 16..DIM {
        t[(c, c)] = rint(1);
    }
    t
}

fn model_basis_inverse() -> ExactMatrix {
    static INV: std::sync::OnceLock<ExactMatrix> = std::sync::OnceLock::new();
    INV.get_or_init(|| k3_kummer_model().basis().inverse().expect("model basis is invertible"))
        .clone()
}

/// Action of `g` conjugated into the model basis. Fails with
/// [`Error::ActionNotIntegral`] if the conjugated matrix is not integral,
/// which would mean the permutation does not preserve the model.
pub fn action_matrix(group: &TranslationSubgroup, g: TorsionIndex) -> Result<ActionMatrix> {
    if !group.contains(g) {
        return Err(Error::OutsideSubgroup);
    }
    let model = k3_kummer_model();
    let b = model.basis();
    let b_inv = model_basis_inverse();
    let m = b.mul(&translation_permutation(g)).mul(&b_inv);
    if !m.is_integer() {
        return Err(Error::ActionNotIntegral);
    }
    let gram = model.gram();
    assert_eq!(m.mul(&gram).mul(&m.transpose()), gram, "action must preserve the pairing");
    assert_eq!(m.mul(&m), ExactMatrix::identity(DIM), "translations are involutions");
    Ok(ActionMatrix { matrix: m })
}

/// The invariant lattice of the action, as a primitive sublattice of the
/// model, with its coordinate matrix in Hermite normal form.
pub fn fixed_lattice(group: &TranslationSubgroup) -> Lattice {
    let model = k3_kummer_model();
    let identity = ExactMatrix::identity(DIM);
    let mut stacked: Option<ExactMatrix> = None;
    for g in group.generators() {
        let m = action_matrix(group, g).expect("generator action is integral");
        let diff = m.matrix().sub(&identity);
        stacked = Some(match stacked {
            None => diff,
            Some(s) => s.hstack(&diff),
        });
    }
    let stacked = stacked.expect("subgroup has at least one generator");
    // x * (M - I) = 0 for all generators; the kernel basis is saturated.
    let coords = linalg::integer_kernel(&stacked.transpose());
    let basis = coords.mul(model.basis());
    Lattice::new(kummer::space(), basis).expect("kernel rows are independent")
}

/// Curve indices in the branch locus of the quotient: those whose
/// restriction to the subgroup coordinates is nonzero.
pub fn branch_curves(group: &TranslationSubgroup) -> Vec<TorsionIndex> {
    TorsionIndex::all().filter(|&a| !group.restriction_is_zero(a)).collect()
}

/// The minimal primitive sublattice `M_G` of the model containing the
/// branch curves, together with the quotient of `M_G` by the plain span
/// of the curves.
pub fn m_lattice(group: &TranslationSubgroup) -> (Lattice, FGAbelianGroup) {
    let model = k3_kummer_model();
    let rows: Vec<Vec<Rat>> = branch_curves(group).into_iter().map(curve_vector).collect();
    let span = Lattice::new(kummer::space(), ExactMatrix::from_rows(rows))
        .expect("distinct curves are independent");
    let m = lattice::saturate(&span, &model).expect("curves lie in the model span");
    let quotient = lattice::quotient_group(&span, &m).expect("span is contained in M");
    (m, quotient)
}

/// Orthogonal complement `P_G` of `M_G` in the model.
pub fn p_lattice(group: &TranslationSubgroup) -> Lattice {
    let (m, _) = m_lattice(group);
    lattice::orthogonal_complement(&m, &k3_kummer_model()).expect("same space")
}

/// The dual of `P_G` inside its rational span.
pub fn p_dual(group: &TranslationSubgroup) -> Lattice {
    lattice::dual(&p_lattice(group)).expect("P is nondegenerate")
}

/// The pullback map along the degree-`|G|` quotient: defined on the span
/// of the surviving curves `K_b` (restriction of `b` to the subgroup
/// coordinates zero) and the omega classes, by
/// `K_b -> sum of K_{b+g} over g in G` and
/// `omega_{i,j} -> 2^|{i,j} meet S| * omega_{i,j}`.
pub struct ThetaMap {
    group: TranslationSubgroup,
}

impl ThetaMap {
    pub fn new(group: &TranslationSubgroup) -> Self {
        Self { group: group.clone() }
    }

    /// Membership of an ambient vector in the source span of the map.
    pub fn in_source_span(&self, v: &[Rat]) -> bool {
        TorsionIndex::all().all(|a| v[a.index()].is_zero() || self.group.restriction_is_zero(a))
    }

    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if !self.in_source_span(v) {
            return Err(Error::ThetaUndefined);
        }
        let mut out = vec![Rat::zero(); DIM];
        for b in TorsionIndex::all() {
            let coeff = &v[b.index()];
            if coeff.is_zero() {
                continue;
            }
            for g in self.group.elements() {
                let t = coeff.clone();
                out[(b + g).index()] += t;
            }
        }
        for (i, j) in OMEGA_PAIRS {
            let c = omega_coord(i, j);
            if v[c].is_zero() {
                continue;
            }
            let hits = self.group.coords().iter().filter(|&&s| s == i || s == j).count() as u32;
            out[c] = &v[c] * rint(1 << hits);
        }
        Ok(out)
    }
}

/// The lattice `theta(P_G^dual)` inside the Kummer ambient space.
pub fn theta_image(group: &TranslationSubgroup) -> Result<Lattice> {
    let theta = ThetaMap::new(group);
    let pd = p_dual(group);
    let mut rows = Vec::with_capacity(pd.rank());
    for r in pd.basis().row_iter() {
        rows.push(theta.apply(r)?);
    }
    Ok(Lattice::from_generators(kummer::space(), &ExactMatrix::from_rows(rows)))
}

/// The index of `theta(P_G^dual)` inside the invariant lattice; membership
/// of every basis vector is verified before the index is taken.
pub fn surjectivity_defect(group: &TranslationSubgroup) -> Result<Int> {
    let image = theta_image(group)?;
    let fixed = fixed_lattice(group);
    lattice::index_of_sublattice(&image, &fixed)
}

/// Generator lists and block Gram matrices for the four tabulated
/// coordinate subgroups `S = {1}, {1,2}, {1,2,3}, {1,2,3,4}`, in their
/// published order. Everything returns `None` for other subgroups.
pub mod tables {
    use super::*;

    fn curve(a1: u8, a2: u8, a3: u8, a4: u8) -> Vec<Rat> {
        curve_vector(TorsionIndex::new(a1, a2, a3, a4))
    }

    fn half_omega_plus_v(oi: u8, oj: u8, vi: u8, vj: u8) -> Vec<Rat> {
        add_vec(&scale_vec(&omega_vector(oi, oj), &rat(1, 2)), &half_sum(AffineSubspace::v(vi, vj)))
    }

    fn all_omegas() -> Vec<Vec<Rat>> {
        OMEGA_PAIRS.iter().map(|&(i, j)| omega_vector(i, j)).collect()
    }

    /// Published generators of the invariant lattice.
    pub fn fixed_generators(group: &TranslationSubgroup) -> Option<ExactMatrix> {
        let rows: Vec<Vec<Rat>> = match group.coords() {
            [1] => {
                let mut rows = all_omegas();
                for i in [2, 3, 4] {
                    rows.push(half_sum(AffineSubspace::w(i)));
                }
                rows.push(half_sum(AffineSubspace::full()));
                for (a, b) in [
                    ((0, 0, 1, 1), (1, 0, 1, 1)),
                    ((0, 1, 0, 1), (1, 1, 0, 1)),
                    ((0, 1, 1, 0), (1, 1, 1, 0)),
                    ((0, 1, 1, 1), (1, 1, 1, 1)),
                ] {
                    rows.push(add_vec(&curve(a.0, a.1, a.2, a.3), &curve(b.0, b.1, b.2, b.3)));
                }
                rows
            }
            [1, 2] => {
                let mut rows: Vec<Vec<Rat>> = [(1, 2), (1, 3), (2, 4), (1, 4), (2, 3)]
                    .into_iter()
                    .map(|(i, j)| omega_vector(i, j))
                    .collect();
                rows.push(half_omega_plus_v(3, 4, 1, 2));
                rows.push(half_sum(AffineSubspace::w(3)));
                rows.push(half_sum(AffineSubspace::w(4)));
                rows.push(half_sum(AffineSubspace::w_pair(3, 4)));
                rows.push(scale_vec(&half_sum(AffineSubspace::v(1, 2)), &rint(2)));
                rows
            }
            [1, 2, 3] => {
                let mut rows = all_omegas();
                rows.push(half_sum(AffineSubspace::w(4)));
                rows.push(half_sum(AffineSubspace::w(4).translate(TorsionIndex::alpha(4))));
                rows
            }
            [1, 2, 3, 4] => {
                let mut rows = vec![half_sum(AffineSubspace::full())];
                rows.extend(all_omegas());
                rows
            }
            _ => return None,
        };
        Some(ExactMatrix::from_rows(rows))
    }

    /// Published generators of the theta-image.
    pub fn theta_generators(group: &TranslationSubgroup) -> Option<ExactMatrix> {
        let rows: Vec<Vec<Rat>> = match group.coords() {
            // For a single involution the image equals the invariant
            // lattice, generator for generator.
            [1] => return fixed_generators(group),
            [1, 2] => {
                let mut rows = vec![scale_vec(&omega_vector(1, 2), &rint(2))];
                for (i, j) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
                    rows.push(omega_vector(i, j));
                }
                rows.push(half_omega_plus_v(3, 4, 1, 2));
                rows.push(half_sum(AffineSubspace::w(3)));
                rows.push(half_sum(AffineSubspace::w(4)));
                rows.push(half_sum(AffineSubspace::w_pair(3, 4)));
                rows.push(scale_vec(&half_sum(AffineSubspace::v(1, 2)), &rint(2)));
                rows
            }
            [1, 2, 3] => {
                let two = rint(2);
                vec![
                    scale_vec(&omega_vector(1, 2), &two),
                    omega_vector(3, 4),
                    scale_vec(&omega_vector(1, 3), &two),
                    omega_vector(2, 4),
                    omega_vector(1, 4),
                    scale_vec(&omega_vector(2, 3), &two),
                    half_sum(AffineSubspace::w(4)),
                    half_sum(AffineSubspace::w(4).translate(TorsionIndex::alpha(4))),
                ]
            }
            [1, 2, 3, 4] => {
                let mut rows = vec![half_sum(AffineSubspace::full())];
                for (i, j) in OMEGA_PAIRS {
                    rows.push(scale_vec(&omega_vector(i, j), &rint(2)));
                }
                rows
            }
            _ => return None,
        };
        Some(ExactMatrix::from_rows(rows))
    }

    /// Published generators of the complement `P_G`.
    pub fn p_generators(group: &TranslationSubgroup) -> Option<ExactMatrix> {
        let rows: Vec<Vec<Rat>> = match group.coords() {
            [1] => {
                let mut rows = vec![
                    half_omega_plus_v(1, 2, 3, 4),
                    omega_vector(3, 4),
                    half_omega_plus_v(1, 3, 2, 4),
                    omega_vector(2, 4),
                    half_omega_plus_v(1, 4, 2, 3),
                    omega_vector(2, 3),
                    half_sum(AffineSubspace::w(1)),
                ];
                for (a1, a2, a3, a4) in [
                    (0, 0, 0, 1),
                    (0, 0, 1, 0),
                    (0, 1, 0, 0),
                    (0, 0, 1, 1),
                    (0, 1, 0, 1),
                    (0, 1, 1, 0),
                    (0, 1, 1, 1),
                ] {
                    rows.push(curve(a1, a2, a3, a4));
                }
                rows
            }
            [1, 2] => {
                let mut rows = vec![half_omega_plus_v(1, 2, 3, 4)];
                for (i, j) in [(3, 4), (1, 3), (2, 4), (1, 4), (2, 3)] {
                    rows.push(omega_vector(i, j));
                }
                for (a1, a2, a3, a4) in [(0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 1, 1)] {
                    rows.push(curve(a1, a2, a3, a4));
                }
                rows
            }
            [1, 2, 3] => {
                let mut rows = all_omegas();
                rows.push(curve(0, 0, 0, 0));
                rows.push(curve(0, 0, 0, 1));
                rows
            }
            [1, 2, 3, 4] => {
                let mut rows = vec![curve(0, 0, 0, 0)];
                rows.extend(all_omegas());
                rows
            }
            _ => return None,
        };
        Some(ExactMatrix::from_rows(rows))
    }

    fn u_block(n: i64) -> ExactMatrix {
        ExactMatrix::from_int_rows(&[&[0, n], &[n, 0]])
    }

    fn rank1_block(m: i64) -> ExactMatrix {
        ExactMatrix::from_int_rows(&[&[m]])
    }

    /// Published block Gram of the invariant lattice, where one is stated:
    /// `<-8> + U(2)^3` for the full group and `U(2)^3 + <-4>^2` for the
    /// rank-three subgroup.
    pub fn fixed_block_gram(group: &TranslationSubgroup) -> Option<ExactMatrix> {
        match group.coords() {
            [1, 2, 3] => Some(lattice::block_diagonal(&[
                u_block(2),
                u_block(2),
                u_block(2),
                rank1_block(-4),
                rank1_block(-4),
            ])),
            [1, 2, 3, 4] => Some(lattice::block_diagonal(&[
                rank1_block(-8),
                u_block(2),
                u_block(2),
                u_block(2),
            ])),
            _ => None,
        }
    }

    /// Published block Gram of the theta-image: `<-8> + U(8)^3` for the
    /// full group and `U(4)^3 + <-4>^2` for the rank-three subgroup.
    pub fn theta_block_gram(group: &TranslationSubgroup) -> Option<ExactMatrix> {
        match group.coords() {
            [1, 2, 3] => Some(lattice::block_diagonal(&[
                u_block(4),
                u_block(4),
                u_block(4),
                rank1_block(-4),
                rank1_block(-4),
            ])),
            [1, 2, 3, 4] => Some(lattice::block_diagonal(&[
                rank1_block(-8),
                u_block(8),
                u_block(8),
                u_block(8),
            ])),
            _ => None,
        }
    }

    /// Published block Gram of the complement `P_G` for the full group:
    /// `<-2> + U(2)^3`.
    pub fn p_block_gram(group: &TranslationSubgroup) -> Option<ExactMatrix> {
        match group.coords() {
            [1, 2, 3, 4] => Some(lattice::block_diagonal(&[
                rank1_block(-2),
                u_block(2),
                u_block(2),
                u_block(2),
            ])),
            _ => None,
        }
    }

    /// Published index of the theta-image inside the invariant lattice.
    pub fn defect(group: &TranslationSubgroup) -> Int {
        match group.rank() {
            1 => Int::from(1),
            2 => Int::from(2),
            3 => Int::from(8),
            _ => Int::from(64),
        }
    }
}
