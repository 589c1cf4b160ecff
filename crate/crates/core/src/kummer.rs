//! The combinatorial Kummer model of the K3 lattice.
//!
//! Sixteen disjoint (-2)-curves `K_a` indexed by `(Z/2Z)^4`, six classes
//! `omega_{i,j}` spanning a `U(2)^3` block orthogonal to the curves, and
//! the glue classes `omega/2 + half-sum` that together generate an even
//! unimodular lattice of signature (3, 19).
//!
//! Coordinate conventions: ambient dimension 22; coordinates 0..16 are the
//! curves `K_a` ordered by the integer `a_1 + 2 a_2 + 4 a_3 + 8 a_4`, and
//! coordinates 16..22 are `omega_12, omega_34, omega_13, omega_24,
//! omega_14, omega_23`.

use crate::lattice::{self, Lattice, QuadraticSpace};
use crate::linalg::{rat, rint, ExactMatrix, Rat};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;
use std::sync::OnceLock;

/// Ambient dimension of the Kummer model.
pub const DIM: usize = 22;

/// The six index pairs of the omega classes, in coordinate order.
pub const OMEGA_PAIRS: [(u8, u8); 6] = [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)];

/// A 2-torsion index `a = (a_1, a_2, a_3, a_4)`, each coordinate 0 or 1.
/// Stored as the integer `a_1 + 2 a_2 + 4 a_3 + 8 a_4`, which is also the
/// ambient coordinate of the curve `K_a`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorsionIndex(u8);

impl TorsionIndex {
    pub const COUNT: usize = 16;

    pub fn new(a1: u8, a2: u8, a3: u8, a4: u8) -> Self {
        assert!(a1 < 2 && a2 < 2 && a3 < 2 && a4 < 2, "coordinates must be 0 or 1");
        Self(a1 | a2 << 1 | a3 << 2 | a4 << 3)
    }

    pub fn zero() -> Self {
        Self(0)
    }

    /// The standard generator `alpha_i`, `i` in `1..=4`.
    pub fn alpha(i: u8) -> Self {
        assert!((1..=4).contains(&i));
        Self(1 << (i - 1))
    }

    pub fn from_index(idx: usize) -> Self {
        assert!(idx < Self::COUNT);
        Self(idx as u8)
    }

    /// Ambient coordinate of the curve `K_a`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Coordinate `a_i`, `i` in `1..=4`.
    pub fn coord(self, i: u8) -> u8 {
        assert!((1..=4).contains(&i));
        (self.0 >> (i - 1)) & 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> impl Iterator<Item = TorsionIndex> {
        (0..Self::COUNT).map(TorsionIndex::from_index)
    }
}

impl std::ops::Add for TorsionIndex {
    type Output = TorsionIndex;
    fn add(self, rhs: TorsionIndex) -> TorsionIndex {
        TorsionIndex(self.0 ^ rhs.0)
    }
}

impl fmt::Display for TorsionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.coord(1), self.coord(2), self.coord(3), self.coord(4))
    }
}

/// An affine subspace of `(Z/2Z)^4`, stored as a 16-bit membership mask.
/// Closed under `x + y + z`; sizes are 1, 2, 4, 8 or 16.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct AffineSubspace(u16);

fn mask_is_affinely_closed(mask: u16) -> bool {
    if mask == 0 {
        return false;
    }
    let members: Vec<u8> = (0..16).filter(|&i| mask >> i & 1 == 1).collect();
    for &x in &members {
        for &y in &members {
            for &z in &members {
                if mask >> (x ^ y ^ z) & 1 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

impl AffineSubspace {
    /// All of `(Z/2Z)^4`.
    pub fn full() -> Self {
        Self(0xffff)
    }

    pub fn singleton(a: TorsionIndex) -> Self {
        Self(1 << a.index())
    }

    /// The linear hyperplane `W_i = {a : a_i = 0}`.
    pub fn w(i: u8) -> Self {
        Self::collect(|a| a.coord(i) == 0)
    }

    /// The linear hyperplane `W_{i,j} = {a : a_i + a_j = 0}`.
    pub fn w_pair(i: u8, j: u8) -> Self {
        assert!(i != j);
        Self::collect(|a| (a.coord(i) + a.coord(j)) % 2 == 0)
    }

    /// The 2-dimensional subspace `V_{i,j} = {0, alpha_i, alpha_j,
    /// alpha_i + alpha_j}`.
    pub fn v(i: u8, j: u8) -> Self {
        assert!(i != j);
        let a = TorsionIndex::alpha(i);
        let b = TorsionIndex::alpha(j);
        Self::from_elements([TorsionIndex::zero(), a, b, a + b]).expect("subspace is closed")
    }

    fn collect(pred: impl Fn(TorsionIndex) -> bool) -> Self {
        let mut mask = 0u16;
        for a in TorsionIndex::all() {
            if pred(a) {
                mask |= 1 << a.index();
            }
        }
        Self(mask)
    }

    /// Builds a subspace from explicit elements, rejecting sets that are
    /// not affinely closed.
    pub fn from_elements(elements: impl IntoIterator<Item = TorsionIndex>) -> Result<Self> {
        let mut mask = 0u16;
        for a in elements {
            mask |= 1 << a.index();
        }
        if !mask_is_affinely_closed(mask) {
            return Err(Error::NotAffinelyClosed);
        }
        Ok(Self(mask))
    }

    /// Translation by `a`; affine subspaces stay affine.
    pub fn translate(self, a: TorsionIndex) -> Self {
        let mut mask = 0u16;
        for x in self.elements() {
            mask |= 1 << (x + a).index();
        }
        Self(mask)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, a: TorsionIndex) -> bool {
        self.0 >> a.index() & 1 == 1
    }

    pub fn elements(self) -> impl Iterator<Item = TorsionIndex> {
        (0..TorsionIndex::COUNT)
            .filter(move |&i| self.0 >> i & 1 == 1)
            .map(TorsionIndex::from_index)
    }

    pub fn intersection(self, other: Self) -> usize {
        (self.0 & other.0).count_ones() as usize
    }
}

/// Ambient coordinate of `omega_{i,j}`; the pair must be one of
/// [`OMEGA_PAIRS`] in either order.
pub fn omega_coord(i: u8, j: u8) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let pos = OMEGA_PAIRS
        .iter()
        .position(|&(p, q)| (p, q) == (i, j))
        .expect("not an omega index pair");
    16 + pos
}

/// The 22-dimensional quadratic space of the model: curves of square -2,
/// pairwise orthogonal; omega pairs `(12,34), (13,24), (14,23)` pairing to
/// 2; everything else orthogonal.
pub fn space() -> Arc<QuadraticSpace> {
    static SPACE: OnceLock<Arc<QuadraticSpace>> = OnceLock::new();
    SPACE
        .get_or_init(|| {
            let mut g = ExactMatrix::zero(DIM, DIM);
            for i in 0..16 {
                g[(i, i)] = rint(-2);
            }
            for k in 0..3 {
                g[(16 + 2 * k, 16 + 2 * k + 1)] = rint(2);
                g[(16 + 2 * k + 1, 16 + 2 * k)] = rint(2);
            }
            QuadraticSpace::new(g).expect("gram is symmetric and integral")
        })
        .clone()
}

/// The ambient vector of the curve class `K_a`.
pub fn curve_vector(a: TorsionIndex) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); DIM];
    v[a.index()] = Rat::one();
    v
}

/// The ambient vector of `omega_{i,j}`.
pub fn omega_vector(i: u8, j: u8) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); DIM];
    v[omega_coord(i, j)] = Rat::one();
    v
}

/// The class `(1/2) * sum of K_a over a in W`.
pub fn half_sum(w: AffineSubspace) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); DIM];
    for a in w.elements() {
        v[a.index()] = rat(1, 2);
    }
    v
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

/// The sixteen generators of the Kummer lattice: the full half-sum, the
/// four hyperplane half-sums, and eleven single curves, in the standard
/// published order.
pub fn kummer_generators() -> ExactMatrix {
    let singles: [(u8, u8, u8, u8); 11] = [
        (0, 0, 0, 0),
        (0, 0, 1, 1),
        (0, 1, 0, 1),
        (1, 0, 0, 1),
        (0, 1, 1, 0),
        (1, 0, 1, 0),
        (1, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    ];
    let mut rows = vec![half_sum(AffineSubspace::full())];
    for i in 1..=4 {
        rows.push(half_sum(AffineSubspace::w(i)));
    }
    for (a1, a2, a3, a4) in singles {
        rows.push(curve_vector(TorsionIndex::new(a1, a2, a3, a4)));
    }
    ExactMatrix::from_rows(rows)
}

/// The rank-16 Kummer lattice, with the generator order as basis.
pub fn kummer_lattice() -> Lattice {
    Lattice::new(space(), kummer_generators()).expect("generators are independent")
}

/// Eight-dimensional ambient space of the Nikulin lattice, Gram `-2 I`.
pub fn nikulin_space() -> Arc<QuadraticSpace> {
    let g = ExactMatrix::identity(8).scale(&rint(-2));
    QuadraticSpace::new(g).expect("gram is symmetric and integral")
}

/// The nine generators of the Nikulin lattice: eight orthogonal
/// (-2)-vectors and their half-sum.
pub fn nikulin_generators() -> ExactMatrix {
    let mut rows: Vec<Vec<Rat>> = (0..8)
        .map(|i| {
            let mut v = vec![Rat::zero(); 8];
            v[i] = Rat::one();
            v
        })
        .collect();
    rows.push(vec![rat(1, 2); 8]);
    ExactMatrix::from_rows(rows)
}

/// The rank-8 Nikulin lattice.
pub fn nikulin_lattice() -> Lattice {
    Lattice::from_generators(nikulin_space(), &nikulin_generators())
}

/// The six glue classes `omega_{i,j}/2 + half_sum(V_{h,k})` pairing each
/// omega with the complementary index pair.
pub fn glue_classes() -> ExactMatrix {
    let pairing: [((u8, u8), (u8, u8)); 6] = [
        ((1, 2), (3, 4)),
        ((3, 4), (1, 2)),
        ((1, 3), (2, 4)),
        ((2, 4), (1, 3)),
        ((1, 4), (2, 3)),
        ((2, 3), (1, 4)),
    ];
    let half = rat(1, 2);
    let rows = pairing
        .into_iter()
        .map(|((i, j), (h, k))| {
            add_vec(&scale_vec(&omega_vector(i, j), &half), &half_sum(AffineSubspace::v(h, k)))
        })
        .collect();
    ExactMatrix::from_rows(rows)
}

/// The 22-generator model of the K3 lattice: Kummer generators plus glue
/// classes. Even, unimodular, signature (3, 19).
pub fn k3_kummer_model() -> Lattice {
    static BASIS: OnceLock<ExactMatrix> = OnceLock::new();
    let basis = BASIS.get_or_init(|| kummer_generators().vstack(&glue_classes())).clone();
    Lattice::new(space(), basis).expect("generators are independent")
}

/// Census of the discriminant group of the Kummer lattice: the zero class
/// and the counts of nonzero classes with `q = 0` and `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscCensus {
    pub zero: usize,
    pub q0: usize,
    pub q1: usize,
}

/// Enumerates every class of `K^dual / K` and tallies the quadratic form
/// values. Requires a 2-elementary even lattice (every generator of the
/// discriminant group of order 2, all `q` values integral).
pub fn disc_census(k: &Lattice) -> Result<DiscCensus> {
    let form = lattice::discriminant_form(k)?;
    if form.orders().iter().any(|d| *d != crate::linalg::Int::from(2)) {
        return Err(Error::CensusUnsupported);
    }
    let n = form.lifts().rows();
    let space = k.space();
    let mut census = DiscCensus { zero: 0, q0: 0, q1: 0 };
    for bits in 0u32..1 << n {
        let mut v = vec![Rat::zero(); space.dim()];
        for i in 0..n {
            if bits >> i & 1 == 1 {
                v = add_vec(&v, form.lifts().row(i));
            }
        }
        if bits == 0 {
            census.zero += 1;
            continue;
        }
        let q = lattice::mod_2z(&space.norm(&v));
        if q.is_zero() {
            census.q0 += 1;
        } else if q.is_one() {
            census.q1 += 1;
        } else {
            return Err(Error::CensusUnsupported);
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FGAbelianGroup;
    use crate::lattice::{
        discriminant_form, discriminant_group, index_of_sublattice, mod_z, properties, saturate,
        signature, standard_lattice, StandardKind,
    };
    use crate::linalg::Int;
    use std::collections::BTreeSet;

    #[test]
    fn subspace_shapes() {
        let w1 = AffineSubspace::w(1);
        assert_eq!(w1.len(), 8);
        assert!(w1.elements().all(|a| a.coord(1) == 0));

        let v12 = AffineSubspace::v(1, 2);
        let expect = [
            TorsionIndex::new(0, 0, 0, 0),
            TorsionIndex::new(1, 0, 0, 0),
            TorsionIndex::new(0, 1, 0, 0),
            TorsionIndex::new(1, 1, 0, 0),
        ];
        assert_eq!(v12.elements().collect::<Vec<_>>(), expect.to_vec());

        assert_eq!(AffineSubspace::w_pair(3, 4).len(), 8);

        let bad = AffineSubspace::from_elements([
            TorsionIndex::new(0, 0, 0, 0),
            TorsionIndex::new(1, 0, 0, 0),
            TorsionIndex::new(0, 1, 0, 0),
        ]);
        assert!(matches!(bad, Err(Error::NotAffinelyClosed)));

        let a = TorsionIndex::new(1, 0, 1, 0);
        let single = AffineSubspace::singleton(a);
        assert_eq!(single.len(), 1);
        assert!(single.contains(a));
        assert_eq!(half_sum(single), scale_vec(&curve_vector(a), &rat(1, 2)));

        // The complement of a hyperplane is an affine translate of it.
        let w1c = AffineSubspace::w(1).translate(TorsionIndex::alpha(1));
        assert_eq!(w1c.len(), 8);
        assert!(w1c.elements().all(|a| a.coord(1) == 1));
    }

    #[test]
    fn half_sum_pairings() {
        let sp = space();
        let k_hat = half_sum(AffineSubspace::full());
        assert_eq!(sp.norm(&k_hat), rint(-8));
        assert_eq!(sp.norm(&half_sum(AffineSubspace::w(1))), rint(-4));
        let a = half_sum(AffineSubspace::v(1, 2));
        let b = half_sum(AffineSubspace::v(3, 4));
        // Single common index (0,0,0,0) contributes -2/4.
        assert_eq!(sp.pair(&a, &b), rat(-1, 2));
    }

    #[test]
    fn kummer_lattice_shape() {
        let k = kummer_lattice();
        assert_eq!(k.rank(), 16);
        assert_eq!(signature(&k), (0, 16, 0));
        assert_eq!(discriminant_group(&k).unwrap(), FGAbelianGroup::cyclic(2).power(6));
        // All sixteen curves are members, none of their halves are.
        for a in TorsionIndex::all() {
            let v = curve_vector(a);
            assert!(k.contains(&v));
            assert!(!k.contains(&scale_vec(&v, &rat(1, 2))));
        }
    }

    #[test]
    fn curve_span_has_index_32_in_kummer() {
        let k = kummer_lattice();
        let curves = ExactMatrix::from_rows(TorsionIndex::all().map(curve_vector).collect());
        let span = Lattice::new(space(), curves).unwrap();
        assert_eq!(index_of_sublattice(&span, &k).unwrap(), Int::from(32));
    }

    #[test]
    fn nikulin_lattice_shape() {
        let n = nikulin_lattice();
        assert_eq!(n.rank(), 8);
        let p = properties(&n);
        assert!(p.even);
        assert_eq!(discriminant_group(&n).unwrap(), FGAbelianGroup::cyclic(2).power(6));
    }

    #[test]
    fn nikulin_matches_hyperplane_sublattice_of_kummer() {
        // Gram of (N_1..N_8, N-hat) equals the Gram of the curves over W_1
        // together with their half-sum.
        let nik = nikulin_generators();
        let nik_space = nikulin_space();
        let mut rows: Vec<Vec<Rat>> = AffineSubspace::w(1).elements().map(curve_vector).collect();
        rows.push(half_sum(AffineSubspace::w(1)));
        let kum = ExactMatrix::from_rows(rows);
        let sp = space();
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(
                    nik_space.pair(nik.row(i), nik.row(j)),
                    sp.pair(kum.row(i), kum.row(j))
                );
            }
        }
    }

    #[test]
    fn model_is_even_unimodular_signature_3_19() {
        let m = k3_kummer_model();
        assert_eq!(m.rank(), 22);
        let p = properties(&m);
        assert!(p.even);
        assert!(p.unimodular);
        assert_eq!(signature(&m), (3, 19, 0));
    }

    #[test]
    fn model_membership_of_glue_and_half_omegas() {
        let m = k3_kummer_model();
        let glue = add_vec(
            &scale_vec(&omega_vector(3, 4), &rat(1, 2)),
            &half_sum(AffineSubspace::v(1, 2)),
        );
        assert!(m.contains(&glue));
        assert!(!m.contains(&scale_vec(&omega_vector(1, 2), &rat(1, 2))));
    }

    #[test]
    fn model_contains_kummer_primitively() {
        let m = k3_kummer_model();
        let k = kummer_lattice();
        let sat = saturate(&k, &m).unwrap();
        assert!(sat.equals(&k));
    }

    #[test]
    fn census_counts() {
        let census = disc_census(&kummer_lattice()).unwrap();
        assert_eq!(census, DiscCensus { zero: 1, q0: 35, q1: 28 });
    }

    /// All 2-dimensional linear subspaces of (Z/2Z)^4.
    fn two_dimensional_subspaces() -> Vec<AffineSubspace> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for i in 1..16u8 {
            for j in (i + 1)..16u8 {
                let a = TorsionIndex::from_index(i as usize);
                let b = TorsionIndex::from_index(j as usize);
                let v = AffineSubspace::from_elements([TorsionIndex::zero(), a, b, a + b])
                    .expect("span is closed");
                if v.len() == 4 && seen.insert(v.elements().collect::<Vec<_>>()) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Coset signature of a dual vector modulo the Kummer lattice: its
    /// basis coordinates reduced into [0, 1).
    fn coset_signature(k: &Lattice, v: &[Rat]) -> Vec<Rat> {
        k.span_coords(v).expect("vector in the span").iter().map(mod_z).collect()
    }

    #[test]
    fn thirty_five_subspace_classes_have_q_zero() {
        let k = kummer_lattice();
        let sp = space();
        let subspaces = two_dimensional_subspaces();
        assert_eq!(subspaces.len(), 35);
        let mut signatures = BTreeSet::new();
        for v in subspaces {
            let class = half_sum(v);
            let sig = coset_signature(&k, &class);
            assert!(sig.iter().any(|x| !x.is_zero()), "class must be nonzero");
            assert!(lattice::mod_2z(&sp.norm(&class)).is_zero());
            signatures.insert(sig.iter().map(crate::linalg::format_rat).collect::<Vec<_>>());
        }
        assert_eq!(signatures.len(), 35);
    }

    #[test]
    fn six_v_classes_generate_the_discriminant_group() {
        let k = kummer_lattice();
        let gens: Vec<Vec<Rat>> = [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)]
            .into_iter()
            .map(|(i, j)| half_sum(AffineSubspace::v(i, j)))
            .collect();
        let mut signatures = BTreeSet::new();
        for bits in 0u32..64 {
            let mut v = vec![Rat::zero(); DIM];
            for (i, g) in gens.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    v = add_vec(&v, g);
                }
            }
            let sig = coset_signature(&k, &v);
            signatures.insert(sig.iter().map(crate::linalg::format_rat).collect::<Vec<_>>());
        }
        assert_eq!(signatures.len(), 64);
    }

    #[test]
    fn discriminant_form_matches_u2_cubed() {
        // Generator correspondence: V_12, V_13, V_14 against e_1, e_2, e_3
        // and V_34, V_24, V_23 against f_1, f_2, f_3.
        let k = kummer_lattice();
        assert_eq!(discriminant_form(&k).unwrap().group(), &FGAbelianGroup::cyclic(2).power(6));
        let u2cubed = standard_lattice(&StandardKind::Sum(vec![
            StandardKind::U(2),
            StandardKind::U(2),
            StandardKind::U(2),
        ]))
        .unwrap();
        assert_eq!(discriminant_group(&u2cubed).unwrap(), FGAbelianGroup::cyclic(2).power(6));

        let kummer_gens: Vec<Vec<Rat>> = [(1, 2), (1, 3), (1, 4), (3, 4), (2, 4), (2, 3)]
            .into_iter()
            .map(|(i, j)| half_sum(AffineSubspace::v(i, j)))
            .collect();
        // e_i/2 and f_i/2 in the U(2)^3 coordinates.
        let mut u_gens: Vec<Vec<Rat>> = Vec::new();
        for i in [0usize, 2, 4, 1, 3, 5] {
            let mut v = vec![Rat::zero(); 6];
            v[i] = rat(1, 2);
            u_gens.push(v);
        }
        let ksp = space();
        let usp = u2cubed.space();
        for i in 0..6 {
            assert_eq!(
                lattice::mod_2z(&ksp.norm(&kummer_gens[i])),
                lattice::mod_2z(&usp.norm(&u_gens[i]))
            );
            for j in 0..6 {
                assert_eq!(
                    mod_z(&ksp.pair(&kummer_gens[i], &kummer_gens[j])),
                    mod_z(&usp.pair(&u_gens[i], &u_gens[j]))
                );
            }
        }
    }

    #[test]
    fn census_rejects_non_two_elementary_lattices() {
        let l = standard_lattice(&StandardKind::Rank1(-8)).unwrap();
        assert!(matches!(disc_census(&l), Err(Error::CensusUnsupported)));
    }
}
