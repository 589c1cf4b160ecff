//! Lattices inside a fixed ambient quadratic space.
//!
//! A [`QuadraticSpace`] is a dimension together with a symmetric integer
//! Gram matrix; a [`Lattice`] is a full-row-rank rational basis inside such
//! a space. All the usual vocabulary lives here: duals, orthogonal
//! complements, saturation, discriminant groups and forms, signatures and
//! sublattice indices.

use crate::abelian::FGAbelianGroup;
use crate::linalg::{self, ExactMatrix, Int, Rat};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Ambient quadratic space: `dim` coordinates with a symmetric integer
/// Gram matrix defining the pairing of coordinate vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticSpace {
    dim: usize,
    gram: ExactMatrix,
}

impl QuadraticSpace {
    pub fn new(gram: ExactMatrix) -> Result<Arc<Self>> {
        if !gram.is_square() || !gram.is_symmetric() || !gram.is_integer() {
            return Err(Error::BadGram);
        }
        Ok(Arc::new(Self { dim: gram.rows(), gram }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    /// Pairing `<v, w>` of two coordinate row vectors.
    pub fn pair(&self, v: &[Rat], w: &[Rat]) -> Rat {
        assert!(v.len() == self.dim && w.len() == self.dim, "vector outside the space");
        let mut acc = Rat::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                acc += vi * &self.gram[(i, j)] * wj;
            }
        }
        acc
    }

    pub fn norm(&self, v: &[Rat]) -> Rat {
        self.pair(v, v)
    }
}

/// Lattice given by a rational basis, rows linearly independent, inside a
/// fixed quadratic space.
#[derive(Clone, Debug)]
pub struct Lattice {
    space: Arc<QuadraticSpace>,
    basis: ExactMatrix,
}

impl Lattice {
    /// Wraps a basis whose rows are checked for linear independence.
    pub fn new(space: Arc<QuadraticSpace>, basis: ExactMatrix) -> Result<Self> {
        assert_eq!(basis.cols(), space.dim(), "basis does not live in the space");
        if basis.rank() != basis.rows() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { space, basis })
    }

    /// Lattice generated by arbitrary (possibly dependent, possibly
    /// rational) generator rows: scales to an integer matrix, reduces to
    /// Hermite normal form, drops zero rows and scales back.
    pub fn from_generators(space: Arc<QuadraticSpace>, generators: &ExactMatrix) -> Self {
        assert_eq!(generators.cols(), space.dim(), "generators do not live in the space");
        let d = generators.denominator_lcm();
        let scaled = generators.scale(&Rat::from_integer(d.clone()));
        let (h, _) = linalg::hnf(&scaled);
        let rank = (0..h.rows()).take_while(|&r| h.row(r).iter().any(|x| !x.is_zero())).count();
        let basis = h.take_rows(rank).scale(&Rat::new(Int::one(), d));
        Self { space, basis }
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Gram matrix of the basis: `B * G * B^T`.
    pub fn gram(&self) -> ExactMatrix {
        self.basis.mul(self.space.gram()).mul(&self.basis.transpose())
    }

    pub fn same_space(&self, other: &Lattice) -> bool {
        self.space == other.space
    }

    /// Coordinates of `v` in this basis, integer or rational; `None` when
    /// `v` is outside the rational span.
    pub fn span_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        linalg::solve_rational(&self.basis, v)
    }

    /// Membership of an ambient vector in the lattice.
    pub fn contains(&self, v: &[Rat]) -> bool {
        match self.span_coords(v) {
            Some(x) => x.iter().all(|c| c.denom().is_one()),
            None => false,
        }
    }

    /// Equality as subgroups of the ambient space: mutual membership of
    /// the two bases.
    pub fn equals(&self, other: &Lattice) -> bool {
        self.same_space(other)
            && self.rank() == other.rank()
            && other.basis.row_iter().all(|r| self.contains(r))
            && self.basis.row_iter().all(|r| other.contains(r))
    }
}

/// Standard lattices and their direct sums.
#[derive(Clone, Debug)]
pub enum StandardKind {
    /// Hyperbolic plane scaled by `n`: Gram `[[0, n], [n, 0]]`.
    U(i64),
    /// Rank-one lattice `<m>`.
    Rank1(i64),
    /// `E8` with the pairing negated.
    E8Neg,
    /// `U^3 + E8(-1)^2`, the abstract K3 lattice.
    LambdaK3,
    Sum(Vec<StandardKind>),
}

/// Cartan matrix of `E8`, Bourbaki numbering: the chain 1-3-4-5-6-7-8
/// with node 2 attached to node 4.
fn e8_cartan() -> ExactMatrix {
    let adj: [(usize, usize); 7] = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut g = ExactMatrix::zero(8, 8);
    for i in 0..8 {
        g[(i, i)] = linalg::rint(2);
    }
    for (i, j) in adj {
        g[(i, j)] = linalg::rint(-1);
        g[(j, i)] = linalg::rint(-1);
    }
    g
}

fn standard_gram(kind: &StandardKind) -> Result<ExactMatrix> {
    match kind {
        StandardKind::U(n) => {
            if *n == 0 {
                return Err(Error::ZeroScale);
            }
            let mut g = ExactMatrix::zero(2, 2);
            g[(0, 1)] = linalg::rint(*n);
            g[(1, 0)] = linalg::rint(*n);
            Ok(g)
        }
        StandardKind::Rank1(m) => {
            if *m == 0 {
                return Err(Error::ZeroScale);
            }
            let mut g = ExactMatrix::zero(1, 1);
            g[(0, 0)] = linalg::rint(*m);
            Ok(g)
        }
        StandardKind::E8Neg => Ok(e8_cartan().scale(&linalg::rint(-1))),
        StandardKind::LambdaK3 => standard_gram(&StandardKind::Sum(vec![
            StandardKind::U(1),
            StandardKind::U(1),
            StandardKind::U(1),
            StandardKind::E8Neg,
            StandardKind::E8Neg,
        ])),
        StandardKind::Sum(kinds) => {
            let blocks: Result<Vec<ExactMatrix>> = kinds.iter().map(standard_gram).collect();
            Ok(block_diagonal(&blocks?))
        }
    }
}

/// Block-diagonal assembly of Gram matrices.
pub fn block_diagonal(blocks: &[ExactMatrix]) -> ExactMatrix {
    let n: usize = blocks.iter().map(ExactMatrix::rows).sum();
    let mut g = ExactMatrix::zero(n, n);
    let mut off = 0;
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                g[(off + r, off + c)] = b[(r, c)].clone();
            }
        }
        off += b.rows();
    }
    g
}

/// Full-rank standard lattice in its own ambient space, basis the
/// identity.
pub fn standard_lattice(kind: &StandardKind) -> Result<Lattice> {
    let gram = standard_gram(kind)?;
    let dim = gram.rows();
    let space = QuadraticSpace::new(gram)?;
    Lattice::new(space, ExactMatrix::identity(dim))
}

/// Inertia `(positive, negative, zero)` of the basis Gram matrix, by exact
/// symmetric congruence diagonalization.
pub fn signature(l: &Lattice) -> (usize, usize, usize) {
    let mut m = l.gram();
    let n = m.rows();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                None => {
                    zero += 1;
                    continue;
                }
                Some(j) => {
                    if m[(j, j)].is_zero() {
                        // Both diagonal entries vanish: adding row and
                        // column j to k gives a 2<k,j> diagonal entry.
                        for c in 0..n {
                            let t = m[(j, c)].clone();
                            m[(k, c)] += t;
                        }
                        for r in 0..n {
                            let t = m[(r, j)].clone();
                            m[(r, k)] += t;
                        }
                    } else {
                        for c in 0..n {
                            let t = m[(k, c)].clone();
                            m[(k, c)] = m[(j, c)].clone();
                            m[(j, c)] = t;
                        }
                        for r in 0..n {
                            let t = m[(r, k)].clone();
                            m[(r, k)] = m[(r, j)].clone();
                            m[(r, j)] = t;
                        }
                    }
                }
            }
        }
        let pivot = m[(k, k)].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in k + 1..n {
            if m[(r, k)].is_zero() {
                continue;
            }
            let f = &m[(r, k)] / &pivot;
            for c in 0..n {
                let t = &f * &m[(k, c)];
                m[(r, c)] -= t;
            }
            for c in 0..n {
                let t = &f * &m[(c, k)].clone();
                m[(c, r)] -= t;
            }
        }
        for c in k + 1..n {
            m[(k, c)] = Rat::zero();
            m[(c, k)] = Rat::zero();
        }
    }
    (pos, neg, zero)
}

/// Dual lattice in the same rational span: all vectors of the span pairing
/// integrally with the lattice. Basis `gram(L)^{-1} * B`.
pub fn dual(l: &Lattice) -> Result<Lattice> {
    let gram = l.gram();
    let inv = gram.inverse().ok_or(Error::DegenerateLattice)?;
    Ok(Lattice { space: l.space.clone(), basis: inv.mul(&l.basis) })
}

/// Smallest primitive sublattice of `ambient` containing `l`, i.e.
/// `ambient` intersected with the rational span of `l`.
pub fn saturate(l: &Lattice, ambient: &Lattice) -> Result<Lattice> {
    if !l.same_space(ambient) {
        return Err(Error::SpaceMismatch);
    }
    let coeffs = linalg::solve_all(&ambient.basis, &l.basis).ok_or(Error::OutsideSpan)?;
    // Saturation of a rational row span inside Z^rank: orthogonal
    // complement (standard dot product) applied twice is saturated and
    // spans the same rational subspace.
    let d = coeffs.denominator_lcm();
    let scaled = coeffs.scale(&Rat::from_integer(d));
    let perp = linalg::integer_kernel(&scaled);
    let sat = linalg::integer_kernel(&perp);
    Ok(Lattice { space: l.space.clone(), basis: sat.mul(&ambient.basis) })
}

/// Primitive sublattice of `ambient` orthogonal to every vector of `m`.
pub fn orthogonal_complement(m: &Lattice, ambient: &Lattice) -> Result<Lattice> {
    if !m.same_space(ambient) {
        return Err(Error::SpaceMismatch);
    }
    // y (in ambient coordinates) is orthogonal to all of m iff
    // y * (B_amb * G * B_m^T) = 0.
    let pairings = ambient.basis.mul(m.space.gram()).mul(&m.basis.transpose());
    let kernel = linalg::integer_kernel(&pairings.transpose());
    Ok(Lattice { space: ambient.space.clone(), basis: kernel.mul(&ambient.basis) })
}

fn integral_gram(l: &Lattice) -> Result<ExactMatrix> {
    let gram = l.gram();
    if !gram.is_integer() {
        return Err(Error::NonIntegralLattice);
    }
    if linalg::determinant(&gram).is_zero() {
        return Err(Error::DegenerateLattice);
    }
    Ok(gram)
}

/// Invariant factors of `L^dual / L` for a nondegenerate integral lattice.
pub fn discriminant_group(l: &Lattice) -> Result<FGAbelianGroup> {
    let gram = integral_gram(l)?;
    Ok(FGAbelianGroup::from_parts(0, linalg::snf(&gram).invariant_factors()))
}

/// Reduction of a pairing value into `[0, 2)`, representing `Q/2Z`.
pub fn mod_2z(x: &Rat) -> Rat {
    let two = linalg::rint(2);
    let f = (x / &two).floor() * &two;
    x - f
}

/// Reduction of a pairing value into `[0, 1)`, representing `Q/Z`.
pub fn mod_z(x: &Rat) -> Rat {
    x - x.floor()
}

/// Discriminant form of an even nondegenerate lattice: generators of
/// `L^dual / L` with their orders, quadratic values `q in [0, 2)` and
/// pairwise bilinear values `b in [0, 1)`.
#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    group: FGAbelianGroup,
    orders: Vec<Int>,
    lifts: ExactMatrix,
    q_values: Vec<Rat>,
    b_values: ExactMatrix,
}

impl DiscriminantForm {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    /// Orders of the generators, matching the rows of `lifts`.
    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    /// Generator lifts as rows in the ambient space.
    pub fn lifts(&self) -> &ExactMatrix {
        &self.lifts
    }

    pub fn q_values(&self) -> &[Rat] {
        &self.q_values
    }

    pub fn b_values(&self) -> &ExactMatrix {
        &self.b_values
    }
}

/// Computes the discriminant form of an even nondegenerate lattice.
pub fn discriminant_form(l: &Lattice) -> Result<DiscriminantForm> {
    let gram = integral_gram(l)?;
    for i in 0..gram.rows() {
        if !(&gram[(i, i)] / linalg::rint(2)).denom().is_one() {
            return Err(Error::OddLattice);
        }
    }
    let s = linalg::snf(&gram);
    // L^dual/L is Z^n mod the row span of the Gram matrix; with
    // U*G*V = D the class of row i of V^{-1} generates a cyclic factor of
    // order d_i, and its ambient lift is that row expressed in the dual
    // basis G^{-1} * B.
    let v_inv = s.v.inverse().expect("V is unimodular");
    let dual_basis = gram.inverse().expect("gram is nondegenerate").mul(&l.basis);
    let all_lifts = v_inv.mul(&dual_basis);
    let mut orders = Vec::new();
    let mut rows = Vec::new();
    for i in 0..gram.rows() {
        let d = s.d[(i, i)].numer().clone();
        if !d.is_one() {
            orders.push(d);
            rows.push(all_lifts.row_vec(i));
        }
    }
    let lifts = ExactMatrix::from_rows(rows);
    let space = l.space();
    let q_values: Vec<Rat> = lifts.row_iter().map(|r| mod_2z(&space.norm(r))).collect();
    let k = lifts.rows();
    let b_values =
        ExactMatrix::from_fn(k, k, |i, j| mod_z(&space.pair(lifts.row(i), lifts.row(j))));
    Ok(DiscriminantForm {
        group: FGAbelianGroup::from_parts(0, orders.clone()),
        orders,
        lifts,
        q_values,
        b_values,
    })
}

/// Index `|L : S|` of a finite-index sublattice, verified row by row.
pub fn index_of_sublattice(s: &Lattice, l: &Lattice) -> Result<Int> {
    if !s.same_space(l) {
        return Err(Error::SpaceMismatch);
    }
    if s.rank() != l.rank() {
        return Err(Error::RankMismatch);
    }
    let coeffs = linalg::solve_all(&l.basis, &s.basis)
        .ok_or_else(|| Error::NotASublattice("outside the rational span".into()))?;
    if !coeffs.is_integer() {
        return Err(Error::NotASublattice("a basis vector is not a member".into()));
    }
    let det = linalg::determinant(&coeffs);
    Ok(det.numer().abs())
}

/// Invariant factors of the quotient `L / S` for any sublattice `S` of
/// `L`, of arbitrary rank: free rank plus torsion.
pub fn quotient_group(s: &Lattice, l: &Lattice) -> Result<FGAbelianGroup> {
    if !s.same_space(l) {
        return Err(Error::SpaceMismatch);
    }
    let coeffs = linalg::solve_all(&l.basis, &s.basis)
        .ok_or_else(|| Error::NotASublattice("outside the rational span".into()))?;
    if !coeffs.is_integer() {
        return Err(Error::NotASublattice("a basis vector is not a member".into()));
    }
    let snf = linalg::snf(&coeffs);
    Ok(FGAbelianGroup::from_parts(l.rank() - snf.rank(), snf.invariant_factors()))
}

/// Basic numeric facts about a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProperties {
    pub rank: usize,
    pub even: bool,
    pub unimodular: bool,
    pub determinant: Rat,
}

pub fn properties(l: &Lattice) -> LatticeProperties {
    let gram = l.gram();
    let even = gram.is_integer()
        && (0..gram.rows()).all(|i| (&gram[(i, i)] / linalg::rint(2)).denom().is_one());
    let determinant = linalg::determinant(&gram);
    let unimodular = determinant.abs().is_one();
    LatticeProperties { rank: l.rank(), even, unimodular, determinant }
}
