use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{Signed, Zero};
use rayon::prelude::*;

use crate::game::BimatrixGame;
use crate::numerics::{dot, one, solve_unique, Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `P̄` over `(x, v)`: labels `0..m` are `xᵢ ≥ 0`, labels `m..m+n` are
    /// `xᵀB₍ⱼ₎ ≤ v`.
    PBar,
    /// `Q̄` over `(y, u)`: labels `0..m` are `A⁽ⁱ⁾y ≤ u`, labels `m..m+n` are
    /// `yⱼ ≥ 0`.
    QBar,
}

/// Mangasarian best-response polyhedron. Every inequality is stored as
/// `row · point ≤ 0`, where `point` is the strategy followed by the payoff
/// scalar; the normalization `Σ strategy = 1` is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponsePolyhedron {
    side: Side,
    m: usize,
    n: usize,
    inequalities: Vec<Vec<Rational>>,
}

/// Zero-based labels of the inequalities that hold with equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyhedronVertex {
    pub point: Vec<Rational>,
    pub binding: BTreeSet<usize>,
}

impl PolyhedronVertex {
    pub fn strategy(&self) -> &[Rational] {
        &self.point[..self.point.len() - 1]
    }

    pub fn payoff(&self) -> &Rational {
        self.point.last().expect("point has a payoff coordinate")
    }
}

impl BestResponsePolyhedron {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn strategy_dim(&self) -> usize {
        match self.side {
            Side::PBar => self.m,
            Side::QBar => self.n,
        }
    }

    pub fn num_labels(&self) -> usize {
        self.m + self.n
    }

    pub fn inequalities(&self) -> &[Vec<Rational>] {
        &self.inequalities
    }

    pub fn best_response_labels(&self) -> std::ops::Range<usize> {
        match self.side {
            Side::PBar => self.m..self.m + self.n,
            Side::QBar => 0..self.m,
        }
    }

    pub fn nonnegativity_labels(&self) -> std::ops::Range<usize> {
        match self.side {
            Side::PBar => 0..self.m,
            Side::QBar => self.m..self.m + self.n,
        }
    }

    pub fn is_best_response_label(&self, label: usize) -> bool {
        self.best_response_labels().contains(&label)
    }

    /// Number of binding best-response rows at `vertex`.
    pub fn best_response_count(&self, vertex: &PolyhedronVertex) -> usize {
        vertex
            .binding
            .iter()
            .filter(|&&l| self.is_best_response_label(l))
            .count()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        let dim = self.strategy_dim();
        point.len() == dim + 1
            && point[..dim].iter().sum::<Rational>() == one()
            && self.inequalities.iter().all(|row| !dot(row, point).is_positive())
    }

    pub fn binding_set(&self, point: &[Rational]) -> BTreeSet<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, row)| dot(row, point).is_zero())
            .map(|(l, _)| l)
            .collect()
    }
}

/// `(P̄, Q̄)` for `game`.
pub fn build_polyhedra(game: &BimatrixGame) -> (BestResponsePolyhedron, BestResponsePolyhedron) {
    let (m, n) = game.shape();
    let neg_one = -one();

    let mut p_rows = Vec::with_capacity(m + n);
    for i in 0..m {
        let mut row = vec![Rational::zero(); m + 1];
        row[i] = neg_one.clone();
        p_rows.push(row);
    }
    for j in 0..n {
        let mut row = game.b().column(j);
        row.push(neg_one.clone());
        p_rows.push(row);
    }

    let mut q_rows = Vec::with_capacity(m + n);
    for i in 0..m {
        let mut row = game.a().row(i).to_vec();
        row.push(neg_one.clone());
        q_rows.push(row);
    }
    for j in 0..n {
        let mut row = vec![Rational::zero(); n + 1];
        row[j] = neg_one.clone();
        q_rows.push(row);
    }

    (
        BestResponsePolyhedron {
            side: Side::PBar,
            m,
            n,
            inequalities: p_rows,
        },
        BestResponsePolyhedron {
            side: Side::QBar,
            m,
            n,
            inequalities: q_rows,
        },
    )
}

/// All vertices of `poly`, sorted lexicographically by point.
///
/// A vertex is the unique solution of `dim` tight inequalities plus the
/// normalization row that also satisfies every other inequality. All
/// `dim`-subsets of labels are tried; degenerate vertices reached from several
/// subsets are merged.
pub fn enumerate_vertices(poly: &BestResponsePolyhedron) -> Vec<PolyhedronVertex> {
    let dim = poly.strategy_dim();
    let labels = poly.num_labels();
    let mut normalization = vec![one(); dim];
    normalization.push(Rational::zero());
    let mut rhs = vec![Rational::zero(); dim];
    rhs.push(one());

    let found: Vec<Vec<Rational>> = (0..labels)
        .combinations(dim)
        .par_bridge()
        .filter_map(|subset| {
            let mut rows: Vec<Vec<Rational>> =
                subset.iter().map(|&l| poly.inequalities[l].clone()).collect();
            rows.push(normalization.clone());
            let system = RationalMatrix::from_rows(rows).expect("rectangular");
            let point = solve_unique(&system, &rhs)?;
            poly.contains(&point).then_some(point)
        })
        .collect();

    let unique: BTreeMap<Vec<Rational>, ()> = found.into_iter().map(|p| (p, ())).collect();
    unique
        .into_keys()
        .map(|point| PolyhedronVertex {
            binding: poly.binding_set(&point),
            point,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{identity_game, rank1_family};
    use crate::numerics::{frac, int};

    #[test]
    fn polyhedron_shapes() {
        let (p, q) = build_polyhedra(&rank1_family(3).unwrap());
        assert_eq!(q.best_response_labels().len(), 3);
        assert_eq!(q.nonnegativity_labels().len(), 3);
        assert_eq!(q.inequalities().len(), 6);
        assert_eq!(p.strategy_dim(), 3);

        let (p, _) = build_polyhedra(&identity_game(2).unwrap());
        assert_eq!(p.inequalities().len(), 4);
    }

    #[test]
    fn vertex_points_are_normalized() {
        let (p, q) = build_polyhedra(&rank1_family(4).unwrap());
        for v in enumerate_vertices(&p).iter().chain(&enumerate_vertices(&q)) {
            assert_eq!(v.strategy().iter().sum::<Rational>(), int(1));
        }
    }

    #[test]
    fn rank1_vertex_counts() {
        let (_, q) = build_polyhedra(&rank1_family(3).unwrap());
        assert_eq!(enumerate_vertices(&q).len(), 7);
        let (_, q) = build_polyhedra(&rank1_family(2).unwrap());
        assert_eq!(enumerate_vertices(&q).len(), 3);
    }

    #[test]
    fn class_two_vertex_location() {
        // Binding best responses {1, 2} with support {1, 2} at d = 3.
        let (_, q) = build_polyhedra(&rank1_family(3).unwrap());
        let vertices = enumerate_vertices(&q);
        let v = vertices
            .iter()
            .find(|v| v.binding.contains(&0) && v.binding.contains(&1) && v.binding.contains(&5))
            .expect("class-2 vertex with rows 1, 2 binding and y3 = 0");
        assert_eq!(v.strategy(), &[frac(1, 2), frac(1, 2), int(0)]);
    }

    #[test]
    fn brute_force_binding_set_agreement() {
        // Every vertex's binding set has at least dim labels, and the
        // vertex is recovered from any dim-subset of them with full rank.
        let (p, q) = build_polyhedra(&rank1_family(2).unwrap());
        for poly in [&p, &q] {
            for v in enumerate_vertices(poly) {
                assert!(v.binding.len() >= poly.strategy_dim());
                assert!(poly.contains(&v.point));
            }
        }
    }

    #[test]
    fn vertices_are_sorted() {
        let (_, q) = build_polyhedra(&rank1_family(5).unwrap());
        let v = enumerate_vertices(&q);
        assert!(v.windows(2).all(|w| w[0].point < w[1].point));
    }
}
