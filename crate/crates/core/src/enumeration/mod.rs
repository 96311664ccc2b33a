//! Exact equilibrium enumeration.
//!
//! Extreme equilibria are found by pairing vertices of the best-response
//! polyhedra `P̄` and `Q̄` whose binding labels jointly cover every label.
//! [`support_enumeration_oracle`] is an independent brute-force route used to
//! cross-check it, and [`solve_zero_sum`] handles `A + B = 0` by linear
//! programming.

mod polyhedra;
mod support;
mod zerosum;

use std::collections::BTreeMap;

pub use polyhedra::{build_polyhedra, enumerate_vertices, BestResponsePolyhedron, PolyhedronVertex, Side};
pub use support::support_enumeration_oracle;
pub use zerosum::solve_zero_sum;

use crate::error::{Error, Result};
use crate::game::{is_exact_equilibrium, is_nondegenerate, BimatrixGame, EquilibriumReport, MixedProfile, SolutionKind};

/// Largest `m + n` accepted by the enumerators unless a cap is given.
pub const DEFAULT_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumSet {
    /// Extreme equilibria in lexicographic profile order.
    pub equilibria: Vec<EquilibriumReport>,
    /// Partition of `equilibria` indices into connected components.
    pub components: Vec<Vec<usize>>,
    pub nondegenerate: bool,
}

impl EquilibriumSet {
    pub fn len(&self) -> usize {
        self.equilibria.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equilibria.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn profiles(&self) -> Vec<MixedProfile> {
        self.equilibria.iter().map(|r| r.profile.clone()).collect()
    }
}

pub(crate) fn check_cap(game: &BimatrixGame, cap: usize) -> Result<()> {
    let size = game.rows() + game.cols();
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

pub fn enumerate_equilibria(game: &BimatrixGame) -> Result<EquilibriumSet> {
    enumerate_equilibria_with_cap(game, DEFAULT_CAP)
}

pub fn enumerate_equilibria_with_cap(game: &BimatrixGame, cap: usize) -> Result<EquilibriumSet> {
    check_cap(game, cap)?;
    let labels = game.rows() + game.cols();
    let (p_bar, q_bar) = build_polyhedra(game);
    let p_vertices = enumerate_vertices(&p_bar);
    let q_vertices = enumerate_vertices(&q_bar);

    let mut found = BTreeMap::new();
    for pv in &p_vertices {
        for qv in &q_vertices {
            let covered = (0..labels).all(|l| pv.binding.contains(&l) || qv.binding.contains(&l));
            if covered {
                let profile = MixedProfile {
                    x: pv.strategy().to_vec(),
                    y: qv.strategy().to_vec(),
                };
                found.entry(profile).or_insert(());
            }
        }
    }
    let equilibria = found
        .into_keys()
        .map(|p| EquilibriumReport::new(game, p, SolutionKind::Exact))
        .collect::<Result<Vec<_>>>()?;

    let mut set = EquilibriumSet {
        equilibria,
        components: Vec::new(),
        nondegenerate: is_nondegenerate(game),
    };
    set.components = component_partition(&set, game)?;
    Ok(set)
}

/// Partition of the extreme equilibria by the exchangeability graph:
/// `(x₁, y₁) ~ (x₂, y₂)` iff `(x₁, y₂)` and `(x₂, y₁)` are also equilibria.
pub fn component_partition(set: &EquilibriumSet, game: &BimatrixGame) -> Result<Vec<Vec<usize>>> {
    let n = set.equilibria.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            let pa = &set.equilibria[a].profile;
            let pb = &set.equilibria[b].profile;
            let cross1 = MixedProfile {
                x: pa.x.clone(),
                y: pb.y.clone(),
            };
            let cross2 = MixedProfile {
                x: pb.x.clone(),
                y: pa.y.clone(),
            };
            if is_exact_equilibrium(game, &cross1)? && is_exact_equilibrium(game, &cross2)? {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

pub fn connected_components(set: &EquilibriumSet, game: &BimatrixGame) -> Result<usize> {
    Ok(component_partition(set, game)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{aux_family, block_game, identity_game, rank1_family};
    use crate::game::loss;
    use crate::numerics::{frac, int, RationalMatrix};
    use num::Zero;

    fn half_pair(d: usize, i: usize) -> MixedProfile {
        let mut v = vec![int(0); d];
        v[i] = frac(1, 2);
        v[i + 1] = frac(1, 2);
        MixedProfile { x: v.clone(), y: v }
    }

    #[test]
    fn rank1_family_equilibria_d4() {
        let set = enumerate_equilibria(&rank1_family(4).unwrap()).unwrap();
        let mut expected: Vec<MixedProfile> = (0..4).map(|i| MixedProfile::pure(4, 4, i, i)).collect();
        expected.extend((0..3).map(|i| half_pair(4, i)));
        expected.sort();
        assert_eq!(set.profiles(), expected);
        assert_eq!(set.component_count(), 7);
        assert!(set.nondegenerate);
    }

    #[test]
    fn off_diagonal_pure_profiles_are_not_equilibria() {
        let g = rank1_family(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(loss(&g, &MixedProfile::pure(4, 4, i, j)).unwrap() > int(0));
                }
            }
        }
    }

    #[test]
    fn choose_bound_undercounts_small_supports() {
        // rank A = rank B = 3 at d = 4, so C(4, 4)^2 = 1, yet the seven
        // equilibria are pairwise non-exchangeable.
        use crate::bounds::{rank_component_bound, support_pair_bound};
        let g = rank1_family(4).unwrap();
        assert_eq!((g.a().rank(), g.b().rank()), (3, 3));
        let comps = connected_components(&enumerate_equilibria(&g).unwrap(), &g).unwrap();
        assert_eq!(comps, 7);
        assert_eq!(rank_component_bound(4, 3).unwrap(), 1.into());
        assert!(num::BigInt::from(comps) <= support_pair_bound(4, 3));
    }

    #[test]
    fn identity_game_counts() {
        assert_eq!(enumerate_equilibria(&identity_game(3).unwrap()).unwrap().len(), 7);
        let set = enumerate_equilibria(&identity_game(2).unwrap()).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set.component_count(), 3);
    }

    #[test]
    fn block_game_count() {
        let g = block_game(&identity_game(2).unwrap(), &rank1_family(3).unwrap()).unwrap();
        assert!(enumerate_equilibria(&g).unwrap().len() >= 15);
    }

    #[test]
    fn zero_game_is_one_component() {
        let g = BimatrixGame::new(RationalMatrix::zeros(2, 2), RationalMatrix::zeros(2, 2)).unwrap();
        let set = enumerate_equilibria(&g).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(set.component_count(), 1);
        assert!(!set.nondegenerate);
    }

    #[test]
    fn cap_enforced() {
        let g = identity_game(3).unwrap();
        assert_eq!(
            enumerate_equilibria_with_cap(&g, 5),
            Err(Error::CapExceeded { size: 6, cap: 5 })
        );
        assert!(support_enumeration_oracle(&g, 5).is_err());
    }

    #[test]
    fn aux_and_rank1_share_equilibria() {
        for d in 2..=5 {
            let a = enumerate_equilibria(&aux_family(d).unwrap()).unwrap().profiles();
            let b = enumerate_equilibria(&rank1_family(d).unwrap()).unwrap().profiles();
            assert_eq!(a, b, "d = {d}");
        }
    }

    #[test]
    fn symmetric_family_equilibria_swap() {
        let g = rank1_family(5).unwrap();
        let set = enumerate_equilibria(&g).unwrap();
        for p in set.profiles() {
            assert!(is_exact_equilibrium(&g, &p.swapped()).unwrap());
        }
    }

    #[test]
    fn every_profile_has_zero_loss() {
        for g in [rank1_family(3).unwrap(), identity_game(4).unwrap(), aux_family(4).unwrap()] {
            for r in enumerate_equilibria(&g).unwrap().equilibria {
                assert!(r.loss.is_zero());
                assert!(loss(&g, &r.profile).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rectangular_game() {
        // Row player prefers matching; 2x3 with a dominated column.
        let g = BimatrixGame::from_ints(&[[3, 0, 1], [0, 2, 1]], &[[2, 0, -5], [0, 3, -5]]).unwrap();
        let set = enumerate_equilibria(&g).unwrap();
        let oracle = support_enumeration_oracle(&g, DEFAULT_CAP).unwrap();
        assert_eq!(set.profiles(), oracle);
        assert_eq!(set.len(), 3);
    }
}
