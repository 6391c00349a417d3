use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hitprob::equivariance::{action_matrix, invariants, sigma_generators, Group, LinearSubstitution};
use hitprob::hit::{hit_space_in, MonomialIndex};
use hitprob::{admissible_basis, hit_generators, rho, weight_quotient_basis, F2Matrix, MonomialOrder, WeightVector};

#[test]
fn direct_elimination_agrees_at_degree_20() {
    let idx = MonomialIndex::new(5, 20, MonomialOrder::WeightLex);
    assert_eq!(idx.len(), 10_626);
    assert_eq!(hit_generators(5, 20).unwrap().pair_count(), 22_905);
    let direct = hit_space_in(&idx).unwrap();
    assert_eq!(direct.rank(), 9_985);
    let qb = admissible_basis(5, 20).unwrap();
    assert_eq!(qb.relations(), direct);
}

#[test]
fn transpositions_square_to_identity() {
    let qb = admissible_basis(4, 12).unwrap();
    let id = F2Matrix::identity(qb.dim());
    for j in 1..4 {
        let m = action_matrix(&rho(j, 4).unwrap(), &qb).unwrap();
        assert_eq!(m.mul(&m).unwrap(), id, "rho_{j}");
    }
}

#[test]
fn redundant_permutations_leave_invariants_unchanged() {
    let mut rng = StdRng::seed_from_u64(7);
    let w: WeightVector = "4,2,3".parse().unwrap();
    let qb = weight_quotient_basis(5, 20, &w).unwrap();
    let base = invariants(&qb, &sigma_generators(5), Group::Sigma).unwrap();
    let mut gens = sigma_generators(5);
    for _ in 0..4 {
        let mut g = LinearSubstitution::identity(5);
        for _ in 0..rng.gen_range(1..6) {
            g = g.then(&rho(rng.gen_range(1..5), 5).unwrap()).unwrap();
        }
        gens.push(g);
    }
    let more = invariants(&qb, &gens, Group::Sigma).unwrap();
    assert_eq!(more.dimension, base.dimension);
    for r in &more.representatives {
        assert!(base.spans(&qb, r).unwrap());
    }
}
