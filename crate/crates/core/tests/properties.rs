//! Randomized invariants, mostly beyond the ranks covered exhaustively.

use fock_crystal::crystal::{e_tilde, eps_phi, f_tilde, is_highest_weight, residues_to_check, weight_aff, weight_inf};
use fock_crystal::decomposition::{decompose_weight, hw_symbol_to_tableau, kostka, tableau_to_hw_symbol};
use fock_crystal::symbol::{reduce_charge, Symbol};
use fock_crystal::{EModulus, Multicharge, Multipartition, Partition};
use proptest::prelude::*;

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted parts")
    })
}

fn multipartition(level: usize) -> impl Strategy<Value = Multipartition> {
    prop::collection::vec(partition(4, 4), level).prop_map(|c| Multipartition::new(c).expect("components"))
}

/// A level in `1..=3`, a charge and a multipartition of that level.
fn charged() -> impl Strategy<Value = (Multipartition, Multicharge)> {
    (1usize..=3).prop_flat_map(|l| (multipartition(l), prop::collection::vec(-3i64..=4, l).prop_map(Multicharge)))
}

/// Like [`charged`] with a weakly increasing charge.
fn charged_increasing() -> impl Strategy<Value = (Multipartition, Multicharge)> {
    charged().prop_map(|(lambda, mut s)| {
        s.0.sort_unstable();
        (lambda, s)
    })
}

/// Raises `lambda` with `ẽ_j` until it is highest weight.
fn raise_to_highest(lambda: &Multipartition, s: &Multicharge, e: EModulus) -> Multipartition {
    let mut current = lambda.clone();
    'outer: loop {
        for j in residues_to_check(&current, s, e) {
            if let Some(lower) = e_tilde(&current, s, e, j).unwrap() {
                current = lower;
                continue 'outer;
            }
        }
        return current;
    }
}

/// Row-strict fillings counted one box at a time.
fn brute_kostka(shape: &Partition, weight: &[u32]) -> u64 {
    let cells: Vec<(usize, usize)> =
        shape.parts().iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |k| (r, k))).collect();
    let width = shape.parts().first().copied().unwrap_or(0) as usize;
    let mut grid = vec![vec![0u32; width]; shape.height()];
    let mut left = weight.to_vec();
    fn go(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, left: &mut Vec<u32>) -> u64 {
        let Some(&(r, k)) = cells.get(idx) else { return 1 };
        let mut total = 0;
        for x in 1..=left.len() as u32 {
            if left[x as usize - 1] == 0 || (k > 0 && grid[r][k - 1] >= x) || (r > 0 && grid[r - 1][k] > x) {
                continue;
            }
            left[x as usize - 1] -= 1;
            grid[r][k] = x;
            total += go(idx + 1, cells, grid, left);
            left[x as usize - 1] += 1;
        }
        total
    }
    go(0, &cells, &mut grid, &mut left)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multipartition_strings_round_trip(lambda in (1usize..=4).prop_flat_map(multipartition)) {
        let text = lambda.to_string();
        prop_assert_eq!(text.parse::<Multipartition>().unwrap(), lambda);
    }

    #[test]
    fn peel_replays_and_shrinks((lambda, s) in charged(), e in 2u32..=5) {
        let sym = Symbol::new(lambda.clone(), s).unwrap();
        let trace = sym.peel(e).unwrap();
        prop_assert_eq!(trace.replay().unwrap(), sym);
        let mut rank = lambda.rank();
        for step in &trace.periods {
            prop_assert_eq!(step.form.len(), e as usize);
            prop_assert!(step.form.windows(2).all(|w| w[0] == w[1] + 1));
            prop_assert!(step.lambda_after.rank() <= rank);
            rank = step.lambda_after.rank();
        }
        prop_assert!(Symbol::new(trace.final_lambda.clone(), trace.final_charge.clone()).unwrap().find_period(e).unwrap().is_none()
            || trace.is_totally_periodic(e));
    }

    #[test]
    fn highest_weight_iff_totally_periodic((lambda, s) in charged(), e in 2u32..=4) {
        let hw = is_highest_weight(&lambda, &s, EModulus::Finite(e)).unwrap();
        let periodic = Symbol::new(lambda.clone(), s.clone()).unwrap().is_totally_periodic(e).unwrap();
        prop_assert_eq!(hw, periodic, "{} with charge {}", lambda, s);
    }

    #[test]
    fn infinite_highest_weight_iff_reverse_lattice((lambda, s) in charged()) {
        let hw = is_highest_weight(&lambda, &s, EModulus::Infinite).unwrap();
        let periodic = Symbol::new(lambda.clone(), s.clone()).unwrap().is_totally_periodic_inf();
        prop_assert_eq!(hw, periodic, "{} with charge {}", lambda, s);
    }

    #[test]
    fn operators_are_partial_inverses((lambda, s) in charged(), e in 2u32..=4, i in 0i64..4) {
        let e = EModulus::Finite(e);
        let i = e.residue(i);
        let (eps, phi) = eps_phi(&lambda, &s, e, i).unwrap();
        match f_tilde(&lambda, &s, e, i).unwrap() {
            Some(up) => {
                prop_assert!(phi > 0);
                prop_assert_eq!(e_tilde(&up, &s, e, i).unwrap(), Some(lambda.clone()));
                prop_assert_eq!(eps_phi(&up, &s, e, i).unwrap(), (eps + 1, phi - 1));
            }
            None => prop_assert_eq!(phi, 0),
        }
    }

    #[test]
    fn projection_of_infinite_weight((lambda, s) in charged(), e in 2u32..=5) {
        let inf = weight_inf(&lambda, &s).unwrap();
        prop_assert_eq!(inf.project(e), weight_aff(&lambda, &s, e).unwrap());
    }

    #[test]
    fn reduced_charge_is_fundamental(s in prop::collection::vec(-6i64..=6, 1..=4), e in 2u32..=5) {
        let t = reduce_charge(&Multicharge(s.clone()), e).unwrap();
        prop_assert!(t.in_fundamental_domain(e));
        prop_assert_eq!(t.sum().rem_euclid(e as i64), s.iter().sum::<i64>().rem_euclid(e as i64));
    }

    #[test]
    fn kostka_matches_enumeration(
        (shape, letters, k) in (partition(4, 4), 1usize..=4)
            .prop_flat_map(|(shape, k)| {
                let n = shape.rank() as usize;
                (Just(shape), prop::collection::vec(0..k, n), Just(k))
            })
    ) {
        let mut weight = vec![0u32; k];
        for x in letters {
            weight[x] += 1;
        }
        prop_assert_eq!(kostka(&shape, &weight), brute_kostka(&shape, &weight));
    }

    #[test]
    fn tableau_bijection_round_trips((lambda, s) in charged_increasing()) {
        let top = raise_to_highest(&lambda, &s, EModulus::Infinite);
        let (t, v) = hw_symbol_to_tableau(&top, &s).unwrap();
        prop_assert!(t.is_valid());
        prop_assert_eq!(tableau_to_hw_symbol(&t, &s, &v).unwrap(), top);
    }

    #[test]
    fn highest_weights_decompose_uniquely(
        (s, path) in (1usize..=3).prop_flat_map(|l| (prop::collection::vec(-2i64..=3, l), prop::collection::vec(0usize..16, 0..=10))),
        e in 2u32..=4,
    ) {
        let s = Multicharge({ let mut v = s; v.sort_unstable(); v });
        // A random walk from ∅ along e = ∞ arrows stays semistandard.
        let mut lambda = Multipartition::empty(s.level());
        for step in path {
            let (addable, _) = lambda.boundary_nodes();
            let contents: Vec<i64> = addable.iter().map(|n| n.content(&s)).collect();
            let j = contents[step % contents.len()];
            if let Some(next) = f_tilde(&lambda, &s, EModulus::Infinite, j).unwrap() {
                lambda = next;
            }
        }
        prop_assert!(Symbol::new(lambda.clone(), s.clone()).unwrap().is_semistandard());
        let top = raise_to_highest(&lambda, &s, EModulus::Finite(e));
        prop_assume!(Symbol::new(top.clone(), s.clone()).unwrap().is_semistandard());
        let nu = weight_inf(&top, &s).unwrap();
        let found = decompose_weight(&nu, s.level(), e);
        prop_assert_eq!(found.len(), 1);
        prop_assert_eq!(found[0].reconstruct(), nu);
    }
}
