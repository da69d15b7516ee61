//! Binary-tournament mating selection and truncation survival.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{contract, Result};

/// Winner of a tournament between `i` and `j`: `i` only on strictly greater
/// fitness, so `j` takes ties.
pub fn tournament(fitness: &[f64], i: usize, j: usize) -> usize {
    if fitness[i] > fitness[j] {
        i
    } else {
        j
    }
}

/// `n` tournament winners (indices into `fitness`). The two entrants of one
/// tournament are distinct whenever more than one member exists.
pub fn mating_selection<R: Rng + ?Sized>(fitness: &[f64], n: usize, rng: &mut R) -> Vec<usize> {
    let size = fitness.len();
    assert!(size > 0, "mating selection on an empty population");
    (0..n)
        .map(|_| {
            let i = rng.random_range(0..size);
            let mut j = rng.random_range(0..size);
            while size > 1 && j == i {
                j = rng.random_range(0..size);
            }
            tournament(fitness, i, j)
        })
        .collect()
}

/// Keep the `n` fittest members. Members tied at the cut-off value are
/// sampled uniformly. Returned indices are in ascending (original) order.
pub fn environmental_selection<R: Rng + ?Sized>(
    fitness: &[f64],
    n: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if fitness.len() < n {
        return Err(contract(format!(
            "cannot keep {n} members out of {}",
            fitness.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..fitness.len()).collect();
    order.sort_by(|&a, &b| fitness[b].total_cmp(&fitness[a]));
    let cut = fitness[order[n - 1]];
    let mut keep: Vec<usize> = order.iter().copied().filter(|&i| fitness[i] > cut).collect();
    let mut tied: Vec<usize> = order.iter().copied().filter(|&i| fitness[i] == cut).collect();
    tied.sort_unstable();
    let need = n - keep.len();
    if need < tied.len() {
        let (chosen, _) = tied.partial_shuffle(rng, need);
        keep.extend_from_slice(chosen);
    } else {
        keep.extend(tied);
    }
    keep.sort_unstable();
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    #[test]
    fn tournament_rule() {
        assert_eq!(tournament(&[1.0, 0.0], 0, 1), 0);
        assert_eq!(tournament(&[1.0, 0.0], 1, 0), 0);
        assert_eq!(tournament(&[0.5, 0.5], 0, 1), 1);
        assert_eq!(tournament(&[0.5, 0.5], 1, 0), 0);
    }

    #[test]
    fn pool_size_matches() {
        let mut rng = RandomStream::new(1);
        assert_eq!(mating_selection(&[0.2; 3], 10, &mut rng).len(), 10);
        assert_eq!(mating_selection(&[0.2], 4, &mut rng), vec![0; 4]);
    }

    #[test]
    fn truncation_examples() {
        let mut rng = RandomStream::new(2);
        assert_eq!(environmental_selection(&[1.0, 0.5, 0.0], 2, &mut rng).unwrap(), vec![0, 1]);
        let mut seen = [false; 4];
        for _ in 0..200 {
            let k = environmental_selection(&[1.0, 0.0, 0.0, 0.0], 2, &mut rng).unwrap();
            assert_eq!(k.len(), 2);
            assert_eq!(k[0], 0);
            seen[k[1]] = true;
        }
        assert!(seen[1] && seen[2] && seen[3], "every tied member can survive");
        assert_eq!(environmental_selection(&[0.3, 0.1], 2, &mut rng).unwrap(), vec![0, 1]);
        assert!(environmental_selection(&[0.3], 2, &mut rng).is_err());
    }
}
