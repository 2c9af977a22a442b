use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bitstring, QuboBuilder, QuboModel};
use crate::error::{Error, Result};

/// Distance matrix over `n` cities.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    dist: Vec<Vec<f64>>,
}

impl TspInstance {
    /// Rejects non-square input, nonzero diagonals, negative and non-finite
    /// entries.
    pub fn new(dist: Vec<Vec<f64>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::InvalidInstance("TSP instance has no cities".into()));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "distance row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "distance d[{i}][{j}] = {d}"
                    )));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "nonzero diagonal d[{i}][{i}] = {d}"
                    )));
                }
            }
        }
        Ok(TspInstance { dist })
    }

    /// Euclidean distances between planar points, rounded to the nearest
    /// integer unless `round` is false.
    pub fn from_coordinates(points: &[(f64, f64)], round: bool) -> Result<Self> {
        let dist = points
            .iter()
            .map(|&(x1, y1)| {
                points
                    .iter()
                    .map(|&(x2, y2)| {
                        let d = (x1 - x2).hypot(y1 - y2);
                        if round {
                            d.round()
                        } else {
                            d
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(dist)
    }

    /// Cities uniform in `[0, 100)^2`, rounded Euclidean distances.
    pub fn random_euclidean(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)))
            .collect();
        Self::from_coordinates(&pts, true)
    }

    pub fn num_cities(&self) -> usize {
        self.dist.len()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn max_distance(&self) -> f64 {
        self.dist.iter().flatten().copied().fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.num_cities();
        (0..n).all(|i| (0..i).all(|j| self.dist[i][j] == self.dist[j][i]))
    }

    /// Closed tour length; `order[p]` is the city visited at position `p`.
    pub fn tour_length(&self, order: &[usize]) -> f64 {
        let n = order.len();
        (0..n)
            .map(|p| self.dist[order[p]][order[(p + 1) % n]])
            .sum()
    }

    /// Shortest closed tour by enumeration with city 0 fixed in front, or
    /// `None` above 10 cities. Ties go to the lexicographically first order.
    pub fn optimal_tour(&self) -> Option<(Vec<usize>, f64)> {
        let n = self.num_cities();
        if n == 0 || n > 10 {
            return None;
        }
        fn rec(
            t: &TspInstance,
            order: &mut Vec<usize>,
            used: &mut [bool],
            best: &mut (Vec<usize>, f64),
        ) {
            let n = used.len();
            if order.len() == n {
                let len = t.tour_length(order);
                if len < best.1 {
                    *best = (order.clone(), len);
                }
                return;
            }
            for c in 1..n {
                if !used[c] {
                    used[c] = true;
                    order.push(c);
                    rec(t, order, used, best);
                    order.pop();
                    used[c] = false;
                }
            }
        }
        let mut used = vec![false; n];
        used[0] = true;
        let mut best = (Vec::new(), f64::INFINITY);
        rec(self, &mut vec![0], &mut used, &mut best);
        Some(best)
    }
}

/// `n * max(d) + 1`, large enough that breaking a constraint never pays.
pub fn default_penalty(t: &TspInstance) -> f64 {
    t.num_cities() as f64 * t.max_distance() + 1.0
}

/// One-hot QUBO on `n^2` variables, variable `i * n + p` meaning "city `i` at
/// position `p`":
///
/// `A sum_i (1 - sum_p x_ip)^2 + A sum_p (1 - sum_i x_ip)^2
///  + sum_{i != k} sum_p d_ik x_ip x_k,(p+1) mod n`.
pub fn encode_tsp(t: &TspInstance, penalty: f64) -> Result<QuboModel> {
    let n = t.num_cities();
    if n < 2 {
        return Err(Error::InvalidInstance(
            "TSP needs at least two cities".into(),
        ));
    }
    if !(penalty.is_finite() && penalty > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "penalty {penalty} must be positive"
        )));
    }
    let var = |city: usize, pos: usize| city * n + pos;
    let mut b = QuboBuilder::new(n * n);
    // (1 - sum x)^2 = 1 - sum x + 2 sum_{a<b} x_a x_b for binary x
    let mut one_hot = |vars: Vec<usize>| {
        b.add_constant(penalty);
        for (k, &u) in vars.iter().enumerate() {
            b.add_linear(u, -penalty);
            for &v in &vars[k + 1..] {
                b.add_quadratic(u, v, 2.0 * penalty);
            }
        }
    };
    for i in 0..n {
        one_hot((0..n).map(|p| var(i, p)).collect());
    }
    for p in 0..n {
        one_hot((0..n).map(|i| var(i, p)).collect());
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            for p in 0..n {
                b.add_quadratic(var(i, p), var(k, (p + 1) % n), t.distance(i, k));
            }
        }
    }
    b.build()
}

/// Permutation-matrix bitstring for a visiting order.
pub fn permutation_bits(order: &[usize]) -> Bitstring {
    let n = order.len();
    let mut bits = Bitstring::zeros(n * n);
    for (p, &city) in order.iter().enumerate() {
        bits.set(city * n + p, true);
    }
    bits
}

/// Visiting order encoded by a permutation matrix, or `None` when a row or
/// column does not hold exactly one set bit.
pub fn permutation_from_bits(bits: &Bitstring, n: usize) -> Option<Vec<usize>> {
    if bits.len() != n * n {
        return None;
    }
    let mut order = vec![usize::MAX; n];
    for i in 0..n {
        let row: Vec<usize> = (0..n).filter(|&p| bits.get(i * n + p) == 1).collect();
        if row.len() != 1 || order[row[0]] != usize::MAX {
            return None;
        }
        order[row[0]] = i;
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for c in 0..n {
                if !prefix.contains(&c) {
                    prefix.push(c);
                    go(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), n, &mut out);
        out
    }

    #[test]
    fn four_cities_use_sixteen_variables() {
        let t = TspInstance::random_euclidean(4, 1).unwrap();
        let q = encode_tsp(&t, default_penalty(&t)).unwrap();
        assert_eq!(q.num_vars(), 16);
    }

    #[test]
    fn two_city_tours_cost_twice_the_distance() {
        let t = TspInstance::new(vec![vec![0.0, 5.0], vec![5.0, 0.0]]).unwrap();
        let q = encode_tsp(&t, default_penalty(&t)).unwrap();
        for order in [[0, 1], [1, 0]] {
            assert_eq!(q.value(&permutation_bits(&order)).unwrap(), 10.0);
        }
    }

    #[test]
    fn three_city_permutations_match_brute_force_tours() {
        let t = TspInstance::new(vec![
            vec![0.0, 3.0, 7.5],
            vec![2.0, 0.0, 4.0],
            vec![6.0, 1.5, 0.0],
        ])
        .unwrap();
        let q = encode_tsp(&t, 100.0).unwrap();
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        for order in perms {
            let brute: f64 = (0..3)
                .map(|p| t.distances()[order[p]][order[(p + 1) % 3]])
                .sum();
            assert!((q.value(&permutation_bits(&order)).unwrap() - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(TspInstance::new(vec![vec![0.0, 1.0]]).is_err());
        assert!(TspInstance::new(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).is_err());
        assert!(TspInstance::new(vec![vec![1.0, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(TspInstance::new(vec![vec![0.0, f64::INFINITY], vec![1.0, 0.0]]).is_err());
        let t = TspInstance::new(vec![vec![0.0]]).unwrap();
        assert!(encode_tsp(&t, 1.0).is_err());
        let t = TspInstance::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(encode_tsp(&t, 0.0).is_err());
    }

    #[test]
    fn penalty_makes_a_permutation_the_global_minimum() {
        for (n, seed) in [(2, 5), (3, 6), (3, 9), (4, 2)] {
            let t = TspInstance::random_euclidean(n, seed).unwrap();
            let q = encode_tsp(&t, default_penalty(&t)).unwrap();
            let best_tour = permutations(n)
                .iter()
                .map(|o| t.tour_length(o))
                .fold(f64::INFINITY, f64::min);
            let mut best = (f64::INFINITY, 0usize);
            for idx in 0..1usize << (n * n) {
                let v = q.value(&Bitstring::from_index(idx, n * n)).unwrap();
                if v < best.0 {
                    best = (v, idx);
                }
            }
            let bits = Bitstring::from_index(best.1, n * n);
            assert!(permutation_from_bits(&bits, n).is_some());
            assert!((best.0 - best_tour).abs() < 1e-9);
        }
    }

    #[test]
    fn permutation_bits_round_trip() {
        for order in permutations(4) {
            assert_eq!(
                permutation_from_bits(&permutation_bits(&order), 4),
                Some(order)
            );
        }
        assert_eq!(permutation_from_bits(&Bitstring::zeros(4), 2), None);
    }

    #[test]
    fn optimal_tour_of_a_square() {
        let t =
            TspInstance::from_coordinates(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)], false)
                .unwrap();
        let (order, len) = t.optimal_tour().unwrap();
        assert_eq!(order, vec![0, 1, 2, 3]);
        assert_eq!(len, 4.0);
        assert!(TspInstance::random_euclidean(11, 0)
            .unwrap()
            .optimal_tour()
            .is_none());
    }
}
