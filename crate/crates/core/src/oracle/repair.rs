use super::min_cost_assignment;
use crate::error::{Error, Result};
use crate::model::{permutation_bits, Bitstring};

/// Projects an `n*n` one-hot bitstring onto the closest permutation matrix in
/// Hamming distance. Among equally close matrices the lexicographically
/// smallest assignment (row `i` to column `sigma(i)`) wins.
pub fn repair_tsp(bits: &Bitstring, n: usize) -> Result<Bitstring> {
    Ok(permutation_bits(&repaired_tour(bits, n)?))
}

/// The assignment behind [`repair_tsp`]: `order[p]` is the city at position
/// `p`, with variable `i*n + p` meaning "city `i` at position `p`".
pub fn repaired_tour(bits: &Bitstring, n: usize) -> Result<Vec<usize>> {
    if bits.len() != n * n {
        return Err(Error::LengthMismatch {
            expected: n * n,
            actual: bits.len(),
        });
    }
    // maximizing overlap minimizes distance
    let cost: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|p| -(bits.get(i * n + p) as f64)).collect())
        .collect();
    let (_, best) = min_cost_assignment(&cost)?;
    let mut city_pos = vec![usize::MAX; n];
    let mut free_cols: Vec<usize> = (0..n).collect();
    let mut fixed_cost = 0.0;
    for row in 0..n {
        let rest_rows: Vec<usize> = (row + 1..n).collect();
        let chosen = free_cols
            .iter()
            .copied()
            .find(|&col| {
                let rest_cols: Vec<usize> =
                    free_cols.iter().copied().filter(|&c| c != col).collect();
                let sub: Vec<Vec<f64>> = rest_rows
                    .iter()
                    .map(|&r| rest_cols.iter().map(|&c| cost[r][c]).collect())
                    .collect();
                let rest = min_cost_assignment(&sub)
                    .map(|(_, v)| v)
                    .unwrap_or(f64::INFINITY);
                fixed_cost + cost[row][col] + rest <= best + 0.5
            })
            .expect("an optimal completion always exists");
        fixed_cost += cost[row][chosen];
        city_pos[row] = chosen;
        free_cols.retain(|&c| c != chosen);
    }
    let mut order = vec![0; n];
    for (city, &pos) in city_pos.iter().enumerate() {
        order[pos] = city;
    }
    Ok(order)
}
