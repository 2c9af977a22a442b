use crate::error::{Error, Result};

/// Exact minimum-cost perfect assignment on a square matrix (Hungarian
/// method with potentials, `O(n^3)`). Returns `row -> column` and the cost.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Result<(Vec<usize>, f64)> {
    let n = cost.len();
    if let Some(row) = cost.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: row.len(),
        });
    }
    if cost.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::InvalidConfig(
            "assignment costs must be finite".into(),
        ));
    }
    if n == 0 {
        return Ok((Vec::new(), 0.0));
    }
    // 1-based arrays; column 0 is the virtual start
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        assign[owner[j] - 1] = j - 1;
    }
    let total = assign.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    Ok((assign, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(cost: &[Vec<f64>]) -> f64 {
        fn rec(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == cost.len() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..cost.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row][j] + rec(cost, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(cost, 0, &mut vec![false; cost.len()])
    }

    #[test]
    fn small_known_case() {
        let c = vec![
            vec![4.0, 1.0, 3.0],
            vec![2.0, 0.0, 5.0],
            vec![3.0, 2.0, 2.0],
        ];
        let (a, total) = min_cost_assignment(&c).unwrap();
        assert_eq!(a, vec![1, 0, 2]);
        assert_eq!(total, 5.0);
    }

    #[test]
    fn rejects_ragged() {
        assert!(min_cost_assignment(&[vec![1.0, 2.0], vec![1.0]]).is_err());
        assert_eq!(min_cost_assignment(&[]).unwrap().1, 0.0);
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(n in 1usize..6, seed in proptest::collection::vec(-10i32..10, 36)) {
            let cost: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| seed[i * 6 + j] as f64).collect())
                .collect();
            let (a, total) = min_cost_assignment(&cost).unwrap();
            let mut cols = a.clone();
            cols.sort_unstable();
            prop_assert_eq!(cols, (0..n).collect::<Vec<_>>());
            prop_assert!((total - brute(&cost)).abs() < 1e-9);
        }
    }
}
