use serde::{Deserialize, Serialize};

use crate::model::IsingModel;

/// How two-qubit gates are counted for the compound error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateCountMode {
    /// One native ZZ rotation per coupling.
    Logical,
    /// Two controlled-NOTs per coupling.
    #[default]
    Cnot,
    /// Controlled-NOT count on a linear chain, with three per inserted swap.
    RoutedLine,
}

impl GateCountMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            GateCountMode::Logical => "logical",
            GateCountMode::Cnot => "cnot",
            GateCountMode::RoutedLine => "routed_line",
        }
    }
}

impl std::str::FromStr for GateCountMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "logical" => Ok(GateCountMode::Logical),
            "cnot" => Ok(GateCountMode::Cnot),
            "routed_line" | "routed-line" => Ok(GateCountMode::RoutedLine),
            other => Err(format!("unknown gate count mode '{other}'")),
        }
    }
}

pub fn estimate_two_qubit_gates(m: &IsingModel, mode: GateCountMode) -> u64 {
    let edges = m.edge_count() as u64;
    match mode {
        GateCountMode::Logical => edges,
        GateCountMode::Cnot => 2 * edges,
        GateCountMode::RoutedLine => 2 * edges + 3 * line_swaps(m),
    }
}

/// Couplings are visited in sorted order; the first endpoint walks toward the
/// second by adjacent transpositions and the layout carries over.
fn line_swaps(m: &IsingModel) -> u64 {
    let n = m.num_spins();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut at: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    for &(i, j, _) in m.couplings() {
        while pos[i].abs_diff(pos[j]) > 1 {
            let from = pos[i];
            let to = if pos[j] > from { from + 1 } else { from - 1 };
            let other = at[to];
            at.swap(from, to);
            pos[i] = to;
            pos[other] = from;
            swaps += 1;
        }
    }
    swaps
}

/// Logical layer count: one Hadamard layer, the greedy edge colouring of the
/// coupling graph, one field layer when fields exist, one mixer layer.
pub fn depth_estimate(m: &IsingModel) -> u64 {
    let n = m.num_spins();
    let mut used: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut colours = 0usize;
    for &(i, j, _) in m.couplings() {
        let c = (0..)
            .find(|&c| {
                !used[i].get(c).copied().unwrap_or(false)
                    && !used[j].get(c).copied().unwrap_or(false)
            })
            .expect("unbounded search");
        for v in [i, j] {
            if used[v].len() <= c {
                used[v].resize(c + 1, false);
            }
            used[v][c] = true;
        }
        colours = colours.max(c + 1);
    }
    2 + colours as u64 + u64::from(m.has_fields())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{encode_maxcut, MaxCutInstance};

    #[test]
    fn path_needs_no_swaps() {
        let m = encode_maxcut(&MaxCutInstance::path(7).unwrap()).unwrap();
        assert_eq!(estimate_two_qubit_gates(&m, GateCountMode::RoutedLine), 12);
        assert_eq!(estimate_two_qubit_gates(&m, GateCountMode::Cnot), 12);
        assert_eq!(estimate_two_qubit_gates(&m, GateCountMode::Logical), 6);
    }

    #[test]
    fn one_long_coupling_needs_one_swap() {
        let m = IsingModel::new(3, vec![(0, 2, 1.0)], vec![], 0.0).unwrap();
        assert_eq!(estimate_two_qubit_gates(&m, GateCountMode::RoutedLine), 5);
    }

    #[test]
    fn layout_persists_between_couplings() {
        // after moving 0 next to 3 the chain reads 1 2 0 3, so (1, 2) stays adjacent
        let m = IsingModel::new(4, vec![(0, 3, 1.0), (1, 2, 1.0)], vec![], 0.0).unwrap();
        assert_eq!(line_swaps(&m), 2);
        // chain 1 2 0 3 again, then 1 walks two steps to sit beside 3
        let m = IsingModel::new(4, vec![(0, 3, 1.0), (1, 3, 1.0)], vec![], 0.0).unwrap();
        assert_eq!(line_swaps(&m), 2 + 2);
    }

    #[test]
    fn cnot_is_twice_logical() {
        for seed in 0..10 {
            let g = MaxCutInstance::random_gnp(9, 0.4, seed).unwrap();
            let m = encode_maxcut(&g).unwrap();
            let logical = estimate_two_qubit_gates(&m, GateCountMode::Logical);
            assert_eq!(
                estimate_two_qubit_gates(&m, GateCountMode::Cnot),
                2 * logical
            );
            assert!(estimate_two_qubit_gates(&m, GateCountMode::RoutedLine) >= 2 * logical);
        }
    }

    #[test]
    fn depth_of_small_graphs() {
        // odd ring needs three colours
        let ring = encode_maxcut(&MaxCutInstance::ring(5).unwrap()).unwrap();
        assert_eq!(depth_estimate(&ring), 2 + 3);
        let path = encode_maxcut(&MaxCutInstance::path(6).unwrap()).unwrap();
        assert_eq!(depth_estimate(&path), 2 + 2);
        let fields = IsingModel::new(2, vec![], vec![(0, 1.0)], 0.0).unwrap();
        assert_eq!(depth_estimate(&fields), 3);
    }

    #[test]
    fn mode_names_round_trip() {
        for mode in [
            GateCountMode::Logical,
            GateCountMode::Cnot,
            GateCountMode::RoutedLine,
        ] {
            assert_eq!(mode.as_str().parse::<GateCountMode>().unwrap(), mode);
        }
    }
}
