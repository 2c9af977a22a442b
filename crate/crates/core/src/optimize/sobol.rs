const BITS: usize = 32;

fn direction_numbers() -> [[u32; BITS]; 2] {
    let mut v = [[0u32; BITS]; 2];
    // dimension 1: van der Corput
    for (k, d) in v[0].iter_mut().enumerate() {
        *d = 1 << (31 - k);
    }
    // dimension 2: primitive polynomial x + 1, m_1 = 1
    v[1][0] = 1 << 31;
    for k in 1..BITS {
        v[1][k] = v[1][k - 1] ^ (v[1][k - 1] >> 1);
    }
    v
}

/// First `n` points of the two-dimensional Sobol sequence in Gray-code order,
/// starting at index 1 (the origin is skipped). Deterministic.
pub fn sobol_2d(n: usize) -> Vec<[f64; 2]> {
    let v = direction_numbers();
    let scale = 1.0 / (1u64 << 32) as f64;
    let mut x = [0u32; 2];
    let mut out = Vec::with_capacity(n);
    // index i in Gray order differs from i - 1 in bit trailing_zeros(i)
    for i in 1..=n as u64 {
        let k = i.trailing_zeros() as usize;
        x[0] ^= v[0][k];
        x[1] ^= v[1][k];
        out.push([x[0] as f64 * scale, x[1] as f64 * scale]);
    }
    out
}
