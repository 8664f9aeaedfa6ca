//! Fixtures shared by the benchmarks.

use redinv::IntMatrix;

/// Deterministic dense `n x n` integer matrix with entries in `-5..=5`.
pub fn sample_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 11) as i64 - 5
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows_with_cols(&rows, n)
}
