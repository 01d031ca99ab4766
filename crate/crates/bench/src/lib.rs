//! Shared fixtures for the benchmarks.

use arithpoints_core::superelliptic::SuperellipticCurve;
use arithpoints_core::{IntMatrix, Origami};

/// Deterministic dense `n × n` matrix with small entries and full rank.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = ((i * 7 + j * 13 + i * j * 5) % 19) as i64 - 9;
                    if i == j { x + 20 } else { x }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).expect("rectangular")
}

/// Staircase origami with `n` squares: `h` and `v` alternate transpositions.
pub fn staircase(n: usize) -> Origami {
    let pairs = |start: usize| {
        (start..n)
            .step_by(2)
            .filter(|&i| i + 1 < n)
            .map(|i| format!("({},{})", i + 1, i + 2))
            .collect::<String>()
    };
    format!("n={n}; h={}; v={}", pairs(0), pairs(1))
        .parse()
        .expect("valid staircase")
}

pub fn curve(s: &str) -> SuperellipticCurve {
    s.parse().expect("valid curve")
}
