//! Brute-force counts used as independent checks of closed formulas.

use num_bigint::BigUint;
use schubert_core::exterior::schur_dim;

/// Number of semistandard tableaux of shape `lambda` with entries in `1..=d`.
fn ssyt_count(lambda: &[usize], d: usize) -> u64 {
    let cells: Vec<(usize, usize)> = lambda.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
    let mut fill = vec![vec![0usize; lambda.first().copied().unwrap_or(0)]; lambda.len()];
    fn go(i: usize, cells: &[(usize, usize)], fill: &mut [Vec<usize>], d: usize) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { fill[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo_row.max(lo_col)..=d {
            fill[r][c] = v;
            total += go(i + 1, cells, fill, d);
        }
        total
    }
    go(0, &cells, &mut fill, d)
}

#[test]
fn schur_dim_matches_tableau_count() {
    let shapes: &[&[usize]] = &[&[], &[1], &[2], &[1, 1], &[2, 1], &[3, 1], &[2, 2], &[3, 2, 1], &[4, 4, 2, 2], &[3, 3, 3], &[2, 2, 1, 1]];
    for d in 1..=5 {
        for &s in shapes {
            if s.len() > d {
                assert_eq!(ssyt_count(s, d), 0);
                assert!(schur_dim(s, d).is_err());
                continue;
            }
            assert_eq!(schur_dim(s, d).unwrap(), BigUint::from(ssyt_count(s, d)), "{s:?} d={d}");
        }
    }
}

#[test]
fn regression_4422_in_four_variables() {
    assert_eq!(ssyt_count(&[4, 4, 2, 2], 4), 20);
    assert_eq!(schur_dim(&[4, 4, 2, 2], 4).unwrap(), BigUint::from(20u32));
}
