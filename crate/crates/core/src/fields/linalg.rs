//! Gaussian elimination over F_p.

use super::prime::{inv_mod, mul_mod, sub_mod};

/// Row-reduces `m` (rows of equal length) in place and returns the pivot
/// columns.
pub fn row_reduce(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = mul_mod(f, m[r][j], p);
                    m[i][j] = sub_mod(m[i][j], sub, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<u64>], p: u64) -> usize {
    let mut m = m.to_vec();
    row_reduce(&mut m, p).len()
}

/// One solution of `a · x = b`, with every free variable set to zero, or
/// `None` if the system is inconsistent.
pub fn solve(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi % p);
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, p);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_consistent_system() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let b = [6, 5, 2];
        let x = solve(&a, &b, 7).unwrap();
        for (row, &bi) in a.iter().zip(&b) {
            let lhs = row.iter().zip(&x).fold(0, |s, (&r, &xi)| (s + r * xi) % 7);
            assert_eq!(lhs, bi % 7);
        }
        assert_eq!(rank(&a, 7), 2);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![1, 1], vec![2, 2]];
        assert!(solve(&a, &[1, 3], 5).is_none());
    }
}
