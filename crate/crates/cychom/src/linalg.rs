//! Integer matrix diagonalization and linear solving modulo a composite `m`.
//!
//! The additive endomorphisms handled here (`T`, `N`, multiplication by an
//! integer) act on free `Z/m`-modules of tiny rank, so a full Smith-style
//! diagonalization `U A V = D` over `Z` is cheap and sidesteps the zero
//! divisors of composite moduli: solving and kernel extraction decouple into
//! scalar congruences `d_i y_i = c_i (mod m)`.

use num_integer::Integer;

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal (the diagonal need
/// not form a divisibility chain; any diagonal form suffices here).
pub struct Diagonalized {
    pub diag: Vec<i128>,
    pub left: Vec<Vec<i128>>,  // rows x rows
    pub right: Vec<Vec<i128>>, // cols x cols
    pub rows: usize,
    pub cols: usize,
}

pub fn diagonalize(mut a: Vec<Vec<i128>>) -> Diagonalized {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut left = identity(rows);
    let mut right = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Pivot: the nonzero entry of smallest magnitude in the submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(a, left, right, rows, cols);
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        left[i][j] -= q * left[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                        right[i][j] -= q * right[i][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    finish(a, left, right, rows, cols)
}

fn finish(
    a: Vec<Vec<i128>>,
    left: Vec<Vec<i128>>,
    right: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
) -> Diagonalized {
    let diag = (0..rows.min(cols)).map(|i| a[i][i]).collect();
    Diagonalized {
        diag,
        left,
        right,
        rows,
        cols,
    }
}

fn identity(k: usize) -> Vec<Vec<i128>> {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<i128>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

fn mat_vec(a: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = i128::from(a).extended_gcd(&i128::from(m));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(i128::from(m)) as u64)
}

/// One solution of `A x = b (mod m)`, if any.
pub fn solve_mod(a: &[Vec<i128>], b: &[i128], m: u64) -> Option<Vec<u64>> {
    let d = diagonalize(a.to_vec());
    let c = mat_vec(&d.left, b);
    let mm = i128::from(m);
    let mut y = vec![0i128; d.cols];
    for i in 0..d.cols {
        let di = if i < d.diag.len() { d.diag[i] } else { 0 };
        let dp = di.rem_euclid(mm) as u64;
        let cp = if i < d.rows { c[i].rem_euclid(mm) as u64 } else { 0 };
        if dp == 0 {
            if cp != 0 {
                return None;
            }
        } else {
            let g = dp.gcd(&m);
            if cp % g != 0 {
                return None;
            }
            let inv = mod_inverse(dp / g, m / g)?;
            y[i] = i128::from((cp / g) % (m / g) * inv % (m / g));
        }
    }
    for i in d.cols..d.rows {
        if c[i].rem_euclid(mm) != 0 {
            return None;
        }
    }
    let x = mat_vec(&d.right, &y);
    Some(x.into_iter().map(|v| v.rem_euclid(mm) as u64).collect())
}

/// Generators of the kernel of `A (mod m)` as a subgroup of `(Z/m)^cols`.
pub fn kernel_gens_mod(a: &[Vec<i128>], m: u64) -> Vec<Vec<u64>> {
    let d = diagonalize(a.to_vec());
    let mm = i128::from(m);
    let mut gens = Vec::new();
    for j in 0..d.cols {
        let dj = if j < d.diag.len() { d.diag[j] } else { 0 };
        let dp = dj.rem_euclid(mm) as u64;
        let scale = if dp == 0 {
            1
        } else {
            let g = dp.gcd(&m);
            if g == 1 {
                continue; // y_j must be 0 mod m
            }
            m / g
        };
        let gen: Vec<u64> = (0..d.cols)
            .map(|i| (d.right[i][j] * i128::from(scale)).rem_euclid(mm) as u64)
            .collect();
        if gen.iter().any(|&v| v != 0) {
            gens.push(gen);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn apply(a: &[Vec<i128>], x: &[u64], m: u64) -> Vec<u64> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .map(|(&c, &v)| c.rem_euclid(m as i128) as u64 * v % m)
                    .sum::<u64>()
                    % m
            })
            .collect()
    }

    fn all_vectors(dim: usize, m: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn brute_kernel(a: &[Vec<i128>], m: u64) -> BTreeSet<Vec<u64>> {
        let cols = a[0].len();
        all_vectors(cols, m)
            .into_iter()
            .filter(|x| apply(a, x, m).iter().all(|&v| v == 0))
            .collect()
    }

    fn closure(gens: &[Vec<u64>], dim: usize, m: u64) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; dim]);
        let mut stack: Vec<Vec<u64>> = vec![vec![0; dim]];
        while let Some(v) = stack.pop() {
            for g in gens {
                let w: Vec<u64> = v.iter().zip(g).map(|(&x, &y)| (x + y) % m).collect();
                if set.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        set
    }

    // Oracle: exhaustive enumeration over (Z/m)^dim for small cases.
    #[test]
    fn solve_and_kernel_match_brute_force() {
        let cases: Vec<(Vec<Vec<i128>>, u64)> = vec![
            (vec![vec![2, 0], vec![0, 2]], 4),
            (vec![vec![2, 1], vec![1, 2]], 4),
            (vec![vec![3, 1], vec![0, 3]], 6),
            (vec![vec![1, 1], vec![1, 1]], 2),
            (vec![vec![0, 0], vec![0, 0]], 3),
            (vec![vec![4, 2, 0], vec![2, 4, 2], vec![0, 2, 4]], 6),
        ];
        for (a, m) in cases {
            let cols = a[0].len();
            let ker = brute_kernel(&a, m);
            let gens = kernel_gens_mod(&a, m);
            assert_eq!(closure(&gens, cols, m), ker, "kernel mismatch mod {m}");
            for b in all_vectors(a.len(), m) {
                let bi: Vec<i128> = b.iter().map(|&v| v as i128).collect();
                let solvable = all_vectors(cols, m).iter().any(|x| apply(&a, x, m) == b);
                match solve_mod(&a, &bi, m) {
                    Some(x) => {
                        assert!(solvable);
                        assert_eq!(apply(&a, &x, m), b, "bad solution mod {m}");
                    }
                    None => assert!(!solvable, "missed solution of {b:?} mod {m}"),
                }
            }
        }
    }

    #[test]
    fn scalar_congruence() {
        // 2x = 1 mod 5 has x = 3
        let a = vec![vec![2]];
        assert_eq!(solve_mod(&a, &[1], 5), Some(vec![3]));
        // 2x = 1 mod 4 has no solution
        assert_eq!(solve_mod(&a, &[1], 4), None);
    }
}
