//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

/// Invariant factors of an integer matrix given by rows. All rows must have
/// the same length; an empty matrix has rank 0.
pub fn smith_normal_form(rows: &[Vec<BigInt>]) -> SmithNormalForm {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();

    for t in 0..nrows.min(ncols) {
        // Smallest nonzero entry of the trailing block as pivot.
        let Some((pr, pc)) = (t..nrows)
            .flat_map(|r| (t..ncols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].abs().cmp(&a[r2][c2].abs()))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut changed = false;
            for r in t + 1..nrows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                let pivot = a[t].clone();
                for (x, p) in a[r][t..].iter_mut().zip(&pivot[t..]) {
                    *x -= p * &q;
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    changed = true;
                }
            }
            for c in t + 1..ncols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Pivot must divide the whole trailing block; otherwise fold the
            // offending row into the pivot row and repeat.
            let offending = (t + 1..nrows)
                .find(|&r| (t + 1..ncols).any(|c| !(&a[r][c] % &a[t][t]).is_zero()));
            match offending {
                Some(r) => {
                    let row = a[r].clone();
                    for (x, v) in a[t][t..].iter_mut().zip(&row[t..]) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }

    // Enforce the divisibility chain.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = if g.is_zero() {
                BigInt::zero()
            } else {
                &diag[i] / &g * &diag[j]
            };
            diag[i] = g;
            diag[j] = l;
        }
    }
    let rank = diag.len();
    debug_assert!(diag.iter().all(|d| d >= &BigInt::one()));
    SmithNormalForm {
        invariant_factors: diag,
        rank,
    }
}
