//! Exchange matrices, matrix mutation, exact rank, and ice quivers.
//!
//! Indices are 0-based here; exchangeable indices are `0..n`, frozen ones
//! `n..n+m`. An exchange matrix is `(n+m) x n` with a skew-symmetrizable
//! principal part.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An `(n+m) x n` integer matrix whose top `n x n` block is skew-symmetrizable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    m: usize,
    entries: Vec<Vec<i64>>,
    symmetrizer: Vec<u64>,
}

/// Finds the minimal positive integers `d` with `d_i b_ij = -d_j b_ji` on the
/// principal part, normalized to gcd 1 on every connected component.
pub fn skew_symmetrizer(entries: &[Vec<i64>], n: usize, m: usize) -> Result<Vec<u64>> {
    check_shape(entries, n, m)?;
    let b = |i: usize, j: usize| entries[i][j];
    for i in 0..n {
        if b(i, i) != 0 {
            return Err(Error::NotSymmetrizable(format!("nonzero diagonal entry at {}", i + 1)));
        }
    }

    let mut ratio: Vec<Option<BigRational>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    for start in 0..n {
        if ratio[start].is_some() {
            continue;
        }
        ratio[start] = Some(BigRational::one());
        component[start] = components;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = ratio[i].clone().expect("assigned");
            for j in 0..n {
                if i == j || (b(i, j) == 0 && b(j, i) == 0) {
                    continue;
                }
                if b(i, j) == 0 || b(j, i) == 0 || b(i, j).signum() == b(j, i).signum() {
                    return Err(Error::NotSymmetrizable(format!(
                        "entries b[{}][{}] = {} and b[{}][{}] = {} violate the sign condition",
                        i + 1,
                        j + 1,
                        b(i, j),
                        j + 1,
                        i + 1,
                        b(j, i)
                    )));
                }
                // d_j = d_i * b_ij / (-b_ji)
                let dj = &di * BigRational::new(BigInt::from(b(i, j)), BigInt::from(-b(j, i)));
                match &ratio[j] {
                    None => {
                        ratio[j] = Some(dj);
                        component[j] = components;
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratios around index {}",
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        components += 1;
    }

    let mut d = vec![0u64; n];
    for c in 0..components {
        let members: Vec<usize> = (0..n).filter(|&i| component[i] == c).collect();
        let denom_lcm = members.iter().fold(BigInt::one(), |acc, &i| {
            acc.lcm(ratio[i].as_ref().expect("assigned").denom())
        });
        let scaled: Vec<BigInt> = members
            .iter()
            .map(|&i| (ratio[i].clone().expect("assigned") * &denom_lcm).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        for (&i, v) in members.iter().zip(&scaled) {
            d[i] = (v / &g)
                .to_u64()
                .ok_or_else(|| Error::NotSymmetrizable("symmetrizer overflow".into()))?;
        }
    }

    for i in 0..n {
        for j in 0..n {
            if d[i] as i128 * b(i, j) as i128 != -(d[j] as i128) * b(j, i) as i128 {
                return Err(Error::NotSymmetrizable(format!(
                    "constraint fails at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(d)
}

fn check_shape(entries: &[Vec<i64>], n: usize, m: usize) -> Result<()> {
    if entries.len() != n + m {
        return Err(Error::DimensionMismatch(format!(
            "expected {} rows, found {}",
            n + m,
            entries.len()
        )));
    }
    if let Some((r, row)) = entries.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "row {} has {} entries, expected {}",
            r + 1,
            row.len(),
            n
        )));
    }
    Ok(())
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    bareiss_rank(&mut a)
}

pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

impl ExchangeMatrix {
    pub fn new(n: usize, m: usize, entries: Vec<Vec<i64>>) -> Result<Self> {
        let symmetrizer = skew_symmetrizer(&entries, n, m)?;
        Ok(ExchangeMatrix {
            n,
            m,
            entries,
            symmetrizer,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.n + self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn symmetrizer(&self) -> &[u64] {
        &self.symmetrizer
    }

    fn check_exchangeable(&self, index: usize) -> Result<()> {
        if index >= self.n + self.m {
            return Err(Error::IndexOutOfRange {
                index,
                bound: self.n,
            });
        }
        if index >= self.n {
            return Err(Error::FrozenIndex { index });
        }
        Ok(())
    }

    /// Mutation in direction `i`.
    pub fn mutate(&self, i: usize) -> Result<ExchangeMatrix> {
        self.check_exchangeable(i)?;
        let b = &self.entries;
        let entries = (0..self.n + self.m)
            .map(|j| {
                (0..self.n)
                    .map(|k| {
                        if j == i || k == i {
                            -b[j][k]
                        } else {
                            let (bji, bik) = (b[j][i], b[i][k]);
                            b[j][k] + (bji.abs() * bik + bji * bik.abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ExchangeMatrix {
            n: self.n,
            m: self.m,
            entries,
            symmetrizer: self.symmetrizer.clone(),
        })
    }

    pub fn rank(&self) -> usize {
        integer_rank(&self.entries)
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entries[i][j] == -self.entries[j][i]))
    }

    /// Column `i` is zero, i.e. the exchange polynomial is the constant 2.
    pub fn is_isolated(&self, i: usize) -> bool {
        self.entries.iter().all(|row| row[i] == 0)
    }

    /// No directed cycle in the graph on exchangeable vertices with `i -> j`
    /// whenever `b_ij > 0`.
    pub fn is_acyclic(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.n;
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(w) = (*next..n).find(|&w| self.entries[v][w] > 0) {
                    *next = w + 1;
                    match mark[w] {
                        Mark::Active => return false,
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, 0));
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Relabels exchangeable indices: new index `k` is old index `perm[k]`.
    /// Frozen rows keep their positions.
    pub fn permute_exchangeable(&self, perm: &[usize]) -> ExchangeMatrix {
        let row_of = |k: usize| if k < self.n { perm[k] } else { k };
        let entries = (0..self.n + self.m)
            .map(|r| (0..self.n).map(|c| self.entries[row_of(r)][perm[c]]).collect())
            .collect();
        let symmetrizer = (0..self.n).map(|k| self.symmetrizer[perm[k]]).collect();
        ExchangeMatrix {
            n: self.n,
            m: self.m,
            entries,
            symmetrizer,
        }
    }

    /// The ice quiver `Gamma(B)`; requires a skew-symmetric principal part.
    pub fn to_quiver(&self) -> Result<IceQuiver> {
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let mut arrows = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > 0 {
                    arrows.push(Arrow {
                        from: i,
                        to: j,
                        multiplicity: v as u64,
                    });
                } else if v < 0 && i >= self.n {
                    arrows.push(Arrow {
                        from: j,
                        to: i,
                        multiplicity: (-v) as u64,
                    });
                }
            }
        }
        IceQuiver::new(self.n, self.m, arrows)
    }
}

/// `multiplicity` parallel arrows `from -> to` (0-based vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub multiplicity: u64,
}

/// A quiver with exchangeable vertices `0..n` and frozen vertices `n..n+m`.
///
/// Arrows are merged per ordered pair and sorted. No loops, no 2-cycles and
/// no arrows between two frozen vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IceQuiver {
    n: usize,
    m: usize,
    arrows: Vec<Arrow>,
}

impl IceQuiver {
    pub fn new(n: usize, m: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let total = n + m;
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for a in arrows {
            if a.from >= total || a.to >= total {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} -> {} leaves the vertex range 1..={}",
                    a.from + 1,
                    a.to + 1,
                    total
                )));
            }
            if a.from == a.to {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", a.from + 1)));
            }
            if a.from >= n && a.to >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow between frozen vertices {} and {}",
                    a.from + 1,
                    a.to + 1
                )));
            }
            if a.multiplicity > 0 {
                *merged.entry((a.from, a.to)).or_default() += a.multiplicity;
            }
        }
        if let Some(&(i, j)) = merged.keys().find(|&&(i, j)| merged.contains_key(&(j, i))) {
            return Err(Error::InvalidQuiver(format!(
                "2-cycle between vertices {} and {}",
                i + 1,
                j + 1
            )));
        }
        let arrows = merged
            .into_iter()
            .map(|((from, to), multiplicity)| Arrow {
                from,
                to,
                multiplicity,
            })
            .collect();
        Ok(IceQuiver { n, m, arrows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `b_ij = #(i -> j) - #(j -> i)`.
    pub fn to_matrix(&self) -> Result<ExchangeMatrix> {
        let mut entries = vec![vec![0i64; self.n]; self.n + self.m];
        for a in &self.arrows {
            let k = a.multiplicity as i64;
            if a.to < self.n {
                entries[a.from][a.to] += k;
            }
            if a.from < self.n {
                entries[a.to][a.from] -= k;
            }
        }
        ExchangeMatrix::new(self.n, self.m, entries)
    }
}
