//! Deterministic random inputs for the upcluster test suites: skew-symmetrizable
//! exchange matrices, seeds, Laurent polynomials, and the worked example seeds.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use upcluster_core::{ExchangeMatrix, ExponentVector, LaurentPoly, Seed};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape and entry bounds for random exchange matrices.
#[derive(Clone, Copy, Debug)]
pub struct MatrixShape {
    pub max_n: usize,
    pub max_m: usize,
    /// Bound on the absolute value of every entry.
    pub max_entry: i64,
    /// Symmetrizer entries are drawn from `1..=max_d`.
    pub max_d: u64,
}

impl Default for MatrixShape {
    fn default() -> Self {
        MatrixShape {
            max_n: 5,
            max_m: 2,
            max_entry: 3,
            max_d: 3,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A random exchange matrix whose principal part is skew-symmetrizable by a
/// random `d`: for `i < j` pick `k` and set `b_ij = k d_j / g`,
/// `b_ji = -k d_i / g` with `g = gcd(d_i, d_j)`.
pub fn random_matrix(rng: &mut impl Rng, shape: MatrixShape) -> ExchangeMatrix {
    let n = rng.gen_range(1..=shape.max_n);
    let m = rng.gen_range(0..=shape.max_m);
    random_matrix_of_size(rng, n, m, shape)
}

pub fn random_matrix_of_size(rng: &mut impl Rng, n: usize, m: usize, shape: MatrixShape) -> ExchangeMatrix {
    let d: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=shape.max_d)).collect();
    let mut b = vec![vec![0i64; n]; n + m];
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(d[i], d[j]);
            let (ri, rj) = ((d[j] / g) as i64, (d[i] / g) as i64);
            let k_max = shape.max_entry / ri.max(rj);
            let k = rng.gen_range(-k_max..=k_max);
            b[i][j] = k * ri;
            b[j][i] = -k * rj;
        }
    }
    for row in b.iter_mut().skip(n) {
        for entry in row.iter_mut() {
            *entry = rng.gen_range(-shape.max_entry..=shape.max_entry);
        }
    }
    ExchangeMatrix::new(n, m, b).expect("generated matrix is skew-symmetrizable")
}

/// A random matrix with full rank and no isolated index.
pub fn random_full_rank_matrix(rng: &mut impl Rng, shape: MatrixShape) -> ExchangeMatrix {
    loop {
        let b = random_matrix(rng, shape);
        if b.is_full_rank() {
            return b;
        }
    }
}

pub fn seed_of(matrix: ExchangeMatrix) -> Seed {
    Seed::initial(matrix, None).expect("default names")
}

/// A random seed reached from a random initial seed by a short random path.
pub fn random_seed(rng: &mut impl Rng, shape: MatrixShape, max_steps: usize) -> Seed {
    let initial = seed_of(random_matrix(rng, shape));
    random_walk(rng, &initial, max_steps)
}

pub fn random_walk(rng: &mut impl Rng, seed: &Seed, max_steps: usize) -> Seed {
    let steps = rng.gen_range(0..=max_steps);
    let mut current = seed.clone();
    let mut last = None;
    for _ in 0..steps {
        let choices: Vec<usize> = (0..current.n()).filter(|&i| Some(i) != last).collect();
        let Some(&i) = choices.choose(rng) else {
            break;
        };
        current = current.mutate(i).expect("mutation succeeds");
        last = Some(i);
    }
    current
}

pub fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Random Laurent polynomial with up to `max_terms` terms, exponents in
/// `[-max_exp, max_exp]` and small rational coefficients.
pub fn random_laurent(
    rng: &mut impl Rng,
    nvars: usize,
    max_terms: usize,
    max_exp: i64,
    rational: bool,
) -> LaurentPoly {
    let terms = rng.gen_range(0..=max_terms);
    let raw: Vec<(ExponentVector, BigRational)> = (0..terms)
        .map(|_| {
            let e = ExponentVector::new((0..nvars).map(|_| rng.gen_range(-max_exp..=max_exp)).collect());
            let numer = rng.gen_range(-9i64..=9);
            let denom = if rational { rng.gen_range(1i64..=4) } else { 1 };
            (e, BigRational::new(BigInt::from(numer), BigInt::from(denom)))
        })
        .collect();
    LaurentPoly::normalize(nvars, raw).expect("matching lengths")
}

/// Random nonzero Laurent polynomial with integer coefficients.
pub fn random_nonzero_laurent(rng: &mut impl Rng, nvars: usize, max_terms: usize, max_exp: i64) -> LaurentPoly {
    loop {
        let p = random_laurent(rng, nvars, max_terms.max(1), max_exp, false);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random monomial `c x^e` with exponents in `[-max_exp, max_exp]`.
pub fn random_term(rng: &mut impl Rng, nvars: usize, max_exp: i64, coefficients: &[i64]) -> LaurentPoly {
    let e = ExponentVector::new((0..nvars).map(|_| rng.gen_range(-max_exp..=max_exp)).collect());
    let c = *coefficients.choose(rng).expect("nonempty coefficient set");
    LaurentPoly::monomial(e, int(c))
}

/// A product of one to three cluster variables, exchange polynomials and
/// exchangeable variables, times a random frozen monomial. Every such
/// product lies in the upper cluster algebra.
pub fn random_upper_element(rng: &mut impl Rng, seed: &Seed) -> LaurentPoly {
    let nvars = seed.nvars();
    let mut u = LaurentPoly::one(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let factor = match rng.gen_range(0..3) {
            0 => {
                let reached = random_walk(rng, seed, 3);
                reached.cluster().choose(rng).expect("nonempty cluster").clone()
            }
            1 => seed
                .exchange_polynomial(rng.gen_range(0..seed.n()))
                .expect("exchangeable index"),
            _ => LaurentPoly::var(nvars, rng.gen_range(0..seed.n())),
        };
        u = &u * &factor;
    }
    let frozen: Vec<i64> = (0..nvars)
        .map(|k| if k < seed.n() { 0 } else { rng.gen_range(-2..=2) })
        .collect();
    u.shift(&ExponentVector::new(frozen))
}

/// Matrices of the worked examples.
pub mod examples {
    use super::*;

    fn build(n: usize, m: usize, rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(n, m, rows.iter().map(|r| r.to_vec()).collect()).expect("valid example")
    }

    pub fn a2() -> ExchangeMatrix {
        build(2, 0, &[&[0, 1], &[-1, 0]])
    }

    pub fn a3() -> ExchangeMatrix {
        build(3, 0, &[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])
    }

    pub fn markov() -> ExchangeMatrix {
        build(3, 0, &[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]])
    }

    /// Four exchangeable indices, symmetrizer `(2, 1, 1, 2)`.
    pub fn first() -> ExchangeMatrix {
        build(4, 0, &[&[0, -1, 0, 4], &[2, 0, 3, 6], &[0, -3, 0, 0], &[-4, -3, 0, 0]])
    }

    /// Skew-symmetric, all exchange polynomials irreducible.
    pub fn second() -> ExchangeMatrix {
        build(4, 0, &[&[0, 0, 1, -1], &[0, 0, -1, -1], &[-1, 1, 0, 1], &[1, 1, -1, 0]])
    }

    /// Markov quiver with one frozen vertex.
    pub fn third() -> ExchangeMatrix {
        build(3, 1, &[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0], &[2, 0, 0]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_matrices_respect_bounds() {
        let mut r = rng(7);
        for _ in 0..200 {
            let b = random_matrix(&mut r, MatrixShape::default());
            assert!(b.n() <= 5);
            assert!(b.rows().iter().flatten().all(|x| x.abs() <= 3));
        }
    }

    #[test]
    fn full_rank_generator() {
        let mut r = rng(8);
        for _ in 0..20 {
            assert!(random_full_rank_matrix(&mut r, MatrixShape { max_n: 3, ..Default::default() }).is_full_rank());
        }
    }
}
