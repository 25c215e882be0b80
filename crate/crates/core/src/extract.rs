//! Offset-free Toeplitz hashing as an F2-linear strong seeded extractor.
//!
//! A key of shape `N -> m` is the diagonal sequence `diag` of length `N + m - 1` of the
//! Toeplitz matrix `T[i][j] = diag[i - j + N - 1]`. For `z != 0`, `T z` is uniform over
//! the key, so the family is 2-universal and every `Ext(., key)` is linear.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bits::Bits;
use crate::gf2core::LinearRow;
use crate::rate::Rate;
use crate::rng::{seeded, trial_seed, Rng};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("bad key dimensions N={n} m={m}")]
    BadDims { n: usize, m: usize },
    #[error("diagonal has length {found}, expected {expected}")]
    BadDiagonal { expected: usize, found: usize },
    #[error("expected input of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("key space 2^{bits} exceeds the exhaustive budget 2^{limit}")]
    BudgetExceeded { bits: usize, limit: usize },
    #[error("source support is empty")]
    EmptySupport,
    #[error("at least {min} trials required, got {found}")]
    TooFewTrials { min: u64, found: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtractorKey {
    n: usize,
    m: usize,
    diag: Bits,
}

impl ExtractorKey {
    pub fn new(n: usize, m: usize, diag: Bits) -> Result<Self, ExtractError> {
        if n == 0 || m > n {
            return Err(ExtractError::BadDims { n, m });
        }
        let expected = n + m - 1;
        if diag.len() != expected {
            return Err(ExtractError::BadDiagonal {
                expected,
                found: diag.len(),
            });
        }
        Ok(ExtractorKey { n, m, diag })
    }

    /// Input length `N`.
    pub fn input_len(&self) -> usize {
        self.n
    }

    /// Output length `m`.
    pub fn output_len(&self) -> usize {
        self.m
    }

    pub fn diag(&self) -> &Bits {
        &self.diag
    }

    /// Key length `N + m - 1`.
    pub fn seed_len(&self) -> usize {
        self.diag.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.diag.get(i + self.n - 1 - j)
    }

    /// Row `i` of the matrix as a bit string of length `N`.
    pub fn row(&self, i: usize) -> Bits {
        (0..self.n).map(|j| self.entry(i, j)).collect()
    }
}

/// Parameters of the leftover-hash-lemma instantiation for output length `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LhlParams {
    pub m: usize,
    /// Minimum input length `3m + 3`.
    pub n_min: usize,
    /// Minimum seed length `2 * n_min`.
    pub d_min: usize,
    /// Min-entropy `N - 1` at `N = n_min`.
    pub k: usize,
    /// Error `2^-eps_exp`, with `eps_exp = m + 1`.
    pub eps_exp: u32,
}

pub fn lhl_params(m: usize) -> LhlParams {
    let n_min = 3 * m + 3;
    LhlParams {
        m,
        n_min,
        d_min: 2 * n_min,
        k: n_min - 1,
        eps_exp: m as u32 + 1,
    }
}

pub fn sample_key(n: usize, m: usize, seed: u64) -> Result<ExtractorKey, ExtractError> {
    let mut rng = seeded(seed);
    sample_key_with(n, m, &mut rng)
}

pub fn sample_key_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<ExtractorKey, ExtractError> {
    if n == 0 || m > n {
        return Err(ExtractError::BadDims { n, m });
    }
    ExtractorKey::new(n, m, Bits::random(n + m - 1, rng))
}

pub fn toeplitz_apply(key: &ExtractorKey, y: &Bits) -> Result<Bits, ExtractError> {
    if y.len() != key.n {
        return Err(ExtractError::LengthMismatch {
            expected: key.n,
            found: y.len(),
        });
    }
    Ok((0..key.m).map(|i| key.row(i).dot(y)).collect())
}

/// Row `i` selects `{j : diag[i - j + N - 1] = 1}`; all constants are 0.
pub fn key_to_xor_rows(key: &ExtractorKey) -> Vec<LinearRow> {
    (0..key.m)
        .map(|i| LinearRow::new((0..key.n).filter(|&j| key.entry(i, j)), false))
        .collect()
}

/// Largest key length `N + m - 1` that [`universality_scan`] enumerates.
pub const UNIVERSALITY_KEY_BITS: usize = 16;

/// `max_{y != y'} Pr_key[T y = T y']`, computed exactly over all `2^(N+m-1)` keys.
///
/// By linearity the collision event for `(y, y')` is `T z = 0` with `z = y xor y'`, so
/// the maximum is taken over nonzero `z`.
pub fn universality_scan(n: usize, m: usize) -> Result<Rate, ExtractError> {
    if n == 0 || m == 0 || m > n {
        return Err(ExtractError::BadDims { n, m });
    }
    let bits = n + m - 1;
    if bits > UNIVERSALITY_KEY_BITS {
        return Err(ExtractError::BudgetExceeded {
            bits,
            limit: UNIVERSALITY_KEY_BITS,
        });
    }
    let keys: Vec<ExtractorKey> = (0..1u64 << bits)
        .map(|v| ExtractorKey::new(n, m, Bits::from_lex_index(v, bits)).expect("dims checked"))
        .collect();
    let mut worst = 0u64;
    for zi in 1..(1u64 << n) {
        let z = Bits::from_lex_index(zi, n);
        let hits = keys
            .iter()
            .filter(|k| toeplitz_apply(k, &z).expect("length checked").is_zero())
            .count() as u64;
        worst = worst.max(hits);
    }
    Ok(Rate::new(worst, 1 << bits))
}

/// Minimum number of trials accepted by [`extraction_distance_estimate`].
pub const MIN_TRIALS: u64 = 10_000;
/// Samples drawn per key, as a multiple of the output space size `2^m`.
pub const SAMPLES_PER_OUTPUT_CELL: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceEstimate {
    /// Estimated distance of `(key, Ext(X, key))` from `(key, U_m)`.
    pub distance: Rate,
    pub keys: u64,
    /// Batch size; the last batch may be smaller.
    pub samples_per_key: u64,
    trials: u64,
}

impl DistanceEstimate {
    pub fn trials(&self) -> u64 {
        self.trials
    }
}

/// Per-key output distance `1/2 sum_z |count_z / total - 2^-m|`, scaled to a common
/// denominator: returns `sum_z |count_z * 2^m - total|`; divide by `2 * total * 2^m`.
fn scaled_l1(counts: &[u64], total: u64) -> u64 {
    let cells = counts.len() as u64;
    counts.iter().map(|&c| (c * cells).abs_diff(total)).sum()
}

/// Statistical distance of `(key, Ext(X, key))` from `(key, uniform)` for the flat source
/// `X` on `support`, estimated from `trials` samples.
///
/// The distance decomposes as the mean over keys of the per-key output distance. Trials
/// are split into batches of at most `512 * 2^m` samples (the last batch takes the
/// remainder); each batch draws one key (seeded with `seed + batch`) and plugs its
/// empirical output histogram into the per-key distance. The result is the exact mean of
/// those plug-in values, weighted by batch size.
pub fn extraction_distance_estimate(
    n: usize,
    m: usize,
    support: &[Bits],
    trials: u64,
    seed: u64,
) -> Result<DistanceEstimate, ExtractError> {
    if support.is_empty() {
        return Err(ExtractError::EmptySupport);
    }
    if trials < MIN_TRIALS {
        return Err(ExtractError::TooFewTrials {
            min: MIN_TRIALS,
            found: trials,
        });
    }
    if n == 0 || m > n || m >= 32 {
        return Err(ExtractError::BadDims { n, m });
    }
    if let Some(bad) = support.iter().find(|x| x.len() != n) {
        return Err(ExtractError::LengthMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let cells = 1u64 << m;
    let per_key = trials.min(SAMPLES_PER_OUTPUT_CELL * cells);
    let keys = trials.div_ceil(per_key);
    let mut numerator = 0u64;
    let mut counts = vec![0u64; cells as usize];
    for k in 0..keys {
        let batch = per_key.min(trials - k * per_key);
        let mut rng = seeded(trial_seed(seed, k));
        let key = sample_key_with(n, m, &mut rng)?;
        let rows: Vec<Bits> = (0..m).map(|i| key.row(i)).collect();
        counts.iter_mut().for_each(|c| *c = 0);
        for _ in 0..batch {
            let x = &support[rng.random_range(0..support.len())];
            let z = rows
                .iter()
                .fold(0usize, |acc, r| (acc << 1) | r.dot(x) as usize);
            counts[z] += 1;
        }
        numerator += scaled_l1(&counts, batch);
    }
    Ok(DistanceEstimate {
        distance: Rate::new(numerator, 2 * cells * trials),
        keys,
        samples_per_key: per_key,
        trials,
    })
}

/// Exact output distance of `Ext(X, key)` from uniform for the flat source on `support`.
pub fn exact_key_distance(key: &ExtractorKey, support: &[Bits]) -> Result<Rate, ExtractError> {
    if support.is_empty() {
        return Err(ExtractError::EmptySupport);
    }
    let cells = 1usize << key.m;
    let mut counts = vec![0u64; cells];
    for x in support {
        let z = toeplitz_apply(key, x)?.to_lex_index().expect("m < 64") as usize;
        counts[z] += 1;
    }
    let total = support.len() as u64;
    Ok(Rate::new(
        scaled_l1(&counts, total),
        2 * total * cells as u64,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense matrix-vector product written directly from the Toeplitz definition.
    fn dense_apply(diag: &[bool], n: usize, m: usize, y: &[bool]) -> Vec<bool> {
        let mut t = vec![vec![false; n]; m];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = diag[(i as isize - j as isize + n as isize - 1) as usize];
            }
        }
        t.iter()
            .map(|row| row.iter().zip(y).filter(|(a, b)| **a && **b).count() % 2 == 1)
            .collect()
    }

    #[test]
    fn lhl_parameters() {
        let p = lhl_params(3);
        assert_eq!((p.n_min, p.d_min, p.eps_exp), (12, 24, 4));
        assert_eq!(lhl_params(1).n_min, 6);
        assert!((1..20).all(|m| lhl_params(m + 1).n_min > lhl_params(m).n_min));
    }

    #[test]
    fn hand_matvec() {
        let key = ExtractorKey::new(2, 1, Bits::from_bit_str("10").unwrap()).unwrap();
        assert_eq!(key.row(0).to_string(), "01");
        assert_eq!(
            toeplitz_apply(&key, &Bits::from_bit_str("11").unwrap())
                .unwrap()
                .to_string(),
            "1"
        );
        assert!(toeplitz_apply(&key, &Bits::zeros(2)).unwrap().is_zero());
        assert_eq!(
            toeplitz_apply(&key, &Bits::zeros(3)),
            Err(ExtractError::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn agrees_with_dense_oracle() {
        let mut rng = seeded(9);
        for _ in 0..10_000 {
            let n = rng.random_range(1..24);
            let m = rng.random_range(0..=n);
            let key = sample_key_with(n, m, &mut rng).unwrap();
            let y = Bits::random(n, &mut rng);
            let expect = dense_apply(&key.diag().to_bools(), n, m, &y.to_bools());
            assert_eq!(toeplitz_apply(&key, &y).unwrap().to_bools(), expect);
        }
    }

    #[test]
    fn linearity() {
        let mut rng = seeded(10);
        for _ in 0..1000 {
            let key = sample_key_with(16, 7, &mut rng).unwrap();
            let (a, b) = (Bits::random(16, &mut rng), Bits::random(16, &mut rng));
            let lhs = toeplitz_apply(&key, &a.xor(&b)).unwrap();
            let rhs = toeplitz_apply(&key, &a)
                .unwrap()
                .xor(&toeplitz_apply(&key, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn key_sampling() {
        assert_eq!(sample_key(10, 4, 3).unwrap(), sample_key(10, 4, 3).unwrap());
        assert_eq!(sample_key(10, 4, 3).unwrap().seed_len(), 13);
        assert_eq!(
            sample_key(3, 4, 0),
            Err(ExtractError::BadDims { n: 3, m: 4 })
        );
    }

    #[test]
    fn key_bit_bias_is_small() {
        let mut ones = 0u64;
        let total = 100_000u64;
        for s in 0..total {
            ones += sample_key(4, 1, s).unwrap().diag().get(0) as u64;
        }
        let freq = ones as f64 / total as f64;
        assert!((freq - 0.5).abs() <= 0.01, "freq {freq}");
    }

    #[test]
    fn xor_rows_match_matrix() {
        let key = sample_key(9, 4, 77).unwrap();
        let rows = key_to_xor_rows(&key);
        assert_eq!(rows.len(), 4);
        for (i, row) in rows.iter().enumerate() {
            let expect: Vec<usize> = key.row(i).ones_iter().collect();
            assert_eq!(row.vars.iter().copied().collect::<Vec<_>>(), expect);
            assert!(!row.constant);
        }
        let zero = ExtractorKey::new(5, 2, Bits::zeros(6)).unwrap();
        assert!(key_to_xor_rows(&zero).iter().all(|r| r.vars.is_empty()));
    }

    #[test]
    fn appended_rows_compute_the_hash() {
        use crate::gf2core::{
            append_linear_layer, enumerate_outputs, eval_circuit, CircuitBuilder,
        };
        let mut rng = seeded(12);
        for _ in 0..10 {
            let n = rng.random_range(1..=8);
            let mut b = CircuitBuilder::with_inputs(n);
            for _ in 0..12 {
                let k = b.gate_count();
                let (x, y) = (rng.random_range(0..k), rng.random_range(0..k));
                if rng.random() {
                    b.and(x, y);
                } else {
                    b.xor(x, y);
                }
            }
            let k = b.gate_count();
            for _ in 0..6 {
                b.output(rng.random_range(0..k));
            }
            let c = b.finish("c").unwrap();
            let key = sample_key_with(6, 3, &mut rng).unwrap();
            let hashed = append_linear_layer(&c, &key_to_xor_rows(&key)).unwrap();
            enumerate_outputs(&hashed, 8, |idx, out| {
                let x = Bits::from_lex_index(idx, n);
                let y = eval_circuit(&c, &x).unwrap();
                assert_eq!(out, &toeplitz_apply(&key, &y).unwrap());
            })
            .unwrap();
        }
    }

    /// For a test `A(key, out)` with uniform acceptance rate `p`, fewer than `2^k` strings
    /// `x` have acceptance rate below `p - eps`, with `k = N - 1` and `eps = 2^-(m+1)`.
    #[test]
    fn few_strings_fool_a_fixed_test() {
        let (n, m) = (10usize, 1usize);
        let d = n + m - 1;
        let keys: Vec<ExtractorKey> = (0..1u64 << d)
            .map(|v| ExtractorKey::new(n, m, Bits::from_lex_index(v, d)).unwrap())
            .collect();
        let outs: Vec<Vec<Bits>> = (0..1u64 << n)
            .map(|xi| {
                let x = Bits::from_lex_index(xi, n);
                keys.iter()
                    .map(|k| toeplitz_apply(k, &x).unwrap())
                    .collect()
            })
            .collect();
        let mut rng = seeded(13);
        for _ in 0..20 {
            // accept(key, out) via a random lookup table over (key index, out)
            let table: Vec<bool> = (0..keys.len() << m).map(|_| rng.random()).collect();
            let accept =
                |ki: usize, out: &Bits| table[(ki << m) | out.to_lex_index().unwrap() as usize];
            let uniform_hits: u64 = (0..keys.len())
                .map(|ki| {
                    (0..1u64 << m)
                        .filter(|&z| accept(ki, &Bits::from_lex_index(z, m)))
                        .count() as u64
                })
                .sum();
            // p = uniform_hits / (|keys| 2^m); per-x rate = hits_x / |keys|
            let mut bad = 0u64;
            for per_key in &outs {
                let hits = per_key
                    .iter()
                    .enumerate()
                    .filter(|(ki, out)| accept(*ki, out))
                    .count() as u64;
                // hits/|keys| < p - 2^-(m+1)  <=>  hits 2^(m+1) < 2 uniform_hits - |keys|
                if (hits << (m + 1)) + (keys.len() as u64) < 2 * uniform_hits {
                    bad += 1;
                }
            }
            assert!(bad < 1 << (n - 1), "{bad} strings fool the test");
        }
    }

    #[test]
    fn universality_small_cases() {
        assert_eq!(universality_scan(6, 3).unwrap(), Rate::new(32, 256));
        assert_eq!(universality_scan(4, 1).unwrap(), Rate::new(8, 16));
        let r = universality_scan(5, 5).unwrap();
        assert_eq!(r.num * 32, r.den);
        assert!(matches!(
            universality_scan(12, 6),
            Err(ExtractError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn singleton_source_is_far() {
        let x = Bits::from_bit_str("1011001110").unwrap();
        let est = extraction_distance_estimate(10, 3, &[x], 10_000, 5).unwrap();
        // point mass against 8 cells: 1 - 1/8
        assert_eq!(est.distance.num * 8, est.distance.den * 7);
    }

    #[test]
    fn every_trial_is_used() {
        let support: Vec<Bits> = (0..64).map(|i| Bits::from_lex_index(i, 8)).collect();
        let est = extraction_distance_estimate(8, 2, &support, 10_001, 1).unwrap();
        assert_eq!(
            (est.trials(), est.keys, est.samples_per_key),
            (10_001, 5, 2048)
        );
        let whole = extraction_distance_estimate(8, 2, &support, 10_240, 1).unwrap();
        assert_eq!(whole.trials(), 10_240);
    }

    #[test]
    fn estimator_rejects_bad_input() {
        assert_eq!(
            extraction_distance_estimate(4, 2, &[], 10_000, 0),
            Err(ExtractError::EmptySupport)
        );
        assert!(matches!(
            extraction_distance_estimate(4, 2, &[Bits::zeros(4)], 10, 0),
            Err(ExtractError::TooFewTrials { .. })
        ));
    }
}
