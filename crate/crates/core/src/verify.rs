//! Independent checks of a code: support, dimension, minimum rank by full
//! enumeration or random sampling, and a literal-deletion `ν_min`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::FerrersCode;
use crate::ferrers::FerrersDiagram;
use crate::field::{FiniteField, SmallField};
use crate::linalg::{self, Matrix};

pub const DEFAULT_CAP: u64 = 1 << 20;
pub const CAP_ENV: &str = "MFD_FORGE_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{codewords} nonzero codewords exceed the enumeration cap {cap}; use sampled verification or raise the cap")]
    CapExceeded { codewords: u128, cap: u64 },
    #[error("the code has no nonzero codewords")]
    NoNonzeroCodewords,
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("{0}")]
    OutOfRange(String),
}

/// The enumeration cap, taken from `MFD_FORGE_CAP` when set and valid.
pub fn default_cap() -> u64 {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// Every generator vanishes outside `dia`.
pub fn check_support(code: &FerrersCode, dia: &FerrersDiagram) -> bool {
    let n = dia.order();
    code.generators.iter().all(|g| {
        g.rows() == n
            && g.cols() == n
            && (0..n).all(|r| (0..n).all(|c| code.field.is_zero(g.get(r, c)) || dia.contains((r + 1, c + 1))))
    })
}

/// Rank of the generators flattened to vectors.
pub fn dimension(code: &FerrersCode) -> usize {
    if code.generators.is_empty() {
        return 0;
    }
    let flat = Matrix::from_rows(code.generators.iter().map(|g| g.as_slice().to_vec()).collect());
    linalg::rank(&code.field, &flat)
}

/// `ν_min` by deleting the first `d-j-1` rows and last `j` columns and counting.
pub fn nu_min_oracle(dia: &FerrersDiagram, d: usize) -> Result<usize, VerifyError> {
    let n = dia.order();
    if d == 0 || d > n {
        return Err(VerifyError::OutOfRange(format!("distance {d} not in 1..={n}")));
    }
    let cells = dia.to_cells();
    let count = |j: usize| cells.iter().filter(|&&(r, c)| r > d - j - 1 && c <= n - j).count();
    Ok((0..d).map(count).min().expect("d ≥ 1"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Position in the base-`q` enumeration, generator 1 as the lowest digit.
    pub index: u64,
    pub coefficients: Vec<u32>,
    pub matrix: Matrix<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinRank {
    pub min_rank: usize,
    pub codewords_checked: u64,
    pub witness: Witness,
}

fn digits(mut idx: u64, q: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = idx % q;
        idx /= q;
    }
    out
}

fn combination(f: &SmallField, gens: &[Matrix<u32>], coeffs: &[u32]) -> Matrix<u32> {
    let (r, c) = (gens[0].rows(), gens[0].cols());
    let mut data = vec![f.zero(); r * c];
    for (&x, g) in coeffs.iter().zip(gens) {
        if !f.is_zero(x) {
            for (a, &b) in data.iter_mut().zip(g.as_slice()) {
                *a = f.mul_add(*a, x, b);
            }
        }
    }
    Matrix::from_vec(r, c, data)
}

fn witness_at(f: &SmallField, gens: &[Matrix<u32>], index: u64) -> Witness {
    let coefficients: Vec<u32> = digits(index, f.q(), gens.len()).into_iter().map(|x| f.from_index(x)).collect();
    let matrix = combination(f, gens, &coefficients);
    Witness { index, coefficients, matrix }
}

fn gf2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else { continue };
        rows.swap(rank, pivot);
        let pr = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            if *row & mask != 0 {
                *row ^= pr;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Minimum `(rank, index)` over indices `lo..hi` for the binary field, with
/// rows packed into words and codewords updated by XOR.
fn scan_gf2(gens: &[Vec<u64>], lo: u64, hi: u64) -> (usize, u64) {
    let k = gens.len();
    let n = gens[0].len();
    let mut cur = vec![0u64; n];
    for (i, g) in gens.iter().enumerate() {
        if lo >> i & 1 == 1 {
            cur.iter_mut().zip(g).for_each(|(a, b)| *a ^= b);
        }
    }
    let mut best = (usize::MAX, u64::MAX);
    let mut scratch = vec![0u64; n];
    let mut idx = lo;
    loop {
        scratch.copy_from_slice(&cur);
        let r = gf2_rank(&mut scratch);
        if r < best.0 {
            best = (r, idx);
        }
        idx += 1;
        if idx >= hi {
            break;
        }
        // bits flipped between idx-1 and idx
        let mut flips = (idx - 1) ^ idx;
        let mut i = 0;
        while flips != 0 && i < k {
            if flips & 1 == 1 {
                cur.iter_mut().zip(&gens[i]).for_each(|(a, b)| *a ^= b);
            }
            flips >>= 1;
            i += 1;
        }
    }
    best
}

fn scan_general(f: &SmallField, gens: &[Matrix<u32>], lo: u64, hi: u64) -> (usize, u64) {
    let q = f.q();
    let k = gens.len();
    let (rows, cols) = (gens[0].rows(), gens[0].cols());
    let mut dig = digits(lo, q, k);
    let coeffs: Vec<u32> = dig.iter().map(|&x| f.from_index(x)).collect();
    let mut cur = combination(f, gens, &coeffs).as_slice().to_vec();
    let mut scratch = cur.clone();
    let mut best = (usize::MAX, u64::MAX);
    let mut idx = lo;
    loop {
        scratch.copy_from_slice(&cur);
        let r = linalg::rank_in_place(f, &mut scratch, rows, cols);
        if r < best.0 {
            best = (r, idx);
        }
        idx += 1;
        if idx >= hi {
            break;
        }
        // odometer step: carry through digits at q-1
        let mut pos = 0;
        while pos < k {
            let old = f.from_index(dig[pos]);
            dig[pos] = (dig[pos] + 1) % q;
            let new = f.from_index(dig[pos]);
            let delta = f.sub(new, old);
            for (a, &b) in cur.iter_mut().zip(gens[pos].as_slice()) {
                *a = f.mul_add(*a, delta, b);
            }
            if dig[pos] != 0 {
                break;
            }
            pos += 1;
        }
    }
    best
}

fn codeword_count(q: u64, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).map_or(u128::MAX, |t| t - 1)
}

/// Minimum rank over all `q^k - 1` nonzero codewords. The witness is the
/// smallest enumeration index attaining the minimum, independent of how the
/// work is split.
pub fn min_rank_exhaustive(code: &FerrersCode, cap: u64) -> Result<MinRank, VerifyError> {
    let gens = &code.generators;
    if gens.is_empty() {
        return Err(VerifyError::NoNonzeroCodewords);
    }
    let f = &code.field;
    let total = codeword_count(f.q(), gens.len());
    if total > cap as u128 {
        return Err(VerifyError::CapExceeded { codewords: total, cap });
    }
    let total = total as u64;
    let threads = rayon::current_num_threads() as u64;
    let chunk = (total / (threads * 8)).max(512);
    let ranges: Vec<(u64, u64)> = (0..total.div_ceil(chunk))
        .map(|c| (1 + c * chunk, (1 + (c + 1) * chunk).min(total + 1)))
        .collect();
    let n_rows = gens[0].rows();
    let packed = f.q() == 2 && gens[0].cols() <= 64 && gens.len() < 64;
    let best = if packed {
        let bits: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| {
                (0..n_rows)
                    .map(|r| g.row(r).iter().enumerate().fold(0u64, |acc, (c, &x)| acc | ((x as u64) << c)))
                    .collect()
            })
            .collect();
        ranges.par_iter().map(|&(lo, hi)| scan_gf2(&bits, lo, hi)).min()
    } else {
        ranges.par_iter().map(|&(lo, hi)| scan_general(f, gens, lo, hi)).min()
    }
    .expect("at least one codeword");
    Ok(MinRank { min_rank: best.0, codewords_checked: total, witness: witness_at(f, gens, best.1) })
}

/// Same as [`min_rank_exhaustive`] with the range split into `parts` pieces
/// scanned sequentially; used to check that the split does not matter.
pub fn min_rank_exhaustive_partitioned(code: &FerrersCode, cap: u64, parts: u64) -> Result<MinRank, VerifyError> {
    let gens = &code.generators;
    if gens.is_empty() {
        return Err(VerifyError::NoNonzeroCodewords);
    }
    let f = &code.field;
    let total = codeword_count(f.q(), gens.len());
    if total > cap as u128 {
        return Err(VerifyError::CapExceeded { codewords: total, cap });
    }
    let total = total as u64;
    let parts = parts.clamp(1, total);
    let step = total.div_ceil(parts);
    let best = (0..parts)
        .map(|c| (1 + c * step, (1 + (c + 1) * step).min(total + 1)))
        .filter(|(lo, hi)| lo < hi)
        .map(|(lo, hi)| scan_general(f, gens, lo, hi))
        .min()
        .expect("nonempty");
    Ok(MinRank { min_rank: best.0, codewords_checked: total, witness: witness_at(f, gens, best.1) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledReport {
    pub trials: usize,
    pub seed: u64,
    /// Smallest rank seen; the true minimum is at most this.
    pub min_rank_seen: usize,
    pub violation: bool,
    pub witness: Witness,
    pub not_a_proof: bool,
}

/// Ranks of `trials` uniformly random nonzero codewords.
pub fn min_rank_sampled(code: &FerrersCode, d: usize, trials: usize, seed: u64) -> Result<SampledReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::ZeroTrials);
    }
    let gens = &code.generators;
    if gens.is_empty() {
        return Err(VerifyError::NoNonzeroCodewords);
    }
    let f = &code.field;
    let q = f.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<u32>, Matrix<u32>)> = None;
    for _ in 0..trials {
        let coeffs = loop {
            let c: Vec<u32> = (0..gens.len()).map(|_| f.from_index(rng.gen_range(0..q))).collect();
            if c.iter().any(|&x| !f.is_zero(x)) {
                break c;
            }
        };
        let m = combination(f, gens, &coeffs);
        let r = linalg::rank(f, &m);
        if best.as_ref().is_none_or(|b| r < b.0) {
            best = Some((r, coeffs, m));
        }
    }
    let (min_rank_seen, coefficients, matrix) = best.expect("trials ≥ 1");
    let index = coefficients.iter().rev().fold(0u64, |acc, &x| acc.saturating_mul(q).saturating_add(f.to_index(x)));
    Ok(SampledReport {
        trials,
        seed,
        min_rank_seen,
        violation: min_rank_seen < d,
        witness: Witness { index, coefficients, matrix },
        not_a_proof: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Sampled,
    /// The code is zero; there is nothing to enumerate.
    Vacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub cap: u64,
    /// Fall back to sampling when the cap is exceeded instead of failing.
    pub sample_on_cap: bool,
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: default_cap(), sample_on_cap: true, trials: 10_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub d: usize,
    pub q: u64,
    pub support_ok: bool,
    pub generators: usize,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub dimension_ok: bool,
    pub independent: bool,
    pub method: Method,
    /// Exact for the exhaustive method, an upper bound on the minimum when sampled.
    pub min_rank: Option<usize>,
    pub distance_ok: bool,
    pub codewords_checked: u64,
    pub witness: Option<Witness>,
    /// All checks passed and the minimum rank was established by enumeration.
    pub certified: bool,
    /// Set when the minimum rank comes from sampling.
    pub not_a_proof: bool,
    pub passed: bool,
    pub elapsed_ms: u64,
}

/// Support, dimension against the literal `ν_min`, and minimum rank `≥ d`.
pub fn is_mfd(
    code: &FerrersCode,
    dia: &FerrersDiagram,
    d: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let support_ok = check_support(code, dia);
    let dim = dimension(code);
    let expected = nu_min_oracle(dia, d)?;
    let independent = dim == code.generators.len();
    let (method, min_rank, codewords_checked, witness) = if dim == 0 {
        (Method::Vacuous, None, 0, None)
    } else {
        match min_rank_exhaustive(code, opts.cap) {
            Ok(m) => (Method::Exhaustive, Some(m.min_rank), m.codewords_checked, Some(m.witness)),
            Err(VerifyError::CapExceeded { .. }) if opts.sample_on_cap => {
                let s = min_rank_sampled(code, d, opts.trials, opts.seed)?;
                (Method::Sampled, Some(s.min_rank_seen), s.trials as u64, Some(s.witness))
            }
            Err(e) => return Err(e),
        }
    };
    let distance_ok = min_rank.is_none_or(|r| r >= d);
    let passed = support_ok && dim == expected && independent && distance_ok;
    Ok(VerificationReport {
        n: dia.order(),
        d,
        q: code.field.q(),
        support_ok,
        generators: code.generators.len(),
        dimension: dim,
        expected_dimension: expected,
        dimension_ok: dim == expected,
        independent,
        method,
        min_rank,
        distance_ok,
        codewords_checked,
        witness,
        certified: passed && method != Method::Sampled,
        not_a_proof: method == Method::Sampled,
        passed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
