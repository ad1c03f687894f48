//! Randomized construction with bad-pair deletion.
//!
//! Every vertex of `K_s^{□r}` is sampled independently with probability
//! `p = 2 / (r(r-1)s^2)`; pairs of sampled vertices at distance 2 ("bad
//! pairs") are then broken by deleting one endpoint each. The survivor
//! is a total mutual-visibility set of expected size at least
//! `s^(r-2) / (r(r-1))`.
//!
//! Randomness comes from xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Vertices are visited in index
//! order and each consumes exactly one 64-bit draw `x`; the vertex is kept
//! iff `floor(x * den / 2^64) < num` for `p = num/den` in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::hamming::HammingShape;
use crate::solver::conflict_edge_count;
use crate::vertex_set::VertexSet;
use crate::visibility::distance_two_pairs;

/// Largest vertex count sampled by [`random_tmv`].
pub const RANDOM_CAP: u64 = 10_000_000;

/// The expected number of bad pairs, exactly and in the simplified form
/// `E(|S|) / 2` that bounds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPairBound {
    pub exact: BigRational,
    pub simplified: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomRunReport {
    pub shape: HammingShape,
    /// `Some((s, r))` for the balanced construction, `None` for a raw-`p` run.
    pub balanced: Option<(u32, usize)>,
    pub seed: u64,
    pub probability: BigRational,
    /// `|S|`
    pub sampled: usize,
    /// `|B|`
    pub bad_pairs: usize,
    /// `|S*|`
    pub kept: usize,
    /// `E(|S|) = V p`
    pub expected_sampled: BigRational,
    /// `E(|B|)`, exact, for the probability used.
    pub expected_bad_pairs: BigRational,
    pub set: VertexSet,
}

/// `p = 2 / (r(r-1)s^2)`.
pub fn balanced_probability(s: u32, r: usize) -> Result<BigRational> {
    if r < 3 {
        return Err(Error::RankTooSmall { need: 3, got: r });
    }
    if s < 2 {
        return Err(Error::InvalidParameter(format!("s must be >= 2, got {s}")));
    }
    let s = BigInt::from(s);
    Ok(BigRational::new(BigInt::from(2), BigInt::from(r * (r - 1)) * &s * &s))
}

/// `E(|B|) = C(r,2) * s^2 (s-1)^2 / 2 * s^(r-2) * p^2`, with the
/// simplified bound `s^r p / 2`.
pub fn expected_bad_pairs_bound(s: u32, r: usize) -> Result<BadPairBound> {
    let p = balanced_probability(s, r)?;
    let si = BigInt::from(s);
    let pairs_r = BigInt::from(r * (r - 1) / 2);
    let pair_count = BigRational::new(
        pairs_r * &si * &si * (&si - 1) * (&si - 1) * si.pow((r - 2) as u32),
        BigInt::from(2),
    );
    let exact = pair_count * &p * &p;
    let simplified = BigRational::from_integer(si.pow(r as u32)) * &p / BigInt::from(2);
    Ok(BadPairBound { exact, simplified })
}

/// One run of the balanced randomized construction.
pub fn random_tmv(s: u32, r: usize, seed: u64) -> Result<RandomRunReport> {
    let p = balanced_probability(s, r)?;
    let shape = HammingShape::new(vec![s; r]).map_err(|_| Error::CapExceeded {
        what: "random construction",
        size: u64::MAX,
        cap: RANDOM_CAP,
    })?;
    let mut report = sample_and_delete(&shape, &p, seed)?;
    report.balanced = Some((s, r));
    Ok(report)
}

/// The same procedure on an arbitrary shape with a caller-chosen `p`.
/// No size guarantee comes with it.
pub fn random_tmv_with_probability(shape: &HammingShape, p: &BigRational, seed: u64) -> Result<RandomRunReport> {
    sample_and_delete(shape, p, seed)
}

fn sample_and_delete(shape: &HammingShape, p: &BigRational, seed: u64) -> Result<RandomRunReport> {
    if shape.vertex_count() > RANDOM_CAP {
        return Err(Error::CapExceeded {
            what: "random construction",
            size: shape.vertex_count(),
            cap: RANDOM_CAP,
        });
    }
    if *p < BigRational::zero() || *p > BigRational::from_integer(1.into()) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let num = p
        .numer()
        .to_u64()
        .ok_or(Error::InvalidParameter("probability numerator too large".into()))?;
    let den = p
        .denom()
        .to_u64()
        .ok_or(Error::InvalidParameter("probability denominator too large".into()))?;

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut set = VertexSet::for_shape(shape);
    for v in 0..shape.len() {
        let x = rng.next_u64();
        if ((u128::from(x) * u128::from(den)) >> 64) < u128::from(num) {
            set.insert(v)?;
        }
    }
    let sampled = set.len();

    // Pairs come in lexicographic (min, max) order; when both ends are
    // still present the larger index goes.
    let bad = distance_two_pairs(shape, &set)?;
    for &(a, b) in &bad {
        if set.contains(a) && set.contains(b) {
            set.remove(b);
        }
    }

    let expected_sampled = BigRational::from_integer(shape.vertex_count().into()) * p;
    let pair_count = BigRational::from_integer(BigInt::from(conflict_edge_count(shape)?));
    Ok(RandomRunReport {
        shape: shape.clone(),
        balanced: None,
        seed,
        probability: p.clone(),
        sampled,
        bad_pairs: bad.len(),
        kept: set.len(),
        expected_sampled,
        expected_bad_pairs: pair_count * p * p,
        set,
    })
}
