//! Closed-form values, bounds and explicit optimal sets.
//!
//! Bounds are exact: rationals come back as [`BigRational`] and are only
//! rendered as decimals at the output edge.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hamming::{HVertex, HammingShape};
use crate::vertex_set::VertexSet;

/// `mu_t(K_{n1} □ K_{n2} □ K_{n3})`. With the sizes sorted so that
/// `n1 >= n2 >= n3` and `N = n1 + n2 + n3`: `N - 4` for `n3 = 2`,
/// `N - 5` for `n3 = 3`, `N - 6` for `n3 >= 4`, and `n1` when `n3 = 1`.
pub fn theorem1_value(n1: u32, n2: u32, n3: u32) -> Result<u64> {
    let mut s = [n1, n2, n3];
    if s.contains(&0) {
        return Err(Error::InvalidShape(format!("factor sizes must be >= 1, got {s:?}")));
    }
    s.sort_unstable_by(|a, b| b.cmp(a));
    let total: u64 = s.iter().map(|&n| u64::from(n)).sum();
    Ok(match s[2] {
        1 => u64::from(s[0]),
        2 => total - 4,
        3 => total - 5,
        _ => total - 6,
    })
}

/// `mu_t(K_n □ K_m) = max(n, m)`.
pub fn two_factor_value(n: u32, m: u32) -> u64 {
    u64::from(n.max(m))
}

/// Positions of `sizes` ordered by non-increasing size (stable).
fn descending_order(sizes: &[u32]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..sizes.len()).collect();
    perm.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    perm
}

/// Optimal set for `K_{n1} □ K_{n2} □ K_{n3}`, all sizes at least 2,
/// returned in the caller's factor order.
///
/// Working in sorted coordinates (`n1 >= n2 >= n3`):
/// for `n3 <= 3` the set is `{(i,1,1): 2 <= i <= n1} ∪ {(1,j,2): 2 <= j <= n2}`,
/// whose members are pairwise at distance 1 or 3; for `n3 >= 4` it is
/// `{(j,1,1): j >= 3} ∪ {(1,j,2): j >= 3} ∪ {(2,2,j): j >= 3}`.
pub fn construct_three_factor(n1: u32, n2: u32, n3: u32) -> Result<VertexSet> {
    let sizes = [n1, n2, n3];
    if sizes.iter().any(|&n| n < 2) {
        return Err(Error::InvalidParameter(format!(
            "three-factor construction needs every size >= 2, got {sizes:?}; use the two-factor construction"
        )));
    }
    let shape = HammingShape::new(sizes.to_vec())?;
    let perm = descending_order(&sizes);
    let sorted: Vec<u32> = perm.iter().map(|&p| sizes[p]).collect();
    let (a, b, c) = (sorted[0], sorted[1], sorted[2]);

    // 1-based coordinates in sorted order.
    let mut members: Vec<[u32; 3]> = Vec::new();
    if c <= 3 {
        members.extend((2..=a).map(|i| [i, 1, 1]));
        members.extend((2..=b).map(|j| [1, j, 2]));
    } else {
        members.extend((3..=a).map(|j| [j, 1, 1]));
        members.extend((3..=b).map(|j| [1, j, 2]));
        members.extend((3..=c).map(|j| [2, 2, j]));
    }

    let mut set = VertexSet::for_shape(&shape);
    for m in members {
        let mut coords = [0u32; 3];
        for (k, &p) in perm.iter().enumerate() {
            coords[p] = m[k];
        }
        set.insert(shape.encode(&shape.vertex(&coords)?)?.0)?;
    }
    Ok(set)
}

/// One full layer of the larger factor of `K_n □ K_m`.
pub fn construct_two_factor(n: u32, m: u32) -> Result<VertexSet> {
    let shape = HammingShape::new(vec![n, m])?;
    let layer: Vec<HVertex> = if n >= m {
        (1..=n).map(|i| shape.vertex(&[i, 1])).collect::<Result<_>>()?
    } else {
        (1..=m).map(|j| shape.vertex(&[1, j])).collect::<Result<_>>()?
    };
    VertexSet::from_vertices(&shape, &layer)
}

/// Best known explicit set for shapes with at most three non-trivial
/// factors. Size-1 factors are dropped, the construction is made on the
/// normalized shape and embedded back with coordinate 1 at those positions.
pub fn construct(shape: &HammingShape) -> Result<VertexSet> {
    let kept: Vec<usize> = (0..shape.rank()).filter(|&i| shape.sizes()[i] > 1).collect();
    let normalized = shape.normalized();
    let inner = match kept.len() {
        0 => VertexSet::from_indices(1, [0])?,
        1 => VertexSet::from_indices(normalized.len(), 0..normalized.len())?,
        2 => {
            let s = normalized.sizes();
            construct_two_factor(s[0], s[1])?
        }
        3 => {
            let s = normalized.sizes();
            construct_three_factor(s[0], s[1], s[2])?
        }
        r => {
            return Err(Error::InvalidParameter(format!(
                "no explicit construction for {r} non-trivial factors; use `random`"
            )))
        }
    };
    let mut out = VertexSet::for_shape(shape);
    for v in inner.vertices(&normalized)? {
        let mut coords = vec![0u32; shape.rank()];
        for (k, &pos) in kept.iter().enumerate() {
            coords[pos] = v.zero_based()[k];
        }
        out.insert(shape.encode(&HVertex::from_zero_based(coords))?.0)?;
    }
    Ok(out)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn require_rank(r: usize) -> Result<()> {
    if r < 3 {
        return Err(Error::RankTooSmall { need: 3, got: r });
    }
    Ok(())
}

/// `(6 / r!) * N^(r-2)` for `r >= 3`.
pub fn upper_bound_general(shape: &HammingShape) -> Result<BigRational> {
    let r = shape.rank();
    require_rank(r)?;
    let numer = BigUint::from(6u32) * BigUint::from(shape.factor_sum()).pow((r - 2) as u32);
    Ok(BigRational::new(numer.into(), factorial(r).into()))
}

/// `c'_r = 3 * prod_{i=3}^{r} (i-1)^(i-3)`.
pub fn balanced_constant(r: usize) -> Result<BigUint> {
    require_rank(r)?;
    Ok((3..=r).fold(BigUint::from(3u32), |acc, i| {
        acc * BigUint::from(i - 1).pow((i - 3) as u32)
    }))
}

/// `c'_r * s^(r-2)` for `r >= 3`.
pub fn upper_bound_balanced(s: u32, r: usize) -> Result<BigInt> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be >= 1".into()));
    }
    let c = balanced_constant(r)?;
    Ok((c * BigUint::from(s).pow((r - 2) as u32)).into())
}

/// `s^(r-2) / (r(r-1))` for `r >= 3`.
pub fn lower_bound_balanced(s: u32, r: usize) -> Result<BigRational> {
    require_rank(r)?;
    let numer = BigUint::from(s).pow((r - 2) as u32);
    Ok(BigRational::new(numer.into(), BigInt::from(r * (r - 1))))
}

/// Every closed-form value and bound that applies to a shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub shape: HammingShape,
    pub normalized_shape: Vec<u32>,
    /// Exact value, present iff `r = 3`.
    pub theorem1_value: Option<u64>,
    /// Exact value, present iff `r = 2`.
    pub two_factor_value: Option<u64>,
    /// Present iff `r >= 3`.
    pub upper_general: Option<BigRational>,
    /// Present for balanced shapes with `r >= 3`.
    pub upper_balanced: Option<BigInt>,
    /// Present for balanced shapes with `r >= 3`.
    pub lower_balanced: Option<BigRational>,
}

pub fn bounds(shape: &HammingShape) -> Result<BoundsReport> {
    let r = shape.rank();
    let s = shape.sizes();
    let balanced = shape.balanced_size().filter(|_| r >= 3);
    Ok(BoundsReport {
        shape: shape.clone(),
        normalized_shape: shape.normalized().sorted_desc(),
        theorem1_value: (r == 3).then(|| theorem1_value(s[0], s[1], s[2])).transpose()?,
        two_factor_value: (r == 2).then(|| two_factor_value(s[0], s[1])),
        upper_general: (r >= 3).then(|| upper_bound_general(shape)).transpose()?,
        upper_balanced: balanced.map(|b| upper_bound_balanced(b, r)).transpose()?,
        lower_balanced: balanced.map(|b| lower_bound_balanced(b, r)).transpose()?,
    })
}

/// Renders `p/q`, or `p` for integers.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering with a fixed number of places, rounded half up.
pub fn rational_decimal(q: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = q * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2u32)))
        .floor()
        .to_integer();
    let negative = rounded < BigInt::zero();
    let digits = if negative { -rounded } else { rounded };
    let int = &digits / &scale;
    let frac = &digits % &scale;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = places)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::visibility::is_tmv_hamming;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn listed(shape: &HammingShape, set: &VertexSet) -> Vec<String> {
        set.vertices(shape).unwrap().iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(theorem1_value(4, 3, 2).unwrap(), 5);
        assert_eq!(theorem1_value(5, 4, 3).unwrap(), 7);
        assert_eq!(theorem1_value(4, 4, 4).unwrap(), 6);
        assert_eq!(theorem1_value(2, 3, 4).unwrap(), 5);
        assert_eq!(theorem1_value(4, 1, 3).unwrap(), 4);
        assert!(theorem1_value(0, 3, 3).is_err());
    }

    #[test]
    fn three_factor_examples() {
        let sh = HammingShape::new(vec![4, 3, 2]).unwrap();
        let set = construct_three_factor(4, 3, 2).unwrap();
        let mut got = listed(&sh, &set);
        got.sort();
        assert_eq!(got, ["(1,2,2)", "(1,3,2)", "(2,1,1)", "(3,1,1)", "(4,1,1)"]);

        let sh = HammingShape::new(vec![4, 4, 4]).unwrap();
        let set = construct_three_factor(4, 4, 4).unwrap();
        let mut got = listed(&sh, &set);
        got.sort();
        assert_eq!(got, ["(1,3,2)", "(1,4,2)", "(2,2,3)", "(2,2,4)", "(3,1,1)", "(4,1,1)"]);

        let sh = HammingShape::new(vec![2, 2, 2]).unwrap();
        let set = construct_three_factor(2, 2, 2).unwrap();
        let mut got = listed(&sh, &set);
        got.sort();
        assert_eq!(got, ["(1,2,2)", "(2,1,1)"]);
        assert!(construct_three_factor(4, 1, 3).is_err());
    }

    #[test]
    fn three_factor_follows_caller_order() {
        let sh = HammingShape::new(vec![2, 3, 4]).unwrap();
        let set = construct_three_factor(2, 3, 4).unwrap();
        assert_eq!(set.len(), 5);
        assert!(is_tmv_hamming(&sh, &set).unwrap());
        let sorted = construct_three_factor(4, 3, 2).unwrap();
        let sorted_shape = HammingShape::new(vec![4, 3, 2]).unwrap();
        // position k of the sorted shape is position perm[k] of (2,3,4)
        assert_eq!(set.permuted(&sh, &[2, 1, 0]).unwrap(), sorted);
        assert_eq!(sorted_shape, sh.permuted(&[2, 1, 0]).unwrap());
    }

    #[test]
    fn two_factor_examples() {
        let sh = HammingShape::new(vec![3, 2]).unwrap();
        assert_eq!(
            listed(&sh, &construct_two_factor(3, 2).unwrap()),
            ["(1,1)", "(2,1)", "(3,1)"]
        );
        let sh = HammingShape::new(vec![1, 1]).unwrap();
        assert_eq!(listed(&sh, &construct_two_factor(1, 1).unwrap()), ["(1,1)"]);
        let sh = HammingShape::new(vec![5, 5]).unwrap();
        let set = construct_two_factor(5, 5).unwrap();
        assert_eq!(set.len(), 5);
        assert!(is_tmv_hamming(&sh, &set).unwrap());
    }

    #[test]
    fn construct_with_unit_factors() {
        let sh = HammingShape::new(vec![4, 1, 3, 2]).unwrap();
        let set = construct(&sh).unwrap();
        assert_eq!(set.len(), 5);
        assert!(is_tmv_hamming(&sh, &set).unwrap());
        let sh = HammingShape::new(vec![1, 6]).unwrap();
        assert_eq!(construct(&sh).unwrap().len(), 6);
        assert!(construct(&HammingShape::new(vec![2, 2, 2, 2]).unwrap()).is_err());
    }

    #[test]
    fn general_upper_bound() {
        let b = upper_bound_general(&HammingShape::new(vec![4, 3, 2]).unwrap()).unwrap();
        assert_eq!(b, rat(9, 1));
        let b = upper_bound_general(&HammingShape::new(vec![3, 3, 3, 3]).unwrap()).unwrap();
        assert_eq!(b, rat(144, 4));
        assert!(upper_bound_general(&HammingShape::new(vec![3, 3]).unwrap()).is_err());
    }

    #[test]
    fn balanced_bounds() {
        assert_eq!(balanced_constant(3).unwrap(), BigUint::from(3u32));
        assert_eq!(balanced_constant(4).unwrap(), BigUint::from(9u32));
        // 3 * 2^0 * 3^1 * 4^2
        assert_eq!(balanced_constant(5).unwrap(), BigUint::from(144u32));
        assert_eq!(upper_bound_balanced(7, 3).unwrap(), BigInt::from(21));
        assert_eq!(upper_bound_balanced(5, 4).unwrap(), BigInt::from(225));
        assert_eq!(lower_bound_balanced(10, 3).unwrap(), rat(10, 6));
        assert_eq!(lower_bound_balanced(2, 3).unwrap(), rat(2, 6));
        assert_eq!(lower_bound_balanced(10, 4).unwrap(), rat(100, 12));
        assert!(lower_bound_balanced(10, 2).is_err());
    }

    #[test]
    fn bounds_report_ten_cubed() {
        let r = bounds(&HammingShape::new(vec![10, 10, 10]).unwrap()).unwrap();
        assert_eq!(r.theorem1_value, Some(24));
        assert_eq!(r.upper_general, Some(rat(30, 1)));
        assert_eq!(r.upper_balanced, Some(BigInt::from(30)));
        assert_eq!(r.lower_balanced, Some(rat(5, 3)));
        assert_eq!(r.two_factor_value, None);
    }

    #[test]
    fn rendering() {
        assert_eq!(rational_string(&rat(10, 6)), "5/3");
        assert_eq!(rational_string(&rat(30, 1)), "30");
        assert_eq!(rational_decimal(&rat(5, 3), 4), "1.6667");
        assert_eq!(rational_decimal(&rat(1, 4), 1), "0.3");
        assert_eq!(rational_decimal(&rat(-1, 3), 2), "-0.33");
    }
}
