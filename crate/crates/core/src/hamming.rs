//! Combinatorial model of Hamming graphs `K_{n1} □ ... □ K_{nr}`.
//!
//! Nothing here materializes adjacency. Vertices are coordinate tuples,
//! distances are coordinate comparisons and indices are a little-endian
//! mixed-radix encoding (factor 1 is the least significant digit).
//! Coordinates are 0-based in memory and 1-based whenever they are
//! displayed or parsed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The factor sizes `(n1, ..., nr)` of a Hamming graph.
///
/// Factors of size 1 are kept as given so that vertices and files
/// round-trip in the caller's dimension; [`HammingShape::normalized`]
/// drops them, since `K_1` is the identity of the Cartesian product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HammingShape {
    sizes: Vec<u32>,
    strides: Vec<u64>,
    vertex_count: u64,
    factor_sum: u64,
}

/// A vertex of a Hamming graph, one coordinate per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVertex(Vec<u32>);

/// Mixed-radix index of a vertex, in `0..V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexIndex(pub usize);

impl HammingShape {
    pub fn new(sizes: impl Into<Vec<u32>>) -> Result<Self> {
        let sizes = sizes.into();
        if sizes.is_empty() {
            return Err(Error::InvalidShape("at least one factor is required".into()));
        }
        if let Some(pos) = sizes.iter().position(|&n| n == 0) {
            return Err(Error::InvalidShape(format!("factor {} has size 0", pos + 1)));
        }
        let mut strides = Vec::with_capacity(sizes.len());
        let mut vertex_count: u64 = 1;
        for &n in &sizes {
            strides.push(vertex_count);
            vertex_count = vertex_count
                .checked_mul(u64::from(n))
                .ok_or(Error::Overflow("vertex count"))?;
        }
        if usize::try_from(vertex_count).is_err() {
            return Err(Error::Overflow("vertex count"));
        }
        let factor_sum = sizes.iter().map(|&n| u64::from(n)).sum();
        Ok(HammingShape {
            sizes,
            strides,
            vertex_count,
            factor_sum,
        })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Number of factors `r`.
    pub fn rank(&self) -> usize {
        self.sizes.len()
    }

    /// `N = n1 + ... + nr`.
    pub fn factor_sum(&self) -> u64 {
        self.factor_sum
    }

    /// `V = n1 * ... * nr`.
    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.vertex_count as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn stride(&self, position: usize) -> u64 {
        self.strides[position]
    }

    /// The shape with every size-1 factor removed. A shape made only of
    /// size-1 factors normalizes to `(1)`.
    pub fn normalized(&self) -> HammingShape {
        let kept: Vec<u32> = self.sizes.iter().copied().filter(|&n| n > 1).collect();
        if kept.is_empty() {
            HammingShape::new(vec![1]).expect("(1) is a valid shape")
        } else {
            HammingShape::new(kept).expect("sub-shape of a valid shape")
        }
    }

    /// Factor sizes in non-increasing order.
    pub fn sorted_desc(&self) -> Vec<u32> {
        let mut s = self.sizes.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// `Some(s)` when every factor has size `s`.
    pub fn balanced_size(&self) -> Option<u32> {
        let first = self.sizes[0];
        self.sizes.iter().all(|&n| n == first).then_some(first)
    }

    /// Shape whose factor `k` is factor `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<HammingShape> {
        check_permutation(perm, self.rank())?;
        HammingShape::new(perm.iter().map(|&p| self.sizes[p]).collect::<Vec<_>>())
    }

    /// Builds a vertex from 1-based coordinates.
    pub fn vertex(&self, coords: &[u32]) -> Result<HVertex> {
        self.check_len(coords.len())?;
        let mut zero_based = Vec::with_capacity(coords.len());
        for (position, (&c, &n)) in coords.iter().zip(&self.sizes).enumerate() {
            if c == 0 || c > n {
                return Err(Error::CoordinateOutOfRange {
                    position: position + 1,
                    value: u64::from(c),
                    size: n,
                });
            }
            zero_based.push(c - 1);
        }
        Ok(HVertex(zero_based))
    }

    /// Checks that `v` belongs to this shape.
    pub fn validate(&self, v: &HVertex) -> Result<()> {
        self.check_len(v.0.len())?;
        for (position, (&c, &n)) in v.0.iter().zip(&self.sizes).enumerate() {
            if c >= n {
                return Err(Error::CoordinateOutOfRange {
                    position: position + 1,
                    value: u64::from(c) + 1,
                    size: n,
                });
            }
        }
        Ok(())
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got,
            });
        }
        Ok(())
    }

    pub fn encode(&self, v: &HVertex) -> Result<VertexIndex> {
        self.validate(v)?;
        Ok(VertexIndex(self.encode_unchecked(v)))
    }

    pub(crate) fn encode_unchecked(&self, v: &HVertex) -> usize {
        v.0.iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s as usize)
            .sum()
    }

    pub fn decode(&self, index: VertexIndex) -> Result<HVertex> {
        self.check_index(index.0)?;
        Ok(self.decode_unchecked(index.0))
    }

    pub(crate) fn decode_unchecked(&self, mut index: usize) -> HVertex {
        let mut coords = Vec::with_capacity(self.rank());
        for &n in &self.sizes {
            coords.push((index % n as usize) as u32);
            index /= n as usize;
        }
        HVertex(coords)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index as u64 >= self.vertex_count {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                len: self.vertex_count,
            });
        }
        Ok(())
    }

    /// Digit of `index` at `position` (0-based coordinate).
    #[inline]
    pub(crate) fn digit(&self, index: usize, position: usize) -> usize {
        (index / self.strides[position] as usize) % self.sizes[position] as usize
    }

    /// Hamming distance between two indices, computed digit by digit.
    pub(crate) fn index_distance(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut d = 0;
        for &n in &self.sizes {
            let n = n as usize;
            if a % n != b % n {
                d += 1;
            }
            a /= n;
            b /= n;
        }
        d
    }

    /// Number of vertices at distance exactly 2 from any vertex:
    /// `sum_{i<j} (n_i - 1)(n_j - 1)`.
    pub fn distance_two_degree(&self) -> u64 {
        let mut total = 0u64;
        for (i, &a) in self.sizes.iter().enumerate() {
            for &b in &self.sizes[i + 1..] {
                total = total.saturating_add(u64::from(a - 1) * u64::from(b - 1));
            }
        }
        total
    }

    /// Calls `f` with the index of every vertex at distance exactly 2 from `v`.
    pub(crate) fn for_each_distance_two(&self, v: usize, mut f: impl FnMut(usize)) {
        let r = self.rank();
        for i in 0..r {
            let si = self.strides[i] as usize;
            let di = self.digit(v, i);
            for j in i + 1..r {
                let sj = self.strides[j] as usize;
                let dj = self.digit(v, j);
                let base = v - di * si - dj * sj;
                for a in (0..self.sizes[i] as usize).filter(|&a| a != di) {
                    for b in (0..self.sizes[j] as usize).filter(|&b| b != dj) {
                        f(base + a * si + b * sj);
                    }
                }
            }
        }
    }

    /// All vertices in index order.
    pub fn vertices(&self) -> impl Iterator<Item = HVertex> + '_ {
        (0..self.len()).map(move |i| self.decode_unchecked(i))
    }

    /// Shortest-path distance: the number of coordinates where `u` and `v` differ.
    pub fn distance(&self, u: &HVertex, v: &HVertex) -> Result<usize> {
        self.validate(u)?;
        self.validate(v)?;
        Ok(u.differing_positions(v).count())
    }

    /// The interval `I[u, v]`: every vertex on some shortest `u,v`-path.
    /// Vertices are returned in index order.
    pub fn interval(&self, u: &HVertex, v: &HVertex) -> Result<Vec<HVertex>> {
        self.validate(u)?;
        self.validate(v)?;
        let diff: Vec<usize> = u.differing_positions(v).collect();
        if diff.len() >= usize::BITS as usize {
            return Err(Error::Overflow("interval size"));
        }
        let mut out: Vec<HVertex> = (0..1usize << diff.len())
            .map(|mask| {
                let mut w = u.clone();
                for (bit, &pos) in diff.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        w.0[pos] = v.0[pos];
                    }
                }
                w
            })
            .collect();
        out.sort_by_key(|w| self.encode_unchecked(w));
        Ok(out)
    }

    /// Checks that `I[u, v]` induces the `t`-cube, `t = d(u, v)`.
    pub fn interval_is_hypercube(&self, u: &HVertex, v: &HVertex) -> Result<bool> {
        let t = self.distance(u, v)?;
        let members = self.interval(u, v)?;
        if members.len() != 1usize << t {
            return Ok(false);
        }
        let k = members.len();
        let mut adjacency = vec![Vec::new(); k];
        let mut edges = 0usize;
        for a in 0..k {
            for b in a + 1..k {
                if members[a].differing_positions(&members[b]).count() == 1 {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                    edges += 1;
                }
            }
        }
        if adjacency.iter().any(|nb| nb.len() != t) {
            return Ok(false);
        }
        let expected_edges = if t == 0 { 0 } else { (1usize << (t - 1)) * t };
        if edges != expected_edges {
            return Ok(false);
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &b in &adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    /// The Cartesian squares having `u, v` as a diametral pair. In a
    /// Hamming graph there is exactly one.
    pub fn cartesian_squares_through(&self, u: &HVertex, v: &HVertex) -> Result<Vec<CartesianSquare>> {
        let d = self.distance(u, v)?;
        if d != 2 {
            return Err(Error::NotDistanceTwo(d));
        }
        let mut diff = u.differing_positions(v);
        let i = diff.next().expect("two differing positions");
        let j = diff.next().expect("two differing positions");
        let mut u1 = u.clone();
        u1.0[j] = v.0[j];
        let mut u3 = u.clone();
        u3.0[i] = v.0[i];
        Ok(vec![CartesianSquare {
            corners: [u.clone(), u1, v.clone(), u3],
            positions: (i, j),
        }])
    }

    /// Every Cartesian square having `x` as a corner, with `x` in the
    /// `u` slot.
    pub(crate) fn squares_at(&self, x: &HVertex) -> Vec<CartesianSquare> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for a in (0..self.sizes[i]).filter(|&a| a != x.0[i]) {
                    for b in (0..self.sizes[j]).filter(|&b| b != x.0[j]) {
                        let mut u1 = x.clone();
                        u1.0[j] = b;
                        let mut u2 = u1.clone();
                        u2.0[i] = a;
                        let mut u3 = x.clone();
                        u3.0[i] = a;
                        out.push(CartesianSquare {
                            corners: [x.clone(), u1, u2, u3],
                            positions: (i, j),
                        });
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn check_permutation(perm: &[usize], r: usize) -> Result<()> {
    let mut seen = vec![false; r];
    if perm.len() != r {
        return Err(Error::InvalidParameter(format!(
            "permutation has length {}, expected {r}",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= r || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation of 0..{r}"
            )));
        }
    }
    Ok(())
}

impl fmt::Display for HammingShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.sizes.iter())
    }
}

impl FromStr for HammingShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidShape(format!("bad factor size {:?} in {s:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        HammingShape::new(sizes)
    }
}

impl HVertex {
    /// Builds a vertex from 0-based coordinates without shape validation.
    pub fn from_zero_based(coords: Vec<u32>) -> Self {
        HVertex(coords)
    }

    pub fn zero_based(&self) -> &[u32] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.0.iter().map(|&c| c + 1).collect()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn differing_positions<'a>(&'a self, other: &'a HVertex) -> impl Iterator<Item = usize> + 'a {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
    }

    /// Coordinates rearranged so that position `k` holds coordinate `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> HVertex {
        HVertex(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl fmt::Display for HVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, self.0.iter().map(|c| c + 1))?;
        f.write_str(")")
    }
}

impl FromStr for HVertex {
    type Err = Error;

    /// Parses a 1-based tuple such as `(2,1,1)`. Range checks need a shape
    /// and happen in [`HammingShape::vertex`].
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidParameter(format!("vertex {s:?} is not a parenthesized tuple")))?;
        let coords = inner
            .split(',')
            .map(|t| match t.trim().parse::<u32>() {
                Ok(c) if c >= 1 => Ok(c - 1),
                _ => Err(Error::InvalidParameter(format!(
                    "bad coordinate {:?} in {s:?}",
                    t.trim()
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HVertex(coords))
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    for (k, item) in items.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A 4-cycle `u, u', u'', u'''` of a Hamming graph not contained in a
/// layer. Corners follow the pattern
/// `(.., a, .., b, ..)`, `(.., a, .., b', ..)`, `(.., a', .., b', ..)`,
/// `(.., a', .., b, ..)` at positions `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianSquare {
    pub corners: [HVertex; 4],
    /// The two coordinate positions (0-based) where corners differ.
    pub positions: (usize, usize),
}

impl CartesianSquare {
    /// `(u, u'')` and `(u', u''')`.
    pub fn diametral_pairs(&self) -> [(&HVertex, &HVertex); 2] {
        let c = &self.corners;
        [(&c[0], &c[2]), (&c[1], &c[3])]
    }

    /// The four edges of the cycle.
    pub fn adjacent_pairs(&self) -> [(&HVertex, &HVertex); 4] {
        let c = &self.corners;
        [(&c[0], &c[1]), (&c[1], &c[2]), (&c[2], &c[3]), (&c[3], &c[0])]
    }

    /// Corner indices in increasing order; equal for equal squares.
    pub fn canonical(&self, shape: &HammingShape) -> [usize; 4] {
        let mut idx = self.corners.clone().map(|v| shape.encode_unchecked(&v));
        idx.sort_unstable();
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> HammingShape {
        s.parse().unwrap()
    }

    fn v(sh: &HammingShape, c: &[u32]) -> HVertex {
        sh.vertex(c).unwrap()
    }

    #[test]
    fn shape_invariants() {
        let sh = shape("4,3,2");
        assert_eq!(sh.rank(), 3);
        assert_eq!(sh.vertex_count(), 24);
        assert_eq!(sh.factor_sum(), 9);
        assert_eq!(sh.to_string(), "4,3,2");
        assert!(HammingShape::new(vec![]).is_err());
        assert!(HammingShape::new(vec![3, 0]).is_err());
        assert!("3,x".parse::<HammingShape>().is_err());
        assert!(HammingShape::new(vec![u32::MAX; 4]).is_err());
    }

    #[test]
    fn normalization_drops_unit_factors() {
        let sh = shape("4,1,3");
        assert_eq!(sh.sizes(), &[4, 1, 3]);
        assert_eq!(sh.normalized().sizes(), &[4, 3]);
        assert_eq!(shape("1,1").normalized().sizes(), &[1]);
    }

    #[test]
    fn distance_examples() {
        let sh = shape("2,3,4");
        assert_eq!(sh.distance(&v(&sh, &[1, 1, 1]), &v(&sh, &[1, 1, 1])).unwrap(), 0);
        assert_eq!(sh.distance(&v(&sh, &[1, 1, 1]), &v(&sh, &[2, 3, 4])).unwrap(), 3);
        let sh = shape("4,3,2");
        assert_eq!(sh.distance(&v(&sh, &[2, 1, 1]), &v(&sh, &[1, 3, 2])).unwrap(), 3);
    }

    #[test]
    fn distance_rejects_mismatch() {
        let sh = shape("4,3,2");
        let bad = HVertex::from_zero_based(vec![0, 0]);
        assert!(matches!(
            sh.distance(&bad, &v(&sh, &[1, 1, 1])),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
        assert!(sh.vertex(&[5, 1, 1]).is_err());
        assert!(sh.vertex(&[0, 1, 1]).is_err());
    }

    #[test]
    fn interval_examples() {
        let sh = shape("4,4,4");
        let u = v(&sh, &[1, 1, 1]);
        assert_eq!(sh.interval(&u, &u).unwrap(), vec![u.clone()]);
        let got = sh.interval(&u, &v(&sh, &[2, 2, 1])).unwrap();
        let want: Vec<_> = [[1, 1, 1], [2, 1, 1], [1, 2, 1], [2, 2, 1]]
            .iter()
            .map(|c| v(&sh, c))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn hypercube_examples() {
        let sh = shape("3,3");
        let u = v(&sh, &[1, 1]);
        assert!(sh.interval_is_hypercube(&u, &u).unwrap());
        assert!(sh.interval_is_hypercube(&u, &v(&sh, &[2, 2])).unwrap());
    }

    #[test]
    fn square_examples() {
        let sh = shape("2,2,2");
        let sq = sh
            .cartesian_squares_through(&v(&sh, &[1, 1, 1]), &v(&sh, &[2, 2, 1]))
            .unwrap();
        assert_eq!(sq.len(), 1);
        let corners: Vec<String> = sq[0].corners.iter().map(|c| c.to_string()).collect();
        assert_eq!(corners, ["(1,1,1)", "(1,2,1)", "(2,2,1)", "(2,1,1)"]);

        let sh = shape("4,3,2");
        let sq = sh
            .cartesian_squares_through(&v(&sh, &[1, 1, 1]), &v(&sh, &[1, 3, 2]))
            .unwrap();
        assert_eq!(sq[0].positions, (1, 2));
        let mut corners: Vec<String> = sq[0].corners.iter().map(|c| c.to_string()).collect();
        corners.sort();
        assert_eq!(corners, ["(1,1,1)", "(1,1,2)", "(1,3,1)", "(1,3,2)"]);

        assert!(matches!(
            sh.cartesian_squares_through(&v(&sh, &[1, 1, 1]), &v(&sh, &[2, 1, 1])),
            Err(Error::NotDistanceTwo(1))
        ));
    }

    #[test]
    fn encode_examples() {
        let sh = shape("4,3,2");
        assert_eq!(sh.encode(&v(&sh, &[1, 1, 1])).unwrap(), VertexIndex(0));
        assert_eq!(sh.encode(&v(&sh, &[2, 1, 1])).unwrap(), VertexIndex(1));
        assert_eq!(sh.encode(&v(&sh, &[1, 1, 2])).unwrap(), VertexIndex(12));
        assert!(sh.decode(VertexIndex(24)).is_err());
    }

    #[test]
    fn vertex_literals() {
        let x: HVertex = "(2, 1,1)".parse().unwrap();
        assert_eq!(x.to_string(), "(2,1,1)");
        assert!("2,1,1".parse::<HVertex>().is_err());
        assert!("(0,1)".parse::<HVertex>().is_err());
    }
}
