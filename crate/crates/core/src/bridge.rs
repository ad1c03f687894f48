//! Total mutual-visibility sets as clique families.
//!
//! Vertex `(z1, ..., zr)` of `K_{n1} □ ... □ K_{nr}` corresponds to the
//! transversal clique `{u_{1,z1}, ..., u_{r,zr}}` of the complete
//! multipartite graph `K_{n1,...,nr}`. Two vertices are at distance 2
//! exactly when their cliques share `r - 2` vertices, so TMV sets are the
//! clique families with no `(r-2)`-intersection, i.e. the `F_r`-free
//! subhypergraphs of the complete r-partite r-graph.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hamming::{HVertex, HammingShape};
use crate::solver::{mut_exact_with, SolveOptions, DEFAULT_CAP};
use crate::vertex_set::VertexSet;

/// `u_{class, element}`, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultipartiteVertex {
    pub class: usize,
    pub element: u32,
}

/// A clique of `K_{n1,...,nr}`: at most one vertex per class, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique(Vec<MultipartiteVertex>);

impl Clique {
    pub fn new(mut members: Vec<MultipartiteVertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        Clique(members)
    }

    pub fn members(&self) -> &[MultipartiteVertex] {
        &self.0
    }

    /// One vertex in each of the `r` classes.
    pub fn is_transversal(&self, r: usize) -> bool {
        self.0.len() == r && self.0.iter().enumerate().all(|(k, m)| m.class == k)
    }

    /// Number of shared vertices.
    pub fn intersection(&self, other: &Clique) -> usize {
        self.0.iter().filter(|m| other.0.binary_search(m).is_ok()).count()
    }

    fn transversal_from(v: &HVertex) -> Self {
        Clique(
            v.zero_based()
                .iter()
                .enumerate()
                .map(|(class, &element)| MultipartiteVertex { class, element })
                .collect(),
        )
    }
}

impl fmt::Display for Clique {
    /// `(class:element, ...)`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", m.class + 1, m.element + 1)?;
        }
        f.write_str(")")
    }
}

/// A set of cliques of `K_{n1,...,nr}`. Duplicates collapse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueFamily {
    shape: HammingShape,
    cliques: BTreeSet<Clique>,
}

impl CliqueFamily {
    /// Members must use classes `< r` and elements within their class.
    pub fn new(shape: HammingShape, cliques: impl IntoIterator<Item = Clique>) -> Result<Self> {
        let cliques: BTreeSet<Clique> = cliques.into_iter().collect();
        for c in &cliques {
            for m in &c.0 {
                let size = *shape.sizes().get(m.class).ok_or_else(|| {
                    Error::InvalidParameter(format!("clique {c} uses class {} of {}", m.class + 1, shape.rank()))
                })?;
                if m.element >= size {
                    return Err(Error::CoordinateOutOfRange {
                        position: m.class + 1,
                        value: u64::from(m.element) + 1,
                        size,
                    });
                }
            }
            if c.0.windows(2).any(|w| w[0].class == w[1].class) {
                return Err(Error::InvalidParameter(format!(
                    "{c} has two vertices in one class and is not a clique"
                )));
            }
        }
        Ok(CliqueFamily { shape, cliques })
    }

    pub fn shape(&self) -> &HammingShape {
        &self.shape
    }

    pub fn cliques(&self) -> impl Iterator<Item = &Clique> {
        self.cliques.iter()
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn contains(&self, c: &Clique) -> bool {
        self.cliques.contains(c)
    }
}

fn require_rank(shape: &HammingShape) -> Result<()> {
    if shape.rank() < 3 {
        return Err(Error::RankTooSmall {
            need: 3,
            got: shape.rank(),
        });
    }
    Ok(())
}

/// One transversal clique per member: coordinate `j` picks the element of class `j`.
pub fn tmv_to_clique_family(shape: &HammingShape, set: &VertexSet) -> Result<CliqueFamily> {
    require_rank(shape)?;
    let cliques = set.vertices(shape)?.iter().map(Clique::transversal_from).collect();
    Ok(CliqueFamily {
        shape: shape.clone(),
        cliques,
    })
}

/// Inverse of [`tmv_to_clique_family`].
pub fn clique_family_to_tmv(family: &CliqueFamily) -> Result<VertexSet> {
    require_rank(&family.shape)?;
    let r = family.shape.rank();
    let mut set = VertexSet::for_shape(&family.shape);
    for c in &family.cliques {
        if !c.is_transversal(r) {
            return Err(Error::NonTransversal(c.to_string()));
        }
        let v = HVertex::from_zero_based(c.0.iter().map(|m| m.element).collect());
        set.insert(family.shape.encode(&v)?.0)?;
    }
    Ok(set)
}

/// All members transversal and no two sharing exactly `r - 2` vertices.
pub fn is_valid_clique_family(family: &CliqueFamily) -> bool {
    let r = family.shape.rank();
    if !family.cliques.iter().all(|c| c.is_transversal(r)) {
        return false;
    }
    let members: Vec<&Clique> = family.cliques.iter().collect();
    members
        .iter()
        .enumerate()
        .all(|(k, a)| members[k + 1..].iter().all(|b| r < 2 || a.intersection(b) != r - 2))
}

/// `ex(K^(r)_{n1,...,nr}, F_r)`, the largest `F_r`-free family, computed
/// as `mu_t` with the solver witness translated into cliques.
pub fn ex_fr(shape: &HammingShape) -> Result<(usize, CliqueFamily)> {
    require_rank(shape)?;
    let cert = mut_exact_with(shape, &SolveOptions::default(), DEFAULT_CAP)?;
    let family = tmv_to_clique_family(shape, &cert.witness)?;
    Ok((cert.value, family))
}
