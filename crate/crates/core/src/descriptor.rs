//! JSON descriptors for spaces, triangular arrays, and embedding specs.
//!
//! Complex numbers serialize as `[re, im]` arrays throughout.

use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingSpec;
use crate::error::{Error, Result};
use crate::hb::{hb_gram_with_working_factor, HbDescriptor, SymbolB, DEFAULT_WORKING_FACTOR};
use crate::poly::TaylorPoly;
use crate::scalar::{Scalar, C};
use crate::schemes::TriangularArray;
use crate::spaces::{GramMatrix, SpaceHandle, WeightSequence};

fn to_pair<T: Scalar>(c: C<T>) -> [T; 2] {
    [c.re, c.im]
}

fn from_pair<T: Scalar>(p: [T; 2]) -> C<T> {
    num_complex::Complex::new(p[0], p[1])
}

fn default_p<T: Scalar>() -> T {
    T::of(2.0)
}

fn default_oversampling() -> usize {
    16
}

fn default_working_factor() -> usize {
    DEFAULT_WORKING_FACTOR
}

fn default_norm_bound<T: Scalar>() -> T {
    T::one()
}

/// Space descriptor, `{"kind": "weighted" | "gram" | "sup" | "hb", ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: serde::de::DeserializeOwned"
))]
pub enum SpaceDescriptor<T: Scalar> {
    Weighted {
        #[serde(default = "default_p")]
        p: T,
        alpha: Vec<T>,
    },
    Gram {
        /// Row-major entries as `[re, im]` pairs; the length must be a
        /// perfect square.
        entries: Vec<[T; 2]>,
    },
    Sup {
        #[serde(default = "default_oversampling")]
        oversampling_factor: usize,
        #[serde(default)]
        horizon: Option<usize>,
    },
    Hb {
        /// Coefficients of the symbol `b` as `[re, im]` pairs.
        b: Vec<[T; 2]>,
        horizon: usize,
        #[serde(default = "default_working_factor")]
        working_factor: usize,
    },
}

impl<T: Scalar> SpaceDescriptor<T> {
    /// Builds the space; `default_horizon` applies to kinds that do not carry
    /// a horizon structurally.
    pub fn build(&self, default_horizon: usize) -> Result<SpaceHandle<T>> {
        match self {
            Self::Weighted { p, alpha } => {
                SpaceHandle::weighted(*p, WeightSequence::new(alpha.clone())?)
            }
            Self::Gram { entries } => {
                let dim = integer_sqrt(entries.len()).ok_or_else(|| Error::InvalidParameter {
                    message: format!(
                        "field `entries` has {} values, not a square matrix",
                        entries.len()
                    ),
                })?;
                let entries = entries.iter().map(|&p| from_pair(p)).collect();
                Ok(SpaceHandle::gram(GramMatrix::new(entries, dim)?))
            }
            Self::Sup {
                oversampling_factor,
                horizon,
            } => SpaceHandle::sup_circle(*oversampling_factor, horizon.unwrap_or(default_horizon)),
            Self::Hb {
                b,
                horizon,
                working_factor,
            } => {
                let poly = TaylorPoly::new(b.iter().map(|&p| from_pair(p)).collect())?;
                let symbol = SymbolB::new(poly)?;
                let descriptor = hb_gram_with_working_factor(symbol, *horizon, *working_factor)?;
                Ok(SpaceHandle::hb(descriptor))
            }
        }
    }

    /// Descriptor for an existing space (H(b) spaces export their Gram
    /// matrix, which rebuilds without redoing the symbol work).
    pub fn from_space(space: &SpaceHandle<T>) -> Self {
        match space {
            SpaceHandle::Weighted { p, weights } => Self::Weighted {
                p: *p,
                alpha: weights.alpha().to_vec(),
            },
            SpaceHandle::Gram(g) => Self::Gram {
                entries: g.entries().iter().map(|&c| to_pair(c)).collect(),
            },
            SpaceHandle::Sup {
                oversampling,
                horizon,
            } => Self::Sup {
                oversampling_factor: *oversampling,
                horizon: Some(*horizon),
            },
            SpaceHandle::Hb(d) => Self::Gram {
                entries: d.gram().entries().iter().map(|&c| to_pair(c)).collect(),
            },
        }
    }

    /// Gram-matrix export of an H(b) descriptor.
    pub fn from_hb(descriptor: &HbDescriptor<T>) -> Self {
        Self::Gram {
            entries: descriptor
                .gram()
                .entries()
                .iter()
                .map(|&c| to_pair(c))
                .collect(),
        }
    }
}

fn integer_sqrt(n: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// Triangular array file: `{"rows": [[[re,im]], [[re,im],[re,im]], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: serde::de::DeserializeOwned"
))]
pub struct TriangularArrayFile<T: Scalar> {
    pub rows: Vec<Vec<[T; 2]>>,
}

impl<T: Scalar> TriangularArrayFile<T> {
    pub fn build(&self) -> Result<TriangularArray<T>> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&p| from_pair(p)).collect())
            .collect();
        TriangularArray::new(rows)
    }

    pub fn from_array(array: &TriangularArray<T>) -> Self {
        let rows = (0..array.rows())
            .map(|n| {
                array
                    .row(n)
                    .expect("row within bounds")
                    .iter()
                    .map(|&c| to_pair(c))
                    .collect()
            })
            .collect();
        Self { rows }
    }
}

/// Embedding spec file: `{"alpha": [...], "p": 2.0, "M": 1.0, "horizon": N}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: serde::de::DeserializeOwned"
))]
pub struct EmbeddingSpecFile<T: Scalar> {
    pub alpha: Vec<T>,
    #[serde(default = "default_p")]
    pub p: T,
    #[serde(rename = "M", default = "default_norm_bound")]
    pub norm_bound: T,
    #[serde(default)]
    pub horizon: Option<usize>,
}

impl<T: Scalar> EmbeddingSpecFile<T> {
    pub fn build(&self) -> Result<EmbeddingSpec<T>> {
        if let Some(h) = self.horizon {
            if h + 1 != self.alpha.len() {
                return Err(Error::InvalidParameter {
                    message: format!(
                        "field `horizon` ({h}) disagrees with `alpha` length {}",
                        self.alpha.len()
                    ),
                });
            }
        }
        EmbeddingSpec::new(
            WeightSequence::new(self.alpha.clone())?,
            self.p,
            self.norm_bound,
        )
    }
}
