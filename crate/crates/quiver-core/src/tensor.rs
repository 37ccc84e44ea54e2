//! Sparse integer combinations of tuples of partitions: elements of a tensor
//! power of the ring of symmetric functions, in the Schur basis.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::partition::Partition;

/// An element of `Λ^{⊗arity}`: a map from arity-length tuples of partitions
/// to nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Partition>, i64>,
}

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("key has {got} components, expected arity {arity}")]
    ArityMismatch { arity: usize, got: usize },
    #[error("no expansion supplied for partition {0}")]
    MissingExpansion(Partition),
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1);
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The single basis element with coefficient 1.
    pub fn basis(key: Vec<Partition>) -> Self {
        let mut t = TensorElement::zero(key.len());
        t.add_term(key, 1);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Partition>, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[Partition]) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    /// Adds `c` to the coefficient of `key`, purging the key when it
    /// cancels to zero. Overflow aborts: silent wraparound would falsify
    /// the verifier.
    pub fn add_term(&mut self, key: Vec<Partition>, c: i64) {
        assert_eq!(key.len(), self.arity, "tensor key arity mismatch");
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = entry.checked_add(c).expect("tensor coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    /// Linear substitution at one tensor position. Every partition occurring
    /// at `position` must have an entry in `expansion`; expansions may have a
    /// different arity at that slot (replacing one factor by several or by a
    /// straightened single factor), but must all agree.
    pub fn substitute(
        &self,
        position: usize,
        expansion: &BTreeMap<Partition, TensorElement>,
    ) -> Result<TensorElement, TensorError> {
        assert!(position < self.arity);
        let slot_arity = expansion
            .values()
            .map(|e| e.arity())
            .next()
            .unwrap_or(1);
        let mut out = TensorElement::zero(self.arity - 1 + slot_arity);
        for (key, &c) in &self.terms {
            let ex = expansion
                .get(&key[position])
                .ok_or_else(|| TensorError::MissingExpansion(key[position].clone()))?;
            assert_eq!(ex.arity(), slot_arity, "inconsistent expansion arities");
            for (sub, &d) in &ex.terms {
                let mut new_key = Vec::with_capacity(out.arity);
                new_key.extend_from_slice(&key[..position]);
                new_key.extend_from_slice(sub);
                new_key.extend_from_slice(&key[position + 1..]);
                out.add_term(new_key, c.checked_mul(d).expect("tensor coefficient overflow"));
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    shapes: Vec<Partition>,
    coeff: i64,
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (shapes, &coeff) in &self.terms {
            seq.serialize_element(&TermRepr {
                shapes: shapes.clone(),
                coeff,
            })?;
        }
        seq.end()
    }
}

impl TensorElement {
    /// Rebuilds an element from serialized terms; the arity must be given
    /// since the term list may be empty.
    pub fn from_terms(arity: usize, terms: Vec<(Vec<Partition>, i64)>) -> Result<Self, TensorError> {
        let mut out = TensorElement::zero(arity);
        for (key, c) in terms {
            if key.len() != arity {
                return Err(TensorError::ArityMismatch { arity, got: key.len() });
            }
            out.add_term(key, c);
        }
        Ok(out)
    }
}
