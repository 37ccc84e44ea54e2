//! Integer partitions, stored normalized (weakly decreasing, no trailing zeros).

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A partition: weakly decreasing sequence of positive integers.
///
/// The empty partition is `Partition::empty()`. Constructors drop trailing
/// zeros, so `(3,1,0,0)` and `(3,1)` are the same value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from a weakly decreasing sequence, dropping
    /// trailing zeros. Returns `None` if the sequence increases anywhere.
    pub fn new(parts: &[u32]) -> Option<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// Like `new` but panics on invalid input; convenient in tests and
    /// for shapes that are valid by construction.
    pub fn from_parts(parts: &[u32]) -> Self {
        Partition::new(parts).expect("parts must be weakly decreasing")
    }

    /// An `a` x `b` rectangle, `(b, b, ..., b)` with `a` parts.
    pub fn rectangle(a: u32, b: u32) -> Self {
        if a == 0 || b == 0 {
            Partition::empty()
        } else {
            Partition {
                parts: vec![b; a as usize],
            }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Part at `row` (0-indexed), 0 beyond the last row.
    pub fn part(&self, row: usize) -> u32 {
        self.parts.get(row).copied().unwrap_or(0)
    }

    /// Containment of Young diagrams: `self[i] <= other[i]` for all i.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, &p)| p <= other.part(i))
    }

    /// True when `outer/self` is a horizontal strip: the shapes interlace,
    /// `outer[i] >= self[i] >= outer[i+1]`.
    pub fn horizontal_strip_under(&self, outer: &Partition) -> bool {
        if !self.contained_in(outer) {
            return false;
        }
        (0..outer.len()).all(|i| self.part(i) >= outer.part(i + 1))
    }

    /// All partitions contained in `self`, in no particular order.
    pub fn sub_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            let row = prefix.len();
            out.push(Partition::from_parts(&prefix));
            if row == self.len() {
                continue;
            }
            let hi = self.part(row).min(prefix.last().copied().unwrap_or(u32::MAX));
            for v in 1..=hi {
                let mut next = prefix.clone();
                next.push(v);
                stack.push(next);
            }
        }
        out
    }

    /// All partitions of weight `w` with at most `max_len` parts, each at
    /// most `max_part`.
    pub fn enumerate(w: u64, max_len: usize, max_part: u32) -> Vec<Partition> {
        fn rec(rem: u64, rows_left: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition::from_parts(prefix));
                return;
            }
            if rows_left == 0 {
                return;
            }
            let hi = (cap as u64).min(rem) as u32;
            for v in (1..=hi).rev() {
                prefix.push(v);
                rec(rem - v as u64, rows_left - 1, v, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(w, max_len, max_part, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(&parts).ok_or_else(|| D::Error::custom("partition parts must be weakly decreasing"))
    }
}
