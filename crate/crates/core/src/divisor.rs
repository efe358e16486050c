use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Integer chip count per vertex; negative entries are debt.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Divisor {
    pub values: Vec<i64>,
}

impl Divisor {
    pub fn new(values: Vec<i64>) -> Self {
        Self { values }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![0; len])
    }

    /// `𝟙_v`.
    pub fn unit(len: usize, v: usize) -> Self {
        let mut d = Self::zero(len);
        d.values[v] = 1;
        d
    }

    /// `𝟙_U`: one chip on every member of `set`.
    pub fn indicator(set: &VertexSet) -> Self {
        let mut d = Self::zero(set.capacity());
        for v in set {
            d.values[v] = 1;
        }
        d
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.values.iter().all(|&c| c >= 0)
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(v, _)| v),
        )
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected,
                got: self.len(),
            })
        }
    }

    /// Parses `"v0,v1,…"` (whitespace tolerated) or the JSON object `{"values":[…]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            return serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()));
        }
        trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("divisor entry {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("divisor JSON is always serializable")
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor{:?}", self.values)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Index<usize> for Divisor {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.values[v]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.values[v]
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor::new(self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor::new(self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor::new(self.values.iter().map(|a| -a).collect())
    }
}

/// Net number of times each vertex fires. Applying a script `σ` maps `D` to
/// `D − Lσ`, with `L` the graph Laplacian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiringScript {
    pub fires: Vec<i64>,
}

impl FiringScript {
    pub fn zero(len: usize) -> Self {
        Self { fires: vec![0; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.fires.iter().all(|&f| f == 0)
    }

    pub(crate) fn add_set(&mut self, set: &VertexSet, times: i64) {
        for v in set {
            self.fires[v] += times;
        }
    }

    /// Shifts entries so the minimum is zero. The all-ones script acts trivially.
    pub fn normalize(&mut self) {
        if let Some(&min) = self.fires.iter().min() {
            for f in &mut self.fires {
                *f -= min;
            }
        }
    }
}
