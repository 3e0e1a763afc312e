use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};

/// A polynomial invariant of degree `2d` given by slot-wise index pairings.
///
/// `perms[s][k] = j` pairs the slot-`s` index of the `k`-th amplitude copy
/// with the slot-`s` index of the `j`-th conjugated copy (0-based here,
/// 1-based in the JSON form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionPattern {
    n: usize,
    degree: usize,
    perms: Vec<Vec<usize>>,
    label: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct PatternDoc {
    n: usize,
    degree: usize,
    perms: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl ContractionPattern {
    pub fn new(perms: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        let n = perms.len();
        check_size(n)?;
        let degree = perms[0].len();
        if degree == 0 {
            return Err(Error::Pattern("degree must be at least 1".into()));
        }
        for (s, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::Pattern(format!(
                    "slot {} has {} entries, expected {degree}",
                    s + 1,
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &j in p {
                if j >= degree || std::mem::replace(&mut seen[j], true) {
                    return Err(Error::Pattern(format!("slot {} is not a permutation", s + 1)));
                }
            }
        }
        Ok(Self {
            n,
            degree,
            perms,
            label: label.into(),
        })
    }

    /// `(norm²)^d`: every slot pairs copy `k` with conjugate `k`.
    pub fn identity(n: usize, degree: usize) -> Result<Self> {
        Self::new(vec![(0..degree).collect(); n], format!("N{}", 2 * degree))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Pattern whose value is the complex conjugate of this one's.
    pub fn conjugate(&self) -> Self {
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (k, &j) in p.iter().enumerate() {
                    inv[j] = k;
                }
                inv
            })
            .collect();
        Self {
            n: self.n,
            degree: self.degree,
            perms,
            label: format!("{}*", self.label),
        }
    }

    /// Parses `{"n", "degree", "perms": [[...], ...]}` with 1-based images.
    pub fn from_json(document: &str) -> Result<Self> {
        let doc: PatternDoc =
            serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.perms.len() != doc.n {
            return Err(Error::Dimension {
                expected: doc.n,
                found: doc.perms.len(),
            });
        }
        let perms = doc
            .perms
            .iter()
            .map(|p| {
                if p.len() != doc.degree {
                    return Err(Error::Dimension {
                        expected: doc.degree,
                        found: p.len(),
                    });
                }
                p.iter()
                    .map(|&j| {
                        j.checked_sub(1)
                            .ok_or_else(|| Error::Pattern("permutation images are 1-based".into()))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(perms, doc.label.unwrap_or_else(|| "user".into()))
    }

    pub fn to_json(&self) -> String {
        let doc = PatternDoc {
            n: self.n,
            degree: self.degree,
            perms: self
                .perms
                .iter()
                .map(|p| p.iter().map(|j| j + 1).collect())
                .collect(),
            label: Some(self.label.clone()),
        };
        serde_json::to_string(&doc).expect("pattern serializes")
    }
}
