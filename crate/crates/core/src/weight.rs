use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Integer coordinates in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The Weyl vector: all coordinates equal to one.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Weight(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Largest coordinate; the truncation height used by enumerations.
    pub fn max_coord(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// `self - k * other`, used for reflections and root strings.
    pub fn sub_scaled(&self, k: i64, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - k * b)
                .collect(),
        )
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for Weight {
    fn from(coords: Vec<i64>) -> Self {
        Weight(coords)
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(coords: [i64; N]) -> Self {
        Weight(coords.to_vec())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `1,0` (surrounding parentheses or brackets are tolerated).
    fn from_str(s: &str) -> Result<Self, Error> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if trimmed.trim().is_empty() {
            return Err(Error::MalformedWeight(s.to_string()));
        }
        trimmed
            .split(',')
            .map(|part| part.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| Error::MalformedWeight(s.to_string()))
    }
}

/// All dominant weights whose coordinates are at most `height`, ordered by
/// level (coordinate sum) and then lexicographically.
pub fn dominant_weights_up_to(rank: usize, height: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    if height < 0 {
        return out;
    }
    let mut current = vec![0i64; rank];
    loop {
        out.push(Weight(current.clone()));
        // odometer increment
        let mut i = rank;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.level().cmp(&b.level()).then_with(|| a.cmp(b)));
                return out;
            }
            i -= 1;
            if current[i] < height {
                current[i] += 1;
                break;
            }
            current[i] = 0;
        }
    }
}
