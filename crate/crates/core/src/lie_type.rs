use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Series::E | Series::F | Series::G)
    }
}

/// A simple factor such as `B3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            let reason = match series {
                Series::A => "A_n needs n >= 1",
                Series::B => "B_n needs n >= 2",
                Series::C => "C_n needs n >= 3 (use B2 for C2)",
                Series::D => "D_n needs n >= 4",
                Series::E => "E_n exists only for n = 6, 7, 8",
                Series::F => "only F4 exists",
                Series::G => "only G2 exists",
            };
            return Err(Error::InvalidType {
                factor: format!("{}{}", series.letter(), rank),
                reason: reason.to_string(),
            });
        }
        Ok(SimpleType { series, rank })
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Cartan matrix `A[i][j] = 2(α_i, α_j)/(α_i, α_i)` with Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Series::E => {
                // 1-3-4-5-6(-7-8), node 2 attached to node 4.
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Series::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Series::G => link(0, 1),
        }
        match self.series {
            // α_n short
            Series::B => a[n - 1][n - 2] = -2,
            // α_n long
            Series::C => a[n - 2][n - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            Series::F => a[2][1] = -2,
            // α_1 short, α_2 long
            Series::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// A finite product of simple types, e.g. `B2xA1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieType {
    factors: Vec<SimpleType>,
}

impl LieType {
    pub fn new(factors: Vec<SimpleType>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidType {
                factor: String::new(),
                reason: "at least one simple factor is required".into(),
            });
        }
        Ok(LieType { factors })
    }

    pub fn simple(series: Series, rank: usize) -> Result<Self> {
        LieType::new(vec![SimpleType::new(series, rank)?])
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn has_exceptional_factor(&self) -> bool {
        self.factors.iter().any(|f| f.series.is_exceptional())
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .trim()
            .split(['x', 'X'])
            .map(parse_factor)
            .collect::<Result<Vec<_>>>()?;
        LieType::new(factors)
    }
}

fn parse_factor(raw: &str) -> Result<SimpleType> {
    let text = raw.trim();
    let invalid = |reason: &str| Error::InvalidType {
        factor: text.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = text.chars();
    let letter = chars.next().ok_or_else(|| invalid("empty factor"))?;
    let series = match letter.to_ascii_uppercase() {
        'A' => Series::A,
        'B' => Series::B,
        'C' => Series::C,
        'D' => Series::D,
        'E' => Series::E,
        'F' => Series::F,
        'G' => Series::G,
        _ => return Err(invalid("series letter must be one of A-G")),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| invalid("rank must be a positive integer"))?;
    SimpleType::new(series, rank)
}
