use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The finite reflection groups this crate can realize.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    /// Symmetric group on `n + 1` letters acting on ℝⁿ⁺¹.
    A(usize),
    /// Hyperoctahedral group acting on ℝⁿ.
    B(usize),
    /// Dihedral group of order `2m` acting on ℝ².
    I2(u32),
    /// Symmetry group of the icosahedron acting on ℝ³.
    H3,
    /// Direct product acting block-diagonally.
    Product(Vec<GroupType>),
}

impl GroupType {
    /// Validates parameter ranges.
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            GroupType::A(n) if *n >= 1 => Ok(()),
            GroupType::B(n) if *n >= 2 => Ok(()),
            GroupType::I2(m) if *m >= 2 => Ok(()),
            GroupType::H3 => Ok(()),
            GroupType::Product(factors) if factors.len() >= 2 => {
                for f in factors {
                    if matches!(f, GroupType::Product(_)) {
                        return Err(Error::UnsupportedType(self.to_string()));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            _ => Err(Error::UnsupportedType(self.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            GroupType::A(n) | GroupType::B(n) => *n,
            GroupType::I2(_) => 2,
            GroupType::H3 => 3,
            GroupType::Product(fs) => fs.iter().map(GroupType::rank).sum(),
        }
    }

    pub fn factors(&self) -> Vec<&GroupType> {
        match self {
            GroupType::Product(fs) => fs.iter().collect(),
            other => vec![other],
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::A(n) => write!(f, "A{n}"),
            GroupType::B(n) => write!(f, "B{n}"),
            GroupType::I2(m) => write!(f, "I2:{m}"),
            GroupType::H3 => write!(f, "H3"),
            GroupType::Product(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_factor(s: &str) -> Result<GroupType, Error> {
    let bad = || Error::Parse(format!("invalid group descriptor `{s}`"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    let ty = if s == "H3" {
        GroupType::H3
    } else if let Some(m) = s.strip_prefix("I2:") {
        GroupType::I2(m.parse().map_err(|_| bad())?)
    } else if let Some(n) = s.strip_prefix('A') {
        GroupType::A(num(n)?)
    } else if let Some(n) = s.strip_prefix('B') {
        GroupType::B(num(n)?)
    } else if s.starts_with(['D', 'E', 'F', 'H', 'G']) {
        return Err(Error::UnsupportedType(s.to_string()));
    } else {
        return Err(bad());
    };
    ty.validate()?;
    Ok(ty)
}

/// Grammar: `A<n>`, `B<n>`, `I2:<m>`, `H3`, joined by `x` for products.
impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.trim().split('x').collect();
        if parts.len() == 1 {
            return parse_factor(parts[0]);
        }
        let ty = GroupType::Product(parts.into_iter().map(parse_factor).collect::<Result<_, _>>()?);
        ty.validate()?;
        Ok(ty)
    }
}
