use clap::ValueEnum;

use coxeter_assoc::cambrian::CoxeterElement;
use coxeter_assoc::coxeter::{CoxeterSystem, DEFAULT_BOUND};
use coxeter_assoc::{Arithmetic, Error, GroupType, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithMode {
    Auto,
    Exact,
    Float,
}

impl From<ArithMode> for Arithmetic {
    fn from(m: ArithMode) -> Self {
        match m {
            ArithMode::Auto => Arithmetic::Auto,
            ArithMode::Exact => Arithmetic::Exact,
            ArithMode::Float => Arithmetic::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Off,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    Permutahedron,
    Associahedron,
    CambrianLattice,
    WeakOrder,
    RootSystem,
}

/// How the basepoint was requested on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum BasepointSpec {
    Default,
    /// Coordinates in the simple-root basis.
    Simple(Vec<Scalar>),
    /// Coordinates in the ambient space.
    Ambient(Vec<Scalar>),
}

impl BasepointSpec {
    /// Accepts `default`, `delta:x,y,...` or `ambient:x,y,...`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text == "default" {
            return Ok(BasepointSpec::Default);
        }
        let (kind, coords) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("basepoint `{text}` must be default, delta:… or ambient:…")))?;
        let coords = coords
            .split(',')
            .map(|x| x.parse::<Scalar>())
            .collect::<Result<Vec<_>, _>>()?;
        match kind {
            "delta" => Ok(BasepointSpec::Simple(coords)),
            "ambient" => Ok(BasepointSpec::Ambient(coords)),
            other => Err(Error::Parse(format!("unknown basepoint kind `{other}`"))),
        }
    }

    pub fn is_default(&self) -> bool {
        matches!(self, BasepointSpec::Default)
    }

    /// Resolves to an ambient vector, converted to floats when the system is inexact.
    pub fn resolve(&self, cs: &CoxeterSystem) -> Result<Vector, Error> {
        let rs = &cs.roots;
        let v = match self {
            BasepointSpec::Default => return Ok(rs.default_basepoint()),
            BasepointSpec::Simple(c) => {
                if c.len() != rs.rank() {
                    return Err(Error::DimensionMismatch {
                        expected: rs.rank(),
                        found: c.len(),
                    });
                }
                rs.from_simple_coordinates(&Vector(c.clone()))
            }
            BasepointSpec::Ambient(c) => {
                if c.len() != rs.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: rs.dim(),
                        found: c.len(),
                    });
                }
                Vector(c.clone())
            }
        };
        if rs.is_exact() {
            if !v.is_exact() {
                return Err(Error::Parse("decimal basepoint coordinates need --arith float".into()));
            }
            Ok(v)
        } else {
            Ok(v.to_float())
        }
    }
}

/// Everything a command needs, parsed and validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: GroupType,
    pub coxeter: Option<String>,
    pub basepoint: BasepointSpec,
    pub arith: ArithMode,
}

impl RunConfig {
    pub fn new(group: &str, coxeter: Option<String>, basepoint: &str, arith: ArithMode) -> Result<Self, Error> {
        let group: GroupType = group.parse()?;
        group.validate()?;
        Ok(RunConfig {
            group,
            coxeter,
            basepoint: BasepointSpec::parse(basepoint)?,
            arith,
        })
    }

    pub fn system(&self) -> Result<CoxeterSystem, Error> {
        CoxeterSystem::build_with(&self.group, self.arith.into(), DEFAULT_BOUND)
    }

    /// The requested Coxeter element, or the product of the generators in index order.
    pub fn coxeter_element(&self, cs: &CoxeterSystem) -> Result<CoxeterElement, Error> {
        match &self.coxeter {
            Some(word) => CoxeterElement::parse(cs, word),
            None => CoxeterElement::from_word(cs, &(0..cs.rank()).collect::<Vec<_>>()),
        }
    }
}
