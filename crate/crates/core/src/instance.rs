//! Instance files: one TOML document describing the action and, optionally,
//! the marginals.
//!
//! ```toml
//! x_size = 2
//! y_size = 2
//!
//! [[generators]]
//! perm_x = [1, 0]
//! perm_y = [1, 0]
//!
//! [marginals]
//! mu1 = ["1/2", "1/2"]
//! mu2 = ["1/2", "1/2"]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::group_action::{ActionSpec, Generator};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed instance: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad rational {0:?}: expected \"p/q\" with q > 0")]
    Rational(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    x_size: usize,
    y_size: usize,
    #[serde(default)]
    generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marginals: Option<RawMarginals>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawMarginals {
    mu1: Vec<String>,
    mu2: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub spec: ActionSpec,
    pub marginals: Option<(Vec<BigRational>, Vec<BigRational>)>,
}

/// Parses `"p/q"` or `"p"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::Rational(s.to_string());
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if !q.is_positive() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let raw: RawInstance = toml::from_str(text)?;
        let marginals = match raw.marginals {
            None => None,
            Some(m) => {
                let parse_all = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>();
                Some((parse_all(&m.mu1)?, parse_all(&m.mu2)?))
            }
        };
        Ok(Instance {
            spec: ActionSpec {
                x_size: raw.x_size,
                y_size: raw.y_size,
                generators: raw.generators,
            },
            marginals,
        })
    }

    pub fn to_toml(&self) -> String {
        let raw = RawInstance {
            x_size: self.spec.x_size,
            y_size: self.spec.y_size,
            generators: self.spec.generators.clone(),
            marginals: self.marginals.as_ref().map(|(a, b)| RawMarginals {
                mu1: a.iter().map(format_rational).collect(),
                mu2: b.iter().map(format_rational).collect(),
            }),
        };
        toml::to_string(&raw).expect("instance serializes")
    }

    /// Instance with uniform marginals attached.
    pub fn with_uniform_marginals(spec: ActionSpec) -> Self {
        let u = |k: usize| vec![BigRational::new(1.into(), k.into()); k];
        let marginals = (!spec.x_size.is_zero() && !spec.y_size.is_zero())
            .then(|| (u(spec.x_size), u(spec.y_size)));
        Instance { spec, marginals }
    }
}

/// Hex SHA-256 of the instance bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
