use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::index::{aggregate, pi_choices};
use super::BoundarySpec;
use crate::error::Error;
use crate::numeric::{expect_integer, factorial, HalfInt, Rational};
use crate::polys::{p_multi, ptilde_multi, q_multi};

/// Which formula evaluates a tight count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Pick by the number of odd lengths.
    Auto,
    /// All lengths even.
    Bipartite,
    /// Exactly two odd lengths.
    Quasi,
    /// At least three odd lengths; first line of the unified formula.
    General,
    /// The unified three-line formula, valid for every parity pattern.
    Unified,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Bipartite => "bipartite",
            Method::Quasi => "quasi",
            Method::General => "general",
            Method::Unified => "unified",
        }
    }

    /// The concrete method `Auto` resolves to for `odd` odd lengths.
    pub fn resolve(self, odd: usize) -> Method {
        match self {
            Method::Auto => match odd {
                0 => Method::Bipartite,
                2 => Method::Quasi,
                1 => Method::Unified,
                _ => Method::General,
            },
            m => m,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "auto" => Method::Auto,
            "bipartite" => Method::Bipartite,
            "quasi" => Method::Quasi,
            "general" => Method::General,
            "unified" => Method::Unified,
            other => return Err(format!("unknown method '{other}'")),
        })
    }
}

/// The three lines of the unified formula, in order:
/// the `I_n` sum, the `I_{s=0}` sum and the `I^{(-1,1)}_{s=0}` sum.
pub fn tight_lines(spec: &BoundarySpec) -> Result<[BigInt; 3], Error> {
    spec.require_n(3)?;
    let ms = spec.ms();
    let n = ms.len();
    let k = (n - 3) as u32;

    let choices: Vec<_> = ms
        .iter()
        .map(|&m| pi_choices(m, &[0, 1], k, false))
        .collect();
    let mut line1 = BigInt::zero();
    let mut line2 = BigInt::zero();
    for ((r, s, e), t) in aggregate(&choices, k) {
        if e != r as i64 + 1 || n as i64 - e != s as i64 + 2 {
            continue;
        }
        if s >= 1 {
            line1 += factorial(r) * &t.eps_s * factorial(s - 1);
        } else {
            line2 += factorial(r) * &t.w;
        }
    }

    let choices: Vec<_> = ms
        .iter()
        .enumerate()
        .map(|(i, &m)| pi_choices(m, if i == 0 { &[-1] } else { &[1] }, k, true))
        .collect();
    let line3 = aggregate(&choices, k)
        .into_iter()
        .filter(|&((r, _, _), _)| r == k)
        .map(|(_, t)| t.w)
        .sum::<BigInt>()
        * factorial(k);
    Ok([line1, line2, line3])
}

/// Number of planar tight maps with the given boundary lengths, by the unified formula.
pub fn count_tight(spec: &BoundarySpec) -> Result<BigInt, Error> {
    Ok(tight_lines(spec)?.into_iter().sum())
}

fn parity(
    spec: &BoundarySpec,
    method: &'static str,
    expected: &'static str,
    ok: bool,
) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::ParityMismatch {
            method,
            expected,
            odd: spec.odd_count(),
        })
    }
}

/// `(n-3)! p_{n-3}(m_1, ..., m_n)`, for all lengths even.
pub fn count_tight_bipartite(spec: &BoundarySpec) -> Result<BigInt, Error> {
    spec.require_n(3)?;
    parity(spec, "bipartite", "no odd lengths", spec.odd_count() == 0)?;
    let k = (spec.n() - 3) as u32;
    let v = Rational::from_integer(factorial(k)) * p_multi(k, &spec.ms());
    Ok(expect_integer(v, "bipartite count"))
}

/// `(n-3)! p~_{n-3}(m_{i1}, m_{i2}; rest)`, for exactly two odd lengths.
pub fn count_tight_quasibipartite(spec: &BoundarySpec) -> Result<BigInt, Error> {
    spec.require_n(3)?;
    parity(
        spec,
        "quasi-bipartite",
        "exactly two odd lengths",
        spec.odd_count() == 2,
    )?;
    let ms = spec.ms();
    let (odd, even): (Vec<HalfInt>, Vec<HalfInt>) = ms.iter().partition(|m| m.is_half_odd());
    let k = (spec.n() - 3) as u32;
    let v = Rational::from_integer(factorial(k)) * ptilde_multi(k, odd[0], odd[1], &even);
    Ok(expect_integer(v, "quasi-bipartite count"))
}

/// The `I_n` sum alone, for at least three odd lengths.
pub fn count_tight_general(spec: &BoundarySpec) -> Result<BigInt, Error> {
    parity(
        spec,
        "general",
        "at least three odd lengths",
        spec.odd_count() >= 3,
    )?;
    let [line1, _, _] = tight_lines(spec)?;
    Ok(line1)
}

/// Evaluates with an explicit method; returns the value and the method actually used.
pub fn count_tight_method(spec: &BoundarySpec, method: Method) -> Result<(BigInt, Method), Error> {
    let used = method.resolve(spec.odd_count());
    let value = match used {
        Method::Bipartite => count_tight_bipartite(spec)?,
        Method::Quasi => count_tight_quasibipartite(spec)?,
        Method::General => count_tight_general(spec)?,
        Method::Unified | Method::Auto => count_tight(spec)?,
    };
    Ok((value, used))
}

/// `(n-1)! q_{n-1}(m_1, ..., m_n)`: pointed rooted tight bipartite maps.
pub fn pointed_rooted_count(ms: &[HalfInt]) -> BigInt {
    assert!(!ms.is_empty(), "need at least one boundary");
    let k = (ms.len() - 1) as u32;
    expect_integer(
        Rational::from_integer(factorial(k)) * q_multi(k, ms),
        "pointed rooted count",
    )
}
