//! Weight parameters in either convention: tableau weights `--alpha/--beta`
//! (which may be `inf`) or inverse weights `--a/--b`.

use clap::Args;
use num_traits::Signed;
use staircase_core::rational::parse_rational;
use staircase_core::{Error, ExtRational, Rational};

use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct Weights {
    /// Weight of α, as "p/q" or "inf".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Weight of β, as "p/q" or "inf".
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Inverse weight a = 1/α.
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Inverse weight b = 1/β.
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: Option<String>,
}

fn unparsable(name: &str, e: Error) -> Error {
    match e {
        Error::Parameter(msg) => Error::Parameter(format!("--{name}: {msg}")),
        other => other,
    }
}

pub fn ext(name: &str, s: &str) -> Result<ExtRational, CliError> {
    let v = ExtRational::parse(s).map_err(|e| unparsable(name, e))?;
    if v.finite().is_some_and(|x| x.is_negative()) {
        return Err(Error::Parameter(format!("--{name} must be nonnegative, got {s}")).into());
    }
    Ok(v)
}

pub fn finite(name: &str, s: &str) -> Result<Rational, CliError> {
    match ext(name, s)? {
        ExtRational::Finite(x) => Ok(x),
        ExtRational::Infinite => Err(Error::Parameter(format!("--{name} must be finite here")).into()),
    }
}

/// Nonnegative rational that may be given without the `inf` option.
pub fn rational(name: &str, s: &str) -> Result<Rational, CliError> {
    let v = parse_rational(s).map_err(|e| unparsable(name, e))?;
    if v.is_negative() {
        return Err(Error::Parameter(format!("--{name} must be nonnegative, got {s}")).into());
    }
    Ok(v)
}

impl Weights {
    /// `(a, b)` with `a = 1/α`, `b = 1/β`.
    pub fn inverse(&self) -> Result<(ExtRational, ExtRational), CliError> {
        let weights = self.alpha.is_some() || self.beta.is_some();
        let inverse = self.a.is_some() || self.b.is_some();
        match (weights, inverse) {
            (true, true) => Err(CliError::Usage("give either --alpha/--beta or --a/--b, not both".into())),
            (false, false) => Err(CliError::Usage("missing parameters: give --alpha/--beta or --a/--b".into())),
            (true, false) => match (&self.alpha, &self.beta) {
                (Some(al), Some(be)) => Ok((ext("alpha", al)?.recip(), ext("beta", be)?.recip())),
                _ => Err(CliError::Usage("--alpha and --beta must be given together".into())),
            },
            (false, true) => match (&self.a, &self.b) {
                (Some(a), Some(b)) => Ok((ext("a", a)?, ext("b", b)?)),
                _ => Err(CliError::Usage("--a and --b must be given together".into())),
            },
        }
    }

    /// Finite `(a, b)`; infinite inverse weights (zero tableau weights) are
    /// refused.
    pub fn finite_inverse(&self) -> Result<(Rational, Rational), CliError> {
        match self.inverse()? {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => Ok((a, b)),
            _ => Err(Error::Parameter("this command needs finite a and b (nonzero α and β)".into()).into()),
        }
    }

    /// Finite tableau weights `(α, β)`.
    pub fn finite_weights(&self) -> Result<(Rational, Rational), CliError> {
        let (a, b) = self.inverse()?;
        match (a.recip(), b.recip()) {
            (ExtRational::Finite(al), ExtRational::Finite(be)) => Ok((al, be)),
            _ => Err(Error::Parameter("this command needs finite α and β (nonzero a and b)".into()).into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use staircase_core::rational::{int, rat};

    fn w(alpha: Option<&str>, beta: Option<&str>, a: Option<&str>, b: Option<&str>) -> Weights {
        Weights {
            alpha: alpha.map(String::from),
            beta: beta.map(String::from),
            a: a.map(String::from),
            b: b.map(String::from),
        }
    }

    #[test]
    fn conventions() {
        let (a, b) = w(Some("2"), Some("inf"), None, None).inverse().unwrap();
        assert_eq!((a, b), (ExtRational::Finite(rat(1, 2)), ExtRational::Finite(int(0))));
        let (a, b) = w(None, None, Some("0"), Some("3/4")).inverse().unwrap();
        assert_eq!((a.recip(), b), (ExtRational::Infinite, ExtRational::Finite(rat(3, 4))));
        assert!(matches!(w(Some("1"), None, None, Some("1")).inverse(), Err(CliError::Usage(_))));
        assert!(matches!(w(Some("1"), None, None, None).inverse(), Err(CliError::Usage(_))));
        assert!(matches!(w(None, None, None, None).inverse(), Err(CliError::Usage(_))));
        assert!(matches!(w(None, None, Some("-1"), Some("1")).inverse(), Err(CliError::Core(_))));
        assert!(w(Some("0"), Some("1"), None, None).finite_inverse().is_err());
        assert!(w(None, None, Some("0"), Some("1")).finite_weights().is_err());
    }
}
