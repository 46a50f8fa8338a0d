use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{parse_rational, Scalar};

/// Parses comma-separated ascending-degree coefficients. Each token is a
/// decimal literal or `a/b`; token positions in errors are 1-based.
pub fn parse_poly<T: Scalar>(text: &str) -> Result<Polynomial<T>> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let coeffs = text
        .split(',')
        .enumerate()
        .map(|(i, token)| {
            parse_rational(token)
                .map(|r| T::from_rational(&r))
                .map_err(|reason| Error::Parse {
                    position: i + 1,
                    token: token.to_string(),
                    reason,
                })
        })
        .collect::<Result<Vec<T>>>()?;
    Polynomial::new(coeffs)
}

/// Comma-separated list of integers, e.g. `--mod 2,4,8` for bench grids.
pub fn parse_list<N: std::str::FromStr>(text: &str, what: &str) -> std::result::Result<Vec<N>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<N>()
                .map_err(|_| format!("invalid {what} {t:?}"))
        })
        .collect()
}
