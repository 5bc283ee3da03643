//! JSON form of algebra elements: `{"N": n, "terms": [{"mono": [[i,j,e],..], "coeff": ["p/q",..]}]}`
//! where `coeff[k]` is the coefficient of `ℏ^k`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::element::{Algebra, AlgebraElement};
use super::generator::GenIdx;
use super::hbar::{HbarPoly, Q};
use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: Vec<[usize; 3]>,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub terms: Vec<TermJson>,
}

pub fn rational_to_string(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_str(s: &str) -> Result<Q> {
    let bad = || Error::Validation(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn poly_to_json(c: &HbarPoly) -> Vec<String> {
    c.coeffs().iter().map(rational_to_string).collect()
}

pub fn poly_from_json(v: &[String]) -> Result<HbarPoly> {
    Ok(HbarPoly::from_coeffs(
        v.iter().map(|s| rational_from_str(s)).collect::<Result<_>>()?,
    ))
}

pub(crate) fn mono_to_json(alg: &Algebra, m: &Monomial) -> Vec<[usize; 3]> {
    alg.factors(m)
        .into_iter()
        .map(|(g, e)| [g.i, g.j, e as usize])
        .collect()
}

/// Reads a monomial; factors not already in ambient order are normal-ordered.
pub(crate) fn mono_from_json(
    alg: &Arc<Algebra>,
    factors: &[[usize; 3]],
) -> Result<AlgebraElement> {
    let n = alg.n();
    let mut letters = Vec::new();
    for &[i, j, e] in factors {
        if i == 0 || j == 0 || i > n || j > n || e == 0 {
            return Err(Error::Validation(format!("bad factor [{i},{j},{e}] for N={n}")));
        }
        letters.extend(std::iter::repeat(GenIdx::new(i, j)).take(e));
    }
    let direct: Vec<(GenIdx, u32)> = factors
        .iter()
        .map(|&[i, j, e]| (GenIdx::new(i, j), e as u32))
        .collect();
    Ok(match alg.monomial(&direct) {
        Some(m) => AlgebraElement::from_terms(alg, [(m, HbarPoly::one())]),
        None => AlgebraElement::word(alg, &letters),
    })
}

impl AlgebraElement {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            n: self.n(),
            terms: self
                .terms()
                .iter()
                .map(|(m, c)| TermJson {
                    mono: mono_to_json(self.algebra(), m),
                    coeff: poly_to_json(c),
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &Arc<Algebra>, j: &ElementJson) -> Result<Self> {
        if j.n != alg.n() {
            return Err(Error::Structural(format!(
                "element has N={} but algebra has N={}",
                j.n,
                alg.n()
            )));
        }
        let mut out = AlgebraElement::zero(alg);
        for t in &j.terms {
            let m = mono_from_json(alg, &t.mono)?;
            out = out.try_add(&m.scale(&poly_from_json(&t.coeff)?))?;
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(alg: &Arc<Algebra>, s: &str) -> Result<Self> {
        Self::from_json(alg, &serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let alg = Algebra::lex(3);
        let a = AlgebraElement::word(
            &alg,
            &[GenIdx::new(3, 1), GenIdx::new(1, 3), GenIdx::new(2, 2)],
        )
        .scale(&HbarPoly::from_coeffs(vec![Q::new(3.into(), 7.into()), Q::from_integer((-2).into())]));
        let s = a.to_json_string();
        let b = AlgebraElement::from_json_str(&alg, &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(s, b.to_json_string());
    }

    #[test]
    fn rejects_garbage() {
        let alg = Algebra::lex(2);
        assert!(AlgebraElement::from_json_str(&alg, r#"{"N":3,"terms":[]}"#).is_err());
        assert!(AlgebraElement::from_json_str(
            &alg,
            r#"{"N":2,"terms":[{"mono":[[3,1,1]],"coeff":["1/1"]}]}"#
        )
        .is_err());
        assert!(rational_from_str("1/0").is_err());
        assert_eq!(rational_from_str("-4/6").unwrap(), Q::new((-2).into(), 3.into()));
    }
}
