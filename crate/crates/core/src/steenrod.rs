//! The action of the Steenrod algebra: the Bockstein `β` and the reduced
//! powers `P^k` for odd `p`, the squares `Sq^k` for `p = 2`.
//!
//! Operations are evaluated directly on monomials. `P^k` fixes the exterior
//! generators and acts on the polynomial part by the Cartan formula with
//! `P^j(x^m) = C(m, j) x^{m + j(p-1)}`, so no Adem relations are needed.

use std::fmt;

use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};

/// The Bockstein: the derivation with `β(a_i) = x_i`, `β(x_i) = 0` and
/// `β(uv) = β(u)v + (-1)^{|u|} u β(v)`.
pub fn bockstein(y: &Element) -> Result<Element> {
    let ring = y.ring();
    if !ring.has_exterior() {
        return Err(Error::Usage("the Bockstein is Sq1 at p = 2; use a square".into()));
    }
    let p = ring.prime();
    Ok(y.map_terms(ring, |m, c, out| {
        // a_{i_1}⋯a_{i_r} ↦ Σ_j (-1)^{j-1} x_{i_j} a_{i_1}⋯â_{i_j}⋯a_{i_r}
        for (j, i) in m.exterior_indices().enumerate() {
            let mut term = m.with_exterior(m.exterior() & !(1 << (i - 1)));
            term.exponents_mut()[i - 1] += 1;
            let coef = if j % 2 == 1 { p.neg(c) } else { c };
            out.add_term(term, coef);
        }
    }))
}

/// `P^k(y)` for odd `p`, `Sq^k(y)` for `p = 2`.
pub fn power(k: u64, y: &Element) -> Element {
    let ring = y.ring();
    if k == 0 {
        return y.clone();
    }
    let p = ring.prime();
    let step = if ring.has_exterior() { p.value() as u64 - 1 } else { 1 };
    y.map_terms(ring, |m, c, out| {
        if m.polynomial_degree() < k {
            return;
        }
        let exps = m.exponents();
        let mut parts = vec![0u64; exps.len()];
        // suffix sums bound how much of `k` the remaining variables can absorb
        let mut capacity = vec![0u64; exps.len() + 1];
        for i in (0..exps.len()).rev() {
            capacity[i] = capacity[i + 1] + exps[i] as u64;
        }
        distribute(exps, &capacity, 0, k, &mut parts, &mut |parts| {
            let mut coef = c;
            for (&e, &j) in exps.iter().zip(parts.iter()) {
                coef = p.mul(coef, p.binomial(e as u64, j));
                if coef == 0 {
                    return;
                }
            }
            let new_exps = exps
                .iter()
                .zip(parts.iter())
                .map(|(&e, &j)| u32::try_from(e as u64 + j * step).expect("exponent overflow"))
                .collect();
            out.add_term(Monomial::new(m.exterior(), new_exps), coef);
        });
    })
}

// Enumerate (k_i) with Σ k_i = rest over slots `slot..`, 0 ≤ k_i ≤ exps[i].
fn distribute(exps: &[u32], capacity: &[u64], slot: usize, rest: u64, parts: &mut [u64], f: &mut impl FnMut(&[u64])) {
    if slot == exps.len() {
        if rest == 0 {
            f(parts);
        }
        return;
    }
    if capacity[slot] < rest {
        return;
    }
    let hi = rest.min(exps[slot] as u64);
    let lo = rest.saturating_sub(capacity[slot + 1]);
    for j in lo..=hi {
        parts[slot] = j;
        distribute(exps, capacity, slot + 1, rest - j, parts, f);
    }
    parts[slot] = 0;
}

/// One generator of the Steenrod algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SteenrodOp {
    Bockstein,
    Power(u64),
    Square(u64),
}

impl SteenrodOp {
    pub fn apply(self, y: &Element) -> Result<Element> {
        let odd = y.ring().has_exterior();
        match self {
            SteenrodOp::Bockstein => bockstein(y),
            SteenrodOp::Power(k) if odd => Ok(power(k, y)),
            SteenrodOp::Square(k) if !odd => Ok(power(k, y)),
            SteenrodOp::Power(_) => Err(Error::Usage("reduced powers P^k need an odd prime; use Sq".into())),
            SteenrodOp::Square(_) => Err(Error::Usage("squares Sq^k need p = 2; use P and b".into())),
        }
    }

    /// Change in total degree.
    pub fn degree_shift(self, p: u32) -> u64 {
        match self {
            SteenrodOp::Bockstein => 1,
            SteenrodOp::Power(k) => 2 * k * (p as u64 - 1),
            SteenrodOp::Square(k) => k,
        }
    }
}

impl fmt::Display for SteenrodOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SteenrodOp::Bockstein => f.write_str("b"),
            SteenrodOp::Power(k) => write!(f, "P{k}"),
            SteenrodOp::Square(k) => write!(f, "Sq{k}"),
        }
    }
}

/// A composite `θ = op_1 op_2 ⋯ op_k`, written left to right and applied
/// right to left. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SteenrodWord(Vec<SteenrodOp>);

impl SteenrodWord {
    pub fn new(ops: Vec<SteenrodOp>) -> SteenrodWord {
        SteenrodWord(ops)
    }

    pub fn ops(&self) -> &[SteenrodOp] {
        &self.0
    }

    /// `op ∘ self`.
    pub fn then(mut self, op: SteenrodOp) -> SteenrodWord {
        self.0.insert(0, op);
        self
    }

    pub fn apply(&self, y: &Element) -> Result<Element> {
        self.0.iter().rev().try_fold(y.clone(), |acc, op| op.apply(&acc))
    }

    /// Parse text like `"P3 b P1"`: `b`, `P{k}`, `Sq{k}` separated by spaces.
    pub fn parse(input: &str) -> Result<SteenrodWord> {
        let mut ops = Vec::new();
        let mut offset = 0;
        for token in input.split(' ') {
            let at = offset;
            offset += token.len() + 1;
            if token.is_empty() {
                continue;
            }
            let number = |digits: &str, skip: usize| -> Result<u64> {
                digits.parse().map_err(|_| Error::Parse {
                    offset: at + skip,
                    message: format!("expected a degree in `{token}`"),
                })
            };
            let op = if token == "b" {
                SteenrodOp::Bockstein
            } else if let Some(rest) = token.strip_prefix("Sq") {
                SteenrodOp::Square(number(rest, 2)?)
            } else if let Some(rest) = token.strip_prefix('P') {
                SteenrodOp::Power(number(rest, 1)?)
            } else {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("unknown operation `{token}`; expected b, P<k> or Sq<k>"),
                });
            };
            ops.push(op);
        }
        Ok(SteenrodWord(ops))
    }
}

impl fmt::Display for SteenrodWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let text: Vec<String> = self.0.iter().map(|op| op.to_string()).collect();
        f.write_str(&text.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    fn r32() -> Ring {
        Ring::new(3, 2).unwrap()
    }

    fn el(s: &str) -> Element {
        Element::parse(r32(), s).unwrap()
    }

    #[test]
    fn bockstein_generators() {
        assert_eq!(bockstein(&el("a1")).unwrap(), el("x1"));
        assert!(bockstein(&el("x1")).unwrap().is_zero());
        assert_eq!(bockstein(&el("a1*x2^3 - a2*x1^3")).unwrap(), el("x1x2^3 - x1^3x2"));
        assert_eq!(bockstein(&el("a1a2")).unwrap(), el("x1*a2 - a1*x2"));
        let r2 = Ring::new(2, 2).unwrap();
        assert!(bockstein(&Element::x(r2, 1)).is_err());
    }

    #[test]
    fn powers_of_generators() {
        assert_eq!(power(1, &el("x1")), el("x1^3"));
        assert_eq!(power(0, &el("a1a2 + x1")), el("a1a2 + x1"));
        assert_eq!(power(1, &el("a1*x2 - a2*x1")), el("a1*x2^3 - a2*x1^3"));
        assert!(power(1, &el("a1")).is_zero());
        // P^1(x1^2) = 2 x1^4
        assert_eq!(power(1, &el("x1^2")), el("2*x1^4"));
        // Sq^1(x1^2 x2) at p = 2 = x1^2 x2^2
        let r2 = Ring::new(2, 2).unwrap();
        let y = Element::parse(r2, "x1^2x2").unwrap();
        assert_eq!(power(1, &y), Element::parse(r2, "x1^2x2^2").unwrap());
    }

    #[test]
    fn words() {
        let w = SteenrodWord::parse("P1 b").unwrap();
        assert_eq!(w.apply(&el("-a1a2")).unwrap(), el("a1*x2^3 - a2*x1^3"));
        assert_eq!(SteenrodWord::default().apply(&el("a1")).unwrap(), el("a1"));
        assert_eq!(SteenrodWord::parse("P3 b P1").unwrap().to_string(), "P3 b P1");
        assert_eq!(
            SteenrodWord::parse("Sq2  Sq1").unwrap().ops(),
            [SteenrodOp::Square(2), SteenrodOp::Square(1)]
        );
        assert_eq!(SteenrodWord::parse("").unwrap().ops(), []);
        match SteenrodWord::parse("P1 Q2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        match SteenrodWord::parse("b Px") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(SteenrodOp::Square(1).apply(&el("x1")).is_err());
    }
}
