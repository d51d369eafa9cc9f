//! The graded-commutative algebra `F_p[x_1..x_n] ⊗ Λ(a_1..a_n)`.
//!
//! For odd `p` the `a_i` sit in degree 1 and anticommute, the `x_i` sit in
//! degree 2 and are central. For `p = 2` there are no exterior generators and
//! the `x_i` sit in degree 1, so the ring is just `F_2[x_1..x_n]`.

mod monomial;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub use monomial::Monomial;
pub use text::max_generator_index;
pub(crate) use monomial::{exterior_product, Grlex};

use crate::error::{Error, Result};
use crate::field::Prime;

/// Largest rank supported by the bitmask representation of exterior parts.
pub const MAX_RANK: usize = 16;

/// The pair `(p, n)`: which prime and how many generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    prime: Prime,
    rank: usize,
}

impl Ring {
    pub fn new(p: u32, n: usize) -> Result<Ring> {
        let prime = Prime::new(p)?;
        if n > MAX_RANK {
            return Err(Error::Usage(format!("rank {n} exceeds {MAX_RANK}")));
        }
        Ok(Ring { prime, rank: n })
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.prime.value()
    }

    #[inline]
    pub fn rank(self) -> usize {
        self.rank
    }

    /// Whether exterior generators exist (odd `p`).
    #[inline]
    pub fn has_exterior(self) -> bool {
        !self.prime.is_two()
    }

    /// Cohomological degree of `x_i`.
    #[inline]
    pub fn polynomial_weight(self) -> u64 {
        if self.has_exterior() {
            2
        } else {
            1
        }
    }

    pub fn bidegree(self, m: &Monomial) -> Bidegree {
        let r = m.exterior_rank();
        let d = m.polynomial_degree();
        Bidegree {
            exterior_rank: r,
            polynomial_degree: d,
            total: r as u64 + self.polynomial_weight() * d,
        }
    }

    pub fn degree_of(self, m: &Monomial) -> u64 {
        self.bidegree(m).total
    }

    /// The same prime with a different number of generators.
    pub fn with_rank(self, n: usize) -> Ring {
        Ring {
            prime: self.prime,
            rank: n,
        }
    }

    pub fn check_same(self, other: Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n={})", self.prime, self.rank)
    }
}

/// Exterior rank, polynomial degree and total degree of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bidegree {
    pub exterior_rank: usize,
    pub polynomial_degree: u64,
    pub total: u64,
}

/// Result of [`Element::total_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u64),
    Inhomogeneous,
}

impl Degree {
    pub fn value(self) -> Option<u64> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// A finite `F_p`-linear combination of monomials. No zero coefficients are
/// stored and terms are kept in canonical order, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Ring,
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero(ring: Ring) -> Element {
        Element {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Element {
        Element::monomial(ring, Monomial::one(ring.rank), 1)
    }

    pub fn scalar(ring: Ring, c: i64) -> Element {
        Element::monomial(ring, Monomial::one(ring.rank), ring.prime.reduce(c))
    }

    pub fn monomial(ring: Ring, m: Monomial, coefficient: u32) -> Element {
        let mut e = Element::zero(ring);
        e.add_term(m, coefficient % ring.p());
        e
    }

    /// The exterior generator `a_i` (1-based). Odd `p` only.
    pub fn a(ring: Ring, i: usize) -> Element {
        assert!(ring.has_exterior(), "no exterior generators at p = 2");
        assert!(i >= 1 && i <= ring.rank, "a{i} out of range for {ring}");
        Element::monomial(ring, Monomial::new(1 << (i - 1), vec![0; ring.rank]), 1)
    }

    /// The polynomial generator `x_i` (1-based).
    pub fn x(ring: Ring, i: usize) -> Element {
        Element::x_pow(ring, i, 1)
    }

    pub fn x_pow(ring: Ring, i: usize, e: u32) -> Element {
        assert!(i >= 1 && i <= ring.rank, "x{i} out of range for {ring}");
        let mut exps = vec![0; ring.rank];
        exps[i - 1] = e;
        Element::monomial(ring, Monomial::polynomial(exps), 1)
    }

    /// The product `a_1 a_2 ⋯ a_n`.
    pub fn top_exterior(ring: Ring) -> Element {
        assert!(ring.has_exterior(), "no exterior generators at p = 2");
        let mask = if ring.rank == 32 { u32::MAX } else { (1u32 << ring.rank) - 1 };
        Element::monomial(ring, Monomial::new(mask, vec![0; ring.rank]), 1)
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Element {
        let mut e = Element::zero(ring);
        for (m, c) in terms {
            e.add_term(m, c % ring.p());
        }
        e
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Add `c · m` in place; `c` must already be reduced.
    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.ring.prime;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: u32) -> Element {
        let p = self.ring.prime;
        let c = c % p.value();
        if c == 0 {
            return Element::zero(self.ring);
        }
        Element {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), p.mul(v, c))).collect(),
        }
    }

    /// Product with the Koszul sign rule.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.ring.check_same(other.ring)?;
        let p = self.ring.prime;
        let mut out = Element::zero(self.ring);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let Some((mask, negative)) = exterior_product(m1.exterior(), m2.exterior()) else {
                    continue;
                };
                let exps = m1
                    .exponents()
                    .iter()
                    .zip(m2.exponents())
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                let mut c = p.mul(c1, c2);
                if negative {
                    c = p.neg(c);
                }
                out.add_term(Monomial::new(mask, exps), c);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.ring.check_same(other.ring)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::one(self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The `N_r` component: terms with exactly `r` exterior factors.
    pub fn project_rank(&self, r: usize) -> Element {
        Element {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exterior_rank() == r)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// The exterior ranks that occur, ascending.
    pub fn exterior_ranks(&self) -> Vec<usize> {
        let mut rs: Vec<usize> = self.terms.keys().map(Monomial::exterior_rank).collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    pub fn total_degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|m| self.ring.degree_of(m));
        let Some(first) = degrees.next() else {
            return Degree::Zero;
        };
        if degrees.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Inhomogeneous
        }
    }

    /// The polynomial coefficient of `a_E`, as an element with no exterior part.
    pub fn exterior_component(&self, exterior: u32) -> Element {
        Element {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exterior() == exterior)
                .map(|(m, &c)| (m.with_exterior(0), c))
                .collect(),
        }
    }

    /// Exact quotient `y / f` for a nonzero purely polynomial `f`.
    ///
    /// Each exterior component of `self` is divided by `f` with multivariate
    /// division in graded lex order; any nonzero remainder is an error.
    pub fn exact_div(&self, f: &Element) -> Result<Element> {
        self.ring.check_same(f.ring)?;
        if f.is_zero() || !f.is_polynomial() {
            return Err(Error::Usage(
                "divisor must be a nonzero polynomial (exterior rank 0)".into(),
            ));
        }
        let p = self.ring.prime;
        let divisor: BTreeMap<Grlex, u32> =
            f.terms.iter().map(|(m, &c)| (Grlex(m.exponents().to_vec()), c)).collect();
        let (lead, &lead_coef) = divisor.last_key_value().expect("nonzero divisor");
        let lead_inv = p.inv(lead_coef)?;

        let mut components: BTreeMap<u32, BTreeMap<Grlex, u32>> = BTreeMap::new();
        for (m, &c) in &self.terms {
            components
                .entry(m.exterior())
                .or_default()
                .insert(Grlex(m.exponents().to_vec()), c);
        }

        let mut quotient = Element::zero(self.ring);
        for (mask, mut rem) in components {
            while let Some((top, &c)) = rem.last_key_value() {
                if !top.0.iter().zip(&lead.0).all(|(a, b)| a >= b) {
                    return Err(Error::NotDivisible(format!("{self} by {f}")));
                }
                let shift: Vec<u32> = top.0.iter().zip(&lead.0).map(|(a, b)| a - b).collect();
                let q = p.mul(c, lead_inv);
                for (g, &d) in &divisor {
                    let key = Grlex(g.0.iter().zip(&shift).map(|(a, b)| a + b).collect());
                    let v = p.sub(rem.get(&key).copied().unwrap_or(0), p.mul(q, d));
                    if v == 0 {
                        rem.remove(&key);
                    } else {
                        rem.insert(key, v);
                    }
                }
                quotient.add_term(Monomial::new(mask, shift), q);
            }
        }
        Ok(quotient)
    }

    /// Apply a function to every term, summing the results.
    pub(crate) fn map_terms(&self, ring: Ring, mut f: impl FnMut(&Monomial, u32, &mut Element)) -> Element {
        let mut out = Element::zero(ring);
        for (m, &c) in &self.terms {
            f(m, c, &mut out);
        }
        out
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{}[{}]", self.ring, self)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let p = self.ring.prime;
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), p.neg(c));
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(self.ring.p() - 1)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}
