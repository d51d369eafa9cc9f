//! The determinant invariants.
//!
//! `C` is the `n × n` matrix with `C[s][i] = x_i^{p^{s-1}}` and `L_n = det C`.
//! `E(s)` is `C` with row `s` removed and the row `(a_1, .., a_n)` put on
//! top; its determinant is the Mùi invariant `M_{n,s}`. For a subset
//! `S = {s_1 < .. < s_r}` the invariant `M_{n,S}` is the product
//! `M_{n,s_1} ⋯ M_{n,s_r}` divided by `L_n^{r-1}`, with `M_{n,∅} = L_n`.

use std::fmt;

use crate::algebra::{Element, Ring};
use crate::error::{Error, Result};

/// A square matrix of ring elements. Only the first row may contain exterior
/// classes; determinants are expanded along it with its entries on the left.
pub type VariableMatrix = Vec<Vec<Element>>;

/// Determinant by cofactor expansion along the first row, memoizing the
/// minors of the lower rows by column subset.
pub fn determinant(matrix: &[Vec<Element>]) -> Element {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "square matrix");
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring; use determinant_in");
    }
    let ring = matrix[0][0].ring();
    determinant_in(ring, matrix)
}

pub fn determinant_in(ring: Ring, matrix: &[Vec<Element>]) -> Element {
    let n = matrix.len();
    if n == 0 {
        return Element::one(ring);
    }
    // minors[cols] = det of rows (n - |cols|).. restricted to `cols`
    let mut minors: Vec<Option<Element>> = vec![None; 1 << n];
    minors[0] = Some(Element::one(ring));
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 0usize..(1 << n) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=n {
        let row = &matrix[n - size];
        for &mask in &by_size[size] {
            let mut acc = Element::zero(ring);
            for (pos, c) in (0..n).filter(|c| mask >> c & 1 == 1).enumerate() {
                let rest = minors[mask & !(1 << c)].as_ref().expect("smaller minor");
                let term = &row[c] * rest;
                if pos % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            minors[mask] = Some(acc);
        }
    }
    minors[(1 << n) - 1].take().expect("full minor")
}

fn checked_power(p: u32, e: usize) -> Result<u32> {
    (p as u64)
        .checked_pow(e as u32)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::ResourceGuard(format!("{p}^{e} does not fit an exponent")))
}

/// The matrix `C`, `C[s-1][i-1] = x_i^{p^{s-1}}`.
pub fn matrix_c(ring: Ring) -> Result<VariableMatrix> {
    let n = ring.rank();
    (0..n)
        .map(|s| {
            let e = checked_power(ring.p(), s)?;
            Ok((1..=n).map(|i| Element::x_pow(ring, i, e)).collect())
        })
        .collect()
}

/// The matrix `E(s)`: exterior row on top of `C` with row `s` deleted.
pub fn matrix_e(ring: Ring, s: usize) -> Result<VariableMatrix> {
    require_exterior(ring)?;
    check_index(ring, s)?;
    let c = matrix_c(ring)?;
    let mut rows = vec![(1..=ring.rank()).map(|i| Element::a(ring, i)).collect()];
    rows.extend(c.into_iter().enumerate().filter(|(t, _)| t + 1 != s).map(|(_, r)| r));
    Ok(rows)
}

/// `L_n = det C`, normalized so `x_1 x_2^p ⋯ x_n^{p^{n-1}}` has coefficient 1.
pub fn ln(ring: Ring) -> Result<Element> {
    Ok(determinant_in(ring, &matrix_c(ring)?))
}

/// Which coefficient of a linear form is scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monic {
    FirstNonzero,
    LastNonzero,
}

/// The product of one representative `Σ α_i x_i` of every line in `V*`,
/// scaled as `monic` says. An independent route to `L_n`: with
/// [`Monic::LastNonzero`] it equals `L_n` exactly, with
/// [`Monic::FirstNonzero`] it is `(-1)^{n(n-1)/2} L_n` for odd `p`.
pub fn monic_linear_forms_product(ring: Ring, monic: Monic) -> Element {
    let p = ring.prime();
    let mut acc = Element::one(ring);
    for mut form in projective_points(p.value(), ring.rank()) {
        if monic == Monic::LastNonzero {
            let last = *form.iter().rev().find(|&&c| c != 0).expect("nonzero form");
            let scale = p.inv(last).expect("nonzero");
            form.iter_mut().for_each(|c| *c = p.mul(*c, scale));
        }
        let mut linear = Element::zero(ring);
        for (i, &c) in form.iter().enumerate() {
            if c != 0 {
                linear += &Element::x(ring, i + 1).scale(c);
            }
        }
        acc = &acc * &linear;
    }
    acc
}

/// Nonzero vectors of `F_p^n` whose first nonzero coordinate is 1, in
/// lexicographic order.
pub fn projective_points(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (p as u64).pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for slot in (lead + 1..n).rev() {
                v[slot] = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(v);
        }
    }
    out.sort();
    out
}

/// `γ_{s,i}`: the minor of `C` without row `s` and column `i`.
pub fn gamma(ring: Ring, s: usize, i: usize) -> Result<Element> {
    check_index(ring, s)?;
    check_index(ring, i)?;
    let c = matrix_c(ring)?;
    let minor: VariableMatrix = c
        .into_iter()
        .enumerate()
        .filter(|(t, _)| t + 1 != s)
        .map(|(_, row)| row.into_iter().enumerate().filter(|(j, _)| j + 1 != i).map(|(_, e)| e).collect())
        .collect();
    Ok(determinant_in(ring, &minor))
}

/// `M_{n,s} = Σ_i (-1)^{i+1} γ_{s,i} a_i`.
pub fn mui(ring: Ring, s: usize) -> Result<Element> {
    require_exterior(ring)?;
    check_index(ring, s)?;
    let mut acc = Element::zero(ring);
    for i in 1..=ring.rank() {
        let term = &Element::a(ring, i) * &gamma(ring, s, i)?;
        if i % 2 == 1 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    Ok(acc)
}

fn require_exterior(ring: Ring) -> Result<()> {
    if ring.has_exterior() {
        Ok(())
    } else {
        Err(Error::Usage("Mùi invariants need an odd prime".into()))
    }
}

fn check_index(ring: Ring, s: usize) -> Result<()> {
    if s >= 1 && s <= ring.rank() {
        Ok(())
    } else {
        Err(Error::Usage(format!("index {s} out of range 1..={}", ring.rank())))
    }
}

/// A subset `S ⊆ {1..n}`, stored as a bitmask (bit `s-1` for `s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MuiIndex(u32);

impl MuiIndex {
    pub fn empty() -> MuiIndex {
        MuiIndex(0)
    }

    pub fn full(n: usize) -> MuiIndex {
        MuiIndex(((1u64 << n) - 1) as u32)
    }

    pub fn from_mask(mask: u32) -> MuiIndex {
        MuiIndex(mask)
    }

    pub fn new(members: &[usize]) -> Result<MuiIndex> {
        let mut mask = 0u32;
        for &s in members {
            if s == 0 || s > 32 {
                return Err(Error::Usage(format!("index {s} out of range")));
            }
            mask |= 1 << (s - 1);
        }
        Ok(MuiIndex(mask))
    }

    /// Parse `"1,3"`; the empty string is `∅`.
    pub fn parse(text: &str) -> Result<MuiIndex> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        if text.trim().is_empty() {
            return Ok(MuiIndex::empty());
        }
        let members = text
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Usage(format!("bad index `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        MuiIndex::new(&members)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, s: usize) -> bool {
        s >= 1 && self.0 >> (s - 1) & 1 == 1
    }

    /// Members in ascending order.
    pub fn members(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn complement(self, n: usize) -> MuiIndex {
        MuiIndex(MuiIndex::full(n).0 & !self.0)
    }

    pub fn union(self, other: MuiIndex) -> MuiIndex {
        MuiIndex(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: MuiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn fits(self, n: usize) -> bool {
        self.0 & !MuiIndex::full(n).0 == 0
    }

    /// All subsets of `{1..n}` by increasing size, then lexicographically.
    pub fn all(n: usize) -> Vec<MuiIndex> {
        let mut all: Vec<MuiIndex> = (0..(1u32 << n)).map(MuiIndex).collect();
        all.sort_by_key(|s| (s.len(), s.members()));
        all
    }

    pub fn of_size(n: usize, r: usize) -> Vec<MuiIndex> {
        MuiIndex::all(n).into_iter().filter(|s| s.len() == r).collect()
    }

    /// `{1, .., k}`.
    pub fn initial(k: usize) -> MuiIndex {
        MuiIndex(((1u64 << k) - 1) as u32)
    }
}

impl fmt::Display for MuiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// `M_{n,S}` straight from the definition: the ordered product of the
/// `M_{n,s}` divided by `L_n^{|S|-1}`.
pub fn mui_set(ring: Ring, set: MuiIndex) -> Result<Element> {
    require_exterior(ring)?;
    if !set.fits(ring.rank()) {
        return Err(Error::Usage(format!("{set} is not a subset of 1..={}", ring.rank())));
    }
    let l = ln(ring)?;
    if set.is_empty() {
        return Ok(l);
    }
    let mut product = Element::one(ring);
    for s in set.members() {
        product = &product * &mui(ring, s)?;
    }
    let divisor = l.pow(set.len() as u32 - 1);
    product
        .exact_div(&divisor)
        .map_err(|e| Error::Consistency(format!("M_{{n,{set}}} is not divisible by L_n^{}: {e}", set.len() - 1)))
}

/// All invariants of one ring, computed once.
#[derive(Clone, Debug)]
pub struct MuiInvariants {
    ring: Ring,
    ln: Element,
    singles: Vec<Element>,
    sets: Vec<Element>,
    top_scalar: u32,
}

impl MuiInvariants {
    pub fn new(ring: Ring) -> Result<MuiInvariants> {
        require_exterior(ring)?;
        let n = ring.rank();
        let ln = ln(ring)?;
        let singles = (1..=n).map(|s| mui(ring, s)).collect::<Result<Vec<_>>>()?;
        let mut sets = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            sets.push(mui_set(ring, MuiIndex(mask))?);
        }
        let top = &sets[(1 << n) - 1];
        let basis = Element::top_exterior(ring);
        let top_monomial = basis.terms().next().expect("a1..an").0.clone();
        let top_scalar = top.coefficient(&top_monomial);
        if top_scalar == 0 || top.len() != 1 {
            return Err(Error::Consistency(format!(
                "M_{{n,{{1..n}}}} = {top} is not a nonzero multiple of a1..an"
            )));
        }
        Ok(MuiInvariants {
            ring,
            ln,
            singles,
            sets,
            top_scalar,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ln(&self) -> &Element {
        &self.ln
    }

    /// `M_{n,s}`, 1-based.
    pub fn single(&self, s: usize) -> &Element {
        &self.singles[s - 1]
    }

    pub fn set(&self, set: MuiIndex) -> &Element {
        &self.sets[set.mask() as usize]
    }

    /// The scalar `λ` with `M_{n,{1..n}} = λ a_1 ⋯ a_n`.
    pub fn top_scalar(&self) -> u32 {
        self.top_scalar
    }

    /// The sign `ε_S` with `M_{n,S} M_{n,T} = ε_S L_n M_{n,{1..n}}`, `T` the
    /// complement of `S`. Returned as a residue (1 or p-1).
    pub fn epsilon(&self, set: MuiIndex) -> Result<u32> {
        let n = self.ring.rank();
        let product = self.set(set) * self.set(set.complement(n));
        let quotient = product
            .exact_div(&self.ln)
            .map_err(|e| Error::Consistency(format!("M_S M_T not divisible by L_n for S = {set}: {e}")))?;
        let top = self.set(MuiIndex::full(n));
        let p = self.ring.prime();
        for eps in [1, p.neg(1)] {
            if quotient == top.scale(eps) {
                return Ok(eps);
            }
        }
        Err(Error::Consistency(format!(
            "M_S M_T / L_n = {quotient} is not ±M_{{n,{{1..n}}}} for S = {set}"
        )))
    }
}

/// `Π_{v ∈ V*} (X - v) = Σ_k coefficient[k] X^k`, expanded over `S(V*)`.
#[derive(Clone, Debug)]
pub struct FundamentalEquation {
    ring: Ring,
    // coefficients of X^{p^r}, r = 0..=n
    power_coefficients: Vec<Element>,
}

impl FundamentalEquation {
    pub fn new(ring: Ring) -> Result<FundamentalEquation> {
        let p = ring.p();
        let n = ring.rank();
        let size = (p as u64)
            .checked_pow(n as u32)
            .filter(|&s| s <= 4096)
            .ok_or_else(|| Error::ResourceGuard(format!("{p}^{n} linear factors")))? as usize;

        let mut coeffs: Vec<Element> = vec![Element::one(ring)];
        for code in 0..size {
            let mut v = Element::zero(ring);
            let mut c = code;
            for i in 1..=n {
                let digit = (c % p as usize) as u32;
                c /= p as usize;
                if digit != 0 {
                    v += &Element::x(ring, i).scale(digit);
                }
            }
            // multiply by (X - v)
            let mut next = vec![Element::zero(ring); coeffs.len() + 1];
            for (k, ck) in coeffs.iter().enumerate() {
                next[k + 1] += ck;
                if !v.is_zero() {
                    next[k] -= &(&v * ck);
                }
            }
            coeffs = next;
        }

        let mut power_coefficients = Vec::with_capacity(n + 1);
        let mut pk = 1usize;
        for (k, ck) in coeffs.iter().enumerate() {
            if k == pk {
                power_coefficients.push(ck.clone());
                pk *= p as usize;
            } else if !ck.is_zero() {
                return Err(Error::Consistency(format!(
                    "coefficient of X^{k} in the fundamental equation is {ck}"
                )));
            }
        }
        debug_assert_eq!(power_coefficients.len(), n + 1);
        Ok(FundamentalEquation {
            ring,
            power_coefficients,
        })
    }

    /// Coefficient of `X^{p^r}` in the product, `0 ≤ r ≤ n`.
    pub fn coefficient(&self, r: usize) -> &Element {
        &self.power_coefficients[r]
    }

    /// The Dickson invariant `c_{n,r}`, normalized so that the product is
    /// `Σ_r (-1)^{n-r} c_{n,r} X^{p^r}`.
    pub fn dickson(&self, r: usize) -> Result<Element> {
        let n = self.ring.rank();
        if r >= n {
            return Err(Error::Usage(format!("Dickson index {r} out of range 0..{n}")));
        }
        let c = self.coefficient(r);
        Ok(if (n - r).is_multiple_of(2) { c.clone() } else { -c })
    }

    /// The coefficients `e_r` of `x^{p^n} = Σ_{r<n} e_r x^{p^r}`, valid for
    /// every linear form `x`.
    pub fn relation(&self) -> Vec<Element> {
        let n = self.ring.rank();
        self.power_coefficients[..n].iter().map(|c| -c).collect()
    }
}

/// `c_{n,r}`.
pub fn dickson(ring: Ring, r: usize) -> Result<Element> {
    FundamentalEquation::new(ring)?.dickson(r)
}
