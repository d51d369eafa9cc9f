//! Degreewise linear algebra over `F_p`.
//!
//! Every graded piece of the cohomology ring is finite dimensional with the
//! monomials of that degree as a basis. Subspaces are stored as reduced row
//! echelon matrices in those coordinates, so two spans are equal exactly when
//! their matrices are.

use std::collections::HashMap;

use rand::Rng;

use crate::algebra::{Degree, Element, Monomial, Ring};
use crate::error::{Error, Result};
use crate::field::Prime;

/// All monomials of one total degree, in canonical order.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    ring: Ring,
    degree: u64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(ring: Ring, degree: u64) -> DegreeBasis {
        let n = ring.rank();
        let mut monomials = Vec::new();
        let max_rank = if ring.has_exterior() { n } else { 0 };
        for mask in 0u32..(1u32 << max_rank) {
            let r = mask.count_ones() as u64;
            if r > degree || !(degree - r).is_multiple_of(ring.polynomial_weight()) {
                continue;
            }
            let poly_degree = (degree - r) / ring.polynomial_weight();
            for_each_composition(poly_degree, n, &mut |exps| {
                monomials.push(Monomial::new(mask, exps.to_vec()));
            });
        }
        monomials.sort();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis {
            ring,
            degree,
            monomials,
            index,
        }
    }

    /// `len()` of the basis in degree `degree`, without building it.
    /// Saturates at `u64::MAX`.
    pub fn dimension(ring: Ring, degree: u64) -> u64 {
        let n = ring.rank() as u64;
        if n == 0 {
            return u64::from(degree == 0);
        }
        let max_rank = if ring.has_exterior() { n } else { 0 };
        let mut total: u128 = 0;
        for r in 0..=max_rank.min(degree) {
            if !(degree - r).is_multiple_of(ring.polynomial_weight()) {
                continue;
            }
            let poly_degree = (degree - r) / ring.polynomial_weight();
            total = total.saturating_add(choose(n, r).saturating_mul(choose(poly_degree + n - 1, n - 1)));
        }
        u64::try_from(total).unwrap_or(u64::MAX)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis monomials as elements.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.monomials.iter().map(|m| Element::monomial(self.ring, m.clone(), 1))
    }

    /// Coordinate vector of a homogeneous element of this degree.
    pub fn coordinates(&self, y: &Element) -> Result<Vec<u32>> {
        self.ring.check_same(y.ring())?;
        let mut v = vec![0; self.len()];
        for (m, c) in y.terms() {
            let Some(i) = self.index_of(m) else {
                return Err(Error::Usage(format!(
                    "{y} is not homogeneous of degree {}",
                    self.degree
                )));
            };
            v[i] = c;
        }
        Ok(v)
    }

    pub fn element(&self, coords: &[u32]) -> Element {
        Element::from_terms(
            self.ring,
            coords
                .iter()
                .zip(&self.monomials)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, m)| (m.clone(), c)),
        )
    }

    /// Indicator span of the basis monomials satisfying `keep`.
    pub fn span_where(&self, keep: impl Fn(&Monomial) -> bool) -> DegreeSpan {
        let mut span = DegreeSpan::zero(self.ring.prime(), self.degree, self.len());
        for (i, m) in self.monomials.iter().enumerate() {
            if keep(m) {
                let mut row = vec![0; self.len()];
                row[i] = 1;
                span.insert(row);
            }
        }
        span
    }
}

fn choose(m: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Visit every exponent vector of length `parts` summing to `total`.
fn for_each_composition(total: u64, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn go(rest: u64, slot: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if slot + 1 == buf.len() {
            buf[slot] = rest as u32;
            f(buf);
            return;
        }
        for e in 0..=rest {
            buf[slot] = e as u32;
            go(rest - e, slot + 1, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0u32; parts];
    go(total, 0, &mut buf, f);
}

/// A subspace of one graded piece, in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct DegreeSpan {
    prime: Prime,
    degree: u64,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl PartialEq for DegreeSpan {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.ambient == other.ambient && self.rows == other.rows
    }
}

impl Eq for DegreeSpan {}

impl DegreeSpan {
    pub fn zero(prime: Prime, degree: u64, ambient: usize) -> DegreeSpan {
        DegreeSpan {
            prime,
            degree,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The span of arbitrary coordinate vectors.
    pub fn from_rows(prime: Prime, degree: u64, ambient: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> DegreeSpan {
        let mut span = DegreeSpan::zero(prime, degree, ambient);
        for r in rows {
            span.insert(r);
        }
        span
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the rows; what remains is zero iff `v` is in the span.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.prime;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                let f = p.neg(c);
                for (x, &r) in v.iter_mut().zip(row).skip(piv) {
                    if r != 0 {
                        *x = p.add(*x, p.mul(f, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Add a vector, keeping reduced echelon form. Returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let p = self.prime;
        let inv = p.inv(v[piv]).expect("nonzero pivot");
        for x in v.iter_mut().skip(piv) {
            *x = p.mul(*x, inv);
        }
        // clear the new pivot column from the existing rows
        for row in &mut self.rows {
            let c = row[piv];
            if c != 0 {
                let f = p.neg(c);
                for (x, &r) in row.iter_mut().zip(&v).skip(piv) {
                    if r != 0 {
                        *x = p.add(*x, p.mul(f, r));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &DegreeSpan) -> DegreeSpan {
        assert_eq!(self.ambient, other.ambient);
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    pub fn is_subspace_of(&self, other: &DegreeSpan) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn elements(&self, basis: &DegreeBasis) -> Vec<Element> {
        self.rows.iter().map(|r| basis.element(r)).collect()
    }
}

/// Row-reduced span of homogeneous elements of degree `basis.degree()`.
pub fn span_of<'a>(basis: &DegreeBasis, elements: impl IntoIterator<Item = &'a Element>) -> Result<DegreeSpan> {
    let mut span = DegreeSpan::zero(basis.ring().prime(), basis.degree(), basis.len());
    for y in elements {
        match y.total_degree() {
            Degree::Zero => continue,
            Degree::Homogeneous(d) if d == basis.degree() => {}
            _ => {
                return Err(Error::Usage(format!(
                    "{y} is not homogeneous of degree {}",
                    basis.degree()
                )))
            }
        }
        span.insert(basis.coordinates(y)?);
    }
    Ok(span)
}

/// Kernel of the linear map sending the `i`-th basis monomial to `images[i]`.
pub fn kernel_of_map(domain: &DegreeBasis, images: &[Element]) -> DegreeSpan {
    let tuples: Vec<Vec<&Element>> = images.iter().map(|y| vec![y]).collect();
    joint_kernel(domain, &tuples)
}

/// Joint kernel of several linear maps: `images[i][k]` is the image of the
/// `i`-th basis monomial under map `k`. The codomains may differ.
pub fn joint_kernel(domain: &DegreeBasis, images: &[Vec<&Element>]) -> DegreeSpan {
    assert_eq!(images.len(), domain.len(), "one image tuple per basis monomial");
    joint_kernel_local(domain.ring().prime(), domain.degree(), images)
}

/// [`joint_kernel`] on an abstract domain with basis `0..images.len()`.
pub fn joint_kernel_local(prime: Prime, degree: u64, images: &[Vec<&Element>]) -> DegreeSpan {
    let dim = images.len();

    let mut columns: HashMap<(usize, &Monomial), usize> = HashMap::new();
    let mut sparse_rows: Vec<Vec<(usize, u32)>> = Vec::with_capacity(dim);
    for tuple in images {
        let mut row = Vec::new();
        for (k, y) in tuple.iter().enumerate() {
            for (m, c) in y.terms() {
                let next = columns.len();
                let col = *columns.entry((k, m)).or_insert(next);
                row.push((col, c));
            }
        }
        sparse_rows.push(row);
    }
    let width = columns.len();

    // Row reduce [A | I]; rows whose A-part vanishes give the kernel.
    let mut echelon = DegreeSpan::zero(prime, degree, width + dim);
    for (i, sparse) in sparse_rows.into_iter().enumerate() {
        let mut row = vec![0u32; width + dim];
        for (col, c) in sparse {
            row[col] = c;
        }
        row[width + i] = 1;
        echelon.insert(row);
    }
    let kernel_rows = echelon
        .rows
        .iter()
        .zip(&echelon.pivots)
        .filter(|(_, &piv)| piv >= width)
        .map(|(r, _)| r[width..].to_vec());
    DegreeSpan::from_rows(prime, degree, dim, kernel_rows)
}

/// A uniformly random element of one graded piece.
pub fn random_element(basis: &DegreeBasis, rng: &mut impl Rng) -> Element {
    let p = basis.ring().p();
    let coords: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
    basis.element(&coords)
}

/// A random element with at most `terms` nonzero terms.
pub fn random_sparse_element(basis: &DegreeBasis, terms: usize, rng: &mut impl Rng) -> Element {
    let ring = basis.ring();
    let mut y = Element::zero(ring);
    if basis.is_empty() {
        return y;
    }
    for _ in 0..terms {
        let m = basis.monomials()[rng.gen_range(0..basis.len())].clone();
        y += &Element::monomial(ring, m, rng.gen_range(1..ring.p()));
    }
    y
}
