use std::cmp::Ordering;

/// One basis term `a_E · x^m`: an exterior subset `E ⊆ {1..n}` (bit `i-1`
/// set for `a_i`) times a polynomial monomial with exponent vector `m`.
///
/// The exterior indices are implicitly sorted, which is the normal form; the
/// sign needed to reach it is handled by [`Element`](super::Element)
/// multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exterior: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(rank: usize) -> Monomial {
        Monomial {
            exterior: 0,
            exponents: vec![0; rank],
        }
    }

    pub fn new(exterior: u32, exponents: Vec<u32>) -> Monomial {
        debug_assert!(exponents.len() >= 32 || exterior >> exponents.len() == 0);
        Monomial {
            exterior,
            exponents,
        }
    }

    pub fn polynomial(exponents: Vec<u32>) -> Monomial {
        Monomial::new(0, exponents)
    }

    /// Bitmask of the exterior factors.
    #[inline]
    pub fn exterior(&self) -> u32 {
        self.exterior
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Number of exterior factors, i.e. `r` with this term in `N_r`.
    #[inline]
    pub fn exterior_rank(&self) -> usize {
        self.exterior.count_ones() as usize
    }

    /// Exterior indices, 1-based, ascending.
    pub fn exterior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |i| self.exterior >> i & 1 == 1).map(|i| i + 1)
    }

    pub fn polynomial_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exterior == 0
    }

    pub(crate) fn with_exterior(&self, exterior: u32) -> Monomial {
        Monomial {
            exterior,
            exponents: self.exponents.clone(),
        }
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.exponents
    }

    /// Does `self` divide `other` as polynomial monomials (ignoring exterior)?
    pub fn divides_polynomial(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }
}

/// Sign and mask of `a_E · a_F` in normal form, or `None` if `E ∩ F ≠ ∅`.
/// The flag is `true` when sorting the concatenation takes an odd number of
/// transpositions.
#[inline]
pub(crate) fn exterior_product(left: u32, right: u32) -> Option<(u32, bool)> {
    if left & right != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = right;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // factors of `left` with a larger index than `a_{j+1}` must pass it
        let above = if j >= 31 { 0 } else { left & (u32::MAX << (j + 1)) };
        inversions += above.count_ones();
        rest &= rest - 1;
    }
    Some((left | right, inversions % 2 == 1))
}

/// Canonical order: lexicographic on the exterior indicator vector
/// `(e_1, .., e_n)` and then on the exponent vector, both descending, so
/// `a1` precedes `a2` and `x1^3x2` precedes `x2^4`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exterior
            .reverse_bits()
            .cmp(&self.exterior.reverse_bits())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponent vector under graded lexicographic order, used by exact division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grlex(pub Vec<u32>);

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        let d1: u64 = self.0.iter().map(|&e| e as u64).sum();
        let d2: u64 = other.0.iter().map(|&e| e as u64).sum();
        d1.cmp(&d2).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
