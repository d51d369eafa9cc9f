//! Maximal subgroups, restriction, and the ideal of essential classes.
//!
//! A maximal subgroup `H ⊂ V` is the kernel of a nonzero linear form
//! `α ∈ V*`, determined up to scalars. Restriction to `H` is the algebra map
//! that kills `Σ α_i a_i` and `Σ α_i x_i`; a class is essential when every such
//! restriction kills it. All computations here are degreewise.

mod closure;
mod decompose;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

pub use closure::{proof_word, steenrod_closure, Closure};
pub use decompose::decompose;

use crate::algebra::{Element, Monomial, Ring};
use crate::error::{Error, Result};
use crate::invariants::projective_points;
use crate::linalg::{joint_kernel_local, DegreeBasis, DegreeSpan};

/// A maximal subgroup `ker(α)` with a chosen restriction map `V* → H*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroup {
    form: Vec<u32>,
    /// `matrix[j][i]`: coefficient of the `j`-th generator of `H*` in the
    /// image of the `i`-th generator of `V*`. Size `(n-1) × n`.
    matrix: Vec<Vec<u32>>,
}

impl MaximalSubgroup {
    /// The subgroup killed by `form`, using the first nonzero coordinate of
    /// the normalized form as the eliminated generator.
    pub fn new(ring: Ring, form: &[u32]) -> Result<MaximalSubgroup> {
        let pivot = form
            .iter()
            .position(|&c| c % ring.p() != 0)
            .ok_or_else(|| Error::Usage("the zero form does not define a subgroup".into()))?;
        MaximalSubgroup::with_pivot(ring, form, pivot)
    }

    /// Same subgroup, eliminating generator `pivot` (0-based; `form[pivot]`
    /// must be nonzero). Different pivots give different coordinates on `H*`.
    pub fn with_pivot(ring: Ring, form: &[u32], pivot: usize) -> Result<MaximalSubgroup> {
        let p = ring.prime();
        let n = ring.rank();
        if form.len() != n {
            return Err(Error::Usage(format!("form needs {n} coordinates")));
        }
        let mut form: Vec<u32> = form.iter().map(|&c| c % p.value()).collect();
        let lead = form.iter().position(|&c| c != 0).ok_or_else(|| Error::Usage("zero form".into()))?;
        let scale = p.inv(form[lead])?;
        for c in &mut form {
            *c = p.mul(*c, scale);
        }
        if form[pivot] == 0 {
            return Err(Error::Usage(format!("form has no component at {}", pivot + 1)));
        }
        // e_i ↦ b_{col(i)} for i ≠ pivot; e_pivot ↦ -Σ_{i≠pivot} (α_i / α_pivot) b_{col(i)}
        let pivot_inv = p.inv(form[pivot])?;
        let mut matrix = vec![vec![0u32; n]; n - 1];
        let mut j = 0;
        for i in 0..n {
            if i == pivot {
                continue;
            }
            matrix[j][i] = 1;
            matrix[j][pivot] = p.neg(p.mul(form[i], pivot_inv));
            j += 1;
        }
        Ok(MaximalSubgroup { form, matrix })
    }

    /// The normalized form `α` (first nonzero coordinate 1).
    pub fn form(&self) -> &[u32] {
        &self.form
    }

    pub fn restriction_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn restriction(&self, ring: Ring) -> Restriction {
        Restriction::new(ring, self)
    }
}

/// All maximal subgroups, one per point of the projective space of `V*`,
/// ordered lexicographically by normalized form.
pub fn enumerate_maximal_subgroups(ring: Ring) -> Vec<MaximalSubgroup> {
    projective_points(ring.p(), ring.rank())
        .iter()
        .map(|form| MaximalSubgroup::new(ring, form).expect("nonzero form"))
        .collect()
}

/// The restriction homomorphism to one maximal subgroup.
#[derive(Clone, Debug)]
pub struct Restriction {
    source: Ring,
    target: Ring,
    a_images: Vec<Element>,
    x_images: Vec<Element>,
}

impl Restriction {
    pub fn new(ring: Ring, subgroup: &MaximalSubgroup) -> Restriction {
        let n = ring.rank();
        let target = ring.with_rank(n - 1);
        let image = |i: usize, make: &dyn Fn(usize) -> Element| {
            let mut e = Element::zero(target);
            for (j, row) in subgroup.matrix.iter().enumerate() {
                if row[i] != 0 {
                    e += &make(j + 1).scale(row[i]);
                }
            }
            e
        };
        let a_images = if ring.has_exterior() {
            (0..n).map(|i| image(i, &|j| Element::a(target, j))).collect()
        } else {
            Vec::new()
        };
        let x_images = (0..n).map(|i| image(i, &|j| Element::x(target, j))).collect();
        Restriction {
            source: ring,
            target,
            a_images,
            x_images,
        }
    }

    pub fn target(&self) -> Ring {
        self.target
    }

    pub fn apply(&self, y: &Element) -> Element {
        self.apply_all(std::slice::from_ref(y)).pop().expect("one image")
    }

    /// Restrict several elements, sharing the table of powers.
    pub fn apply_all(&self, ys: &[Element]) -> Vec<Element> {
        let mut powers: HashMap<(usize, u32), Element> = HashMap::new();
        ys.iter()
            .map(|y| {
                assert_eq!(y.ring(), self.source, "restriction source ring");
                let mut out = Element::zero(self.target);
                for (m, c) in y.terms() {
                    let image = self.monomial_image(m, &mut powers);
                    out += &image.scale(c);
                }
                out
            })
            .collect()
    }

    fn monomial_image(&self, m: &Monomial, powers: &mut HashMap<(usize, u32), Element>) -> Element {
        let mut acc = Element::one(self.target);
        for i in m.exterior_indices() {
            acc = &acc * &self.a_images[i - 1];
            if acc.is_zero() {
                return acc;
            }
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let power = powers.entry((i, e)).or_insert_with(|| self.x_images[i].pow(e));
            acc = &acc * power;
            if acc.is_zero() {
                return acc;
            }
        }
        acc
    }
}

/// `Ess(V)` in one degree, with its split by exterior rank.
#[derive(Clone, Debug)]
pub struct EssentialPiece {
    pub basis: DegreeBasis,
    pub total: DegreeSpan,
    /// `by_rank[r]` is `(N_r ∩ Ess)_d`, in the coordinates of `basis`.
    pub by_rank: Vec<DegreeSpan>,
}

impl EssentialPiece {
    pub fn degree(&self) -> u64 {
        self.basis.degree()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.total.elements(&self.basis)
    }

    pub fn rank_elements(&self, r: usize) -> Vec<Element> {
        self.by_rank[r].elements(&self.basis)
    }
}

/// Restriction maps to every maximal subgroup of one `(p, n)`, with a cache
/// of computed essential pieces.
#[derive(Debug)]
pub struct EssentialIdeal {
    ring: Ring,
    subgroups: Vec<MaximalSubgroup>,
    restrictions: Vec<Restriction>,
    pieces: Mutex<HashMap<u64, Arc<EssentialPiece>>>,
}

impl EssentialIdeal {
    pub fn new(ring: Ring) -> Result<EssentialIdeal> {
        if ring.rank() == 0 {
            return Err(Error::Usage("rank must be at least 1".into()));
        }
        let subgroups = enumerate_maximal_subgroups(ring);
        EssentialIdeal::with_subgroups(ring, subgroups)
    }

    /// Use explicitly chosen subgroup coordinates (e.g. other pivots).
    pub fn with_subgroups(ring: Ring, subgroups: Vec<MaximalSubgroup>) -> Result<EssentialIdeal> {
        let restrictions = subgroups.iter().map(|h| h.restriction(ring)).collect();
        Ok(EssentialIdeal {
            ring,
            subgroups,
            restrictions,
            pieces: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn subgroups(&self) -> &[MaximalSubgroup] {
        &self.subgroups
    }

    pub fn restrictions(&self) -> &[Restriction] {
        &self.restrictions
    }

    /// Whether every restriction to a maximal subgroup kills `y`.
    pub fn is_essential(&self, y: &Element) -> bool {
        self.restrictions.iter().all(|r| r.apply(y).is_zero())
    }

    /// A maximal subgroup on which `y` survives, with the restriction.
    pub fn witness(&self, y: &Element) -> Option<(&MaximalSubgroup, Element)> {
        self.subgroups
            .iter()
            .zip(&self.restrictions)
            .map(|(h, r)| (h, r.apply(y)))
            .find(|(_, image)| !image.is_zero())
    }

    /// `Ess(V)_d`, computed as the joint kernel of all restrictions. The
    /// decomposition `Ess_d = ⊕_r (N_r ∩ Ess)_d` is checked on the way.
    pub fn piece(&self, degree: u64) -> Result<Arc<EssentialPiece>> {
        if let Some(piece) = self.pieces.lock().expect("cache lock").get(&degree) {
            return Ok(piece.clone());
        }
        let piece = Arc::new(self.compute_piece(degree)?);
        self.pieces.lock().expect("cache lock").insert(degree, piece.clone());
        Ok(piece)
    }

    fn compute_piece(&self, degree: u64) -> Result<EssentialPiece> {
        let basis = DegreeBasis::new(self.ring, degree);
        let elements: Vec<Element> = basis.elements().collect();
        // images[k][i]: restriction k applied to basis monomial i
        let images: Vec<Vec<Element>> = self.restrictions.par_iter().map(|r| r.apply_all(&elements)).collect();
        let tuples = |indices: &[usize]| -> Vec<Vec<&Element>> {
            indices.iter().map(|&i| images.iter().map(|per_map| &per_map[i]).collect()).collect()
        };

        let prime = self.ring.prime();
        let all: Vec<usize> = (0..basis.len()).collect();
        let total = joint_kernel_local(prime, degree, &tuples(&all));

        let max_rank = if self.ring.has_exterior() { self.ring.rank() } else { 0 };
        let mut by_rank = Vec::with_capacity(max_rank + 1);
        let mut direct_sum = DegreeSpan::zero(prime, degree, basis.len());
        for r in 0..=max_rank {
            let indices: Vec<usize> = all
                .iter()
                .copied()
                .filter(|&i| basis.monomials()[i].exterior_rank() == r)
                .collect();
            let local = joint_kernel_local(prime, degree, &tuples(&indices));
            let embedded = DegreeSpan::from_rows(
                prime,
                degree,
                basis.len(),
                local.rows().iter().map(|row| {
                    let mut full = vec![0u32; basis.len()];
                    for (k, &c) in row.iter().enumerate() {
                        full[indices[k]] = c;
                    }
                    full
                }),
            );
            direct_sum = direct_sum.sum(&embedded);
            by_rank.push(embedded);
        }
        if direct_sum != total {
            return Err(Error::Consistency(format!(
                "essential classes of degree {degree} do not split by exterior rank"
            )));
        }
        Ok(EssentialPiece { basis, total, by_rank })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{ln, mui};
    use crate::linalg::span_of;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::new(p, n).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_maximal_subgroups(ring(3, 2)).len(), 4);
        assert_eq!(enumerate_maximal_subgroups(ring(3, 3)).len(), 13);
        assert_eq!(enumerate_maximal_subgroups(ring(2, 3)).len(), 7);
        assert_eq!(enumerate_maximal_subgroups(ring(5, 2)).len(), 6);
    }

    #[test]
    fn restriction_kills_the_form() {
        for (p, n) in [(3, 2), (3, 3), (5, 2), (2, 3)] {
            let r = ring(p, n);
            for h in enumerate_maximal_subgroups(r) {
                let res = h.restriction(r);
                let mut form_x = Element::zero(r);
                let mut form_a = Element::zero(r);
                for (i, &c) in h.form().iter().enumerate() {
                    form_x += &Element::x(r, i + 1).scale(c);
                    if r.has_exterior() {
                        form_a += &Element::a(r, i + 1).scale(c);
                    }
                }
                assert!(res.apply(&form_x).is_zero());
                assert!(res.apply(&form_a).is_zero());
                // on polynomial classes of weight one the kernel is the form itself
                let b = DegreeBasis::new(r, r.polynomial_weight());
                let images: Vec<Element> = b.elements().map(|e| res.apply(&e)).collect();
                let kernel = crate::linalg::kernel_of_map(&b, &images).elements(&b);
                let polynomial: Vec<&Element> = kernel.iter().filter(|e| e.is_polynomial()).collect();
                assert_eq!(polynomial.len(), 1);
                assert_eq!(polynomial[0], &form_x);
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let r = ring(3, 2);
        let h = MaximalSubgroup::new(r, &[0, 1]).unwrap();
        let res = h.restriction(r);
        let t = res.target();
        assert_eq!(res.apply(&Element::one(r)), Element::one(t));
        assert!(res.apply(&mui(r, 2).unwrap()).is_zero());
        assert_eq!(res.apply(&Element::x_pow(r, 1, 2)), Element::x_pow(t, 1, 2));
        assert!(res.apply(&Element::x(r, 2)).is_zero());
    }

    #[test]
    fn essential_examples() {
        for (p, n) in [(3, 2), (3, 3), (5, 2)] {
            let r = ring(p, n);
            let ess = EssentialIdeal::new(r).unwrap();
            for s in 1..=n {
                assert!(ess.is_essential(&mui(r, s).unwrap()));
            }
            assert!(!ess.is_essential(&Element::one(r)));
            assert!(ess.is_essential(&ln(r).unwrap()));
            assert!(ess.witness(&Element::x(r, 1)).is_some());
        }
    }

    #[test]
    fn ess_pieces() {
        let r = ring(3, 2);
        let ess = EssentialIdeal::new(r).unwrap();
        assert!(ess.piece(1).unwrap().total.is_zero());
        let two = ess.piece(2).unwrap();
        assert_eq!(two.by_rank[2].rank(), 1);
        let a12 = Element::parse(r, "a1a2").unwrap();
        assert_eq!(two.total, span_of(&two.basis, [&a12]).unwrap());

        let r2 = ring(2, 2);
        let ess2 = EssentialIdeal::new(r2).unwrap();
        let three = ess2.piece(3).unwrap();
        assert_eq!(three.total.rank(), 1);
        assert_eq!(three.elements(), [ln(r2).unwrap()]);
    }

    #[test]
    fn ess_independent_of_coordinates() {
        for (p, n) in [(3, 2), (3, 3)] {
            let r = ring(p, n);
            let standard = EssentialIdeal::new(r).unwrap();
            // eliminate the last nonzero coordinate instead of the first
            let other: Vec<MaximalSubgroup> = projective_points(p, n)
                .iter()
                .map(|f| {
                    let last = f.iter().rposition(|&c| c != 0).unwrap();
                    MaximalSubgroup::with_pivot(r, f, last).unwrap()
                })
                .collect();
            assert!(other.iter().zip(standard.subgroups()).any(|(a, b)| a != b));
            let alt = EssentialIdeal::with_subgroups(r, other).unwrap();
            for d in 0..=12 {
                assert_eq!(standard.piece(d).unwrap().total, alt.piece(d).unwrap().total, "d={d}");
            }
        }
    }

    #[test]
    fn bad_forms() {
        let r = ring(3, 2);
        assert!(MaximalSubgroup::new(r, &[0, 0]).is_err());
        assert!(MaximalSubgroup::new(r, &[1]).is_err());
        assert!(MaximalSubgroup::with_pivot(r, &[1, 0], 1).is_err());
        let h = MaximalSubgroup::new(r, &[2, 2]).unwrap();
        assert_eq!(h.form(), [1, 1]);
    }
}
