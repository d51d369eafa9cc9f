use super::EssentialIdeal;
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::invariants::{MuiIndex, MuiInvariants};

/// Write an essential `y ∈ N_r` as `Σ_{|S| = r} f_S M_{n,S}` with polynomial
/// `f_S`, returned in the order of [`MuiIndex::of_size`].
///
/// Multiplying by `M_{n,T}` for `T` the complement of `S` kills every other
/// summand, so `y M_{n,T} = ε_S λ f_S L_n a_1 ⋯ a_n`. The result is checked
/// by recombination before it is returned.
pub fn decompose(ess: &EssentialIdeal, inv: &MuiInvariants, y: &Element) -> Result<Vec<(MuiIndex, Element)>> {
    let ring = inv.ring();
    ring.check_same(y.ring())?;
    ring.check_same(ess.ring())?;
    if y.is_zero() {
        return Ok(Vec::new());
    }
    let ranks = y.exterior_ranks();
    let [r] = ranks[..] else {
        return Err(Error::Usage(format!(
            "element has terms of exterior ranks {ranks:?}; decompose each N_r component separately"
        )));
    };
    if let Some((h, image)) = ess.witness(y) {
        return Err(Error::Usage(format!(
            "element is not essential: restriction to ker{:?} is {image}",
            h.form()
        )));
    }

    let n = ring.rank();
    let p = ring.prime();
    let full = MuiIndex::full(n).mask();
    let mut parts = Vec::new();
    for set in MuiIndex::of_size(n, r) {
        let product = y * inv.set(set.complement(n));
        let quotient = product
            .exact_div(inv.ln())
            .map_err(|e| Error::Consistency(format!("y M_T not divisible by L_n for S = {set}: {e}")))?;
        let top = quotient.exterior_component(full);
        if quotient.len() != top.len() {
            return Err(Error::Consistency(format!("y M_T / L_n = {quotient} is not a multiple of a1..an")));
        }
        let scale = p.inv(p.mul(inv.epsilon(set)?, inv.top_scalar()))?;
        parts.push((set, top.scale(scale)));
    }

    let mut recombined = Element::zero(ring);
    for (set, f) in &parts {
        recombined += &(f * inv.set(*set));
    }
    if &recombined != y {
        return Err(Error::Consistency(format!("Σ f_S M_S = {recombined} differs from {y}")));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn decomposes_combinations() {
        let r = Ring::new(3, 2).unwrap();
        let ess = EssentialIdeal::new(r).unwrap();
        let inv = MuiInvariants::new(r).unwrap();
        let f1 = Element::parse(r, "x1x2 + x2^2").unwrap();
        let f2 = Element::parse(r, "2*x1^4 + x1x2^3").unwrap();
        let s1 = MuiIndex::new(&[1]).unwrap();
        let s2 = MuiIndex::new(&[2]).unwrap();
        let y = &(&f1 * inv.set(s1)) + &(&f2 * inv.set(s2));
        let parts = decompose(&ess, &inv, &y).unwrap();
        assert_eq!(parts, vec![(s1, f1), (s2, f2)]);

        let top = decompose(&ess, &inv, &Element::parse(r, "a1a2").unwrap()).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(&(&top[0].1 * inv.set(top[0].0)), &Element::parse(r, "a1a2").unwrap());
    }

    #[test]
    fn rejects() {
        let r = Ring::new(3, 2).unwrap();
        let ess = EssentialIdeal::new(r).unwrap();
        let inv = MuiInvariants::new(r).unwrap();
        assert!(matches!(decompose(&ess, &inv, &Element::x(r, 1)), Err(Error::Usage(_))));
        let mixed = &Element::parse(r, "a1a2").unwrap() + inv.ln();
        assert!(matches!(decompose(&ess, &inv, &mixed), Err(Error::Usage(_))));
        assert!(decompose(&ess, &inv, &Element::zero(r)).unwrap().is_empty());
    }
}
