use std::collections::{BTreeMap, VecDeque};

use crate::algebra::{Degree, Element, Ring};
use crate::error::{Error, Result};
use crate::invariants::MuiIndex;
use crate::linalg::{DegreeBasis, DegreeSpan};
use crate::steenrod::{bockstein, power, SteenrodOp, SteenrodWord};

/// The smallest ideal containing a seed that is closed under the Steenrod
/// operations, truncated at a maximal degree.
#[derive(Clone, Debug)]
pub struct Closure {
    ring: Ring,
    max_degree: u64,
    pieces: BTreeMap<u64, (DegreeBasis, DegreeSpan)>,
}

impl Closure {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    /// The span in degree `d`; zero when nothing was reached.
    pub fn span(&self, d: u64) -> DegreeSpan {
        match self.pieces.get(&d) {
            Some((_, span)) => span.clone(),
            None => DegreeSpan::zero(self.ring.prime(), d, DegreeBasis::new(self.ring, d).len()),
        }
    }

    pub fn dimension(&self, d: u64) -> usize {
        self.pieces.get(&d).map_or(0, |(_, span)| span.rank())
    }

    pub fn elements(&self, d: u64) -> Vec<Element> {
        self.pieces
            .get(&d)
            .map_or_else(Vec::new, |(basis, span)| span.elements(basis))
    }

    pub fn total_dimension(&self) -> usize {
        self.pieces.values().map(|(_, span)| span.rank()).sum()
    }
}

/// Saturate `seed` under multiplication by the generators and under `β`,
/// `P^k` (or `Sq^k`) up to degree `max_degree`. Fails with a resource error
/// once the total dimension exceeds `dimension_cap`.
pub fn steenrod_closure(seed: &[Element], max_degree: u64, dimension_cap: usize) -> Result<Closure> {
    let ring = match seed.first() {
        Some(y) => y.ring(),
        None => return Err(Error::Usage("closure of an empty seed".into())),
    };
    let mut closure = Closure {
        ring,
        max_degree,
        pieces: BTreeMap::new(),
    };
    let mut queue = VecDeque::new();
    let mut total = 0usize;

    let mut add = |closure: &mut Closure, y: Element, queue: &mut VecDeque<(u64, Element)>| -> Result<()> {
        let d = match y.total_degree() {
            Degree::Zero => return Ok(()),
            Degree::Homogeneous(d) => d,
            Degree::Inhomogeneous => return Err(Error::Usage(format!("seed element {y} is not homogeneous"))),
        };
        if d > max_degree {
            return Ok(());
        }
        let (basis, span) = closure.pieces.entry(d).or_insert_with(|| {
            let basis = DegreeBasis::new(ring, d);
            let span = DegreeSpan::zero(ring.prime(), d, basis.len());
            (basis, span)
        });
        if span.insert(basis.coordinates(&y)?) {
            total += 1;
            if total > dimension_cap {
                return Err(Error::ResourceGuard(format!(
                    "closure exceeds {dimension_cap} basis elements below degree {max_degree}"
                )));
            }
            queue.push_back((d, y));
        }
        Ok(())
    };

    for y in seed {
        ring.check_same(y.ring())?;
        add(&mut closure, y.clone(), &mut queue)?;
    }

    let n = ring.rank();
    let odd = ring.has_exterior();
    let p = ring.p() as u64;
    let weight = ring.polynomial_weight();
    while let Some((d, y)) = queue.pop_front() {
        for i in 1..=n {
            if odd && d < max_degree {
                add(&mut closure, &y * &Element::a(ring, i), &mut queue)?;
            }
            if d + weight <= max_degree {
                add(&mut closure, &y * &Element::x(ring, i), &mut queue)?;
            }
        }
        if odd {
            if d < max_degree {
                add(&mut closure, bockstein(&y)?, &mut queue)?;
            }
            // P^k vanishes on classes of degree < 2k
            let mut k = 1;
            while d + 2 * k * (p - 1) <= max_degree && 2 * k <= d {
                add(&mut closure, power(k, &y), &mut queue)?;
                k += 1;
            }
        } else {
            let mut k = 1;
            while d + k <= max_degree && k <= d {
                add(&mut closure, power(k, &y), &mut queue)?;
                k += 1;
            }
        }
    }
    Ok(closure)
}

/// A Steenrod word `θ` with `θ(M_{n,{1..n}}) = M_{n,S}`, odd `p`.
///
/// Let `u` be the least element missing from `S`. For `u = 1`,
/// `M_{n,S} = β M_{n,S ∪ {1}}`. Otherwise `M_{n,S} = P^{p^{u-2}} M_{n,S'}`
/// with `S' = {1, .., u-2, u} ∪ {s ∈ S : s > u}`, and `S'` misses `u - 1`.
pub fn proof_word(p: u32, n: usize, set: MuiIndex) -> Result<SteenrodWord> {
    if p == 2 {
        return Err(Error::Usage("proof words are for odd primes".into()));
    }
    if !set.fits(n) {
        return Err(Error::Usage(format!("{set} is not a subset of 1..={n}")));
    }
    let full = MuiIndex::full(n);
    if set == full {
        return Ok(SteenrodWord::default());
    }
    let u = (1..=n).find(|&s| !set.contains(s)).expect("proper subset");
    if u == 1 {
        let below = set.union(MuiIndex::initial(1));
        return Ok(proof_word(p, n, below)?.then(SteenrodOp::Bockstein));
    }
    let mut previous = MuiIndex::initial(u - 2).union(MuiIndex::new(&[u])?);
    for s in set.members().into_iter().filter(|&s| s > u) {
        previous = previous.union(MuiIndex::new(&[s])?);
    }
    let step = (p as u64).pow(u as u32 - 2);
    Ok(proof_word(p, n, previous)?.then(SteenrodOp::Power(step)))
}
