use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ln_degree, Case, Claim, Context, Outcome, Primes, MAX_CLOSURE_DIMENSION};
use crate::algebra::{Degree, Element, Monomial};
use crate::error::Result;
use crate::essential::{decompose, proof_word, steenrod_closure};
use crate::invariants::{determinant, ln, matrix_e, monic_linear_forms_product, FundamentalEquation, Monic, MuiIndex};
use crate::linalg::{joint_kernel, span_of, DegreeBasis, DegreeSpan};
use crate::steenrod::{bockstein, power};

pub(super) static ALL: &[Claim] = &[
    Claim {
        id: "coroll:MnS",
        summary: "every M_{n,S} is nonzero and M_{n,{1..n}} is a nonzero multiple of a1..an",
        primes: Primes::Odd,
        check: mui_sets_nonzero,
    },
    Claim {
        id: "coroll:jointAnn2",
        summary: "the joint annihilator of {M_{n,S} : |S| = r} is the sum of the N_s with s >= n-r+1",
        primes: Primes::Odd,
        check: joint_annihilator_sets,
    },
    Claim {
        id: "eq:MnST",
        summary: "M_S M_T = ±L_n M_{S∪T} for disjoint S, T and 0 otherwise",
        primes: Primes::Odd,
        check: mui_set_products,
    },
    Claim {
        id: "eq:betaMns",
        summary: "β(M_{n,1}) = L_n, β(M_{n,s}) = 0 for s > 1, β(L_n) = 0",
        primes: Primes::Odd,
        check: bockstein_of_mui,
    },
    Claim {
        id: "eq:rPMnS",
        summary: "P^{p^s}(M_{n,r}) = M_{n,r-1} if r = s+2 and 0 otherwise; P^{p^s}(L_n) = 0",
        primes: Primes::Odd,
        check: powers_of_mui,
    },
    Claim {
        id: "lemma:EssSquared",
        summary: "Ess(V)^2 = L_n Ess(V)",
        primes: Primes::Odd,
        check: ess_squared,
    },
    Claim {
        id: "lemma:Mns",
        summary: "M_{n,s} lies in N_1 and is essential",
        primes: Primes::Odd,
        check: mui_essential,
    },
    Claim {
        id: "lemma:SteenrodMnS.1",
        summary: "M_{n,S} = β(M_{n,S∪{1}}) when 1 is not in S",
        primes: Primes::Odd,
        check: steenrod_part1,
    },
    Claim {
        id: "lemma:SteenrodMnS.2",
        summary: "L_n^{r-1} P^m(M_{n,S}) = P^m(M_{n,s_1} ... M_{n,s_r}) for m < p^{n-1}",
        primes: Primes::Odd,
        check: steenrod_part2,
    },
    Claim {
        id: "lemma:SteenrodMnS.3",
        summary: "L_n P^{p^{u-2}}(M_{n,S}) = P^{p^{u-2}}(M_{n,X}) M_{n,Y}",
        primes: Primes::Odd,
        check: steenrod_part3,
    },
    Claim {
        id: "lemma:SteenrodMnS.4",
        summary: "P^m(M_{n,{1..r}}) = 0 for 0 < m < p^{n-1}",
        primes: Primes::Odd,
        check: steenrod_part4,
    },
    Claim {
        id: "lemma:SteenrodMnS.5",
        summary: "P^{p^{u-2}}(M_{n,{1..u-2,u}}) = M_{n,{1..u-1}}",
        primes: Primes::Odd,
        check: steenrod_part5,
    },
    Claim {
        id: "lemma:eqnLn",
        summary: "L_n is the product of all monic linear forms",
        primes: Primes::Any,
        check: ln_is_product,
    },
    Claim {
        id: "lemma:jointAnn",
        summary: "the joint annihilator of M_{n,1}, ..., M_{n,n} is N_n",
        primes: Primes::Odd,
        check: joint_annihilator,
    },
    Claim {
        id: "lemma:p2",
        summary: "at p = 2, Ess(V) is free of rank one on L_n and is the Steenrod closure of L_n",
        primes: Primes::Two,
        check: mod_two,
    },
    Claim {
        id: "rk:fundamental",
        summary: "P^{p^{n-1}}(M_{n,s}) is the Dickson combination of the M_{n,r}",
        primes: Primes::Odd,
        check: top_power_on_mui,
    },
    Claim {
        id: "thm:Steenrod",
        summary: "Ess(V) is the Steenrod closure of a1..an",
        primes: Primes::Odd,
        check: steenrod_closure_theorem,
    },
    Claim {
        id: "thm:free",
        summary: "Ess(V) is a free S(V*)-module on the M_{n,S}",
        primes: Primes::Odd,
        check: free_module,
    },
];

fn degrees(ctx: &Context) -> Vec<u64> {
    (0..=ctx.max_degree()).collect()
}

fn up_to(ctx: &Context) -> String {
    format!("all degrees d <= {}", ctx.max_degree())
}

fn identities() -> String {
    "exact identities, all indices".to_string()
}

fn outcome(cases: Vec<Case>, coverage: String) -> Result<Outcome> {
    Ok(Outcome { cases, coverage })
}

fn name(set: MuiIndex) -> String {
    format!("M{set}")
}

fn ln_is_product(ctx: &Context) -> Result<Outcome> {
    let ring = ctx.ring();
    let det = ln(ring)?;
    let n = ring.rank();
    let last = monic_linear_forms_product(ring, Monic::LastNonzero);
    let first = monic_linear_forms_product(ring, Monic::FirstNonzero);
    let flips = ring.has_exterior() && (n * (n - 1) / 2) % 2 == 1;
    let signed = if flips { -&det } else { det.clone() };
    let sign = if flips { "-" } else { "+" };
    outcome(
        vec![
            Case::equal("det C = product of forms with last nonzero coefficient 1", &last, &det),
            Case::equal(
                format!("{sign}det C = product of forms with first nonzero coefficient 1"),
                &first,
                &signed,
            ),
        ],
        identities(),
    )
}

fn mod_two(ctx: &Context) -> Result<Outcome> {
    let ring = ctx.ring();
    let l = ln(ring)?;
    let shift = ln_degree(ring);
    let closure = steenrod_closure(std::slice::from_ref(&l), ctx.max_degree(), MAX_CLOSURE_DIMENSION)?;
    let per_degree = degrees(ctx)
        .into_par_iter()
        .map(|d| {
            let piece = ctx.ess().piece(d)?;
            let multiples: Vec<Element> = match d.checked_sub(shift) {
                Some(e) => DegreeBasis::new(ring, e).elements().map(|m| &l * &m).collect(),
                None => Vec::new(),
            };
            let free = span_of(&piece.basis, &multiples)?;
            Ok(vec![
                Case::spans(format!("d={d} L_n S(V*)"), &piece.basis, &free, &piece.total),
                Case::new(
                    format!("d={d} rank"),
                    multiples.len().to_string(),
                    piece.total.rank().to_string(),
                    multiples.len() == piece.total.rank(),
                ),
                Case::spans(format!("d={d} closure"), &piece.basis, &piece.total, &closure.span(d)),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    outcome(per_degree.concat(), up_to(ctx))
}

fn mui_essential(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let mut cases = Vec::new();
    for s in 1..=ctx.ring().rank() {
        let m = inv.single(s);
        cases.push(Case::equal(format!("M({s}) in N_1"), m, &m.project_rank(1)));
        let (actual, pass) = match ctx.ess().witness(m) {
            None => ("0".to_string(), true),
            Some((h, image)) => (format!("{image} on ker{:?}", h.form()), false),
        };
        cases.push(Case::new(
            format!("M({s}) restricted to {} subgroups", ctx.ess().subgroups().len()),
            "0",
            actual,
            pass,
        ));
    }
    outcome(cases, identities())
}

fn mui_set_products(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let sets: Vec<MuiIndex> = MuiIndex::all(n).into_iter().filter(|s| !s.is_empty()).collect();
    let mut cases = Vec::new();
    for &s in &sets {
        for &t in &sets {
            let product = inv.set(s) * inv.set(t);
            let id = format!("{} {}", name(s), name(t));
            if s.is_disjoint(t) {
                let target = inv.ln() * inv.set(s.union(t));
                let pass = !target.is_zero() && (product == target || product == -&target);
                cases.push(Case::new(id, format!("±({target})"), product.to_string(), pass));
            } else {
                cases.push(Case::equal(id, &Element::zero(ctx.ring()), &product));
            }
        }
    }
    outcome(cases, "all pairs of nonempty subsets".into())
}

fn ess_squared(ctx: &Context) -> Result<Outcome> {
    let ess = ctx.ess();
    let l = ctx.invariants()?.ln().clone();
    let shift = ln_degree(ctx.ring());
    let cases = degrees(ctx)
        .into_par_iter()
        .map(|d| {
            let piece = ess.piece(d)?;
            let mut products = DegreeSpan::zero(ctx.ring().prime(), d, piece.basis.len());
            for d1 in 1..=d / 2 {
                let left = ess.piece(d1)?.elements();
                let right = ess.piece(d - d1)?.elements();
                for y in &left {
                    for z in &right {
                        products.insert(piece.basis.coordinates(&(y * z))?);
                    }
                }
            }
            let multiples: Vec<Element> = match d.checked_sub(shift) {
                Some(e) => ess.piece(e)?.elements().iter().map(|y| &l * y).collect(),
                None => Vec::new(),
            };
            let target = span_of(&piece.basis, &multiples)?;
            Ok(Case::spans(format!("d={d}"), &piece.basis, &target, &products))
        })
        .collect::<Result<Vec<_>>>()?;
    outcome(cases, up_to(ctx))
}

// Kernel of y ↦ (y M)_{M ∈ multipliers} on H^d.
fn annihilator(ctx: &Context, d: u64, multipliers: &[&Element]) -> (DegreeBasis, DegreeSpan) {
    let basis = DegreeBasis::new(ctx.ring(), d);
    let images: Vec<Vec<Element>> = basis
        .elements()
        .map(|y| multipliers.iter().map(|&m| &y * m).collect())
        .collect();
    let tuples: Vec<Vec<&Element>> = images.iter().map(|row| row.iter().collect()).collect();
    let kernel = joint_kernel(&basis, &tuples);
    (basis, kernel)
}

fn joint_annihilator(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let singles: Vec<&Element> = (1..=n).map(|s| inv.single(s)).collect();
    let cases = degrees(ctx)
        .into_par_iter()
        .map(|d| {
            let (basis, kernel) = annihilator(ctx, d, &singles);
            let expected = basis.span_where(|m| m.exterior_rank() == n);
            Case::spans(format!("d={d}"), &basis, &expected, &kernel)
        })
        .collect();
    outcome(cases, up_to(ctx))
}

fn joint_annihilator_sets(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let jobs: Vec<(usize, u64)> = (1..=n).flat_map(|r| degrees(ctx).into_iter().map(move |d| (r, d))).collect();
    let cases = jobs
        .into_par_iter()
        .map(|(r, d)| {
            let sets: Vec<&Element> = MuiIndex::of_size(n, r).into_iter().map(|s| inv.set(s)).collect();
            let (basis, kernel) = annihilator(ctx, d, &sets);
            let expected = basis.span_where(|m| m.exterior_rank() > n - r);
            Case::spans(format!("r={r} d={d}"), &basis, &expected, &kernel)
        })
        .collect();
    outcome(cases, format!("r = 1..={n}, {}", up_to(ctx)))
}

fn mui_sets_nonzero(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let ring = ctx.ring();
    let n = ring.rank();
    let mut cases: Vec<Case> = MuiIndex::all(n)
        .into_iter()
        .map(|s| {
            let m = inv.set(s);
            Case::new(format!("{} != 0", name(s)), "nonzero", m.to_string(), !m.is_zero())
        })
        .collect();
    let top = inv.set(MuiIndex::full(n));
    let lambda = inv.top_scalar();
    let expected = Element::top_exterior(ring).scale(lambda);
    cases.push(Case::new(
        format!("{} = λ a1..an", name(MuiIndex::full(n))),
        format!("{expected} with λ = {lambda} != 0"),
        top.to_string(),
        lambda != 0 && *top == expected,
    ));
    outcome(cases, identities())
}

fn polynomial_count(ring: crate::algebra::Ring, degree: u64) -> usize {
    if !degree.is_multiple_of(2) {
        return 0;
    }
    let n = ring.rank() as u64;
    let mut acc: u128 = 1;
    let m = degree / 2 + n - 1;
    for i in 0..n - 1 {
        acc = acc * (m - i) as u128 / (i as u128 + 1);
    }
    acc as usize
}

fn degree_of(y: &Element) -> u64 {
    match y.total_degree() {
        Degree::Homogeneous(d) => d,
        _ => panic!("Mùi invariants are homogeneous"),
    }
}

// A sparse random polynomial: up to 6 random monomials of the given degree.
fn random_polynomial(ring: crate::algebra::Ring, degree: u64, rng: &mut ChaCha8Rng) -> Element {
    let basis = DegreeBasis::new(ring, degree);
    let monomials: Vec<&Monomial> = basis.monomials().iter().filter(|m| m.is_polynomial()).collect();
    let mut y = Element::zero(ring);
    if monomials.is_empty() {
        return y;
    }
    for _ in 0..rng.gen_range(0..=6) {
        let m = monomials[rng.gen_range(0..monomials.len())].clone();
        y += &Element::monomial(ring, m, rng.gen_range(1..ring.p()));
    }
    y
}

const FREE_TRIALS: usize = 100;

fn free_module(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let ring = ctx.ring();
    let n = ring.rank();
    let ess = ctx.ess();

    // independence: decompose recovers random coefficients
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d75_6900 ^ (ring.p() as u64) << 8 ^ n as u64);
    let mut cases = Vec::new();
    for trial in 0..FREE_TRIALS {
        let r = rng.gen_range(0..=n);
        let sets = MuiIndex::of_size(n, r);
        let top = sets.iter().map(|&s| degree_of(inv.set(s))).max().expect("nonempty");
        let d = top + 2 * rng.gen_range(0..=2u64);
        let coefficients: Vec<Element> = sets
            .iter()
            .map(|&s| random_polynomial(ring, d - degree_of(inv.set(s)), &mut rng))
            .collect();
        let mut y = Element::zero(ring);
        for (&s, f) in sets.iter().zip(&coefficients) {
            y += &(f * inv.set(s));
        }
        let show = |fs: &[Element]| -> String {
            sets.iter()
                .zip(fs)
                .map(|(s, f)| format!("{}: {f}", name(*s)))
                .collect::<Vec<_>>()
                .join("; ")
        };
        let expected = show(&coefficients);
        let id = format!("trial {trial} r={r} d={d}");
        let case = match decompose(ess, inv, &y) {
            Ok(parts) => {
                let got: Vec<Element> = if parts.is_empty() {
                    vec![Element::zero(ring); sets.len()]
                } else {
                    parts.into_iter().map(|(_, f)| f).collect()
                };
                let actual = show(&got);
                let pass = got == coefficients;
                Case::new(id, expected, if pass { actual } else { format!("{actual} (from y = {y})") }, pass)
            }
            Err(e) => Case::new(id, expected, format!("{e} for y = {y}"), false),
        };
        cases.push(case);
    }

    // spanning: every essential class of exterior rank r decomposes
    let spanning = degrees(ctx)
        .into_par_iter()
        .map(|d| {
            let piece = ess.piece(d)?;
            let mut out = Vec::new();
            for r in 0..=n {
                let expected_rank: usize = MuiIndex::of_size(n, r)
                    .into_iter()
                    .filter_map(|s| d.checked_sub(degree_of(inv.set(s))))
                    .map(|e| polynomial_count(ring, e))
                    .sum();
                out.push(Case::new(
                    format!("d={d} r={r} rank"),
                    expected_rank.to_string(),
                    piece.by_rank[r].rank().to_string(),
                    expected_rank == piece.by_rank[r].rank(),
                ));
                let elements = piece.rank_elements(r);
                let failure = elements.iter().find_map(|y| decompose(ess, inv, y).err().map(|e| (y, e)));
                out.push(match failure {
                    None => Case::new(
                        format!("d={d} r={r} decompose"),
                        format!("{} classes", elements.len()),
                        format!("{} classes", elements.len()),
                        true,
                    ),
                    Some((y, e)) => Case::new(format!("d={d} r={r} decompose"), "exact", format!("{y}: {e}"), false),
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    cases.extend(spanning.into_iter().flatten());
    outcome(cases, format!("{FREE_TRIALS} seeded random combinations; spanning for {}", up_to(ctx)))
}

fn bockstein_of_mui(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let ring = ctx.ring();
    let zero = Element::zero(ring);
    let mut cases = Vec::new();
    for s in 1..=ring.rank() {
        let expected = if s == 1 { inv.ln() } else { &zero };
        cases.push(Case::equal(format!("b M({s})"), expected, &bockstein(inv.single(s))?));
    }
    cases.push(Case::equal("b L_n", &zero, &bockstein(inv.ln())?));
    outcome(cases, identities())
}

fn powers_of_mui(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let ring = ctx.ring();
    let n = ring.rank();
    let zero = Element::zero(ring);
    let mut cases = Vec::new();
    for s in 0..n.saturating_sub(1) {
        let k = (ring.p() as u64).pow(s as u32);
        for r in 1..=n {
            let expected = if r == s + 2 { inv.single(r - 1) } else { &zero };
            cases.push(Case::equal(format!("P{k} M({r})"), expected, &power(k, inv.single(r))));
        }
        cases.push(Case::equal(format!("P{k} L_n"), &zero, &power(k, inv.ln())));
    }
    outcome(cases, format!("s = 0..={}", n as i64 - 2))
}

fn steenrod_part1(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let one = MuiIndex::initial(1);
    let cases = MuiIndex::all(n)
        .into_iter()
        .filter(|s| !s.contains(1))
        .map(|s| Ok(Case::equal(format!("b {}", name(s.union(one))), inv.set(s), &bockstein(inv.set(s.union(one)))?)))
        .collect::<Result<Vec<_>>>()?;
    outcome(cases, "all S not containing 1".into())
}

// m ranges over 1..min(p^{n-1}, D + 1)
fn m_bound(ctx: &Context) -> u64 {
    let p = ctx.ring().p() as u64;
    p.pow(ctx.ring().rank() as u32 - 1).min(ctx.max_degree() + 1)
}

fn steenrod_part2(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let bound = m_bound(ctx);
    let jobs: Vec<(MuiIndex, u64)> = MuiIndex::all(n)
        .into_iter()
        .filter(|s| !s.is_empty())
        .flat_map(|s| (0..bound).map(move |m| (s, m)))
        .collect();
    let cases = jobs
        .into_par_iter()
        .map(|(s, m)| {
            let mut product = Element::one(ctx.ring());
            for i in s.members() {
                product = &product * inv.single(i);
            }
            let lhs = &inv.ln().pow(s.len() as u32 - 1) * &power(m, inv.set(s));
            Case::equal(format!("P{m} {}", name(s)), &power(m, &product), &lhs)
        })
        .collect();
    outcome(cases, format!("all nonempty S, m = 0..{bound}"))
}

fn steenrod_part3(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let mut cases = Vec::new();
    for u in 2..=n {
        let k = (ctx.ring().p() as u64).pow(u as u32 - 2);
        for s in MuiIndex::all(n) {
            let x = MuiIndex::from_mask(s.mask() & MuiIndex::initial(u).mask());
            let y = MuiIndex::from_mask(s.mask() & !MuiIndex::initial(u).mask());
            let lhs = inv.ln() * &power(k, inv.set(s));
            let rhs = &power(k, inv.set(x)) * inv.set(y);
            cases.push(Case::equal(format!("u={u} {}", name(s)), &rhs, &lhs));
        }
    }
    outcome(cases, "all S, u = 2..=n".into())
}

fn steenrod_part4(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let bound = m_bound(ctx);
    let zero = Element::zero(ctx.ring());
    let mut cases = Vec::new();
    for r in 1..=n {
        let set = inv.set(MuiIndex::initial(r));
        for m in 1..bound {
            cases.push(Case::equal(format!("P{m} M{}", MuiIndex::initial(r)), &zero, &power(m, set)));
        }
    }
    let full = (ctx.ring().p() as u64).pow(n as u32 - 1);
    let note = if bound == full { "" } else { " (truncated by D)" };
    outcome(cases, format!("r = 1..={n}, m = 1..{bound}{note}"))
}

fn steenrod_part5(ctx: &Context) -> Result<Outcome> {
    let inv = ctx.invariants()?;
    let n = ctx.ring().rank();
    let mut cases = Vec::new();
    for u in 2..=n {
        let k = (ctx.ring().p() as u64).pow(u as u32 - 2);
        let t = MuiIndex::initial(u - 2).union(MuiIndex::new(&[u])?);
        cases.push(Case::equal(
            format!("P{k} {}", name(t)),
            inv.set(MuiIndex::initial(u - 1)),
            &power(k, inv.set(t)),
        ));
    }
    outcome(cases, "u = 2..=n".into())
}

fn steenrod_closure_theorem(ctx: &Context) -> Result<Outcome> {
    let ring = ctx.ring();
    let inv = ctx.invariants()?;
    let n = ring.rank();
    let closure = steenrod_closure(&[Element::top_exterior(ring)], ctx.max_degree(), MAX_CLOSURE_DIMENSION)?;
    let mut cases = degrees(ctx)
        .into_par_iter()
        .map(|d| {
            let piece = ctx.ess().piece(d)?;
            Ok(Case::spans(format!("d={d}"), &piece.basis, &piece.total, &closure.span(d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let top = inv.set(MuiIndex::full(n));
    for s in MuiIndex::all(n) {
        let word = proof_word(ring.p(), n, s)?;
        cases.push(Case::equal(format!("{} = ({word}) M{}", name(s), MuiIndex::full(n)), inv.set(s), &word.apply(top)?));
    }
    outcome(cases, format!("closure for {}; proof words for all S", up_to(ctx)))
}

fn top_power_on_mui(ctx: &Context) -> Result<Outcome> {
    let ring = ctx.ring();
    let inv = ctx.invariants()?;
    let n = ring.rank();
    let p = ring.p() as u64;
    let fundamental = FundamentalEquation::new(ring)?;
    let top = p.pow(n as u32 - 1);
    let mut cases = Vec::new();
    for s in 1..=n {
        let lhs = power(top, inv.single(s));
        if s == n {
            cases.push(Case::equal(format!("P{top} M({n}) (instability)"), &Element::zero(ring), &lhs));
            continue;
        }
        // x^{p^n} = Σ_r (-1)^{n-r+1} c_{n,r} x^{p^r}, substituted into the last row of E(s)
        let mut rhs = Element::zero(ring);
        for r in 0..n {
            let c = fundamental.dickson(r)?;
            let c = if (n - r) % 2 == 1 { c } else { -&c };
            let mut e = matrix_e(ring, s)?;
            let exponent = p.pow(r as u32) as u32;
            let last = e.len() - 1;
            e[last] = (1..=n).map(|i| Element::x_pow(ring, i, exponent)).collect();
            rhs += &(&c * &determinant(&e));
        }
        cases.push(Case::equal(format!("P{top} M({s})"), &rhs, &lhs));
        let combination = match decompose(ctx.ess(), inv, &lhs) {
            Ok(parts) => {
                let text: Vec<String> = parts.iter().map(|(set, f)| format!("({f})*{}", name(*set))).collect();
                (text.join(" + "), true)
            }
            Err(e) => (e.to_string(), false),
        };
        cases.push(Case::new(
            format!("P{top} M({s}) in the span of the M(r)"),
            "S(V*)-combination",
            combination.0,
            combination.1,
        ));
    }
    outcome(cases, identities())
}
