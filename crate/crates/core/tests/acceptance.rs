//! The acceptance criteria, one PASS/FAIL line each. Every criterion has a
//! wall-clock limit; exceeding it is a failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mui::essential::enumerate_maximal_subgroups;
use mui::invariants::{determinant_in, gamma, matrix_c};
use mui::linalg::random_element;
use mui::steenrod::{bockstein, power};
use mui::verify::verify_all;
use mui::{DegreeBasis, Element, EssentialIdeal, MuiIndex, MuiInvariants, Ring, VerificationReport, VerifyConfig};

type Check = fn() -> Result<String, String>;

const CASES: usize = 1000;

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    check: Check,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { number: 1, name: "L_n is the product of monic linear forms", limit: secs(5), check: c1 },
        Criterion { number: 2, name: "M(s) restricts to zero on maximal subgroups", limit: secs(5), check: c2 },
        Criterion { number: 3, name: "products of M_set", limit: secs(10), check: c3 },
        Criterion { number: 4, name: "Ess squared", limit: secs(600), check: c4 },
        Criterion { number: 5, name: "joint annihilators", limit: secs(600), check: c5 },
        Criterion { number: 6, name: "Ess is free over S(V*) on the Mui invariants", limit: secs(120), check: c6 },
        Criterion { number: 7, name: "Steenrod operations on Mui invariants", limit: secs(60), check: c7 },
        Criterion { number: 8, name: "Ess is the Steenrod closure of the top class", limit: secs(600), check: c8 },
        Criterion { number: 9, name: "P^{p^(n-1)} on M(s) via the fundamental equation", limit: secs(60), check: c9 },
        Criterion { number: 10, name: "Ess at p = 2 is L_n S(V*)", limit: secs(60), check: c10 },
        Criterion { number: 11, name: "randomized property suites at (3,2)", limit: secs(60), check: c11 },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for criterion in criteria() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(criterion.check))
            .unwrap_or_else(|panic| Err(format!("panicked: {}", panic_text(&panic))));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > criterion.limit => Err(format!("{detail}; over the {:?} limit", criterion.limit)),
            other => other,
        };
        let (status, detail) = match result {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!(
            "{status} criterion {:>2} {} ({:.2} s, limit {} s): {detail}",
            criterion.number,
            criterion.name,
            elapsed.as_secs_f64(),
            criterion.limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn panic_text(panic: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = panic.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = panic.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

fn run(p: u32, n: usize, d: Option<u64>, ids: &[&str]) -> Result<Vec<VerificationReport>, String> {
    let config = VerifyConfig::new(p, n, d).map_err(|e| e.to_string())?;
    let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let reports = verify_all(config, Some(&ids)).map_err(|e| e.to_string())?;
    if reports.len() != ids.len() {
        return Err(format!("expected {} reports, got {}", ids.len(), reports.len()));
    }
    for report in &reports {
        if let Some(case) = report.failures().next() {
            return Err(format!(
                "{} failed at (p={p}, n={n}): {}: expected {}, got {}",
                report.claim, case.id, case.expected, case.actual
            ));
        }
    }
    Ok(reports)
}

fn case_count(reports: &[VerificationReport]) -> usize {
    reports.iter().map(|r| r.cases.len()).sum()
}

fn c1() -> Result<String, String> {
    let mut cases = 0;
    for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let start = Instant::now();
        cases += case_count(&run(p, n, None, &["lemma:eqnLn"])?);
        if start.elapsed() > secs(1) {
            return Err(format!("(p={p}, n={n}) took {:?}", start.elapsed()));
        }
    }
    Ok(format!("{cases} cases"))
}

fn c2() -> Result<String, String> {
    let subgroups = enumerate_maximal_subgroups(Ring::new(3, 3).unwrap()).len();
    if subgroups != 13 {
        return Err(format!("{subgroups} maximal subgroups at (3,3)"));
    }
    let mut cases = 0;
    for (p, n) in [(3, 2), (3, 3), (5, 2)] {
        cases += case_count(&run(p, n, None, &["lemma:Mns"])?);
    }
    Ok(format!("{cases} cases, 13 subgroups at (3,3)"))
}

fn c3() -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=3 {
        run(3, n, None, &["eq:MnST"])?;
        // direct recheck of the case split
        let ring = Ring::new(3, n).unwrap();
        let inv = MuiInvariants::new(ring).unwrap();
        let sets: Vec<MuiIndex> = MuiIndex::all(n).into_iter().filter(|s| !s.is_empty()).collect();
        for &s in &sets {
            for &t in &sets {
                let product = inv.set(s) * inv.set(t);
                let ok = if s.is_disjoint(t) {
                    let target = inv.ln() * inv.set(s.union(t));
                    !target.is_zero() && (product == target || product == -&target)
                } else {
                    product.is_zero()
                };
                if !ok {
                    return Err(format!("n={n}, S={s}, T={t}: {product}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} subset pairs for n = 1, 2, 3"))
}

fn c4() -> Result<String, String> {
    let a = run(3, 2, Some(20), &["lemma:EssSquared"])?;
    let b = run(3, 3, Some(26), &["lemma:EssSquared"])?;
    Ok(format!("{} degrees", case_count(&a) + case_count(&b)))
}

fn c5() -> Result<String, String> {
    let mut cases = 0;
    for n in [2, 3] {
        cases += case_count(&run(3, n, Some(16), &["coroll:jointAnn2", "lemma:jointAnn"])?);
    }
    Ok(format!("{cases} cases, d <= 16"))
}

fn c6() -> Result<String, String> {
    let mut cases = 0;
    for n in [2, 3] {
        cases += case_count(&run(3, n, Some(20), &["thm:free"])?);
    }
    Ok(format!("{cases} cases, 100 random combinations per rank, d <= 20"))
}

fn c7() -> Result<String, String> {
    let ids = [
        "eq:betaMns",
        "eq:rPMnS",
        "lemma:SteenrodMnS.1",
        "lemma:SteenrodMnS.2",
        "lemma:SteenrodMnS.3",
        "lemma:SteenrodMnS.4",
        "lemma:SteenrodMnS.5",
    ];
    let mut cases = 0;
    for (p, n, d) in [(3, 2, 20), (3, 3, 26), (5, 2, 30)] {
        let reports = run(p, n, Some(d), &ids)?;
        let part4 = reports.iter().find(|r| r.claim == "lemma:SteenrodMnS.4").unwrap();
        if p == 3 && part4.coverage.contains("truncated") {
            return Err(format!("part 4 truncated at (3,{n}): {}", part4.coverage));
        }
        cases += case_count(&reports);
    }
    Ok(format!("{cases} cases"))
}

fn c8() -> Result<String, String> {
    let a = run(3, 2, Some(20), &["thm:Steenrod"])?;
    let b = run(3, 3, Some(26), &["thm:Steenrod"])?;
    Ok(format!("{} cases", case_count(&a) + case_count(&b)))
}

fn c9() -> Result<String, String> {
    let mut cases = 0;
    for n in [2, 3] {
        cases += case_count(&run(3, n, None, &["rk:fundamental"])?);
    }
    Ok(format!("{cases} cases"))
}

fn c10() -> Result<String, String> {
    let mut cases = 0;
    for n in [2, 3, 4] {
        cases += case_count(&run(2, n, Some(15), &["lemma:p2"])?);
    }
    Ok(format!("{cases} cases, d <= 15"))
}

struct Sampler {
    ring: Ring,
    rng: ChaCha8Rng,
    bases: Vec<DegreeBasis>,
}

impl Sampler {
    fn new(ring: Ring, seed: u64, max_degree: u64) -> Sampler {
        Sampler {
            ring,
            rng: ChaCha8Rng::seed_from_u64(seed),
            bases: (0..=max_degree).map(|d| DegreeBasis::new(ring, d)).collect(),
        }
    }

    fn degree(&mut self) -> u64 {
        self.rng.gen_range(0..self.bases.len() as u64)
    }

    fn homogeneous(&mut self, d: u64) -> Element {
        random_element(&self.bases[d as usize], &mut self.rng)
    }

    fn any_homogeneous(&mut self) -> (u64, Element) {
        let d = self.degree();
        (d, self.homogeneous(d))
    }

    fn mixed(&mut self) -> Element {
        let mut y = Element::zero(self.ring);
        for _ in 0..self.rng.gen_range(0..4) {
            y += &self.any_homogeneous().1;
        }
        y
    }
}

fn sign(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn suite(name: &str, mut case: impl FnMut(usize) -> Result<(), String>) -> Result<(), String> {
    for i in 0..CASES {
        case(i).map_err(|e| format!("{name}, case {i}: {e}"))?;
    }
    Ok(())
}

fn c11() -> Result<String, String> {
    let ring = Ring::new(3, 2).unwrap();
    let p = 3u64;

    let mut s = Sampler::new(ring, 1, 10);
    suite("beta squared", |_| {
        let y = s.mixed();
        let bb = bockstein(&bockstein(&y).unwrap()).unwrap();
        if bb.is_zero() {
            Ok(())
        } else {
            Err(format!("ββ({y}) = {bb}"))
        }
    })?;

    let mut s = Sampler::new(ring, 2, 8);
    suite("Cartan", |i| {
        let (du, u) = s.any_homogeneous();
        let v = s.mixed();
        let uv = &u * &v;
        if i % 2 == 0 {
            let k = s.rng.gen_range(0..=5);
            let lhs = power(k, &uv);
            let mut rhs = Element::zero(ring);
            for j in 0..=k {
                rhs += &(&power(j, &u) * &power(k - j, &v));
            }
            if lhs != rhs {
                return Err(format!("P{k}(({u})({v})): {lhs} vs {rhs}"));
            }
        } else {
            let lhs = bockstein(&uv).unwrap();
            let rhs = &(&bockstein(&u).unwrap() * &v)
                + &(&u * &bockstein(&v).unwrap()).scale(ring.prime().reduce(sign(du)));
            if lhs != rhs {
                return Err(format!("β(({u})({v})): {lhs} vs {rhs}"));
            }
        }
        Ok(())
    })?;

    let mut s = Sampler::new(ring, 3, 10);
    suite("graded commutativity", |_| {
        let (du, u) = s.any_homogeneous();
        let (dv, v) = s.any_homogeneous();
        let uv = &u * &v;
        let vu = (&v * &u).scale(ring.prime().reduce(sign(du * dv)));
        if uv == vu {
            Ok(())
        } else {
            Err(format!("({u})({v}) = {uv}, ±({v})({u}) = {vu}"))
        }
    })?;

    let c = matrix_c(ring).unwrap();
    let l = determinant_in(ring, &c);
    let gammas: Vec<Vec<Element>> =
        (1..=2).map(|s| (1..=2).map(|i| gamma(ring, s, i).unwrap()).collect()).collect();
    let laplace = |s: usize, row: &[Element]| -> Element {
        let mut acc = Element::zero(ring);
        for (i, v) in row.iter().enumerate() {
            acc += &(&gammas[s - 1][i] * v).scale(ring.prime().reduce(sign((s + i + 1) as u64)));
        }
        acc
    };
    for s in 1..=2 {
        for t in 1..=2 {
            let expected = if s == t { l.clone() } else { Element::zero(ring) };
            if laplace(s, &c[t - 1]) != expected {
                return Err(format!("adjugate identity fails at s={s}, t={t}"));
            }
        }
    }
    let mut sm = Sampler::new(ring, 4, 8);
    suite("adjugate identity", |i| {
        let s = 1 + i % 2;
        let row: Vec<Element> = (0..2).map(|_| sm.mixed()).collect();
        let mut replaced = c.clone();
        replaced[s - 1] = row.clone();
        let det = determinant_in(ring, &replaced);
        let expansion = laplace(s, &row);
        if det == expansion {
            Ok(())
        } else {
            Err(format!("row {s} = {row:?}: det {det} vs expansion {expansion}"))
        }
    })?;

    let mut s = Sampler::new(ring, 5, 10);
    suite("instability", |_| {
        let (d, y) = s.any_homogeneous();
        let k = d / 2 + s.rng.gen_range(0..3);
        let value = power(k, &y);
        if 2 * k > d && !value.is_zero() {
            return Err(format!("P{k}({y}) = {value} in degree {d}"));
        }
        if 2 * k == d && value != y.pow(p as u32) {
            return Err(format!("P{k}({y}) = {value}, not the p-th power"));
        }
        Ok(())
    })?;

    let restrictions: Vec<_> = EssentialIdeal::new(ring).unwrap().restrictions().to_vec();
    let mut s = Sampler::new(ring, 6, 10);
    suite("restriction naturality", |_| {
        let res = &restrictions[s.rng.gen_range(0..restrictions.len())];
        let y = s.mixed();
        let z = s.mixed();
        if res.apply(&(&y * &z)) != &res.apply(&y) * &res.apply(&z) {
            return Err(format!("restriction is not multiplicative on {y}, {z}"));
        }
        let b = bockstein(&y).unwrap();
        if res.apply(&b) != bockstein(&res.apply(&y)).unwrap() {
            return Err(format!("restriction does not commute with β on {y}"));
        }
        let k = s.rng.gen_range(0..=4);
        if res.apply(&power(k, &y)) != power(k, &res.apply(&y)) {
            return Err(format!("restriction does not commute with P{k} on {y}"));
        }
        Ok(())
    })?;

    let mut s = Sampler::new(ring, 7, 10);
    suite("print/parse round trip", |_| {
        let y = s.mixed();
        let text = y.to_string();
        match Element::parse(ring, &text) {
            Ok(back) if back == y => Ok(()),
            Ok(back) => Err(format!("{text} parsed as {back}")),
            Err(e) => Err(format!("{text}: {e}")),
        }
    })?;

    Ok(format!("7 suites x {CASES} cases"))
}
