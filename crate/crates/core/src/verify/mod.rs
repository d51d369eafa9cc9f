//! Finite-range verification of the structural statements about Mùi
//! invariants and essential classes.
//!
//! Each claim has a stable identifier (`"lemma:EssSquared"`, ...). Running a
//! claim produces a [`VerificationReport`] listing individual cases; a
//! failing case carries a concrete counterexample in canonical text form.
//! Statements quantified over all degrees are checked for `d ≤ D` only, and
//! the report's `coverage` field says what was covered.

mod claims;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Ring};
use crate::error::{Error, Result};
use crate::essential::EssentialIdeal;
use crate::field::Prime;
use crate::invariants::MuiInvariants;
use crate::linalg::{DegreeBasis, DegreeSpan};

/// Largest supported rank.
pub const MAX_RANK: usize = 6;
/// Largest number of maximal subgroups, `(p^n - 1)/(p - 1)`.
pub const MAX_SUBGROUPS: u64 = 400;
/// Largest dimension of a single graded piece `H^D`.
pub const MAX_PIECE_DIMENSION: u64 = 20_000;
/// Largest dimension of the ideal built by Steenrod closure.
pub const MAX_CLOSURE_DIMENSION: usize = 200_000;
/// Largest degree of `L_n^{n-1}`, which bounds the size of the `M_{n,S}`.
pub const MAX_INVARIANT_DEGREE: u64 = 400;
/// Bound on `dim H^D_n · dim H^D_n · (dim H^D_n + #subgroups · dim H^D_{n-1})`,
/// the cost of eliminating the restriction maps in degree `D`.
pub const MAX_ELIMINATION_COST: u128 = 200_000_000_000;
/// Bound on `p^{2n} · C(p^n + n - 1, n - 1)`, the cost of expanding the
/// product of `X - v` over all `v ∈ V*`.
pub const MAX_EXPANSION_COST: u128 = 2_000_000_000;

/// Which primes a claim makes sense for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primes {
    Any,
    Odd,
    Two,
}

/// One verifiable statement.
pub struct Claim {
    pub id: &'static str,
    pub summary: &'static str,
    pub primes: Primes,
    check: fn(&Context) -> Result<Outcome>,
}

impl Claim {
    pub fn applies_to(&self, p: u32) -> bool {
        match self.primes {
            Primes::Any => true,
            Primes::Odd => p != 2,
            Primes::Two => p == 2,
        }
    }
}

impl fmt::Debug for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).finish()
    }
}

/// All claims, sorted by identifier.
pub fn claims() -> &'static [Claim] {
    claims::ALL
}

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    claims()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Case {
    pub fn new(id: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, pass: bool) -> Case {
        Case {
            id: id.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        }
    }

    /// Structural equality of two elements.
    pub fn equal(id: impl Into<String>, expected: &Element, actual: &Element) -> Case {
        Case::new(id, expected.to_string(), actual.to_string(), expected == actual)
    }

    /// Equality of two subspaces of one graded piece. On failure `actual`
    /// names an element lying in one span but not the other.
    pub fn spans(id: impl Into<String>, basis: &DegreeBasis, expected: &DegreeSpan, actual: &DegreeSpan) -> Case {
        let summary = |s: &DegreeSpan| format!("dim {}", s.rank());
        if expected == actual {
            return Case::new(id, summary(expected), summary(actual), true);
        }
        let witness = |from: &DegreeSpan, to: &DegreeSpan| {
            from.rows().iter().find(|row| !to.contains(row)).map(|row| basis.element(row))
        };
        let actual_text = match (witness(actual, expected), witness(expected, actual)) {
            (Some(extra), _) => format!("{}, contains {extra} outside the expected span", summary(actual)),
            (None, Some(missing)) => format!("{}, misses {missing}", summary(actual)),
            (None, None) => summary(actual),
        };
        Case::new(id, summary(expected), actual_text, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub p: u32,
    pub n: usize,
    pub degree_bound: u64,
    pub status: Status,
    pub cases: Vec<Case>,
    pub runtime_ms: u64,
    /// The finite range actually checked.
    pub coverage: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {} (p={}, n={}, D={}): {} cases, {} ms; {}",
            self.claim,
            self.p,
            self.n,
            self.degree_bound,
            self.cases.len(),
            self.runtime_ms,
            self.coverage
        )?;
        for case in self.failures() {
            writeln!(f, "  {}: expected {}, got {}", case.id, case.expected, case.actual)?;
        }
        Ok(())
    }
}

/// The parameters of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub p: u32,
    pub n: usize,
    pub max_degree: u64,
}

impl VerifyConfig {
    /// `D` defaults to the degree of `L_n`.
    pub fn new(p: u32, n: usize, max_degree: Option<u64>) -> Result<VerifyConfig> {
        let prime = Prime::new(p)?;
        if n == 0 {
            return Err(Error::Usage("rank must be at least 1".into()));
        }
        let ring = Ring::new(prime.value(), n.min(crate::algebra::MAX_RANK))?;
        let config = VerifyConfig {
            p,
            n,
            max_degree: max_degree.unwrap_or_else(|| ln_degree(ring)),
        };
        config.check_resources()?;
        Ok(config)
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.p, self.n).expect("checked on construction")
    }

    /// Reject configurations too large for exact computation.
    pub fn check_resources(&self) -> Result<()> {
        let guard = |what: String| Err(Error::ResourceGuard(what));
        if self.n > MAX_RANK {
            return guard(format!("rank {} exceeds the supported maximum {MAX_RANK}", self.n));
        }
        let p = self.p as u64;
        let subgroups = (0..self.n as u32).map(|k| p.pow(k)).sum::<u64>();
        if subgroups > MAX_SUBGROUPS {
            return guard(format!(
                "{subgroups} maximal subgroups at p = {}, n = {} (limit {MAX_SUBGROUPS})",
                self.p, self.n
            ));
        }
        let ring = self.ring();
        let invariant_degree = ln_degree(ring) * (self.n as u64 - 1).max(1);
        if invariant_degree > MAX_INVARIANT_DEGREE {
            return guard(format!(
                "L_n^(n-1) has degree {invariant_degree} (limit {MAX_INVARIANT_DEGREE})"
            ));
        }
        let dim = DegreeBasis::dimension(ring, self.max_degree);
        if dim > MAX_PIECE_DIMENSION {
            return guard(format!(
                "degree {} has dimension {dim} (limit {MAX_PIECE_DIMENSION})",
                self.max_degree
            ));
        }
        let below = DegreeBasis::dimension(ring.with_rank(self.n - 1), self.max_degree) as u128;
        let elimination = (dim as u128).pow(2) * (dim as u128 + subgroups as u128 * below);
        if elimination > MAX_ELIMINATION_COST {
            return guard(format!(
                "eliminating {subgroups} restriction maps in degree {} is too large ({elimination:.2e} > {MAX_ELIMINATION_COST:.2e})",
                self.max_degree
            ));
        }
        let points = p.pow(self.n as u32) as u128;
        let mut terms: u128 = 1;
        for i in 0..self.n as u128 - 1 {
            terms = terms * (points + self.n as u128 - 1 - i) / (i + 1);
        }
        let expansion = points * points * terms;
        if expansion > MAX_EXPANSION_COST {
            return guard(format!(
                "expanding the product over {points} points of V* is too large ({expansion:.2e} > {MAX_EXPANSION_COST:.2e})"
            ));
        }
        Ok(())
    }
}

/// Degree of `L_n`: `(p^n - 1)/(p - 1)` times the weight of `x_i`.
pub fn ln_degree(ring: Ring) -> u64 {
    let p = ring.p() as u64;
    (0..ring.rank() as u32).map(|k| p.pow(k)).sum::<u64>() * ring.polynomial_weight()
}

/// Shared state for one `(p, n, D)`.
pub struct Context {
    config: VerifyConfig,
    ring: Ring,
    invariants: Option<MuiInvariants>,
    ess: EssentialIdeal,
}

impl Context {
    pub fn new(config: VerifyConfig) -> Result<Context> {
        config.check_resources()?;
        let ring = config.ring();
        let invariants = if ring.has_exterior() {
            Some(MuiInvariants::new(ring)?)
        } else {
            None
        };
        Ok(Context {
            config,
            ring,
            invariants,
            ess: EssentialIdeal::new(ring)?,
        })
    }

    pub fn config(&self) -> VerifyConfig {
        self.config
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> u64 {
        self.config.max_degree
    }

    pub fn ess(&self) -> &EssentialIdeal {
        &self.ess
    }

    pub fn invariants(&self) -> Result<&MuiInvariants> {
        self.invariants
            .as_ref()
            .ok_or_else(|| Error::Usage("Mùi invariants need an odd prime".into()))
    }

    /// Run one claim.
    pub fn verify(&self, id: &str) -> Result<VerificationReport> {
        let claim = find_claim(id)?;
        if !claim.applies_to(self.config.p) {
            return Err(Error::Usage(format!("claim {id} does not apply at p = {}", self.config.p)));
        }
        let start = Instant::now();
        let outcome = (claim.check)(self)?;
        let status = if outcome.cases.iter().all(|c| c.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok(VerificationReport {
            claim: claim.id.to_string(),
            p: self.config.p,
            n: self.config.n,
            degree_bound: self.config.max_degree,
            status,
            cases: outcome.cases,
            runtime_ms: start.elapsed().as_millis() as u64,
            coverage: outcome.coverage,
        })
    }
}

struct Outcome {
    cases: Vec<Case>,
    coverage: String,
}

/// Run `ids` (all claims applicable to `p` when `None`), in claim order.
pub fn verify_all(config: VerifyConfig, ids: Option<&[String]>) -> Result<Vec<VerificationReport>> {
    let selected: Vec<&'static Claim> = match ids {
        None => claims().iter().filter(|c| c.applies_to(config.p)).collect(),
        Some(ids) => ids.iter().map(|id| find_claim(id)).collect::<Result<_>>()?,
    };
    let ctx = Context::new(config)?;
    let mut reports: Vec<VerificationReport> =
        selected.par_iter().map(|claim| ctx.verify(claim.id)).collect::<Result<_>>()?;
    reports.sort_by(|a, b| a.claim.cmp(&b.claim));
    Ok(reports)
}

/// Run a single claim.
pub fn verify(id: &str, config: VerifyConfig) -> Result<VerificationReport> {
    find_claim(id)?;
    Context::new(config)?.verify(id)
}
