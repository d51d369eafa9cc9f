use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mui::algebra::max_generator_index;
use mui::essential::{decompose, steenrod_closure};
use mui::invariants::{dickson, ln, mui as mui_single, mui_set};
use mui::verify::{self, MAX_CLOSURE_DIMENSION};
use mui::{Element, EssentialIdeal, MaximalSubgroup, MuiIndex, MuiInvariants, Ring, SteenrodWord, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "mui", version, about = "Mùi invariants and essential classes in mod-p cohomology of (Z/p)^n")]
struct Cli {
    /// The prime p.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// The rank n; inferred from the input element when omitted.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Degree bound for ess-basis, closure and verify.
    #[arg(long, global = true)]
    max_degree: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print L_n, M_{n,s}, M_{n,S} or a Dickson invariant.
    Invariant {
        kind: Kind,
        /// Index s for M.
        #[arg(long)]
        s: Option<usize>,
        /// Subset S for Mset, e.g. 1,3.
        #[arg(long = "S")]
        set: Option<String>,
        /// Index r for dickson.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Apply a Steenrod word such as "P3 b P1" to an element.
    Apply { word: String, element: String },
    /// Restrict an element to the maximal subgroup killed by a linear form.
    Restrict {
        element: String,
        /// Coefficients of the form, e.g. 0,1.
        #[arg(long)]
        form: String,
    },
    /// Basis of the essential classes in one degree (or all degrees up to --max-degree).
    EssBasis { degree: Option<u64> },
    /// Write an essential element as a combination of the M_{n,S}.
    Decompose { element: String },
    /// The Steenrod closure of one or more homogeneous elements.
    Closure {
        #[arg(required = true)]
        seed: Vec<String>,
    },
    /// Check claims on a finite range; exit status 1 if any fails.
    Verify {
        /// Comma-separated claim ids; all applicable claims by default.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        /// List the claim ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    #[value(name = "L")]
    L,
    #[value(name = "M")]
    M,
    #[value(name = "Mset")]
    Mset,
    #[value(name = "dickson")]
    Dickson,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn ring(cli: &Cli, inputs: &[&str]) -> Result<Ring> {
    let n = match cli.n {
        Some(n) => n,
        None => inputs.iter().map(|s| max_generator_index(s)).max().unwrap_or(0).max(1),
    };
    Ok(Ring::new(cli.p, n)?)
}

fn ring_required(cli: &Cli) -> Result<Ring> {
    let n = cli.n.ok_or_else(|| anyhow!("--n is required for this command"))?;
    Ok(Ring::new(cli.p, n)?)
}

fn parse(ring: Ring, text: &str) -> Result<Element> {
    Element::parse(ring, text).map_err(|e| match e {
        mui::Error::Parse { offset, ref message } => {
            anyhow!("{message}\n  {text}\n  {:>width$}", "^", width = offset + 1)
        }
        other => other.into(),
    })
}

fn emit_element(cli: &Cli, y: &Element) {
    if cli.json {
        println!("{}", json!({ "p": y.ring().p(), "n": y.ring().rank(), "element": y.to_string() }));
    } else {
        println!("{y}");
    }
}

fn emit_json(value: Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Invariant { kind, s, set, r } => {
            let ring = ring_required(cli)?;
            let y = match kind {
                Kind::L => ln(ring)?,
                Kind::M => mui_single(ring, s.ok_or_else(|| anyhow!("M needs --s"))?)?,
                Kind::Mset => {
                    let text = set.as_deref().ok_or_else(|| anyhow!("Mset needs --S"))?;
                    mui_set(ring, MuiIndex::parse(text)?)?
                }
                Kind::Dickson => dickson(ring, r.ok_or_else(|| anyhow!("dickson needs --r"))?)?,
            };
            emit_element(cli, &y);
        }
        Command::Apply { word, element } => {
            let ring = ring(cli, &[element])?;
            let word = SteenrodWord::parse(word)?;
            let y = parse(ring, element)?;
            emit_element(cli, &word.apply(&y)?);
        }
        Command::Restrict { element, form } => {
            let ring = ring(cli, &[element])?;
            let form = form
                .split(',')
                .map(|c| c.trim().parse::<u32>().with_context(|| format!("bad form coefficient `{c}`")))
                .collect::<Result<Vec<_>>>()?;
            let h = MaximalSubgroup::new(ring, &form)?;
            let y = parse(ring, element)?;
            emit_element(cli, &h.restriction(ring).apply(&y));
        }
        Command::EssBasis { degree } => {
            let ring = ring_required(cli)?;
            let degrees: Vec<u64> = match (degree, cli.max_degree) {
                (Some(d), _) => vec![*d],
                (None, Some(max)) => (0..=max).collect(),
                (None, None) => bail!("give a degree or --max-degree"),
            };
            let top = *degrees.last().expect("nonempty");
            VerifyConfig::new(cli.p, ring.rank(), Some(top))?;
            let ess = EssentialIdeal::new(ring)?;
            let mut out = Vec::new();
            for d in degrees {
                let piece = ess.piece(d)?;
                let by_rank: Vec<Vec<String>> = piece
                    .by_rank
                    .iter()
                    .enumerate()
                    .map(|(r, _)| piece.rank_elements(r).iter().map(Element::to_string).collect())
                    .collect();
                if cli.json {
                    out.push(json!({ "degree": d, "dimension": piece.total.rank(), "by_rank": by_rank }));
                } else {
                    println!("degree {d}: dimension {}", piece.total.rank());
                    for (r, elements) in by_rank.iter().enumerate() {
                        for y in elements {
                            println!("  N_{r}: {y}");
                        }
                    }
                }
            }
            if cli.json {
                emit_json(json!({ "p": cli.p, "n": ring.rank(), "degrees": out }))?;
            }
        }
        Command::Decompose { element } => {
            let ring = ring(cli, &[element])?;
            let y = parse(ring, element)?;
            let ess = EssentialIdeal::new(ring)?;
            let inv = MuiInvariants::new(ring)?;
            let parts = decompose(&ess, &inv, &y)?;
            if cli.json {
                let parts: Vec<Value> = parts
                    .iter()
                    .map(|(s, f)| json!({ "S": s.to_string(), "coefficient": f.to_string() }))
                    .collect();
                emit_json(json!({ "p": cli.p, "n": ring.rank(), "element": y.to_string(), "parts": parts }))?;
            } else {
                for (s, f) in parts {
                    println!("M{s}: {f}");
                }
            }
        }
        Command::Closure { seed } => {
            let inputs: Vec<&str> = seed.iter().map(String::as_str).collect();
            let ring = ring(cli, &inputs)?;
            let max = cli.max_degree.ok_or_else(|| anyhow!("closure needs --max-degree"))?;
            VerifyConfig::new(cli.p, ring.rank(), Some(max))?;
            let seed = inputs.iter().map(|s| parse(ring, s)).collect::<Result<Vec<_>>>()?;
            let closure = steenrod_closure(&seed, max, MAX_CLOSURE_DIMENSION)?;
            let mut out = Vec::new();
            for d in 0..=max {
                let elements: Vec<String> = closure.elements(d).iter().map(Element::to_string).collect();
                if cli.json {
                    out.push(json!({ "degree": d, "dimension": elements.len(), "basis": elements }));
                } else if !elements.is_empty() {
                    println!("degree {d}: dimension {}", elements.len());
                    for y in elements {
                        println!("  {y}");
                    }
                }
            }
            if cli.json {
                emit_json(json!({ "p": cli.p, "n": ring.rank(), "degrees": out }))?;
            }
        }
        Command::Verify { claims, list } => {
            if *list {
                for claim in verify::claims() {
                    println!("{:<22} {}", claim.id, claim.summary);
                }
                return Ok(true);
            }
            let n = cli.n.ok_or_else(|| anyhow!("--n is required for this command"))?;
            let config = VerifyConfig::new(cli.p, n, cli.max_degree)?;
            let reports = verify::verify_all(config, claims.as_deref())?;
            let passed = reports.iter().all(|r| r.passed());
            if cli.json {
                emit_json(serde_json::to_value(&reports)?)?;
            } else {
                for report in &reports {
                    print!("{report}");
                }
                let ok = reports.iter().filter(|r| r.passed()).count();
                println!("{ok}/{} claims passed", reports.len());
            }
            return Ok(passed);
        }
    }
    Ok(true)
}
