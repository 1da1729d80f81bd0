use std::collections::BTreeMap;

use clap::ValueEnum;
use serde_json::{json, Value};

use coxtwist::poincare::{factors_through, prop51_condition};
use coxtwist::poset::RankedPoset;
use coxtwist::topology::{interval_homology, Classification};

use crate::{Context, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Graded,
    Nof,
    FullDichotomy,
    LemmaCover,
    Factorization,
    Prop51,
    MobiusRange,
    Maximal,
    SubwordOracle,
}

/// Result of one check: summary lines and, on failure, a witness.
struct Outcome {
    pass: bool,
    details: Vec<String>,
    witness: Option<Value>,
}

impl Outcome {
    fn pass(details: Vec<String>) -> Self {
        Outcome {
            pass: true,
            details,
            witness: None,
        }
    }

    fn fail(details: Vec<String>, witness: Value) -> Self {
        Outcome {
            pass: false,
            details,
            witness: Some(witness),
        }
    }
}

pub fn run(ctx: &Context, name: CheckName) -> Result<(), Failure> {
    let outcome = match name {
        CheckName::Graded => graded(ctx)?,
        CheckName::Nof => nof(ctx)?,
        CheckName::FullDichotomy => full_dichotomy(ctx)?,
        CheckName::LemmaCover => lemma_cover(ctx)?,
        CheckName::Factorization => factorization(ctx)?,
        CheckName::Prop51 => prop51(ctx),
        CheckName::MobiusRange => mobius_range(ctx)?,
        CheckName::Maximal => maximal(ctx)?,
        CheckName::SubwordOracle => subword_oracle(ctx)?,
    };
    let label = name.to_possible_value().expect("no skipped variants").get_name().to_string();
    if ctx.json() {
        let doc = json!({
            "check": label,
            "group": ctx.spec.name,
            "pass": outcome.pass,
            "details": outcome.details,
            "witness": outcome.witness,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("plain data serializes"));
    } else {
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {label} {}", ctx.spec.name);
        for line in &outcome.details {
            println!("  {line}");
        }
        if let Some(w) = &outcome.witness {
            println!("witness: {}", serde_json::to_string(w).expect("plain data serializes"));
        }
    }
    if outcome.pass {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn chain_text(p: &RankedPoset, chain: &[usize]) -> String {
    chain
        .iter()
        .map(|&i| p.element(i).sexpr.as_str())
        .collect::<Vec<_>>()
        .join(" < ")
}

fn truncation_note(p: &RankedPoset) -> Option<String> {
    p.truncation_rank()
        .map(|r| format!("truncated at rank {r}; statements concern this truncation only"))
}

fn graded(ctx: &Context) -> Result<Outcome, Failure> {
    let tb = ctx.bruhat()?;
    let p = tb.iota();
    let report = p.check_graded();
    let mut details = vec![format!("{} twisted identities, {} covers", p.len(), p.covers().len())];
    details.extend(truncation_note(p));
    if report.graded {
        details.push("every cover has rank difference 1".into());
        return Ok(Outcome::pass(details));
    }
    let mut witness = serde_json::Map::new();
    if let Some((u, v)) = report.offending_cover {
        details.push(format!(
            "cover {} < {} jumps from rank {} to rank {}",
            p.element(u).sexpr,
            p.element(v).sexpr,
            p.rank(u),
            p.rank(v)
        ));
        let all = tb.involutions();
        let (iu, iv) = (tb.involution_index(u), tb.involution_index(v));
        let between: Vec<&str> = all
            .open_interval(iu, iv)
            .into_iter()
            .map(|i| all.element(i).sexpr.as_str())
            .collect();
        let words: Vec<&str> = all
            .open_interval(iu, iv)
            .into_iter()
            .map(|i| all.element(i).word.as_str())
            .collect();
        details.push(format!(
            "twisted involutions strictly between: {} (words {}), none a twisted identity",
            between.join(", "),
            words.join(", ")
        ));
        witness.insert("cover".into(), json!([p.element(u).sexpr, p.element(v).sexpr]));
        witness.insert("between".into(), json!(between));
    }
    if let Some((short, long)) = &report.witness {
        details.push(format!("chain: {}", chain_text(p, short)));
        details.push(format!("chain: {}", chain_text(p, long)));
        let names = |c: &[usize]| -> Vec<String> { c.iter().map(|&i| p.element(i).sexpr.clone()).collect() };
        witness.insert("chains".into(), json!([names(short), names(long)]));
    }
    Ok(Outcome::fail(details, Value::Object(witness)))
}

fn nof(ctx: &Context) -> Result<Outcome, Failure> {
    let sys = ctx.ts.system();
    let theta = ctx.ts.theta();
    for s in 0..sys.rank() {
        let t = theta.image(s);
        if let Some(m) = sys.matrix().m(s, t).filter(|&m| s < t && m % 2 == 1) {
            return Ok(Outcome::fail(
                vec![format!("θ exchanges s{} and s{} with m = {m}", s + 1, t + 1)],
                json!({ "pair": [s + 1, t + 1], "m": m }),
            ));
        }
    }
    let mut outcome = graded(ctx)?;
    outcome.details.insert(0, "θ flips no odd-labelled edge".into());
    Ok(outcome)
}

fn full_dichotomy(ctx: &Context) -> Result<Outcome, Failure> {
    let tb = ctx.bruhat()?;
    let p = tb.iota();
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for u in 0..p.len() {
        for v in p.up_set(u).ones().filter(|&v| v != u) {
            let h = interval_homology(p, u, v, ctx.budget_chains)?;
            let full = tb.is_full_iota(u, v)?;
            let gap = p.rank(v) as isize - p.rank(u) as isize;
            let expected = if full {
                Classification::Sphere(gap - 2)
            } else {
                Classification::Acyclic
            };
            if h.classification != expected {
                let (a, b) = (&p.element(u).sexpr, &p.element(v).sexpr);
                return Ok(Outcome::fail(
                    vec![format!(
                        "interval ({a}, {b}) is {} but {}full, expected {expected}",
                        h.classification,
                        if full { "" } else { "not " }
                    )],
                    json!({ "interval": [a, b], "classification": h.classification.to_string(), "full": full }),
                ));
            }
            *tally.entry(h.classification.to_string()).or_insert(0) += 1;
        }
    }
    let mut details: Vec<String> = tally.iter().map(|(k, n)| format!("{k}: {n} intervals")).collect();
    details.extend(truncation_note(p));
    Ok(Outcome::pass(details))
}

fn lemma_cover(ctx: &Context) -> Result<Outcome, Failure> {
    let tb = ctx.bruhat()?;
    let all = tb.involutions();
    let inv = tb.involutions_enumeration();
    let mut checked = 0;
    for v in (0..inv.len()).filter(|&v| inv.get(v).ell_theta == 1) {
        checked += 1;
        let below: Vec<usize> = all
            .lower_covers(v)
            .iter()
            .copied()
            .filter(|&x| tb.identity_index(x).is_some())
            .collect();
        if below.len() > 1 {
            let names: Vec<&str> = below.iter().map(|&x| all.element(x).sexpr.as_str()).collect();
            return Ok(Outcome::fail(
                vec![format!(
                    "{} covers {} twisted identities: {}",
                    all.element(v).sexpr,
                    below.len(),
                    names.join(", ")
                )],
                json!({ "element": all.element(v).sexpr, "covers": names }),
            ));
        }
    }
    let mut details = vec![format!(
        "{checked} twisted involutions with ell_theta = 1 each cover at most one twisted identity"
    )];
    details.extend(truncation_note(all));
    Ok(Outcome::pass(details))
}

fn factorization(ctx: &Context) -> Result<Outcome, Failure> {
    let report = factors_through(&ctx.ts, ctx.budget_elements)?;
    let details: Vec<String> = report.report().lines().map(str::to_string).collect();
    if report.factors {
        Ok(Outcome::pass(details))
    } else {
        let witness = json!({
            "poin_w": report.poin_w.to_string(),
            "poin_iota": report.poin_iota.to_string(),
            "poin_fix": report.poin_fix.to_string(),
            "residual": report.residual,
        });
        Ok(Outcome::fail(details, witness))
    }
}

fn prop51(ctx: &Context) -> Outcome {
    let sys = ctx.ts.system();
    let theta = ctx.ts.theta();
    let mut details = Vec::new();
    let mut bad = Vec::new();
    for s in (0..sys.rank()).filter(|&s| s <= theta.image(s)) {
        let t = theta.image(s);
        let m = if s == t {
            "1".to_string()
        } else {
            sys.matrix().m(s, t).map_or("inf".to_string(), |m| m.to_string())
        };
        details.push(format!("m(s{}, s{}) = {m}", s + 1, t + 1));
        if !matches!(m.as_str(), "1" | "2" | "inf") {
            bad.push(json!({ "pair": [s + 1, t + 1], "m": m }));
        }
    }
    debug_assert_eq!(bad.is_empty(), prop51_condition(&ctx.ts));
    if bad.is_empty() {
        Outcome::pass(details)
    } else {
        Outcome::fail(details, json!(bad))
    }
}

fn mobius_range(ctx: &Context) -> Result<Outcome, Failure> {
    let tb = ctx.bruhat()?;
    let p = tb.iota();
    let mut values: BTreeMap<i64, usize> = BTreeMap::new();
    let mut offender = None;
    for u in 0..p.len() {
        let row = p.mobius_row(u);
        for v in p.up_set(u).ones() {
            *values.entry(row[v]).or_insert(0) += 1;
            if offender.is_none() && row[v].abs() > 1 {
                offender = Some((u, v, row[v]));
            }
        }
    }
    let mut details = vec![values
        .iter()
        .map(|(mu, n)| format!("mu = {mu}: {n} pairs"))
        .collect::<Vec<_>>()
        .join(", ")];
    details.extend(truncation_note(p));
    Ok(match offender {
        None => Outcome::pass(details),
        Some((u, v, mu)) => {
            let (a, b) = (&p.element(u).sexpr, &p.element(v).sexpr);
            details.push(format!("mu({a}, {b}) = {mu}"));
            Outcome::fail(details, json!({ "interval": [a, b], "mu": mu }))
        }
    })
}

fn maximal(ctx: &Context) -> Result<Outcome, Failure> {
    let tb = ctx.bruhat()?;
    let p = tb.iota();
    let maxima: Vec<&str> = p
        .maximal_elements()
        .into_iter()
        .map(|i| p.element(i).sexpr.as_str())
        .collect();
    let mut details = vec![
        format!("{} maximal elements", maxima.len()),
        format!("maximal: {}", maxima.join(", ")),
    ];
    details.extend(truncation_note(p));
    Ok(Outcome::pass(details))
}

fn subword_oracle(ctx: &Context) -> Result<Outcome, Failure> {
    let tb = ctx.bruhat()?;
    let inv = tb.involutions_enumeration();
    let ts = tb.twisted_system();
    let rank = ts.rank();
    let mut pairs = 0;
    for v in 0..inv.len() {
        for u in 0..inv.len() {
            let lifted = tb.leq(u, v);
            let brute = ts.subword_check_bruteforce(&inv.get(u).element, &inv.get(v).sexpr)?;
            if lifted != brute {
                let (a, b) = (inv.get(u).sexpr.format(rank), inv.get(v).sexpr.format(rank));
                return Ok(Outcome::fail(
                    vec![format!("{a} <= {b}: lifting says {lifted}, subwords say {brute}")],
                    json!({ "pair": [a, b], "lifting": lifted, "subword": brute }),
                ));
            }
            pairs += 1;
        }
    }
    let mut details = vec![format!("{pairs} ordered pairs agree")];
    if let Some(r) = inv.truncation_rank() {
        details.push(format!("truncated at rank {r}"));
    }
    Ok(Outcome::pass(details))
}
