use serde_json::json;

use coxtwist::poincare::{poincare_fix, poincare_iota_of, poincare_w};
use coxtwist::poset::{export_dot, export_json, TwistedBruhat};
use coxtwist::topology::interval_homology;
use coxtwist::twisted::{SExpression, TwistedInvolutions};
use coxtwist::Error;

use crate::{Context, Failure, Format, SetKind};

impl Context {
    pub fn require_rank_bound(&self) -> Result<(), Failure> {
        if !self.ts.system().is_finite() && self.max_rank.is_none() {
            return Err(Failure::Usage(format!(
                "{} is infinite; pass --max-rank",
                self.spec.name
            )));
        }
        Ok(())
    }

    pub fn involutions(&self) -> Result<TwistedInvolutions, Failure> {
        self.require_rank_bound()?;
        Ok(TwistedInvolutions::enumerate(&self.ts, self.max_rank, self.budget_elements)?)
    }

    pub fn bruhat(&self) -> Result<TwistedBruhat, Failure> {
        self.require_rank_bound()?;
        Ok(TwistedBruhat::new(self.ts.clone(), self.max_rank, self.budget_elements)?)
    }

    pub fn json(&self) -> bool {
        self.format == Some(Format::Json)
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("plain data serializes"));
}

pub fn enumerate(ctx: &Context, set: SetKind) -> Result<(), Failure> {
    let sys = ctx.ts.system();
    let rank = sys.rank();
    if set == SetKind::W {
        ctx.require_rank_bound()?;
        let all = sys.enumerate(ctx.max_rank, ctx.budget_elements)?;
        let rows: Vec<(String, usize)> = (0..all.len())
            .map(|i| (all.words[i].format(rank), all.length_of(i)))
            .collect();
        if ctx.json() {
            let rows: Vec<_> = rows
                .iter()
                .map(|(w, l)| json!({ "word": w, "length": l }))
                .collect();
            print_json(&json!(rows));
        } else {
            for (w, l) in rows {
                println!("{w}\tlength={l}");
            }
        }
        return Ok(());
    }
    let inv = ctx.involutions()?;
    let rows: Vec<_> = inv
        .elements()
        .iter()
        .filter(|e| set == SetKind::Inv || e.is_twisted_identity())
        .collect();
    if ctx.json() {
        let rows: Vec<_> = rows
            .iter()
            .map(|e| {
                json!({
                    "sexpr": e.sexpr.format(rank),
                    "word": sys.reduced_word(&e.element).format(rank),
                    "rho": e.rho,
                    "length": e.length(),
                    "ell_theta": e.ell_theta,
                })
            })
            .collect();
        print_json(&json!(rows));
    } else {
        for e in rows {
            println!(
                "{}\trho={}\tlength={}\tell_theta={}\tword={}",
                e.sexpr.format(rank),
                e.rho,
                e.length(),
                e.ell_theta,
                sys.reduced_word(&e.element).format(rank)
            );
        }
    }
    Ok(())
}

pub fn poset(ctx: &Context, set: SetKind) -> Result<(), Failure> {
    let tb = ctx.bruhat()?;
    let p = match set {
        SetKind::Iota => tb.iota(),
        SetKind::Inv => tb.involutions(),
        SetKind::W => return Err(Failure::Usage("poset supports --set iota or --set inv".into())),
    };
    let out = match ctx.format {
        Some(Format::Json) => export_json(p),
        _ => export_dot(p),
    };
    print!("{out}");
    Ok(())
}

/// Identity index of an S̲-expression typed on the command line.
fn locate_identity(tb: &TwistedBruhat, text: &str) -> Result<usize, Failure> {
    let rank = tb.twisted_system().rank();
    let expr = SExpression::parse(text, rank)?;
    let i = match tb.locate(&expr) {
        Err(Error::TruncationTooSmall(rho)) => {
            return Err(Failure::Usage(format!(
                "{text} has rank {rho}; raise --max-rank to at least {rho}"
            )))
        }
        other => other?,
    };
    tb.identity_index(i)
        .ok_or_else(|| Failure::Usage(format!("{text} is not a twisted identity")))
}

pub fn homology(ctx: &Context, u_text: &str, v_text: &str) -> Result<(), Failure> {
    let tb = ctx.bruhat()?;
    let p = tb.iota();
    let u = locate_identity(&tb, u_text)?;
    let v = locate_identity(&tb, v_text)?;
    if u == v || !p.leq(u, v) {
        return Err(Failure::Usage(format!("{u_text} is not strictly below {v_text}")));
    }
    let full = tb.is_full_iota(u, v)?;
    let h = interval_homology(p, u, v, ctx.budget_chains)?;
    if ctx.json() {
        let groups: Vec<_> = h
            .homology
            .groups
            .iter()
            .map(|g| {
                json!({
                    "dim": g.dim,
                    "betti": g.betti,
                    "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        print_json(&json!({
            "interval": [p.element(u).sexpr, p.element(v).sexpr],
            "full": full,
            "f_vector": h.f_vector,
            "homology": groups,
            "classification": h.classification.to_string(),
        }));
    } else {
        println!("interval: ({}, {})", p.element(u).sexpr, p.element(v).sexpr);
        println!("f-vector: {:?}", h.f_vector);
        println!("full: {}", if full { "yes" } else { "no" });
        print!("{}", h.homology.report());
    }
    Ok(())
}

pub fn series(ctx: &Context) -> Result<(), Failure> {
    let inv = ctx.involutions()?;
    let w = poincare_w(ctx.ts.system(), ctx.max_rank, ctx.budget_elements)?;
    let iota = poincare_iota_of(&inv);
    let fix = match poincare_fix(&ctx.ts, ctx.budget_elements) {
        Ok(f) => Ok(f),
        Err(e @ (Error::InfiniteFix | Error::UnsupportedInfinitePair)) => Err(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    if ctx.json() {
        let coeffs = |p: &coxtwist::poincare::IntPolynomial| -> serde_json::Value {
            serde_json::from_str(&p.to_json()).expect("coefficient arrays are JSON")
        };
        print_json(&json!({
            "W": { "coefficients": coeffs(&w.polynomial), "valid_up_to": w.valid_up_to },
            "iota": { "coefficients": coeffs(&iota.polynomial), "valid_up_to": iota.valid_up_to },
            "fix": match &fix {
                Ok(f) => json!({ "coefficients": coeffs(f) }),
                Err(reason) => json!({ "unavailable": reason }),
            },
        }));
    } else {
        println!("Poin(W) = {w}");
        println!("Poin(iota) = {iota}");
        match fix {
            Ok(f) => println!("Poin(Fix) = {f}"),
            Err(reason) => println!("Poin(Fix) unavailable: {reason}"),
        }
    }
    Ok(())
}
