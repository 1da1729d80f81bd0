//! Named groups with their diagram involutions, and the JSON group file format.
//!
//! Preset names: `A<n>`, `B<n>`, `D<n>`, `E6`, `F4`, `I2(<m>)` (`m` may be `inf`), `affineA2`,
//! `square(<preset>)`, optionally followed by `:id`, `:flip` or `:swap` to pick
//! the trivial or the nontrivial diagram involution. Without a suffix
//! `affineA2` and `square(..)` use their nontrivial involution and every
//! other preset uses the identity.
//!
//! In `D<n>` the generators `1` and `2` are the two short arms attached to
//! `3`, and the nontrivial involution exchanges them. `E6` uses Bourbaki
//! numbering. In `affineA2` the involution fixes `1` and exchanges `2` and
//! `3`.

use std::path::Path;

use serde::Deserialize;

use crate::coxeter::{CoxeterMatrix, CoxeterSystem};
use crate::error::{Error, Result};
use crate::twisted::{Automorphism, TwistedSystem};

/// A resolved group source.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub system: CoxeterSystem,
    pub theta: Automorphism,
    /// Nontrivial involution of the preset, if it has one.
    pub involution: Option<Automorphism>,
}

impl GroupSpec {
    pub fn twisted(&self) -> Result<TwistedSystem> {
        TwistedSystem::new(self.system.clone(), self.theta.clone())
    }

    /// Replaces `θ` by `id`, `flip`/`swap` or a comma separated list of
    /// 0-based images.
    pub fn with_theta(mut self, text: &str) -> Result<Self> {
        self.theta = match text.trim() {
            "id" => Automorphism::identity(self.system.rank()),
            "flip" | "swap" => self.involution.clone().ok_or_else(|| {
                Error::Parse(format!("{} has no nontrivial diagram involution", self.name))
            })?,
            list => {
                let perm = list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad θ image {t:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                Automorphism::new(perm)
            }
        };
        self.theta.validate(&self.system)?;
        Ok(self)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    size: usize,
    m: Vec<Vec<u32>>,
    #[serde(default)]
    theta: Option<Vec<usize>>,
}

/// Parses a group file: `{"size": n, "m": [[...]], "theta": [...]}` with `0`
/// for an infinite label and `theta` as 0-based images (identity if absent).
pub fn parse_group_file(text: &str, name: &str) -> Result<GroupSpec> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
    if file.size != file.m.len() {
        return Err(Error::MalformedMatrix(format!(
            "size {} does not match {} rows",
            file.size,
            file.m.len()
        )));
    }
    let system = CoxeterSystem::new(CoxeterMatrix::from_file_rows(&file.m)?)?;
    let theta = match file.theta {
        Some(perm) => Automorphism::new(perm),
        None => Automorphism::identity(file.size),
    };
    theta.validate(&system)?;
    let involution = (!theta.is_identity()).then(|| theta.clone());
    Ok(GroupSpec {
        name: name.to_string(),
        system,
        theta,
        involution,
    })
}

/// Resolves a preset name or the path of a group file.
pub fn resolve_group(source: &str) -> Result<GroupSpec> {
    let source = source.trim();
    if source.ends_with(".json") || Path::new(source).is_file() {
        let text = std::fs::read_to_string(source)
            .map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        return parse_group_file(&text, source);
    }
    let (base, suffix) = match source.rsplit_once(':') {
        Some((b, s @ ("id" | "flip" | "swap"))) => (b, Some(s)),
        Some(_) => return Err(Error::Parse(format!("unknown involution in {source:?}"))),
        None => (source, None),
    };
    let (matrix, involution, default_nontrivial) = preset(base)?;
    let system = CoxeterSystem::new(matrix)?;
    let n = system.rank();
    let spec = GroupSpec {
        name: source.to_string(),
        theta: Automorphism::identity(n),
        system,
        involution,
    };
    match suffix {
        Some(s) => spec.with_theta(s),
        None if default_nontrivial => spec.with_theta("flip"),
        None => Ok(spec),
    }
}

/// Shorthand for `resolve_group(source)?.twisted()`.
pub fn resolve_twisted(source: &str) -> Result<TwistedSystem> {
    resolve_group(source)?.twisted()
}

fn path_edges(n: usize) -> Vec<(usize, usize, Option<u32>)> {
    (1..n).map(|i| (i - 1, i, Some(3))).collect()
}

fn parse_rank(text: &str, what: &str, min: usize) -> Result<usize> {
    let n: usize = text
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in preset {what:?}")))?;
    if n < min {
        return Err(Error::Parse(format!("preset {what:?} needs rank at least {min}")));
    }
    Ok(n)
}

fn reversal(n: usize) -> Automorphism {
    Automorphism::new((0..n).rev().collect())
}

fn swap_first_two(n: usize) -> Automorphism {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    Automorphism::new(perm)
}

type Preset = (CoxeterMatrix, Option<Automorphism>, bool);

fn preset(name: &str) -> Result<Preset> {
    if let Some(inner) = name.strip_prefix("square(").and_then(|r| r.strip_suffix(')')) {
        let inner = resolve_group(inner)?;
        let (square, swap) = inner.system.square_with_swap();
        return Ok((square.matrix().clone(), Some(swap), true));
    }
    if let Some(m) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: Option<u32> = match m {
            "inf" => None,
            m => Some(
                m.parse()
                    .map_err(|_| Error::Parse(format!("bad label in preset {name:?}")))?,
            ),
        };
        if m.is_some_and(|m| m < 2) {
            return Err(Error::Parse(format!("preset {name:?} needs a label of at least 2")));
        }
        return Ok((
            CoxeterMatrix::from_edges(2, &[(0, 1, m)]),
            Some(swap_first_two(2)),
            false,
        ));
    }
    match name {
        "E6" => {
            let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)].map(|(a, b)| (a, b, Some(3)));
            let flip = Automorphism::new(vec![5, 1, 4, 3, 2, 0]);
            return Ok((CoxeterMatrix::from_edges(6, &edges), Some(flip), false));
        }
        "F4" => {
            let edges = [(0, 1, Some(3)), (1, 2, Some(4)), (2, 3, Some(3))];
            return Ok((CoxeterMatrix::from_edges(4, &edges), Some(reversal(4)), false));
        }
        "affineA2" => {
            let edges = [(0, 1, Some(3)), (0, 2, Some(3)), (1, 2, Some(3))];
            let theta = Automorphism::new(vec![0, 2, 1]);
            return Ok((CoxeterMatrix::from_edges(3, &edges), Some(theta), true));
        }
        _ => {}
    }
    if let Some(r) = name.strip_prefix('A') {
        let n = parse_rank(r, name, 1)?;
        return Ok((CoxeterMatrix::from_edges(n, &path_edges(n)), Some(reversal(n)), false));
    }
    if let Some(r) = name.strip_prefix('B') {
        let n = parse_rank(r, name, 2)?;
        let mut edges = path_edges(n);
        edges[0].2 = Some(4);
        return Ok((CoxeterMatrix::from_edges(n, &edges), None, false));
    }
    if let Some(r) = name.strip_prefix('D') {
        let n = parse_rank(r, name, 4)?;
        let mut edges = vec![(0, 2, Some(3)), (1, 2, Some(3))];
        edges.extend((3..n).map(|i| (i - 1, i, Some(3))));
        return Ok((CoxeterMatrix::from_edges(n, &edges), Some(swap_first_two(n)), false));
    }
    Err(Error::Parse(format!("unknown group {name:?}")))
}
