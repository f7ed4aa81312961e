//! Input formats: group expressions, `.prod.json` and `.sect.json`.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use loopsmith::group::{cyclic, dihedral, direct_product, make_group, quaternion8, symmetric, FiniteGroup};
use loopsmith::perm::DEFAULT_CLOSURE_CAP;
use loopsmith::tbl::parse_table;

pub const CAP_ENV: &str = "LOOPSMITH_CAP";

/// Permutation-closure cap, from `LOOPSMITH_CAP` when set.
pub fn closure_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| anyhow!("{CAP_ENV} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn read_table(path: &Path) -> Result<Vec<Vec<usize>>> {
    let text = read_text(path)?;
    parse_table(&text).with_context(|| format!("in {}", path.display()))
}

/// Splits `a, b(c, d), e` at top-level commas.
fn split_args(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            bail!("unbalanced parentheses in {s:?}");
        }
    }
    if depth != 0 {
        bail!("unbalanced parentheses in {s:?}");
    }
    out.push(s[start..].trim());
    Ok(out)
}

fn single_number(name: &str, args: &[&str]) -> Result<usize> {
    match args {
        [a] => a.parse().map_err(|_| anyhow!("{name} expects an integer, got {a:?}")),
        _ => bail!("{name} expects one argument"),
    }
}

/// Builds a group from an expression such as `cyclic(3)`, `dihedral(4)`,
/// `symmetric(3)`, `quaternion8`, `product(cyclic(2), symmetric(3))`, or a
/// path to a `.tbl` file (relative paths resolve against `base`).
pub fn parse_group(expr: &str, base: &Path) -> Result<FiniteGroup> {
    let expr = expr.trim();
    if expr.ends_with(".tbl") {
        let path: PathBuf = base.join(expr);
        let rows = read_table(&path)?;
        return make_group(&rows).with_context(|| format!("{} is not a group table", path.display()));
    }
    let (name, args) = match expr.find('(') {
        Some(i) => {
            let inner = expr[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| anyhow!("expected ')' at the end of {expr:?}"))?;
            (expr[..i].trim(), split_args(inner)?)
        }
        None => (expr, Vec::new()),
    };
    let g = match name {
        "cyclic" => cyclic(single_number(name, &args)?)?,
        "dihedral" => dihedral(single_number(name, &args)?)?,
        "symmetric" => symmetric(single_number(name, &args)?)?,
        "quaternion8" if args.iter().all(|a| a.is_empty()) => quaternion8(),
        "product" => {
            let factors = args.iter().map(|a| parse_group(a, base)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&FiniteGroup> = factors.iter().collect();
            direct_product(&refs)?
        }
        _ => bail!("unknown group expression {expr:?}"),
    };
    Ok(g)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Torus {
    pub m: usize,
    pub s: usize,
}

/// `.prod.json`: `{"K": .., "P": .., "S": .., "phi": [..], "g": [..]}`, or
/// with `"torus": {"m": .., "s": ..}` in place of `K` and `S`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductFile {
    #[serde(rename = "K")]
    pub k: Option<String>,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "S")]
    pub s: Option<String>,
    pub phi: Vec<usize>,
    pub g: Vec<usize>,
    pub torus: Option<Torus>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchFileOptions {
    pub max_solutions: Option<usize>,
    pub symmetry_breaking: bool,
    pub parallel: bool,
    pub require_generation: bool,
    pub pin_identity: Option<bool>,
}

/// `.sect.json`: `{"group": .., "subgroup": [indices], "options": {..}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionFile {
    pub group: String,
    pub subgroup: Vec<usize>,
    #[serde(default)]
    pub options: SearchFileOptions,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("invalid JSON in {}", path.display()))
}

pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}
