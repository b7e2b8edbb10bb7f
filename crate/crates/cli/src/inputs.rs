use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use monideal::graphs::{
    build_h_wheel, complete_bipartite, cycle, di_ideal, ni_ideal, GraphFile, HWheelSpec,
    SimpleGraph,
};
use monideal::monomial::default_names;
use monideal::properties::Criterion;
use monideal::textfmt;
use monideal::MonomialIdeal;
use sha2::{Digest, Sha256};

use crate::report::InputDigest;

pub const FAMILY_GRAMMAR: &str =
    "K<r>,<s> (complete bipartite), C<n> (cycle), wheel:<h>,<rim>,[v1,v2,...] (h-wheel, 1-indexed radial rim positions)";

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn family_digest(name: &str) -> InputDigest {
    InputDigest { kind: "family", name: name.into(), sha256: sha256_hex(name.as_bytes()) }
}

fn file_digest(path: &str, bytes: &[u8]) -> InputDigest {
    InputDigest { kind: "file", name: path.into(), sha256: sha256_hex(bytes) }
}

/// Try to read the string as family shorthand. `None` means "not shorthand";
/// `Some(Err(..))` means the shorthand was recognized but invalid (for
/// example an h-wheel condition violation).
pub fn parse_family(s: &str) -> Option<monideal::Result<SimpleGraph>> {
    if let Some(rest) = s.strip_prefix("wheel:") {
        let (h_str, rest) = rest.split_once(',')?;
        let (rim_str, radial_str) = rest.split_once(',')?;
        let radial_str = radial_str.strip_prefix('[')?.strip_suffix(']')?;
        let h: usize = h_str.trim().parse().ok()?;
        let rim_length: usize = rim_str.trim().parse().ok()?;
        let mut radial = BTreeSet::new();
        for part in radial_str.split(',') {
            radial.insert(part.trim().parse::<usize>().ok()?);
        }
        return Some(build_h_wheel(&HWheelSpec { h, rim_length, radial }));
    }
    if let Some(rest) = s.strip_prefix('K') {
        let (r, t) = rest.split_once(',')?;
        return Some(complete_bipartite(r.trim().parse().ok()?, t.trim().parse().ok()?));
    }
    if let Some(rest) = s.strip_prefix('C') {
        return Some(cycle(rest.trim().parse().ok()?));
    }
    None
}

/// Load a graph from family shorthand or a graph JSON file.
pub fn load_graph(target: &str) -> anyhow::Result<(SimpleGraph, InputDigest)> {
    if let Some(parsed) = parse_family(target) {
        let g = parsed.with_context(|| format!("family {target:?}"))?;
        return Ok((g, family_digest(target)));
    }
    if Path::new(target).exists() {
        let bytes = fs::read(target).with_context(|| format!("reading {target}"))?;
        let file: GraphFile =
            serde_json::from_slice(&bytes).with_context(|| format!("graph JSON in {target}"))?;
        let g = file.to_graph().with_context(|| format!("graph in {target}"))?;
        return Ok((g, file_digest(target, &bytes)));
    }
    bail!("{target:?} is neither family shorthand ({FAMILY_GRAMMAR}) nor an existing file")
}

/// Load a check target: `<family>-ni` / `<family>-di`, or an ideal text file.
pub fn load_ideal(target: &str) -> anyhow::Result<(MonomialIdeal, Vec<String>, InputDigest)> {
    for (suffix, build) in [
        ("-ni", ni_ideal as fn(&SimpleGraph) -> MonomialIdeal),
        ("-di", |g: &SimpleGraph| di_ideal(g).expect("dominating-ideal dual paths agree")),
    ] {
        if let Some(family) = target.strip_suffix(suffix) {
            if let Some(parsed) = parse_family(family) {
                let g = parsed.with_context(|| format!("family {family:?}"))?;
                let ideal = build(&g);
                let names = default_names(ideal.num_vars());
                return Ok((ideal, names, family_digest(target)));
            }
        }
    }
    if Path::new(target).exists() {
        let bytes = fs::read(target).with_context(|| format!("reading {target}"))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| anyhow!("{target} is not UTF-8 text"))?;
        let (ideal, names) =
            textfmt::parse_ideal(&text).with_context(|| format!("ideal file {target}"))?;
        return Ok((ideal, names, file_digest(target, &bytes)));
    }
    bail!(
        "{target:?} is neither a family ideal (family shorthand {FAMILY_GRAMMAR} plus -ni or -di) nor an existing ideal file"
    )
}

/// Load construction inputs for `check criterion` from a JSON file.
pub fn load_criterion(target: &str) -> anyhow::Result<(Criterion, InputDigest)> {
    let bytes = fs::read(target).with_context(|| format!("reading {target}"))?;
    let criterion: Criterion =
        serde_json::from_slice(&bytes).with_context(|| format!("criterion JSON in {target}"))?;
    Ok((criterion, file_digest(target, &bytes)))
}

/// Read one ideal text file.
pub fn load_ideal_file(path: &Path) -> anyhow::Result<(MonomialIdeal, Vec<String>, InputDigest)> {
    let shown = path.display().to_string();
    let bytes = fs::read(path).with_context(|| format!("reading {shown}"))?;
    let text =
        String::from_utf8(bytes.clone()).map_err(|_| anyhow!("{shown} is not UTF-8 text"))?;
    let (ideal, names) =
        textfmt::parse_ideal(&text).with_context(|| format!("ideal file {shown}"))?;
    Ok((ideal, names, file_digest(&shown, &bytes)))
}
