//! `lattice info|shortest|disc` and `isometry analyze`.

use std::path::Path;

use og10_lattice::catalog::{self, make_golay};
use og10_lattice::discriminant::{induced_disc_action, DiscriminantGroup};
use og10_lattice::isometry::{Isometry, IsometryJson};
use og10_lattice::reduction::{minimal_norm_with, EnumOptions, Enumerator};
use og10_lattice::report::rational_string;
use og10_lattice::{IntMatrix, Lattice, LatticeError};
use serde_json::{json, Map, Value};

use crate::CliError;

/// Where a lattice comes from on the command line.
#[derive(Clone, Debug)]
pub enum LatticeSource {
    Name(String),
    /// A file holding either a lattice JSON object or a bare matrix JSON object.
    GramFile(std::path::PathBuf),
}

impl LatticeSource {
    pub fn load(&self) -> Result<Lattice, CliError> {
        match self {
            LatticeSource::Name(n) => Ok(catalog::by_name(n)?),
            LatticeSource::GramFile(p) => read_lattice(p),
        }
    }
}

fn read_lattice(path: &Path) -> Result<Lattice, CliError> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("gram").is_some() {
        Ok(serde_json::from_value(value)?)
    } else {
        let m: IntMatrix = serde_json::from_value(value)?;
        Ok(Lattice::new(m)?)
    }
}

fn counts_json(counts: &std::collections::BTreeMap<u64, u64>) -> Value {
    Value::Object(
        counts
            .iter()
            .map(|(k, v)| (k.to_string(), Value::from(*v)))
            .collect::<Map<String, Value>>(),
    )
}

/// Rank, signature, `|det|`, parity, and for definite lattices the minimal
/// `|norm|` and the root count. The name `golay` describes the code instead.
pub fn info(name: &str) -> Result<Value, CliError> {
    if name.eq_ignore_ascii_case("golay") {
        let code = make_golay();
        code.validate()?;
        let dist: Map<String, Value> = code
            .weight_distribution()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w.to_string(), Value::from(c)))
            .collect();
        return Ok(json!({
            "name": "golay",
            "length": 24,
            "dimension": 12,
            "codewords": code.codewords().len(),
            "minimum_weight": code.minimum_weight(),
            "weight_distribution": dist,
        }));
    }
    let l = catalog::by_name(name)?;
    lattice_info(&l, name)
}

pub fn lattice_info(l: &Lattice, name: &str) -> Result<Value, CliError> {
    let (pos, neg) = l.signature();
    let mut out = json!({
        "name": name,
        "rank": l.rank(),
        "signature": [pos, neg],
        "abs_det": l.abs_det().to_string(),
        "even": l.is_even(),
        "unimodular": l.is_unimodular(),
    });
    if l.is_definite() && l.rank() > 0 {
        let e = Enumerator::new(l, &EnumOptions::default())?;
        let mu = minimal_norm_with(&e)?;
        let roots = if e.exists_within(2)? {
            e.short_vectors(2)?
                .counts_by_norm
                .get(&2)
                .copied()
                .unwrap_or(0)
        } else {
            0
        };
        out["min_norm"] = json!(mu);
        out["roots"] = json!(roots);
    }
    Ok(out)
}

/// `{bound, counts_by_norm, total_pairs}`; with `kissing`, the count at the
/// minimal norm is added and `bound` is ignored if omitted.
pub fn shortest(l: &Lattice, bound: Option<u64>, kissing: bool) -> Result<Value, CliError> {
    let e = Enumerator::new(l, &EnumOptions::default())?;
    let mu = if kissing || bound.is_none() {
        Some(minimal_norm_with(&e)?)
    } else {
        None
    };
    let bound = match (bound, mu) {
        (Some(b), _) => b,
        (None, Some(m)) => m + m % 2,
        (None, None) => unreachable!("minimum computed when no bound is given"),
    };
    let report = e.short_vectors(bound)?;
    let mut out = json!({
        "bound": bound,
        "counts_by_norm": counts_json(&report.counts_by_norm),
        "total_pairs": report.total_pairs(),
    });
    if kissing {
        let m = mu.expect("computed above");
        let count = if m <= bound {
            report.counts_by_norm.get(&m).copied().unwrap_or(0)
        } else {
            e.short_vectors(m + m % 2)?
                .counts_by_norm
                .get(&m)
                .copied()
                .unwrap_or(0)
        };
        out["min_norm"] = json!(m);
        out["kissing_number"] = json!(count);
    }
    Ok(out)
}

/// Invariant factors, length, 2- and 3-lengths, and `q` on the generators.
pub fn disc(l: &Lattice) -> Result<Value, CliError> {
    let a = DiscriminantGroup::new(l);
    let factors: Vec<String> = a
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    let q = if l.is_even() {
        let qs = (0..a.invariant_factors().len())
            .map(|i| Ok(rational_string(&a.quadratic(&a.generator(i))?)))
            .collect::<Result<Vec<String>, LatticeError>>()?;
        Value::from(qs)
    } else {
        Value::Null
    };
    Ok(json!({
        "order": a.order().to_string(),
        "invariant_factors": factors,
        "length": a.length(),
        "length_2": a.p_length(2),
        "length_3": a.p_length(3),
        "q_generators": q,
    }))
}

pub fn read_isometry(path: &Path) -> Result<Isometry, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: IsometryJson = serde_json::from_str(&text)?;
    Ok(parsed.into_isometry()?)
}

fn sublattice_summary(s: &og10_lattice::Sublattice) -> Result<Value, LatticeError> {
    let lat = s.lattice()?;
    let (pos, neg) = lat.signature();
    let a = DiscriminantGroup::new(&lat);
    Ok(json!({
        "rank": s.rank(),
        "signature": [pos, neg],
        "abs_det": lat.abs_det().to_string(),
        "even": lat.is_even(),
        "disc_length": a.length(),
    }))
}

/// Order, action on the discriminant group, and both sublattices.
pub fn analyze(g: &Isometry) -> Result<Value, CliError> {
    let inv = g.invariant_sublattice();
    let co = inv.orthogonal_complement();
    let action = induced_disc_action(g.lattice(), g)?;
    Ok(json!({
        "order": g.order(),
        "disc_action": action.classification.to_string(),
        "invariant": sublattice_summary(&inv)?,
        "coinvariant": sublattice_summary(&co)?,
    }))
}

/// Flat `key: value` lines for terminal output.
pub fn render_plain(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_info() {
        let v = info("e8").unwrap();
        assert_eq!(v["rank"], 8);
        assert_eq!(v["min_norm"], 2);
        assert_eq!(v["roots"], 240);
        let v = info("og10").unwrap();
        assert_eq!(v["abs_det"], "3");
        assert!(v.get("min_norm").is_none());
        let v = info("golay").unwrap();
        assert_eq!(v["minimum_weight"], 8);
        assert!(info("d4").is_err());
    }

    #[test]
    fn shortest_counts() {
        let e8 = catalog::make_e8();
        let v = shortest(&e8, Some(4), false).unwrap();
        assert_eq!(v["counts_by_norm"]["2"], 240);
        assert_eq!(v["counts_by_norm"]["4"], 2160);
        assert_eq!(v["total_pairs"], 1200);
        let v = shortest(&e8, None, true).unwrap();
        assert_eq!(v["kissing_number"], 240);
    }

    #[test]
    fn disc_of_og10() {
        let v = disc(&catalog::make_og10_l()).unwrap();
        assert_eq!(v["invariant_factors"], json!(["3"]));
        assert_eq!(v["length_3"], 1);
        assert_eq!(v["length_2"], 0);
        assert_eq!(v["q_generators"], json!(["4/3"]));
    }

    #[test]
    fn analyze_swap() {
        let v = analyze(&og10_lattice::isometry::e8_swap_involution()).unwrap();
        assert_eq!(v["order"], 2);
        assert_eq!(v["disc_action"], "id");
        assert_eq!(v["coinvariant"]["abs_det"], "256");
        assert_eq!(v["invariant"]["rank"], 16);
    }
}
