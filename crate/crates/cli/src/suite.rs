//! Named verification suites.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use og10_lattice::catalog::{self, make_e8, make_og10_l};
use og10_lattice::discriminant::{discriminant_group, induced_disc_action, DiscClass};
use og10_lattice::isometry::{
    e8_swap_involution, leech_sample_isometries, og10_rank_one_reflection,
};
use og10_lattice::og10::{
    self, contradiction_table_with, gluing_determinant_check, lattice_side_conditions,
    leech_coinvariant_min_norm, nikulin_embedding_sufficient, rank_one_divisibility_check,
    rogers_bound, trivial_disc_case_pipeline, ContradictionTable, LAMBDA_1_25_SIGNATURE,
};
use og10_lattice::reduction::{minimal_norm_with, EnumOptions, Enumerator};
use og10_lattice::report::rational_string;
use og10_lattice::{Result, VerificationReport};
use serde_json::{json, Value};

use crate::{with_threads, CliError};

/// Suites accepted by `og10-verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    All,
    BoundsTable,
    RankOne,
    E8Swap,
    Leech,
    DiscActions,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::All => "all",
            SuiteName::BoundsTable => "bounds-table",
            SuiteName::RankOne => "rank-one",
            SuiteName::E8Swap => "e8-swap",
            SuiteName::Leech => "leech",
            SuiteName::DiscActions => "disc-actions",
        }
    }

    /// The suites making up `all`, in report order.
    pub const PARTS: [SuiteName; 5] = [
        SuiteName::BoundsTable,
        SuiteName::RankOne,
        SuiteName::E8Swap,
        SuiteName::Leech,
        SuiteName::DiscActions,
    ];
}

#[derive(Clone, Debug)]
pub struct SuiteSpec {
    pub name: SuiteName,
    pub safety_factor: BigRational,
    /// Also count the minimal vectors of the Leech lattice.
    pub kissing: bool,
    pub threads: Option<usize>,
    pub json_path: Option<PathBuf>,
}

impl SuiteSpec {
    pub fn new(name: SuiteName) -> Self {
        SuiteSpec {
            name,
            safety_factor: og10::default_safety_factor(),
            kissing: false,
            threads: None,
            json_path: None,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), CliError> {
        if self.safety_factor < BigRational::one() {
            return Err(CliError::Usage(format!(
                "--safety-factor must be at least 1, got {}",
                rational_string(&self.safety_factor)
            )));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }

    fn enum_options(&self) -> EnumOptions {
        EnumOptions {
            reduce: true,
            threads: None,
        }
    }
}

/// Runs the suite inside a pool of the requested size.
pub fn run_suite(spec: &SuiteSpec) -> std::result::Result<VerificationReport, CliError> {
    spec.validate()?;
    let report = with_threads(spec.threads, || -> Result<VerificationReport> {
        let mut report = VerificationReport::new(spec.name.as_str());
        let parts: &[SuiteName] = match spec.name {
            SuiteName::All => &SuiteName::PARTS,
            ref one => std::slice::from_ref(one),
        };
        for part in parts {
            match part {
                SuiteName::BoundsTable => bounds_table(spec, &mut report)?,
                SuiteName::RankOne => rank_one(&mut report)?,
                SuiteName::E8Swap => e8_swap(spec, &mut report)?,
                SuiteName::Leech => leech(spec, &mut report)?,
                SuiteName::DiscActions => disc_actions(&mut report)?,
                SuiteName::All => unreachable!("all is expanded above"),
            }
        }
        Ok(report)
    })??;
    Ok(report)
}

fn table_json(rows: &[og10::BoundsRow]) -> Vec<Value> {
    rows.iter().map(og10::BoundsRow::to_json).collect()
}

fn bounds_table(spec: &SuiteSpec, report: &mut VerificationReport) -> Result<()> {
    let table: ContradictionTable = contradiction_table_with(&spec.safety_factor)?;
    report.run("bounds-table.printed", || {
        Ok((table.verdict(), json!({ "rows": table_json(&table.rows) })))
    })?;
    report.run("bounds-table.rank-1-equality", || {
        let r = &table.rows[0];
        Ok((
            r.equal(),
            json!({
                "upper": r.upper.to_string(),
                "lower": rational_string(&r.lower),
            }),
        ))
    })?;
    report.run("bounds-table.safety-factor", || {
        Ok((
            table.inflated_verdict(),
            json!({
                "safety_factor": rational_string(&table.safety_factor),
                "rows": table_json(&table.inflated_rows),
            }),
        ))
    })?;
    report.run("bounds-table.density-sanity", || {
        // E8 and Leech sit below their Rogers bounds
        let e8 = og10::center_density_sq(&make_e8())?;
        let leech = og10::center_density_sq(&catalog::make_leech()?)?;
        let b8 = rogers_bound(8)?;
        let b24 = rogers_bound(24)?;
        let pass = e8 == BigRational::new(1.into(), 256.into())
            && leech.is_one()
            && e8 <= &b8 * &b8
            && leech <= &b24 * &b24;
        Ok((
            pass,
            json!({
                "e8_delta_sq": rational_string(&e8),
                "leech_delta_sq": rational_string(&leech),
                "b_8": rational_string(&b8),
                "b_24": rational_string(&b24),
            }),
        ))
    })
}

fn rank_one(report: &mut VerificationReport) -> Result<()> {
    report.run("rank-one.endgame", || {
        let r = rank_one_divisibility_check()?;
        Ok((r.pass(), r.to_json()))
    })?;
    report.run("rank-one.gluing", || {
        let r = gluing_determinant_check(&og10_rank_one_reflection())?;
        let pass =
            r.pass() && r.h_order == BigInt::from(2) && r.coinvariant_index == BigInt::from(3);
        Ok((pass, r.to_json()))
    })?;
    report.run("rank-one.embedding", || {
        let co = og10_rank_one_reflection()
            .coinvariant_sublattice()
            .lattice()?;
        let length = discriminant_group(&co).length();
        let fits = nikulin_embedding_sufficient(&co, LAMBDA_1_25_SIGNATURE);
        Ok((
            fits && co.rank() + length < 26,
            json!({ "rank": co.rank(), "length": length, "sufficient": fits }),
        ))
    })
}

fn e8_swap(spec: &SuiteSpec, report: &mut VerificationReport) -> Result<()> {
    let g = e8_swap_involution();
    let opts = spec.enum_options();
    report.run("e8-swap.coinvariant", || {
        let co = g.coinvariant_sublattice().lattice()?;
        let e = Enumerator::new(&co, &opts)?;
        let mu = minimal_norm_with(&e)?;
        let vectors = e.short_vectors(og10::walls::WALL_SCAN_BOUND)?;
        let norms_mod_4 = vectors.counts_by_norm.keys().all(|n| n % 4 == 0);
        let roots = vectors.counts_by_norm.get(&2).copied().unwrap_or(0);
        let pass = co.rank() == 8
            && co.abs_det() == BigInt::from(256)
            && co.is_even()
            && mu == 4
            && roots == 0
            && norms_mod_4;
        let counts: serde_json::Map<String, Value> = vectors
            .counts_by_norm
            .iter()
            .map(|(k, v)| (k.to_string(), Value::from(*v)))
            .collect();
        Ok((
            pass,
            json!({
                "rank": co.rank(),
                "abs_det": co.abs_det().to_string(),
                "min_norm": mu,
                "roots": roots,
                "norms_divisible_by_4": norms_mod_4,
                "counts_by_norm": counts,
            }),
        ))
    })?;
    report.run("e8-swap.walls", || {
        let c = lattice_side_conditions(&g, &opts)?;
        let witness_norm = c.automorphism.witness.as_ref().map(|w| w.norm.clone());
        let pass =
            c.birational.holds && !c.automorphism.holds && witness_norm == Some(BigInt::from(-4));
        Ok((
            pass,
            json!({
                "automorphism_condition": c.automorphism.to_json(),
                "birational_condition": c.birational.to_json(),
            }),
        ))
    })?;
    report.run("e8-swap.gluing", || {
        let r = gluing_determinant_check(&g)?;
        let pass = r.pass() && r.h_order == BigInt::from(256) && r.two_power == Some(true);
        Ok((pass, r.to_json()))
    })?;
    report.run("e8-swap.length-chain", || {
        let r = trivial_disc_case_pipeline(&g, None, &opts)?;
        let pass = r.chain_holds() && r.root_free && r.wall_vector_forced;
        Ok((pass, r.to_json()))
    })
}

fn leech(spec: &SuiteSpec, report: &mut VerificationReport) -> Result<()> {
    let opts = spec.enum_options();
    report.run("leech.golay-code", || {
        let code = catalog::make_golay();
        let dist = code.weight_distribution();
        let weights: serde_json::Map<String, Value> = dist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w.to_string(), Value::from(c)))
            .collect();
        Ok((code.validate().is_ok(), json!({ "weights": weights })))
    })?;
    let model = catalog::leech_model();
    report.run("leech.invariants", || {
        let l = &model.clone()?.lattice;
        let pass =
            l.rank() == 24 && l.is_even() && l.abs_det().is_one() && l.signature() == (0, 24);
        Ok((
            pass,
            json!({
                "rank": l.rank(),
                "even": l.is_even(),
                "abs_det": l.abs_det().to_string(),
                "signature": [l.signature().0, l.signature().1],
            }),
        ))
    })?;
    report.run("leech.no-roots", || {
        let e = Enumerator::new(&model.clone()?.lattice, &opts)?;
        let found = e.exists_within(2)?;
        Ok((
            !found,
            json!({ "roots": if found { "present" } else { "none" } }),
        ))
    })?;
    report.run("leech.min-norm", || {
        let e = Enumerator::new(&model.clone()?.lattice, &opts)?;
        let mu = minimal_norm_with(&e)?;
        Ok((mu == 4, json!({ "min_norm": mu })))
    })?;
    if spec.kissing {
        report.run("leech.kissing-number", || {
            let e = Enumerator::new(&model.clone()?.lattice, &opts)?;
            let r = e.short_vectors(4)?;
            let count = r.counts_by_norm.get(&4).copied().unwrap_or(0);
            Ok((count == 196_560, json!({ "norm_4_vectors": count })))
        })?;
    }
    let samples = leech_sample_isometries();
    report.run("leech.coinvariant-min-norms", || {
        let mut rows = Vec::new();
        let mut pass = true;
        for s in samples.clone()? {
            let mu = leech_coinvariant_min_norm(&s.isometry, &opts)?;
            let rank = s.isometry.coinvariant_sublattice().rank();
            pass &= mu == 4;
            rows.push(json!({
                "isometry": s.name,
                "order": s.isometry.order(),
                "coinvariant_rank": rank,
                "min_norm": mu,
            }));
        }
        Ok((pass, json!({ "rows": rows })))
    })
}

fn disc_actions(report: &mut VerificationReport) -> Result<()> {
    let l = make_og10_l();
    report.run("disc-actions.discriminant-form", || {
        let a = discriminant_group(&l);
        let q = a.quadratic(&a.generator(0))?;
        let factors: Vec<String> = a
            .invariant_factors()
            .iter()
            .map(ToString::to_string)
            .collect();
        let pass = a.order() == BigInt::from(3) && q == BigRational::new(4.into(), 3.into());
        Ok((
            pass,
            json!({ "invariant_factors": factors, "q_generator": rational_string(&q) }),
        ))
    })?;
    for (name, g, expected) in [
        (
            "disc-actions.e8-swap",
            e8_swap_involution(),
            DiscClass::Identity,
        ),
        (
            "disc-actions.rank-one",
            og10_rank_one_reflection(),
            DiscClass::NegIdentity,
        ),
    ] {
        report.run(name, || {
            let action = induced_disc_action(&l, &g)?;
            let images: Vec<Vec<String>> = action
                .matrix
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect();
            Ok((
                action.classification == expected,
                json!({
                    "class": action.classification.to_string(),
                    "generator_images": images,
                }),
            ))
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_table_suite() {
        let r = run_suite(&SuiteSpec::new(SuiteName::BoundsTable)).unwrap();
        assert!(r.pass(), "{r:?}");
        let rows = r.get("bounds-table.printed").unwrap().witness["rows"]
            .as_array()
            .unwrap()
            .clone();
        assert_eq!(rows.len(), 21);
        assert_eq!(rows[1]["b_n"], "0.28868");
    }

    #[test]
    fn rank_one_suite() {
        let r = run_suite(&SuiteSpec::new(SuiteName::RankOne)).unwrap();
        assert!(r.pass(), "{r:?}");
        let w = &r.get("rank-one.endgame").unwrap().witness;
        assert_eq!(w["divisibility"], "3");
    }

    #[test]
    fn rejects_bad_options() {
        let mut s = SuiteSpec::new(SuiteName::BoundsTable);
        s.safety_factor = BigRational::new(1.into(), 2.into());
        assert!(matches!(run_suite(&s), Err(CliError::Usage(_))));
        let mut s = SuiteSpec::new(SuiteName::BoundsTable);
        s.threads = Some(0);
        assert!(matches!(run_suite(&s), Err(CliError::Usage(_))));
    }
}
