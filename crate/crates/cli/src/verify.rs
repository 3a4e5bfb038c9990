//! Re-checks the witnesses embedded in a report using nothing but the report.

use freesep_core::lcs_witness::{certify, subgroup_images, witness_alphabet};
use freesep_core::{
    apply_endomorphism, Alphabet, FiniteGroup, Homomorphism, PermutationRep, SubgroupGraph, Word,
};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::report::{PermutationRecord, Report, Status, TargetRecord, ViolationRecord, WitnessRecord};
use crate::text::parse_group_name;

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, String> {
    serde_json::from_value(v.get(key).cloned().ok_or(format!("missing {key}"))?)
        .map_err(|e| format!("bad {key}: {e}"))
}

fn parse(alphabet: &Alphabet, text: &str) -> Result<Word, String> {
    alphabet.parse(text).map_err(|e| e.to_string())
}

fn subgroup(params: &Value) -> Result<(Alphabet, Vec<Word>), String> {
    let alphabet = Alphabet::standard(field(params, "rank")?).map_err(|e| e.to_string())?;
    let gens: Vec<String> = field(params, "gens")?;
    let gens = gens
        .iter()
        .map(|g| parse(&alphabet, g))
        .collect::<Result<_, _>>()?;
    Ok((alphabet, gens))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Verifies every claim the report makes that a witness can support.
pub fn reverify(report: &Report) -> Result<(), String> {
    let params = &report.parameters;
    match report.command.as_str() {
        "member" => {
            let (alphabet, gens) = subgroup(params)?;
            let word = parse(&alphabet, &field::<String>(params, "word")?)?;
            let graph = SubgroupGraph::build(&alphabet, &gens).map_err(|e| e.to_string())?;
            let claimed: bool = field(&report.witnesses, "member")?;
            ensure(graph.contains(&word) == claimed, || "membership differs".into())
        }
        "isolated" => {
            let (alphabet, gens) = subgroup(params)?;
            let graph = SubgroupGraph::build(&alphabet, &gens).map_err(|e| e.to_string())?;
            let records: Vec<ViolationRecord> =
                serde_json::from_value(report.witnesses.clone()).map_err(|e| e.to_string())?;
            ensure(
                (report.status == Status::Consistent) == records.is_empty(),
                || "status does not match the violation list".into(),
            )?;
            for r in &records {
                let root = parse(&alphabet, &r.root)?;
                let power = root.power(i64::from(r.exponent));
                ensure(alphabet.format(&power) == r.power, || format!("power of {} misreported", r.root))?;
                ensure(graph.contains(&power) && !graph.contains(&root), || {
                    format!("({})^{} is not a violation", r.root, r.exponent)
                })?;
            }
            Ok(())
        }
        "witness" => {
            let records: Vec<WitnessRecord> =
                serde_json::from_value(report.witnesses.clone()).map_err(|e| e.to_string())?;
            let n: usize = field(params, "n")?;
            ensure(records.len() + 1 == n, || "missing classes".into())?;
            let xy = Alphabet::standard(2).map_err(|e| e.to_string())?;
            let h = SubgroupGraph::build(&xy, &subgroup_images()).map_err(|e| e.to_string())?;
            for (r, class) in records.iter().zip(2..) {
                ensure(r.n == class, || format!("class {} out of order", r.n))?;
                let w_ab = parse(&witness_alphabet(), &r.witness_ab)?;
                let w_xy = parse(&xy, &r.witness_xy)?;
                let expanded = apply_endomorphism(&subgroup_images(), &w_ab).map_err(|e| e.to_string())?;
                ensure(expanded == w_xy, || format!("class {class}: expansion mismatch"))?;
                ensure(h.contains(&w_xy), || format!("class {class}: witness outside H"))?;
                certify(&w_xy, class).map_err(|e| e.to_string())?;
            }
            Ok(())
        }
        "psep" => {
            let (alphabet, gens) = subgroup(params)?;
            let exclude = parse(&alphabet, &field::<String>(params, "exclude")?)?;
            let records: Vec<TargetRecord> =
                serde_json::from_value(report.witnesses.clone()).map_err(|e| e.to_string())?;
            for r in &records {
                let group: FiniteGroup = parse_group_name(&r.group).map_err(|e| e.to_string())?;
                ensure(r.homs_separating <= r.homs_total, || format!("{}: counts", r.group))?;
                ensure(
                    r.first_separating.is_some() == (r.homs_separating > 0),
                    || format!("{}: witness presence", r.group),
                )?;
                if let Some(h) = &r.first_separating {
                    let images = h
                        .images
                        .iter()
                        .map(|e| group.from_entries(e))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())?;
                    let hom = Homomorphism::new(group, images);
                    ensure(hom.separates(&gens, &exclude), || {
                        format!("{}: exhibited map does not separate", r.group)
                    })?;
                }
            }
            Ok(())
        }
        "separate" => {
            let (alphabet, gens) = subgroup(params)?;
            let word = parse(&alphabet, &field::<String>(params, "word")?)?;
            let record: PermutationRecord =
                serde_json::from_value(report.witnesses.clone()).map_err(|e| e.to_string())?;
            let rep = PermutationRep::new(record.images).map_err(|e| e.to_string())?;
            ensure(rep.degree() == record.degree, || "degree mismatch".into())?;
            ensure(rep.act(record.basepoint, &word) == record.endpoint, || "endpoint mismatch".into())?;
            ensure(rep.separates(record.basepoint, &gens, &word), || {
                "representation does not separate".into()
            })
        }
        other => Err(format!("unknown command {other}")),
    }
}
