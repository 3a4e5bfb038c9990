use std::collections::BTreeMap;
use std::time::Instant;

use freesep_core::isolation::p_prime_exponents;
use freesep_core::lcs_witness::witness_alphabet;
use freesep_core::stallings::BASEPOINT;
use freesep_core::{
    isolation_scan, nilpotent_image_equality, separability_scan, Alphabet, Error, FiniteGroup,
    Index, ScanBounds, SubgroupGraph, Word,
};
use serde_json::{json, Value};

use crate::args::{IsolatedArgs, MemberArgs, PsepArgs, SeparateArgs, SubgroupArgs, WitnessArgs};
use crate::report::{
    HomRecord, PermutationRecord, Report, Status, TargetRecord, ViolationRecord, WitnessRecord,
};
use crate::text::{parse_targets, parse_word, parse_words};
use crate::CliError;

struct Subgroup {
    alphabet: Alphabet,
    gens: Vec<Word>,
    texts: Vec<String>,
}

fn subgroup(args: &SubgroupArgs) -> Result<Subgroup, CliError> {
    let alphabet = Alphabet::standard(args.rank)?;
    let gens = parse_words(&alphabet, "gens", &args.gens)?;
    let texts = gens.iter().map(|g| alphabet.format(g)).collect();
    Ok(Subgroup {
        alphabet,
        gens,
        texts,
    })
}

fn counters<const N: usize>(pairs: [(&str, u64); N]) -> BTreeMap<String, u64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn member(args: &MemberArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let sg = subgroup(&args.subgroup)?;
    let word = parse_word(&sg.alphabet, "word", &args.word)?;
    let graph = SubgroupGraph::build(&sg.alphabet, &sg.gens)?;
    let is_member = graph.contains(&word);
    let index = match graph.index_info() {
        Index::Finite(n) => Value::from(n),
        Index::Infinite => Value::from("infinite"),
    };
    Ok(Report {
        command: "member".into(),
        parameters: json!({
            "rank": sg.alphabet.rank(),
            "gens": sg.texts,
            "word": sg.alphabet.format(&word),
        }),
        status: Status::Consistent,
        outcome: if is_member { "member" } else { "non-member" }.into(),
        counters: counters([
            ("graph_vertices", graph.vertex_count() as u64),
            ("graph_edges", graph.edge_count() as u64),
            ("subgroup_rank", graph.subgroup_rank() as u64),
        ]),
        witnesses: json!({ "member": is_member, "index": index }),
        elapsed_ms: elapsed_ms(start),
        summary: vec![format!(
            "{} {} the subgroup",
            display(&sg.alphabet, &word),
            if is_member { "lies in" } else { "does not lie in" }
        )],
    })
}

fn display(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        alphabet.format(w)
    }
}

pub fn isolated(args: &IsolatedArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let sg = subgroup(&args.subgroup)?;
    let requested = ScanBounds::new(args.max_len, args.exponents.iter().copied())?;
    let exponents: Vec<u32> = match args.pprime {
        Some(p) => p_prime_exponents(p, &requested)?,
        None => requested.exponents().iter().copied().collect(),
    };
    let graph = SubgroupGraph::build(&sg.alphabet, &sg.gens)?;
    let violations = if exponents.is_empty() {
        Vec::new()
    } else {
        isolation_scan(&graph, &ScanBounds::new(args.max_len, exponents.iter().copied())?)
    };
    let records: Vec<ViolationRecord> = violations
        .iter()
        .map(|v| ViolationRecord {
            root: sg.alphabet.format(&v.root),
            exponent: v.exponent,
            power: sg.alphabet.format(&v.root.power(i64::from(v.exponent))),
        })
        .collect();
    let status = if records.is_empty() {
        Status::Consistent
    } else {
        Status::Counterexample
    };
    let mut summary: Vec<String> = records
        .iter()
        .take(10)
        .map(|r| format!("({})^{} ∈ H but {} ∉ H", r.root, r.exponent, r.root))
        .collect();
    if records.len() > 10 {
        summary.push(format!("… {} more", records.len() - 10));
    }
    summary.push(format!(
        "bounds: all reduced words of length 1..={} with exponents {:?}",
        args.max_len, exponents
    ));
    Ok(Report {
        command: "isolated".into(),
        parameters: json!({
            "rank": sg.alphabet.rank(),
            "gens": sg.texts,
            "max_len": args.max_len,
            "exponents": exponents,
            "pprime": args.pprime,
        }),
        status,
        outcome: if records.is_empty() {
            "no-violations-within-bounds"
        } else {
            "violations-found"
        }
        .into(),
        counters: counters([
            ("words_scanned", requested.word_count(sg.alphabet.rank()) as u64),
            ("exponents", exponents.len() as u64),
            ("violations", records.len() as u64),
        ]),
        witnesses: serde_json::to_value(records).expect("serializable"),
        elapsed_ms: elapsed_ms(start),
        summary,
    })
}

pub fn witness(args: &WitnessArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    if args.n < 2 {
        return Err(Error::ClassTooSmall(args.n).into());
    }
    let ab = witness_alphabet();
    let xy = Alphabet::standard(2)?;
    let reports = match nilpotent_image_equality(args.n) {
        Ok(r) => r,
        Err(e @ Error::CertificationFailed { .. }) => return Err(CliError::Refuted(e)),
        Err(e) => return Err(e.into()),
    };
    let records: Vec<WitnessRecord> = reports
        .iter()
        .map(|r| WitnessRecord {
            n: r.n,
            witness_ab: ab.format(&r.witness),
            witness_xy: xy.format(&r.expanded),
            length_ab: r.witness.len(),
            length_xy: r.expanded.len(),
            discrepancy_weight: r.discrepancy_weight.to_string(),
        })
        .collect();
    let summary = records
        .iter()
        .map(|r| {
            format!(
                "n = {:>2}: |W| = {} over {{a,b}}, {} over {{x,y}}, weight(W⁻¹x) {}",
                r.n, r.length_ab, r.length_xy, r.discrepancy_weight
            )
        })
        .collect();
    Ok(Report {
        command: "witness".into(),
        parameters: json!({ "n": args.n, "a": "xYXyx", "b": "y" }),
        status: Status::Consistent,
        outcome: "certified".into(),
        counters: counters([("classes_certified", records.len() as u64)]),
        witnesses: serde_json::to_value(records).expect("serializable"),
        elapsed_ms: elapsed_ms(start),
        summary,
    })
}

pub fn psep(args: &PsepArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let sg = subgroup(&args.subgroup)?;
    let exclude = parse_word(&sg.alphabet, "exclude", &args.exclude)?;
    let mut targets: Vec<FiniteGroup> = Vec::new();
    for &p in &args.p {
        targets.extend(parse_targets(&args.targets, p)?);
    }
    let scan = separability_scan(&sg.gens, &exclude, &targets, u128::from(args.budget))?;
    let records: Vec<TargetRecord> = scan
        .targets
        .iter()
        .map(|t| TargetRecord {
            group: t.group.to_string(),
            order: t.group.order(),
            homs_total: t.homs_total as u64,
            homs_separating: t.homs_separating as u64,
            first_separating: t.first_separating.as_ref().map(|h| HomRecord {
                images: h.images.iter().map(|&e| t.group.entries(e)).collect(),
            }),
        })
        .collect();
    let separating = scan.homs_separating() as u64;
    let summary = records
        .iter()
        .map(|r| {
            format!(
                "{:<8} {:>8} homomorphisms, {} separating",
                r.group, r.homs_total, r.homs_separating
            )
        })
        .chain(["scope: exhaustive over the listed target groups only".to_string()])
        .collect();
    Ok(Report {
        command: "psep".into(),
        parameters: json!({
            "rank": sg.alphabet.rank(),
            "gens": sg.texts,
            "exclude": sg.alphabet.format(&exclude),
            "primes": args.p,
            "targets": records.iter().map(|r| r.group.clone()).collect::<Vec<_>>(),
            "active_generators": scan.active_generators,
            "budget": args.budget,
            "scope": "exhaustive over the listed target groups only",
        }),
        status: if separating == 0 {
            Status::Consistent
        } else {
            Status::Counterexample
        },
        outcome: if separating == 0 {
            "not-separated"
        } else {
            "separated"
        }
        .into(),
        counters: counters([
            ("targets", records.len() as u64),
            ("homs_total", scan.homs_total() as u64),
            ("homs_separating", separating),
        ]),
        witnesses: serde_json::to_value(records).expect("serializable"),
        elapsed_ms: elapsed_ms(start),
        summary,
    })
}

pub fn separate(args: &SeparateArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let sg = subgroup(&args.subgroup)?;
    let word = parse_word(&sg.alphabet, "word", &args.word)?;
    let graph = SubgroupGraph::build(&sg.alphabet, &sg.gens)?;
    let rep = graph.separating_permutation_rep(&word)?;
    let endpoint = rep.act(BASEPOINT, &word);
    let record = PermutationRecord {
        degree: rep.degree(),
        basepoint: BASEPOINT,
        endpoint,
        images: rep.images().to_vec(),
    };
    Ok(Report {
        command: "separate".into(),
        parameters: json!({
            "rank": sg.alphabet.rank(),
            "gens": sg.texts,
            "word": sg.alphabet.format(&word),
        }),
        status: Status::Consistent,
        outcome: "separated".into(),
        counters: counters([
            ("degree", rep.degree() as u64),
            ("graph_vertices", graph.vertex_count() as u64),
        ]),
        witnesses: serde_json::to_value(&record).expect("serializable"),
        elapsed_ms: elapsed_ms(start),
        summary: vec![format!(
            "Sym({}) representation: generators fix point {BASEPOINT}, the word sends it to {endpoint}",
            rep.degree()
        )],
    })
}
