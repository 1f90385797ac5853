use std::collections::BTreeSet;

use forcing_core::ad::{
    ad_check, diagonalize, extract_d, named_generator, triangular_family, AdError, AdPoset,
    Condition, DenseKind, Registry, SetGen,
};
use forcing_core::completion::{
    ro_algebra, stone_ccc_check, stone_space, verify_embedding, ClauseResult, RegularOpenAlgebra,
};
use forcing_core::ordinal::{parse, ParseError};
use forcing_core::poset::{
    defined_at, disagrees_with, generic_filter, union_of_filter, BinaryCondition, BinaryPoset,
    DenseSet, GenericError,
};
use forcing_core::well_order::{check_order_properties, trichotomy, RelationError};
use serde_json::{json, Value};

use crate::args::{AdCmd, Command, OrdCmd, PosetCmd, WoCmd};
use crate::report::Report;
use crate::{load, CliError};

pub fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Ord(OrdCmd::Eval { expr }) => ord_eval(expr),
        Command::Wo(c) => wo(c),
        Command::Poset(c) => poset(c),
        Command::Ad(c) => ad(c),
    }
}

fn ord_eval(expr: &str) -> Result<Report, CliError> {
    let value = parse(expr).map_err(|e| match e {
        ParseError::ExponentTooLarge { .. } => CliError::Exhausted(e.to_string()),
        other => CliError::Parse(other.to_string()),
    })?;
    let kind = format!("{:?}", value.classify()).to_lowercase();
    Ok(Report::new()
        .field("value", value.to_string())
        .field("kind", kind)
        .text(value.to_string()))
}

fn violation_json(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("violations serialize")
}

fn wo(cmd: &WoCmd) -> Result<Report, CliError> {
    match cmd {
        WoCmd::Check { file } => {
            let r = load::relation(file)?;
            let rep = check_order_properties(&r);
            Ok(Report::new()
                .field("elements", r.len())
                .field("partial", rep.is_partial)
                .field("total", rep.is_total)
                .field("well", rep.is_well)
                .field("partial_violation", violation_json(&rep.partial_violation))
                .field("total_violation", violation_json(&rep.total_violation))
                .field("well_violation", violation_json(&rep.well_violation))
                .violated(!rep.is_well))
        }
        WoCmd::Trichotomy { first, second } => {
            let (a, b) = (load::relation(first)?, load::relation(second)?);
            let r = trichotomy(&a, &b).map_err(|e| match e {
                RelationError::NotWellOrder { .. } => CliError::Violation(e.to_string()),
                other => CliError::Parse(other.to_string()),
            })?;
            let case = serde_json::to_value(r.case).expect("case serializes");
            let iso: Vec<String> = r.iso.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
            Ok(Report::new()
                .field("case", case)
                .field("cut_point", r.cut_point)
                .field("iso", iso))
        }
    }
}

fn poset(cmd: &PosetCmd) -> Result<Report, CliError> {
    match cmd {
        PosetCmd::Check { file } => {
            let f = load::poset(file)?;
            let p = &f.poset;
            let antisymmetric =
                (0..p.len()).all(|a| (0..p.len()).all(|b| a == b || !(p.leq(a, b) && p.leq(b, a))));
            let mut rep = Report::new()
                .field("elements", p.len())
                .field("preorder", true)
                .field("antisymmetric", antisymmetric);
            for (name, set) in &f.sets {
                let filter = p.is_filter(set);
                let ultra = if filter {
                    Value::from(p.is_ultrafilter(set).expect("checked filter"))
                } else {
                    Value::Null
                };
                rep.push(
                    format!("set {name}"),
                    json!({
                        "size": set.len(),
                        "dense": p.is_dense(set),
                        "antichain": p.is_antichain(set),
                        "filter": filter,
                        "ultrafilter": ultra,
                    }),
                );
            }
            Ok(rep)
        }
        PosetCmd::Dense { file, set } => {
            let f = load::poset(file)?;
            let d = f
                .sets
                .get(set)
                .ok_or_else(|| CliError::Parse(format!("no set named {set:?}")))?;
            let witness = f
                .poset
                .density_witness(d)
                .map(|w| f.poset.label(w).to_string());
            Ok(Report::new()
                .field("set", set.as_str())
                .field("dense", witness.is_none())
                .field("witness", witness.clone())
                .violated(witness.is_some()))
        }
        PosetCmd::Generic {
            poset,
            dense,
            fuel,
            start,
        } if poset == "k" => {
            if start.is_some() {
                return Err(CliError::Parse("--start applies to poset files".into()));
            }
            binary_generic(dense, *fuel)
        }
        PosetCmd::Generic {
            poset,
            dense,
            fuel,
            start,
        } => file_generic(poset.as_ref(), dense, *fuel, start.as_deref()),
        PosetCmd::Ro { file, dot } => {
            let f = load::poset(file)?;
            let a = ro(&f.poset)?;
            let rep = verify_embedding(&f.poset, &a);
            let mut out = Report::new()
                .field("elements", f.poset.len())
                .field("carrier_size", a.len())
                .field(
                    "atoms",
                    a.atoms().iter().map(|&x| a.describe(x)).collect::<Vec<_>>(),
                );
            for p in 0..f.poset.len() {
                out.push(format!("i({})", f.poset.label(p)), a.describe(a.embed(p)));
            }
            out = out
                .field("dense", clause(&rep.dense))
                .field("monotone", clause(&rep.monotone))
                .field("incompatibility", clause(&rep.incompatibility))
                .violated(!rep.passed());
            Ok(with_dot(out, *dot, &a))
        }
        PosetCmd::Stone { file, dot } => {
            let f = load::poset(file)?;
            let a = ro(&f.poset)?;
            let s = stone_space(&a).map_err(|e| CliError::Exhausted(e.to_string()))?;
            let mut out = Report::new()
                .field("carrier_size", a.len())
                .field("points", s.len());
            for g in 0..s.len() {
                let members: Vec<String> = s.points()[g].iter().map(|&b| a.describe(b)).collect();
                out.push(format!("G{g}"), members);
            }
            for b in 0..a.len() {
                let opens: Vec<String> = s.basic_open(b).iter().map(|g| format!("G{g}")).collect();
                out.push(format!("N{}", a.describe(b)), opens);
            }
            let check = stone_ccc_check(&s);
            out = out
                .field(
                    "disjointness_check",
                    if check.passed { "pass" } else { "fail" },
                )
                .field("failures", check.failures.clone())
                .violated(!check.passed);
            Ok(with_dot(out, *dot, &a))
        }
    }
}

fn ro(p: &forcing_core::FinitePoset) -> Result<RegularOpenAlgebra, CliError> {
    ro_algebra(p).map_err(|e| CliError::Exhausted(e.to_string()))
}

fn clause(c: &ClauseResult) -> Value {
    let verdict = match (c.holds, c.vacuous) {
        (true, true) => "pass (vacuous)".to_string(),
        (true, false) => "pass".to_string(),
        (false, _) => format!("fail: {}", c.witness.as_deref().unwrap_or("")),
    };
    Value::from(verdict)
}

fn with_dot(report: Report, dot: bool, a: &RegularOpenAlgebra) -> Report {
    if dot {
        let d = a.hasse_dot();
        report.field("dot", d.clone()).text(d)
    } else {
        report
    }
}

fn parse_bits(bits: &str) -> Result<Vec<bool>, CliError> {
    if bits.is_empty() {
        return Err(CliError::Parse("e: needs at least one bit".into()));
    }
    bits.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Parse(format!("bad bit {other:?} in e:{bits}"))),
        })
        .collect()
}

fn generic_error(e: GenericError) -> CliError {
    match e {
        GenericError::FuelExhausted { .. } => CliError::Exhausted(e.to_string()),
        GenericError::NotDense { .. } => CliError::Violation(e.to_string()),
    }
}

fn binary_generic(specs: &[String], fuel: usize) -> Result<Report, CliError> {
    let mut dense: Vec<DenseSet<BinaryCondition>> = Vec::new();
    for spec in specs {
        if let Some(bits) = spec.strip_prefix("e:") {
            dense.push(disagrees_with(parse_bits(bits)?));
        } else if let Some(n) = spec.strip_prefix('d') {
            let n: u64 = n
                .parse()
                .map_err(|_| CliError::Parse(format!("bad dense set {spec:?}")))?;
            dense.push(defined_at(n));
        } else {
            return Err(CliError::Parse(format!(
                "bad dense set {spec:?}; expected d<n> or e:<bits>"
            )));
        }
    }
    let k = BinaryPoset::default();
    let r = generic_filter(&k, &dense, BinaryCondition::empty(), fuel).map_err(generic_error)?;
    let f = union_of_filter(&r.chain).map_err(|e| CliError::Violation(e.to_string()))?;
    let met: Vec<String> = r.met.iter().map(|(id, c)| format!("{id} -> {c}")).collect();
    Ok(Report::new()
        .field(
            "chain",
            r.chain.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        )
        .field("met", met)
        .field("f_G", f.to_string())
        .field("domain_size", f.len()))
}

fn file_generic(
    path: &std::path::Path,
    names: &[String],
    fuel: usize,
    start: Option<&str>,
) -> Result<Report, CliError> {
    let f = load::poset(path)?;
    let p = &f.poset;
    if p.is_empty() {
        return Err(CliError::Violation("poset is empty".into()));
    }
    let start = match start {
        Some(l) => p.index_of(l).map_err(|e| CliError::Parse(e.to_string()))?,
        None => 0,
    };
    let mut dense = Vec::new();
    for name in names {
        let set = f
            .sets
            .get(name)
            .ok_or_else(|| CliError::Parse(format!("no set named {name:?}")))?;
        dense.push(DenseSet::new(name.clone(), move |e: &usize| {
            set.contains(e)
        }));
    }
    let r = generic_filter(p, &dense, start, fuel).map_err(generic_error)?;
    let label = |i: &usize| p.label(*i).to_string();
    let g: BTreeSet<usize> = r.filter.iter().copied().collect();
    let met: Vec<String> = r
        .met
        .iter()
        .map(|(id, e)| format!("{id} -> {}", label(e)))
        .collect();
    Ok(Report::new()
        .field("chain", r.chain.iter().map(label).collect::<Vec<_>>())
        .field("met", met)
        .field("filter", g.iter().map(label).collect::<Vec<_>>())
        .field("is_filter", p.is_filter(&g)))
}

fn ad_error(e: AdError) -> CliError {
    match e {
        AdError::UnknownGenerator(_) | AdError::DuplicateGenerator(_) => {
            CliError::Parse(e.to_string())
        }
        AdError::SearchExhausted { .. } | AdError::EmptyDifference { .. } => {
            CliError::Exhausted(e.to_string())
        }
        AdError::NotAlmostDisjoint(..) | AdError::Incompatible(..) => {
            CliError::Violation(e.to_string())
        }
    }
}

fn generator(name: &str, i: Option<u64>) -> Result<SetGen, CliError> {
    match (name, i) {
        ("triangular", Some(i)) => Ok(triangular_family(i)),
        ("triangular", None) => Err(CliError::Parse("--name triangular needs --i".into())),
        (_, Some(_)) => Err(CliError::Parse("--i applies to --name triangular".into())),
        (other, None) => named_generator(other).map_err(ad_error),
    }
}

fn ad(cmd: &AdCmd) -> Result<Report, CliError> {
    match cmd {
        AdCmd::Family { name, i, below } => {
            let g = generator(name, *i)?;
            let members = g.enumerate_below(*below);
            Ok(Report::new()
                .field("id", g.id())
                .field("below", *below)
                .field("count", members.len())
                .field("members", members))
        }
        AdCmd::Check { x, y, below } => {
            let (gx, gy) = (
                named_generator(x).map_err(ad_error)?,
                named_generator(y).map_err(ad_error)?,
            );
            let ev = ad_check(&gx, &gy, *below);
            Ok(Report::new()
                .field("x", gx.id())
                .field("y", gy.id())
                .field("below", *below)
                .field("intersection_size", ev.intersection_size)
                .field("ad_at_bound", ev.ad_at_bound))
        }
        AdCmd::Diagonalize {
            family,
            count,
            below,
        } => {
            let sets: Vec<SetGen> = if family == "triangular" {
                (0..*count as u64).map(triangular_family).collect()
            } else {
                family
                    .split(',')
                    .map(|n| named_generator(n.trim()).map_err(ad_error))
                    .collect::<Result<_, _>>()?
            };
            if *count > sets.len() {
                return Err(CliError::Parse(format!(
                    "--count {count} exceeds the {} listed sets",
                    sets.len()
                )));
            }
            let betas = diagonalize(&sets, *count, *below).map_err(ad_error)?;
            Ok(Report::new()
                .field(
                    "family",
                    sets.iter().map(|s| s.id().to_string()).collect::<Vec<_>>(),
                )
                .field("betas", betas))
        }
        AdCmd::Generic { dense, fuel } => {
            let mut kinds = Vec::new();
            let mut gens: Vec<SetGen> = Vec::new();
            for spec in dense {
                let parts: Vec<&str> = spec.split(':').collect();
                let (kind, name) = match parts.as_slice() {
                    ["dx", name] => (DenseKind::Dx(String::new()), *name),
                    ["eyn", name, n] => {
                        let n: u64 = n
                            .parse()
                            .map_err(|_| CliError::Parse(format!("bad bound in {spec:?}")))?;
                        (DenseKind::Eyn(String::new(), n), *name)
                    }
                    _ => {
                        return Err(CliError::Parse(format!(
                            "bad dense set {spec:?}; expected dx:<name> or eyn:<name>:<n>"
                        )))
                    }
                };
                let g = named_generator(name).map_err(ad_error)?;
                let id = g.id().to_string();
                if !gens.iter().any(|h| h.id() == id) {
                    gens.push(g);
                }
                kinds.push(match kind {
                    DenseKind::Dx(_) => DenseKind::Dx(id),
                    DenseKind::Eyn(_, n) => DenseKind::Eyn(id, n),
                });
            }
            let registry = Registry::new(gens).map_err(ad_error)?;
            let poset = AdPoset::new(registry);
            let sets: Vec<DenseSet<Condition>> =
                kinds.into_iter().map(|k| poset.dense_set(k)).collect();
            let r =
                generic_filter(&poset, &sets, Condition::empty(), *fuel).map_err(generic_error)?;
            let d = extract_d(poset.registry(), &r.filter).map_err(ad_error)?;
            let met: Vec<String> = r.met.iter().map(|(id, c)| format!("{id} -> {c}")).collect();
            Ok(Report::new()
                .field(
                    "chain",
                    r.chain.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                )
                .field("met", met)
                .field("d_G", d.into_iter().collect::<Vec<_>>()))
        }
    }
}
