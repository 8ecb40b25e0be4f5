use std::fmt::Write as _;
use std::path::Path;

use linkhom::diagram::{component_class, crossings, validate, Strand};
use linkhom::group::{canonical_form, coorientable, coorientable_bruteforce, reversing_commutant, GroupElement, GroupId};
use linkhom::invariants::{applicability, i2, lk1, lk1_via_path, Applicability, ManifoldDescriptor, CONVENTION};
use linkhom::moves::{events, random_script_with, run_script, ApplyMode, FuzzConfig, MoveScript};
use linkhom::resolution::{config_distance, subordinate, Configuration};
use linkhom::LinkDiagram;
use serde_json::{json, Value};

use crate::error::{check_groups, read_json, CliError};
use crate::{Cli, Command, Result, SurfaceArg};

pub struct Output {
    pub json: Value,
    pub text: String,
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classify { input } => classify(&load_diagram(cli, input)?),
        Command::Coorient { alpha, beta, bound } => coorient(word_group(cli), alpha, beta, *bound),
        Command::CanonPair { alpha, beta } => canon_pair(word_group(cli), alpha, beta),
        Command::Lk { input } => lk(&load_diagram(cli, input)?),
        Command::I2 { moves } => run_i2(&load_script(cli, moves)?),
        Command::Events { moves } => list_events(&load_script(cli, moves)?),
        Command::Fuzz { input, seed, scripts, length, events } => {
            let config = FuzzConfig { events: *events, ..FuzzConfig::default() };
            fuzz(&load_diagram(cli, input)?, *seed, *scripts, *length, config)
        }
        Command::Distance { first, second } => distance(&read_json(first)?, &read_json(second)?),
        Command::Applicability { manifold, class1, class2 } => check_applicability(manifold, class1, class2),
    }
}

fn word_group(cli: &Cli) -> GroupId {
    cli.surface.unwrap_or(SurfaceArg::Klein).surface().group()
}

fn check_surface(cli: &Cli, d: &LinkDiagram, prefix: &str) -> Result<()> {
    if let Some(s) = cli.surface {
        if s.surface() != d.surface {
            return Err(CliError::Malformed(format!(
                "at {prefix}surface: file says {}, --surface says {}",
                d.surface.group(),
                s.surface().group()
            )));
        }
    }
    check_groups(d, prefix)
}

fn load_diagram(cli: &Cli, path: &Path) -> Result<LinkDiagram> {
    let d: LinkDiagram = read_json(path)?;
    check_surface(cli, &d, "")?;
    validate(&d)?;
    Ok(d)
}

fn load_script(cli: &Cli, path: &Path) -> Result<MoveScript> {
    let s: MoveScript = read_json(path)?;
    check_surface(cli, &s.initial, "initial.")?;
    validate(&s.initial)?;
    Ok(s)
}

fn classify(d: &LinkDiagram) -> Result<Output> {
    let cs = crossings(d)?;
    let mut text = String::new();
    let mut comps = serde_json::Map::new();
    for which in [Strand::One, Strand::Two] {
        let class = component_class(d, which);
        let closure = d.component(which).closure;
        writeln!(text, "{which}: closure {closure}, free class {class}").unwrap();
        comps.insert(
            which.to_string(),
            json!({ "closure": closure, "freeClass": class, "contractible": class.is_identity() }),
        );
    }
    for c in &cs {
        let sign = c.signature().sign.map_or("mod 2".to_string(), |s| format!("{s:+}"));
        writeln!(text, "crossing {}: {} over, code {}, sign {sign}", c.site, c.over, c.code).unwrap();
    }
    let json = json!({
        "surface": d.surface,
        "components": comps,
        "crossings": cs,
        "convention": CONVENTION,
    });
    Ok(Output { json, text })
}

fn coorient(group: GroupId, alpha: &str, beta: &str, bound: Option<i64>) -> Result<Output> {
    let (a, b) = (group.parse_word(alpha)?, group.parse_word(beta)?);
    let answer = coorientable(&a, &b)?;
    let witness = reversing_commutant(&a, &b)?;
    let mut json = json!({ "coorientable": answer, "witness": witness.map(|w| w.to_string()) });
    let mut text = match witness {
        Some(w) => format!("({a}, {b}): not coorientable; {w} reverses orientation and commutes with both\n"),
        None => format!("({a}, {b}): coorientable\n"),
    };
    if let Some(bound) = bound {
        let brute = coorientable_bruteforce(&a, &b, bound)?;
        if brute != answer {
            return Err(CliError::Mismatch(format!(
                "closed form says {answer}, search up to {bound} says {brute} for ({a}, {b})"
            )));
        }
        json["bruteForce"] = json!({ "bound": bound, "agrees": true });
        writeln!(text, "brute force up to {bound} agrees").unwrap();
    }
    Ok(Output { json, text })
}

fn canon_pair(group: GroupId, alpha: &str, beta: &str) -> Result<Output> {
    let (a, b) = (group.parse_word(alpha)?, group.parse_word(beta)?);
    let (class, conj) = canonical_form(&a, &b)?;
    let json = json!({
        "alpha": class.alpha.to_string(),
        "beta": class.beta.to_string(),
        "coorientable": class.coorientable,
        "conjugator": conj.to_string(),
    });
    let text = format!("{class} = conjugate of ({a}, {b}) by {conj}; coorientable: {}\n", class.coorientable);
    Ok(Output { json, text })
}

fn lk(d: &LinkDiagram) -> Result<Output> {
    let v = lk1(d)?;
    let json = json!({ "value": v, "display": v.to_string(), "convention": CONVENTION });
    let text = format!("lk1 = {v}\nconvention: {CONVENTION}\n");
    Ok(Output { json, text })
}

fn run_i2(s: &MoveScript) -> Result<Output> {
    let value = i2(s)?;
    let count = events(s)?.len();
    let json = json!({ "i2": value, "events": count, "convention": CONVENTION });
    let text = format!("i2 = {value} ({count} events)\nconvention: {CONVENTION}\n");
    Ok(Output { json, text })
}

fn list_events(s: &MoveScript) -> Result<Output> {
    let ev = events(s)?;
    let mut text = String::new();
    let records: Vec<Value> = ev
        .iter()
        .map(|e| {
            writeln!(text, "move {}: crossing {}, {} over after, sign {:+}, code {}", e.move_index, e.site, e.over_after, e.sign, e.code)
                .unwrap();
            json!({
                "moveIndex": e.move_index,
                "site": e.site,
                "sign": e.sign,
                "overAfter": e.over_after,
                "rawAlpha": e.raw_alpha,
                "rawBeta": e.raw_beta,
                "code": e.code,
            })
        })
        .collect();
    let path = lk1_via_path(s)?;
    writeln!(text, "path sum: {path}\nconvention: {CONVENTION}").unwrap();
    let json = json!({ "events": records, "pathSum": path, "convention": CONVENTION });
    Ok(Output { json, text })
}

fn fuzz(d: &LinkDiagram, seed: u64, scripts: usize, length: usize, config: FuzzConfig) -> Result<Output> {
    let start = lk1(d)?;
    let mut cases = Vec::with_capacity(scripts);
    let mut text = String::new();
    for index in 0..scripts {
        let case_seed = seed.wrapping_add(index as u64);
        let s = random_script_with(d, length, case_seed, config)?;
        let (end, ev) = run_script(&s, ApplyMode::Checked)?;
        let end_value = lk1(&end)?;
        let path = lk1_via_path(&s)?;
        let jump = end_value.sub(&start)?;
        if path != jump {
            return Err(CliError::Mismatch(format!(
                "case {index} (seed {case_seed}): path sum {path} but lk1 changed by {jump}"
            )));
        }
        writeln!(text, "case {index}: seed {case_seed}, {} moves, {} events, lk1 {end_value}", s.moves.len(), ev.len())
            .unwrap();
        cases.push(json!({
            "index": index,
            "seed": case_seed,
            "moves": s.moves.len(),
            "events": ev.len(),
            "lk1Final": end_value,
            "pathSum": path,
        }));
    }
    writeln!(text, "all {scripts} cases consistent; lk1 initial {start}").unwrap();
    let json = json!({ "lk1Initial": start, "cases": cases, "consistent": true, "convention": CONVENTION });
    Ok(Output { json, text })
}

fn distance(c1: &Configuration, c2: &Configuration) -> Result<Output> {
    let d = config_distance(c1, c2);
    let json = json!({
        "distance": d.to_string(),
        "complexity": [c1.complexity(), c2.complexity()],
        "firstSubordinate": subordinate(c1, c2),
        "secondSubordinate": subordinate(c2, c1),
    });
    let text = format!("distance {d} (turns); complexities {} and {}\n", c1.complexity(), c2.complexity());
    Ok(Output { json, text })
}

fn check_applicability(manifold: &str, class1: &str, class2: &str) -> Result<Output> {
    let m = ManifoldDescriptor::preset(manifold).ok_or_else(|| {
        let keys: Vec<&str> = ManifoldDescriptor::presets().iter().map(|(k, _)| *k).collect();
        CliError::Malformed(format!("unknown manifold '{manifold}', expected one of {}", keys.join(", ")))
    })?;
    let (c1, c2): (GroupElement, GroupElement) = (m.group.parse_word(class1)?, m.group.parse_word(class2)?);
    let verdict = applicability(&m, &c1, &c2)?;
    let text = match &verdict {
        Applicability::Guaranteed { reason } => format!("{}: guaranteed ({reason:?})\n", m.name),
        Applicability::NotGuaranteed { explanation } => format!("{}: not guaranteed; {explanation}\n", m.name),
    };
    let json = json!({ "manifold": m, "classes": [c1.to_string(), c2.to_string()], "applicability": verdict });
    Ok(Output { json, text })
}
