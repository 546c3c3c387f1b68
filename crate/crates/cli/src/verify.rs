//! `verify-all`: recomputes every chain-group value of the reference table
//! and compares it with the expected value.

use std::thread;

use chainlab_core::chain::{chain_group, eta_check_with};
use chainlab_core::chartable::analytic::{dihedral_characters, label_irreps};
use chainlab_core::chartable::character_table;
use chainlab_core::fusion::fusion_coefficients;
use chainlab_core::group::FiniteGroup;
use chainlab_core::lie::{lie_chain_classes, LieFamily};
use serde_json::json;

use crate::error::{CliResult, ExitCode};
use crate::format::table;
use crate::spec::parse_group;
use crate::Report;

#[derive(Debug, Clone)]
enum Job {
    Finite { spec: String, expected: String, dihedral_classes: Option<usize> },
    Pair { l: usize },
    Lie { family: LieFamily, expected: String },
}

#[derive(Debug, Clone)]
pub struct Row {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn jobs() -> Vec<(String, Job)> {
    let mut out = Vec::new();
    let finite = |spec: String, expected: &str, dihedral_classes| Job::Finite {
        spec,
        expected: expected.to_string(),
        dihedral_classes,
    };
    for m in 3..=12 {
        let spec = format!("D:{}", 2 * m);
        let expected = if m % 2 == 0 { "Z2" } else { "trivial" };
        let classes = (m % 2 == 0 && m >= 4).then_some(m);
        out.push((format!("dihedral/{spec}"), finite(spec, expected, classes)));
    }
    for m in 2..=6 {
        let spec = format!("Q:{}", 4 * m);
        out.push((format!("quaternion/{spec}"), finite(spec, "Z2", None)));
    }
    out.push(("symmetric/S:3".into(), finite("S:3".into(), "trivial", None)));
    out.push(("symmetric/S:4".into(), finite("S:4".into(), "trivial", None)));
    out.push(("alternating/A:4".into(), finite("A:4".into(), "trivial", None)));
    for n in 2..=12 {
        let spec = format!("C:{n}");
        out.push((format!("cyclic/{spec}"), finite(spec, &format!("Z{n}"), None)));
    }
    for l in 1..=3 {
        out.push((format!("dihedral-quaternion/{}", 8 * l), Job::Pair { l }));
    }
    for (family, expected) in [
        (LieFamily::SU2, "Z2 (integer / half-integer)"),
        (LieFamily::SO3, "trivial (single class)"),
        (LieFamily::O3, "Z2 (keyed by epsilon)"),
        (LieFamily::U2, "Z (keyed by m)"),
    ] {
        out.push((format!("lie/{}", family.name()), Job::Lie { family, expected: expected.into() }));
    }
    out
}

fn chain_of(g: &FiniteGroup) -> CliResult<(String, Vec<Vec<usize>>, chainlab_core::chartable::CharacterTable)> {
    let t = character_table(g)?;
    let chain = chain_group(&fusion_coefficients(&t)?)?;
    eta_check_with(&t, &chain)?;
    Ok((chain.structure(), chain.classes().to_vec(), t))
}

/// Orders `1`, `chi1..chi3`, `D1, D2, ..` the way they are written by hand.
fn name_key(name: &str) -> (u8, usize) {
    let index = |rest: &str| rest.parse().unwrap_or(usize::MAX);
    if name == "1" {
        (0, 0)
    } else if let Some(k) = name.strip_prefix("chi") {
        (1, index(k))
    } else if let Some(k) = name.strip_prefix('D') {
        (2, index(k))
    } else {
        (3, 0)
    }
}

/// Class memberships expected for the dihedral group of order `2m`, `m` even.
fn dihedral_memberships(m: usize) -> String {
    let top = (m - 2) / 2;
    let ds = |parity: usize| (1..=top).filter(|k| k % 2 == parity).map(|k| format!("D{k}")).collect::<Vec<_>>();
    let (mut a, mut b): (Vec<String>, Vec<String>) = if (m / 2) % 2 == 0 {
        (vec!["1".into(), "chi1".into(), "chi2".into(), "chi3".into()], vec![])
    } else {
        (vec!["1".into(), "chi1".into()], vec!["chi2".into(), "chi3".into()])
    };
    a.extend(ds(0));
    b.extend(ds(1));
    format!("{{{}}} {{{}}}", a.join(","), b.join(","))
}

fn run_job(id: String, job: &Job, lmax: u32) -> Row {
    let outcome: CliResult<(String, String)> = (|| match job {
        Job::Finite { spec, expected, dihedral_classes } => {
            let g = parse_group(spec)?.group;
            let (structure, classes, t) = chain_of(&g)?;
            let mut computed = format!("{structure}; eta OK");
            let mut expected = format!("{expected}; eta OK");
            if let Some(m) = dihedral_classes {
                let names = label_irreps(&t, &dihedral_characters(*m), 1e-9)?;
                let mut sets: Vec<String> = classes
                    .iter()
                    .map(|c| {
                        let mut members: Vec<&String> = c.iter().map(|&i| &names[i]).collect();
                        members.sort_by_key(|n| name_key(n));
                        format!("{{{}}}", members.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(","))
                    })
                    .collect();
                sets.sort_by_key(|s| !s.starts_with("{1,"));
                computed.push_str(&format!("; {}", sets.join(" ")));
                expected.push_str(&format!("; {}", dihedral_memberships(*m)));
            }
            Ok((expected, computed))
        }
        Job::Pair { l } => {
            let d = chain_group(&fusion_coefficients(&character_table(&parse_group(&format!("D:{}", 8 * l))?.group)?)?)?;
            let q = chain_group(&fusion_coefficients(&character_table(&parse_group(&format!("Q:{}", 8 * l))?.group)?)?)?;
            Ok((
                "[2] = [2]".to_string(),
                format!("{:?} = {:?}", d.invariant_factors(), q.invariant_factors()),
            ))
        }
        Job::Lie { family, expected } => {
            let r = lie_chain_classes(*family, lmax)?;
            let mut computed = format!("{} ({})", r.group, r.invariant);
            if !(r.stable && r.invariant_is_homomorphism) {
                computed.push_str("; unstable");
            }
            Ok((expected.clone(), computed))
        }
    })();
    match outcome {
        Ok((expected, computed)) => Row {
            pass: expected == computed,
            id,
            expected,
            computed,
        },
        Err(e) => Row {
            id,
            expected: String::new(),
            computed: format!("error: {e}"),
            pass: false,
        },
    }
}

/// Runs the selected rows on a small worker pool; row order is fixed.
pub fn rows(only: Option<&str>, lmax: u32) -> Vec<Row> {
    let selected: Vec<(String, Job)> = jobs()
        .into_iter()
        .filter(|(id, _)| only.is_none_or(|p| id.contains(p)))
        .collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(selected.len().max(1));
    let mut results: Vec<Option<Row>> = vec![None; selected.len()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let selected = &selected;
                s.spawn(move || {
                    selected
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, (id, job))| (i, run_job(id.clone(), job, lmax)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, row) in h.join().expect("verify-all worker panicked") {
                results[i] = Some(row);
            }
        }
    });
    results.into_iter().map(|r| r.expect("every row computed")).collect()
}

pub fn run(only: Option<&str>, lmax: u32) -> CliResult<Report> {
    let rows = rows(only, lmax);
    let failed = rows.iter().filter(|r| !r.pass).count();
    let mut grid = vec![vec!["row".to_string(), "expected".into(), "computed".into(), "status".into()]];
    for r in &rows {
        grid.push(vec![
            r.id.clone(),
            r.expected.clone(),
            r.computed.clone(),
            if r.pass { "ok" } else { "MISMATCH" }.into(),
        ]);
    }
    let mut text = table(&grid);
    text.push_str(&format!("{} rows, {} passed, {failed} failed\n", rows.len(), rows.len() - failed));
    let result = json!({
        "rows": rows.iter().map(|r| json!({
            "id": r.id,
            "expected": r.expected,
            "computed": r.computed,
            "pass": r.pass,
        })).collect::<Vec<_>>(),
        "failed": failed,
    });
    Ok(Report::from_check(text, result, failed == 0, ExitCode::Mismatch))
}
