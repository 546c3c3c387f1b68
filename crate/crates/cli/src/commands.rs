//! The algebraic subcommands: group, chartable, fusion, chain, lie and
//! center-action.

use chainlab_core::center_action::{
    action_on_center, composition_consistency, CenterModel, ChainHomomorphism, CompositionCheck, MultiplicityVector,
};
use chainlab_core::chain::{chain_group, eta_check_with};
use chainlab_core::chartable::character_table;
use chainlab_core::fusion::{compute_fusion, FUSION_TOLERANCE};
use chainlab_core::group::Permutation;
use chainlab_core::lie::{lie_chain_classes, LieFamily};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult, ExitCode};
use crate::format::{complex, complex_json, table};
use crate::spec::{irrep_names, parse_group};
use crate::Report;

fn names_list(names: &[String], members: &[usize]) -> String {
    members.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(", ")
}

pub fn group(spec: &str) -> CliResult<Report> {
    let g = parse_group(spec)?.group;
    let sizes = g.class_sizes();
    let center = g.center();
    let text = format!(
        "order: {}\nclasses: {} (sizes {})\ncenter: {}\nabelian: {}\n",
        g.order(),
        g.class_count(),
        sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(", "),
        names_list(g.names(), &center),
        if g.is_abelian() { "yes" } else { "no" }
    );
    let result = json!({
        "order": g.order(),
        "names": g.names(),
        "mul": g.table(),
        "classes": g.classes(),
        "center": center,
        "abelian": g.is_abelian(),
    });
    Ok(Report::pass(text, result))
}

pub fn chartable(spec: &str) -> CliResult<Report> {
    let parsed = parse_group(spec)?;
    let t = character_table(&parsed.group)?;
    let g = t.group();
    let names = irrep_names(&parsed, &t);
    let mut rows = vec![std::iter::once(String::new())
        .chain(g.classes().iter().map(|c| format!("{}[{}]", g.name(c[0]), c.len())))
        .collect::<Vec<_>>()];
    for (i, irrep) in t.irreps().iter().enumerate() {
        rows.push(
            std::iter::once(names[i].clone())
                .chain(irrep.values.iter().map(|&z| complex(z)))
                .collect(),
        );
    }
    let result = json!({
        "dims": t.dims(),
        "names": names,
        "classes": g.classes().iter().map(|c| c.iter().map(|&x| g.name(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "values": t.irreps().iter().map(|r| r.values.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "residual": crate::format::clean(t.residual()),
    });
    Ok(Report::pass(table(&rows), result))
}

pub fn fusion(spec: &str, pair: Option<(usize, usize)>, tol: Option<f64>) -> CliResult<Report> {
    let parsed = parse_group(spec)?;
    let t = character_table(&parsed.group)?;
    let names = irrep_names(&parsed, &t);
    let computed = compute_fusion(&t, tol.unwrap_or(FUSION_TOLERANCE))?;
    let ring = &computed.ring;
    let r = ring.rank();
    let pairs: Vec<(usize, usize)> = match pair {
        Some((i, j)) => {
            if i >= r || j >= r {
                return Err(CliError::parse(format!("--pair {i} {j}: irreps are numbered 0..{}", r - 1)));
            }
            vec![(i, j)]
        }
        None => (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect(),
    };
    let mut text = String::new();
    let mut sparse = Vec::new();
    for &(i, j) in &pairs {
        let terms: Vec<String> = ring
            .support(i, j)
            .iter()
            .map(|&k| match ring.n(i, j, k) {
                1 => names[k].clone(),
                n => format!("{n} {}", names[k]),
            })
            .collect();
        text.push_str(&format!("{} x {} = {}\n", names[i], names[j], terms.join(" + ")));
    }
    let full: Vec<(usize, usize)> = match pair {
        Some(p) => vec![p],
        None => (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect(),
    };
    for (i, j) in full {
        for &k in ring.support(i, j) {
            sparse.push(json!([i, j, k, ring.n(i, j, k)]));
        }
    }
    let violations = ring.axiom_violations(0);
    let result = json!({
        "rank": r,
        "names": names,
        "dims": ring.dims(),
        "conj": (0..r).map(|i| ring.conj(i)).collect::<Vec<_>>(),
        "coefficients": sparse,
        "max_rounding_residual": computed.max_residual,
        "axiom_violations": violations,
    });
    if violations.is_empty() {
        Ok(Report::pass(text, result))
    } else {
        text.push_str(&format!("axiom violations: {}\n", violations.join("; ")));
        Ok(Report::fail(text, result, ExitCode::Theorem))
    }
}

pub fn chain(spec: &str) -> CliResult<Report> {
    let parsed = parse_group(spec)?;
    let t = character_table(&parsed.group)?;
    let names = irrep_names(&parsed, &t);
    let ring = compute_fusion(&t, FUSION_TOLERANCE)?.ring;
    let chain = chain_group(&ring)?;
    let cert = eta_check_with(&t, &chain)?;
    let g = t.group();
    let mut text = format!("classes: {}; group: {}; eta: OK\n", chain.order(), chain.structure());
    for (c, members) in chain.classes().iter().enumerate() {
        text.push_str(&format!("[{c}] {}\n", names_list(&names, members)));
    }
    text.push_str("eta pairing (class x central element):\n");
    let mut rows = vec![std::iter::once(String::new())
        .chain(cert.center.iter().map(|&z| g.name(z).to_string()))
        .collect::<Vec<_>>()];
    for (c, row) in cert.pairing.iter().enumerate() {
        rows.push(std::iter::once(format!("[{c}]")).chain(row.iter().map(|&z| complex(z))).collect());
    }
    text.push_str(&table(&rows));
    let result = json!({
        "classes": chain.classes(),
        "class_names": chain.classes().iter().map(|m| m.iter().map(|&i| names[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "product": chain.product_table(),
        "identity_class": chain.identity_class(),
        "inverse": (0..chain.order()).map(|c| chain.inverse(c)).collect::<Vec<_>>(),
        "invariant_factors": chain.invariant_factors(),
        "structure": chain.structure(),
        "eta": {
            "ok": true,
            "center": cert.center.iter().map(|&z| g.name(z)).collect::<Vec<_>>(),
            "pairing": cert.pairing.iter().map(|r| r.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "class_to_dual": cert.class_to_dual,
        },
    });
    Ok(Report::pass(text, result))
}

pub fn lie(family: &str, lmax: u32) -> CliResult<Report> {
    let family = LieFamily::parse(family).map_err(|e| CliError::parse(e.to_string()))?;
    let r = lie_chain_classes(family, lmax)?;
    let pass = r.stable && r.invariant_is_homomorphism;
    let mut text = format!(
        "{} L_max={}: {} classes ({}); {}; stable: {}\n",
        family.name(),
        lmax,
        r.class_count(),
        r.invariant,
        r.group,
        if pass { "yes" } else { "no" }
    );
    let mut classes = Vec::new();
    for (c, members) in r.partition.classes().iter().enumerate() {
        let labels: Vec<String> = members.iter().map(|&i| r.labels[i].to_string()).collect();
        text.push_str(&format!("[{}] {}\n", r.class_keys[c], labels.join(" ")));
        classes.push(json!({"key": r.class_keys[c], "labels": labels}));
    }
    let result = json!({
        "family": family.name(),
        "lmax": lmax,
        "class_count": r.class_count(),
        "invariant": r.invariant,
        "group": r.group.to_string(),
        "stable": r.stable,
        "invariant_is_homomorphism": r.invariant_is_homomorphism,
        "classes": classes,
    });
    Ok(if pass {
        Report::pass(text, result)
    } else {
        Report::fail(text, result, ExitCode::Mismatch)
    })
}

/// Splits at commas outside parentheses.
fn top_level_items(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn key_value<'a>(item: &'a str, what: &str) -> CliResult<(usize, &'a str)> {
    let (k, v) = item
        .split_once(':')
        .ok_or_else(|| CliError::parse(format!("{what} entry {item:?} must look like key:value")))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("{what} entry {item:?}: bad index")))?;
    Ok((k, v.trim()))
}

pub struct CenterActionArgs<'a> {
    pub spec: &'a str,
    pub gamma: usize,
    pub hom: &'a str,
    pub lambda: &'a str,
    pub z: Option<&'a str>,
}

pub fn center_action(args: &CenterActionArgs<'_>) -> CliResult<Report> {
    let parsed = parse_group(args.spec)?;
    let t = character_table(&parsed.group)?;
    let names = irrep_names(&parsed, &t);
    let ring = compute_fusion(&t, FUSION_TOLERANCE)?.ring;
    let chain = chain_group(&ring)?;
    let model = CenterModel::new(args.gamma)?;
    let assignments = top_level_items(args.hom)
        .into_iter()
        .map(|item| {
            let (class, cycles) = key_value(item, "--hom")?;
            Ok((class, Permutation::parse_cycles(cycles, args.gamma)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let h = ChainHomomorphism::from_assignments(chain, model, &assignments)?;
    let lambda = MultiplicityVector::new(
        top_level_items(args.lambda)
            .into_iter()
            .map(|item| {
                let (irrep, m) = key_value(item, "--lambda")?;
                let m: u64 = m
                    .parse()
                    .map_err(|_| CliError::parse(format!("--lambda entry {item:?}: bad multiplicity")))?;
                Ok((irrep, m))
            })
            .collect::<CliResult<Vec<_>>>()?,
    );
    if lambda.is_empty() {
        return Err(CliError::parse("--lambda must have a positive total multiplicity"));
    }
    let z: Vec<Complex64> = match args.z {
        Some(text) => text
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map(|x| Complex64::new(x, 0.0))
                    .map_err(|_| CliError::parse(format!("--z value {v:?} is not a number")))
            })
            .collect::<CliResult<_>>()?,
        None => model.indicator(0),
    };
    let r = action_on_center(&lambda, &h, &ring, &z)?;
    let d = lambda.dimension(&ring)?;
    let composition = composition_consistency(&lambda, &lambda, &h, &ring, &z)?;
    let pass = r.total_weight() == d && composition.is_consistent();
    let mut text = format!(
        "d(lambda) = {d}; {} class entries; central: {}\n",
        r.entries.len(),
        if r.central { "yes" } else { "no" }
    );
    for e in &r.entries {
        let members = names_list(&names, &h.chain().classes()[e.class]);
        let values: Vec<String> = e.function.iter().map(|&v| complex(v)).collect();
        text.push_str(&format!("[{}] {{{members}}} weight {}: ({})\n", e.class, e.weight, values.join(", ")));
    }
    let composition_json = match &composition {
        CompositionCheck::Consistent => json!({"consistent": true}),
        CompositionCheck::Inconsistent(c) => json!({"consistent": false, "counterexample": c.description}),
    };
    if let CompositionCheck::Inconsistent(c) = &composition {
        text.push_str(&format!("composition check failed: {}\n", c.description));
    }
    let result = json!({
        "dimension": d,
        "central": r.central,
        "entries": r.entries.iter().map(|e| json!({
            "class": e.class,
            "weight": e.weight,
            "function": e.function.iter().map(|&v| complex_json(v)).collect::<Vec<Value>>(),
        })).collect::<Vec<_>>(),
        "composition": composition_json,
    });
    Ok(if pass {
        Report::pass(text, result)
    } else {
        Report::fail(text, result, ExitCode::Theorem)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_items() {
        assert_eq!(top_level_items("1:(1 2),2:(1 2)(3 4)"), vec!["1:(1 2)", "2:(1 2)(3 4)"]);
        assert_eq!(top_level_items(""), Vec::<&str>::new());
    }

    #[test]
    fn chain_text_header() {
        let r = chain("D:8").unwrap();
        assert!(r.text.starts_with("classes: 2; group: Z2; eta: OK\n"));
        assert!(r.text.contains("[1] D1\n"));
    }
}
