//! Group-spec and system-spec mini-languages.
//!
//! Group specs: `D:8` (dihedral of order 8), `Q:8` (quaternion of order 8),
//! `S:4`, `A:4` (degree), `C:6` or `Z:6` (cyclic), `file:path.json`,
//! `perm:(1 2),(1 2 3)`, and products `C:2*S:3`. The colon may be dropped
//! for the lettered families (`D8`, `S4`).

use std::fs;

use chainlab_core::chartable::analytic::{
    cyclic_characters, dihedral_characters, label_irreps, quaternion_characters, NamedCharacter,
};
use chainlab_core::chartable::CharacterTable;
use chainlab_core::group::{
    alternating, cyclic, dihedral, direct_product, from_permutations, parse_generator_list, quaternion, symmetric,
    FiniteGroup, DEFAULT_CLOSURE_CAP,
};
use chainlab_core::lab::{MatrixDynamicalSystem, Subalgebra};
use chainlab_core::linalg::CMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{CliError, CliResult, ExitCode};

/// Family tag used to pick closed-form irrep names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Dihedral(usize),
    Quaternion(usize),
    Cyclic(usize),
    Other,
}

#[derive(Debug, Clone)]
pub struct ParsedGroup {
    pub group: FiniteGroup,
    pub family: Family,
}

#[derive(Deserialize)]
struct GroupFile {
    order: usize,
    mul: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

fn number(text: &str, what: &str) -> CliResult<usize> {
    text.trim()
        .parse()
        .map_err(|_| CliError::parse(format!("{what}: expected a number, got {text:?}")))
}

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new(ExitCode::Io, format!("{path}: {e}")))
}

pub fn parse_group(spec: &str) -> CliResult<ParsedGroup> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("file:") {
        let file: GroupFile = serde_json::from_str(&read(path)?)
            .map_err(|e| CliError::parse(format!("{path}: {e}")))?;
        if file.mul.len() != file.order {
            return Err(CliError::parse(format!(
                "{path}: order {} but {} table rows",
                file.order,
                file.mul.len()
            )));
        }
        let group = FiniteGroup::from_table(file.mul, file.names)?;
        return Ok(ParsedGroup { group, family: Family::Other });
    }
    if let Some(gens) = spec.strip_prefix("perm:") {
        let gens = gens.trim().trim_matches(|c| c == '"' || c == '\'');
        let perms = parse_generator_list(gens)?;
        let group = from_permutations(&perms, DEFAULT_CLOSURE_CAP)?;
        return Ok(ParsedGroup { group, family: Family::Other });
    }
    if spec.contains('*') {
        let mut parts = spec.split('*');
        let first = parse_group(parts.next().unwrap_or_default())?;
        let group = parts.try_fold(first.group, |acc, p| -> CliResult<FiniteGroup> {
            Ok(direct_product(&acc, &parse_group(p)?.group))
        })?;
        return Ok(ParsedGroup { group, family: Family::Other });
    }
    let (letter, rest) = spec.split_at(spec.chars().next().map_or(0, char::len_utf8));
    let arg = rest.strip_prefix(':').unwrap_or(rest);
    if arg.is_empty() {
        return Err(CliError::parse(format!("group spec {spec:?} is missing its size")));
    }
    let n = number(arg, spec)?;
    match letter.to_ascii_uppercase().as_str() {
        "D" => {
            if n < 4 || n % 2 != 0 {
                return Err(CliError::parse(format!("D:{n}: dihedral order must be even and at least 4")));
            }
            Ok(ParsedGroup { group: dihedral(n / 2), family: Family::Dihedral(n / 2) })
        }
        "Q" => {
            if n < 8 || n % 4 != 0 {
                return Err(CliError::parse(format!(
                    "Q:{n}: quaternion order must be a multiple of 4 and at least 8"
                )));
            }
            Ok(ParsedGroup { group: quaternion(n / 4), family: Family::Quaternion(n / 4) })
        }
        "C" | "Z" => {
            if n == 0 {
                return Err(CliError::parse("cyclic order must be positive"));
            }
            let family = if n >= 2 { Family::Cyclic(n) } else { Family::Other };
            Ok(ParsedGroup { group: cyclic(n), family })
        }
        "S" => Ok(ParsedGroup { group: symmetric(n)?, family: Family::Other }),
        "A" => Ok(ParsedGroup { group: alternating(n)?, family: Family::Other }),
        _ => Err(CliError::parse(format!(
            "unknown group spec {spec:?}; expected D:n, Q:n, S:n, A:n, C:n, file:path or perm:cycles"
        ))),
    }
}

/// Display names for the irreps of `table`: closed-form names for the
/// dihedral, quaternion and cyclic families, `rho<i>` otherwise, with the
/// trivial irrep always called `1`.
pub fn irrep_names(parsed: &ParsedGroup, table: &CharacterTable) -> Vec<String> {
    let named: Option<Vec<NamedCharacter>> = match parsed.family {
        Family::Dihedral(m) => Some(dihedral_characters(m)),
        Family::Quaternion(m) => Some(quaternion_characters(m)),
        Family::Cyclic(n) => Some(cyclic_characters(n)),
        Family::Other => None,
    };
    if let Some(names) = named.and_then(|n| label_irreps(table, &n, 1e-9).ok()) {
        return names;
    }
    (0..table.rank())
        .map(|i| if i == 0 { "1".to_string() } else { format!("rho{i}") })
        .collect()
}

#[derive(Deserialize)]
struct SystemFile {
    generators: Vec<Vec<Vec<[f64; 2]>>>,
    blocks: Option<Vec<usize>>,
}

fn matrix(rows: &[Vec<[f64; 2]>]) -> CliResult<CMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::parse("generator matrices must be square and nonempty"));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
}

/// System specs: `regular:<group-spec>`, `swap-blocks:k`, `sign-diag`,
/// `trivial:<group-spec>:n`, `file:path.json` or an inline JSON object
/// `{"generators": [[[[re, im], ...], ...], ...], "blocks": [k1, k2]}`.
pub fn parse_system(spec: &str) -> CliResult<MatrixDynamicalSystem> {
    let spec = spec.trim();
    if let Some(g) = spec.strip_prefix("regular:") {
        return Ok(MatrixDynamicalSystem::regular(parse_group(g)?.group)?);
    }
    if let Some(k) = spec.strip_prefix("swap-blocks:") {
        return Ok(MatrixDynamicalSystem::swap_blocks(number(k, spec)?)?);
    }
    if spec == "swap-blocks" {
        return Ok(MatrixDynamicalSystem::swap_blocks(2)?);
    }
    if spec == "sign-diag" {
        return Ok(MatrixDynamicalSystem::sign_diagonal()?);
    }
    if let Some(rest) = spec.strip_prefix("trivial:") {
        let (g, n) = rest
            .rsplit_once(':')
            .ok_or_else(|| CliError::parse("trivial:<group-spec>:<n> expected"))?;
        return Ok(MatrixDynamicalSystem::trivial_action(parse_group(g)?.group, number(n, spec)?)?);
    }
    let text = if let Some(path) = spec.strip_prefix("file:") {
        read(path)?
    } else if spec.starts_with('{') {
        spec.to_string()
    } else {
        return Err(CliError::parse(format!(
            "unknown system spec {spec:?}; expected regular:<group>, swap-blocks:k, sign-diag, trivial:<group>:n, file:path or JSON"
        )));
    };
    let file: SystemFile = serde_json::from_str(&text).map_err(|e| CliError::parse(format!("system JSON: {e}")))?;
    let generators = file.generators.iter().map(|g| matrix(g)).collect::<CliResult<Vec<_>>>()?;
    let n = generators.first().map(CMatrix::nrows).ok_or_else(|| CliError::parse("no generators"))?;
    let algebra = match file.blocks {
        Some(blocks) => {
            if blocks.iter().sum::<usize>() != n {
                return Err(CliError::parse(format!("block sizes {blocks:?} do not add up to {n}")));
            }
            Subalgebra::block_diagonal(&blocks)?
        }
        None => Subalgebra::full(n),
    };
    Ok(MatrixDynamicalSystem::from_generators(&generators, algebra, DEFAULT_CLOSURE_CAP)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_specs() {
        assert_eq!(parse_group("D:8").unwrap().group.order(), 8);
        assert_eq!(parse_group("D8").unwrap().family, Family::Dihedral(4));
        assert_eq!(parse_group("Q:12").unwrap().family, Family::Quaternion(3));
        assert_eq!(parse_group("S:4").unwrap().group.order(), 24);
        assert_eq!(parse_group("A:4").unwrap().group.order(), 12);
        assert_eq!(parse_group("C:6").unwrap().group.order(), 6);
        assert_eq!(parse_group("Z:1").unwrap().group.order(), 1);
        assert_eq!(parse_group("C:2*S:3").unwrap().group.order(), 12);
        assert_eq!(parse_group("perm:\"(1 2),(1 2 3)\"").unwrap().group.order(), 6);
    }

    #[test]
    fn bad_specs() {
        for bad in ["D:7", "Q:6", "X:3", "D", "C:x", "S:9", "perm:(1 2", "C:0"] {
            assert_eq!(parse_group(bad).unwrap_err().code, ExitCode::Parse, "{bad}");
        }
        assert_eq!(parse_group("file:/nonexistent.json").unwrap_err().code, ExitCode::Io);
    }

    #[test]
    fn system_specs() {
        assert_eq!(parse_system("regular:S3").unwrap().n(), 6);
        assert_eq!(parse_system("swap-blocks:2").unwrap().n(), 4);
        assert_eq!(parse_system("sign-diag").unwrap().n(), 2);
        let inline = r#"{"generators": [[[[0,0],[1,0]],[[1,0],[0,0]]]]}"#;
        assert_eq!(parse_system(inline).unwrap().group().order(), 2);
        let blocks = r#"{"generators": [[[[1,0],[0,0]],[[0,0],[-1,0]]]], "blocks": [1, 1]}"#;
        assert_eq!(parse_system(blocks).unwrap().algebra().dim(), 2);
        assert_eq!(parse_system("swap:2").unwrap_err().code, ExitCode::Parse);
    }
}
