//! `lab` subcommands.

use chainlab_core::lab::{self, LabOptions};
use serde_json::json;

use crate::error::{CliResult, ExitCode};
use crate::spec::parse_system;
use crate::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LabCheck {
    Parseval,
    Projections,
    Minimality,
    Intertwiners,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(check: LabCheck, system: &str, options: &LabOptions) -> CliResult<Report> {
    let sys = parse_system(system)?;
    let header = format!(
        "system: {system} (|G| = {}, n = {}, dim F = {}); seed {}; {} samples; tol {:e}\n",
        sys.group().order(),
        sys.n(),
        sys.algebra().dim(),
        options.seed,
        options.samples,
        options.tolerance
    );
    match check {
        LabCheck::Parseval => {
            let r = lab::parseval_sweep(&sys, options);
            let text = format!(
                "{header}parseval: max residual {:.3e}; reconstruction: max residual {:.3e}; {}\n",
                r.max_parseval,
                r.max_reconstruction,
                verdict(r.passed())
            );
            let result = json!({
                "max_parseval_residual": r.max_parseval,
                "max_reconstruction_residual": r.max_reconstruction,
                "samples": r.samples,
                "tolerance": r.tolerance,
            });
            Ok(Report::from_check(text, result, r.passed(), ExitCode::Residual))
        }
        LabCheck::Projections => {
            let p = lab::projection_report(&sys, options);
            let b = lab::norm_bound_check(&sys, options);
            let pass = p.passed() && b.passed();
            let mut text = format!(
                "{header}orthogonality {:.3e}; completeness {:.3e}; module {:.3e}; symmetry {:.3e}\n",
                p.orthogonality, p.completeness, p.module, p.symmetry
            );
            for (d, (ratio, bound)) in b.operator_ratios.iter().enumerate() {
                text.push_str(&format!(
                    "irrep {d}: max ||Pi F||/||F|| = {ratio:.4} (bound {bound:.4}); max |Pi F|_A/|F|_A = {:.4}\n",
                    b.a_ratios[d]
                ));
            }
            text.push_str(&format!("norm-bound violations: {}; {}\n", b.violations, verdict(pass)));
            let result = json!({
                "orthogonality": p.orthogonality,
                "completeness": p.completeness,
                "module": p.module,
                "symmetry": p.symmetry,
                "operator_ratios": b.operator_ratios.iter().map(|(r, bound)| json!({"max_ratio": r, "bound": bound})).collect::<Vec<_>>(),
                "a_ratios": b.a_ratios,
                "norm_bound_violations": b.violations,
                "samples": options.samples,
                "tolerance": options.tolerance,
            });
            Ok(Report::from_check(text, result, pass, ExitCode::Residual))
        }
        LabCheck::Minimality => {
            let m = lab::minimality(&sys);
            let text = format!(
                "{header}dim A = {}; dim A'nF = {}; dim Z(A) = {}; minimal: {}\n",
                m.dim_a,
                m.dim_relative_commutant,
                m.dim_center,
                if m.minimal() { "yes" } else { "no" }
            );
            let result = json!({
                "dim_f": m.dim_f,
                "dim_a": m.dim_a,
                "dim_relative_commutant": m.dim_relative_commutant,
                "dim_center": m.dim_center,
                "minimal": m.minimal(),
            });
            Ok(Report::pass(text, result))
        }
        LabCheck::Intertwiners => {
            let r = lab::disjointness_report(&sys, options)?;
            let mut text = header;
            for (d, phi) in r.hilbert_spaces.iter().enumerate() {
                text.push_str(&format!(
                    "H_{d}: {}\n",
                    if phi.is_some() { "unitary found" } else { "absent" }
                ));
            }
            for &(d, e, dim) in &r.pairs {
                text.push_str(&format!("dim (rho_{d}, rho_{e}) = {dim}\n"));
            }
            text.push_str(&format!(
                "minimal: {}; disjoint: {}; biconditional: {}\n",
                if r.minimal() { "yes" } else { "no" },
                if r.disjoint() { "yes" } else { "no" },
                if !r.applicable() {
                    "not applicable"
                } else if r.biconditional_holds() {
                    "holds"
                } else {
                    "FAILS"
                }
            ));
            let result = json!({
                "hilbert_spaces": r.hilbert_spaces.iter().map(Option::is_some).collect::<Vec<_>>(),
                "pairs": r.pairs.iter().map(|&(d, e, dim)| json!([d, e, dim])).collect::<Vec<_>>(),
                "applicable": r.applicable(),
                "minimal": r.minimal(),
                "disjoint": r.disjoint(),
                "biconditional_holds": r.biconditional_holds(),
            });
            Ok(Report::from_check(text, result, r.biconditional_holds(), ExitCode::Theorem))
        }
    }
}
