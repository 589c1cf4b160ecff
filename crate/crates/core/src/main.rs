//! Command-line front end: lattice inspection, invariant-lattice and
//! theta-image queries, group cohomology, and the full reproduction
//! report. Exit codes: 0 success (and no mismatched claim), 1 at least
//! one mismatched claim, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use kummerlat::cohomology::{cohomology, v_table};
use kummerlat::kummer::{disc_census, k3_kummer_model, kummer_lattice, nikulin_lattice};
use kummerlat::lattice::{standard_lattice, Lattice, StandardKind};
use kummerlat::quotient::{
    fixed_lattice, p_dual, p_lattice, surjectivity_defect, theta_image, TranslationSubgroup,
};
use kummerlat::report::{build_report, LatticeSummary};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "kummerlat",
    version,
    about = "Exact lattice computations for Kummer surfaces: invariant lattices, theta images, \
             discriminant forms and integral group cohomology"
)]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    /// Print human-readable text (the default)
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Summary,
    Gram,
    Basis,
}

#[derive(Subcommand)]
enum Command {
    /// Run every tabulated identity and print a reproduction report
    Report,

    /// Invariant lattice of a translation subgroup, with its complement,
    /// dual complement, theta image and surjectivity defect
    Fixed {
        /// Doubled coordinates, e.g. "1,2" for the rank-two subgroup
        #[arg(long)]
        group: String,

        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,

        /// Show the branch-curve complement P instead
        #[arg(long)]
        p: bool,

        /// Show the dual of P instead
        #[arg(long = "p-dual")]
        p_dual: bool,

        /// Show the theta image of the dual of P instead
        #[arg(long)]
        theta: bool,

        /// Print only the index of the theta image in the invariant lattice
        #[arg(long)]
        defect: bool,
    },

    /// Inspect a standard lattice, e.g. "U(2)" or "U+U+U+E8(-1)+E8(-1)"
    Lattice {
        kind: String,

        #[arg(long, value_enum, default_value_t = Format::Summary)]
        format: Format,
    },

    /// The Kummer lattice (default), the Nikulin lattice, the
    /// 22-generator model, or the discriminant census
    Kummer {
        /// Tally the quadratic form over all 64 discriminant classes
        #[arg(long)]
        census: bool,

        /// Show the rank-8 Nikulin lattice instead
        #[arg(long)]
        nikulin: bool,

        /// Show the 22-generator model instead
        #[arg(long)]
        model: bool,
    },

    /// Integral cohomology of a finite abelian group, e.g. "2,2,2"
    Cohomology {
        /// Comma-separated cyclic orders, each at least 2
        orders: String,

        /// Cohomological degree
        #[arg(long)]
        degree: usize,

        /// Also compare degree 3 against the tabulated V values
        #[arg(long = "v-table")]
        v_table: bool,
    },
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    2
}

fn print_lattice(l: &Lattice, format: Format, json: bool) {
    let summary = LatticeSummary::of(l);
    if json {
        let text = match format {
            Format::Summary => serde_json::to_string_pretty(&summary),
            Format::Gram => serde_json::to_string_pretty(&summary.gram),
            Format::Basis => serde_json::to_string_pretty(&summary.basis),
        };
        println!("{}", text.expect("payload serializes"));
        return;
    }
    match format {
        Format::Summary => {
            println!("rank         {}", summary.rank);
            println!(
                "signature    ({},{},{})",
                summary.signature.0, summary.signature.1, summary.signature.2
            );
            println!("determinant  {}", summary.determinant);
            println!("even         {}", summary.even);
            println!("unimodular   {}", summary.unimodular);
            if summary.discriminant.is_empty() {
                println!("discriminant trivial");
            } else {
                println!("discriminant Z/{}", summary.discriminant.join(" + Z/"));
            }
            if !summary.q_values.is_empty() {
                println!("q values     {}", summary.q_values.join(", "));
            }
        }
        Format::Gram => {
            for row in &summary.gram {
                println!("[{}]", row.join(", "));
            }
        }
        Format::Basis => {
            for row in &summary.basis {
                println!("[{}]", row.join(", "));
            }
        }
    }
}

/// Parses standard-lattice expressions: terms `U`, `U(n)`, `rank1(m)`,
/// `<m>`, `E8(-1)` and `lambda_k3`, joined by `+`.
fn parse_kind(text: &str) -> Result<StandardKind, String> {
    fn parse_term(term: &str) -> Result<StandardKind, String> {
        let t = term.trim().to_lowercase();
        if t == "u" {
            return Ok(StandardKind::U(1));
        }
        if t == "e8(-1)" || t == "e8neg" {
            return Ok(StandardKind::E8Neg);
        }
        if t == "lambda_k3" || t == "lambdak3" || t == "k3" {
            return Ok(StandardKind::LambdaK3);
        }
        let scaled = |prefix: &str| -> Option<Result<i64, String>> {
            let rest = t.strip_prefix(prefix)?;
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            Some(inner.trim().parse::<i64>().map_err(|_| format!("bad scale in {term:?}")))
        };
        if let Some(n) = scaled("u") {
            return Ok(StandardKind::U(n?));
        }
        if let Some(m) = scaled("rank1") {
            return Ok(StandardKind::Rank1(m?));
        }
        if let Some(inner) = t.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            let m = inner.trim().parse::<i64>().map_err(|_| format!("bad scale in {term:?}"))?;
            return Ok(StandardKind::Rank1(m));
        }
        Err(format!(
            "unknown lattice term {term:?}; expected U, U(n), rank1(m), <m>, E8(-1) or lambda_k3"
        ))
    }
    let terms: Result<Vec<StandardKind>, String> = text.split('+').map(parse_term).collect();
    let mut terms = terms?;
    Ok(if terms.len() == 1 { terms.remove(0) } else { StandardKind::Sum(terms) })
}

#[derive(Serialize)]
struct DefectPayload {
    group: String,
    defect: String,
}

#[derive(Serialize)]
struct CensusPayload {
    zero: usize,
    q0: usize,
    q1: usize,
}

#[derive(Serialize)]
struct CohomologyPayload {
    group: String,
    degree: usize,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    v_table: Option<VTablePayload>,
}

#[derive(Serialize)]
struct VTablePayload {
    tabulated: String,
    computed: String,
    agrees: bool,
}

fn run(cli: Cli) -> i32 {
    let json = cli.json;
    match cli.command {
        Command::Report => {
            let doc = build_report();
            if json {
                println!("{}", doc.to_json());
            } else {
                print!("{}", doc.render_text());
            }
            i32::from(doc.has_mismatch())
        }

        Command::Fixed { group, format, p, p_dual: pd, theta, defect } => {
            let group = match TranslationSubgroup::parse(&group) {
                Ok(g) => g,
                Err(e) => return usage_error(&e.to_string()),
            };
            if [p, pd, theta, defect].iter().filter(|&&f| f).count() > 1 {
                return usage_error("choose at most one of --p, --p-dual, --theta, --defect");
            }
            if defect {
                let value = match surjectivity_defect(&group) {
                    Ok(v) => v,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 1;
                    }
                };
                if json {
                    let payload = DefectPayload {
                        group: group
                            .coords()
                            .iter()
                            .map(u8::to_string)
                            .collect::<Vec<_>>()
                            .join(","),
                        defect: value.to_string(),
                    };
                    println!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
                } else {
                    println!("{value}");
                }
                return 0;
            }
            let lattice = if p {
                p_lattice(&group)
            } else if pd {
                p_dual(&group)
            } else if theta {
                match theta_image(&group) {
                    Ok(l) => l,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 1;
                    }
                }
            } else {
                fixed_lattice(&group)
            };
            print_lattice(&lattice, format, json);
            0
        }

        Command::Lattice { kind, format } => {
            let kind = match parse_kind(&kind) {
                Ok(k) => k,
                Err(e) => return usage_error(&e),
            };
            let l = match standard_lattice(&kind) {
                Ok(l) => l,
                Err(e) => return usage_error(&e.to_string()),
            };
            print_lattice(&l, format, json);
            0
        }

        Command::Kummer { census, nikulin, model } => {
            if [census, nikulin, model].iter().filter(|&&f| f).count() > 1 {
                return usage_error("choose at most one of --census, --nikulin, --model");
            }
            if census {
                let c = match disc_census(&kummer_lattice()) {
                    Ok(c) => c,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 1;
                    }
                };
                if json {
                    let payload = CensusPayload { zero: c.zero, q0: c.q0, q1: c.q1 };
                    println!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
                } else {
                    println!("zero classes: {}", c.zero);
                    println!("q = 0:        {}", c.q0);
                    println!("q = 1:        {}", c.q1);
                }
                return 0;
            }
            let l = if nikulin {
                nikulin_lattice()
            } else if model {
                k3_kummer_model()
            } else {
                kummer_lattice()
            };
            print_lattice(&l, Format::Summary, json);
            0
        }

        Command::Cohomology { orders, degree, v_table: with_table } => {
            let parsed: Result<Vec<u64>, _> =
                orders.split(',').map(|t| t.trim().parse::<u64>()).collect();
            let Ok(parsed) = parsed else {
                return usage_error(&format!("cannot parse cyclic orders {orders:?}"));
            };
            if parsed.iter().any(|&n| n < 2) {
                return usage_error("every cyclic order must be at least 2");
            }
            let value = match cohomology(&parsed, degree) {
                Ok(v) => v,
                Err(e) => return usage_error(&e.to_string()),
            };
            let table = if with_table {
                match v_table(&parsed) {
                    Ok(row) => Some(row),
                    Err(e) => return usage_error(&e.to_string()),
                }
            } else {
                None
            };
            if json {
                let payload = CohomologyPayload {
                    group: kummerlat::abelian::FGAbelianGroup::from_cyclic_orders(&parsed)
                        .to_string(),
                    degree,
                    value: value.to_string(),
                    v_table: table.map(|row| VTablePayload {
                        tabulated: row.tabulated.to_string(),
                        computed: row.computed.to_string(),
                        agrees: row.agrees,
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
            } else {
                println!("{value}");
                if let Some(row) = table {
                    println!(
                        "V table: tabulated {} / computed {} ({})",
                        row.tabulated,
                        row.computed,
                        if row.agrees { "agree" } else { "disagree" }
                    );
                }
            }
            0
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_parser() {
        assert!(matches!(parse_kind("U"), Ok(StandardKind::U(1))));
        assert!(matches!(parse_kind("u(2)"), Ok(StandardKind::U(2))));
        assert!(matches!(parse_kind("rank1(-2)"), Ok(StandardKind::Rank1(-2))));
        assert!(matches!(parse_kind("<-8>"), Ok(StandardKind::Rank1(-8))));
        assert!(matches!(parse_kind("E8(-1)"), Ok(StandardKind::E8Neg)));
        assert!(matches!(parse_kind("lambda_k3"), Ok(StandardKind::LambdaK3)));
        let sum = parse_kind("U(2)+U(2)+U(2)").unwrap();
        assert!(matches!(sum, StandardKind::Sum(ref v) if v.len() == 3));
        assert!(parse_kind("Q").is_err());
        assert!(parse_kind("U(x)").is_err());
    }
}
