//! The `sheafgen` command-line front end.
//!
//! Five subcommands over the library:
//!
//! * `table`  — validated Hodge tables for one moduli family;
//! * `verify` — coefficient-by-coefficient identity checks;
//! * `dim`    — the moduli dimension formula;
//! * `fm`     — the lattice transform of a Chern vector, with the canonical
//!   pairing check;
//! * `hilb`   — Hilbert-scheme coefficients.
//!
//! Every command honors `--format {json,csv,pretty}` and `--output FILE`.
//! `--order N` truncates strictly below `q^N` in whole powers of `q`
//! (quarter-steps are internal); it defaults to the `SHEAFGEN_DEFAULT_ORDER`
//! environment variable, then to 8.
//!
//! Exit codes: 0 success; 1 argument errors (including undefined dimensions
//! and non-integral transforms); 2 Hodge validation failure in `table`;
//! 3 `verify` found a mismatch.

use crate::genfun::{
    self, moduli_table, Identity, ModuliTableRow, QStep, TableFamily, VerificationReport,
};
use crate::laurent::LaurentPoly;
use crate::qseries::QExp;
use crate::surface::{ChernVector, DivisorClass, ModuliClass, SurfaceModel};
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;

/// Version tag stamped into every JSON report.
pub const SCHEMA: &str = "sheafgen/1";

const DEFAULT_ORDER: i64 = 8;
const ORDER_ENV: &str = "SHEAFGEN_DEFAULT_ORDER";

#[derive(Parser, Debug)]
#[command(
    name = "sheafgen",
    version,
    about = "Exact Hodge/Betti/Euler generating functions for moduli of sheaves \
             on elliptic ruled surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation order: strictly below q^N in whole powers of q
    /// (default: $SHEAFGEN_DEFAULT_ORDER, then 8)
    #[arg(long, global = true)]
    order: Option<i64>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate validated Hodge tables for one moduli family
    Table {
        /// Moduli family
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Check series identities coefficient-by-coefficient
    Verify {
        /// Identity to check, or `all` in a fixed order
        #[arg(long, value_enum)]
        identity: IdentityArg,
    },
    /// Evaluate the moduli dimension formula
    Dim {
        /// Surface invariant (-1 or 0)
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        /// Sheaf rank
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Determinant "c0,g" in the (C0, g) basis
        #[arg(long, value_parser = parse_divisor, allow_hyphen_values = true)]
        xi: DivisorClass,
        /// Euler characteristic
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
    /// Transform a Chern vector and check the canonical pairing
    Fm {
        /// Surface invariant (-1 or 0)
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        /// Chern vector "r,s,t,a2" with a2 = 2*ch2 (always an integer)
        #[arg(long, value_parser = parse_chern, allow_hyphen_values = true)]
        v: ChernVector,
    },
    /// Print Hilbert-scheme coefficients
    Hilb {
        /// Exponent step: "1" lists e(Hilb^n) at q^n, "1/2" at q^(n/2)
        #[arg(long, value_parser = parse_qstep, default_value = "1")]
        qstep: QStep,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum FamilyArg {
    /// One-dimensional sheaves on the e = -1 surface
    #[value(name = "e-1")]
    EMinus1,
    /// M(0, g+nC0, 1) on the e = 0 surface
    #[value(name = "e0-case1")]
    E0Case1,
    /// M(0, 2g+nC0, 3) on the e = 0 surface
    #[value(name = "e0-case2")]
    E0Case2,
}

impl FamilyArg {
    fn name(self) -> &'static str {
        match self {
            FamilyArg::EMinus1 => "e-1",
            FamilyArg::E0Case1 => "e0-case1",
            FamilyArg::E0Case2 => "e0-case2",
        }
    }
}

impl From<FamilyArg> for TableFamily {
    fn from(f: FamilyArg) -> TableFamily {
        match f {
            FamilyArg::EMinus1 => TableFamily::OneDimensional,
            FamilyArg::E0Case1 => TableFamily::E0Case1,
            FamilyArg::E0Case2 => TableFamily::E0Case2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum IdentityArg {
    Main,
    Theta,
    R2,
    E0,
    Chain,
    All,
}

impl IdentityArg {
    fn identities(self) -> Vec<Identity> {
        match self {
            IdentityArg::Main => vec![Identity::Main],
            IdentityArg::Theta => vec![Identity::Theta],
            IdentityArg::R2 => vec![Identity::R2],
            IdentityArg::E0 => vec![Identity::E0],
            IdentityArg::Chain => vec![Identity::Chain],
            IdentityArg::All => Identity::ALL.to_vec(),
        }
    }
}

fn parse_divisor(s: &str) -> Result<DivisorClass, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"c0,g\", got \"{s}\""));
    }
    let num = |p: &str| p.trim().parse::<i64>().map_err(|e| format!("bad integer \"{p}\": {e}"));
    Ok(DivisorClass::new(num(parts[0])?, num(parts[1])?))
}

fn parse_chern(s: &str) -> Result<ChernVector, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected \"r,s,t,a2\", got \"{s}\""));
    }
    let num = |p: &str| p.trim().parse::<i64>().map_err(|e| format!("bad integer \"{p}\": {e}"));
    Ok(ChernVector::new(num(parts[0])?, num(parts[1])?, num(parts[2])?, num(parts[3])?))
}

fn parse_qstep(s: &str) -> Result<QStep, String> {
    match s {
        "1" => Ok(QStep::Whole),
        "1/2" => Ok(QStep::Half),
        _ => Err(format!("expected \"1\" or \"1/2\", got \"{s}\"")),
    }
}

fn resolve_order(flag: Option<i64>) -> Result<i64, String> {
    let order = match flag {
        Some(n) => n,
        None => match std::env::var(ORDER_ENV) {
            Ok(v) => v
                .trim()
                .parse::<i64>()
                .map_err(|e| format!("{ORDER_ENV}=\"{v}\" is not an integer: {e}"))?,
            Err(_) => DEFAULT_ORDER,
        },
    };
    if order < 1 {
        return Err(format!("order must be >= 1, got {order}"));
    }
    Ok(order)
}

/// Parse `std::env::args`, run the command, and return the process exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests exit 0; real usage errors exit 1
            let code = i32::from(e.use_stderr());
            let _ = e.print();
            return code;
        }
    };
    let order = match resolve_order(cli.order) {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let outcome = match cli.command {
        Command::Table { family } => cmd_table(family, order, cli.format),
        Command::Verify { identity } => cmd_verify(identity, order, cli.format),
        Command::Dim { e, r, xi, chi } => cmd_dim(e, r, xi, chi, cli.format),
        Command::Fm { e, v } => cmd_fm(e, v, cli.format),
        Command::Hilb { qstep } => cmd_hilb(qstep, order, cli.format),
    };
    match outcome {
        Ok((text, code)) => match emit(&cli.output, &text) {
            Ok(()) => code,
            Err(msg) => {
                eprintln!("error: {msg}");
                1
            }
        },
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

type CmdResult = Result<(String, i32), (String, i32)>;

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

/// `xDoubled;yDoubled;coeff` triples joined by `|` — the CSV cell encoding
/// of a Laurent polynomial, numerically identical to its JSON form.
fn poly_csv_cell(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return String::new();
    }
    p.terms()
        .map(|((x, y), c)| format!("{};{};{}", x.doubled, y.doubled, c))
        .collect::<Vec<_>>()
        .join("|")
}

/// Center `row` within `width` columns (favoring the left on odd slack).
fn centered(row: &str, width: usize) -> String {
    let pad = width.saturating_sub(row.len()) / 2;
    format!("{}{row}", " ".repeat(pad))
}

fn hodge_diamond(row: &ModuliTableRow) -> String {
    let dim = row.hodge.dim;
    let rows: Vec<String> = (0..=2 * dim)
        .map(|k| {
            let lo = k.saturating_sub(dim);
            let hi = k.min(dim);
            (lo..=hi)
                .map(|p| row.hodge.h(p, k - p).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let width = rows.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, r) in rows.iter().enumerate() {
        let _ = writeln!(out, "    {:>3} | {}", k, centered(r, width));
    }
    out
}

fn table_row_json(row: &ModuliTableRow) -> serde_json::Value {
    serde_json::json!({
        "qExpQuadrupled": row.q_exp_quadrupled(),
        "dim": row.hodge.dim,
        "euler": row.hodge.euler,
        "betti": row.hodge.betti,
        "hodge": row.hodge.hodge.iter()
            .map(|(&(p, q), &h)| serde_json::json!([p, q, h]))
            .collect::<Vec<_>>(),
        "ePoly": row.e_poly.to_json(),
    })
}

fn cmd_table(family: FamilyArg, order: i64, format: Format) -> CmdResult {
    let rows = match moduli_table(family.into(), 4 * order) {
        Ok(rows) => rows,
        Err(e) => return Err((format!("Hodge validation failed: {e}"), 2)),
    };
    let text = match format {
        Format::Json => json_text(&serde_json::json!({
            "schema": SCHEMA,
            "command": "table",
            "family": family.name(),
            "order": order,
            "rows": rows.iter().map(table_row_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("qExpQuadrupled,dim,euler,betti,hodge,ePoly\n");
            for row in &rows {
                let betti = row
                    .hodge
                    .betti
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join("|");
                let hodge = row
                    .hodge
                    .hodge
                    .iter()
                    .map(|(&(p, q), &h)| format!("{p};{q};{h}"))
                    .collect::<Vec<_>>()
                    .join("|");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    row.q_exp_quadrupled(),
                    row.hodge.dim,
                    row.hodge.euler,
                    betti,
                    hodge,
                    poly_csv_cell(&row.e_poly)
                );
            }
            out
        }
        Format::Pretty => {
            let mut out = format!("family {} to order q^{order}\n", family.name());
            for row in &rows {
                let exp = QExp::quarters(row.q_exp_quadrupled());
                let betti = row
                    .hodge
                    .betti
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(
                    out,
                    "\nq^{exp}: dim {}, euler {}\n  betti {}\n  h^(p,q) by p+q:",
                    row.hodge.dim, row.hodge.euler, betti
                );
                out.push_str(&hodge_diamond(row));
            }
            out
        }
    };
    Ok((text, 0))
}

fn report_pretty(r: &VerificationReport) -> String {
    match &r.first_mismatch {
        None => format!("{}: PASS (order q^{}, {} ms)\n", r.identity, r.order, r.wall_time_ms),
        Some(m) => format!(
            "{}: FAIL at q^{} (order q^{}, {} ms)\n  lhs = {}\n  rhs = {}\n",
            r.identity, m.exp, r.order, r.wall_time_ms, m.lhs, m.rhs
        ),
    }
}

fn cmd_verify(identity: IdentityArg, order: i64, format: Format) -> CmdResult {
    let q_order = QExp::int(order);
    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in identity.identities() {
        match genfun::verify(id, q_order) {
            Ok(r) => reports.push(r),
            // a construction error (failed exact division) falsifies the
            // identity as surely as a mismatching coefficient
            Err(e) => return Err((format!("verification of {id} could not complete: {e}"), 3)),
        }
    }
    let all_passed = reports.iter().all(VerificationReport::passed);
    let code = if all_passed { 0 } else { 3 };
    let text = match format {
        Format::Json => json_text(&serde_json::json!({
            "schema": SCHEMA,
            "command": "verify",
            "order": order,
            "status": if all_passed { "PASS" } else { "FAIL" },
            "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("identity,order,status,firstMismatchExpQuadrupled,wallTimeMs\n");
            for r in &reports {
                let mismatch = r
                    .first_mismatch
                    .as_ref()
                    .map(|m| m.exp.quadrupled.to_string())
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.identity,
                    r.order,
                    if r.passed() { "PASS" } else { "FAIL" },
                    mismatch,
                    r.wall_time_ms
                );
            }
            out
        }
        Format::Pretty => reports.iter().map(report_pretty).collect(),
    };
    Ok((text, code))
}

fn cmd_dim(e: i64, r: i64, xi: DivisorClass, chi: i64, format: Format) -> CmdResult {
    let surface = SurfaceModel::new(e).map_err(|err| (err.to_string(), 1))?;
    let dim = surface
        .dim_moduli(&ModuliClass { r, xi, chi })
        .map_err(|err| (err.to_string(), 1))?;
    let text = match format {
        Format::Json => json_text(&serde_json::json!({
            "schema": SCHEMA,
            "command": "dim",
            "e": e,
            "r": r,
            "xi": { "c0": xi.c0, "g": xi.g },
            "chi": chi,
            "dim": dim,
        })),
        Format::Csv => {
            format!("e,r,xiC0,xiG,chi,dim\n{e},{r},{},{},{chi},{dim}\n", xi.c0, xi.g)
        }
        Format::Pretty => format!("{dim}\n"),
    };
    Ok((text, 0))
}

fn cmd_fm(e: i64, v: ChernVector, format: Format) -> CmdResult {
    let surface = SurfaceModel::new(e).map_err(|err| (err.to_string(), 1))?;
    let image = surface.fourier_mukai(v).map_err(|err| (err.to_string(), 1))?;
    let pairing = if e == -1 {
        let pair = surface.fm_canonical_invariance(v).map_err(|err| (err.to_string(), 1))?;
        if pair.0 != pair.1 {
            return Err((
                format!("canonical pairing not preserved: {} vs {}", pair.0, pair.1),
                1,
            ));
        }
        Some(pair)
    } else {
        None
    };
    let text = match format {
        Format::Json => {
            let mut value = serde_json::json!({
                "schema": SCHEMA,
                "command": "fm",
                "e": e,
                "input": { "r": v.r, "s": v.s, "t": v.t, "a2Doubled": v.a_doubled },
                "image": {
                    "r": image.r, "s": image.s, "t": image.t, "a2Doubled": image.a_doubled,
                },
            });
            if let Some((before, after)) = pairing {
                value["pairing"] = serde_json::json!({ "input": before, "image": after });
            }
            json_text(&value)
        }
        Format::Csv => match pairing {
            Some((before, after)) => format!(
                "e,r,s,t,a2Doubled,imageR,imageS,imageT,imageA2Doubled,pairingInput,pairingImage\n\
                 {e},{},{},{},{},{},{},{},{},{before},{after}\n",
                v.r, v.s, v.t, v.a_doubled, image.r, image.s, image.t, image.a_doubled
            ),
            None => format!(
                "e,r,s,t,a2Doubled,imageR,imageS,imageT,imageA2Doubled\n\
                 {e},{},{},{},{},{},{},{},{}\n",
                v.r, v.s, v.t, v.a_doubled, image.r, image.s, image.t, image.a_doubled
            ),
        },
        Format::Pretty => {
            let mut out = format!("{image}\n");
            if let Some((before, after)) = pairing {
                let _ = writeln!(out, "(c1.K) preserved: {before} -> {after}");
            }
            out
        }
    };
    Ok((text, 0))
}

fn cmd_hilb(qstep: QStep, order: i64, format: Format) -> CmdResult {
    let series = genfun::hilb_series(QExp::int(order), qstep);
    let step_name = match qstep {
        QStep::Whole => "1",
        QStep::Half => "1/2",
    };
    let rows: Vec<(QExp, &LaurentPoly)> = series.terms().collect();
    let text = match format {
        Format::Json => json_text(&serde_json::json!({
            "schema": SCHEMA,
            "command": "hilb",
            "qstep": step_name,
            "order": order,
            "rows": rows.iter().map(|(e, p)| serde_json::json!({
                "qExpQuadrupled": e.quadrupled,
                "ePoly": p.to_json(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("qExpQuadrupled,ePoly\n");
            for (e, p) in &rows {
                let _ = writeln!(out, "{},{}", e.quadrupled, poly_csv_cell(p));
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (e, p) in &rows {
                let _ = writeln!(out, "q^{e}: {p}");
            }
            out
        }
    };
    Ok((text, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_parsing() {
        assert_eq!(parse_divisor("1,0").unwrap(), DivisorClass::new(1, 0));
        assert_eq!(parse_divisor("2,-1").unwrap(), DivisorClass::new(2, -1));
        assert!(parse_divisor("1").is_err());
        assert!(parse_divisor("1,x").is_err());
    }

    #[test]
    fn chern_parsing_takes_doubled_last_field() {
        assert_eq!(parse_chern("1,0,0,0").unwrap(), ChernVector::new(1, 0, 0, 0));
        // the point class: a2 = 2, i.e. ch2 = 1
        assert_eq!(parse_chern("0,0,0,2").unwrap(), ChernVector::new(0, 0, 0, 2));
        assert_eq!(parse_chern("2,1,-1,3").unwrap(), ChernVector::new(2, 1, -1, 3));
        assert!(parse_chern("1,2,3").is_err());
        assert!(parse_chern("1,2,3,x").is_err());
    }

    #[test]
    fn qstep_parsing() {
        assert_eq!(parse_qstep("1").unwrap(), QStep::Whole);
        assert_eq!(parse_qstep("1/2").unwrap(), QStep::Half);
        assert!(parse_qstep("2").is_err());
    }

    #[test]
    fn order_resolution_bounds() {
        assert_eq!(resolve_order(Some(4)).unwrap(), 4);
        assert!(resolve_order(Some(0)).is_err());
        assert!(resolve_order(Some(-3)).is_err());
    }

    #[test]
    fn diamond_renders_by_antidiagonal() {
        let rows = moduli_table(TableFamily::OneDimensional, 2).unwrap();
        let diamond = hodge_diamond(&rows[0]);
        let lines: Vec<&str> = diamond.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].ends_with("1"));
        assert!(lines[2].contains("1 4 1"));
        assert!(lines[4].trim_start().starts_with("4 |"));
    }

    #[test]
    fn csv_cells_hold_doubled_triples() {
        let p = LaurentPoly::from_doubled(&[(0, 0, 1), (2, 2, -3)]);
        assert_eq!(poly_csv_cell(&p), "0;0;1|2;2;-3");
        assert_eq!(poly_csv_cell(&LaurentPoly::zero()), "");
    }

    #[test]
    fn command_line_shape_parses() {
        let cli = Cli::try_parse_from([
            "sheafgen", "table", "--family", "e-1", "--order", "4", "--format", "json",
        ])
        .unwrap();
        assert_eq!(cli.order, Some(4));
        assert_eq!(cli.format, Format::Json);
        match cli.command {
            Command::Table { family } => assert_eq!(family, FamilyArg::EMinus1),
            _ => panic!("expected table"),
        }

        let cli = Cli::try_parse_from([
            "sheafgen", "dim", "--e", "-1", "--r", "0", "--xi", "1,0", "--chi", "1",
        ])
        .unwrap();
        match cli.command {
            Command::Dim { e, r, xi, chi } => {
                assert_eq!((e, r, xi, chi), (-1, 0, DivisorClass::new(1, 0), 1));
            }
            _ => panic!("expected dim"),
        }

        assert!(Cli::try_parse_from(["sheafgen", "table", "--family", "bogus"]).is_err());
    }
}
