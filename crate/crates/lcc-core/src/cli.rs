//! Command-line front end: classification, lambda statistics, the
//! completeness oracle, polynomial queries, certified bounds, and
//! generators, with deterministic output and a versioned JSON schema.

use crate::bounds::{self, RationalInterval};
use crate::classify::{
    classify_group_lambda, classify_rho, finite_instances, DescriptorKind, Rho,
};
use crate::error::Error;
use crate::fdg::{evaluate, parse_spec, FdgSpec};
use crate::ffpoly::{enum_irreducible, enum_primitive, parse_poly};
use crate::fpmatrix::companion;
use crate::{abelian, oracle, prng, rat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::json;

/// Output schema version for `--json` files.
pub const SCHEMA_VERSION: u32 = 1;

/// Runs the command line; returns the exit status and the full output.
/// Status 0 means success and, for `oracle` and `bounds`, that every
/// check passed.
pub fn run(args: &[String]) -> (i32, String) {
    match dispatch(args) {
        Ok(CmdOutput { text, failed_checks }) => {
            if failed_checks {
                (1, text)
            } else {
                (0, text)
            }
        }
        Err(CmdError::Usage(msg)) => (2, format!("usage error: {msg}\n{USAGE}")),
        Err(CmdError::Lib(e)) => (1, format!("error: {e}\n")),
        Err(CmdError::Io(e)) => (1, format!("io error: {e}\n")),
    }
}

const USAGE: &str = "\
usage:
  lcc classify --rho a/b [--group-level] [--expand-max-order N] [--json FILE]
  lcc lambda (--group \"Z2^2 x Z4\" | --spec \"V(x^2+x+1@2) * M(3,2)\") [--affine] [--decimal K]
  lcc oracle [--max-order N]
  lcc poly (order|irreducible|primitive|factor|companion) \"POLY\"
  lcc poly enum P D [--all]
  lcc bounds --certify (rho0|rho1|anlem|gaps|all) [--decimal K] [--denom-log2 N]
  lcc prng lcg M A C SEED [--count N] [--certify] [--period-cap N]
  lcc prng vec P \"POLY\" SEED [--count N] [--certify] [--period-cap N]
";

struct CmdOutput {
    text: String,
    failed_checks: bool,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        CmdOutput { text, failed_checks: false }
    }
}

enum CmdError {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError::Lib(e)
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

/// Flag scanner: subcommand positionals first, then --flags.
struct Args<'a> {
    positional: Vec<&'a str>,
    flags: Vec<(&'a str, Option<&'a str>)>,
}

fn scan_args<'a>(args: &'a [String], value_flags: &[&str]) -> Result<Args<'a>, CmdError> {
    let mut positional = Vec::new();
    let mut flags = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = args[i].as_str();
        if let Some(name) = a.strip_prefix("--") {
            if value_flags.contains(&name) {
                let value = args
                    .get(i + 1)
                    .ok_or_else(|| CmdError::Usage(format!("--{name} needs a value")))?;
                flags.push((name, Some(value.as_str())));
                i += 2;
            } else {
                flags.push((name, None));
                i += 1;
            }
        } else {
            positional.push(a);
            i += 1;
        }
    }
    Ok(Args { positional, flags })
}

impl<'a> Args<'a> {
    fn flag_value(&self, name: &str) -> Option<&'a str> {
        self.flags
            .iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, v)| *v)
    }

    fn has_flag(&self, name: &str) -> bool {
        self.flags.iter().any(|(n, _)| *n == name)
    }

    fn parsed_flag<T: std::str::FromStr>(&self, name: &str) -> Result<Option<T>, CmdError> {
        match self.flag_value(name) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CmdError::Usage(format!("bad value for --{name}: '{v}'"))),
        }
    }
}

fn orbit_cap() -> u64 {
    std::env::var("LCC_ORBIT_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(abelian::ORBIT_CAP)
}

fn dispatch(args: &[String]) -> Result<CmdOutput, CmdError> {
    let Some(cmd) = args.first() else {
        return Err(CmdError::Usage("missing subcommand".to_string()));
    };
    let rest = &args[1..];
    match cmd.as_str() {
        "classify" => cmd_classify(rest),
        "lambda" => cmd_lambda(rest),
        "oracle" => cmd_oracle(rest),
        "poly" => cmd_poly(rest),
        "bounds" => cmd_bounds(rest),
        "prng" => cmd_prng(rest),
        other => Err(CmdError::Usage(format!("unknown subcommand '{other}'"))),
    }
}

fn cmd_classify(args: &[String]) -> Result<CmdOutput, CmdError> {
    let a = scan_args(args, &["rho", "expand-max-order", "json"])?;
    let rho_str = a
        .flag_value("rho")
        .ok_or_else(|| CmdError::Usage("classify needs --rho a/b".to_string()))?;
    let rho = Rho::parse(rho_str)?;
    let result = if a.has_flag("group-level") {
        classify_group_lambda(rho)?
    } else {
        classify_rho(rho)?
    };
    let mut out = String::new();
    out.push_str(&format!("rho: {rho}\n"));
    out.push_str(&format!("descriptors: {}\n", result.descriptors.len()));
    if let Some(reason) = &result.empty_reason {
        out.push_str(&format!("empty: {reason}\n"));
    }
    for (i, d) in result.descriptors.iter().enumerate() {
        out.push_str(&format!(
            "[{}] {}\n    lambda: {}  classes: {}  lambda-maximal: {}\n",
            i + 1,
            d.spec_template,
            fmt_rat(&d.lambda),
            d.witness_count,
            if d.lambda_maximal { "yes" } else { "no" }
        ));
        for side in &d.side_conditions {
            out.push_str(&format!("    where: {side}\n"));
        }
        if a.has_flag("group-level") {
            if let Some(group) = crate::classify::descriptor_group(&d.kind, 2)? {
                out.push_str(&format!("    group: {group}\n"));
            }
        }
    }
    if let Some(bound) = a.parsed_flag::<u64>("expand-max-order")? {
        out.push_str(&format!("expansion (order <= {bound}):\n"));
        for d in &result.descriptors {
            for spec in expand_descriptor(&d.kind, bound)? {
                out.push_str(&format!("  {spec}\n"));
            }
        }
    }
    if let Some(path) = a.flag_value("json") {
        let doc = json_result(&result);
        std::fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable"))?;
        out.push_str(&format!("json written: {path}\n"));
    }
    Ok(CmdOutput::ok(out))
}

fn json_result(result: &crate::classify::ClassificationResult) -> serde_json::Value {
    let descriptors: Vec<serde_json::Value> = result
        .descriptors
        .iter()
        .map(|d| {
            json!({
                "kind": match &d.kind {
                    DescriptorKind::Finite { .. } => "finite",
                    DescriptorKind::CyclicFamily { .. } => "infinite_family",
                    DescriptorKind::SpecialTwo(_) => "finite",
                    DescriptorKind::Nonabelian(_) => "infinite_family",
                },
                "spec": d.spec_template,
                "side_conditions": d.side_conditions,
                "lambda": fmt_rat(&d.lambda),
                "lambda_maximal": d.lambda_maximal,
                "witness_count": d.witness_count.to_string(),
            })
        })
        .collect();
    json!({
        "version": SCHEMA_VERSION,
        "rho": result.rho.to_string(),
        "empty_reason": result.empty_reason,
        "descriptors": descriptors,
    })
}

/// Concrete members of any descriptor with group order at most `bound`.
fn expand_descriptor(kind: &DescriptorKind, bound: u64) -> Result<Vec<String>, CmdError> {
    let mut out = Vec::new();
    match kind {
        DescriptorKind::Finite { .. } => {
            if crate::classify::descriptor_min_order(kind) <= bound as u128 {
                for spec in finite_instances(kind)? {
                    out.push(spec.to_string());
                }
            }
        }
        DescriptorKind::SpecialTwo(_) => {
            if crate::classify::descriptor_min_order(kind) <= bound as u128 {
                for spec in finite_instances_special(kind)? {
                    out.push(spec);
                }
            }
        }
        DescriptorKind::CyclicFamily { two_degrees, p } => {
            let two_order: u64 = 1 << two_degrees.iter().sum::<u32>();
            let mut m = 2u32;
            while let Some(order) = p
                .checked_pow(m)
                .and_then(|pm| pm.checked_mul(two_order))
                .filter(|&o| o <= bound)
            {
                let _ = order;
                let mut slots: Vec<Vec<String>> = Vec::new();
                for &d in two_degrees {
                    slots.push(
                        enum_primitive(2, d)?
                            .into_iter()
                            .map(|poly| FdgSpec::VPoly { poly }.to_string())
                            .collect(),
                    );
                }
                let roots = crate::numtheory::primitive_roots(*p, m)?;
                slots.push(
                    roots
                        .into_iter()
                        .map(|g| format!("M({},{g})", p.pow(m)))
                        .collect(),
                );
                let mut combos: Vec<String> = vec![String::new()];
                for slot in slots {
                    let mut next = Vec::new();
                    for c in &combos {
                        for s in &slot {
                            next.push(if c.is_empty() {
                                s.clone()
                            } else {
                                format!("{c} * {s}")
                            });
                        }
                    }
                    combos = next;
                }
                out.extend(combos);
                m += 1;
            }
        }
        DescriptorKind::Nonabelian(family) => {
            use crate::classify::NonabelianFamily as F;
            let valid_m = |n: u64, m: u64, mod4: bool| -> bool {
                crate::numtheory::factor(n)
                    .map(|f| f.primes().all(|p| m % p == 1))
                    .unwrap_or(false)
                    && (!mod4 || n % 4 != 0 || m % 4 == 1)
            };
            match family {
                F::Dihedral => {
                    for n in 3..=bound / 2 {
                        for m in 0..n {
                            if valid_m(n, m, true) {
                                out.push(format!("Dih({n},{m})"));
                            }
                        }
                    }
                }
                F::Dicyclic => {
                    for n in (4..=bound / 2).step_by(2) {
                        for m in 0..n {
                            if valid_m(n, m, true) {
                                out.push(format!("Dic({n},{m})"));
                            }
                        }
                    }
                }
                F::KleinDihedral => {
                    for o in (3..=bound / 8).step_by(2) {
                        for m in 0..o {
                            if valid_m(o, m, false) {
                                out.push(format!("DK({o},{m})"));
                            }
                        }
                    }
                }
                F::KleinDicyclic => {
                    for o in (3..=bound / 8).step_by(2) {
                        for m in 0..o {
                            if valid_m(o, m, false) {
                                out.push(format!("DicK({o},{m})"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn finite_instances_special(kind: &DescriptorKind) -> Result<Vec<String>, CmdError> {
    use crate::classify::SpecialTwoClass as S;
    let DescriptorKind::SpecialTwo(class) = kind else {
        return Ok(vec![]);
    };
    Ok(vec![match class {
        S::Z2Identity => "M(2,1)".to_string(),
        S::Z4Neg => "M(4,3)".to_string(),
        S::Z2xZ4 => "GA(Z2 x Z4;[[1,1],[2,1]])".to_string(),
        S::Jordan2 => "V(x^2+1@2)".to_string(),
        S::Jordan3 => "V(x^3+x^2+x+1@2)".to_string(),
    }])
}

fn cmd_lambda(args: &[String]) -> Result<CmdOutput, CmdError> {
    let a = scan_args(args, &["group", "spec", "decimal"])?;
    let decimal: Option<u32> = a.parsed_flag("decimal")?;
    let mut out = String::new();
    match (a.flag_value("group"), a.flag_value("spec")) {
        (Some(group_str), None) => {
            let group = abelian::parse_group(group_str)?;
            let stats = if a.has_flag("affine") {
                abelian::lambda_aff_group(&group)?
            } else {
                abelian::lambda_group(&group)?
            };
            out.push_str(&format!("group: {group}\n"));
            out.push_str(&format!("order: {}\n", group.order()?));
            let label = if a.has_flag("affine") { "lambda_aff" } else { "lambda" };
            out.push_str(&format!("{label}: {}\n", fmt_rat(&stats.lambda)));
            out.push_str(&format!("Lambda: {}\n", stats.lambda_big));
            out.push_str(&format!("cycles: {}\n", stats.witness));
            if let Some(k) = decimal {
                out.push_str(&format!("decimal: {}\n", rat_decimal(&stats.lambda, k)));
            }
        }
        (None, Some(spec_str)) => {
            let spec = parse_spec(spec_str)?;
            let map = evaluate(&spec, orbit_cap())?;
            let cs = map.cycle_structure()?;
            out.push_str(&format!("spec: {spec}\n"));
            out.push_str(&format!("order: {}\n", map.size()));
            out.push_str(&format!("lambda: {}\n", fmt_rat(&cs.lambda())));
            out.push_str(&format!("Lambda: {}\n", cs.lambda_big()));
            out.push_str(&format!("cycles: {cs}\n"));
            if let Some(k) = decimal {
                out.push_str(&format!("decimal: {}\n", rat_decimal(&cs.lambda(), k)));
            }
        }
        _ => {
            return Err(CmdError::Usage(
                "lambda needs exactly one of --group or --spec".to_string(),
            ))
        }
    }
    Ok(CmdOutput::ok(out))
}

fn cmd_oracle(args: &[String]) -> Result<CmdOutput, CmdError> {
    let a = scan_args(args, &["max-order"])?;
    let max_order: u64 = a.parsed_flag("max-order")?.unwrap_or(200);
    let outcome = oracle::completeness_sweep(max_order)?;
    let mut out = String::new();
    out.push_str(&format!(
        "oracle sweep to order {}: {} group types, {} lambda values, {} matched pairs\n",
        outcome.max_order, outcome.groups_checked, outcome.rho_values, outcome.pairs_matched
    ));
    for p in &outcome.problems {
        out.push_str(&format!("MISMATCH: {p}\n"));
    }
    let failed = !outcome.problems.is_empty();
    out.push_str(if failed { "oracle: FAIL\n" } else { "oracle: PASS\n" });
    Ok(CmdOutput { text: out, failed_checks: failed })
}

fn cmd_poly(args: &[String]) -> Result<CmdOutput, CmdError> {
    let a = scan_args(args, &[])?;
    let mut out = String::new();
    match a.positional.as_slice() {
        [op, poly_str] => {
            let poly = parse_poly(poly_str)?;
            match *op {
                "order" => out.push_str(&format!("{}\n", poly.order()?)),
                "irreducible" => {
                    out.push_str(if poly.is_irreducible()? { "yes\n" } else { "no\n" })
                }
                "primitive" => {
                    out.push_str(if poly.is_primitive()? { "yes\n" } else { "no\n" })
                }
                "factor" => {
                    for (p, k) in poly.factor()? {
                        out.push_str(&format!("{p} ^ {k}\n"));
                    }
                }
                "companion" => {
                    let c = companion(&poly)?;
                    for row in c.rows() {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        out.push_str(&format!("[{}]\n", cells.join(" ")));
                    }
                }
                other => {
                    return Err(CmdError::Usage(format!("unknown poly operation '{other}'")))
                }
            }
        }
        ["enum", p, d] => {
            let p: u64 = p
                .parse()
                .map_err(|_| CmdError::Usage("bad prime".to_string()))?;
            let d: u32 = d
                .parse()
                .map_err(|_| CmdError::Usage("bad degree".to_string()))?;
            let polys = if a.has_flag("all") {
                enum_irreducible(p, d)?
            } else {
                enum_primitive(p, d)?
            };
            out.push_str(&format!("count: {}\n", polys.len()));
            for q in polys {
                out.push_str(&format!("{q}\n"));
            }
        }
        _ => return Err(CmdError::Usage("poly needs an operation".to_string())),
    }
    Ok(CmdOutput::ok(out))
}

fn cmd_bounds(args: &[String]) -> Result<CmdOutput, CmdError> {
    let a = scan_args(args, &["certify", "decimal", "denom-log2"])?;
    let target = a
        .flag_value("certify")
        .ok_or_else(|| CmdError::Usage("bounds needs --certify TARGET".to_string()))?;
    let decimal: u32 = a.parsed_flag("decimal")?.unwrap_or(10);
    let denom_log2: u32 = a.parsed_flag("denom-log2")?.unwrap_or(60);
    let mut out = String::new();
    let mut all_pass = true;
    fn show_interval(
        name: &str,
        iv: &RationalInterval,
        digits: &str,
        decimal: u32,
        all_pass: &mut bool,
        out: &mut String,
    ) {
        let pass = iv.pins_decimal(digits)
            && iv.width() < Rat::new(BigInt::from(1), BigInt::from(10u64).pow(9));
        *all_pass &= pass;
        out.push_str(&format!(
            "{name}: {} [{}..] width < 1e-9: {}\n",
            if pass { "PASS" } else { "FAIL" },
            interval_decimal(iv, decimal),
            if pass { "yes" } else { "no" },
        ));
    }
    if target == "rho0" || target == "all" {
        show_interval("rho0", &bounds::rho0(), "0.504307524", decimal, &mut all_pass, &mut out);
    }
    if target == "rho1" || target == "all" {
        show_interval("rho1", &bounds::rho1(), "0.750063685", decimal, &mut all_pass, &mut out);
    }
    if target == "anlem" || target == "all" {
        for check in bounds::anlem_certify() {
            all_pass &= check.verified;
            out.push_str(&format!(
                "{}: {} ({}) [{}..]\n",
                check.id,
                if check.verified { "PASS" } else { "FAIL" },
                check.description,
                interval_decimal(&check.interval, decimal),
            ));
        }
    }
    if target == "gaps" || target == "all" {
        let r0 = bounds::rho0();
        let v0 = bounds::gap_scan(&rat(1, 2), &r0.hi, denom_log2);
        all_pass &= v0.is_empty();
        out.push_str(&format!(
            "gap (1/2, rho0], denominators to 2^{denom_log2}: {} ({} violations)\n",
            if v0.is_empty() { "PASS" } else { "FAIL" },
            v0.len()
        ));
        let r1 = bounds::rho1();
        let v1 = bounds::gap_scan(&rat(3, 4), &r1.hi, denom_log2);
        all_pass &= v1.is_empty();
        out.push_str(&format!(
            "gap (3/4, rho1], denominators to 2^{denom_log2}: {} ({} violations)\n",
            if v1.is_empty() { "PASS" } else { "FAIL" },
            v1.len()
        ));
    }
    if out.is_empty() {
        return Err(CmdError::Usage(format!("unknown certify target '{target}'")));
    }
    Ok(CmdOutput { text: out, failed_checks: !all_pass })
}

fn cmd_prng(args: &[String]) -> Result<CmdOutput, CmdError> {
    let a = scan_args(args, &["count", "period-cap"])?;
    let count: usize = a.parsed_flag("count")?.unwrap_or(16);
    let cap: u64 = a.parsed_flag("period-cap")?.unwrap_or(1 << 24);
    let spec = match a.positional.as_slice() {
        ["lcg", m, mult, c, seed] => {
            let parse = |s: &str| -> Result<u64, CmdError> {
                s.parse().map_err(|_| CmdError::Usage(format!("bad integer '{s}'")))
            };
            prng::lcg(parse(m)?, parse(mult)?, parse(c)?, parse(seed)?)?
        }
        ["vec", p, poly_str, seed] => {
            let p: u64 = p
                .parse()
                .map_err(|_| CmdError::Usage("bad prime".to_string()))?;
            let poly = parse_poly(&format!("{poly_str}@{p}"))
                .or_else(|_| parse_poly(poly_str))?;
            let seed_word: u64 = seed
                .parse()
                .map_err(|_| CmdError::Usage("bad seed".to_string()))?;
            let mut coords = Vec::with_capacity(poly.degree());
            let mut v = seed_word;
            for _ in 0..poly.degree() {
                coords.push(v % p);
                v /= p;
            }
            prng::vecgen(&poly, &coords)?
        }
        _ => {
            return Err(CmdError::Usage(
                "prng needs 'lcg M A C SEED' or 'vec P POLY SEED'".to_string(),
            ))
        }
    };
    let mut out = String::new();
    if a.has_flag("certify") {
        let certified = prng::certify_full_period(&spec)?;
        out.push_str(&format!(
            "full-period certificate: {}\n",
            if certified { "yes" } else { "no" }
        ));
        if certified {
            out.push_str(&format!("certified period: {}\n", prng::certified_period(&spec)?));
        }
        match prng::measured_period(&spec, cap) {
            Ok(measured) => out.push_str(&format!("measured period: {measured}\n")),
            Err(e) => out.push_str(&format!("measured period: {e}\n")),
        }
    } else {
        let words = prng::stream(&spec, count);
        let rendered: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    Ok(CmdOutput::ok(out))
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact decimal expansion of a rational to k digits, truncated, with a
/// marker when the expansion continues.
fn rat_decimal(r: &Rat, k: u32) -> String {
    let mut num = r.numer().abs().clone();
    let den = r.denom().abs().clone();
    let int_part = &num / &den;
    num -= &int_part * &den;
    let mut digits = String::new();
    for _ in 0..k {
        num *= 10;
        let d = &num / &den;
        digits.push_str(&d.to_string());
        num -= &d * &den;
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let cont = if num.is_zero() { "" } else { ".." };
    format!("{sign}{int_part}.{digits}{cont}")
}

/// Decimal digits certified by an interval: the longest common prefix of
/// the endpoint expansions, capped at k digits.
fn interval_decimal(iv: &RationalInterval, k: u32) -> String {
    let lo = rat_decimal(&iv.lo, k);
    let hi = rat_decimal(&iv.hi, k);
    let common: String = lo
        .chars()
        .zip(hi.chars())
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| a)
        .collect();
    if common.is_empty() {
        format!("{lo} .. {hi}")
    } else {
        common
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let (status, out) = run(&owned);
        assert_eq!(status, 0, "args {args:?} output:\n{out}");
        out
    }

    #[test]
    fn classify_empty_case() {
        let out = run_ok(&["classify", "--rho", "8/15"]);
        assert!(out.contains("descriptors: 0"));
        assert!(out.contains("two distinct odd"));
    }

    #[test]
    fn lambda_group_output() {
        let out = run_ok(&["lambda", "--group", "Z2 x Z4"]);
        assert!(out.contains("lambda: 1/2"), "{out}");
        assert!(out.contains("Lambda: 4"));
    }

    #[test]
    fn lambda_spec_output() {
        let out = run_ok(&["lambda", "--spec", "V(x^2+x+1@2) * M(3,2)"]);
        assert!(out.contains("lambda: 1/2"));
        assert!(out.contains("order: 12"));
    }

    #[test]
    fn bounds_rho0() {
        let out = run_ok(&["bounds", "--certify", "rho0", "--decimal", "11"]);
        assert!(out.contains("rho0: PASS"), "{out}");
        assert!(out.contains("0.504307524"));
    }

    #[test]
    fn prng_stream_and_certify() {
        let out = run_ok(&["prng", "lcg", "9", "4", "1", "0", "--count", "9"]);
        assert_eq!(out.trim(), "0 1 5 3 4 8 6 7 2");
        let out = run_ok(&["prng", "lcg", "9", "4", "1", "0", "--certify"]);
        assert!(out.contains("full-period certificate: yes"));
        assert!(out.contains("measured period: 9"));
    }

    #[test]
    fn poly_queries() {
        let out = run_ok(&["poly", "primitive", "x^2+x+1 mod 2"]);
        assert_eq!(out, "yes\n");
        let out = run_ok(&["poly", "enum", "2", "4"]);
        assert!(out.contains("count: 2"));
    }

    #[test]
    fn determinism() {
        let args = ["classify", "--rho", "3/4"];
        assert_eq!(run_ok(&args), run_ok(&args));
    }

    #[test]
    fn usage_errors() {
        let (status, out) = run(&["classify".to_string()]);
        assert_eq!(status, 2);
        assert!(out.contains("usage"));
        let (status, _) = run(&["nonsense".to_string()]);
        assert_eq!(status, 2);
    }

    #[test]
    fn classify_expansion() {
        let out = run_ok(&[
            "classify",
            "--rho",
            "2/3",
            "--expand-max-order",
            "30",
        ]);
        // The m >= 2 cyclic family members up to order 30: Z/9 and Z/27.
        assert!(out.contains("M(9,2)"), "{out}");
        assert!(out.contains("M(27,2)"));
        // The exceptional squared-block class on (Z/3)^2.
        assert!(out.contains("(x-g)^2") || out.contains("x^2+2x+1"), "{out}");
    }
}
