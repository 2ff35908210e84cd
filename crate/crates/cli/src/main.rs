use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dp5_core::casework::decompose::{decompose_class, PartsSelector};
use dp5_core::casework::diff::diff_table;
use dp5_core::casework::tables::{table_csv, ConstraintSystem, TableCase};
use dp5_core::cohomology::h0_with_trace;
use dp5_core::contraction::{format_ade, pullback_decomposition, sigma_intersect, singularity_types, SigmaClass};
use dp5_core::covers::BidoubleData;
use dp5_core::curves::{negative_curves, ruling_classes, CurveKind};
use dp5_core::golden::run_golden;
use dp5_core::lattice::{ClassRecord, Coeff};
use dp5_core::scenario::{bundled, check_expected, parse_scenario, run_scenario, Report, Scenario, BUNDLED};
use dp5_core::symmetry::{generate_group, line_orbits, parse_automorphism, transport_cover_data, verify_line_transitivity_with};
use dp5_core::{Basis, Configuration, DivisorClass, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dp5", version, about = "Divisor calculus on quintic del Pezzo surfaces and their degenerations")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// GENERAL or P1..P6
    #[arg(long, global = true, default_value = "GENERAL")]
    config: Configuration,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Negative curves, singularities and rulings of the configuration.
    Curves {
        /// List pencils f with f^2 = 0, -K.f = 2 and no fixed part instead.
        #[arg(long)]
        rulings: bool,
        /// With --rulings: keep only pencils orthogonal to every (-2)-curve.
        #[arg(long)]
        orthogonal: bool,
    },
    /// h0 by fixed-part reduction.
    H0 {
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "curve")]
        basis: Basis,
        /// Print the reduction steps.
        #[arg(long)]
        trace: bool,
    },
    /// Rational pullback through the contraction of the (-2)-curves.
    Pullback {
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "curve")]
        basis: Basis,
        /// Also intersect with the pullback of this class.
        #[arg(long)]
        with: Option<String>,
    },
    /// Automorphism group of the lattice and its action on the ten lines.
    Orbits,
    /// Transport bidouble branch data by automorphisms applied left to right.
    Transport {
        /// Scenario file or bundled scenario name.
        #[arg(long)]
        scenario: String,
        /// e.g. "tau,swap:34", "perm:2143", "cremona:124"
        #[arg(long)]
        by: String,
    },
    /// Invariants of a cover scenario.
    Cover {
        /// Scenario file or bundled scenario name.
        #[arg(long)]
        scenario: String,
    },
    /// Enumerate a constraint table and diff it against the printed copy.
    Tables {
        #[arg(long)]
        case: TableCase,
        /// Scan bound for each chain coefficient.
        #[arg(long, default_value_t = 16)]
        bound: i64,
    },
    /// Splittings of a class into parts.
    Decompose {
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "curve")]
        basis: Basis,
        /// lines | negative | nef, or a ';'-separated list of class literals
        #[arg(long, default_value = "lines")]
        parts: String,
        #[arg(long, default_value_t = 2)]
        max_parts: usize,
    },
    /// Run the golden suite.
    Verify,
    /// Names of the bundled scenarios.
    Scenarios,
}

struct Output {
    text: String,
    json: Value,
    csv: String,
    /// Extra text for stderr in csv mode.
    note: String,
    code: u8,
}

impl Output {
    fn new(text: String, json: Value, csv: String) -> Self {
        Output { text, json, csv, note: String::new(), code: 0 }
    }
}

fn record(d: &DivisorClass, cfg: Configuration) -> Value {
    json!({
        "literal": d.render(Basis::Curve, cfg),
        "standard": ClassRecord::from_class(d, Basis::Standard, cfg),
    })
}

fn load_scenario(arg: &str) -> Result<Scenario> {
    if let Some(s) = bundled(arg) {
        return Ok(s);
    }
    let path = PathBuf::from(arg);
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading scenario {}", path.display()))?;
    Ok(parse_scenario(&text)?)
}

fn kind_name(k: CurveKind) -> &'static str {
    match k {
        CurveKind::MinusOne => "-1",
        CurveKind::MinusTwo => "-2",
    }
}

fn curves(cfg: Configuration, rulings: bool, orthogonal: bool) -> Output {
    if rulings {
        let fs = ruling_classes(cfg, orthogonal);
        let mut text = String::new();
        let mut csv = String::from("class\n");
        for f in &fs {
            let _ = writeln!(text, "{}", f.render(Basis::Curve, cfg));
            let _ = writeln!(csv, "{}", f.render(Basis::Curve, cfg));
        }
        if fs.is_empty() {
            text.push_str("none\n");
        }
        let json = json!({ "config": cfg, "rulings": fs.iter().map(|f| record(f, cfg)).collect::<Vec<_>>() });
        return Output::new(text, json, csv);
    }
    let cs = negative_curves(cfg);
    let sing = format_ade(&singularity_types(cfg));
    let mut text = format!("{cfg}: {} negative curves, singularities {sing}\n", cs.len());
    let mut csv = String::from("kind,curve,standard\n");
    for c in &cs {
        let (cb, sb) = (c.cls.render(Basis::Curve, cfg), c.cls.render(Basis::Standard, cfg));
        let _ = writeln!(text, "  ({}) {cb}    [{sb}]", kind_name(c.kind));
        let _ = writeln!(csv, "{},{cb},{sb}", kind_name(c.kind));
    }
    let json = json!({
        "config": cfg,
        "singularities": sing,
        "curves": cs.iter().map(|c| {
            let mut v = record(&c.cls, cfg);
            v["kind"] = json!(kind_name(c.kind));
            v
        }).collect::<Vec<_>>(),
    });
    Output::new(text, json, csv)
}

fn h0_cmd(cfg: Configuration, class: &str, basis: Basis, trace: bool) -> Result<Output> {
    let d = DivisorClass::parse(class, basis, cfg)?;
    let r = h0_with_trace(&d, cfg)?;
    let lit = d.render(Basis::Curve, cfg);
    let mut text = format!("{}\n", r.h0);
    if trace {
        for (c, m) in &r.steps {
            let _ = writeln!(text, "  remove {m} x ({})", c.render(Basis::Curve, cfg));
        }
        match &r.residual {
            Some(res) => {
                let _ = writeln!(text, "  nef remainder {}", res.render(Basis::Curve, cfg));
            }
            None => text.push_str("  not effective\n"),
        }
    }
    let json = json!({
        "config": cfg,
        "class": record(&d, cfg),
        "h0": r.h0.to_string(),
        "steps": r.steps.iter().map(|(c, m)| json!({"curve": c.render(Basis::Curve, cfg), "multiplicity": m.to_string()})).collect::<Vec<_>>(),
        "residual": r.residual.as_ref().map(|x| x.render(Basis::Curve, cfg)),
    });
    Ok(Output::new(text, json, format!("config,class,h0\n{cfg},{lit},{}\n", r.h0)))
}

fn pullback_cmd(cfg: Configuration, class: &str, basis: Basis, with: Option<&str>) -> Result<Output> {
    let s = SigmaClass::new(DivisorClass::parse(class, basis, cfg)?, cfg);
    let p = pullback_decomposition(&s)?;
    let rendered = p.render(&s.rep, cfg);
    let sq = sigma_intersect(&s, &s)?;
    let mut text = format!("{rendered}\nself-intersection {sq}\n");
    let mut json = json!({
        "config": cfg,
        "class": record(&s.rep, cfg),
        "pullback": rendered,
        "pullback_standard": ClassRecord::from_q(&p.class, Basis::Standard, cfg),
        "self_intersection": Coeff(sq.clone()),
    });
    let mut csv = format!("config,class,pullback,self_intersection\n{cfg},{},{rendered},{sq}\n", s.rep.render(Basis::Curve, cfg));
    if let Some(w) = with {
        let t = SigmaClass::new(DivisorClass::parse(w, basis, cfg)?, cfg);
        let x = sigma_intersect(&s, &t)?;
        let _ = writeln!(text, "product with {} = {x}", t.rep.render(Basis::Curve, cfg));
        json["product"] = json!(Coeff(x.clone()));
        csv = format!("config,class,with,product\n{cfg},{},{},{x}\n", s.rep.render(Basis::Curve, cfg), t.rep.render(Basis::Curve, cfg));
    }
    Ok(Output::new(text, json, csv))
}

fn orbits_cmd() -> Result<Output> {
    let group = generate_group()?;
    let orbits = line_orbits(&group);
    let report = verify_line_transitivity_with(&group);
    let g = Configuration::General;
    let mut text = format!("group order {}\n", group.len());
    for (i, o) in orbits.iter().enumerate() {
        let names: Vec<String> = o.iter().map(|d| d.render(Basis::Standard, g)).collect();
        let _ = writeln!(text, "orbit {}: {}", i + 1, names.join(", "));
    }
    let _ = writeln!(
        text,
        "transitive on lines: {}\nstabilizer transitive on disjoint lines: {}\ntransitive on disjoint pairs: {}",
        report.transitive_on_lines, report.stabilizer_transitive_on_disjoint, report.transitive_on_disjoint_pairs
    );
    let json = json!({
        "order": group.len(),
        "orbits": orbits.iter().map(|o| o.iter().map(|d| d.render(Basis::Standard, g)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "transitivity": report,
    });
    let csv = format!(
        "order,transitive_on_lines,stabilizer_transitive_on_disjoint,transitive_on_disjoint_pairs\n{},{},{},{}\n",
        group.len(),
        report.transitive_on_lines,
        report.stabilizer_transitive_on_disjoint,
        report.transitive_on_disjoint_pairs
    );
    Ok(Output::new(text, json, csv))
}

fn transport_cmd(scenario: &str, by: &str) -> Result<Output> {
    let Scenario::Bidouble(f) = load_scenario(scenario)? else {
        return Err(Error::Scenario("transport needs a bidouble scenario".into()).into());
    };
    let data = f.to_data()?;
    let g = parse_automorphism(by)?;
    let out: BidoubleData = transport_cover_data(&data, &g);
    let cfg = out.cfg;
    let mut text = String::new();
    let mut csv = String::from("index,total,components\n");
    let mut branches = Vec::new();
    for i in 0..3 {
        let comps: Vec<String> = out.d[i].iter().map(|c| c.render(Basis::Standard, cfg)).collect();
        let total = out.total(i).render(Basis::Standard, cfg);
        let _ = writeln!(text, "D{} = {total}    ({})", i + 1, comps.join(" + "));
        let _ = writeln!(csv, "{},{total},{}", i + 1, comps.join(" + "));
        branches.push(json!({"total": total, "components": comps}));
    }
    Ok(Output::new(text, json!({"by": by, "branches": branches}), csv))
}

fn cover_cmd(scenario: &str) -> Result<Output> {
    let s = load_scenario(scenario)?;
    let r = run_scenario(&s)?;
    let mismatches = check_expected(&s, &r);
    let mut text = String::new();
    let csv = match &r {
        Report::DoubleCover(d) => {
            let gate = d.albanese_gate.map_or("n/a".to_string(), |g| if g { "pass".into() } else { "fail".into() });
            let _ = writeln!(
                text,
                "{}\nchi = {}{}\nK^2 = {}\npg >= {}\nq >= {}\nalbanese gate: {gate}",
                d.name,
                d.chi.0,
                if d.chi_integral { "" } else { " (not an integer)" },
                d.k_sq.0,
                d.pg_lower.0,
                d.q_lower.0
            );
            format!(
                "name,chi,k_sq,pg_lower,q_lower,albanese_gate\n\"{}\",{},{},{},{},{gate}\n",
                d.name, d.chi.0, d.k_sq.0, d.pg_lower.0, d.q_lower.0
            )
        }
        Report::Bidouble(b) => {
            let _ = writeln!(
                text,
                "{}\npg = {}\nq = {}\nK^2 = {}\nchi = {}\nbicanonical map is the cover: {}",
                b.name, b.pg.0, b.q.0, b.k_sq.0, b.chi.0, b.bicanonical_is_cover
            );
            format!(
                "name,pg,q,k_sq,chi,bicanonical_is_cover\n\"{}\",{},{},{},{},{}\n",
                b.name, b.pg.0, b.q.0, b.k_sq.0, b.chi.0, b.bicanonical_is_cover
            )
        }
        Report::ConstraintTable(t) => {
            text.push_str(&table_csv(t.case, t.rows.iter().map(|r| r.row())));
            text.push_str(&t.diff.render());
            table_csv(t.case, t.rows.iter().map(|r| r.row()))
        }
    };
    for (k, want, got) in &mismatches {
        let _ = writeln!(text, "MISMATCH {k}: expected {want}, got {got}");
    }
    let mut json = serde_json::to_value(&r)?;
    json["mismatches"] = json!(mismatches);
    let mut out = Output::new(text, json, csv);
    if !mismatches.is_empty() {
        out.code = 1;
    }
    Ok(out)
}

fn tables_cmd(case: TableCase, bound: i64) -> Result<Output> {
    if bound < 1 {
        return Err(Error::Parse { input: bound.to_string(), reason: "bound must be positive".into() }.into());
    }
    let rows = ConstraintSystem::for_case(case).with_coefficient_bound(bound).enumerate();
    let diff = diff_table(case, &rows);
    let csv = table_csv(case, rows.iter().map(|r| r.row()));
    let report = diff.render();
    let json = json!({ "case": case, "header": case.header(), "rows": rows, "diff": diff });
    let mut out = Output::new(format!("{csv}\n{report}"), json, csv);
    out.note = report;
    Ok(out)
}

fn decompose_cmd(cfg: Configuration, class: &str, basis: Basis, parts: &str, max_parts: usize) -> Result<Output> {
    let target = DivisorClass::parse(class, basis, cfg)?;
    let part_list = match parts.parse::<PartsSelector>() {
        Ok(sel) => sel.parts(&target, cfg),
        Err(_) => parts
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| DivisorClass::parse(p.trim(), basis, cfg))
            .collect::<dp5_core::Result<Vec<_>>>()?,
    };
    let found = decompose_class(&target, &part_list, max_parts, cfg)?;
    let show = |m: &Vec<DivisorClass>| -> String {
        if m.is_empty() {
            "(empty)".into()
        } else {
            m.iter().map(|c| c.render(Basis::Curve, cfg)).collect::<Vec<_>>().join(" + ")
        }
    };
    let mut text = format!("{} splitting(s) of {}\n", found.len(), target.render(Basis::Curve, cfg));
    let mut csv = String::from("size,parts\n");
    for m in &found {
        let _ = writeln!(text, "  {}", show(m));
        let _ = writeln!(csv, "{},{}", m.len(), show(m));
    }
    let json = json!({
        "config": cfg,
        "target": record(&target, cfg),
        "splittings": found.iter().map(|m| m.iter().map(|c| record(c, cfg)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Output::new(text, json, csv))
}

fn verify_cmd() -> Output {
    let checks = run_golden();
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut text = String::new();
    let mut csv = String::from("pass,name,expected,actual\n");
    for c in &checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if c.pass {
            let _ = writeln!(text, "{mark} {}", c.name);
        } else {
            let _ = writeln!(text, "{mark} {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
        let _ = writeln!(csv, "{},\"{}\",\"{}\",\"{}\"", c.pass, c.name, c.expected, c.actual);
    }
    let _ = writeln!(text, "{} checks, {failed} failed", checks.len());
    let mut out = Output::new(text, json!({ "checks": checks, "failed": failed }), csv);
    if failed > 0 {
        out.code = 1;
    }
    out
}

fn scenarios_cmd() -> Output {
    let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
    let text = names.iter().map(|n| format!("{n}\n")).collect::<String>();
    let csv = format!("name\n{text}");
    Output::new(text, json!(names), csv)
}

fn run(cli: &Cli) -> Result<Output> {
    let cfg = cli.config;
    Ok(match &cli.command {
        Command::Curves { rulings, orthogonal } => curves(cfg, *rulings, *orthogonal),
        Command::H0 { class, basis, trace } => h0_cmd(cfg, class, *basis, *trace)?,
        Command::Pullback { class, basis, with } => pullback_cmd(cfg, class, *basis, with.as_deref())?,
        Command::Orbits => orbits_cmd()?,
        Command::Transport { scenario, by } => transport_cmd(scenario, by)?,
        Command::Cover { scenario } => cover_cmd(scenario)?,
        Command::Tables { case, bound } => tables_cmd(*case, *bound)?,
        Command::Decompose { class, basis, parts, max_parts } => decompose_cmd(cfg, class, *basis, parts, *max_parts)?,
        Command::Verify => verify_cmd(),
        Command::Scenarios => scenarios_cmd(),
    })
}

/// 3 for malformed input, 1 for everything else that fails at run time.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::UnknownConfig(_)
            | Error::Scenario(_)
            | Error::InvalidBase(_)
            | Error::InvalidPermutation(_)
            | Error::BranchParity(..)
            | Error::NotEffective(_)
            | Error::NotNegativeClass(_),
        ) => 3,
        Some(_) => 1,
        None if e.downcast_ref::<std::io::Error>().is_some() => 3,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json output")),
                Format::Csv => {
                    print!("{}", out.csv);
                    eprint!("{}", out.note);
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
