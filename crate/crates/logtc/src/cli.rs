//! Command-line front end: parse inputs, run checks, emit reports, and
//! regenerate the worked-example catalog. Output is deterministic: sorted
//! orderings everywhere and no timestamps.

use crate::catalog;
use crate::error::{LogtcError, Result};
use crate::gtc::{GtcSpace, LSSection};
use crate::json;
use crate::ls::{check_ls_section, joint_check, wall_bundle, SectionClass, WallStatus};
use crate::resolution::{
    resolve, serialize_plan, verify_log_smooth, verify_transform_identity, ResolutionState,
};
use crate::verify::{check_ghost_resolution, fuzz_joint_lemma};
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::io::IsTerminal;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_A_SECTION: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_PARSE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "logtc",
    about = "Exact checks for log structures on toroidal crossing spaces: joint conditions, singular loci, and blow-up resolutions"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress informational output
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a space and classify a candidate section
    Check(CheckArgs),
    /// Plan and apply a log resolution, then re-verify
    Resolve(ResolveArgs),
    /// Run an independent verification suite
    Verify(VerifyArgs),
    /// Write the example catalog documents
    Examples(ExamplesArgs),
}

#[derive(Args)]
pub struct CheckArgs {
    pub gtc: PathBuf,
    pub section: PathBuf,
}

#[derive(Args)]
pub struct ResolveArgs {
    pub gtc: PathBuf,
    pub section: PathBuf,
    /// Blow-up side overrides, wall=component pairs separated by commas
    #[arg(long, value_delimiter = ',')]
    pub side_overrides: Vec<String>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which suite: "ghost" or "joint-lemma"
    pub kind: String,
    /// Run the ghost suite over the built-in catalog
    #[arg(long)]
    pub catalog: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 12)]
    pub max_rays: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Args)]
pub struct ExamplesArgs {
    /// Catalog entry name or "all"
    pub name: String,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Sublattice index for the two-components entry
    #[arg(long, default_value_t = 3)]
    pub r: i64,
    /// Emit the seeded numeric del Pezzo section instead of the symbolic one
    #[arg(long)]
    pub numeric: bool,
    /// Seed for the numeric section
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

enum Color {
    Auto,
    Always,
    Never,
}

fn color_mode() -> Color {
    match std::env::var("LOGTC_COLOR").as_deref() {
        Ok("always") => Color::Always,
        Ok("never") => Color::Never,
        _ => Color::Auto,
    }
}

fn paint(s: &str, ok: bool) -> String {
    let on = match color_mode() {
        Color::Always => true,
        Color::Never => false,
        Color::Auto => std::io::stdout().is_terminal(),
    };
    if on {
        if ok {
            format!("\u{1b}[32m{}\u{1b}[0m", s)
        } else {
            format!("\u{1b}[31m{}\u{1b}[0m", s)
        }
    } else {
        s.to_string()
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run(cli: Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check(args) => cmd_check(&cli, args),
        Command::Resolve(args) => cmd_resolve(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Examples(args) => cmd_examples(&cli, args),
    };
    match result {
        Ok(outcome) => outcome,
        Err(e) => {
            let code = match &e {
                LogtcError::SchemaError { .. } | LogtcError::Json(_) | LogtcError::Usage(_) => {
                    EXIT_PARSE
                }
                LogtcError::FactorizationUnsupported(_) => EXIT_UNDECIDED,
                LogtcError::Io(_) => EXIT_PARSE,
                _ => EXIT_NOT_A_SECTION,
            };
            Outcome {
                code,
                stdout: format!("error: {}\n", e),
            }
        }
    }
}

fn load_pair(gtc: &PathBuf, section: &PathBuf) -> Result<(GtcSpace, LSSection)> {
    let gtc_text = std::fs::read_to_string(gtc).map_err(|e| LogtcError::SchemaError {
        path: gtc.display().to_string(),
        msg: e.to_string(),
    })?;
    let space = json::parse_gtc(&gtc_text).map_err(|e| prefix_path(e, gtc))?;
    let section_text = std::fs::read_to_string(section).map_err(|e| LogtcError::SchemaError {
        path: section.display().to_string(),
        msg: e.to_string(),
    })?;
    let sec = json::parse_section(&section_text, &space).map_err(|e| prefix_path(e, section))?;
    Ok((space, sec))
}

fn prefix_path(e: LogtcError, file: &PathBuf) -> LogtcError {
    match e {
        LogtcError::SchemaError { path, msg } => LogtcError::SchemaError {
            path: format!("{}:{}", file.display(), path),
            msg,
        },
        other => other,
    }
}

fn classification_code(class: &SectionClass) -> i32 {
    match class {
        SectionClass::LsTimes => EXIT_OK,
        SectionClass::LsSingular => EXIT_SINGULAR,
        SectionClass::NotASection | SectionClass::Conditional(_) => EXIT_NOT_A_SECTION,
    }
}

fn classification_name(class: &SectionClass) -> &'static str {
    match class {
        SectionClass::LsTimes => "section of LS^x (nowhere vanishing)",
        SectionClass::LsSingular => "section of LS, singular",
        SectionClass::NotASection => "not a section",
        SectionClass::Conditional(_) => "section exactly on the listed constraints",
    }
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> Result<Outcome> {
    let (space, section) = load_pair(&args.gtc, &args.section)?;
    let validation = space.validate();
    let report = check_ls_section(&space, &section, None)?;
    let code = if !validation.all_pass() {
        EXIT_NOT_A_SECTION
    } else {
        classification_code(&report.class)
    };

    if cli.json {
        let mut joints = Vec::new();
        for j in &report.joints {
            joints.push(serde_json::json!({
                "joint": j.joint,
                "walls": j.walls,
                "normals": j.normals,
                "residuals": j.residuals.iter().map(|(n, d)| format!("{} / {}", n, d)).collect::<Vec<_>>(),
                "pass": j.pass,
            }));
        }
        let walls: Vec<serde_json::Value> = report
            .walls
            .iter()
            .map(|(w, s)| match s {
                WallStatus::Unit => serde_json::json!({"wall": w, "status": "unit"}),
                WallStatus::Singular(d, deg) => serde_json::json!({
                    "wall": w, "status": "singular",
                    "divisor": format!("{}", d), "degree": deg,
                }),
                WallStatus::Undecided(why) => {
                    serde_json::json!({"wall": w, "status": "undecided", "reason": why})
                }
            })
            .collect();
        let constraints = match &report.class {
            SectionClass::Conditional(cs) => cs.clone(),
            _ => vec![],
        };
        let doc = serde_json::json!({
            "validation": validation.checks.iter().map(|c| serde_json::json!({
                "name": c.name, "pass": c.pass, "witness": c.witness,
            })).collect::<Vec<_>>(),
            "joints": joints,
            "joint_errors": report.joint_errors,
            "walls": walls,
            "constraints": constraints,
            "classification": classification_name(&report.class),
            "exit": code,
        });
        return Ok(Outcome {
            code,
            stdout: format!("{}\n", serde_json::to_string_pretty(&doc)?),
        });
    }

    let mut out = String::new();
    if !cli.quiet {
        out.push_str(&format!(
            "validation: {} ({} checks)\n",
            paint(if validation.all_pass() { "PASS" } else { "FAIL" }, validation.all_pass()),
            validation.checks.len()
        ));
        for c in validation.checks.iter().filter(|c| !c.pass) {
            out.push_str(&format!(
                "  {}: FAIL ({})\n",
                c.name,
                c.witness.clone().unwrap_or_default()
            ));
        }
    }
    for j in &report.joints {
        out.push_str(&format!(
            "joint {}: {}\n",
            j.joint,
            paint(if j.pass { "PASS" } else { "FAIL" }, j.pass)
        ));
        if !cli.quiet {
            out.push_str(&format!("  cyclic walls: {}\n", j.walls.join(" ")));
            out.push_str(&format!(
                "  normals: {}\n",
                j.normals
                    .iter()
                    .map(|d| format!("({},{})", d[0], d[1]))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            for (i, (num, den)) in j.residuals.iter().enumerate() {
                out.push_str(&format!("  residual[e{}]: {} / {}\n", i + 1, num, den));
            }
        }
    }
    for (joint, err) in &report.joint_errors {
        out.push_str(&format!("joint {}: {} ({})\n", joint, paint("FAIL", false), err));
    }
    if let SectionClass::Conditional(cs) = &report.class {
        out.push_str("constraints:\n");
        for c in cs {
            out.push_str(&format!("  {}\n", c));
        }
    }
    for (w, s) in &report.walls {
        match s {
            WallStatus::Unit => out.push_str(&format!("wall {}: nowhere vanishing\n", w)),
            WallStatus::Singular(d, deg) => out.push_str(&format!(
                "wall {}: singular along {} (degree {})\n",
                w, d, deg
            )),
            WallStatus::Undecided(why) => {
                out.push_str(&format!("wall {}: {}\n", w, why));
            }
        }
    }
    out.push_str(&format!(
        "classification: {}\n",
        classification_name(&report.class)
    ));
    Ok(Outcome { code, stdout: out })
}

fn cmd_resolve(cli: &Cli, args: &ResolveArgs) -> Result<Outcome> {
    let (space, section) = load_pair(&args.gtc, &args.section)?;
    let mut overrides = BTreeMap::new();
    for pair in &args.side_overrides {
        let Some((wall, comp)) = pair.split_once('=') else {
            return Err(LogtcError::Usage(format!(
                "bad --side-overrides entry {:?} (expected wall=component)",
                pair
            )));
        };
        overrides.insert(wall.to_string(), comp.to_string());
    }
    let mut state =
        ResolutionState::new(space, section)?.with_side_overrides(overrides);
    let plan = resolve(&mut state)?;
    let identities = verify_transform_identity(&state)?;
    let (smooth, report) = verify_log_smooth(&state)?;
    let code = if smooth { EXIT_OK } else { EXIT_NOT_A_SECTION };

    if cli.json {
        let doc = serde_json::json!({
            "plan": serde_json::from_str::<serde_json::Value>(&serialize_plan(&plan)?)?,
            "identities": identities.iter().map(|t| serde_json::json!({
                "wall": t.wall,
                "holds": t.holds,
                "new_class": format!("{}", t.lhs),
                "pullback_of_twisted_old": format!("{}", t.rhs),
                "pullback_relations": t.pullback_relations,
            })).collect::<Vec<_>>(),
            "log_smooth": smooth,
            "classification": classification_name(&report.class),
            "exit": code,
        });
        return Ok(Outcome {
            code,
            stdout: format!("{}\n", serde_json::to_string_pretty(&doc)?),
        });
    }

    let mut out = String::new();
    if plan.events.is_empty() {
        out.push_str("plan: empty (already log smooth)\n");
    } else {
        out.push_str(&format!("plan: {} blow-up events\n", plan.events.len()));
        for (i, e) in plan.events.iter().enumerate() {
            let center: Vec<String> = e
                .center_factors
                .iter()
                .map(|(f, m)| {
                    if *m == 1 {
                        format!("({})", f)
                    } else {
                        format!("({})^{}", f, m)
                    }
                })
                .collect();
            out.push_str(&format!(
                "  {}. blow up {} in {} along wall {}, exceptional {}\n",
                i + 1,
                center.join(" + "),
                e.component,
                e.wall,
                e.exceptional
            ));
        }
    }
    for t in &identities {
        out.push_str(&format!(
            "wall {}: new class = f*(old(-Z)): {}\n",
            t.wall,
            paint(if t.holds { "PASS" } else { "FAIL" }, t.holds)
        ));
        if !cli.quiet {
            out.push_str(&format!("  new class: {}\n", t.lhs));
            for rel in &t.pullback_relations {
                out.push_str(&format!("  {}\n", rel));
            }
        }
    }
    out.push_str(&format!(
        "log smooth: {}\n",
        paint(if smooth { "PASS" } else { "FAIL" }, smooth)
    ));
    Ok(Outcome { code, stdout: out })
}

fn catalog_spaces() -> Result<Vec<(&'static str, GtcSpace)>> {
    Ok(vec![
        ("two-components", catalog::two_components_space(3)?),
        ("a1-surface", catalog::a1_surface_space()),
        ("dp4", catalog::dp4_space()?),
        ("a1-threefold", catalog::a1_threefold_space()?),
    ])
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome> {
    match args.kind.as_str() {
        "ghost" => {
            if !args.catalog {
                return Err(LogtcError::Usage(
                    "verify ghost requires --catalog".into(),
                ));
            }
            let mut out = String::new();
            let mut all = true;
            let mut lines = Vec::new();
            for (name, space) in catalog_spaces()? {
                for s in &space.strata {
                    for cone in s.fan.cones.clone() {
                        let ok = check_ghost_resolution(&s.fan, &cone)?;
                        all &= ok;
                        lines.push((
                            format!("{} {} {:?}", name, s.id, cone.generators),
                            ok,
                        ));
                    }
                }
            }
            if cli.json {
                let doc = serde_json::json!({
                    "stalks": lines.iter().map(|(l, ok)| serde_json::json!({
                        "stalk": l, "exact": ok,
                    })).collect::<Vec<_>>(),
                    "pass": all,
                });
                return Ok(Outcome {
                    code: if all { EXIT_OK } else { EXIT_NOT_A_SECTION },
                    stdout: format!("{}\n", serde_json::to_string_pretty(&doc)?),
                });
            }
            if !cli.quiet {
                for (l, ok) in &lines {
                    out.push_str(&format!("{}: {}\n", l, paint(if *ok { "exact" } else { "NOT EXACT" }, *ok)));
                }
            }
            out.push_str(&format!(
                "ghost resolution: {} stalks, {}\n",
                lines.len(),
                paint(if all { "all exact" } else { "FAILURES" }, all)
            ));
            Ok(Outcome {
                code: if all { EXIT_OK } else { EXIT_NOT_A_SECTION },
                stdout: out,
            })
        }
        "joint-lemma" => {
            let report = fuzz_joint_lemma(args.seed, args.trials, args.max_rays, args.k)?;
            if cli.json {
                let doc = serde_json::json!({
                    "seed": report.seed,
                    "trials": report.trials.iter().map(|t| serde_json::json!({
                        "index": t.index, "rays": t.rays, "pass": t.pass,
                    })).collect::<Vec<_>>(),
                    "pass": report.pass,
                });
                return Ok(Outcome {
                    code: if report.pass { EXIT_OK } else { EXIT_NOT_A_SECTION },
                    stdout: format!("{}\n", serde_json::to_string_pretty(&doc)?),
                });
            }
            let mut out = String::new();
            if !cli.quiet {
                for t in &report.trials {
                    out.push_str(&format!(
                        "trial {:4} rays {:2}: {}\n",
                        t.index,
                        t.rays,
                        paint(if t.pass { "pass" } else { "FAIL" }, t.pass)
                    ));
                }
            }
            out.push_str(&format!(
                "joint lemma: seed {}, {} trials, {}\n",
                report.seed,
                report.trials.len(),
                paint(if report.pass { "all residuals zero" } else { "FAILURES" }, report.pass)
            ));
            Ok(Outcome {
                code: if report.pass { EXIT_OK } else { EXIT_NOT_A_SECTION },
                stdout: out,
            })
        }
        other => Err(LogtcError::Usage(format!(
            "unknown verification suite {:?} (expected \"ghost\" or \"joint-lemma\")",
            other
        ))),
    }
}

/// The files an examples invocation would write: (file name, content).
pub fn example_files(name: &str, r: i64, numeric: bool, seed: u64) -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    match name {
        "two-components" => {
            let space = catalog::two_components_space(r)?;
            let section = catalog::two_components_section(&space);
            files.push(("two-components.gtc".into(), json::serialize_gtc(&space)?));
            files.push((
                "two-components.section".into(),
                json::serialize_section(&section)?,
            ));
        }
        "a1-surface" => {
            let space = catalog::a1_surface_space();
            let section = catalog::a1_surface_section(&space);
            files.push(("a1-surface.gtc".into(), json::serialize_gtc(&space)?));
            files.push(("a1-surface.section".into(), json::serialize_section(&section)?));
        }
        "dp4" => {
            let space = catalog::dp4_space()?;
            files.push(("dp4.gtc".into(), json::serialize_gtc(&space)?));
            if numeric {
                let section = catalog::dp4_numeric_section(&space, seed)?;
                files.push(("dp4-generic.section".into(), json::serialize_section(&section)?));
            } else {
                let section = catalog::dp4_symbolic_section(&space)?;
                files.push(("dp4.section".into(), json::serialize_section(&section)?));
            }
        }
        "a1-threefold" => {
            let space = catalog::a1_threefold_space()?;
            let section = catalog::a1_threefold_section(&space)?;
            files.push(("a1-threefold.gtc".into(), json::serialize_gtc(&space)?));
            files.push((
                "a1-threefold.section".into(),
                json::serialize_section(&section)?,
            ));
        }
        "all" => {
            for n in catalog::CATALOG_NAMES {
                files.extend(example_files(n, r, false, seed)?);
            }
            if numeric {
                files.extend(example_files("dp4", r, true, seed)?);
            }
        }
        other => {
            return Err(LogtcError::Usage(format!(
                "unknown example {:?}; available: {}, all",
                other,
                catalog::CATALOG_NAMES.join(", ")
            )));
        }
    }
    Ok(files)
}

fn cmd_examples(cli: &Cli, args: &ExamplesArgs) -> Result<Outcome> {
    let files = example_files(&args.name, args.r, args.numeric, args.seed)?;
    std::fs::create_dir_all(&args.out)?;
    let mut out = String::new();
    for (name, content) in &files {
        let path = args.out.join(name);
        std::fs::write(&path, content)?;
        if !cli.quiet {
            out.push_str(&format!("wrote {}\n", path.display()));
        }
    }
    if cli.json {
        let doc = serde_json::json!({
            "written": files.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        });
        return Ok(Outcome {
            code: EXIT_OK,
            stdout: format!("{}\n", serde_json::to_string_pretty(&doc)?),
        });
    }
    Ok(Outcome {
        code: EXIT_OK,
        stdout: out,
    })
}

/// Convenience used by tests: run check on in-memory documents.
pub fn check_documents(gtc_text: &str, section_text: &str) -> Result<(i32, String)> {
    let dir = std::env::temp_dir().join(format!("logtc-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let g = dir.join("space.gtc");
    let s = dir.join("candidate.section");
    std::fs::write(&g, gtc_text)?;
    std::fs::write(&s, section_text)?;
    let outcome = run(Cli {
        json: false,
        quiet: false,
        command: Command::Check(CheckArgs { gtc: g, section: s }),
    });
    Ok((outcome.code, outcome.stdout))
}

/// Expose the per-wall bundle and joint data for reports and tests.
pub fn describe_space(space: &GtcSpace) -> Result<String> {
    let mut out = String::new();
    for w in space.walls() {
        out.push_str(&format!("wall {}: bundle {}\n", w.id, wall_bundle(space, &w.id)?));
    }
    for j in space.joints() {
        let frame = crate::ls::joint_frame(space, &j.id)?;
        out.push_str(&format!(
            "joint {}: walls {}\n",
            j.id,
            frame
                .iter()
                .map(|(w, d)| format!("{} d=({},{})", w, d[0], d[1]))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(out)
}

/// Run one joint check and render it; used by tests.
pub fn render_joint(space: &GtcSpace, section: &LSSection, joint: &str) -> Result<String> {
    let r = joint_check(space, section, joint, None)?;
    Ok(format!(
        "{}: {} [{}]",
        r.joint,
        if r.pass { "pass" } else { "fail" },
        r.residuals
            .iter()
            .map(|(n, d)| format!("{}/{}", n, d))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}
