//! The three subcommands, writing to caller-supplied streams so that they
//! can be driven from tests as well as from `main`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use euclid_kernel::dsl::{parse, run, Script};
use euclid_kernel::field::Model;

use crate::render::{render_svg, ViewBox, PROJECTION_WARNING};
use crate::report::{Envelope, FailureReport, RunReport};
use crate::suites::{run_suite, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION_FAILED: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;
pub const EXIT_RUNTIME_FAILURE: i32 = 3;

pub struct RunArgs {
    pub script: PathBuf,
    pub model: Model,
    pub svg: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

pub struct VerifyArgs {
    pub suites: Vec<Suite>,
    pub models: Vec<Model>,
    pub cases: usize,
    pub seed: u64,
    pub json: Option<PathBuf>,
}

pub struct RenderArgs {
    pub script: PathBuf,
    pub model: Model,
    pub svg: PathBuf,
    pub viewbox: ViewBox,
}

fn write_file(path: &Path, contents: &str, err: &mut dyn Write) -> bool {
    match std::fs::write(path, contents) {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            false
        }
    }
}

/// Read and parse a script, reporting problems with their position.
fn load(path: &Path, err: &mut dyn Write) -> Result<Script, FailureReport> {
    let src = std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        FailureReport {
            line: 0,
            column: 0,
            kind: "ParseError".into(),
            statement: None,
            message: format!("cannot read file: {e}"),
        }
    })?;
    parse(&src).map_err(|e| {
        let _ = writeln!(err, "{}:{}:{}: parse error: expected {}, found {}", path.display(), e.line, e.column, e.expected, e.found);
        FailureReport::from(&e)
    })
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let name = args.script.display().to_string();
    let start = Instant::now();
    let script = match load(&args.script, err) {
        Ok(s) => s,
        Err(f) => {
            if let Some(path) = &args.json {
                let report = RunReport {
                    script: name,
                    model: args.model.name().into(),
                    passed: false,
                    assertions: Vec::new(),
                    failure: Some(f),
                    objects: Vec::new(),
                    wall_time_ms: start.elapsed().as_millis() as u64,
                };
                write_file(path, &Envelope::new("run", args.model.name(), vec![report]).to_json(), err);
            }
            return EXIT_PARSE_ERROR;
        }
    };
    let (env, failure) = run(&script, args.model);
    let elapsed = start.elapsed().as_millis() as u64;
    for r in env.log() {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        let _ = write!(out, "{tag} {}:{}: {}", r.pos.line, r.pos.column, r.text);
        match &r.detail {
            Some(d) => {
                let _ = writeln!(out, " ({d})");
            }
            None => {
                let _ = writeln!(out);
            }
        }
    }
    if let Some(f) = &failure {
        let _ = writeln!(err, "{name}:{}:{}: {}: `{}`", f.pos.line, f.pos.column, f.kind.name(), f.text);
        let _ = writeln!(err, "  {}", f.kind);
    }
    let passed = env.log().iter().filter(|r| r.passed).count();
    let _ = writeln!(
        out,
        "{name} [{}]: {passed}/{} assertions passed{}",
        args.model,
        env.log().len(),
        if failure.is_some() { ", stopped by a runtime failure" } else { "" }
    );
    let mut ok = true;
    if let Some(path) = &args.json {
        let report = RunReport::from_env(&name, &env, failure.as_ref(), elapsed);
        ok &= write_file(path, &Envelope::new("run", args.model.name(), vec![report]).to_json(), err);
    }
    if let Some(path) = &args.svg {
        ok &= write_svg(path, &script, &env, ViewBox::Auto, err);
    }
    if failure.is_some() || !ok {
        EXIT_RUNTIME_FAILURE
    } else if env.all_passed() {
        EXIT_OK
    } else {
        EXIT_ASSERTION_FAILED
    }
}

fn write_svg(
    path: &Path,
    script: &Script,
    env: &euclid_kernel::dsl::DynEnv,
    view: ViewBox,
    err: &mut dyn Write,
) -> bool {
    if env.model() == Model::Infinitesimal {
        let _ = writeln!(err, "warning: {PROJECTION_WARNING}");
    }
    write_file(path, &render_svg(script, env, view), err)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut reports: Vec<SuiteReport> = Vec::new();
    for &model in &args.models {
        for &suite in &args.suites {
            let r = run_suite(suite, model, args.cases, args.seed);
            let _ = writeln!(out, "{suite} {model}: {} cases, {} failures", r.cases, r.failures.len());
            for f in &r.failures {
                let _ = writeln!(out, "  case {} (seed {}): {}; {}", f.case, f.seed, f.detail, f.instance);
            }
            reports.push(r);
        }
    }
    let model_label = if args.models.len() == 1 {
        args.models[0].name()
    } else {
        "all"
    };
    if let Some(path) = &args.json {
        if !write_file(path, &Envelope::new("verify", model_label, reports.clone()).to_json(), err) {
            return EXIT_RUNTIME_FAILURE;
        }
    }
    if reports.iter().all(SuiteReport::passed) {
        EXIT_OK
    } else {
        EXIT_ASSERTION_FAILED
    }
}

pub fn cmd_render(args: &RenderArgs, _out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let script = match load(&args.script, err) {
        Ok(s) => s,
        Err(_) => return EXIT_PARSE_ERROR,
    };
    let (env, failure) = run(&script, args.model);
    if let Some(f) = &failure {
        let _ = writeln!(err, "{}:{}:{}: {}: drawing the objects built before it", args.script.display(), f.pos.line, f.pos.column, f.kind);
    }
    if !write_svg(&args.svg, &script, &env, args.viewbox, err) || failure.is_some() {
        return EXIT_RUNTIME_FAILURE;
    }
    EXIT_OK
}
