use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amda_core::codegen::generate_from_text;
use amda_core::frontend::{parse_statechart, ChartFormat};
use amda_core::ir::{validate_network, Diagnostic};
use amda_core::pim::{
    read_dispatcher, read_pim, write_dispatcher, write_pim_document, DispatcherDoc,
};
use amda_core::pipeline::{build_network_with, Input, PipelineError};
use amda_core::psm::{load_profile_file, parse_psm, transform, TargetSyntax};
use amda_core::sim::{
    default_dispatcher, format_trace, max_steps_from_env, parse_script, EventScript, SimSession,
    Snapshot,
};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "amda",
    version,
    about = "Statechart automata to PIM, PSM and source code; simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Native,
    Xmi,
}

impl Format {
    fn chart_format(self) -> Option<ChartFormat> {
        match self {
            Format::Auto => None,
            Format::Native => Some(ChartFormat::Native),
            Format::Xmi => Some(ChartFormat::Xmi),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Syntax {
    Java,
    Csharp,
}

#[derive(Subcommand)]
enum Command {
    /// Statechart files (or directories of them) to a PIM document.
    Frontend {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        /// Application dispatcher; found next to the charts when omitted.
        #[arg(long)]
        dispatcher: Option<PathBuf>,
        /// PIM output file; the dispatcher goes next to it as
        /// `<name>.dispatch.xml`. Prints the PIM when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// PIM plus platform profile to a PSM document.
    Transform {
        pim: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        /// Defaults to `<name>.dispatch.xml` next to the PIM, if present.
        #[arg(long)]
        dispatcher: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// PSM to source files.
    Codegen {
        psm: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Overrides the syntax recorded in the PSM.
        #[arg(long, value_enum)]
        syntax: Option<Syntax>,
    },
    /// Runs a PIM network: replays a script, or serves sessions over HTTP.
    Simulate {
        pim: PathBuf,
        #[arg(long)]
        dispatcher: Option<PathBuf>,
        /// Event script: `instance event` lines plus `@stub`/`@input`.
        #[arg(long, conflicts_with = "serve")]
        script: Option<PathBuf>,
        /// Stub and input directives, in event-script syntax.
        #[arg(long)]
        stubs: Option<PathBuf>,
        #[arg(long)]
        serve: bool,
        #[arg(long, default_value_t = 7878)]
        port: u16,
        /// Step budget per run; overrides AMDA_MAX_STEPS.
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Checks statecharts, PIM, PSM, dispatcher, profile or event-script files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Every stage: charts to PIM, PSM and sources under the output directory.
    Pipeline {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        profile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        #[arg(long)]
        dispatcher: Option<PathBuf>,
        /// Base name of the model files; defaults to the input directory
        /// or first chart name.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{}", .0.join("\n"))]
    Diagnostics(Vec<String>),
}

type Result<T> = std::result::Result<T, Failure>;

fn diag(file: &Path, code: &str, message: impl std::fmt::Display) -> Failure {
    Failure::Diagnostics(vec![format!("{}: {code}: {message}", file.display())])
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn warn(diags: &[Diagnostic], file: &str) {
    for d in diags {
        eprintln!("{file}: warning: {d}");
    }
}

fn strip_suffix<'a>(name: &'a str, suffixes: &[&str]) -> &'a str {
    suffixes
        .iter()
        .find_map(|s| name.strip_suffix(s))
        .unwrap_or(name)
}

/// `<dir>/<name>.dispatch.xml` for `<dir>/<name>.pim.xml`.
fn sibling_dispatcher(pim: &Path) -> PathBuf {
    let file = pim.file_name().and_then(|f| f.to_str()).unwrap_or_default();
    let stem = strip_suffix(file, &[".pim.xml", ".xml"]);
    pim.with_file_name(format!("{stem}.dispatch.xml"))
}

fn is_chart(name: &str) -> bool {
    name.ends_with(".statechart.xml") || name.ends_with(".xmi")
}

struct Sources {
    name: String,
    charts: Vec<Input>,
    dispatcher: Option<(PathBuf, String)>,
}

/// Charts and dispatcher from files and directories (not recursive).
fn collect(inputs: &[PathBuf], dispatcher: Option<&PathBuf>) -> Result<Sources> {
    let mut chart_paths = Vec::new();
    let mut found_disp = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Failure::Usage(format!("cannot list {}: {e}", p.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|e| e.is_file())
                .collect();
            entries.sort();
            for e in entries {
                let name = e.file_name().and_then(|f| f.to_str()).unwrap_or_default();
                if name.ends_with(".dispatch.xml") {
                    found_disp.push(e.clone());
                } else if is_chart(name) {
                    chart_paths.push(e.clone());
                }
            }
        } else if p.exists() {
            let name = p.file_name().and_then(|f| f.to_str()).unwrap_or_default();
            if name.ends_with(".dispatch.xml") {
                found_disp.push(p.clone());
            } else {
                chart_paths.push(p.clone());
            }
        } else {
            return Err(Failure::Usage(format!("no such file: {}", p.display())));
        }
    }
    if chart_paths.is_empty() {
        return Err(Failure::Usage(
            "no statechart files among the inputs".into(),
        ));
    }
    let disp_path = match (dispatcher, found_disp.as_slice()) {
        (Some(d), _) => Some(d.clone()),
        (None, []) => None,
        (None, [one]) => Some(one.clone()),
        (None, _) => {
            return Err(Failure::Usage(
                "several dispatcher files found; pick one with --dispatcher".into(),
            ))
        }
    };
    let name = match inputs {
        [single] if single.is_dir() => single
            .canonicalize()
            .ok()
            .and_then(|p| p.file_name().and_then(|f| f.to_str()).map(str::to_string)),
        _ => None,
    }
    .unwrap_or_else(|| {
        let file = chart_paths[0]
            .file_name()
            .and_then(|f| f.to_str())
            .unwrap_or("model");
        strip_suffix(file, &[".statechart.xml", ".xmi", ".xml"]).to_string()
    });
    let charts = chart_paths
        .iter()
        .map(|p| Ok(Input::new(p.display().to_string(), read(p)?)))
        .collect::<Result<Vec<_>>>()?;
    let dispatcher = match disp_path {
        Some(p) => {
            let text = read(&p)?;
            Some((p, text))
        }
        None => None,
    };
    Ok(Sources {
        name,
        charts,
        dispatcher,
    })
}

fn pipeline_failure(e: PipelineError) -> Failure {
    let file = match &e {
        PipelineError::Frontend { file, .. } | PipelineError::Flatten { file, .. } => file.clone(),
        _ => "network".into(),
    };
    match e {
        PipelineError::Invalid(diags) => Failure::Diagnostics(
            diags
                .iter()
                .map(|d| format!("{file}: {}: {d}", d.code))
                .collect(),
        ),
        other => Failure::Diagnostics(vec![format!("{file}: {}: {other}", other.code())]),
    }
}

/// PIM text and normalized dispatcher text, if any.
fn front(
    inputs: &[PathBuf],
    format: Format,
    dispatcher: Option<&PathBuf>,
) -> Result<(String, String, Option<String>)> {
    let src = collect(inputs, dispatcher)?;
    let built = build_network_with(&src.charts, format.chart_format()).map_err(pipeline_failure)?;
    warn(&built.warnings, &src.name);
    let disp = match &src.dispatcher {
        Some((path, text)) => {
            let d = read_dispatcher(text).map_err(|e| diag(path, e.code(), e))?;
            let errors: Vec<String> = d
                .validate(&built.net)
                .into_iter()
                .filter_map(|x| {
                    if x.code.is_warning() {
                        eprintln!("{}: warning: {x}", path.display());
                        None
                    } else {
                        Some(format!("{}: {}: {x}", path.display(), x.code))
                    }
                })
                .collect();
            if !errors.is_empty() {
                return Err(Failure::Diagnostics(errors));
            }
            Some(write_dispatcher(&d))
        }
        None => None,
    };
    Ok((src.name, write_pim_document(&built.net), disp))
}

fn dispatcher_for(pim: &Path, explicit: Option<&PathBuf>) -> Result<Option<(PathBuf, String)>> {
    let path = match explicit {
        Some(p) => p.clone(),
        None => {
            let s = sibling_dispatcher(pim);
            if !s.exists() {
                return Ok(None);
            }
            s
        }
    };
    let text = read(&path)?;
    Ok(Some((path, text)))
}

fn do_transform(pim: &Path, profile: &Path, dispatcher: Option<&PathBuf>) -> Result<String> {
    let pim_text = read(pim)?;
    let profile = load_profile_file(profile).map_err(|e| diag(profile, e.code(), e))?;
    let disp = dispatcher_for(pim, dispatcher)?;
    transform(&pim_text, disp.as_ref().map(|(_, t)| t.as_str()), &profile)
        .map_err(|e| diag(pim, e.code(), e))
}

fn do_codegen(psm: &Path, out: &Path, syntax: Option<Syntax>) -> Result<usize> {
    let text = read(psm)?;
    let syntax = syntax.map(|s| match s {
        Syntax::Java => TargetSyntax::JavaLike,
        Syntax::Csharp => TargetSyntax::CSharpLike,
    });
    let set = generate_from_text(&text, syntax).map_err(|e| diag(psm, e.code(), e))?;
    set.write_to(out)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(set.files.len())
}

fn load_session(
    pim: &Path,
    dispatcher: Option<&PathBuf>,
    script: &EventScript,
    max_steps: Option<u64>,
) -> Result<(DispatcherDoc, SimSession)> {
    let net = read_pim(&read(pim)?).map_err(|e| diag(pim, e.code(), e))?;
    let disp = match dispatcher_for(pim, dispatcher)? {
        Some((path, text)) => read_dispatcher(&text).map_err(|e| diag(&path, e.code(), e))?,
        None => default_dispatcher(&net),
    };
    let mut session = SimSession::instantiate(net, disp.clone(), script.stubs.clone())
        .map_err(|e| diag(pim, e.code(), e))?;
    session.set_max_steps(max_steps.unwrap_or_else(max_steps_from_env));
    Ok((disp, session))
}

fn print_snapshot(s: &Snapshot) {
    println!("# final snapshot at step {}", s.step);
    for i in &s.instances {
        let mut line = format!("{} {}", i.name, i.state_name);
        if !i.active {
            line.push_str(" (inactive)");
        }
        for (k, v) in &i.variables {
            line.push_str(&format!(" {k}={v}"));
        }
        println!("{line}");
    }
    for e in &s.possible_events {
        println!("possible {} {}", e.instance, e.event);
    }
}

fn simulate(
    pim: &Path,
    dispatcher: Option<&PathBuf>,
    script_path: Option<&PathBuf>,
    stubs: Option<&PathBuf>,
    max_steps: Option<u64>,
) -> Result<()> {
    let mut script = match script_path {
        Some(p) => parse_script(&read(p)?).map_err(|e| diag(p, e.code(), e))?,
        None => EventScript::default(),
    };
    if let Some(p) = stubs {
        let extra = parse_script(&read(p)?).map_err(|e| diag(p, e.code(), e))?;
        for (f, calls) in extra.stubs.functions {
            script.stubs.functions.entry(f).or_insert(calls);
        }
        script.inputs.extend(extra.inputs);
    }
    let (_, mut session) = load_session(pim, dispatcher, &script, max_steps)?;
    let outcome = session.run_script(&script);
    print!("{}", format_trace(session.trace()));
    print_snapshot(&session.snapshot());
    let origin = script_path.map_or(pim, |p| p.as_path());
    outcome.map_err(|e| diag(origin, e.code(), e))
}

fn serve(
    pim: &Path,
    dispatcher: Option<&PathBuf>,
    stubs: Option<&PathBuf>,
    port: u16,
    max_steps: Option<u64>,
) -> Result<()> {
    let script = match stubs {
        Some(p) => parse_script(&read(p)?).map_err(|e| diag(p, e.code(), e))?,
        None => EventScript::default(),
    };
    let (disp, session) = load_session(pim, dispatcher, &script, max_steps)?;
    let file = pim.file_name().and_then(|f| f.to_str()).unwrap_or("model");
    let model = amda_service::Model {
        name: strip_suffix(file, &[".pim.xml", ".xml"]).to_string(),
        net: session.network().clone(),
        disp,
        stubs: script.stubs,
    };
    let state = amda_service::AppState::new([model], max_steps);
    let rt = tokio::runtime::Runtime::new()
        .map_err(|e| Failure::Usage(format!("cannot start runtime: {e}")))?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port))
            .await
            .map_err(|e| Failure::Usage(format!("cannot bind port {port}: {e}")))?;
        let addr = listener
            .local_addr()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        eprintln!("listening on http://{addr}");
        amda_service::serve(listener, state)
            .await
            .map_err(|e| Failure::Usage(format!("server stopped: {e}")))
    })
}

fn document_element(text: &str) -> Option<String> {
    let mut rest = text.trim_start();
    loop {
        if let Some(r) = rest.strip_prefix("<!--") {
            rest = r.find("-->").map(|i| r[i + 3..].trim_start())?;
        } else if let Some(r) = rest.strip_prefix("<?").or_else(|| rest.strip_prefix("<!")) {
            rest = r.find('>').map(|i| r[i + 1..].trim_start())?;
        } else {
            break;
        }
    }
    let name: String = rest
        .strip_prefix('<')?
        .chars()
        .take_while(|c| !c.is_whitespace() && *c != '>' && *c != '/')
        .collect();
    Some(name)
}

fn validate_file(path: &Path) -> Result<String> {
    let text = read(path)?;
    let fail = |code: &str, e: &dyn std::fmt::Display| diag(path, code, e);
    let Some(root) = document_element(&text) else {
        let s = parse_script(&text).map_err(|e| fail(e.code(), &e))?;
        return Ok(format!("event script, {} events", s.events.len()));
    };
    match root.as_str() {
        "pim" => {
            let net = read_pim(&text).map_err(|e| fail(e.code(), &e))?;
            let diags = validate_network(&net);
            let (errors, warnings): (Vec<_>, Vec<_>) =
                diags.into_iter().partition(|d| !d.code.is_warning());
            warn(&warnings, &path.display().to_string());
            if !errors.is_empty() {
                return Err(Failure::Diagnostics(
                    errors
                        .iter()
                        .map(|d| format!("{}: {}: {d}", path.display(), d.code))
                        .collect(),
                ));
            }
            let sibling = sibling_dispatcher(path);
            if sibling.exists() {
                let d =
                    read_dispatcher(&read(&sibling)?).map_err(|e| diag(&sibling, e.code(), e))?;
                let errors: Vec<String> = d
                    .validate(&net)
                    .into_iter()
                    .filter(|x| !x.code.is_warning())
                    .map(|x| format!("{}: {}: {x}", sibling.display(), x.code))
                    .collect();
                if !errors.is_empty() {
                    return Err(Failure::Diagnostics(errors));
                }
            }
            Ok(format!("PIM, {} automata", net.automata.len()))
        }
        "dispatcher" => {
            let d = read_dispatcher(&text).map_err(|e| fail(e.code(), &e))?;
            Ok(format!("dispatcher, {} instances", d.instances.len()))
        }
        "profile" => {
            let p = load_profile_file(path).map_err(|e| fail(e.code(), &e))?;
            Ok(format!("profile `{}`", p.name))
        }
        r if r.starts_with("psm") => {
            let doc = parse_psm(&text).map_err(|e| fail(e.code(), &e))?;
            Ok(format!("PSM, {} automata", doc.automata.len()))
        }
        _ => {
            let format = ChartFormat::detect(&text);
            let doc = parse_statechart(&text, format).map_err(|e| fail(e.code(), &e))?;
            let input = Input::new(path.display().to_string(), text.clone());
            let built = build_network_with(&[input], Some(format)).map_err(pipeline_failure)?;
            warn(&built.warnings, &path.display().to_string());
            Ok(format!(
                "statechart, {} charts, {} automata",
                doc.root.chart_count(),
                built.net.automata.len()
            ))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Frontend {
            inputs,
            format,
            dispatcher,
            output,
        } => {
            let (_, pim, disp) = front(&inputs, format, dispatcher.as_ref())?;
            match output {
                Some(out) => {
                    write(&out, &pim)?;
                    if let Some(d) = disp {
                        write(&sibling_dispatcher(&out), &d)?;
                    }
                }
                None => print!("{pim}"),
            }
            Ok(())
        }
        Command::Transform {
            pim,
            profile,
            dispatcher,
            output,
        } => {
            let psm = do_transform(&pim, &profile, dispatcher.as_ref())?;
            match output {
                Some(out) => write(&out, &psm),
                None => {
                    print!("{psm}");
                    Ok(())
                }
            }
        }
        Command::Codegen {
            psm,
            output,
            syntax,
        } => {
            let n = do_codegen(&psm, &output, syntax)?;
            eprintln!("wrote {n} files to {}", output.display());
            Ok(())
        }
        Command::Simulate {
            pim,
            dispatcher,
            stubs,
            serve: true,
            port,
            max_steps,
            ..
        } => serve(&pim, dispatcher.as_ref(), stubs.as_ref(), port, max_steps),
        Command::Simulate {
            pim,
            dispatcher,
            script,
            stubs,
            max_steps,
            ..
        } => simulate(
            &pim,
            dispatcher.as_ref(),
            script.as_ref(),
            stubs.as_ref(),
            max_steps,
        ),
        Command::Validate { files } => {
            let mut failures = Vec::new();
            for f in &files {
                match validate_file(f) {
                    Ok(summary) => println!("{}: ok ({summary})", f.display()),
                    Err(Failure::Diagnostics(d)) => failures.extend(d),
                    Err(usage) => return Err(usage),
                }
            }
            if failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Diagnostics(failures))
            }
        }
        Command::Pipeline {
            inputs,
            profile,
            output,
            format,
            dispatcher,
            name,
        } => {
            let (found, pim, disp) = front(&inputs, format, dispatcher.as_ref())?;
            let name = name.unwrap_or(found);
            let pim_path = output.join(format!("{name}.pim.xml"));
            let psm_path = output.join(format!("{name}.psm.xml"));
            write(&pim_path, &pim)?;
            let disp_path = sibling_dispatcher(&pim_path);
            match &disp {
                Some(d) => write(&disp_path, d)?,
                None if disp_path.exists() => {
                    std::fs::remove_file(&disp_path).map_err(|e| {
                        Failure::Usage(format!("cannot remove {}: {e}", disp_path.display()))
                    })?;
                }
                None => {}
            }
            let psm = do_transform(&pim_path, &profile, None)?;
            write(&psm_path, &psm)?;
            let platform = parse_psm(&psm)
                .ok()
                .and_then(|d| d.profile)
                .unwrap_or_else(|| "generated".into());
            let gen = output.join("gen").join(platform);
            let n = do_codegen(&psm_path, &gen, None)?;
            eprintln!(
                "wrote {}, {} and {n} source files under {}",
                pim_path.display(),
                psm_path.display(),
                gen.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("amda: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Diagnostics(d)) => {
            for line in d {
                eprintln!("{line}");
            }
            ExitCode::from(1)
        }
    }
}
