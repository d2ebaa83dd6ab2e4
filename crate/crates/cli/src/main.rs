use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypfocal::SurfaceTag;
use hypfocal_cli::export::{export_obj, render_evolute_csv, render_frames_csv, render_loci_csv};
use hypfocal_cli::report::Status;
use hypfocal_cli::{load_spec, run_pipeline, CliError, CurveSpec, Projection, Session};

#[derive(Parser)]
#[command(name = "hypfocal", version, about = "Focal surfaces, evolutes and their singularities for framed curves in H^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the frame and write frames.csv.
    Integrate(Common),
    /// Singular loci of the focal surfaces (focal_loci.csv) and their meshes.
    Focal(Common),
    /// Evolute samples and point types (evolutes.csv).
    Evolute(Common),
    /// Singular loci of the dual surfaces of the evolutes (dual_loci.csv) and their meshes.
    Dual(Common),
    /// Classified loci of all four surfaces (loci.csv).
    Classify(Common),
    /// Correspondence and duality checks (verify.json).
    Verify(Common),
    /// Full pipeline; writes the products the spec lists.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// Curve-spec JSON document.
    #[arg(long)]
    spec: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Tolerance override, e.g. --tol sing=1e-9. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = value.trim().parse().map_err(|_| format!("{value:?} is not a number"))?;
    Ok((name.trim().to_string(), v))
}

fn prepare(c: &Common) -> Result<CurveSpec, CliError> {
    let mut spec = load_spec(&c.spec)?;
    spec.tolerances(&c.tol)?;
    spec.tolerances.extend(c.tol.iter().cloned());
    std::fs::create_dir_all(&c.out).map_err(|e| CliError::Io { path: c.out.clone(), source: e })?;
    Ok(spec)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    println!("wrote {}", path.display());
    Ok(())
}

fn meshes(session: &Session, tags: &[SurfaceTag], out: &Path) -> Result<(), CliError> {
    for mesh in session.meshes().into_iter().filter(|m| tags.contains(&m.surface)) {
        let path = out.join(format!("{}.obj", mesh.surface.name()));
        export_obj(&mesh, Projection::for_quadric(mesh.surface.quadric()), &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn loci_of(session: &Session, tags: &[SurfaceTag]) -> Vec<hypfocal::SingularPointRecord> {
    let mut issues = Vec::new();
    let recs: Vec<_> = session.loci(&mut issues).into_iter().filter(|r| tags.contains(&r.surface)).collect();
    for i in issues {
        eprintln!("warning: {} at t = {:?}: {}", i.stage, i.t, i.message);
    }
    recs
}

fn fail_on_checks(report: &hypfocal_cli::RunReport) -> Result<(), CliError> {
    for c in &report.checks {
        let mark = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        println!("{mark:>4}  {}: {}", c.name, c.detail);
    }
    let failed: Vec<String> = report.failed_checks().iter().map(|c| c.name.clone()).collect();
    if failed.is_empty() { Ok(()) } else { Err(CliError::ChecksFailed(failed)) }
}

fn execute(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Integrate(c) => {
            let spec = prepare(&c)?;
            let s = Session::new(&spec)?;
            write(&c.out.join("frames.csv"), &render_frames_csv(&s.model, &s.ts)?)?;
            let st = &s.model.stats;
            println!("{} steps of {}, max drift {:e} at t = {}", st.steps, st.step, st.max_drift, st.worst_t);
        }
        Command::Focal(c) => {
            let s = Session::new(&prepare(&c)?)?;
            let tags = [SurfaceTag::FocalH, SurfaceTag::FocalD];
            write(&c.out.join("focal_loci.csv"), &render_loci_csv(&loci_of(&s, &tags))?)?;
            meshes(&s, &tags, &c.out)?;
        }
        Command::Evolute(c) => {
            let s = Session::new(&prepare(&c)?)?;
            write(&c.out.join("evolutes.csv"), &render_evolute_csv(&s.evolutes())?)?;
        }
        Command::Dual(c) => {
            let s = Session::new(&prepare(&c)?)?;
            let tags = [SurfaceTag::DualOfEh, SurfaceTag::DualOfEd];
            write(&c.out.join("dual_loci.csv"), &render_loci_csv(&loci_of(&s, &tags))?)?;
            meshes(&s, &tags, &c.out)?;
        }
        Command::Classify(c) => {
            let s = Session::new(&prepare(&c)?)?;
            write(&c.out.join("loci.csv"), &render_loci_csv(&loci_of(&s, &SurfaceTag::ALL))?)?;
        }
        Command::Verify(c) => {
            let report = run_pipeline(&prepare(&c)?, None)?;
            let body = serde_json::json!({
                "spec_digest": report.spec_digest,
                "correspondence": report.correspondence,
                "duality": report.duality,
                "checks": report.checks,
            });
            let mut text = serde_json::to_string_pretty(&body).expect("serializable");
            text.push('\n');
            write(&c.out.join("verify.json"), &text)?;
            fail_on_checks(&report)?;
        }
        Command::Run(c) => {
            let report = run_pipeline(&prepare(&c)?, Some(&c.out))?;
            println!("outputs in {}", c.out.display());
            fail_on_checks(&report)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Usage errors are input errors (exit 1); 2 is kept for numeric failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
