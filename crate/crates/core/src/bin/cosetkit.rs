use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use cosetkit::script::{check_certificate_file, run_script, Format, RunOptions, EXIT_ERROR, EXIT_OK, EXIT_VERIFY};

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Run cosetkit scripts or re-check decomposition certificates.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Script file; reads stdin when absent or "-".
    script: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Window radius used by `compare` when no radius is given.
    #[arg(long, env = "COSETKIT_WINDOW_RADIUS", default_value_t = 20)]
    window_radius: u64,

    /// Directory for certificate files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,

    /// Verify a certificate file and exit.
    #[arg(long, value_name = "FILE", conflicts_with = "script")]
    check: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = if let Some(path) = cli.check {
        match check_certificate_file(&path) {
            Ok(v) if v.accepted => {
                println!("{}: accepted", path.display());
                EXIT_OK
            }
            Ok(v) => {
                println!("{}: rejected ({})", path.display(), v.reason.unwrap_or_default());
                EXIT_VERIFY
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        }
    } else {
        let source = match cli.script.as_deref() {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string())
            }
        };
        match source {
            Ok(src) => {
                let format = match cli.format {
                    OutputFormat::Text => Format::Text,
                    OutputFormat::Json => Format::Json,
                };
                let opts = RunOptions { format, window_radius: cli.window_radius, out_dir: cli.out_dir };
                run_script(&src, &opts, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        }
    };
    ExitCode::from(code as u8)
}
