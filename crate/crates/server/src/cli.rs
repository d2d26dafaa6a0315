//! Command-line entry: solve, mincut and fmt work on edgelist files; serve
//! runs the HTTP gateway.

use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use flowtutor::edgelist::{parse_edgelist, serialize_edgelist, ParseError};
use flowtutor::{find_min_cut, solve, FlowNetwork, StrategyName};
use thiserror::Error;

use crate::gateway::Gateway;

#[derive(Debug, Parser)]
#[command(name = "flowtutor", version, about = "Max-flow tutoring engine")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run Ford-Fulkerson and print the value, iteration count and history.
    Solve {
        /// Edgelist file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, default_value = "shortest", value_parser = parse_strategy)]
        strategy: StrategyName,
        /// Seed for the random strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the smallest minimum cut.
    Mincut { file: PathBuf },
    /// Print the canonical form of an edgelist.
    Fmt { file: PathBuf },
    /// Run the HTTP gateway.
    Serve {
        #[arg(long, env = "FLOWTUTOR_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "FLOWTUTOR_HOST", default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Seconds a session may sit idle before it is dropped.
        #[arg(long, env = "FLOWTUTOR_IDLE_TIMEOUT", default_value_t = 86_400)]
        idle_timeout: u64,
    },
}

fn parse_strategy(s: &str) -> Result<StrategyName, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{}", .errors.iter().map(|e| format!("{}: {e}", .path)).collect::<Vec<_>>().join("\n"))]
    Parse { path: String, errors: Vec<ParseError> },
    #[error("{0}")]
    Engine(String),
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load(path: &Path) -> Result<FlowNetwork, CliError> {
    let text = read_input(path)?;
    parse_edgelist(&text).map_err(|errors| CliError::Parse {
        path: path.display().to_string(),
        errors,
    })
}

/// Runs a file subcommand, writing its report to `out`. `serve` is handled
/// by [`main`].
pub fn run(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    let w = |r: io::Result<()>| {
        r.map_err(|source| CliError::Io {
            path: "<stdout>".to_string(),
            source,
        })
    };
    match command {
        Command::Solve { file, strategy, seed } => {
            let net = load(file)?;
            let res = solve(&net, strategy.with_seed(*seed)).map_err(|e| CliError::Engine(e.to_string()))?;
            w(writeln!(out, "value {}", res.value))?;
            w(writeln!(out, "iterations {}", res.iterations))?;
            for (i, step) in res.history.iter().enumerate() {
                w(writeln!(out, "{:>3}. {} +{}", i + 1, step.path, step.amount))?;
            }
        }
        Command::Mincut { file } => {
            let net = load(file)?;
            let cut = find_min_cut(&net).map_err(|e| CliError::Engine(e.to_string()))?;
            w(writeln!(out, "{cut}"))?;
        }
        Command::Fmt { file } => {
            let net = load(file)?;
            w(out.write_all(serialize_edgelist(&net).as_bytes()))?;
        }
        Command::Serve { .. } => unreachable!("serve is not a file command"),
    }
    Ok(())
}

pub async fn serve(addr: SocketAddr, idle_timeout: Duration) -> io::Result<()> {
    let gateway = Arc::new(Gateway::new(idle_timeout));
    let sweeper = Arc::clone(&gateway);
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(idle_timeout.clamp(Duration::from_secs(1), Duration::from_secs(60)));
        loop {
            tick.tick().await;
            sweeper.store().purge_expired();
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, crate::http::router(gateway))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

/// Process entry point; returns the exit status.
pub fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Serve {
            port,
            host,
            idle_timeout,
        } => tokio::runtime::Runtime::new()
            .and_then(|rt| rt.block_on(serve(SocketAddr::new(*host, *port), Duration::from_secs(*idle_timeout))))
            .map_err(|source| CliError::Io {
                path: "server".to_string(),
                source,
            }),
        command => run(command, &mut io::stdout().lock()),
    };
    match result {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::ExitCode::FAILURE
        }
    }
}
