use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use l1frac::experiments::{
    decade_n_list, default_n_list, em_sweep, emit_csv, emit_table, operator_rate_sweep, residue_sweep,
    ConvergenceReport, Which,
};
use l1frac::{
    caputo_l1, compose_kernel, frac_integral_l1, kernel_table, weight_sequence, Error, FracOrder, GridFunction,
    QuadratureSpec, TestFunction, UniformMesh,
};

/// L1 fractional operators and their convergence experiments. Output is CSV.
#[derive(Parser, Debug)]
#[command(name = "l1frac", version)]
struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The L1 weights b_j = j^β − (j−1)^β for j = 1..N.
    Weights {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
    },
    /// The composition kernel S_m for m = 1..N, and its limit.
    Kernel {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        n: usize,
    },
    /// A discrete operator on a sampled test function, over the whole grid.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        func: TestFunction,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
    },
    /// Residue of the composition at the final time against h.
    Residue {
        #[arg(long)]
        func: TestFunction,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        /// Step counts; defaults to 8,16,...,8192.
        #[arg(long, value_delimiter = ',', conflicts_with = "decades")]
        n_list: Option<Vec<usize>>,
        /// Use n = 10, 100, ..., 10^I_MAX instead.
        #[arg(long, value_name = "I_MAX")]
        decades: Option<u32>,
    },
    /// Error of the Euler–Maclaurin integral term against m.
    Em {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
        m_list: Vec<usize>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Error of the discrete integral or derivative at the final time against h.
    Rates {
        #[arg(long)]
        which: Which,
        #[arg(long)]
        func: TestFunction,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        /// Step counts; defaults to 8,16,...,8192.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        #[command(flatten)]
        quad: QuadArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Op {
    Integral,
    Derivative,
    Compose,
}

#[derive(Args, Debug)]
struct QuadArgs {
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 2000)]
    max_subdivisions: usize,
}

impl QuadArgs {
    fn spec(&self) -> Result<QuadratureSpec, Error> {
        QuadratureSpec::new(self.abs_tol, self.rel_tol, self.max_subdivisions)
    }
}

enum Failure {
    Lib(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn write_out<F>(path: Option<&Path>, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let stdout = PathBuf::from("<stdout>");
    let target = path.unwrap_or(&stdout);
    let wrap = |e| Failure::Io(target.to_path_buf(), e);
    let mut w: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(wrap)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    body(&mut w).map_err(wrap)?;
    w.flush().map_err(wrap)
}

fn report_out(path: Option<&Path>, report: &ConvergenceReport) -> Result<(), Failure> {
    write_out(path, |w| emit_csv(report, w))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.output.as_deref();
    match cli.command {
        Command::Weights { beta, n } => {
            let seq = weight_sequence(n, beta)?;
            let rows = seq.values().iter().enumerate().map(|(i, &b)| (i + 1, vec![b]));
            write_out(out, |w| emit_table(w, &["j", "b_j"], rows, &[("beta", beta.to_string())]))
        }
        Command::Kernel { alpha, n } => {
            let order = FracOrder::new(alpha)?;
            let table = kernel_table(n, order)?;
            let rows = table.values().iter().enumerate().map(|(i, &s)| (i + 1, vec![s]));
            let meta = [("alpha", alpha.to_string()), ("limit", format!("{:.16e}", table.limit()))];
            write_out(out, |w| emit_table(w, &["m", "S_m"], rows, &meta))
        }
        Command::Apply { op, func, alpha, n, t } => {
            let order = FracOrder::new(alpha)?;
            let mesh = UniformMesh::with_final_time(t, n)?;
            let y = GridFunction::sample(mesh, |s| func.eval(s))?;
            let result = match op {
                Op::Integral => frac_integral_l1(&y, order)?,
                Op::Derivative => caputo_l1(&y, order)?,
                Op::Compose => compose_kernel(&y, order)?,
            };
            let rows = result
                .samples()
                .iter()
                .enumerate()
                .map(|(k, &v)| (k, vec![mesh.t(k), y.samples()[k], v]));
            let meta = [
                ("op", format!("{op:?}").to_lowercase()),
                ("function", func.name().to_string()),
                ("alpha", alpha.to_string()),
                ("t", t.to_string()),
            ];
            write_out(out, |w| emit_table(w, &["k", "t", "y", "value"], rows, &meta))
        }
        Command::Residue {
            func,
            alpha,
            t,
            n_list,
            decades,
        } => {
            let order = FracOrder::new(alpha)?;
            let ns = match (n_list, decades) {
                (Some(ns), _) => ns,
                (None, Some(i)) => decade_n_list(i),
                (None, None) => default_n_list(),
            };
            report_out(out, &residue_sweep(&func, order, t, &ns)?)
        }
        Command::Em { alpha, m_list, quad } => {
            let order = FracOrder::new(alpha)?;
            report_out(out, &em_sweep(order, &m_list, &quad.spec()?)?)
        }
        Command::Rates {
            which,
            func,
            alpha,
            t,
            n_list,
            quad,
        } => {
            let order = FracOrder::new(alpha)?;
            let ns = n_list.unwrap_or_else(default_n_list);
            report_out(out, &operator_rate_sweep(&func, order, t, &ns, which, &quad.spec()?)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_tolerance_failure() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: writing {}: {e}", path.display());
            ExitCode::FAILURE
        }
    }
}
