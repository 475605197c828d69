use catlab::catalysis::{
    certify_decoupling, joint_dimension, run_protocol, sweep, synthetic_construction, write_sweep_csv, Noise, SweepPoint,
};
use catlab::locc::{catalyst_search, nielsen_convertible};
use catlab::measures::{entanglement_entropy, marginal_entropy, pure_marginal_entropy, von_neumann_entropy};
use catlab::protocols::{distillation_ledger, merging_ledger};
use catlab::qstate::StateFile;
use catlab::{DensityOperator, Error, ResourceLedger, Result};

use crate::input::{default_cut, load, load_pure};
use crate::output::{reals, write_file, Report};
use crate::{Cli, Command, NoiseKind, RunArgs, Verdict};

pub fn run(cli: &Cli) -> Result<Verdict> {
    let seed = cli.seed;
    match &cli.command {
        Command::Analyze { state, cut } => analyze(cli, &load(state, seed)?, cut),
        Command::Convert { psi, phi, cut } => convert(cli, psi, phi, cut),
        Command::FindCatalyst { psi, phi, cut, catalyst_dim, grid_steps } => {
            find_catalyst(cli, psi, phi, cut, *catalyst_dim, *grid_steps)
        }
        Command::Simulate { rho, phi, n, epsilon, run } => simulate(cli, rho, phi, *n, *epsilon, run),
        Command::Sweep { rho, phi, n, epsilon, run } => run_sweep(cli, rho, phi, n, epsilon, run),
        Command::MergeLedger { state } => ledger(cli, merging_ledger(&load_pure(state, seed)?)?),
        Command::DistillLedger { state } => ledger(cli, distillation_ledger(&load_pure(state, seed)?)?),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.render();
    print!("{text}");
    if let Some(path) = &cli.out {
        write_file(path, &text)?;
    }
    Ok(())
}

fn analyze(cli: &Cli, state: &StateFile<f64>, cut: &[String]) -> Result<Verdict> {
    let layout = state.layout();
    let mut report = Report::default();
    report.line("layout", layout.to_string());
    let rho = state.to_density();
    report.line("kind", if matches!(state, StateFile::Pure(_)) { "pure" } else { "density" });
    report.real("purity", rho.purity());
    match state {
        StateFile::Pure(psi) => {
            for label in layout.labels() {
                report.real(format!("entropy[{label}]"), pure_marginal_entropy(psi, &[label])?.bits());
            }
            if layout.len() >= 2 {
                let cut = default_cut(layout, cut);
                let schmidt = psi.schmidt(&cut)?;
                let name = format!("{}|{}", cut.join(","), layout.complement(&cut)?.join(","));
                report.real(format!("entanglement_entropy[{name}]"), entanglement_entropy(psi, &cut)?.bits());
                report.line(format!("schmidt_coefficients[{name}]"), reals(&schmidt.coefficients));
                report.line(format!("schmidt_spectrum[{name}]"), reals(&schmidt.spectrum()));
            }
        }
        StateFile::Density(_) => {
            report.real("entropy", von_neumann_entropy(&rho).bits());
            if layout.len() >= 2 {
                for label in layout.labels() {
                    report.real(format!("entropy[{label}]"), marginal_entropy(&rho, &[label])?.bits());
                }
            }
        }
    }
    emit(cli, &report)?;
    Ok(Verdict::Done)
}

fn convert(cli: &Cli, psi: &str, phi: &str, cut: &[String]) -> Result<Verdict> {
    let psi = load_pure(psi, cli.seed)?;
    let phi = load_pure(phi, cli.seed)?;
    let cut = default_cut(psi.layout(), cut);
    let result = nielsen_convertible(&psi, &phi, &cut)?;
    let e_psi = entanglement_entropy(&psi, &cut)?.bits();
    let e_phi = entanglement_entropy(&phi, &cut)?.bits();
    let mut report = Report::default();
    report
        .line("cut", cut.join(","))
        .line("direct", result.direct.to_string())
        .line("violated_index", result.violated_index.map_or("none".to_string(), |k| k.to_string()))
        .real("entropy_psi", e_psi)
        .real("entropy_phi", e_phi)
        .line("entropy_condition", (e_psi >= e_phi - 1e-9).to_string());
    emit(cli, &report)?;
    Ok(Verdict::Done)
}

fn find_catalyst(cli: &Cli, psi: &str, phi: &str, cut: &[String], dim: usize, steps: usize) -> Result<Verdict> {
    let psi = load_pure(psi, cli.seed)?;
    let phi = load_pure(phi, cli.seed)?;
    let cut = default_cut(psi.layout(), cut);
    let direct = nielsen_convertible(&psi, &phi, &cut)?.direct;
    let found = catalyst_search(&psi, &phi, &cut, dim, steps)?;
    let mut report = Report::default();
    report
        .line("cut", cut.join(","))
        .line("catalyst_dim", dim.to_string())
        .line("grid_steps", steps.to_string())
        .line("direct", direct.to_string())
        .line("catalyst", found.map_or("none".to_string(), |c| reals(c.entries())));
    emit(cli, &report)?;
    Ok(Verdict::Done)
}

fn noise(kind: NoiseKind, rho: &DensityOperator) -> Noise<f64> {
    match kind {
        NoiseKind::MaximallyMixed => Noise::MaximallyMixed,
        NoiseKind::Input => Noise::InputState(rho.clone()),
    }
}

fn simulate(cli: &Cli, rho: &str, phi: &str, n: usize, epsilon: f64, run: &RunArgs) -> Result<Verdict> {
    let rho = load(rho, cli.seed)?.to_density();
    let phi = load_pure(phi, cli.seed)?;
    let required = joint_dimension(rho.dim(), n).unwrap_or(usize::MAX);
    if required > run.dim_cap {
        return Err(Error::ResourceCap { required, allowed: run.dim_cap });
    }
    let (construction, channel) = synthetic_construction(&rho, &phi, n, epsilon, &noise(run.noise, &rho))?;
    let r = run_protocol(&construction, &channel)?;
    let pass = certify_decoupling(&r);
    let mut report = Report::default();
    report
        .line("n", n.to_string())
        .real("epsilon", epsilon)
        .line("joint_dim", construction.joint_dim().to_string())
        .line("catalyst_dim", construction.tau().dim().to_string())
        .real("catalyst_deviation", r.catalyst_deviation)
        .real("output_error", r.output_error)
        .real("mean_marginal_error", r.mean_marginal_error)
        .real("gamma_error", r.gamma_error)
        .real("decoupling_error", r.decoupling_error)
        .real("ideal_distance", r.ideal_distance)
        .real("system_fidelity", r.system_fidelity)
        .real("leading_schmidt", r.leading_schmidt)
        .real("register_coherence", r.register_coherence)
        .real("epsilon_bound", r.epsilon_bound)
        .real("decoupling_bound", r.decoupling_bound)
        .line("certificate", if pass { "PASS" } else { "FAIL" });
    print!("{}", report.render());
    if let Some(path) = &cli.out {
        write_file(path, &StateFile::Density(r.final_joint.clone()).to_json_string())?;
    }
    Ok(if pass { Verdict::Done } else { Verdict::Failed })
}

fn run_sweep(cli: &Cli, rho: &str, phi: &str, ns: &[usize], epsilons: &[f64], run: &RunArgs) -> Result<Verdict> {
    if ns.len() > 1 && epsilons.len() > 1 {
        return Err(Error::InvalidParameter("sweep varies either --n or --epsilon, not both".into()));
    }
    let rho = load(rho, cli.seed)?.to_density();
    let phi = load_pure(phi, cli.seed)?;
    let points: Vec<SweepPoint<f64>> =
        ns.iter().flat_map(|&n| epsilons.iter().map(move |&epsilon| SweepPoint { n, epsilon })).collect();
    let rows = sweep(&rho, &phi, &noise(run.noise, &rho), &points, run.dim_cap)?;
    let mut table = Vec::new();
    write_sweep_csv(&rows, &mut table)?;
    let table = String::from_utf8(table).map_err(|e| Error::Io(e.to_string()))?;
    match &cli.out {
        Some(path) => {
            write_file(path, &table)?;
            println!("{} rows written to {}", rows.len(), path.display());
        }
        None => print!("{table}"),
    }
    Ok(if rows.iter().all(|r| r.pass) { Verdict::Done } else { Verdict::Failed })
}

fn ledger(cli: &Cli, ledger: ResourceLedger) -> Result<Verdict> {
    let mut report = Report::default();
    report
        .real("conditional_entropy", ledger.conditional_entropy)
        .line("case", ledger.case.as_str())
        .line("resource_spectrum", reals(ledger.resource_spectrum.entries()))
        .real("resource_entropy", ledger.resource_entropy)
        .line("direction", ledger.direction.map_or("none", |d| d.as_str()));
    print!("{}", report.render());
    if let Some(path) = &cli.out {
        let json = serde_json::to_string_pretty(&ledger.to_json()).map_err(|e| Error::Io(e.to_string()))?;
        write_file(path, &json)?;
    }
    Ok(Verdict::Done)
}

