//! Command-line front end.
//!
//! Flags are parsed by clap into [`Cli`], then validated into a [`RunConfig`]
//! before anything is computed. [`RunConfig::execute`] renders the complete
//! output in memory, so a failing run never leaves a partial file behind.

pub mod format;

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{sweep_grid, AxisRange, GateParams, Panel, SweepAxis, DEFAULT_RESOLUTION};
use crate::device::{self, PulseSegment, PulseSpec, RashbaSpec};
use crate::hilbert::{Layout, SpinInput, StateVector};
use crate::montecarlo::{self, DetectorModel, ShotRecord};
use crate::protocol;
use crate::EXACT_TOL;

use format::{g12, grid_csv, key_value_csv};

#[derive(Debug, Parser)]
#[command(
    name = "spinreadout",
    version,
    about = "Spin-to-charge readout simulator for coupled quantum dots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the readout sequence on one input spin and report the output state.
    Protocol(ProtocolArgs),
    /// Sweep the averaged readout error over two gate parameters.
    Errmap(ErrmapArgs),
    /// Sample single-shot readouts.
    Montecarlo(MonteCarloArgs),
    /// Device parameter calculators.
    #[command(subcommand)]
    Device(DeviceCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    TwoDot,
    ThreeDot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PanelArg {
    A,
    B,
    C,
    Custom,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Polar angle of the input spin, radians in [0, π].
    #[arg(long, allow_hyphen_values = true)]
    pub delta: f64,
    /// Relative phase of the spin-down component, radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GateArgs {
    /// Use ideal gates (θ1, θ2, ψ, φ) = (π/4, π/4, π/2, π); explicit values override.
    #[arg(long)]
    pub ideal: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
}

impl GateArgs {
    fn any_explicit(&self) -> bool {
        self.theta1.is_some() || self.theta2.is_some() || self.psi.is_some() || self.phi.is_some()
    }

    /// Without `--ideal` every angle must be given.
    fn resolve(&self) -> Result<GateParams> {
        let base = GateParams::ideal();
        let pick = |name: &str, v: Option<f64>, ideal: f64| match (v, self.ideal) {
            (Some(v), _) => Ok(v),
            (None, true) => Ok(ideal),
            (None, false) => Err(anyhow!("missing --{name} (or pass --ideal)")),
        };
        let params = GateParams::new(
            pick("theta1", self.theta1, base.theta1)?,
            pick("theta2", self.theta2, base.theta2)?,
            pick("psi", self.psi, base.psi)?,
            pick("phi", self.phi, base.phi)?,
        );
        params.validate()?;
        Ok(params)
    }

    /// Like [`GateArgs::resolve`] but falls back to ideal values silently.
    fn resolve_or_ideal(&self) -> Result<GateParams> {
        GateArgs {
            ideal: true,
            ..self.clone()
        }
        .resolve()
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Output format; the default depends on the command.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Args)]
pub struct ProtocolArgs {
    #[arg(long, value_enum, default_value = "two-dot")]
    pub variant: Variant,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub gates: GateArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ErrmapArgs {
    #[arg(long, value_enum)]
    pub panel: PanelArg,
    /// Points per axis.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Axis 1 range as `min,max` (radians).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range1: Option<(f64, f64)>,
    /// Axis 2 range as `min,max` (radians).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range2: Option<(f64, f64)>,
    /// Swept quantity for a custom panel: theta1, theta2, psi, phi, theta, psi-locked.
    #[arg(long)]
    pub axis1: Option<String>,
    #[arg(long)]
    pub axis2: Option<String>,
    /// Fixed gate values (custom panel only).
    #[command(flatten)]
    pub gates: GateArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MonteCarloArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub gates: GateArgs,
    #[arg(long)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probability that an electron in dot 1 is detected.
    #[arg(long, default_value_t = 1.0)]
    pub efficiency: f64,
    /// Probability of reporting a charge on an empty dot 1.
    #[arg(long, default_value_t = 0.0)]
    pub false_positive: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Subcommand)]
pub enum DeviceCommand {
    /// Rabi angle of a piecewise-constant tunneling pulse.
    PulseAngle {
        /// Comma-separated `amplitude:duration` pairs in µeV and ns.
        #[arg(long, allow_hyphen_values = true)]
        segments: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Constant tunneling amplitude (µeV) reaching an angle in a given time.
    PulseForAngle {
        #[arg(long, allow_hyphen_values = true)]
        angle: f64,
        /// Pulse duration in ns.
        #[arg(long, allow_hyphen_values = true)]
        duration: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Length of the Rashba region for a spin rotation.
    RashbaLength {
        /// Rashba coefficient, eV·m.
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Effective mass in units of the free-electron mass.
        #[arg(long, default_value_t = device::DEFAULT_EFFECTIVE_MASS, allow_hyphen_values = true)]
        mass: f64,
        /// Target rotation, radians.
        #[arg(long, default_value_t = FRAC_PI_2, allow_hyphen_values = true)]
        angle: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spin rotation accumulated across a Rashba region.
    RashbaAngle {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = device::DEFAULT_EFFECTIVE_MASS, allow_hyphen_values = true)]
        mass: f64,
        /// Region length, nm.
        #[arg(long, allow_hyphen_values = true)]
        length: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `min,max`, got `{s}`"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("`{t}`: {e}"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_segments(s: &str) -> Result<PulseSpec> {
    let segments = s
        .split(',')
        .map(|seg| {
            let (a, d) = seg
                .split_once(':')
                .ok_or_else(|| anyhow!("segment `{seg}` is not `amplitude:duration`"))?;
            Ok(PulseSegment {
                amplitude_uev: a.trim().parse().with_context(|| format!("amplitude `{a}`"))?,
                duration_ns: d.trim().parse().with_context(|| format!("duration `{d}`"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PulseSpec::new(segments)?)
}

/// A fully validated job.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Protocol {
        variant: Variant,
        input: SpinInput,
        params: GateParams,
    },
    Errmap {
        axis1: AxisRange,
        axis2: AxisRange,
        fixed: GateParams,
        resolution: usize,
    },
    MonteCarlo {
        input: SpinInput,
        params: GateParams,
        shots: u64,
        seed: u64,
        detector: DetectorModel,
    },
    PulseAngle(PulseSpec),
    PulseForAngle {
        angle: f64,
        duration_ns: f64,
    },
    RashbaLength(RashbaSpec),
    RashbaAngle {
        alpha: f64,
        mass: f64,
        length_nm: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub job: Job,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        match &cli.command {
            Command::Protocol(a) => {
                let input = SpinInput::new(a.input.delta, a.input.gamma)?;
                let params = match a.variant {
                    Variant::TwoDot => a.gates.resolve()?,
                    Variant::ThreeDot => {
                        let p = a.gates.resolve_or_ideal()?;
                        if p != GateParams::ideal() {
                            bail!("the three-dot variant only runs with ideal gates");
                        }
                        p
                    }
                };
                Ok(Self::with(
                    Job::Protocol {
                        variant: a.variant,
                        input,
                        params,
                    },
                    &a.out,
                    OutputFormat::Json,
                ))
            }
            Command::Errmap(a) => {
                let (axis1, axis2, fixed) = match a.panel {
                    PanelArg::Custom => {
                        let parse = |flag: &str, v: &Option<String>| -> Result<SweepAxis> {
                            let name =
                                v.as_deref().ok_or_else(|| anyhow!("custom panel needs --{flag}"))?;
                            Ok(name.parse()?)
                        };
                        (
                            parse("axis1", &a.axis1)?,
                            parse("axis2", &a.axis2)?,
                            a.gates.resolve_or_ideal()?,
                        )
                    }
                    panel => {
                        if a.axis1.is_some() || a.axis2.is_some() {
                            bail!("--axis1/--axis2 are only accepted with --panel custom");
                        }
                        if a.gates.ideal || a.gates.any_explicit() {
                            bail!("fixed gate values are only accepted with --panel custom");
                        }
                        let panel = match panel {
                            PanelArg::A => Panel::A,
                            PanelArg::B => Panel::B,
                            _ => Panel::C,
                        };
                        let (x, y) = panel.axes();
                        (x, y, panel.fixed())
                    }
                };
                let range = |axis: SweepAxis, r: Option<(f64, f64)>| {
                    let (min, max) = r.unwrap_or_else(|| axis.default_range());
                    AxisRange::new(axis, min, max)
                };
                let axis1 = range(axis1, a.range1);
                let axis2 = range(axis2, a.range2);
                for (flag, r) in [("range1", axis1), ("range2", axis2)] {
                    if !(r.min.is_finite() && r.max.is_finite()) {
                        bail!("--{flag} must be finite");
                    }
                    if r.min > r.max {
                        bail!("--{flag}: min {} exceeds max {}", r.min, r.max);
                    }
                }
                if axis1.axis.overlaps(axis2.axis) {
                    bail!("axes {} and {} overlap", axis1.axis, axis2.axis);
                }
                if a.resolution < 2 {
                    bail!("--resolution must be at least 2, got {}", a.resolution);
                }
                Ok(Self::with(
                    Job::Errmap {
                        axis1,
                        axis2,
                        fixed,
                        resolution: a.resolution,
                    },
                    &a.out,
                    OutputFormat::Csv,
                ))
            }
            Command::Montecarlo(a) => {
                let input = SpinInput::new(a.input.delta, a.input.gamma)?;
                let params = a.gates.resolve()?;
                if a.shots == 0 {
                    bail!("--shots must be at least 1");
                }
                let detector = DetectorModel::new(a.efficiency, a.false_positive)?;
                Ok(Self::with(
                    Job::MonteCarlo {
                        input,
                        params,
                        shots: a.shots,
                        seed: a.seed,
                        detector,
                    },
                    &a.out,
                    OutputFormat::Json,
                ))
            }
            Command::Device(d) => {
                let (job, out) = match d {
                    DeviceCommand::PulseAngle { segments, out } => {
                        (Job::PulseAngle(parse_segments(segments)?), out)
                    }
                    DeviceCommand::PulseForAngle {
                        angle,
                        duration,
                        out,
                    } => {
                        // Validate now; the value itself is recomputed in execute.
                        device::pulse_for_angle(*angle, *duration)?;
                        (
                            Job::PulseForAngle {
                                angle: *angle,
                                duration_ns: *duration,
                            },
                            out,
                        )
                    }
                    DeviceCommand::RashbaLength {
                        alpha,
                        mass,
                        angle,
                        out,
                    } => (Job::RashbaLength(RashbaSpec::new(*alpha, *mass, *angle)?), out),
                    DeviceCommand::RashbaAngle {
                        alpha,
                        mass,
                        length,
                        out,
                    } => {
                        device::rashba_angle(*alpha, *mass, *length)?;
                        (
                            Job::RashbaAngle {
                                alpha: *alpha,
                                mass: *mass,
                                length_nm: *length,
                            },
                            out,
                        )
                    }
                };
                Ok(Self::with(job, out, OutputFormat::Text))
            }
        }
    }

    fn with(job: Job, out: &OutputArgs, default_format: OutputFormat) -> Self {
        Self {
            job,
            output: out.output.clone(),
            format: out.format.unwrap_or(default_format),
        }
    }

    /// Computes the job and renders it in the configured format.
    pub fn execute(&self) -> Result<String> {
        match &self.job {
            Job::Protocol {
                variant,
                input,
                params,
            } => render_protocol(&protocol_report(*variant, input, params)?, self.format),
            Job::Errmap {
                axis1,
                axis2,
                fixed,
                resolution,
            } => {
                let grid = sweep_grid(*axis1, *axis2, fixed, *resolution)?;
                match self.format {
                    OutputFormat::Csv => Ok(grid_csv(&grid)),
                    OutputFormat::Json => to_json(&grid),
                    OutputFormat::Text => bail!("errmap supports csv or json output"),
                }
            }
            Job::MonteCarlo {
                input,
                params,
                shots,
                seed,
                detector,
            } => {
                let record = montecarlo::sample_readout(input, params, *shots, *seed, detector)?;
                let p = montecarlo::occupied_probability(input, params);
                let report = MonteCarloReport {
                    record,
                    analytic_p_up: montecarlo::effective_outcome_probability(p, detector)?,
                };
                match self.format {
                    OutputFormat::Json => to_json(&report),
                    OutputFormat::Csv => Ok(format!(
                        "shots,detected_dot1,seed,estimated_p_up,analytic_p_up\n{},{},{},{},{}\n",
                        record.shots,
                        record.detected_dot1,
                        record.seed,
                        g12(record.estimated_p_up),
                        g12(report.analytic_p_up)
                    )),
                    OutputFormat::Text => bail!("montecarlo supports csv or json output"),
                }
            }
            Job::PulseAngle(spec) => {
                render_quantity("pulse_angle", device::pulse_angle(spec), "rad", self.format)
            }
            Job::PulseForAngle { angle, duration_ns } => render_quantity(
                "amplitude",
                device::pulse_for_angle(*angle, *duration_ns)?,
                "ueV",
                self.format,
            ),
            Job::RashbaLength(spec) => {
                render_quantity("length", device::rashba_length(spec), "nm", self.format)
            }
            Job::RashbaAngle {
                alpha,
                mass,
                length_nm,
            } => render_quantity(
                "angle",
                device::rashba_angle(*alpha, *mass, *length_nm)?,
                "rad",
                self.format,
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct MonteCarloReport {
    #[serde(flatten)]
    record: ShotRecord,
    analytic_p_up: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmplitudeEntry {
    pub spin: String,
    pub mode: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OccupancyEntry {
    pub mode: String,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProtocolReport {
    pub variant: String,
    pub delta: f64,
    pub gamma: f64,
    pub params: GateParams,
    pub amplitudes: Vec<AmplitudeEntry>,
    pub occupancy: Vec<OccupancyEntry>,
    pub p_up: f64,
    pub p_down: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_unassigned: Option<f64>,
}

pub fn protocol_report(
    variant: Variant,
    input: &SpinInput,
    params: &GateParams,
) -> Result<ProtocolReport> {
    let (state, p_up, p_down, p_unassigned): (StateVector, f64, f64, Option<f64>) = match variant {
        Variant::TwoDot => {
            let out = protocol::output_state(input, params);
            let p = protocol::ReadoutAmplitudes::from_state(&out)?.probabilities();
            (out, p.p_up, p.p_down, None)
        }
        Variant::ThreeDot => {
            let (out, c) = protocol::run_three_dot(input);
            (out, c.p_up, c.p_down, Some(c.p_unassigned))
        }
    };
    let layout = state.layout();
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (spin, mode) = layout.label(i).expect("index within layout");
            AmplitudeEntry {
                spin: spin.to_string(),
                mode: mode.to_string(),
                re: clean(a.re),
                im: clean(a.im),
            }
        })
        .collect();
    let occupancy = layout
        .modes()
        .iter()
        .map(|&m| {
            Ok(OccupancyEntry {
                mode: m.to_string(),
                probability: clean(protocol::dot_occupancy(&state, m)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProtocolReport {
        variant: match layout {
            Layout::TwoDot => "two-dot".into(),
            Layout::ThreeDot => "three-dot".into(),
        },
        delta: input.delta(),
        gamma: input.gamma(),
        params: *params,
        amplitudes,
        occupancy,
        p_up: clean(p_up),
        p_down: clean(p_down),
        p_unassigned: p_unassigned.map(clean),
    })
}

/// Snaps values within 1e-12 of 0 or 1 so reports show exact outcomes.
fn clean(x: f64) -> f64 {
    if x.abs() <= EXACT_TOL {
        0.0
    } else if (x - 1.0).abs() <= EXACT_TOL {
        1.0
    } else if (x + 1.0).abs() <= EXACT_TOL {
        -1.0
    } else {
        x
    }
}

fn render_protocol(report: &ProtocolReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv | OutputFormat::Text => {
            let mut rows: Vec<(String, String)> = Vec::new();
            for a in &report.amplitudes {
                rows.push((format!("amp_re[{};{}]", a.spin, a.mode), g12(a.re)));
                rows.push((format!("amp_im[{};{}]", a.spin, a.mode), g12(a.im)));
            }
            for o in &report.occupancy {
                rows.push((format!("occupancy[{}]", o.mode), g12(o.probability)));
            }
            rows.push(("p_up".into(), g12(report.p_up)));
            rows.push(("p_down".into(), g12(report.p_down)));
            if let Some(u) = report.p_unassigned {
                rows.push(("p_unassigned".into(), g12(u)));
            }
            Ok(key_value_csv(rows.iter().map(|(k, v)| (k.as_str(), v.clone()))))
        }
    }
}

#[derive(Debug, Serialize)]
struct Quantity<'a> {
    quantity: &'a str,
    value: f64,
    unit: &'a str,
}

fn render_quantity(name: &str, value: f64, unit: &str, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(format!("{name} = {} {unit}\n", g12(value))),
        OutputFormat::Csv => Ok(format!("quantity,value,unit\n{name},{},{unit}\n", g12(value))),
        OutputFormat::Json => to_json(&Quantity {
            quantity: name,
            value,
            unit,
        }),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Validate, compute, then write. Nothing is written unless every step before
/// it succeeded.
pub fn run(cli: &Cli) -> Result<()> {
    let config = RunConfig::from_cli(cli)?;
    let content = config.execute()?;
    write_output(config.output.as_deref(), &content)
}
