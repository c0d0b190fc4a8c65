//! Command-line front end: spectra, correction budgets, shift tables,
//! parameter scans and peak positions, emitted as CSV (RFC-4180 quoting)
//! or JSON with fixed field names (see `docs/formats.md`).
//!
//! Identical invocations produce byte-identical artifacts. Exit codes:
//! 0 success, 2 configuration error, 3 numeric failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::Inputs;
use crate::constants::Hz;
use crate::output::{fmt_sig, to_json_string};
use crate::prediction::{aggregate, table_one, CorrectionBreakdown};
use crate::spectrum::{
    find_peaks_numeric, sideband_positions_series, spectrum_exact, DriveParams,
};
use crate::uncertain::UncertainValue;
use crate::{Error, Result};

/// Environment variable naming the default constants file.
pub const CONSTANTS_ENV: &str = "MOLLOW_CONSTANTS";

/// Feasibility threshold on the ionization ratio I/Ω used by `scan`.
pub const FEASIBLE_IONIZATION_RATIO: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(
    name = "mollow",
    about = "Mollow spectra and corrected sideband predictions for driven hydrogen 1S-2P",
    version
)]
pub struct Cli {
    /// Constants/override file (key = value); defaults to $MOLLOW_CONSTANTS.
    #[arg(long, global = true)]
    pub constants: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transition {
    /// 1S_{1/2} - 2P_{1/2}
    #[value(name = "1/2")]
    Half,
    /// 1S_{1/2} - 2P_{3/2}
    #[value(name = "3/2")]
    ThreeHalf,
}

impl Transition {
    pub fn j2(&self) -> u32 {
        match self {
            Transition::Half => 1,
            Transition::ThreeHalf => 3,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Transition::Half => "1/2",
            Transition::ThreeHalf => "3/2",
        }
    }
}

#[derive(Debug, Args)]
pub struct DriveArgs {
    /// Intensity parameter h = Omega/Gamma.
    #[arg(long)]
    pub h: f64,

    /// Detuning in units of Gamma.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: f64,

    /// Fine-structure transition.
    #[arg(long, value_enum, default_value_t = Transition::Half)]
    pub j: Transition,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the exact incoherent spectrum on a frequency grid.
    Spectrum {
        #[command(flatten)]
        drive: DriveArgs,
        /// Grid of (omega - omega_L)/Omega_R offsets as start:stop:count.
        #[arg(long, default_value = "-2:2:4001", allow_hyphen_values = true)]
        grid: Grid,
    },
    /// Emit the full correction budget and corrected prediction.
    Corrections {
        #[command(flatten)]
        drive: DriveArgs,
    },
    /// Emit the 8-channel summed-shift table for both transitions.
    Table1 {
        /// Intensity parameter h = Omega/Gamma.
        #[arg(long)]
        h: f64,
        /// Detuning in units of Gamma.
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
    },
    /// Emit numerically located peak positions and the series prediction.
    Peaks {
        #[command(flatten)]
        drive: DriveArgs,
    },
    /// Scan the prediction over an (h, delta/Gamma) grid.
    Scan {
        /// h grid as start:stop:count.
        #[arg(long, value_name = "START:STOP:COUNT", allow_hyphen_values = true)]
        h_grid: Grid,
        /// delta/Gamma grid as start:stop:count.
        #[arg(long, value_name = "START:STOP:COUNT", allow_hyphen_values = true)]
        delta_grid: Grid,
        /// Fine-structure transition.
        #[arg(long, value_enum, default_value_t = Transition::Half)]
        j: Transition,
    },
}

/// An inclusive linear grid with at least two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(move |i| self.start + step * i as f64)
    }
}

impl std::str::FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid {s:?} must be start:stop:count"));
        }
        let start: f64 = parts[0].parse().map_err(|_| format!("bad grid start {:?}", parts[0]))?;
        let stop: f64 = parts[1].parse().map_err(|_| format!("bad grid stop {:?}", parts[1]))?;
        let count: usize =
            parts[2].parse().map_err(|_| format!("bad grid count {:?}", parts[2]))?;
        if count < 2 {
            return Err(format!("grid count {count} must be >= 2"));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        Ok(Grid { start, stop, count })
    }
}

/// Run a parsed invocation, writing the artifact to `--output` or stdout.
pub fn run(cli: &Cli) -> Result<()> {
    let inputs = load_inputs(cli.constants.as_deref())?;
    let artifact = match &cli.command {
        Command::Spectrum { drive, grid } => spectrum_artifact(&inputs, drive, grid)?,
        Command::Corrections { drive } => corrections_artifact(&inputs, drive)?,
        Command::Table1 { h, delta } => table_artifact(&inputs, *h, *delta)?,
        Command::Peaks { drive } => peaks_artifact(&inputs, drive)?,
        Command::Scan { h_grid, delta_grid, j } => scan_artifact(&inputs, h_grid, delta_grid, *j)?,
    };
    let text = match cli.format {
        OutputFormat::Csv => artifact.to_csv()?,
        OutputFormat::Json => artifact.to_json()?,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_inputs(explicit: Option<&Path>) -> Result<Inputs> {
    match explicit {
        Some(path) => Inputs::from_file(path),
        None => match std::env::var_os(CONSTANTS_ENV) {
            Some(path) => Inputs::from_file(Path::new(&path)),
            None => Ok(Inputs::default()),
        },
    }
}

/// A serializable artifact with a CSV projection.
struct Artifact {
    json: serde_json::Value,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
}

impl Artifact {
    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.csv_header).map_err(|e| Error::Io(e.to_string()))?;
        for row in &self.csv_rows {
            w.write_record(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    fn to_json(&self) -> Result<String> {
        to_json_string(&self.json)
    }
}

fn uv_json(u: &UncertainValue) -> serde_json::Value {
    serde_json::json!({ "value": u.value, "sigma": u.sigma })
}

fn drive_for(inputs: &Inputs, drive: &DriveArgs) -> Result<(DriveParams, &'static str)> {
    let spec = inputs.transition(drive.j.j2())?;
    Ok((
        DriveParams::for_transition(&inputs.constants, spec, drive.h, drive.delta)?,
        drive.j.label(),
    ))
}

fn spectrum_artifact(inputs: &Inputs, drive: &DriveArgs, grid: &Grid) -> Result<Artifact> {
    let (d, label) = drive_for(inputs, drive)?;
    let omega_r = d.omega_r();
    let mut rows = Vec::with_capacity(grid.count);
    let mut json_rows = Vec::with_capacity(grid.count);
    for x in grid.points() {
        let offset: Hz = x * omega_r;
        let density = spectrum_exact(d.omega_laser() + offset, &d);
        rows.push(vec![fmt_sig(offset), fmt_sig(density)]);
        json_rows.push(serde_json::json!({
            "omega_offset_hz": offset,
            "density_per_hz": density,
        }));
    }
    Ok(Artifact {
        json: serde_json::json!({
            "command": "spectrum",
            "schema": "mollow/spectrum/v1",
            "j": label,
            "h": drive.h,
            "delta_over_gamma": drive.delta,
            "omega_r_hz": omega_r,
            "rows": json_rows,
        }),
        csv_header: vec!["omega_offset_hz", "density_per_hz"],
        csv_rows: rows,
    })
}

fn breakdown_json(b: &CorrectionBreakdown, label: &str, h: f64, dog: f64) -> serde_json::Value {
    let channels: Vec<serde_json::Value> = b
        .channels
        .iter()
        .map(|ch| {
            serde_json::json!({
                "channel": ch.id.code(),
                "kind": match ch.kind {
                    crate::corrections::ChannelKind::Detuning => "detuning",
                    crate::corrections::ChannelKind::Rabi => "rabi",
                },
                "parameter": uv_json(&ch.parameter),
                "shift_plus_hz": uv_json(&ch.shift_plus),
                "in_aggregate": ch.in_aggregate,
                "validity_ok": ch.validity_ok,
            })
        })
        .collect();
    serde_json::json!({
        "command": "corrections",
        "schema": "mollow/corrections/v1",
        "j": label,
        "h": h,
        "delta_over_gamma": dog,
        "drive": {
            "omega_hz": b.drive.omega(),
            "delta_hz": b.drive.delta(),
            "gamma_hz": b.drive.gamma(),
            "omega_laser_hz": b.drive.omega_laser(),
        },
        "channels": channels,
        "delta_rad_hz": uv_json(&b.delta_rad),
        "omega_hat_rad": uv_json(&b.omega_hat_rad),
        "omega_c_hz": uv_json(&b.omega_c),
        "omega_no_c_hz": uv_json(&b.omega_no_c),
        "bare_hz": b.bare,
        "headline_hz": uv_json(&b.headline),
        "d_re_times_omega": uv_json(&b.d_re_times_omega),
        "d_im_times_omega": uv_json(&b.d_im_times_omega),
        "ionization_rate_hz": b.ionization_rate,
        "ionization_ratio": b.ionization_ratio,
        "imaginary_width_hz": b.imaginary_width,
        "branch_conjugated": b.branch_conjugated,
        "theta_corrected_rad": b.theta_corrected,
    })
}

fn corrections_artifact(inputs: &Inputs, drive: &DriveArgs) -> Result<Artifact> {
    let (d, label) = drive_for(inputs, drive)?;
    let spec = inputs.transition(drive.j.j2())?;
    let b = aggregate(&inputs.constants, spec, &d)?;

    let mut rows = Vec::new();
    for ch in &b.channels {
        rows.push(vec![
            format!("shift_plus.{}", ch.id.code()),
            fmt_sig(ch.shift_plus.value),
            fmt_sig(ch.shift_plus.sigma),
        ]);
    }
    for ch in &b.channels {
        rows.push(vec![
            format!("parameter.{}", ch.id.code()),
            fmt_sig(ch.parameter.value),
            fmt_sig(ch.parameter.sigma),
        ]);
    }
    let mut push = |name: &str, u: UncertainValue| {
        rows.push(vec![name.to_string(), fmt_sig(u.value), fmt_sig(u.sigma)]);
    };
    push("delta_rad_hz", b.delta_rad);
    push("omega_hat_rad", b.omega_hat_rad);
    push("omega_c_hz", b.omega_c);
    push("omega_no_c_hz", b.omega_no_c);
    push("bare_hz", UncertainValue::exact(b.bare));
    push("headline_hz", b.headline);
    push("d_re_times_omega", b.d_re_times_omega);
    push("d_im_times_omega", b.d_im_times_omega);
    push("ionization_rate_hz", UncertainValue::exact(b.ionization_rate));
    push("ionization_ratio", UncertainValue::exact(b.ionization_ratio));
    push("imaginary_width_hz", UncertainValue::exact(b.imaginary_width));
    push("theta_corrected_rad", UncertainValue::exact(b.theta_corrected));

    Ok(Artifact {
        json: breakdown_json(&b, label, drive.h, drive.delta),
        csv_header: vec!["quantity", "value", "sigma"],
        csv_rows: rows,
    })
}

fn table_artifact(inputs: &Inputs, h: f64, delta: f64) -> Result<Artifact> {
    let table = table_one(&inputs.constants, &inputs.half, &inputs.three_half, h, delta)?;
    let mut rows = Vec::with_capacity(16);
    let mut json_rows = Vec::with_capacity(16);
    for row in &table.rows {
        for (label, shift) in [("1/2", row.shift_half), ("3/2", row.shift_three_half)] {
            rows.push(vec![
                row.id.code().to_string(),
                label.to_string(),
                fmt_sig(shift.value),
                fmt_sig(shift.sigma),
            ]);
            json_rows.push(serde_json::json!({
                "channel": row.id.code(),
                "j": label,
                "shift_plus_hz": uv_json(&shift),
            }));
        }
    }
    Ok(Artifact {
        json: serde_json::json!({
            "command": "table1",
            "schema": "mollow/table1/v1",
            "h": h,
            "delta_over_gamma": delta,
            "rows": json_rows,
        }),
        csv_header: vec!["channel", "j", "shift_plus_hz", "sigma_hz"],
        csv_rows: rows,
    })
}

fn peaks_artifact(inputs: &Inputs, drive: &DriveArgs) -> Result<Artifact> {
    let (d, label) = drive_for(inputs, drive)?;
    let peaks = find_peaks_numeric(&d)?;
    let series = sideband_positions_series(&d)?;
    let ol = d.omega_laser();
    let quantities = [
        ("omega_plus_offset_hz", peaks.omega_plus - ol),
        ("omega_center_offset_hz", peaks.omega_center - ol),
        ("omega_minus_offset_hz", peaks.omega_minus - ol),
        ("series_plus_offset_hz", series.0 - ol),
        ("series_minus_offset_hz", series.1 - ol),
        ("omega_r_hz", d.omega_r()),
    ];
    let rows = quantities.iter().map(|(n, v)| vec![n.to_string(), fmt_sig(*v)]).collect();
    let json_map: serde_json::Map<String, serde_json::Value> = quantities
        .iter()
        .map(|(n, v)| (n.to_string(), serde_json::json!(v)))
        .collect();
    let mut json = serde_json::json!({
        "command": "peaks",
        "schema": "mollow/peaks/v1",
        "j": label,
        "h": drive.h,
        "delta_over_gamma": drive.delta,
    });
    json.as_object_mut().unwrap().extend(json_map);
    Ok(Artifact {
        json,
        csv_header: vec!["quantity", "value"],
        csv_rows: rows,
    })
}

fn scan_artifact(
    inputs: &Inputs,
    h_grid: &Grid,
    delta_grid: &Grid,
    j: Transition,
) -> Result<Artifact> {
    let spec = inputs.transition(j.j2())?;
    let c = &inputs.constants;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for h in h_grid.points() {
        for dog in delta_grid.points() {
            let d = DriveParams::for_transition(c, spec, h, dog)?;
            let b = aggregate(c, spec, &d)?;
            let feasible = b.ionization_ratio < FEASIBLE_IONIZATION_RATIO;
            let intensity_displacement = b.delta_rad.value - spec.l_bare().value;
            rows.push(vec![
                fmt_sig(h),
                fmt_sig(dog),
                fmt_sig(d.omega()),
                fmt_sig(d.delta()),
                fmt_sig(b.omega_c.value),
                fmt_sig(b.omega_c.sigma),
                fmt_sig(b.headline.value),
                fmt_sig(b.headline.sigma),
                fmt_sig(b.delta_rad.value),
                fmt_sig(intensity_displacement),
                fmt_sig(b.ionization_rate),
                fmt_sig(b.ionization_ratio),
                feasible.to_string(),
            ]);
            json_rows.push(serde_json::json!({
                "h": h,
                "delta_over_gamma": dog,
                "omega_hz": d.omega(),
                "delta_hz": d.delta(),
                "omega_c_hz": uv_json(&b.omega_c),
                "headline_hz": uv_json(&b.headline),
                "delta_rad_hz": b.delta_rad.value,
                "intensity_displacement_hz": intensity_displacement,
                "ionization_rate_hz": b.ionization_rate,
                "ionization_ratio": b.ionization_ratio,
                "feasible": feasible,
            }));
        }
    }
    Ok(Artifact {
        json: serde_json::json!({
            "command": "scan",
            "schema": "mollow/scan/v1",
            "j": j.label(),
            "rows": json_rows,
        }),
        csv_header: vec![
            "h",
            "delta_over_gamma",
            "omega_hz",
            "delta_hz",
            "omega_c_hz",
            "omega_c_sigma_hz",
            "headline_hz",
            "headline_sigma_hz",
            "delta_rad_hz",
            "intensity_displacement_hz",
            "ionization_rate_hz",
            "ionization_ratio",
            "feasible",
        ],
        csv_rows: rows,
    })
}

impl Error {
    /// CLI exit code: 2 for configuration problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidRunConfig(_) => 2,
            _ => 3,
        }
    }
}

/// Machine-readable error record emitted on stderr.
#[derive(Serialize)]
pub struct ErrorRecord<'a> {
    pub error: &'a str,
    pub exit_code: i32,
}
