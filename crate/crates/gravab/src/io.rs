//! CSV and JSON writers.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use gravab_core::fft::FrequencySpectrum;
use gravab_core::{SidebandSpectrum, TimeSeries};
use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::CliError;

/// Opens `path` for writing, creating parent directories, or stdout.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p)?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut w: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn write_csv_rows<T: Serialize, W: Write>(rows: &[T], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

/// Rows as CSV or as a JSON array.
pub fn write_rows<T: Serialize, W: Write>(rows: &[T], format: OutputFormat, w: W) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => write_csv_rows(rows, w),
        OutputFormat::Json => write_json(rows, w),
    }
}

/// `n,offset_hz,amplitude,power`.
pub fn write_sidebands_csv<W: Write>(spectrum: &SidebandSpectrum, w: W) -> Result<(), CliError> {
    write_csv_rows(&spectrum.lines, w)
}

/// Line list plus `alpha`, `carrier_freq`, `orbital_freq` and `n_max`.
pub fn write_sidebands_json<W: Write>(spectrum: &SidebandSpectrum, w: W) -> Result<(), CliError> {
    write_json(spectrum, w)
}

#[derive(Serialize)]
struct SampleRow {
    t_s: f64,
    re: f64,
    im: f64,
}

/// `t_s,re,im`.
pub fn write_timeseries_csv<W: Write>(series: &TimeSeries, w: W) -> Result<(), CliError> {
    let rows: Vec<SampleRow> = series
        .samples()
        .iter()
        .enumerate()
        .map(|(k, z)| SampleRow {
            t_s: series.time(k),
            re: z.re,
            im: z.im,
        })
        .collect();
    write_csv_rows(&rows, w)
}

#[derive(Serialize)]
struct BinRow {
    freq_hz: f64,
    re: f64,
    im: f64,
    mag: f64,
}

/// `freq_hz,re,im,mag`, ascending frequency, unitary normalisation.
pub fn write_dft_csv<W: Write>(spectrum: &FrequencySpectrum, w: W) -> Result<(), CliError> {
    let rows: Vec<BinRow> = spectrum
        .shifted()
        .map(|(f, z)| BinRow {
            freq_hz: f,
            re: z.re,
            im: z.im,
            mag: z.norm(),
        })
        .collect();
    write_csv_rows(&rows, w)
}
