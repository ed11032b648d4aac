//! CSV and pixmap writers plus the time-series CSV reader.
//!
//! Every CSV may start with `# key: value` comment lines. Real values are
//! written in plain decimal notation with 17 significant digits, which is
//! enough to recover every `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use spatial_rc_core::reservoirs::GrainMap;
use spatial_rc_core::tasks::SweepRow;
use spatial_rc_core::{MetricMap, Provenance, ReadoutMatrix, SpatialLayout, TimeSeries};

use crate::error::CliError;

const SIGNIFICANT: i32 = 17;

/// `x` in decimal notation with 17 significant digits.
pub fn decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exponent = x.abs().log10().floor() as i32;
    let places = (SIGNIFICANT - 1 - exponent).max(0) as usize;
    let s = format!("{x:.places$}");
    // log10 can be off by one right below a power of ten.
    let digits = s.bytes().filter(u8::is_ascii_digit).skip_while(|&b| b == b'0').count();
    if digits > SIGNIFICANT as usize && places > 0 {
        let places = places - 1;
        format!("{x:.places$}")
    } else {
        s
    }
}

fn comment_block(lines: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in lines {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out
}

fn provenance_lines(meta: &Provenance) -> Vec<(String, String)> {
    let mut lines = vec![("generator".to_string(), meta.generator.clone())];
    if let Some(seed) = meta.seed {
        lines.push(("seed".into(), seed.to_string()));
    }
    if !meta.params.is_empty() {
        let params: Vec<String> = meta.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        lines.push(("params".into(), params.join(",")));
    }
    lines
}

fn write_file(path: &Path, header: &str, body: impl FnOnce(&mut csv::Writer<&mut Vec<u8>>) -> csv::Result<()>) -> Result<(), CliError> {
    let mut buf = header.as_bytes().to_vec();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        body(&mut w).map_err(|e| CliError::Data {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    fs::write(path, buf).map_err(|e| CliError::io(path, e))
}

pub fn write_time_series(path: &Path, series: &TimeSeries, column: &str, extra: &[(String, String)]) -> Result<(), CliError> {
    let mut lines = provenance_lines(&series.meta);
    lines.push(("dt".into(), series.dt().to_string()));
    lines.extend_from_slice(extra);
    write_file(path, &comment_block(&lines), |w| {
        w.write_record(["t", column])?;
        for (i, v) in series.values().iter().enumerate() {
            w.write_record([series.time(i).to_string(), decimal(*v)])?;
        }
        Ok(())
    })
}

/// Reads one value column of a CSV written by [`write_time_series`] or any
/// `t,<cols>` CSV. `column` defaults to the first column after `t`.
pub fn read_time_series(path: &Path, column: Option<&str>) -> Result<TimeSeries, CliError> {
    let data_err = |message: String| CliError::Data {
        path: path.to_path_buf(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| data_err(e.to_string()))?.clone();
    let index = match column {
        Some(name) => headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| data_err(format!("no column named {name:?}")))?,
        None if headers.len() >= 2 => 1,
        None => return Err(data_err("expected a `t` column and at least one value column".into())),
    };
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| data_err(e.to_string()))?;
        let parse = |i: usize| -> Result<f64, CliError> {
            let field = record.get(i).unwrap_or("");
            field
                .parse::<f64>()
                .map_err(|_| data_err(format!("row {}: {:?} is not a number", line + 1, field)))
        };
        times.push(parse(0)?);
        values.push(parse(index)?);
    }
    let dt = if times.len() >= 2 { times[1] - times[0] } else { 1.0 };
    let t0 = times.first().copied().unwrap_or(0.0);
    let meta = Provenance::new(format!("file:{}", path.display()));
    TimeSeries::new(values, dt, t0, meta).map_err(|e| data_err(e.to_string()))
}

pub fn write_readouts(path: &Path, readouts: &ReadoutMatrix, t0: f64) -> Result<(), CliError> {
    let lines = vec![
        ("nodes".to_string(), readouts.nodes().to_string()),
        ("dt".to_string(), readouts.dt().to_string()),
    ];
    write_file(path, &comment_block(&lines), |w| {
        let mut header = vec!["t".to_string()];
        header.extend((0..readouts.nodes()).map(|n| format!("n{n}")));
        w.write_record(&header)?;
        for t in 0..readouts.steps() {
            let mut row = vec![(t0 + t as f64 * readouts.dt()).to_string()];
            row.extend(readouts.data().row(t).iter().map(|&v| decimal(v)));
            w.write_record(&row)?;
        }
        Ok(())
    })
}

pub fn write_layout(path: &Path, layout: &SpatialLayout) -> Result<(), CliError> {
    write_file(path, "", |w| {
        w.write_record(["node_id", "x", "y"])?;
        for (i, p) in layout.positions().iter().enumerate() {
            w.write_record([i.to_string(), decimal(p[0]), decimal(p[1])])?;
        }
        Ok(())
    })
}

fn map_header(map: &MetricMap) -> String {
    let mut lines = vec![("metric".to_string(), map.kind.name().to_string())];
    if let Some(k) = map.params.k {
        lines.push(("k".into(), k.to_string()));
    }
    if let Some(d) = map.params.threshold_distance {
        lines.push(("threshold_distance".into(), d.to_string()));
    }
    if map.kind != spatial_rc_core::MetricKind::Stability {
        lines.push(("washout".into(), map.params.washout.to_string()));
    }
    lines.extend(map.diagnostics.iter().map(|d| ("diagnostic".to_string(), d.to_string())));
    comment_block(&lines)
}

pub fn write_metric_map(path: &Path, map: &MetricMap) -> Result<(), CliError> {
    write_file(path, &map_header(map), |w| {
        w.write_record(["node_id", "x", "y", "value"])?;
        for (i, (p, v)) in map.layout.positions().iter().zip(&map.values).enumerate() {
            w.write_record([i.to_string(), decimal(p[0]), decimal(p[1]), decimal(*v)])?;
        }
        Ok(())
    })
}

pub fn write_sweep(path: &Path, rows: &[SweepRow], meta: &[(String, String)]) -> Result<(), CliError> {
    write_file(path, &comment_block(meta), |w| {
        w.write_record(["model", "k", "mse", "baseline_mse"])?;
        for r in rows {
            w.write_record([r.model.clone(), r.horizon.to_string(), decimal(r.mse), decimal(r.baseline_mse)])?;
        }
        Ok(())
    })
}

/// One row per grain-grid cell.
pub fn write_grains(path: &Path, grains: &GrainMap) -> Result<(), CliError> {
    let lines = vec![
        ("mean_grain_size".to_string(), grains.mean_grain_size.to_string()),
        ("variance_fraction".to_string(), grains.variance_fraction.to_string()),
        ("grains".to_string(), grains.sites.len().to_string()),
    ];
    write_file(path, &comment_block(&lines), |w| {
        w.write_record(["x", "y", "grain", "multiplier"])?;
        for y in 0..grains.height {
            for x in 0..grains.width {
                let label = grains.labels[y * grains.width + x];
                w.write_record([
                    x.to_string(),
                    y.to_string(),
                    label.to_string(),
                    decimal(grains.multipliers[label as usize]),
                ])?;
            }
        }
        Ok(())
    })
}

/// Plain (P3) grayscale pixmap of a map on its grid, min-max normalized,
/// plus a `<name>.range` sidecar holding the range. Returns `false` without
/// writing when the layout is not a full grid.
pub fn write_heatmap(path: &Path, map: &MetricMap) -> Result<bool, CliError> {
    let Some(grid) = map.layout.grid_shape() else {
        return Ok(false);
    };
    let (lo, hi) = (map.min(), map.max());
    let span = hi - lo;
    let mut cells = vec![0u8; grid.cols * grid.rows];
    for (node, &cell) in grid.cell_of_node.iter().enumerate() {
        let v = map.values[node];
        let level = if span > 0.0 { ((v - lo) / span * 255.0).round() } else { 0.0 };
        cells[cell] = level.clamp(0.0, 255.0) as u8;
    }
    let mut out = format!("P3\n# {} min={} max={}\n{} {}\n255\n", map.kind.name(), decimal(lo), decimal(hi), grid.cols, grid.rows);
    for row in cells.chunks(grid.cols) {
        let line: Vec<String> = row.iter().map(|g| format!("{g} {g} {g}")).collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))?;
    let sidecar = path.with_extension("range");
    let mut f = fs::File::create(&sidecar).map_err(|e| CliError::io(&sidecar, e))?;
    writeln!(f, "metric {}\nmin {}\nmax {}", map.kind.name(), decimal(lo), decimal(hi))
        .map_err(|e| CliError::io(&sidecar, e))?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_keeps_seventeen_digits_and_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-7, 123456.789, 9.999999999999999e-5, 1e-300, 6.02e23, 0.0] {
            let s = decimal(x);
            assert!(!s.contains('e') && !s.contains('E'), "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            if x != 0.0 {
                let digits = s.bytes().filter(u8::is_ascii_digit).skip_while(|&b| b == b'0').count();
                assert!(digits >= 15, "{s}");
            }
        }
    }

    #[test]
    fn time_series_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        let s = spatial_rc_core::random_signal(50, -1.0, 1.0, 3).unwrap();
        write_time_series(&path, &s, "u", &[]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# generator: uniform_random/chacha8-v1\n# seed: 3\n"));
        let back = read_time_series(&path, None).unwrap();
        assert_eq!(back.values(), s.values());
        assert_eq!(read_time_series(&path, Some("u")).unwrap().values(), s.values());
        assert!(read_time_series(&path, Some("v")).is_err());
    }

    #[test]
    fn heatmap_is_normalized_row_major() {
        let dir = tempfile::tempdir().unwrap();
        let layout = SpatialLayout::grid(3, 2, 1.0).unwrap();
        let map = MetricMap {
            kind: spatial_rc_core::MetricKind::Stability,
            values: vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
            layout,
            params: Default::default(),
            diagnostics: vec![],
        };
        let path = dir.path().join("s.ppm");
        assert!(write_heatmap(&path, &map).unwrap());
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "P3");
        assert_eq!(lines[2], "3 2");
        assert_eq!(lines[4], "0 0 0  51 51 51  102 102 102");
        assert_eq!(lines[5], "153 153 153  204 204 204  255 255 255");
        let range = fs::read_to_string(dir.path().join("s.range")).unwrap();
        assert!(range.contains("min 0\n") && range.contains("max 5"));
    }
}
