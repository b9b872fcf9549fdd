use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::numfmt::sig12;
use crate::Result;

use super::sweep::{Runner, SweepRecord};
use super::{EngineChoice, EngineKind, Preset};

/// One curve: probability against a swept angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    /// File stem, e.g. `fig7_alpha_30`.
    pub name: String,
    pub x_label: &'static str,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn to_text(&self) -> String {
        let mut out = format!("# {} probability\n", self.x_label);
        for &(x, p) in &self.points {
            out.push_str(&sig12(x));
            out.push(' ');
            out.push_str(&sig12(p));
            out.push('\n');
        }
        out
    }

    pub fn max_point(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .reduce(|best, p| if p.1 > best.1 { p } else { best })
    }
}

fn group<K: PartialEq + Copy>(
    records: &[SweepRecord],
    key: impl Fn(&SweepRecord) -> K,
    x: impl Fn(&SweepRecord) -> f64,
) -> Vec<(K, Vec<(f64, f64)>)> {
    let mut out: Vec<(K, Vec<(f64, f64)>)> = Vec::new();
    for r in records {
        let Ok(o) = &r.outcome else { continue };
        let k = key(r);
        let point = (x(r), o.probability);
        match out.iter_mut().find(|(existing, _)| *existing == k) {
            Some((_, pts)) => pts.push(point),
            None => out.push((k, vec![point])),
        }
    }
    for (_, pts) in &mut out {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out
}

fn label(v: f64) -> String {
    let s = sig12(v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn plot_series(preset: Preset, engine: EngineKind) -> Result<Vec<Series>> {
    let choice = match engine {
        EngineKind::Gate => EngineChoice::Gate,
        EngineKind::Pulse => EngineChoice::Pulse,
    };
    let records = Runner::new(choice)?.run(&preset.config().points());
    let name = preset.as_str();
    let series = match preset {
        Preset::Fig7 => group(
            &records,
            |r| r.point.alpha.value(),
            |r| r.point.two_theta1.value(),
        )
        .into_iter()
        .map(|(a, points)| Series {
            name: format!("{name}_alpha_{}", label(a)),
            x_label: "two_theta1_deg",
            points,
        })
        .collect(),
        Preset::Fig8 => group(
            &records,
            |r| r.point.two_theta1.value(),
            |r| r.point.alpha.value(),
        )
        .into_iter()
        .map(|(t, points)| Series {
            name: format!("{name}_two_theta1_{}", label(t)),
            x_label: "alpha_deg",
            points,
        })
        .collect(),
        Preset::Fig9 => group(
            &records,
            |r| r.point.ellipticity.value(),
            |r| r.point.two_theta1.value(),
        )
        .into_iter()
        .map(|(e, points)| Series {
            name: format!("{name}_ellipticity_{}", label(e)),
            x_label: "two_theta1_deg",
            points,
        })
        .collect(),
    };
    Ok(series)
}

/// Writes `<name>.dat` per series into `dir`, creating it if needed.
pub fn write_plotdata(series: &[Series], dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    series
        .iter()
        .map(|s| {
            let path = dir.join(format!("{}.dat", s.name));
            fs::write(&path, s.to_text())?;
            Ok(path)
        })
        .collect()
}
