//! Anneal schedules as piecewise-linear (time, anneal-fraction) curves:
//! the standard ramp, quench-sliced variants, a pause-then-quench variant,
//! hardware-style validation, and A(s)/B(s) energy-scale interpolation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hardware-style limits: at most 50 points, slope at most 1.0 anneal
/// fraction per microsecond (a 1 us quench from any fraction to 1 is legal).
pub const MAX_POINTS: usize = 50;
pub const DEFAULT_SLOPE_MAX: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchedulePoint {
    /// Microseconds from anneal start.
    pub time: f64,
    /// Anneal fraction in [0, 1].
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub points: Vec<SchedulePoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooManyPoints { count: usize, max: usize },
    TimeNotIncreasing { index: usize },
    FractionDecreasing { index: usize },
    FractionOutOfRange { index: usize, s: f64 },
    BadStart { time: f64, s: f64 },
    BadEnd { s: f64 },
    SlopeExceeded { index: usize, slope: f64, max: f64 },
    Empty,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::TooManyPoints { count, max } => {
                write!(f, "{count} points exceeds maximum {max}")
            }
            Violation::TimeNotIncreasing { index } => {
                write!(f, "time not strictly increasing at segment {index}")
            }
            Violation::FractionDecreasing { index } => {
                write!(f, "anneal fraction decreases at segment {index}")
            }
            Violation::FractionOutOfRange { index, s } => {
                write!(f, "anneal fraction {s} outside [0, 1] at point {index}")
            }
            Violation::BadStart { time, s } => {
                write!(f, "schedule must start at (0, 0), found ({time}, {s})")
            }
            Violation::BadEnd { s } => write!(f, "schedule must end at s = 1, found {s}"),
            Violation::SlopeExceeded { index, slope, max } => {
                write!(f, "segment {index} slope {slope} exceeds {max}")
            }
            Violation::Empty => write!(f, "schedule has no points"),
        }
    }
}

impl AnnealSchedule {
    /// Wraps raw points without validation; use [`validate`] to inspect them.
    pub fn from_points(points: Vec<SchedulePoint>) -> Self {
        AnnealSchedule { points }
    }

    /// Wraps points after dropping zero-length segments and requiring the
    /// result to pass validation at default limits.
    pub fn checked(points: Vec<SchedulePoint>) -> Result<Self> {
        Self::checked_with_slope(points, DEFAULT_SLOPE_MAX)
    }

    pub fn checked_with_slope(points: Vec<SchedulePoint>, slope_max: f64) -> Result<Self> {
        let sch = AnnealSchedule {
            points: normalize(points),
        };
        let violations = validate(&sch, slope_max, MAX_POINTS);
        if let Some(v) = violations.first() {
            return Err(Error::ScheduleConstraint(v.to_string()));
        }
        Ok(sch)
    }

    /// End time of the schedule in microseconds.
    pub fn total_time(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.time)
    }

    /// Anneal fraction at `time`, by piecewise-linear interpolation. Clamps
    /// outside the schedule's time span.
    pub fn fraction_at(&self, time: f64) -> f64 {
        let pts = &self.points;
        if pts.is_empty() {
            return 0.0;
        }
        if time <= pts[0].time {
            return pts[0].s;
        }
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if time <= b.time {
                let f = (time - a.time) / (b.time - a.time);
                return a.s + f * (b.s - a.s);
            }
        }
        pts[pts.len() - 1].s
    }

    /// CSV serialization: `time_us,s` rows, matching the CLI's `--emit-schedule`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time_us,s\n");
        for p in &self.points {
            out.push_str(&format!("{:.16e},{:.16e}\n", p.time, p.s));
        }
        out
    }
}

fn normalize(points: Vec<SchedulePoint>) -> Vec<SchedulePoint> {
    let mut out: Vec<SchedulePoint> = Vec::with_capacity(points.len());
    for p in points {
        if let Some(last) = out.last() {
            if p.time == last.time && p.s == last.s {
                continue; // zero-length segment
            }
        }
        out.push(p);
    }
    out
}

/// The standard linear ramp from (0, 0) to (total_time, 1).
pub fn standard_schedule(total_time: f64) -> Result<AnnealSchedule> {
    if !(total_time > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "total_time must be positive, got {total_time}"
        )));
    }
    AnnealSchedule::checked(vec![
        SchedulePoint { time: 0.0, s: 0.0 },
        SchedulePoint {
            time: total_time,
            s: 1.0,
        },
    ])
}

/// Follows the standard ramp up to `slice_time`, then quenches to s = 1 over
/// `quench_duration`. The last slice (slice_time = total_time) is the full anneal.
pub fn sliced_schedule(
    total_time: f64,
    slice_time: f64,
    quench_duration: f64,
) -> Result<AnnealSchedule> {
    if !(total_time > 0.0) || !(slice_time > 0.0) || !(quench_duration > 0.0) {
        return Err(Error::InvalidArgument(
            "total_time, slice_time and quench_duration must be positive".into(),
        ));
    }
    if slice_time > total_time {
        return Err(Error::InvalidArgument(format!(
            "slice_time {slice_time} exceeds total_time {total_time}"
        )));
    }
    if slice_time == total_time {
        return standard_schedule(total_time);
    }
    AnnealSchedule::checked(vec![
        SchedulePoint { time: 0.0, s: 0.0 },
        SchedulePoint {
            time: slice_time,
            s: slice_time / total_time,
        },
        SchedulePoint {
            time: slice_time + quench_duration,
            s: 1.0,
        },
    ])
}

/// Follows the ramp up to `slice_time`, holds the fraction constant, and
/// quenches to 1 during the final `quench_duration` of the anneal.
pub fn pause_then_quench_schedule(
    total_time: f64,
    slice_time: f64,
    quench_duration: f64,
) -> Result<AnnealSchedule> {
    if !(total_time > 0.0) || !(slice_time > 0.0) || !(quench_duration > 0.0) {
        return Err(Error::InvalidArgument(
            "total_time, slice_time and quench_duration must be positive".into(),
        ));
    }
    if slice_time + quench_duration > total_time {
        return Err(Error::InvalidArgument(format!(
            "slice_time {slice_time} + quench_duration {quench_duration} exceeds total_time {total_time}"
        )));
    }
    let hold = slice_time / total_time;
    // The terminal quench of the pause variant may be steeper than the
    // default slope cap (it rises from the held fraction to 1 in
    // quench_duration); only structural constraints are enforced here.
    AnnealSchedule::checked_with_slope(vec![
        SchedulePoint { time: 0.0, s: 0.0 },
        SchedulePoint {
            time: slice_time,
            s: hold,
        },
        SchedulePoint {
            time: total_time - quench_duration,
            s: hold,
        },
        SchedulePoint {
            time: total_time,
            s: 1.0,
        },
    ], f64::INFINITY)
}

/// Checks a schedule against hardware-style constraints; returns all
/// violations found (empty = valid). Never mutates or errors.
pub fn validate(sch: &AnnealSchedule, slope_max: f64, max_points: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let pts = &sch.points;
    if pts.is_empty() {
        out.push(Violation::Empty);
        return out;
    }
    if pts.len() > max_points {
        out.push(Violation::TooManyPoints {
            count: pts.len(),
            max: max_points,
        });
    }
    for (i, p) in pts.iter().enumerate() {
        if !(0.0..=1.0).contains(&p.s) {
            out.push(Violation::FractionOutOfRange { index: i, s: p.s });
        }
    }
    let first = pts[0];
    if first.time != 0.0 || first.s != 0.0 {
        out.push(Violation::BadStart {
            time: first.time,
            s: first.s,
        });
    }
    let last = pts[pts.len() - 1];
    if last.s != 1.0 {
        out.push(Violation::BadEnd { s: last.s });
    }
    for (i, w) in pts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        if b.time <= a.time {
            out.push(Violation::TimeNotIncreasing { index: i });
            continue;
        }
        if b.s < a.s {
            out.push(Violation::FractionDecreasing { index: i });
        }
        let slope = (b.s - a.s) / (b.time - a.time);
        if slope > slope_max {
            out.push(Violation::SlopeExceeded {
                index: i,
                slope,
                max: slope_max,
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Energy scales A(s), B(s)
// ---------------------------------------------------------------------------

/// Transverse (A) and problem (B) energy scales in GHz, tabulated over s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyScaleTable {
    /// Rows (s, A, B) with s strictly increasing from 0 to 1.
    pub rows: Vec<(f64, f64, f64)>,
}

impl EnergyScaleTable {
    pub fn new(rows: Vec<(f64, f64, f64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidArgument(
                "energy scale table needs at least 2 rows".into(),
            ));
        }
        if rows[0].0 != 0.0 || rows[rows.len() - 1].0 != 1.0 {
            return Err(Error::InvalidArgument(
                "energy scale table must span s = 0 to s = 1".into(),
            ));
        }
        for w in rows.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidArgument("table s values must strictly increase".into()));
            }
            if w[1].1 > w[0].1 {
                return Err(Error::InvalidArgument("A(s) must be non-increasing".into()));
            }
            if w[1].2 < w[0].2 {
                return Err(Error::InvalidArgument("B(s) must be non-decreasing".into()));
            }
        }
        Ok(EnergyScaleTable { rows })
    }

    /// Synthetic stand-in for an unpublished hardware table: smooth and
    /// monotone, A(0) = 6 GHz decaying to 0 at s = 1, B rising from 0 to 12 GHz.
    pub fn default_table() -> Self {
        let rows = (0..=20)
            .map(|k| {
                let s = k as f64 / 20.0;
                (s, 6.0 * (1.0 - s) * (1.0 - s), 12.0 * s * s)
            })
            .collect();
        EnergyScaleTable::new(rows).expect("default table is valid")
    }

    /// Piecewise-linear interpolation of (A, B) at anneal fraction `s`.
    pub fn interpolate(&self, s: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidArgument(format!(
                "anneal fraction {s} outside [0, 1]"
            )));
        }
        let rows = &self.rows;
        for w in rows.windows(2) {
            let (s0, a0, b0) = w[0];
            let (s1, a1, b1) = w[1];
            if s <= s1 {
                let f = (s - s0) / (s1 - s0);
                return Ok((a0 + f * (a1 - a0), b0 + f * (b1 - b0)));
            }
        }
        let last = rows[rows.len() - 1];
        Ok((last.1, last.2))
    }

    /// CSV with header `s,A_GHz,B_GHz`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,A_GHz,B_GHz\n");
        for &(s, a, b) in &self.rows {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s, a, b));
        }
        out
    }

    pub fn from_csv(text: &str, path: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('s')) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    path: path.into(),
                    context: format!("line {}", lineno + 1),
                    message: format!("expected 3 fields, got {}", fields.len()),
                });
            }
            let mut vals = [0.0f64; 3];
            for (k, f) in fields.iter().enumerate() {
                vals[k] = f.trim().parse().map_err(|e| Error::Parse {
                    path: path.into(),
                    context: format!("line {}, field {}", lineno + 1, k + 1),
                    message: format!("{e}"),
                })?;
            }
            rows.push((vals[0], vals[1], vals[2]));
        }
        EnergyScaleTable::new(rows)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_csv(&text, &path.display().to_string())
    }
}
