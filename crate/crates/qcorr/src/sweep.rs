//! Grid sweeps over the (c1, c2) square at fixed c3, emitting figure
//! data as CSV. Invalid tetrahedron points keep their row with an empty
//! value field so every sweep of the same size has the same shape.

use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::bell::{
    chsh_violating, coherence_bd, coherence_minus_discord_bd, discord_bd, entanglement_bd,
};
use crate::error::{Error, Result};
use crate::states::BellDiagonalState;
use crate::util::{map_indexed, map_indexed_serial};

/// Quantity plotted over the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepQuantity {
    DMinusE,
    E,
    CMinusD,
    D,
    Coh,
    ChshParam,
}

impl SweepQuantity {
    pub const ALL: [SweepQuantity; 6] = [
        SweepQuantity::DMinusE,
        SweepQuantity::E,
        SweepQuantity::CMinusD,
        SweepQuantity::D,
        SweepQuantity::Coh,
        SweepQuantity::ChshParam,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepQuantity::DMinusE => "d_minus_e",
            SweepQuantity::E => "e",
            SweepQuantity::CMinusD => "c_minus_d",
            SweepQuantity::D => "d",
            SweepQuantity::Coh => "coh",
            SweepQuantity::ChshParam => "chsh_param",
        }
    }

    pub fn evaluate(&self, bd: &BellDiagonalState) -> f64 {
        match self {
            SweepQuantity::DMinusE => discord_bd(bd) - entanglement_bd(bd),
            SweepQuantity::E => entanglement_bd(bd),
            SweepQuantity::CMinusD => coherence_minus_discord_bd(bd),
            SweepQuantity::D => discord_bd(bd),
            SweepQuantity::Coh => coherence_bd(bd),
            SweepQuantity::ChshParam => chsh_violating(bd).1,
        }
    }
}

impl FromStr for SweepQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepQuantity::ALL
            .iter()
            .copied()
            .find(|q| q.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown quantity '{s}' (expected one of: d_minus_e, e, c_minus_d, d, coh, chsh_param)"
                ))
            })
    }
}

impl fmt::Display for SweepQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One sweep request: quantity, fixed c3 slice, points per axis.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub quantity: SweepQuantity,
    pub c3: f64,
    pub grid_n: usize,
}

impl SweepSpec {
    pub fn new(quantity: SweepQuantity, c3: f64, grid_n: usize) -> Result<Self> {
        if grid_n < 2 {
            return Err(Error::Domain("grid size must be at least 2".into()));
        }
        if !(-1.0..=1.0).contains(&c3) {
            return Err(Error::Domain("c3 must lie in [-1, 1]".into()));
        }
        Ok(SweepSpec { quantity, c3, grid_n })
    }
}

/// One lattice row: the coordinates and the value (None off the tetrahedron).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub c1: f64,
    pub c2: f64,
    pub value: Option<f64>,
}

pub fn lattice_coordinate(index: usize, grid_n: usize) -> f64 {
    -1.0 + 2.0 * index as f64 / (grid_n - 1) as f64
}

fn evaluate_point(spec: &SweepSpec, flat_index: usize) -> SweepPoint {
    let n = spec.grid_n;
    let c1 = lattice_coordinate(flat_index / n, n);
    let c2 = lattice_coordinate(flat_index % n, n);
    let value = BellDiagonalState::from_c(c1, c2, spec.c3)
        .ok()
        .map(|bd| spec.quantity.evaluate(&bd));
    SweepPoint { c1, c2, value }
}

/// Evaluates the full grid, c1-major ascending. Points are independent
/// work items; assembly is ordered by index, so the output is identical
/// to [`sweep_grid_serial`].
pub fn sweep_grid(spec: &SweepSpec) -> Vec<SweepPoint> {
    map_indexed(spec.grid_n * spec.grid_n, |i| evaluate_point(spec, i))
}

/// Single-threaded evaluation of the same grid.
pub fn sweep_grid_serial(spec: &SweepSpec) -> Vec<SweepPoint> {
    map_indexed_serial(spec.grid_n * spec.grid_n, |i| evaluate_point(spec, i))
}

/// Renders rows as CSV text: header `c1,c2,value`, shortest round-trip
/// decimals, empty value field for invalid points.
pub fn render_csv(points: &[SweepPoint]) -> String {
    let mut out = String::with_capacity(16 * points.len() + 16);
    out.push_str("c1,c2,value\n");
    for p in points {
        out.push_str(&p.c1.to_string());
        out.push(',');
        out.push_str(&p.c2.to_string());
        out.push(',');
        if let Some(v) = p.value {
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Runs the sweep and writes the CSV file.
pub fn write_sweep_csv(spec: &SweepSpec, path: &Path) -> Result<()> {
    let points = sweep_grid(spec);
    let mut file = std::fs::File::create(path)?;
    file.write_all(render_csv(&points).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantity_names_round_trip() {
        for q in SweepQuantity::ALL {
            assert_eq!(q.name().parse::<SweepQuantity>().unwrap(), q);
        }
        assert!("discord".parse::<SweepQuantity>().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::new(SweepQuantity::E, 0.0, 1).is_err());
        assert!(SweepSpec::new(SweepQuantity::E, 1.5, 3).is_err());
        assert!(SweepSpec::new(SweepQuantity::E, 0.0, 2).is_ok());
    }

    #[test]
    fn grid3_entanglement_slice() {
        let spec = SweepSpec::new(SweepQuantity::E, 0.0, 3).unwrap();
        let points = sweep_grid(&spec);
        assert_eq!(points.len(), 9);
        // c1-major ascending
        assert_eq!((points[0].c1, points[0].c2), (-1.0, -1.0));
        assert_eq!((points[1].c1, points[1].c2), (-1.0, 0.0));
        assert_eq!((points[8].c1, points[8].c2), (1.0, 1.0));
        // at c3=0 every corner (+-1, +-1) lies outside the tetrahedron;
        // the edge midpoints sit on its boundary with lambda_max = 1/2
        for i in [0, 2, 6, 8] {
            assert!(points[i].value.is_none());
        }
        for i in [1, 3, 5, 7] {
            assert_eq!(points[i].value, Some(0.0));
        }
        // center: maximally mixed
        assert_eq!(points[4].value, Some(0.0));
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let spec = SweepSpec::new(SweepQuantity::DMinusE, 0.4, 21).unwrap();
        assert_eq!(sweep_grid(&spec), sweep_grid_serial(&spec));
    }

    #[test]
    fn csv_shape_and_format() {
        let spec = SweepSpec::new(SweepQuantity::E, 0.0, 3).unwrap();
        let csv = render_csv(&sweep_grid(&spec));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "c1,c2,value");
        assert_eq!(lines[1], "-1,-1,");
        assert_eq!(lines[2], "-1,0,0");
        assert_eq!(lines[3], "-1,1,");
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = SweepSpec::new(SweepQuantity::D, -0.3, 15).unwrap();
        let a = render_csv(&sweep_grid(&spec));
        let b = render_csv(&sweep_grid(&spec));
        assert_eq!(a, b);
    }

    #[test]
    fn writes_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("slice.csv");
        let spec = SweepSpec::new(SweepQuantity::Coh, 0.1, 4).unwrap();
        write_sweep_csv(&spec, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 17);
    }
}
