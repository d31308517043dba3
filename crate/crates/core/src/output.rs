//! Plain-text output: slice-scatter tables for quasi-one-dimensional runs,
//! legacy VTK structured points for contour plots, and run manifests.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so every
//! value reparses to the identical `f64` and files are byte-reproducible.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::cases::Quantity;
use crate::error::Error;
use crate::euler::GasModel;
use crate::grid::Field2D;

/// One row per cell column: the cell-center `x` and the values of every
/// y-slice at that `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceScatter {
    pub quantity: String,
    pub case: String,
    pub time: f64,
    pub x: Vec<f64>,
    /// `values[j][i]`: slice `j`, cell column `i`.
    pub values: Vec<Vec<f64>>,
}

impl SliceScatter {
    pub fn from_field(
        field: &Field2D,
        quantity: Quantity,
        case: &str,
        time: f64,
        gas: &GasModel,
    ) -> Result<Self, Error> {
        let x = (0..field.nx as isize).map(|i| field.center(i, 0).0).collect();
        let values = (0..field.ny)
            .map(|j| {
                (0..field.nx)
                    .map(|i| quantity.evaluate(&field.cell(i, j), gas))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SliceScatter {
            quantity: quantity.name().to_string(),
            case: case.to_string(),
            time,
            x,
            values,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "# quantity {} case {} time {:?}\n",
            self.quantity, self.case, self.time
        );
        for (i, x) in self.x.iter().enumerate() {
            write!(out, "{x:?}").unwrap();
            for row in &self.values {
                write!(out, " {:?}", row[i]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty file")?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let [_, "quantity", quantity, "case", case, "time", time] = words[..] else {
            return Err(format!("bad header `{header}`"));
        };
        let time = time.parse::<f64>().map_err(|e| e.to_string())?;
        let mut x = Vec::new();
        let mut columns: Vec<Vec<f64>> = Vec::new();
        for (n, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(str::parse::<f64>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("row {}: {e}", n + 1))?;
            if row.len() < 2 || (!columns.is_empty() && row.len() != columns.len() + 1) {
                return Err(format!("row {} has {} columns", n + 1, row.len()));
            }
            if columns.is_empty() {
                columns = vec![Vec::new(); row.len() - 1];
            }
            x.push(row[0]);
            for (col, v) in columns.iter_mut().zip(&row[1..]) {
                col.push(*v);
            }
        }
        Ok(SliceScatter {
            quantity: quantity.to_string(),
            case: case.to_string(),
            time,
            x,
            values: columns,
        })
    }
}

pub fn write_slice_scatter(
    field: &Field2D,
    quantity: Quantity,
    case: &str,
    time: f64,
    gas: &GasModel,
    path: &Path,
) -> Result<(), Error> {
    let table = SliceScatter::from_field(field, quantity, case, time, gas)?;
    fs::write(path, table.render()).map_err(|e| Error::io(path, e))
}

pub fn read_slice_scatter(path: &Path) -> Result<SliceScatter, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    SliceScatter::parse(&text).map_err(|message| Error::Format {
        path: path.to_path_buf(),
        message,
    })
}

/// Names used for the cell arrays of VTK output.
pub fn vtk_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Density => "density",
        Quantity::Pressure => "pressure",
        Quantity::XVelocity => "u",
        Quantity::TransverseVelocity => "v",
        Quantity::Entropy => "entropy",
        Quantity::VerticalMomentum => "rho_v",
    }
}

/// Contents of a legacy VTK structured-points file with cell data.
#[derive(Debug, Clone, PartialEq)]
pub struct VtkField {
    pub title: String,
    /// Point counts, one more than the cell counts.
    pub dimensions: (usize, usize),
    pub origin: (f64, f64),
    pub spacing: (f64, f64),
    /// Row-major cell arrays, `x` fastest.
    pub arrays: Vec<(String, Vec<f64>)>,
}

impl VtkField {
    pub fn from_field(
        field: &Field2D,
        quantities: &[Quantity],
        title: &str,
        gas: &GasModel,
    ) -> Result<Self, Error> {
        let arrays = quantities
            .iter()
            .map(|&q| {
                let values = field
                    .interior()
                    .map(|(_, _, s)| q.evaluate(&s, gas))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((vtk_name(q).to_string(), values))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(VtkField {
            title: title.to_string(),
            dimensions: (field.nx + 1, field.ny + 1),
            origin: field.origin,
            spacing: (field.dx, field.dy),
            arrays,
        })
    }

    pub fn array(&self, name: &str) -> Option<&[f64]> {
        self.arrays.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn render(&self) -> String {
        let (nx, ny) = self.dimensions;
        let mut out = String::new();
        out.push_str("# vtk DataFile Version 3.0\n");
        writeln!(out, "{}", self.title).unwrap();
        out.push_str("ASCII\nDATASET STRUCTURED_POINTS\n");
        writeln!(out, "DIMENSIONS {nx} {ny} 1").unwrap();
        writeln!(out, "ORIGIN {:?} {:?} 0.0", self.origin.0, self.origin.1).unwrap();
        writeln!(out, "SPACING {:?} {:?} 1.0", self.spacing.0, self.spacing.1).unwrap();
        writeln!(out, "CELL_DATA {}", (nx - 1) * (ny - 1)).unwrap();
        for (name, values) in &self.arrays {
            writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
            for v in values {
                writeln!(out, "{v:?}").unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let mut next = || lines.next().ok_or_else(|| "truncated file".to_string());
        if !next()?.starts_with("# vtk DataFile") {
            return Err("missing VTK signature".into());
        }
        let title = next()?.to_string();
        if next()? != "ASCII" || next()? != "DATASET STRUCTURED_POINTS" {
            return Err("expected ASCII structured points".into());
        }
        let numbers = |line: &str, key: &str| -> Result<Vec<f64>, String> {
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| format!("expected {key}, found `{line}`"))?;
            rest.split_whitespace()
                .map(|w| w.parse::<f64>().map_err(|e| format!("{key}: {e}")))
                .collect()
        };
        let dims = numbers(next()?, "DIMENSIONS")?;
        let origin = numbers(next()?, "ORIGIN")?;
        let spacing = numbers(next()?, "SPACING")?;
        let cells = numbers(next()?, "CELL_DATA")?;
        if dims.len() != 3 || origin.len() != 3 || spacing.len() != 3 || cells.len() != 1 {
            return Err("malformed geometry header".into());
        }
        let (nx, ny) = (dims[0] as usize, dims[1] as usize);
        let count = cells[0] as usize;
        if nx < 2 || ny < 2 || count != (nx - 1) * (ny - 1) {
            return Err("cell count does not match dimensions".into());
        }
        let mut arrays = Vec::new();
        while let Ok(line) = next() {
            let words: Vec<&str> = line.split_whitespace().collect();
            let ["SCALARS", name, _, ..] = words[..] else {
                return Err(format!("expected SCALARS, found `{line}`"));
            };
            next()?;
            let values = (0..count)
                .map(|_| next()?.trim().parse::<f64>().map_err(|e| format!("{name}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            arrays.push((name.to_string(), values));
        }
        Ok(VtkField {
            title,
            dimensions: (nx, ny),
            origin: (origin[0], origin[1]),
            spacing: (spacing[0], spacing[1]),
            arrays,
        })
    }
}

pub fn write_field(
    field: &Field2D,
    quantities: &[Quantity],
    title: &str,
    gas: &GasModel,
    path: &Path,
) -> Result<(), Error> {
    let vtk = VtkField::from_field(field, quantities, title, gas)?;
    fs::write(path, vtk.render()).map_err(|e| Error::io(path, e))
}

pub fn read_field(path: &Path) -> Result<VtkField, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    VtkField::parse(&text).map_err(|message| Error::Format {
        path: path.to_path_buf(),
        message,
    })
}

/// Record of a single run: configuration echo and outcome, as ordered
/// `key = value` lines. Timing is deliberately absent so the file is
/// reproducible.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunManifest {
    pub entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn write(&self, path: &Path) -> Result<(), Error> {
        fs::write(path, self.render()).map_err(|e| Error::io(path, e))
    }
}

/// `<case>_<mode>_ord<order>_t<time>`, the stem shared by snapshot files.
pub fn snapshot_stem(case: &str, mode: &str, order: u8, time: f64) -> String {
    format!("{case}_{mode}_ord{order}_t{time}")
}
