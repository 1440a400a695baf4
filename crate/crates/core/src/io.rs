//! CSV tables and plot data. Floats use 17 significant digits, lines end in LF.

use crate::census::CensusReport;
use crate::error::{Error, Result};
use crate::geometry::{realize, PlanarConfig};
use crate::json::float;
use crate::solver::SweepTable;
use std::fmt::Write as _;
use std::path::Path;

pub const SWEEP_COLUMNS: &str =
    "alpha,beta,a,b,c,d,e,f,nu,xi,lambda_cc,symmetry,iterations,residual";

/// One row per grid cell; failed cells keep their coordinates and leave the
/// remaining fields empty.
pub fn sweep_csv(table: &SweepTable, header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "{SWEEP_COLUMNS}");
    for cell in &table.cells {
        let _ = write!(out, "{},{}", float(cell.alpha), float(cell.beta));
        match &cell.report {
            Some(rep) => {
                for x in rep.state.sq.as_array() {
                    let _ = write!(out, ",{}", float(x));
                }
                let lambda = cell.lambda_cc.map(float).unwrap_or_default();
                let _ = writeln!(
                    out,
                    ",{},{},{},{},{},{}",
                    float(rep.state.nu),
                    float(rep.state.xi),
                    lambda,
                    rep.symmetry,
                    rep.iterations,
                    float(rep.final_residual)
                );
            }
            None => out.push_str(",,,,,,,,,,,,\n"),
        }
    }
    out
}

pub const VERTEX_COLUMNS: &str = "class,body,mass,x,y";
const VERTEX_NOTE: &str =
    "# class index, body 1-4, mass, position relative to the centre of mass";

fn vertex_rows(out: &mut String, class: usize, cfg: &PlanarConfig) {
    for (i, (p, m)) in cfg.points().iter().zip(cfg.masses().masses()).enumerate() {
        let _ = writeln!(out, "{class},{},{},{},{}", i + 1, float(m), float(p.x), float(p.y));
    }
}

/// Vertices of one configuration.
pub fn config_plot_data(cfg: &PlanarConfig) -> String {
    let mut out = format!("{VERTEX_NOTE}\n{VERTEX_COLUMNS}\n");
    vertex_rows(&mut out, 0, cfg);
    out
}

/// Vertices of each census class in its canonical realization.
pub fn census_plot_data(rep: &CensusReport) -> String {
    let mut out = format!("{VERTEX_NOTE}\n{VERTEX_COLUMNS}\n");
    for (k, class) in rep.classes.iter().enumerate() {
        let Ok(cfg) = class.frame.reconstruct(&rep.masses) else {
            continue;
        };
        vertex_rows(&mut out, k, &cfg);
    }
    out
}

pub const CENSUS_COLUMNS: &str = "class,symmetry,basin,u,v,t,s,theta,a,b,c,d,e,f,nu,xi";

/// One row per census class.
pub fn census_csv(rep: &CensusReport) -> String {
    let mut out = format!("{CENSUS_COLUMNS}\n");
    for (k, class) in rep.classes.iter().enumerate() {
        let _ = write!(out, "{k},{},{}", class.symmetry, class.basin);
        for x in class.frame.to_array().into_iter().chain(class.state.sq.as_array()) {
            let _ = write!(out, ",{}", float(x));
        }
        let _ = writeln!(out, ",{},{}", float(class.state.nu), float(class.state.xi));
    }
    out
}

pub const SHAPE_COLUMNS: &str = "alpha,beta,body,x,y";

/// Realized shape of every converged sweep cell.
pub fn sweep_plot_data(table: &SweepTable) -> String {
    let mut out = format!("# masses (1,1,alpha,beta), body 1-4, position\n{SHAPE_COLUMNS}\n");
    for cell in &table.cells {
        let Some(rep) = &cell.report else { continue };
        let Ok(cfg) = realize(&rep.state.sq, &rep.masses) else {
            continue;
        };
        for (i, p) in cfg.points().iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{},{}", float(cell.alpha), float(cell.beta), i + 1, float(p.x), float(p.y));
        }
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dziobek::MassVector;

    #[test]
    fn empty_census_is_header_only() {
        let rep = CensusReport {
            masses: MassVector::equal(),
            resolution: 2,
            within_theorem_hypothesis: true,
            classes: Vec::new(),
            seeds_total: 0,
            seeds_converged: 0,
            failures: Default::default(),
        };
        assert_eq!(census_plot_data(&rep), format!("{VERTEX_NOTE}\n{VERTEX_COLUMNS}\n"));
        assert_eq!(census_csv(&rep), format!("{CENSUS_COLUMNS}\n"));
    }

    #[test]
    fn io_error_names_path() {
        let err = read_file(Path::new("/nonexistent/dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.csv"));
    }
}
