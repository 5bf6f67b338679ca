//! Data and rendering for the two qualitative result figures.
//!
//! Figure 1 (reaction-diffusion): numerical solution on a both-sided graded
//! mesh together with the two layer models, the algebraically decaying left
//! branch V0 and the exponential right-layer model V1.
//!
//! Figure 2 (convection-diffusion): the exact semi-analytic solution
//! `u = (x-1) + V` and the layer correction V on a left-graded plot grid.
//!
//! Default eps is 1e-2 so both layers are visible at plot resolution.
//! Everything is deterministic; two runs emit byte-identical files.

use crate::csvio::CsvTable;
use crate::svg::{self, Series};
use fraclayer::layers;
use fraclayer::mesh::{GradeSide, Mesh};
use fraclayer::solver::{solve_bvp, ProblemSpec};
use std::path::Path;

pub const FIG_EPS: f64 = 1e-2;
pub const FIG_ALPHA: f64 = 0.5;
const FIG1_N: usize = 512;
const FIG2_POINTS: usize = 400;

pub struct FigureData {
    pub csv: CsvTable,
    pub svg: String,
}

/// Reaction-diffusion figure: columns x, u, layer0, layer1.
pub fn figure1() -> Result<FigureData, String> {
    let p = ProblemSpec::reaction_diffusion(FIG_ALPHA, FIG_EPS);
    let mesh =
        Mesh::graded(FIG1_N, 1.0, 2.0, GradeSide::Both).map_err(|e| e.to_string())?;
    let sol = solve_bvp(&p, &mesh).map_err(|e| e.to_string())?;
    let width = FIG_EPS.powf(1.0 / (2.0 - FIG_ALPHA));
    let mu = layers::mu_reac(FIG_EPS, FIG_ALPHA).map_err(|e| e.to_string())?;
    let mut csv = CsvTable::new(&["x", "u", "layer0", "layer1"]);
    let mut s_u = Vec::new();
    let mut s_v0 = Vec::new();
    let mut s_v1 = Vec::new();
    for (i, &x) in mesh.nodes().iter().enumerate() {
        let v0 = layers::reac_layer0(x / width, FIG_ALPHA).map_err(|e| e.to_string())?;
        let v1 = layers::reac_layer1_model(x, FIG_EPS, FIG_ALPHA, mu);
        csv.push_floats(&[x, sol.values[i], v0, v1]);
        s_u.push((x, sol.values[i]));
        s_v0.push((x, v0));
        s_v1.push((x, v1));
    }
    let svg = svg::line_plot(
        "Reaction-diffusion: solution and layer branches (eps = 0.01)",
        "x",
        &[
            Series { name: "u", points: s_u },
            Series { name: "layer0", points: s_v0 },
            Series { name: "layer1", points: s_v1 },
        ],
    );
    Ok(FigureData { csv, svg })
}

/// Convection-diffusion figure: columns x, u, layer_correction.
pub fn figure2() -> Result<FigureData, String> {
    let mut csv = CsvTable::new(&["x", "u", "layer_correction"]);
    let mut s_u = Vec::new();
    let mut s_v = Vec::new();
    for i in 0..=FIG2_POINTS {
        // left-graded plot grid resolves the steep algebraic layer
        let x = (i as f64 / FIG2_POINTS as f64).powi(2);
        let v = layers::conv_layer_correction(x, FIG_EPS);
        let u = layers::reduced_solution(x) + v;
        csv.push_floats(&[x, u, v]);
        s_u.push((x, u));
        s_v.push((x, v));
    }
    let svg = svg::line_plot(
        "Convection-diffusion: solution and layer correction (eps = 0.01)",
        "x",
        &[
            Series { name: "u", points: s_u },
            Series { name: "layer_correction", points: s_v },
        ],
    );
    Ok(FigureData { csv, svg })
}

/// Emits fig1/fig2 CSV and SVG files into `dir`.
pub fn emit(dir: &Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let f1 = figure1()?;
    let f2 = figure2()?;
    f1.csv
        .write(&dir.join("fig1.csv"))
        .map_err(|e| e.to_string())?;
    std::fs::write(dir.join("fig1.svg"), f1.svg).map_err(|e| e.to_string())?;
    f2.csv
        .write(&dir.join("fig2.csv"))
        .map_err(|e| e.to_string())?;
    std::fs::write(dir.join("fig2.svg"), f2.svg).map_err(|e| e.to_string())?;
    Ok(())
}
