//! The five subcommands: dimension, harmonic, eigen, theta, mesh.

use hata_core::{
    build_graph, classify_support, euclidean_dimension, harmonic_from_boundary,
    monotonicity_check, pair_spectrum, restrict_to_interval, solve_dirichlet, theta_analysis,
    MeasureWeights, SpectralResult, SupportLabel, ThetaReport, VertexFunction, VertexGraph,
};

use crate::config::{CliError, RunConfig, Triple};
use crate::output::{
    self, ConfigEcho, EigenRow, EigenvectorRow, FunctionRow, MeshDoc, MeshEdge, MeshVertex,
    ThetaRow, TraceRow,
};
use crate::CommonOpts;

fn run_config(common: &CommonOpts) -> Result<RunConfig, CliError> {
    RunConfig::from_opts(
        common.alpha_re,
        common.alpha_im,
        common.h,
        common.m,
        common.out.clone(),
    )
}

fn echo(cfg: &RunConfig) -> ConfigEcho {
    ConfigEcho::new(cfg.params.alpha(), cfg.structure.h(), cfg.level)
}

/// Both dimension roots to 12 digits, plus the h at which they coincide.
pub fn dimension(common: &CommonOpts) -> Result<(), CliError> {
    let cfg = run_config(common)?;
    let d = cfg.structure.resistance_dimension();
    let de = euclidean_dimension(&cfg.params);
    println!("resistance_dimension = {d:.12}");
    println!("euclidean_dimension  = {de:.12}");
    println!(
        "coincide_at_h        = {:.12}",
        1.0 / cfg.params.alpha().norm()
    );
    Ok(())
}

fn function_rows(u: &VertexFunction, g: &VertexGraph) -> Vec<FunctionRow> {
    g.vertices()
        .iter()
        .enumerate()
        .map(|(id, v)| FunctionRow {
            address: v.address.to_string(),
            x: v.position.re,
            y: v.position.im,
            value: u.values[id],
        })
        .collect()
}

fn trace_rows(u: &VertexFunction, g: &VertexGraph) -> Result<Vec<TraceRow>, CliError> {
    let t = restrict_to_interval(u, g)?;
    Ok(t.points
        .iter()
        .map(|p| TraceRow {
            x: p.x,
            value: p.value,
            birth_level: p.birth_level,
        })
        .collect())
}

fn theta_rows(rep: &ThetaReport) -> Vec<ThetaRow> {
    rep.points
        .iter()
        .map(|p| ThetaRow {
            x_q: p.x,
            theta: p.theta,
            level: p.birth_level,
            excluded: p.excluded,
        })
        .collect()
}

/// Harmonic function from boundary data: vertex-function file, trace file,
/// and a monotonicity/theta summary on stdout.
pub fn harmonic(common: &CommonOpts, boundary: Triple) -> Result<(), CliError> {
    let cfg = run_config(common)?;
    let g = build_graph(cfg.level, cfg.params, cfg.structure);
    let u = harmonic_from_boundary(boundary, cfg.level, &cfg.structure);
    let t = restrict_to_interval(&u, &g)?;
    let mono = monotonicity_check(&t);
    let rep = theta_analysis(&t, &u, &cfg.structure);

    let e = echo(&cfg);
    let f1 = output::write_table(
        &cfg.out_dir,
        "harmonic_function",
        common.format,
        e,
        &function_rows(&u, &g),
    )?;
    let f2 = output::write_table(
        &cfg.out_dir,
        "harmonic_trace",
        common.format,
        e,
        &trace_rows(&u, &g)?,
    )?;

    println!("wrote {}", f1.display());
    println!("wrote {}", f2.display());
    match mono.first_violation {
        None => println!("trace is nondecreasing"),
        Some(i) => println!("trace is not monotone; first violation at index {i}"),
    }
    println!(
        "theta: reference 1/h^2 = {}, max deviation {}, {} excluded of {}",
        rep.reference,
        rep.max_deviation,
        rep.excluded_count,
        rep.points.len()
    );
    Ok(())
}

fn eigen_rows(
    r: &SpectralResult,
    cfg: &RunConfig,
    w: &MeasureWeights,
) -> Result<Vec<EigenRow>, CliError> {
    let labels = r.labels()?;
    let pairing = pair_spectrum(r, &cfg.structure, w)?;
    let rows = labels
        .iter()
        .enumerate()
        .map(|(k, label)| {
            let pair = pairing.entries.iter().find(|e| e.derived == k);
            EigenRow {
                k: k + 1,
                lambda: r.eigenvalues[k],
                label: label.as_str(),
                paired_k: pair.and_then(|e| e.primary.map(|p| p + 1)),
                pair_mismatch: pair.and_then(|e| e.mismatch),
                residual: r.residuals[k],
            }
        })
        .collect();
    Ok(rows)
}

/// Dirichlet spectrum: eigenvalue table and optional per-eigenvector files.
pub fn eigen(common: &CommonOpts, count: usize, vectors: bool) -> Result<(), CliError> {
    let cfg = run_config(common)?;
    let g = build_graph(cfg.level, cfg.params, cfg.structure);
    let w = MeasureWeights::for_graph(&g);
    let mut r = solve_dirichlet(&g, &w, count)?;
    classify_support(&mut r, &g)?;

    let e = echo(&cfg);
    let table = output::write_table(
        &cfg.out_dir,
        "eigenvalues",
        common.format,
        e,
        &eigen_rows(&r, &cfg, &w)?,
    )?;
    println!("wrote {}", table.display());
    if vectors {
        for k in 0..r.count() {
            let rows: Vec<EigenvectorRow> = function_rows(&r.eigenvectors[k], &g)
                .into_iter()
                .map(|row| EigenvectorRow {
                    address: row.address,
                    x: row.x,
                    y: row.y,
                    value: row.value,
                    k: k + 1,
                })
                .collect();
            let path = output::write_table(
                &cfg.out_dir,
                &format!("eigenvector_{:03}", k + 1),
                common.format,
                e,
                &rows,
            )?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

/// Middle-point proportions of an eigenfunction (or harmonic function) at
/// levels m-1 and m, one file per level.
pub fn theta(
    common: &CommonOpts,
    eigen_index: Option<usize>,
    boundary: Option<Triple>,
) -> Result<(), CliError> {
    let cfg = run_config(common)?;
    if cfg.level < 1 {
        return Err(CliError::Config("theta needs m >= 1".into()));
    }
    if eigen_index.is_none() && boundary.is_none() {
        return Err(CliError::Config(
            "pass either --eigen-index or --boundary".into(),
        ));
    }
    if eigen_index == Some(0) {
        return Err(CliError::Config("--eigen-index is 1-based".into()));
    }

    for level in [cfg.level - 1, cfg.level] {
        let g = build_graph(level, cfg.params, cfg.structure);
        let u = match (eigen_index, boundary) {
            (Some(k), _) => {
                let w = MeasureWeights::for_graph(&g);
                let mut r = solve_dirichlet(&g, &w, k)?;
                classify_support(&mut r, &g)?;
                let label = r.labels()?[k - 1];
                println!(
                    "level {level}: eigenvalue {} = {}, {}",
                    k,
                    r.eigenvalues[k - 1],
                    label.as_str()
                );
                if label == SupportLabel::Derived {
                    println!(
                        "level {level}: eigenfunction {k} is supported off the interval; \
                         expect an all-excluded report"
                    );
                }
                r.eigenvectors.swap_remove(k - 1)
            }
            (None, Some(b)) => harmonic_from_boundary(b, level, &cfg.structure),
            (None, None) => unreachable!(),
        };
        let t = restrict_to_interval(&u, &g)?;
        let rep = theta_analysis(&t, &u, &cfg.structure);
        let e = ConfigEcho::new(cfg.params.alpha(), cfg.structure.h(), level);
        let path = output::write_table(
            &cfg.out_dir,
            &format!("theta_level_{level}"),
            common.format,
            e,
            &theta_rows(&rep),
        )?;
        println!(
            "wrote {} ({} middle points, {} excluded, max |theta - 1/h^2| = {})",
            path.display(),
            rep.points.len(),
            rep.excluded_count,
            rep.max_deviation
        );
    }
    Ok(())
}

/// Level-m vertex graph as JSON.
pub fn mesh(common: &CommonOpts) -> Result<(), CliError> {
    let cfg = run_config(common)?;
    let g = build_graph(cfg.level, cfg.params, cfg.structure);
    let doc = MeshDoc {
        level: cfg.level,
        alpha: [cfg.params.alpha().re, cfg.params.alpha().im],
        h: cfg.structure.h(),
        version: env!("CARGO_PKG_VERSION"),
        vertices: g
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| MeshVertex {
                id,
                address: v.address.to_string(),
                x: v.position.re,
                y: v.position.im,
                boundary: v.is_boundary,
                on01: v.on_unit_interval,
                birth_level: v.birth_level,
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| MeshEdge {
                u: e.u,
                v: e.v,
                conductance: e.conductance,
            })
            .collect(),
    };
    let path = output::write_mesh(&cfg.out_dir, &doc)?;
    println!("wrote {}", path.display());
    Ok(())
}
