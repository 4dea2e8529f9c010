//! The single-purpose subcommands; the aggregated certification run lives in
//! `certify`.

use std::collections::BTreeMap;

use cartanchan_core::{
    choi_direct, cp_halfplanes, intersect_halfplanes, is_ccp, is_cp, is_ppt, ppt2_verify,
    ppt_halfplanes, spectrum_report, standard_cartan_basis, structure_constants,
    verify_appendix_a, web_region, CartanChannel, InvolutionKind, Ppt2Report, Region2D,
};
use serde::Serialize;

use crate::args::{kind_name, ChannelArgs, FormatArg, RunConfig};
use crate::output::{write_json, write_points_csv, SCHEMA};

pub fn err_str(e: cartanchan_core::Error) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct BasisExport {
    schema: &'static str,
    dim: usize,
    kind: &'static str,
    a: usize,
    b: usize,
    labels: Vec<String>,
    a_indices: Vec<usize>,
    b_indices: Vec<usize>,
    /// Row-major [re, im] pairs, one flat list per basis element.
    matrices: Vec<Vec<[f64; 2]>>,
}

pub fn cmd_basis(cfg: &RunConfig) -> Result<(), String> {
    for (d, kind) in cfg.work_items() {
        let cb = standard_cartan_basis(d, kind, cfg.basis).map_err(err_str)?;
        let matrices = cb
            .basis()
            .elements()
            .iter()
            .map(|m| {
                let mut flat = Vec::with_capacity(d * d);
                for r in 0..d {
                    for c in 0..d {
                        flat.push([m[(r, c)].re, m[(r, c)].im]);
                    }
                }
                flat
            })
            .collect();
        let export = BasisExport {
            schema: SCHEMA,
            dim: d,
            kind: kind_name(kind),
            a: cb.a(),
            b: cb.b(),
            labels: cb.basis().labels().to_vec(),
            a_indices: cb.a_indices().to_vec(),
            b_indices: cb.b_indices().to_vec(),
            matrices,
        };
        let path = write_json(&cfg.out, &format!("basis_{}_D{}.json", kind_name(kind), d), &export)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct IdentityEntry {
    residual: f64,
    pass: bool,
    informational: bool,
    vacuous: bool,
}

#[derive(Serialize)]
struct LieReport {
    schema: &'static str,
    dim: usize,
    kind: &'static str,
    tolerance: f64,
    identities: BTreeMap<String, IdentityEntry>,
    pass: bool,
}

pub fn cmd_verify_liealg(cfg: &RunConfig) -> Result<bool, String> {
    let mut all_pass = true;
    for (d, kind) in cfg.work_items() {
        if d > cfg.max_dim {
            return Err(format!(
                "dimension {d} exceeds the brute-force cap {}; set CARTANCHAN_MAX_DIM to raise it",
                cfg.max_dim
            ));
        }
        let cb = standard_cartan_basis(d, kind, cfg.basis).map_err(err_str)?;
        let sc = structure_constants(&cb).map_err(err_str)?;
        let report = verify_appendix_a(&cb, &sc, cfg.tol).map_err(err_str)?;
        let identities: BTreeMap<String, IdentityEntry> = report
            .checks
            .iter()
            .map(|c| {
                (
                    c.name.clone(),
                    IdentityEntry {
                        residual: c.residual,
                        pass: c.pass,
                        informational: c.informational,
                        vacuous: c.vacuous,
                    },
                )
            })
            .collect();
        let pass = report.all_pass();
        all_pass &= pass;
        let payload = LieReport {
            schema: SCHEMA,
            dim: d,
            kind: kind_name(kind),
            tolerance: cfg.tol,
            identities,
            pass,
        };
        let path = write_json(
            &cfg.out,
            &format!("liealg_{}_D{}.json", kind_name(kind), d),
            &payload,
        )?;
        println!(
            "wrote {} ({}; max residual {:.3e})",
            path.display(),
            if pass { "pass" } else { "FAIL" },
            report.max_residual()
        );
    }
    Ok(all_pass)
}

#[derive(Serialize)]
struct SpectrumPayload {
    schema: &'static str,
    dim: usize,
    kind: &'static str,
    alpha: f64,
    beta: f64,
    analytic: Vec<(f64, usize)>,
    numeric: Vec<f64>,
    max_deviation: f64,
    is_cp: bool,
    is_ccp: bool,
    is_ppt: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

pub fn cmd_channel(args: &ChannelArgs, with_matrix: bool) -> Result<(), String> {
    let cfg = RunConfig::from_common(&args.common, &[4])?;
    for (d, kind) in cfg.work_items() {
        let ch = CartanChannel::new(d, kind, args.alpha, args.beta).map_err(err_str)?;
        let cb = standard_cartan_basis(d, kind, cfg.basis).map_err(err_str)?;
        let report = spectrum_report(&ch, &cb).map_err(err_str)?;
        let matrix = if with_matrix {
            let choi = choi_direct(&ch, &cb).map_err(err_str)?;
            let n = d * d;
            let mut rows = Vec::with_capacity(n);
            for r in 0..n {
                let mut row = Vec::with_capacity(n);
                for c in 0..n {
                    let v = choi.matrix()[(r, c)];
                    row.push([v.re, v.im]);
                }
                rows.push(row);
            }
            Some(rows)
        } else {
            None
        };
        let payload = SpectrumPayload {
            schema: SCHEMA,
            dim: d,
            kind: kind_name(kind),
            alpha: args.alpha,
            beta: args.beta,
            analytic: report.analytic.clone(),
            numeric: report.numeric.clone(),
            max_deviation: report.max_deviation,
            is_cp: is_cp(&ch),
            is_ccp: is_ccp(&ch),
            is_ppt: is_ppt(&ch),
            matrix,
        };
        let stem = if with_matrix { "choi" } else { "spectrum" };
        let path = write_json(
            &cfg.out,
            &format!("{stem}_{}_D{}.json", kind_name(kind), d),
            &payload,
        )?;
        println!(
            "wrote {} (max deviation {:.3e})",
            path.display(),
            report.max_deviation
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct RegionAreas {
    cp: f64,
    ppt: f64,
    web: f64,
}

#[derive(Serialize)]
struct RegionPayload {
    schema: &'static str,
    dim: usize,
    kind: &'static str,
    cp_vertices: Vec<(f64, f64)>,
    ppt_vertices: Vec<(f64, f64)>,
    web_vertices: Vec<(f64, f64)>,
    areas: RegionAreas,
}

pub fn cmd_region(cfg: &RunConfig) -> Result<(), String> {
    for (d, kind) in cfg.work_items() {
        let cp = intersect_halfplanes(&cp_halfplanes(d, kind).map_err(err_str)?).map_err(err_str)?;
        let ppt =
            intersect_halfplanes(&ppt_halfplanes(d, kind).map_err(err_str)?).map_err(err_str)?;
        let web = web_region(d).map_err(err_str)?;
        for (name, region) in [("cp", &cp), ("ppt", &ppt), ("web", &web)] {
            let path = write_points_csv(
                &cfg.out,
                &format!("region_{name}_{}_D{}.csv", kind_name(kind), d),
                region.vertices(),
            )?;
            println!("wrote {}", path.display());
        }
        if cfg.format == FormatArg::Json {
            let payload = RegionPayload {
                schema: SCHEMA,
                dim: d,
                kind: kind_name(kind),
                cp_vertices: cp.vertices().to_vec(),
                ppt_vertices: ppt.vertices().to_vec(),
                web_vertices: web.vertices().to_vec(),
                areas: RegionAreas {
                    cp: cp.area(),
                    ppt: ppt.area(),
                    web: web.area(),
                },
            };
            let path = write_json(
                &cfg.out,
                &format!("region_{}_D{}.json", kind_name(kind), d),
                &payload,
            )?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct CompositionEntry {
    pub pair: String,
    pub alpha: f64,
    pub beta: f64,
    pub in_web: bool,
    pub margin: f64,
}

#[derive(Serialize)]
pub struct NamedEntry {
    pub name: &'static str,
    pub closed: (f64, f64),
    pub composed: (f64, f64),
    pub delta: f64,
}

#[derive(Serialize)]
pub struct Ppt2Payload {
    pub schema: &'static str,
    pub dim: usize,
    pub kind: &'static str,
    pub compositions: Vec<CompositionEntry>,
    pub named: Vec<NamedEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_value: Option<f64>,
    pub within_argument_range: bool,
    pub verdict: bool,
}

pub fn ppt2_payload(report: &Ppt2Report) -> Ppt2Payload {
    Ppt2Payload {
        schema: SCHEMA,
        dim: report.dim,
        kind: kind_name(report.kind),
        compositions: report
            .compositions
            .iter()
            .map(|c| CompositionEntry {
                pair: c.label.clone(),
                alpha: c.alpha,
                beta: c.beta,
                in_web: c.in_web,
                margin: c.margin,
            })
            .collect(),
        named: report
            .named
            .iter()
            .map(|n| NamedEntry {
                name: n.name,
                closed: n.closed,
                composed: n.composed,
                delta: n.delta,
            })
            .collect(),
        boundary_value: report.boundary_value,
        within_argument_range: report.within_argument_range,
        verdict: report.verdict,
    }
}

pub fn cmd_ppt2(cfg: &RunConfig) -> Result<bool, String> {
    let mut all = true;
    for (d, kind) in cfg.work_items() {
        if kind == InvolutionKind::Sp && d < 4 || d < 3 {
            return Err(format!("no extreme PPT channels at D={d} for {kind}"));
        }
        let report = ppt2_verify(d, kind).map_err(err_str)?;
        all &= report.verdict;
        let payload = ppt2_payload(&report);
        let path = write_json(
            &cfg.out,
            &format!("ppt2_{}_D{}.json", kind_name(kind), d),
            &payload,
        )?;
        println!(
            "wrote {} (verdict {}{})",
            path.display(),
            report.verdict,
            if report.within_argument_range {
                ""
            } else {
                ", informational: below the argument's dimension range"
            }
        );
    }
    Ok(all)
}

fn polygon(d: usize, kind: InvolutionKind, ppt: bool) -> Result<Region2D, String> {
    let hps = if ppt {
        ppt_halfplanes(d, kind).map_err(err_str)?
    } else {
        cp_halfplanes(d, kind).map_err(err_str)?
    };
    intersect_halfplanes(&hps).map_err(err_str)
}

/// Polygon data behind the three figures: CP/PPT regions per dimension for
/// both kinds, and the WEB trapezoid plus the ten extreme-pair composition
/// points for the so D=5 and sp D=8 showcases.
pub fn cmd_emit_figures(cfg: &RunConfig) -> Result<(), String> {
    for &d in &cfg.dims {
        let jobs: [(&str, InvolutionKind, bool); 4] = [
            ("fig1a_cp_so", InvolutionKind::So, false),
            ("fig1b_ppt_so", InvolutionKind::So, true),
            ("fig2a_cp_sp", InvolutionKind::Sp, false),
            ("fig2b_ppt_sp", InvolutionKind::Sp, true),
        ];
        for (stem, kind, ppt) in jobs {
            if kind == InvolutionKind::Sp && d % 2 != 0 {
                continue;
            }
            let region = polygon(d, kind, ppt)?;
            let path = write_points_csv(&cfg.out, &format!("{stem}_D{d}.csv"), region.vertices())?;
            println!("wrote {} (area {:.6})", path.display(), region.area());
        }
    }

    for (stem, d, kind) in [
        ("fig3a_so", 5usize, InvolutionKind::So),
        ("fig3b_sp", 8, InvolutionKind::Sp),
    ] {
        let web = web_region(d).map_err(err_str)?;
        let path =
            write_points_csv(&cfg.out, &format!("{stem}_D{d}_web.csv"), web.vertices())?;
        println!("wrote {}", path.display());
        let report = ppt2_verify(d, kind).map_err(err_str)?;
        let points: Vec<(f64, f64)> = report
            .compositions
            .iter()
            .map(|c| (c.alpha, c.beta))
            .collect();
        let path = write_points_csv(&cfg.out, &format!("{stem}_D{d}_compositions.csv"), &points)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

