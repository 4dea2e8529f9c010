//! The one-shot certification run: every module's invariant suite for each
//! (dimension, kind) work item, aggregated into a single report with an
//! exit-code contract of 0 iff everything passed.
//!
//! Identity residuals are judged against the configurable --tol; structural
//! tolerances (two-path Choi agreement, PT rule, Kraus round trips, vertex
//! reproduction, named composition values) are pinned here.

use std::time::Instant;

use cartanchan_core::matrix::{dagger, hermitian_eigenvalues, max_abs_diff};
use cartanchan_core::*;
use serde::Serialize;
use std::result::Result;

use crate::args::{kind_name, RunConfig};
use crate::commands::{err_str, ppt2_payload, Ppt2Payload};
use crate::output::{write_json, SCHEMA};

const TWO_PATH_TOL: f64 = 1e-10;
const PT_TOL: f64 = 1e-10;
const KRAUS_TOL: f64 = 1e-9;
const BASIS_ORTH_TOL: f64 = 1e-10;
const INVOLUTION_TOL: f64 = 1e-12;
const LEAKAGE_TOL: f64 = 1e-10;
const VERTEX_TOL: f64 = 1e-10;
const NAMED_TOL: f64 = 1e-12;
const SPECTRUM_SAMPLES: usize = 50;
const KRAUS_SAMPLES: usize = 10;

#[derive(Serialize)]
struct ConfigEcho {
    dims: Vec<usize>,
    kinds: Vec<&'static str>,
    basis: &'static str,
    tol: f64,
    ctol: f64,
    seed: u64,
}

#[derive(Serialize)]
struct RelationEntry {
    relation: String,
    max_leakage: f64,
    vacuous: bool,
}

#[derive(Serialize)]
struct BasisSection {
    dim: usize,
    kind: &'static str,
    a: usize,
    b: usize,
    orthogonality_residual: f64,
    hermiticity_residual: f64,
    involution_residual: f64,
    commutation: Vec<RelationEntry>,
    pass: bool,
}

#[derive(Serialize)]
struct NamedIdentity {
    name: String,
    residual: f64,
    pass: bool,
    informational: bool,
    vacuous: bool,
}

#[derive(Serialize)]
struct LieSection {
    dim: usize,
    kind: &'static str,
    max_residual: f64,
    identities: Vec<NamedIdentity>,
    pass: bool,
}

#[derive(Serialize)]
struct ChannelSection {
    dim: usize,
    kind: &'static str,
    samples: usize,
    max_spectrum_deviation: f64,
    max_two_path_gap: f64,
    max_pt_gap: f64,
    max_kraus_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    hadamard_agreement: Option<bool>,
    pass: bool,
}

#[derive(Serialize)]
struct RegionSection {
    dim: usize,
    kind: &'static str,
    /// True when the PPT region degenerates (no four-vertex closed form).
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity_extreme: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    web_inside_ppt: Option<bool>,
    pass: bool,
}

#[derive(Serialize)]
struct Ppt2Section {
    #[serde(flatten)]
    payload: Ppt2Payload,
    pass: bool,
}

#[derive(Serialize)]
struct CertificationReport {
    schema: &'static str,
    config: ConfigEcho,
    basis_audit: Vec<BasisSection>,
    lie: Vec<LieSection>,
    channels: Vec<ChannelSection>,
    regions: Vec<RegionSection>,
    ppt2: Vec<Ppt2Section>,
    overall: bool,
}

#[cfg(feature = "parallel")]
fn run_items<T, F>(items: &[(usize, InvolutionKind)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, InvolutionKind) -> T + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(|&(d, k)| f(d, k)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_items<T, F>(items: &[(usize, InvolutionKind)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, InvolutionKind) -> T + Sync,
{
    items.iter().map(|&(d, k)| f(d, k)).collect()
}

fn collect<T>(results: Vec<Result<T, String>>) -> Result<Vec<T>, String> {
    results.into_iter().collect()
}

fn basis_section(d: usize, kind: InvolutionKind, cfg: &RunConfig) -> Result<BasisSection, String> {
    let cb = standard_cartan_basis(d, kind, cfg.basis).map_err(err_str)?;
    let audit = cb.basis().audit();

    // Double application of the involution on Hermitian probes built from
    // basis products; these are generally not eigenvectors.
    let inv = cb.involution();
    let mut involution_residual = 0.0f64;
    for i in 1..cb.basis().len().min(6) {
        for j in 1..cb.basis().len().min(6) {
            let p = cb.basis().element(i) * cb.basis().element(j);
            let h = (&p + dagger(&p)) * cartanchan_core::matrix::C64::from(0.5);
            let twice = inv.apply(&inv.apply(&h).map_err(err_str)?).map_err(err_str)?;
            involution_residual = involution_residual.max(max_abs_diff(&twice, &h));
        }
    }

    let comm = commutation_audit(&cb);
    let pass = audit.orthogonality_error <= BASIS_ORTH_TOL
        && audit.hermiticity_error <= 1e-12
        && involution_residual <= INVOLUTION_TOL
        && comm.max_leakage() <= LEAKAGE_TOL;
    Ok(BasisSection {
        dim: d,
        kind: kind_name(kind),
        a: cb.a(),
        b: cb.b(),
        orthogonality_residual: audit.orthogonality_error,
        hermiticity_residual: audit.hermiticity_error,
        involution_residual,
        commutation: comm
            .relations
            .iter()
            .map(|r| RelationEntry {
                relation: r.name.to_string(),
                max_leakage: r.max_leakage,
                vacuous: r.vacuous,
            })
            .collect(),
        pass,
    })
}

fn lie_section(d: usize, kind: InvolutionKind, cfg: &RunConfig) -> Result<LieSection, String> {
    let cb = standard_cartan_basis(d, kind, cfg.basis).map_err(err_str)?;
    let sc = structure_constants(&cb).map_err(err_str)?;
    let report = verify_appendix_a(&cb, &sc, cfg.tol).map_err(err_str)?;
    Ok(LieSection {
        dim: d,
        kind: kind_name(kind),
        max_residual: report.max_residual(),
        pass: report.all_pass(),
        identities: report
            .checks
            .into_iter()
            .map(|c| NamedIdentity {
                name: c.name,
                residual: c.residual,
                pass: c.pass,
                informational: c.informational,
                vacuous: c.vacuous,
            })
            .collect(),
    })
}

fn channel_section(
    d: usize,
    kind: InvolutionKind,
    cfg: &RunConfig,
) -> Result<ChannelSection, String> {
    let cb = standard_cartan_basis(d, kind, cfg.basis).map_err(err_str)?;
    let samples = sample_cp_channels(d, kind, SPECTRUM_SAMPLES, cfg.seed).map_err(err_str)?;

    let mut max_spectrum_deviation = 0.0f64;
    let mut max_pt_gap = 0.0f64;
    for ch in &samples {
        let rep = spectrum_report(ch, &cb).map_err(err_str)?;
        max_spectrum_deviation = max_spectrum_deviation.max(rep.max_deviation);

        let choi = choi_direct(ch, &cb).map_err(err_str)?;
        let pt = partial_transpose(choi.matrix(), d).map_err(err_str)?;
        let mirrored = choi_direct(&ch.mirrored(), &cb).map_err(err_str)?;
        if kind == InvolutionKind::So {
            max_pt_gap = max_pt_gap.max(max_abs_diff(&pt, mirrored.matrix()));
        }
        let sp = hermitian_eigenvalues(&pt).map_err(err_str)?;
        let sm = numeric_spectrum(&mirrored).map_err(err_str)?;
        for (x, y) in sp.iter().zip(sm.iter()) {
            max_pt_gap = max_pt_gap.max((x - y).abs());
        }
    }

    let mut max_two_path_gap = 0.0f64;
    let mut max_kraus_residual = 0.0f64;
    for ch in samples.iter().take(KRAUS_SAMPLES) {
        let direct = choi_direct(ch, &cb).map_err(err_str)?;
        let via = choi_via_action(ch, &cb).map_err(err_str)?;
        if kind == InvolutionKind::So {
            max_two_path_gap = max_two_path_gap.max(max_abs_diff(direct.matrix(), via.matrix()));
        }
        let sd = numeric_spectrum(&direct).map_err(err_str)?;
        let sv = numeric_spectrum(&via).map_err(err_str)?;
        for (x, y) in sd.iter().zip(sv.iter()) {
            max_two_path_gap = max_two_path_gap.max((x - y).abs());
        }

        let ks = kraus_from_choi(&via, KRAUS_TOL).map_err(err_str)?;
        max_kraus_residual = max_kraus_residual.max(ks.completeness_residual());
        for g in cb.basis().elements() {
            let want = apply_channel(ch, g, &cb).map_err(err_str)?;
            max_kraus_residual = max_kraus_residual.max(max_abs_diff(&want, &kraus_apply(&ks, g)));
        }
    }

    let hadamard_agreement = if d.is_power_of_two() {
        let grid: Vec<f64> = (0..5).map(|i| -0.5 + 0.375 * i as f64).collect();
        let mut agree = true;
        for &alpha in &grid {
            for &beta in &grid {
                let ch = CartanChannel::new(d, kind, alpha, beta).map_err(err_str)?;
                agree &= qubit_hadamard_cp_check(&ch).map_err(err_str)? == is_cp(&ch);
            }
        }
        Some(agree)
    } else {
        None
    };

    let pass = max_spectrum_deviation <= cfg.tol
        && max_two_path_gap <= TWO_PATH_TOL
        && max_pt_gap <= PT_TOL
        && max_kraus_residual <= KRAUS_TOL
        && hadamard_agreement.unwrap_or(true);
    Ok(ChannelSection {
        dim: d,
        kind: kind_name(kind),
        samples: samples.len(),
        max_spectrum_deviation,
        max_two_path_gap,
        max_pt_gap,
        max_kraus_residual,
        hadamard_agreement,
        pass,
    })
}

fn region_section(d: usize, kind: InvolutionKind) -> Result<RegionSection, String> {
    let degenerate = match kind {
        InvolutionKind::So => d < 3,
        InvolutionKind::Sp => d < 4,
    };
    if degenerate {
        return Ok(RegionSection {
            dim: d,
            kind: kind_name(kind),
            degenerate,
            vertex_gap: None,
            identity_extreme: None,
            web_inside_ppt: None,
            pass: true,
        });
    }

    let closed = extreme_ppt(d, kind).map_err(err_str)?;
    let region = intersect_halfplanes(&ppt_halfplanes(d, kind).map_err(err_str)?).map_err(err_str)?;
    let mut vertex_gap = 0.0f64;
    for &(ex, ey) in &closed {
        let gap = region
            .vertices()
            .iter()
            .map(|&(x, y)| (x - ex).abs().max((y - ey).abs()))
            .fold(f64::INFINITY, f64::min);
        vertex_gap = vertex_gap.max(gap);
    }

    let cp = intersect_halfplanes(&cp_halfplanes(d, kind).map_err(err_str)?).map_err(err_str)?;
    let identity_extreme = cp
        .vertices()
        .iter()
        .any(|&(x, y)| (x - 1.0).abs() <= VERTEX_TOL && (y - 1.0).abs() <= VERTEX_TOL);

    let web = web_region(d).map_err(err_str)?;
    let hps = ppt_halfplanes(d, kind).map_err(err_str)?;
    let web_inside_ppt = web
        .vertices()
        .iter()
        .all(|&v| hps.iter().all(|h| h.value(v) >= -1e-12));

    let pass = vertex_gap <= VERTEX_TOL && identity_extreme && web_inside_ppt
        && region.vertices().len() == 4;
    Ok(RegionSection {
        dim: d,
        kind: kind_name(kind),
        degenerate,
        vertex_gap: Some(vertex_gap),
        identity_extreme: Some(identity_extreme),
        web_inside_ppt: Some(web_inside_ppt),
        pass,
    })
}

fn ppt2_section(d: usize, kind: InvolutionKind) -> Result<Ppt2Section, String> {
    let report = ppt2_verify(d, kind).map_err(err_str)?;
    let named_ok = report.named.iter().all(|n| n.delta <= NAMED_TOL);
    let boundary_ok = report.boundary_value.map(|b| b > 0.0).unwrap_or(true);
    let pass = report.verdict && named_ok && boundary_ok;
    Ok(Ppt2Section {
        payload: ppt2_payload(&report),
        pass,
    })
}

/// Work items for the PPT² section: the fixed certification range plus any
/// explicitly requested dimensions that support extreme PPT channels.
fn ppt2_items(cfg: &RunConfig) -> Vec<(usize, InvolutionKind)> {
    let mut items = Vec::new();
    for &kind in &cfg.kinds {
        let (lo, step) = match kind {
            InvolutionKind::So => (5usize, 1usize),
            InvolutionKind::Sp => (6, 2),
        };
        let mut dims: Vec<usize> = (lo..=16).step_by(step).collect();
        for &d in &cfg.dims {
            let valid = match kind {
                InvolutionKind::So => d >= 5,
                InvolutionKind::Sp => d >= 6 && d % 2 == 0,
            };
            if valid && !dims.contains(&d) {
                dims.push(d);
            }
        }
        dims.sort_unstable();
        items.extend(dims.into_iter().map(|d| (d, kind)));
    }
    items
}

pub fn cmd_check_all(cfg: &RunConfig) -> Result<bool, String> {
    if let Some(&too_big) = cfg.dims.iter().find(|&&d| d > cfg.max_dim) {
        return Err(format!(
            "dimension {too_big} exceeds the brute-force cap {} for check-all; \
             set CARTANCHAN_MAX_DIM to raise it",
            cfg.max_dim
        ));
    }
    let items = cfg.work_items();

    let t = Instant::now();
    let basis_audit = collect(run_items(&items, |d, k| basis_section(d, k, cfg)))?;
    let basis_pass = basis_audit.iter().all(|s| s.pass);
    println!("section basis:    {:>7.2?} ({})", t.elapsed(), verdict(basis_pass));

    let t = Instant::now();
    let lie = collect(run_items(&items, |d, k| lie_section(d, k, cfg)))?;
    let lie_pass = lie.iter().all(|s| s.pass);
    println!("section lie:      {:>7.2?} ({})", t.elapsed(), verdict(lie_pass));

    let t = Instant::now();
    let channels = collect(run_items(&items, |d, k| channel_section(d, k, cfg)))?;
    let channels_pass = channels.iter().all(|s| s.pass);
    println!("section channels: {:>7.2?} ({})", t.elapsed(), verdict(channels_pass));

    let t = Instant::now();
    let regions = collect(run_items(&items, |d, k| region_section(d, k)))?;
    let regions_pass = regions.iter().all(|s| s.pass);
    println!("section regions:  {:>7.2?} ({})", t.elapsed(), verdict(regions_pass));

    let t = Instant::now();
    let ppt2 = collect(run_items(&ppt2_items(cfg), |d, k| ppt2_section(d, k)))?;
    let ppt2_pass = ppt2.iter().all(|s| s.pass);
    println!("section ppt2:     {:>7.2?} ({})", t.elapsed(), verdict(ppt2_pass));

    let overall = basis_pass && lie_pass && channels_pass && regions_pass && ppt2_pass;
    let report = CertificationReport {
        schema: SCHEMA,
        config: ConfigEcho {
            dims: cfg.dims.clone(),
            kinds: cfg.kinds.iter().map(|&k| kind_name(k)).collect(),
            basis: match cfg.basis {
                BasisChoice::GellMann => "gellmann",
                BasisChoice::Pauli => "pauli",
                BasisChoice::Auto => "auto",
            },
            tol: cfg.tol,
            ctol: cfg.ctol,
            seed: cfg.seed,
        },
        basis_audit,
        lie,
        channels,
        regions,
        ppt2,
        overall,
    };
    let path = write_json(&cfg.out, "certification.json", &report)?;
    println!(
        "wrote {} (overall {})",
        path.display(),
        verdict(overall)
    );
    Ok(overall)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}
