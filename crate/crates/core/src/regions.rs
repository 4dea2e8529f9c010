//! CP and PPT regions in the (α, β) plane as half-plane intersections, the
//! closed-form extreme PPT channels, the entanglement-breaking (WEB)
//! trapezoid, and the composition check behind the PPT-squared statement.

use crate::basis::{expected_subspace_dims, InvolutionKind};
use crate::channels::{compose, CartanChannel};
use crate::exec;
use crate::{Error, Result};

/// Feasibility and deduplication tolerance for the vertex computations; the
/// generating half-planes are exact rationals, far from any degeneracy at
/// the dimensions in play.
const GEOM_TOL: f64 = 1e-10;
/// Bounding box used to detect unbounded intersections.
const BOX: f64 = 1e6;

/// The constraint c0 + cA·α + cB·β ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlane {
    pub c0: f64,
    pub c_alpha: f64,
    pub c_beta: f64,
    pub label: String,
}

impl HalfPlane {
    pub fn new(c0: f64, c_alpha: f64, c_beta: f64, label: impl Into<String>) -> Self {
        assert!(
            c_alpha != 0.0 || c_beta != 0.0,
            "degenerate half-plane: both direction coefficients vanish"
        );
        Self {
            c0,
            c_alpha,
            c_beta,
            label: label.into(),
        }
    }

    pub fn value(&self, p: (f64, f64)) -> f64 {
        self.c0 + self.c_alpha * p.0 + self.c_beta * p.1
    }

    /// The α ↦ −α reflection of the constraint.
    pub fn mirrored(&self) -> Self {
        Self {
            c0: self.c0,
            c_alpha: -self.c_alpha,
            c_beta: self.c_beta,
            label: format!("{}_mirror", self.label),
        }
    }
}

/// The three complete-positivity constraints π_I ≥ 0 with exact rational
/// coefficients. An empty B sector drops every β coefficient, since β never
/// enters such a channel.
pub fn cp_halfplanes(d: usize, kind: InvolutionKind) -> Result<Vec<HalfPlane>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: d });
    }
    if kind == InvolutionKind::Sp && d % 2 != 0 {
        return Err(Error::OddSymplecticDimension(d));
    }
    let (a, b) = expected_subspace_dims(d, kind);
    let df = d as f64;
    let h = 0.5 * df;
    let beta_on = if b == 0 { 0.0 } else { 1.0 };
    let (pi_a, pi_ac, label) = match kind {
        InvolutionKind::So => ((h, -(h + 1.0)), (-h, h - 1.0), "so"),
        InvolutionKind::Sp => ((-h, h - 1.0), (h, -(h + 1.0)), "sp"),
    };
    Ok(vec![
        HalfPlane::new(1.0, a as f64, b as f64 * beta_on, "pi_1"),
        HalfPlane::new(1.0, pi_a.0, pi_a.1 * beta_on, format!("pi_{label}")),
        HalfPlane::new(1.0, pi_ac.0, pi_ac.1 * beta_on, format!("pi_{label}_c")),
    ])
}

/// The six PPT constraints: the CP constraints plus their α-mirrored copies.
pub fn ppt_halfplanes(d: usize, kind: InvolutionKind) -> Result<Vec<HalfPlane>> {
    let cp = cp_halfplanes(d, kind)?;
    let mirrored: Vec<HalfPlane> = cp.iter().map(HalfPlane::mirrored).collect();
    Ok(cp.into_iter().chain(mirrored).collect())
}

/// A bounded convex polygon with its generating half-planes.
#[derive(Debug, Clone)]
pub struct Region2D {
    vertices: Vec<(f64, f64)>,
    halfplanes: Vec<HalfPlane>,
    area: f64,
}

impl Region2D {
    /// Counterclockwise vertices.
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    pub fn area(&self) -> f64 {
        self.area
    }
}

/// Intersect half-planes into a convex polygon: pairwise line intersections,
/// feasibility filtering, deduplication, counterclockwise ordering around
/// the centroid, shoelace area. Unbounded and empty intersections are errors.
pub fn intersect_halfplanes(hps: &[HalfPlane]) -> Result<Region2D> {
    if hps.len() < 3 {
        return Err(Error::TooFewHalfPlanes {
            min: 3,
            got: hps.len(),
        });
    }
    let mut fenced: Vec<HalfPlane> = hps.to_vec();
    fenced.push(HalfPlane::new(BOX, 1.0, 0.0, "box_left"));
    fenced.push(HalfPlane::new(BOX, -1.0, 0.0, "box_right"));
    fenced.push(HalfPlane::new(BOX, 0.0, 1.0, "box_bottom"));
    fenced.push(HalfPlane::new(BOX, 0.0, -1.0, "box_top"));

    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for (i, hi) in fenced.iter().enumerate() {
        for hj in fenced.iter().skip(i + 1) {
            let det = hi.c_alpha * hj.c_beta - hj.c_alpha * hi.c_beta;
            if det.abs() < 1e-12 {
                continue;
            }
            // The +0.0 normalizes any negative zero out of the output.
            let x = (-hi.c0 * hj.c_beta + hj.c0 * hi.c_beta) / det + 0.0;
            let y = (-hi.c_alpha * hj.c0 + hj.c_alpha * hi.c0) / det + 0.0;
            if fenced.iter().all(|h| h.value((x, y)) >= -GEOM_TOL) {
                candidates.push((x, y));
            }
        }
    }

    let mut vertices: Vec<(f64, f64)> = Vec::new();
    for p in candidates {
        if !vertices
            .iter()
            .any(|q| (p.0 - q.0).abs() <= GEOM_TOL && (p.1 - q.1).abs() <= GEOM_TOL)
        {
            vertices.push(p);
        }
    }
    if vertices.is_empty() {
        return Err(Error::EmptyRegion);
    }
    if vertices
        .iter()
        .any(|&(x, y)| x.abs() >= BOX - 1.0 || y.abs() >= BOX - 1.0)
    {
        return Err(Error::UnboundedRegion);
    }
    if vertices.len() < 3 {
        return Err(Error::EmptyRegion);
    }

    let n = vertices.len() as f64;
    let (cx, cy) = vertices
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x, sy + y));
    let (cx, cy) = (cx / n, cy / n);
    vertices.sort_by(|&(ax, ay), &(bx, by)| {
        let ta = (ay - cy).atan2(ax - cx);
        let tb = (by - cy).atan2(bx - cx);
        ta.partial_cmp(&tb).expect("finite angles")
    });

    let mut area = 0.0;
    for (i, &(x0, y0)) in vertices.iter().enumerate() {
        let (x1, y1) = vertices[(i + 1) % vertices.len()];
        area += x0 * y1 - x1 * y0;
    }
    area *= 0.5;

    Ok(Region2D {
        vertices,
        halfplanes: hps.to_vec(),
        area,
    })
}

/// Closed-form extreme PPT channels (v¹, v², h¹, h²).
pub fn extreme_ppt(d: usize, kind: InvolutionKind) -> Result<[(f64, f64); 4]> {
    let df = d as f64;
    match kind {
        InvolutionKind::So => {
            if d < 3 {
                return Err(Error::DimensionTooSmall { min: 3, got: d });
            }
            let h_beta = (df - 2.0) / ((df + 2.0) * (df - 1.0));
            Ok([
                (0.0, 2.0 / (df + 2.0)),
                (0.0, -2.0 / ((df - 1.0) * (df + 2.0))),
                (1.0 / (df - 1.0), h_beta),
                (-1.0 / (df - 1.0), h_beta),
            ])
        }
        InvolutionKind::Sp => {
            if d % 2 != 0 {
                return Err(Error::OddSymplecticDimension(d));
            }
            if d < 4 {
                return Err(Error::DimensionTooSmall { min: 4, got: d });
            }
            Ok([
                (0.0, 2.0 / (df + 2.0)),
                (0.0, -2.0 / ((df - 2.0) * (df + 1.0))),
                (1.0 / (df + 1.0), 1.0 / (df + 1.0)),
                (-1.0 / (df + 1.0), 1.0 / (df + 1.0)),
            ])
        }
    }
}

pub const EXTREME_LABELS: [&str; 4] = ["v1", "v2", "h1", "h2"];

/// The Werner entanglement-breaking trapezoid: the convex hull of the PPT
/// depolarizing segment α = β ∈ [−1/(D²−1), 1/(D+1)] and its α-mirror.
pub fn web_region(d: usize) -> Result<Region2D> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: d });
    }
    let df = d as f64;
    let top = 1.0 / (df + 1.0);
    let bottom = 1.0 / (df * df - 1.0);
    let hps = vec![
        HalfPlane::new(top, 0.0, -1.0, "web_top"),
        HalfPlane::new(bottom, 0.0, 1.0, "web_bottom"),
        HalfPlane::new(2.0, -df * (df + 1.0), (df + 1.0) * (df - 2.0), "web_right"),
        HalfPlane::new(2.0, df * (df + 1.0), (df + 1.0) * (df - 2.0), "web_left"),
    ];
    intersect_halfplanes(&hps)
}

#[derive(Debug, Clone, Copy)]
pub struct Containment {
    pub inside: bool,
    /// Signed minimum over the generating half-plane values.
    pub margin: f64,
}

/// Membership against every generating half-plane of the region.
pub fn contains(region: &Region2D, p: (f64, f64), tol: f64) -> Containment {
    let margin = region
        .halfplanes()
        .iter()
        .map(|h| h.value(p))
        .fold(f64::INFINITY, f64::min);
    Containment {
        inside: margin >= -tol,
        margin,
    }
}

/// One composed pair of extreme PPT channels.
#[derive(Debug, Clone)]
pub struct CompositionCheck {
    /// e.g. "v1∘h2".
    pub label: String,
    pub alpha: f64,
    pub beta: f64,
    pub in_web: bool,
    pub margin: f64,
}

/// A named closed-form composition value cross-checked against the composed
/// pair it abbreviates.
#[derive(Debug, Clone)]
pub struct NamedComposition {
    pub name: &'static str,
    pub closed: (f64, f64),
    pub composed: (f64, f64),
    /// max(|Δα|, |Δβ|) between the closed form and the composed pair.
    pub delta: f64,
}

/// Outcome of the extreme-pair composition check for one (dimension, kind).
#[derive(Debug, Clone)]
pub struct Ppt2Report {
    pub dim: usize,
    pub kind: InvolutionKind,
    pub compositions: Vec<CompositionCheck>,
    pub named: Vec<NamedComposition>,
    /// (D+1)(D−2)β − D(D+1)α + 2 at h¹∘h¹; must be positive for so, D ≥ 5.
    pub boundary_value: Option<f64>,
    /// True when the dimension is inside the range the composition argument
    /// is meant to cover (so: D ≥ 5, sp: D ≥ 6); smaller dimensions rest on
    /// external results and are reported informationally.
    pub within_argument_range: bool,
    /// Conjunction of `in_web` over all compositions.
    pub verdict: bool,
}

/// Compose every unordered pair of extreme PPT channels and test membership
/// in the WEB trapezoid; also evaluate the five named closed-form
/// composition values and cross-check each against its composed pair.
pub fn ppt2_verify(d: usize, kind: InvolutionKind) -> Result<Ppt2Report> {
    let points = extreme_ppt(d, kind)?;
    let web = web_region(d)?;
    let channels: Vec<CartanChannel> = points
        .iter()
        .map(|&(alpha, beta)| CartanChannel::new(d, kind, alpha, beta))
        .collect::<Result<_>>()?;

    let mut compositions = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            let composed = compose(&channels[i], &channels[j])?;
            // +0.0 clears the negative zeros that products with ±0 produce.
            let p = (composed.alpha() + 0.0, composed.beta() + 0.0);
            let c = contains(&web, p, 1e-12);
            compositions.push(CompositionCheck {
                label: format!("{}∘{}", EXTREME_LABELS[i], EXTREME_LABELS[j]),
                alpha: p.0,
                beta: p.1,
                in_web: c.inside,
                margin: c.margin,
            });
        }
    }

    let df = d as f64;
    let composed_pair = |i: usize, j: usize| -> Result<(f64, f64)> {
        let c = compose(&channels[i], &channels[j])?;
        Ok((c.alpha(), c.beta()))
    };
    let beta_1v = 4.0 / ((df + 2.0) * (df + 2.0));
    let named_closed: [(&'static str, (f64, f64), (usize, usize)); 5] = match kind {
        InvolutionKind::So => [
            ("beta_1v", (0.0, beta_1v), (0, 0)),
            (
                "beta_2v",
                (0.0, -4.0 / ((df + 2.0) * (df + 2.0) * (df - 1.0))),
                (0, 1),
            ),
            (
                "beta_1vh",
                (0.0, beta_1v * (0.5 * df - 1.0) / (df - 1.0)),
                (0, 2),
            ),
            (
                "beta_2vh",
                (
                    0.0,
                    -(0.5 * df - 1.0)
                        / ((0.5 * df + 1.0) * (0.5 * df + 1.0) * (df - 1.0) * (df - 1.0)),
                ),
                (1, 2),
            ),
            (
                "alpha_beta_1h",
                (
                    1.0 / ((df - 1.0) * (df - 1.0)),
                    (df - 2.0) * (df - 2.0) / ((df + 2.0) * (df + 2.0) * (df - 1.0) * (df - 1.0)),
                ),
                (2, 2),
            ),
        ],
        InvolutionKind::Sp => [
            ("beta_1v", (0.0, beta_1v), (0, 0)),
            (
                "beta_2v",
                (0.0, -4.0 / ((df * df - 4.0) * (df + 1.0))),
                (0, 1),
            ),
            ("beta_1vh", (0.0, 2.0 / ((df + 2.0) * (df + 1.0))), (0, 2)),
            (
                // The composed value carries (D−2), not the (D−1) printed in
                // the source inequality chain.
                "beta_2vh",
                (0.0, -2.0 / ((df - 2.0) * (df + 1.0) * (df + 1.0))),
                (1, 2),
            ),
            (
                "alpha_beta_1h",
                (
                    1.0 / ((df + 1.0) * (df + 1.0)),
                    1.0 / ((df + 1.0) * (df + 1.0)),
                ),
                (2, 2),
            ),
        ],
    };
    let mut named = Vec::with_capacity(5);
    for (name, closed, (i, j)) in named_closed {
        let composed = composed_pair(i, j)?;
        let delta = (closed.0 - composed.0)
            .abs()
            .max((closed.1 - composed.1).abs());
        named.push(NamedComposition {
            name,
            closed,
            composed,
            delta,
        });
    }

    let boundary_value = match kind {
        InvolutionKind::So => {
            let (alpha, beta) = composed_pair(2, 2)?;
            Some((df + 1.0) * (df - 2.0) * beta - df * (df + 1.0) * alpha + 2.0)
        }
        InvolutionKind::Sp => None,
    };

    let within_argument_range = match kind {
        InvolutionKind::So => d >= 5,
        InvolutionKind::Sp => d >= 6,
    };
    let verdict = compositions.iter().all(|c| c.in_web);
    Ok(Ppt2Report {
        dim: d,
        kind,
        compositions,
        named,
        boundary_value,
        within_argument_range,
        verdict,
    })
}

/// CP and PPT regions for one dimension.
#[derive(Debug, Clone)]
pub struct RegionSweepEntry {
    pub dim: usize,
    pub cp: Region2D,
    pub ppt: Region2D,
}

/// Compute CP/PPT regions for a list of dimensions; per-dimension failures
/// are collected, not fatal.
pub fn region_sweep(
    dims: &[usize],
    kind: InvolutionKind,
) -> Vec<(usize, Result<RegionSweepEntry>)> {
    exec::map_indices(dims.len(), |i| {
        let d = dims[i];
        let entry = (|| {
            let cp = intersect_halfplanes(&cp_halfplanes(d, kind)?)?;
            let ppt = intersect_halfplanes(&ppt_halfplanes(d, kind)?)?;
            Ok(RegionSweepEntry { dim: d, cp, ppt })
        })();
        (d, entry)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square() -> Vec<HalfPlane> {
        vec![
            HalfPlane::new(1.0, 1.0, 0.0, "left"),
            HalfPlane::new(1.0, -1.0, 0.0, "right"),
            HalfPlane::new(1.0, 0.0, 1.0, "bottom"),
            HalfPlane::new(1.0, 0.0, -1.0, "top"),
        ]
    }

    fn matches_vertex_set(region: &Region2D, expected: &[(f64, f64)], tol: f64) {
        assert_eq!(
            region.vertices().len(),
            expected.len(),
            "vertex count: got {:?}, want {:?}",
            region.vertices(),
            expected
        );
        for &(ex, ey) in expected {
            assert!(
                region
                    .vertices()
                    .iter()
                    .any(|&(x, y)| (x - ex).abs() <= tol && (y - ey).abs() <= tol),
                "missing vertex ({ex}, {ey}) in {:?}",
                region.vertices()
            );
        }
    }

    #[test]
    fn cp_halfplanes_d4_so_coefficients() {
        let hps = cp_halfplanes(4, InvolutionKind::So).unwrap();
        let got: Vec<(f64, f64, f64)> = hps.iter().map(|h| (h.c0, h.c_alpha, h.c_beta)).collect();
        assert_eq!(
            got,
            vec![(1.0, 6.0, 9.0), (1.0, 2.0, -3.0), (1.0, -2.0, 1.0)]
        );
    }

    #[test]
    fn cp_halfplanes_d4_sp_coefficients() {
        let hps = cp_halfplanes(4, InvolutionKind::Sp).unwrap();
        let got: Vec<(f64, f64, f64)> = hps.iter().map(|h| (h.c0, h.c_alpha, h.c_beta)).collect();
        assert_eq!(
            got,
            vec![(1.0, 10.0, 5.0), (1.0, -2.0, 1.0), (1.0, 2.0, -3.0)]
        );
    }

    #[test]
    fn cp_halfplanes_d2_sp_drop_beta() {
        let hps = cp_halfplanes(2, InvolutionKind::Sp).unwrap();
        let got: Vec<(f64, f64, f64)> = hps.iter().map(|h| (h.c0, h.c_alpha, h.c_beta)).collect();
        assert_eq!(
            got,
            vec![(1.0, 3.0, 0.0), (1.0, -1.0, 0.0), (1.0, 1.0, 0.0)]
        );
    }

    #[test]
    fn ppt_halfplanes_are_mirror_invariant() {
        for (d, kind) in [(5usize, InvolutionKind::So), (8, InvolutionKind::Sp)] {
            let hps = ppt_halfplanes(d, kind).unwrap();
            assert_eq!(hps.len(), 6);
            for h in &hps {
                assert!(
                    hps.iter().any(|g| (g.c0 - h.c0).abs() < 1e-15
                        && (g.c_alpha + h.c_alpha).abs() < 1e-15
                        && (g.c_beta - h.c_beta).abs() < 1e-15),
                    "missing mirror of {}",
                    h.label
                );
            }
        }
    }

    #[test]
    fn intersect_unit_square() {
        let region = intersect_halfplanes(&unit_square()).unwrap();
        assert_relative_eq!(region.area(), 4.0, epsilon = 1e-12);
        matches_vertex_set(
            &region,
            &[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)],
            1e-12,
        );
    }

    #[test]
    fn intersect_reports_unbounded_and_empty() {
        let open = vec![
            HalfPlane::new(1.0, 1.0, 0.0, "left"),
            HalfPlane::new(1.0, -1.0, 0.0, "right"),
            HalfPlane::new(1.0, 0.0, 1.0, "bottom"),
        ];
        assert!(matches!(
            intersect_halfplanes(&open),
            Err(Error::UnboundedRegion)
        ));
        let empty = vec![
            HalfPlane::new(-1.0, 1.0, 0.0, "x>=1"),
            HalfPlane::new(-1.0, -1.0, 0.0, "x<=-1"),
            HalfPlane::new(1.0, 0.0, 1.0, "bottom"),
            HalfPlane::new(1.0, 0.0, -1.0, "top"),
        ];
        assert!(matches!(
            intersect_halfplanes(&empty),
            Err(Error::EmptyRegion)
        ));
        assert!(matches!(
            intersect_halfplanes(&unit_square()[..2]),
            Err(Error::TooFewHalfPlanes { .. })
        ));
    }

    #[test]
    fn cp_region_d5_so_has_identity_vertex() {
        let region = intersect_halfplanes(&cp_halfplanes(5, InvolutionKind::So).unwrap()).unwrap();
        assert!(region
            .vertices()
            .iter()
            .any(|&(x, y)| (x - 1.0).abs() < 1e-10 && (y - 1.0).abs() < 1e-10));
    }

    #[test]
    fn ppt_region_d5_so_vertices() {
        let region =
            intersect_halfplanes(&ppt_halfplanes(5, InvolutionKind::So).unwrap()).unwrap();
        matches_vertex_set(
            &region,
            &[
                (0.0, 2.0 / 7.0),
                (0.0, -1.0 / 14.0),
                (0.25, 3.0 / 28.0),
                (-0.25, 3.0 / 28.0),
            ],
            1e-10,
        );
    }

    #[test]
    fn extreme_ppt_closed_forms() {
        let so = extreme_ppt(5, InvolutionKind::So).unwrap();
        assert_eq!(so[0], (0.0, 2.0 / 7.0));
        assert_relative_eq!(so[1].1, -1.0 / 14.0, epsilon = 1e-15);
        assert_eq!(so[2].0, 0.25);
        assert_relative_eq!(so[2].1, 3.0 / 28.0, epsilon = 1e-15);

        let sp = extreme_ppt(4, InvolutionKind::Sp).unwrap();
        assert_relative_eq!(sp[0].1, 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(sp[1].1, -0.2, epsilon = 1e-15);
        assert_eq!(sp[2], (0.2, 0.2));
        assert_eq!(sp[3], (-0.2, 0.2));

        assert!(extreme_ppt(2, InvolutionKind::So).is_err());
        assert!(extreme_ppt(2, InvolutionKind::Sp).is_err());
        assert!(extreme_ppt(5, InvolutionKind::Sp).is_err());
    }

    #[test]
    fn extreme_ppt_matches_halfplane_vertices() {
        for d in [3usize, 4, 5, 8, 16, 33, 64] {
            let region =
                intersect_halfplanes(&ppt_halfplanes(d, InvolutionKind::So).unwrap()).unwrap();
            matches_vertex_set(&region, &extreme_ppt(d, InvolutionKind::So).unwrap(), 1e-10);
        }
        for d in [4usize, 6, 8, 16, 64] {
            let region =
                intersect_halfplanes(&ppt_halfplanes(d, InvolutionKind::Sp).unwrap()).unwrap();
            matches_vertex_set(&region, &extreme_ppt(d, InvolutionKind::Sp).unwrap(), 1e-10);
        }
    }

    #[test]
    fn web_region_d5_vertices_and_boundary() {
        let web = web_region(5).unwrap();
        matches_vertex_set(
            &web,
            &[
                (1.0 / 6.0, 1.0 / 6.0),
                (-1.0 / 6.0, 1.0 / 6.0),
                (-1.0 / 24.0, -1.0 / 24.0),
                (1.0 / 24.0, -1.0 / 24.0),
            ],
            1e-10,
        );
        // The right edge lies on (D+1)(D−2)β − D(D+1)α + 2 = 0.
        let right = web
            .halfplanes()
            .iter()
            .find(|h| h.label == "web_right")
            .unwrap();
        assert!(right.value((1.0 / 6.0, 1.0 / 6.0)).abs() < 1e-12);
        assert!(right.value((1.0 / 24.0, -1.0 / 24.0)).abs() < 1e-12);
    }

    #[test]
    fn web_region_is_mirror_symmetric() {
        for d in [2usize, 5, 16] {
            let web = web_region(d).unwrap();
            for &(x, y) in web.vertices() {
                assert!(
                    web.vertices()
                        .iter()
                        .any(|&(mx, my)| (mx + x).abs() < 1e-12 && (my - y).abs() < 1e-12),
                    "mirror of ({x}, {y}) missing at D={d}"
                );
            }
        }
    }

    #[test]
    fn contains_reports_margins() {
        let square = intersect_halfplanes(&unit_square()).unwrap();
        let c = contains(&square, (0.0, 0.0), 1e-12);
        assert!(c.inside);
        assert_relative_eq!(c.margin, 1.0, epsilon = 1e-15);

        let web = web_region(5).unwrap();
        let inside = contains(&web, (0.0, 3.0 / 98.0), 1e-12);
        assert!(inside.inside && inside.margin > 0.0);
        let outside = contains(&web, (0.0, 1.0 / 6.0 + 0.01), 1e-12);
        assert!(!outside.inside);
    }

    #[test]
    fn ppt2_d5_so_verdict_and_named_values() {
        let report = ppt2_verify(5, InvolutionKind::So).unwrap();
        assert!(report.verdict);
        assert!(report.within_argument_range);
        assert_eq!(report.compositions.len(), 10);
        let b1v = report.named.iter().find(|n| n.name == "beta_1v").unwrap();
        assert_relative_eq!(b1v.closed.1, 4.0 / 49.0, epsilon = 1e-15);
        assert!(b1v.closed.1 < 1.0 / 6.0);
        for n in &report.named {
            assert!(n.delta <= 1e-12, "{} delta {}", n.name, n.delta);
        }
        // h¹∘h¹ = (3/28)² on the β side: (1/16, 9/784), above the boundary
        // line (D+1)(D−2)β − D(D+1)α + 2 = 0.
        let h1h1 = report
            .compositions
            .iter()
            .find(|c| c.label == "h1∘h1")
            .unwrap();
        assert_relative_eq!(h1h1.alpha, 1.0 / 16.0, epsilon = 1e-15);
        assert_relative_eq!(h1h1.beta, 9.0 / 784.0, epsilon = 1e-15);
        assert!(report.boundary_value.unwrap() > 0.0);
    }

    #[test]
    fn ppt2_d8_sp_h1h1() {
        let report = ppt2_verify(8, InvolutionKind::Sp).unwrap();
        assert!(report.verdict);
        let named = report
            .named
            .iter()
            .find(|n| n.name == "alpha_beta_1h")
            .unwrap();
        assert_relative_eq!(named.closed.0, 1.0 / 81.0, epsilon = 1e-15);
        assert_relative_eq!(named.closed.1, 1.0 / 81.0, epsilon = 1e-15);
        // 1/81 < 1/63 = 1/(D²−1), comfortably inside.
        assert!(1.0 / 81.0 < 1.0 / 63.0);
        for n in &report.named {
            assert!(n.delta <= 1e-12, "{} delta {}", n.name, n.delta);
        }
    }

    #[test]
    fn ppt2_small_dims_are_informational() {
        // The composition argument targets D ≥ 5 (so); D = 4 fails WEB
        // membership and is covered by external results instead.
        let report = ppt2_verify(4, InvolutionKind::So).unwrap();
        assert!(!report.within_argument_range);
        let report = ppt2_verify(4, InvolutionKind::Sp).unwrap();
        assert!(!report.within_argument_range);
        assert!(report.verdict, "sp D=4 compositions do lie in WEB");
    }

    #[test]
    fn region_sweep_areas_shrink() {
        let entries = region_sweep(&[4, 8, 16], InvolutionKind::So);
        let areas: Vec<f64> = entries
            .iter()
            .map(|(_, e)| e.as_ref().unwrap().ppt.area())
            .collect();
        assert!(areas[0] > areas[1] && areas[1] > areas[2], "{areas:?}");
        for (_, e) in &entries {
            let cp = &e.as_ref().unwrap().cp;
            assert!(contains(cp, (1.0, 1.0), 1e-10).inside);
        }
        // so and sp vertex sets differ at D = 4.
        let so = extreme_ppt(4, InvolutionKind::So).unwrap();
        let sp = extreme_ppt(4, InvolutionKind::Sp).unwrap();
        assert_ne!(so, sp);
        // Odd sp dims are collected as errors, not panics.
        let entries = region_sweep(&[4, 5], InvolutionKind::Sp);
        assert!(entries[0].1.is_ok());
        assert!(entries[1].1.is_err());
    }
}
