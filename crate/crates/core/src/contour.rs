//! Deformable integration contours in the complex plane.
//!
//! A [`Contour`] is a polyline through ordered complex nodes, running from
//! `-U` to `+U` in its arc-length parameter. Because the polyline itself is
//! the integration path, quadrature along it is an honest contour integral
//! and Cauchy deformation invariance holds up to quadrature error.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tilt margin (5 degrees) kept between a contour tangent and the
/// pi/4 wedge boundary.
pub const DEFAULT_TILT_MARGIN: f64 = std::f64::consts::PI / 36.0;

/// Default bound on `|Im q|` at the ends of an asymptotically real contour.
pub const DEFAULT_ENDPOINT_IM_BOUND: f64 = 1e-6;

/// Relative magnitude an integrand may keep at the contour ends.
pub const DEFAULT_DECAY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    nodes: Vec<Complex64>,
    params: Vec<f64>,
    asymptotic_real: bool,
}

impl Contour {
    /// Builds a polyline contour through `nodes`. The parameter `u` is the
    /// arc length, centred so that it runs over `[-U, U]`.
    pub fn from_nodes(nodes: Vec<Complex64>, asymptotic_real: bool) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidContour(format!(
                "need at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidContour("non-finite node".into()));
        }
        let mut params = Vec::with_capacity(nodes.len());
        let mut s = 0.0;
        params.push(0.0);
        for w in nodes.windows(2) {
            let len = (w[1] - w[0]).norm();
            if len == 0.0 {
                return Err(Error::InvalidContour("repeated node".into()));
            }
            s += len;
            params.push(s);
        }
        let half = s / 2.0;
        params.iter_mut().for_each(|u| *u -= half);
        Ok(Self {
            nodes,
            params,
            asymptotic_real,
        })
    }

    /// Straight line `offset + u e^{i angle}` for `u` in `[-U, U]`, with no
    /// restriction on the angle beyond keeping `Re q` increasing. Use this
    /// for Fresnel-rotated momentum contours; delta-function contours should
    /// come from [`make_tilted_line`].
    pub fn line(angle: f64, offset: Complex64, truncation: f64, n: usize) -> Result<Self> {
        if !(truncation > 0.0) {
            return Err(Error::InvalidContour(format!(
                "truncation must be positive, got {truncation}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidContour(format!("need n >= 2 nodes, got {n}")));
        }
        if angle.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidContour(format!(
                "angle {angle} does not run from -inf to +inf"
            )));
        }
        let dir = Complex64::from_polar(1.0, angle);
        let h = 2.0 * truncation / (n - 1) as f64;
        let params: Vec<f64> = (0..n).map(|k| -truncation + h * k as f64).collect();
        let nodes = params.iter().map(|&u| offset + dir * u).collect();
        Ok(Self {
            nodes,
            params,
            asymptotic_real: false,
        })
    }

    /// Real segment `[-U, U]` with `n` nodes.
    pub fn real_line(truncation: f64, n: usize) -> Result<Self> {
        let mut c = Self::line(0.0, Complex64::new(0.0, 0.0), truncation, n)?;
        c.asymptotic_real = true;
        Ok(c)
    }

    /// Smooth bump `u + i h sech^2(u / w)`, real at both ends.
    pub fn bump(truncation: f64, n: usize, height: f64, width: f64) -> Result<Self> {
        if n < 2 || !(truncation > 0.0) || !(width > 0.0) {
            return Err(Error::InvalidContour("bad bump parameters".into()));
        }
        let h = 2.0 * truncation / (n - 1) as f64;
        let nodes = (0..n)
            .map(|k| {
                let u = -truncation + h * k as f64;
                let sech = 1.0 / (u / width).cosh();
                Complex64::new(u, height * sech * sech)
            })
            .collect();
        Self::from_nodes(nodes, true)
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// Arc-length parameter of each node.
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Half the arc length, i.e. the truncation `U` of the parameter range.
    pub fn truncation(&self) -> f64 {
        *self.params.last().unwrap()
    }

    pub fn asymptotic_real(&self) -> bool {
        self.asymptotic_real
    }

    pub fn first(&self) -> Complex64 {
        self.nodes[0]
    }

    pub fn last(&self) -> Complex64 {
        *self.nodes.last().unwrap()
    }

    /// Iterator over `(start, end)` of each straight segment.
    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    /// Point at arc-length parameter `u`, clamped to the contour.
    pub fn point_at(&self, u: f64) -> Complex64 {
        let u = u.clamp(self.params[0], self.truncation());
        let k = match self
            .params
            .binary_search_by(|p| p.partial_cmp(&u).unwrap())
        {
            Ok(k) => return self.nodes[k],
            Err(k) => k,
        };
        let (u0, u1) = (self.params[k - 1], self.params[k]);
        let t = (u - u0) / (u1 - u0);
        self.nodes[k - 1] + (self.nodes[k] - self.nodes[k - 1]) * t
    }

    /// Node spacing of the coarsest segment.
    pub fn max_spacing(&self) -> f64 {
        self.segments().map(|(a, b)| (b - a).norm()).fold(0.0, f64::max)
    }

    /// Same geometric path with every segment that comes within `radius` of
    /// `center` split into pieces no longer than `max_len`.
    pub fn refine_near(&self, center: Complex64, radius: f64, max_len: f64) -> Contour {
        let mut nodes = vec![self.nodes[0]];
        for (a, b) in self.segments() {
            let len = (b - a).norm();
            if len > max_len && segment_distance(a, b, center) <= radius {
                let pieces = (len / max_len).ceil() as usize;
                for j in 1..pieces {
                    nodes.push(a + (b - a) * (j as f64 / pieces as f64));
                }
            }
            nodes.push(b);
        }
        Contour::from_nodes(nodes, self.asymptotic_real).expect("refinement keeps nodes distinct")
    }

    /// Shifted copy `q -> q + shift` (keeps the flag).
    pub fn translated(&self, shift: Complex64) -> Contour {
        Contour {
            nodes: self.nodes.iter().map(|z| z + shift).collect(),
            params: self.params.clone(),
            asymptotic_real: self.asymptotic_real && shift.im == 0.0,
        }
    }
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let d = b - a;
    let t = ((p - a) * d.conj()).re / d.norm_sqr();
    let t = t.clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

/// Straight contour `offset + u e^{i angle}` inside the delta-function wedge.
pub fn make_tilted_line(
    angle: f64,
    offset: Complex64,
    truncation: f64,
    n: usize,
) -> Result<Contour> {
    if !(angle.abs() < FRAC_PI_4) {
        return Err(Error::TiltOutOfWedge { angle });
    }
    let mut c = Contour::line(angle, offset, truncation, n)?;
    c.asymptotic_real = angle == 0.0 && offset.im == 0.0;
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub margin: f64,
    pub endpoint_im_bound: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            margin: DEFAULT_TILT_MARGIN,
            endpoint_im_bound: DEFAULT_ENDPOINT_IM_BOUND,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub worst_tilt: f64,
    pub tilt_ok: bool,
    pub monotone_ok: bool,
    pub endpoints_ok: bool,
}

/// Checks the tilt, monotonicity and endpoint invariants with the default
/// endpoint bound.
pub fn validate(c: &Contour, margin: f64) -> ValidationReport {
    validate_with(
        c,
        &ValidationOptions {
            margin,
            ..Default::default()
        },
    )
}

pub fn validate_with(c: &Contour, opts: &ValidationOptions) -> ValidationReport {
    let mut worst_tilt: f64 = 0.0;
    let mut monotone_ok = true;
    for (a, b) in c.segments() {
        let d = b - a;
        worst_tilt = worst_tilt.max(d.arg().abs());
        if d.re <= 0.0 {
            monotone_ok = false;
        }
    }
    let tilt_ok = worst_tilt <= FRAC_PI_4 - opts.margin;
    // Truncated straight lines are stand-ins for contours whose tails bend
    // back to the axis; only flagged contours carry the endpoint check.
    let endpoints_ok = !c.asymptotic_real
        || (c.first().im.abs() <= opts.endpoint_im_bound
            && c.last().im.abs() <= opts.endpoint_im_bound);
    ValidationReport {
        ok: tilt_ok && monotone_ok && endpoints_ok,
        worst_tilt,
        tilt_ok,
        monotone_ok,
        endpoints_ok,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Trapezoid,
    GaussLegendre,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Trapezoid => "trapezoid",
            Scheme::GaussLegendre => "gauss-legendre",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trapezoid" => Ok(Scheme::Trapezoid),
            "gauss-legendre" | "gauss" => Ok(Scheme::GaussLegendre),
            other => Err(Error::InvalidRule(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub scheme: Scheme,
    pub points_per_segment: usize,
    pub truncation: f64,
    pub decay_tol: f64,
}

impl QuadratureRule {
    pub fn new(scheme: Scheme, points_per_segment: usize, truncation: f64) -> Result<Self> {
        if points_per_segment < 2 {
            return Err(Error::InvalidRule(format!(
                "points_per_segment must be >= 2, got {points_per_segment}"
            )));
        }
        if !(truncation > 0.0) {
            return Err(Error::InvalidRule(format!(
                "truncation must be positive, got {truncation}"
            )));
        }
        Ok(Self {
            scheme,
            points_per_segment,
            truncation,
            decay_tol: DEFAULT_DECAY_TOL,
        })
    }

    pub fn gauss(points_per_segment: usize) -> Self {
        Self::new(Scheme::GaussLegendre, points_per_segment, 10.0).unwrap()
    }

    pub fn trapezoid(points_per_segment: usize) -> Self {
        Self::new(Scheme::Trapezoid, points_per_segment, 10.0).unwrap()
    }

    /// Disables the endpoint-decay check (for integrands whose tails are
    /// known to be handled by the caller).
    pub fn without_decay_check(mut self) -> Self {
        self.decay_tol = f64::INFINITY;
        self
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::gauss(8)
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Contour integral of `f` along `c`.
///
/// Fails with [`Error::NonDecay`] when `|f|` at either end exceeds
/// `rule.decay_tol` times the largest sampled magnitude.
pub fn quad<F>(f: F, c: &Contour, rule: &QuadratureRule) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut peak: f64 = 0.0;
    for (q, w) in quad_points(c, rule) {
        let v = f(q);
        peak = peak.max(v.norm());
        sum += v * w;
    }
    check_decay(f(c.first()).norm().max(f(c.last()).norm()), peak, rule.decay_tol)?;
    Ok(sum)
}

/// Quadrature nodes and complex weights (including `dq`) for `rule` along
/// the polygon through the contour nodes.
pub fn quad_points(c: &Contour, rule: &QuadratureRule) -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::new();
    match rule.scheme {
        Scheme::GaussLegendre => {
            let (x, w) = gauss_legendre(rule.points_per_segment);
            for (a, b) in c.segments() {
                let half = (b - a) * 0.5;
                let mid = (a + b) * 0.5;
                for (xi, wi) in x.iter().zip(&w) {
                    out.push((mid + half * *xi, half * *wi));
                }
            }
        }
        Scheme::Trapezoid => {
            let k = rule.points_per_segment - 1;
            for (a, b) in c.segments() {
                let h = (b - a) / k as f64;
                for j in 0..=k {
                    let wt = if j == 0 || j == k { 0.5 } else { 1.0 };
                    out.push((a + h * j as f64, h * wt));
                }
            }
        }
    }
    out
}

/// Trapezoid integral of samples given at the contour nodes.
pub fn quad_samples(values: &[Complex64], c: &Contour, decay_tol: f64) -> Result<Complex64> {
    if values.len() != c.len() {
        return Err(Error::Dimension(format!(
            "{} samples for a contour with {} nodes",
            values.len(),
            c.len()
        )));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (w, v) in c.nodes.windows(2).zip(values.windows(2)) {
        sum += (v[0] + v[1]) * (w[1] - w[0]) * 0.5;
    }
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let end = values[0].norm().max(values[values.len() - 1].norm());
    check_decay(end, peak, decay_tol)?;
    Ok(sum)
}

pub(crate) fn check_decay(endpoint: f64, peak: f64, tol: f64) -> Result<()> {
    if !endpoint.is_finite() || endpoint > tol * peak.max(f64::MIN_POSITIVE) {
        if endpoint == 0.0 {
            return Ok(());
        }
        return Err(Error::NonDecay { endpoint, peak });
    }
    Ok(())
}

/// On-disk form of a contour: node pairs plus the quadrature settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContourJson {
    pub nodes: Vec<[f64; 2]>,
    #[serde(rename = "U")]
    pub truncation: f64,
    pub scheme: Scheme,
    #[serde(default = "default_pps")]
    pub points_per_segment: usize,
    #[serde(default)]
    pub asymptotic_real: bool,
}

fn default_pps() -> usize {
    8
}

impl ContourJson {
    pub fn from_parts(c: &Contour, rule: &QuadratureRule) -> Self {
        Self {
            nodes: c.nodes.iter().map(|z| [z.re, z.im]).collect(),
            truncation: c.truncation(),
            scheme: rule.scheme,
            points_per_segment: rule.points_per_segment,
            asymptotic_real: c.asymptotic_real,
        }
    }

    pub fn into_parts(self) -> Result<(Contour, QuadratureRule)> {
        let nodes = self
            .nodes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let c = Contour::from_nodes(nodes, self.asymptotic_real)?;
        let rule = QuadratureRule::new(self.scheme, self.points_per_segment, self.truncation)?;
        Ok((c, rule))
    }

    pub fn to_string(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tilted_line_identity_case_is_real_segment() {
        let line = make_tilted_line(0.0, c(0.0, 0.0), 10.0, 101).unwrap();
        assert_eq!(line.len(), 101);
        assert_eq!(line.first(), c(-10.0, 0.0));
        assert_eq!(line.last(), c(10.0, 0.0));
        assert!(line.nodes().iter().all(|z| z.im == 0.0));
        let r = validate(&line, DEFAULT_TILT_MARGIN);
        assert!(r.ok);
        assert_eq!(r.worst_tilt, 0.0);
    }

    #[test]
    fn thirty_degree_line_passes_with_margin() {
        let line = make_tilted_line(FRAC_PI_6, c(0.0, 0.0), 10.0, 101).unwrap();
        let r = validate(&line, 0.1);
        assert!(r.ok, "{r:?}");
        assert!((r.worst_tilt - FRAC_PI_6).abs() < 1e-12);
    }

    #[test]
    fn steep_line_is_rejected() {
        let err = make_tilted_line(FRAC_PI_3, c(0.0, 0.0), 10.0, 101).unwrap_err();
        assert!(matches!(err, Error::TiltOutOfWedge { .. }));
        assert!(make_tilted_line(FRAC_PI_4, c(0.0, 0.0), 10.0, 101).is_err());
    }

    #[test]
    fn zigzag_with_fifty_degree_leg_fails() {
        let t50 = 50f64.to_radians();
        let nodes = vec![
            c(-10.0, 0.0),
            c(-1.0, 0.0),
            c(-1.0 + t50.cos(), t50.sin()),
            c(10.0, 0.0),
        ];
        let z = Contour::from_nodes(nodes, true).unwrap();
        let r = validate(&z, DEFAULT_TILT_MARGIN);
        assert!(!r.ok);
        assert!(!r.tilt_ok);
        assert!((r.worst_tilt - t50).abs() < 1e-12);
    }

    #[test]
    fn backward_segment_breaks_monotonicity() {
        let z = Contour::from_nodes(vec![c(-1.0, 0.0), c(1.0, 0.0), c(0.5, 0.1), c(2.0, 0.0)], true)
            .unwrap();
        assert!(!validate(&z, 0.0).monotone_ok);
    }

    #[test]
    fn endpoint_bound_applies_to_asymptotic_contours() {
        let z = Contour::from_nodes(vec![c(-5.0, 0.1), c(5.0, 0.1)], true).unwrap();
        assert!(!validate(&z, 0.0).endpoints_ok);
        let b = Contour::bump(10.0, 401, 0.5, 1.0).unwrap();
        let r = validate(&b, DEFAULT_TILT_MARGIN);
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 2..12 {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn gaussian_on_real_line() {
        let line = Contour::real_line(10.0, 101).unwrap();
        for rule in [QuadratureRule::gauss(8), QuadratureRule::trapezoid(2)] {
            let v = quad(|q| (-q * q).exp(), &line, &rule).unwrap();
            assert!((v - c(PI.sqrt(), 0.0)).norm() < 1e-10, "{rule:?}: {v}");
        }
    }

    #[test]
    fn gaussian_on_twenty_degree_line_matches_real_line() {
        let real = quad(
            |q| (-q * q).exp(),
            &Contour::real_line(10.0, 2001).unwrap(),
            &QuadratureRule::trapezoid(2),
        )
        .unwrap();
        let tilted = make_tilted_line(20f64.to_radians(), c(0.0, 0.0), 10.0, 101).unwrap();
        let v = quad(|q| (-q * q).exp(), &tilted, &QuadratureRule::default()).unwrap();
        assert!((v - real).norm() < 1e-8);
    }

    #[test]
    fn fresnel_on_rotated_line() {
        // Oracle: dense trapezoid along the same rotated line.
        let rotated = Contour::line(-FRAC_PI_4, c(0.0, 0.0), 12.0, 121).unwrap();
        let dense = Contour::line(-FRAC_PI_4, c(0.0, 0.0), 12.0, 24001).unwrap();
        let f = |q: Complex64| (-c(0.0, 0.5) * q * q).exp();
        let oracle = quad(f, &dense, &QuadratureRule::trapezoid(2)).unwrap();
        let v = quad(f, &rotated, &QuadratureRule::default()).unwrap();
        assert!((v - oracle).norm() < 1e-8);
        let closed = Complex64::from_polar((2.0 * PI).sqrt(), -FRAC_PI_4);
        assert!((v - closed).norm() < 1e-8);
    }

    #[test]
    fn non_decaying_integrand_is_reported() {
        let line = Contour::real_line(5.0, 11).unwrap();
        let err = quad(|_| c(1.0, 0.0), &line, &QuadratureRule::default()).unwrap_err();
        assert!(matches!(err, Error::NonDecay { .. }));
    }

    #[test]
    fn refinement_keeps_the_path() {
        let line = make_tilted_line(0.2, c(0.0, 0.0), 5.0, 11).unwrap();
        let r = line.refine_near(c(0.0, 0.0), 0.5, 0.01);
        assert!(r.len() > line.len());
        assert!((r.truncation() - line.truncation()).abs() < 1e-12);
        assert_eq!(r.first(), line.first());
        assert_eq!(r.last(), line.last());
        let f = |q: Complex64| (-q * q).exp() * q.cos();
        let a = quad(f, &line, &QuadratureRule::gauss(12)).unwrap();
        let b = quad(f, &r, &QuadratureRule::gauss(12)).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn json_round_trip() {
        let line = make_tilted_line(0.3, c(0.1, 0.0), 6.0, 7).unwrap();
        let rule = QuadratureRule::trapezoid(4);
        let text = ContourJson::from_parts(&line, &rule).to_string().unwrap();
        assert!(text.contains("\"U\""));
        assert!(text.contains("\"trapezoid\""));
        let (back, rule2) = ContourJson::parse(&text).unwrap().into_parts().unwrap();
        assert_eq!(rule2.scheme, Scheme::Trapezoid);
        for (a, b) in back.nodes().iter().zip(line.nodes()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rule_validation() {
        assert!(QuadratureRule::new(Scheme::Trapezoid, 1, 1.0).is_err());
        assert!(QuadratureRule::new(Scheme::Trapezoid, 2, 0.0).is_err());
    }

    #[test]
    fn point_at_interpolates() {
        let line = Contour::real_line(2.0, 5).unwrap();
        assert_eq!(line.point_at(0.5), c(0.5, 0.0));
        assert_eq!(line.point_at(-9.0), c(-2.0, 0.0));
    }
}
