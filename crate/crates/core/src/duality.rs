//! Correspondence between hyperspherical caps on the embedded unit sphere and
//! balls (pole direction) or axis-aligned spheroids (general direction) in
//! the original space.
//!
//! A cap `C(p, b)` is the set of unit vectors `y` with `<y, p> > b` (open) or
//! `>= b` (closed). As long as the inversion pole `-v` lies strictly outside
//! the closed cap, i.e. `b + <p, v> > 0`, its preimage is bounded:
//!
//! * for `v = (0, ..., 0, 1)` a ball, see [`cap_to_ball`] and [`ball_to_cap`];
//! * for any other `v` a spheroid whose single short axis is parallel to
//!   `v_(1..d)`, see [`cap_to_spheroid`].

use crate::error::{Error, Result};
use crate::geometry::{
    check_scale, unembed_point, unembed_simplified_point, EmbeddingParams, DIRECTION_RENORM_TOL,
};
use crate::linalg::{dist, dot, norm, norm_sq, sq_dist};

/// Below this `||v_(1..d)||` the spheroid short axis is treated as undefined.
pub const AXIS_CUTOFF: f64 = 1e-9;

/// A hyperspherical cap on the unit sphere of `R^(d+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cap {
    p: Vec<f64>,
    b: f64,
    closed: bool,
}

impl Cap {
    /// Open cap `{ y : <y, p> > b }`.
    ///
    /// `p` is renormalized when its norm is within `1e-9` of 1; `b` must lie
    /// in `(-1, 1)`.
    pub fn new(p: Vec<f64>, b: f64) -> Result<Self> {
        if p.is_empty() || p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCapDirection("empty or non-finite".into()));
        }
        let n = norm(&p);
        if (n - 1.0).abs() > DIRECTION_RENORM_TOL {
            return Err(Error::InvalidCapDirection(format!("norm {n} is not 1")));
        }
        if !(b > -1.0 && b < 1.0) {
            return Err(Error::DegenerateCap { b });
        }
        Ok(Self {
            p: p.iter().map(|x| x / n).collect(),
            b,
            closed: false,
        })
    }

    pub fn closed(mut self) -> Self {
        self.closed = true;
        self
    }

    pub fn with_closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Dimension of the ambient (embedded) space.
    pub fn ambient_dim(&self) -> usize {
        self.p.len()
    }

    /// `b + <p, v>`; positive iff `-v` is outside the closed cap.
    pub fn pole_margin(&self, v: &[f64]) -> f64 {
        self.b + dot(&self.p, v)
    }

    fn pole_margin_simplified(&self) -> f64 {
        self.b + self.p[self.p.len() - 1]
    }
}

/// A ball `{ x : ||x - c|| < r }` (or `<=` when closed).
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    c: Vec<f64>,
    r: f64,
    closed: bool,
}

impl Ball {
    pub fn new(c: Vec<f64>, r: f64) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidBall("empty center".into()));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBall("non-finite center".into()));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidBall(format!("radius must be positive, got {r}")));
        }
        Ok(Self { c, r, closed: false })
    }

    pub fn closed(mut self) -> Self {
        self.closed = true;
        self
    }

    pub fn with_closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }
}

/// Ellipsoid with one short semi-axis `r_short` along `axis` and a common
/// semi-axis `r_long` in every orthogonal direction.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisAlignedSpheroid {
    pub center: Vec<f64>,
    pub axis: Vec<f64>,
    pub r_short: f64,
    pub r_long: f64,
}

impl AxisAlignedSpheroid {
    /// `((x-c).a)^2 / r_short^2 + (||x-c||^2 - ((x-c).a)^2) / r_long^2`;
    /// equal to 1 exactly on the surface.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let diff: Vec<f64> = x.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        let along = dot(&diff, &self.axis);
        let along_sq = along * along;
        let ortho_sq = (norm_sq(&diff) - along_sq).max(0.0);
        along_sq / (self.r_short * self.r_short) + ortho_sq / (self.r_long * self.r_long)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.quadratic_form(x) < 1.0
    }
}

/// Intermediate scalars of the two conversions.
///
/// `alpha = (1 - b^2) / (2 (b + <p, v>))` shifts the cap direction towards
/// `-v` to find the ball center; `beta = 2s / sqrt((|c|^2 + r^2 + s^2)^2 -
/// 4 |c|^2 r^2)` scales the ball center into the first `d` coordinates of
/// the cap direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityScalars {
    pub alpha: f64,
    pub beta: f64,
}

impl DualityScalars {
    /// Scalars for a cap under the pole direction; `beta` is evaluated on the
    /// image ball.
    pub fn for_cap(cap: &Cap, s: f64) -> Result<Self> {
        let ball = cap_to_ball(cap, s)?;
        Ok(Self {
            alpha: alpha(cap.b, cap.pole_margin_simplified()),
            beta: beta(&ball, s),
        })
    }
}

fn alpha(b: f64, margin: f64) -> f64 {
    (1.0 - b * b) / (2.0 * margin)
}

fn beta(ball: &Ball, s: f64) -> f64 {
    let c2 = norm_sq(&ball.c);
    let r2 = ball.r * ball.r;
    let s2 = s * s;
    let sum = c2 + r2 + s2;
    2.0 * s / (sum * sum - 4.0 * c2 * r2).sqrt()
}

/// Unit vector `(p - alpha v) / ||p - alpha v||` whose unembedding is the
/// center of the image ball or spheroid.
fn shifted_center_direction(p: &[f64], v: &[f64], alpha: f64) -> Vec<f64> {
    let w: Vec<f64> = p.iter().zip(v).map(|(pi, vi)| pi - alpha * vi).collect();
    let n = norm(&w);
    w.into_iter().map(|x| x / n).collect()
}

/// Center of the image ball from the closed form that bypasses the
/// unembedding: `s p_(1..d) / (sqrt(1 - p_last^2 + (p_last - alpha)^2) +
/// p_last - alpha)`.
pub fn ball_center_closed_form(cap: &Cap, s: f64) -> Result<Vec<f64>> {
    check_scale(s)?;
    let margin = cap.pole_margin_simplified();
    if margin <= 0.0 {
        return Err(Error::CapContainsSouthPole { margin });
    }
    let d = cap.p.len() - 1;
    let pl = cap.p[d];
    let a = alpha(cap.b, margin);
    let denom = (1.0 - pl * pl + (pl - a) * (pl - a)).sqrt() + pl - a;
    Ok(cap.p[..d].iter().map(|x| s * x / denom).collect())
}

/// Image of a cap under the pole-direction unembedding with scale `s`.
///
/// The center is the unembedding of the shifted cap direction and the
/// radius is `s sqrt(2 alpha / (b + p_last))`. The closed-form center of
/// [`ball_center_closed_form`] is checked against it in debug builds.
pub fn cap_to_ball(cap: &Cap, s: f64) -> Result<Ball> {
    check_scale(s)?;
    if cap.p.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: cap.p.len(),
        });
    }
    let margin = cap.pole_margin_simplified();
    if margin <= 0.0 {
        return Err(Error::CapContainsSouthPole { margin });
    }
    let d = cap.p.len() - 1;
    let a = alpha(cap.b, margin);
    let mut pole = vec![0.0; d + 1];
    pole[d] = 1.0;
    let dir = shifted_center_direction(&cap.p, &pole, a);
    let c = unembed_simplified_point(&dir, s)?;
    let r = s * (2.0 * a / margin).sqrt();

    #[cfg(debug_assertions)]
    if let Ok(alt) = ball_center_closed_form(cap, s) {
        let scale = norm(&c).max(r).max(1.0);
        debug_assert!(
            dist(&alt, &c) <= 1e-6 * scale,
            "center forms disagree: {c:?} vs {alt:?}"
        );
    }

    Ball::new(c, r).map(|b| b.with_closed(cap.closed))
}

/// Cap whose pole-direction unembedding is `ball`.
///
/// `p = (beta c, +-sqrt(1 - beta^2 |c|^2))` and
/// `b = (s sqrt(s^2 + beta^2 |c|^2 r^2) - r^2 p_last) / (r^2 + s^2)`.
/// The last coordinate of `p` is negative exactly when
/// `|c|^2 > s^2 + r^2`, i.e. when the ball's embedded image sits on the
/// lower hemisphere side.
pub fn ball_to_cap(ball: &Ball, s: f64) -> Result<Cap> {
    check_scale(s)?;
    let c2 = norm_sq(&ball.c);
    let r2 = ball.r * ball.r;
    let s2 = s * s;
    let be = beta(ball, s);
    let mut last = (1.0 - be * be * c2).max(0.0).sqrt();
    if s2 + r2 - c2 < 0.0 {
        last = -last;
    }
    let b = (s * (s2 + be * be * c2 * r2).sqrt() - r2 * last) / (r2 + s2);
    let mut p: Vec<f64> = ball.c.iter().map(|x| be * x).collect();
    p.push(last);
    Cap::new(p, b).map(|cap| cap.with_closed(ball.closed))
}

/// Image of a cap under the general-direction unembedding.
///
/// Fails with [`Error::AxisUndefined`] when `v` is (numerically) the pole,
/// where the image is a ball and [`cap_to_ball`] applies.
pub fn cap_to_spheroid(cap: &Cap, params: &EmbeddingParams) -> Result<AxisAlignedSpheroid> {
    let v = params.v();
    if cap.p.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            got: cap.p.len(),
        });
    }
    let margin = cap.pole_margin(v);
    if margin <= 0.0 {
        return Err(Error::CapContainsSouthPole { margin });
    }
    let d = params.data_dim();
    let axis_norm = norm(&v[..d]);
    if axis_norm < AXIS_CUTOFF {
        return Err(Error::AxisUndefined);
    }
    let a = alpha(cap.b, margin);
    let dir = shifted_center_direction(&cap.p, v, a);
    let center = unembed_point(&dir, params)?;
    let r_long = params.s() * ((1.0 - cap.b * cap.b) / (margin * margin)).sqrt();
    let r_short = r_long * v[d].abs();
    let axis = v[..d].iter().map(|x| x / axis_norm).collect();
    Ok(AxisAlignedSpheroid {
        center,
        axis,
        r_short,
        r_long,
    })
}

/// `<y, p> > b` for open caps, `>= b` for closed ones.
pub fn cap_contains(cap: &Cap, y: &[f64]) -> bool {
    let t = dot(y, &cap.p);
    if cap.closed {
        t >= cap.b
    } else {
        t > cap.b
    }
}

/// `||x - c|| < r` for open balls, `<= r` for closed ones.
pub fn ball_contains(ball: &Ball, x: &[f64]) -> bool {
    let t = sq_dist(x, &ball.c).sqrt();
    if ball.closed {
        t <= ball.r
    } else {
        t < ball.r
    }
}
