//! Rug maps: bilipschitz embeddings of the parabolic plane into the group,
//! carrying a declared bilipschitz constant. The built-in family lifts
//! graph profiles horizontally, so each ruled line t = const maps onto a
//! horizontal curve; straight profiles land exactly on horizontal lines.

use heis_core::{HPoint, ParaBall, ParaPoint};
use std::fmt;
use std::sync::Arc;

/// A map from the parabolic plane into the group together with its declared
/// bilipschitz constant. Evaluation is pure and safe to call concurrently.
#[derive(Clone)]
pub struct RugMap {
    name: String,
    m: f64,
    f: Arc<dyn Fn(ParaPoint) -> HPoint + Send + Sync>,
}

impl fmt::Debug for RugMap {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("RugMap")
            .field("name", &self.name)
            .field("m", &self.m)
            .finish()
    }
}

impl RugMap {
    pub fn new(
        name: impl Into<String>,
        m: f64,
        f: impl Fn(ParaPoint) -> HPoint + Send + Sync + 'static,
    ) -> Self {
        RugMap { name: name.into(), m: m.max(1.0), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Declared bilipschitz constant.
    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn eval(&self, w: ParaPoint) -> HPoint {
        (self.f)(w)
    }

    pub fn f1(&self, w: ParaPoint) -> f64 {
        self.eval(w).x
    }

    pub fn f2(&self, w: ParaPoint) -> f64 {
        self.eval(w).y
    }

    pub fn f3(&self, w: ParaPoint) -> f64 {
        self.eval(w).t
    }

    /// The flat embedding `(y, t) -> (0, y, t)`.
    pub fn identity() -> Self {
        RugMap::new("identity", 1.0, |w| w.embed())
    }

    /// Parametrizes the vertical plane with graph coefficient `a`, offset
    /// `b`, height `c`: `(y, t) -> (a y + b, y, b y / 2 + c + t)`. Exactly
    /// sqrt(1 + a^2)-bilipschitz: the group difference of two images is
    /// `(a dy, dy, dt)`.
    pub fn plane(a: f64, b: f64, c: f64) -> Self {
        let m = (1.0 + a * a).sqrt();
        RugMap::new(format!("plane({a},{b},{c})"), m, move |w| {
            HPoint::new(a * w.y + b, w.y, 0.5 * b * w.y + c + w.t)
        })
    }

    /// Horizontal lift of the profile `x = lambda sin(freq y)`; each ruled
    /// line maps onto a horizontal curve that is not straight.
    pub fn sine_perturbed(lambda: f64, freq: f64) -> Self {
        let m = sine_lip(lambda, freq);
        let name = format!("sine({lambda},{freq})");
        RugMap::new(name, m, move |w| sine_lift(lambda, freq, 0.0, 0.0, 0.0, w))
    }

    /// Plane rug with a sine ripple in the profile; the lift corrections of
    /// the two parts add.
    pub fn composite(a: f64, b: f64, c: f64, lambda: f64, freq: f64) -> Self {
        let m = (1.0 + a * a).sqrt() * sine_lip(lambda, freq);
        let name = format!("composite({a},{b},{c},{lambda},{freq})");
        RugMap::new(name, m, move |w| sine_lift(lambda, freq, a, b, c, w))
    }

    /// Post-compose with a left translation; an isometry, so the constant
    /// carries over.
    pub fn translated(self, g: HPoint) -> Self {
        let name = format!("translated({},{},{})+{}", g.x, g.y, g.t, self.name);
        let inner = self.f;
        RugMap { name, m: self.m, f: Arc::new(move |w| g.mul(inner(w))) }
    }

    /// Post-compose with a rotation about the t-axis; also an isometry.
    pub fn rotated(self, theta: f64) -> Self {
        let name = format!("rotated({theta})+{}", self.name);
        let inner = self.f;
        RugMap {
            name,
            m: self.m,
            f: Arc::new(move |w| heis_core::point::rotate(theta, inner(w))),
        }
    }
}

/// Declared constant for sine profiles; validated by the sampling audit.
fn sine_lip(lambda: f64, freq: f64) -> f64 {
    let l = lambda.abs();
    let w = freq.abs();
    1.0 + l * w + 2.0 * (l * (1.0 + w * w)).sqrt()
}

/// Lift of the profile `x = a y + b + lambda sin(freq y)` with height c.
/// The t-correction makes every ruled line horizontal: it integrates
/// `(phi - y phi') / 2` for the combined profile.
fn sine_lift(lambda: f64, freq: f64, a: f64, b: f64, c: f64, w: ParaPoint) -> HPoint {
    if freq == 0.0 {
        // profile degenerates to the plane itself
        return HPoint::new(a * w.y + b, w.y, 0.5 * b * w.y + c + w.t);
    }
    let (s, co) = (freq * w.y).sin_cos();
    let x = a * w.y + b + lambda * s;
    let lift = 0.5 * b * w.y + lambda * ((1.0 - co) / freq - 0.5 * w.y * s);
    HPoint::new(x, w.y, lift + c + w.t)
}

/// Worst violation of the declared two-sided bound over a deterministic
/// sample of pairs in the ball: positive means the declaration is broken.
pub fn bilipschitz_defect(f: &RugMap, ball: ParaBall, grid: usize) -> f64 {
    let (y0, y1) = ball.y_interval();
    let (t0, t1) = ball.t_interval();
    let mut pts = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            let y = y0 + (y1 - y0) * (i as f64 + 0.5) / grid as f64;
            let t = t0 + (t1 - t0) * (j as f64 + 0.5) / grid as f64;
            pts.push(ParaPoint::new(y, t));
        }
    }
    let mut worst = f64::NEG_INFINITY;
    for (i, &w1) in pts.iter().enumerate() {
        for &w2 in pts.iter().skip(i + 1) {
            let d = w1.dist(w2);
            if d == 0.0 {
                continue;
            }
            let dd = f.eval(w1).dist(f.eval(w2));
            let ratio = dd / d;
            worst = worst.max(ratio - f.m()).max(1.0 / f.m() - ratio);
        }
    }
    worst
}
