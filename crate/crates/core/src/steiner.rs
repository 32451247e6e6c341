//! Steiner symmetrization of convex regions above the axis, written as
//! {f(y) < x < g(y), 0 < y < ȳ} with f convex and g concave.
//!
//! Heights are sampled as y = ȳ sin²(πu/2) on a uniform u-grid over a window
//! [u_δ, 1 − u_δ]. The map turns the square-root behaviour at the axis and at the
//! apex into smooth functions of u, and the graph integrand of ℱ, which blows up
//! like (ȳ − y)^{-1/2} at the apex, becomes bounded in u.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvegeom::{enclosed_area, CurveFrame, DiscreteCurve, Vec2};
use crate::error::{Error, Result};
use crate::quad::{gauss_legendre, linspace, simpson};
use crate::real::{lit, to_f64, Real};
use crate::roots::brent;
use crate::spline::CubicSpline;

/// Default half-width of the clipped u-window; the clipped heights are ȳ·O(10⁻¹³).
pub const DEFAULT_U_DELTA: f64 = 2.0e-7;

/// Left and right boundary graphs sampled with their first two y-derivatives.
#[derive(Debug, Clone)]
pub struct GraphPair<T> {
    pub u: Vec<T>,
    pub y: Vec<T>,
    pub dy_du: Vec<T>,
    /// [f, f', f''] per height.
    pub f: Vec<[T; 3]>,
    /// [g, g', g''] per height.
    pub g: Vec<[T; 3]>,
    pub ybar: T,
    /// f(0), g(0) and the common apex abscissa f(ȳ) = g(ȳ).
    pub f0: T,
    pub g0: T,
    pub apex_x: T,
}

/// Window heights: (u, y, ȳ − y, dy/du) with y = ȳ sin²(πu/2).
fn height_grid<T: Real>(ybar: T, n: usize, u_delta: T) -> Vec<(T, T, T, T)> {
    let half_pi = T::FRAC_PI_2();
    linspace(u_delta, T::one() - u_delta, n)
        .into_iter()
        .map(|u| {
            let (sn, cs) = (half_pi * u).sin_cos();
            (u, ybar * sn * sn, ybar * cs * cs, ybar * T::PI() * sn * cs)
        })
        .collect()
}

impl<T: Real> GraphPair<T> {
    /// Builds a pair from closures `(y, ȳ − y) -> [x, x', x'']`.
    pub fn from_fns<F, G>(ybar: T, n: usize, u_delta: T, left: F, right: G) -> Self
    where
        F: Fn(T, T) -> [T; 3],
        G: Fn(T, T) -> [T; 3],
    {
        let grid = height_grid(ybar, n, u_delta);
        let mut pair = GraphPair {
            u: Vec::with_capacity(n),
            y: Vec::with_capacity(n),
            dy_du: Vec::with_capacity(n),
            f: Vec::with_capacity(n),
            g: Vec::with_capacity(n),
            ybar,
            f0: left(T::zero(), ybar)[0],
            g0: right(T::zero(), ybar)[0],
            apex_x: left(ybar, T::zero())[0],
        };
        for (u, y, gap, dy) in grid {
            pair.u.push(u);
            pair.y.push(y);
            pair.dy_du.push(dy);
            pair.f.push(left(y, gap));
            pair.g.push(right(y, gap));
        }
        pair
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// max |f + g| over the grid, zero for a vertically symmetric pair.
    pub fn asymmetry(&self) -> T {
        self.f.iter().zip(&self.g).fold(T::zero(), |m, (a, b)| m.max((a[0] + b[0]).abs()))
    }

    /// Checks f < g and the signs of f'' and g''; returns the first offending index.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.len() {
            if !(self.f[i][0] < self.g[i][0]) {
                return Err(Error::InvalidInput(format!("f >= g at height index {i}")));
            }
            if !(self.f[i][2] > T::zero()) {
                return Err(Error::NotConvex { index: i, value: to_f64(self.f[i][2]) });
            }
            if !(self.g[i][2] < T::zero()) {
                return Err(Error::NotConvex { index: i, value: to_f64(self.g[i][2]) });
            }
        }
        Ok(())
    }
}

const NEAR: f64 = 1e-3;

/// Boundary point of the curve at parameter t: position, velocity, acceleration.
type Sample<T> = [Vec2<T>; 3];

fn graph_derivatives<T: Real>(p: Sample<T>) -> [T; 3] {
    let [pos, v, a] = p;
    let d1 = v[0] / v[1];
    let d2 = (a[0] * v[1] - v[0] * a[1]) / (v[1] * v[1] * v[1]);
    [pos[0], d1, d2]
}

/// Splits an admissible curve at its apex and samples both branches as graphs over y.
pub fn to_graph_pair<T: Real>(curve: &DiscreteCurve<T>, frame: &CurveFrame<T>, n: usize, u_delta: T) -> Result<GraphPair<T>> {
    for (i, &h) in frame.curvature.iter().enumerate() {
        if !(h > T::zero()) {
            return Err(Error::NotConvex { index: i, value: to_f64(h) });
        }
    }
    let vy: Vec<T> = frame.velocity.iter().map(|v| v[1]).collect();
    let vmax = vy.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let floor = lit::<T>(1e-8) * vmax;
    let signs: Vec<bool> = vy.iter().filter(|v| v.abs() > floor).map(|&v| v > T::zero()).collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    if changes != 1 || !signs[0] {
        return Err(Error::MultipleApexes { count: changes });
    }

    let s = curve.s();
    let pts = curve.pts();
    let eval: Box<dyn Fn(T) -> Sample<T> + Sync> = match curve.source() {
        Some(src) => {
            let src = src.clone();
            Box::new(move |t| {
                let e = src.eval(t);
                [e[0], e[1], e[2]]
            })
        }
        None => {
            let xs: Vec<T> = pts.iter().map(|p| p[0]).collect();
            let ys: Vec<T> = pts.iter().map(|p| p[1]).collect();
            let sx = CubicSpline::new(s, &xs)?;
            let sy = CubicSpline::new(s, &ys)?;
            Box::new(move |t| {
                let (a, b) = (sx.eval(t), sy.eval(t));
                [[a[0], b[0]], [a[1], b[1]], [a[2], b[2]]]
            })
        }
    };

    let k = (0..pts.len()).max_by(|&i, &j| pts[i][1].partial_cmp(&pts[j][1]).unwrap()).unwrap();
    let (lo, hi) = (s[k.saturating_sub(1)], s[(k + 1).min(s.len() - 1)]);
    let dy = |t: T| eval(t)[1][1];
    let s_apex = if dy(lo) > T::zero() && dy(hi) < T::zero() {
        brent(dy, lo, hi, T::epsilon() * s[s.len() - 1], 200)?
    } else {
        s[k]
    };
    let apex = eval(s_apex)[0];
    let ybar = apex[1];
    let (s0, s1) = (s[0], s[s.len() - 1]);
    let tol = lit::<T>(4.0) * T::epsilon() * s1;

    let grid = height_grid(ybar, n, u_delta);
    let mut pair = GraphPair {
        u: Vec::with_capacity(n),
        y: Vec::with_capacity(n),
        dy_du: Vec::with_capacity(n),
        f: Vec::with_capacity(n),
        g: Vec::with_capacity(n),
        ybar,
        f0: eval(s1)[0][0],
        g0: eval(s0)[0][0],
        apex_x: apex[0],
    };
    // Heights within NEAR·ȳ of the axis or of the apex are measured from there by
    // integrating ẏ, which keeps their relative accuracy where y(s) itself cancels.
    let (gx, gw) = gauss_legendre::<T>(16);
    let rise = |a: T, b: T| {
        let (m, r) = ((a + b) / lit(2.0), (b - a) / lit(2.0));
        gx.iter().zip(&gw).fold(T::zero(), |acc, (&x, &w)| acc + w * eval(m + r * x)[1][1]) * r
    };
    let near = lit::<T>(NEAR) * ybar;
    for (u, y, gap, d) in grid {
        let (right, left) = if y <= near {
            (
                brent(|t| rise(s0, t) - y, s0, s_apex, tol, 200)?,
                brent(|t| rise(s1, t) - y, s_apex, s1, tol, 200)?,
            )
        } else if gap <= near {
            (
                brent(|t| rise(t, s_apex) - gap, s0, s_apex, tol, 200)?,
                brent(|t| rise(t, s_apex) - gap, s_apex, s1, tol, 200)?,
            )
        } else {
            (
                brent(|t| eval(t)[0][1] - y, s0, s_apex, tol, 200)?,
                brent(|t| eval(t)[0][1] - y, s_apex, s1, tol, 200)?,
            )
        };
        pair.u.push(u);
        pair.y.push(y);
        pair.dy_du.push(d);
        pair.g.push(graph_derivatives(eval(right)));
        pair.f.push(graph_derivatives(eval(left)));
    }
    Ok(pair)
}

/// The symmetrized pair (−h, h) with h = (g − f)/2.
pub fn symmetrize<T: Real>(pair: &GraphPair<T>) -> GraphPair<T> {
    let two = lit::<T>(2.0);
    let h: Vec<[T; 3]> = pair
        .f
        .iter()
        .zip(&pair.g)
        .map(|(f, g)| [(g[0] - f[0]) / two, (g[1] - f[1]) / two, (g[2] - f[2]) / two])
        .collect();
    GraphPair {
        u: pair.u.clone(),
        y: pair.y.clone(),
        dy_du: pair.dy_du.clone(),
        f: h.iter().map(|v| [-v[0], -v[1], -v[2]]).collect(),
        g: h,
        ybar: pair.ybar,
        f0: -(pair.g0 - pair.f0) / two,
        g0: (pair.g0 - pair.f0) / two,
        apex_x: T::zero(),
    }
}

/// Φ(z, w) = (1 + z²)²/w.
#[inline]
fn phi<T: Real>(z: T, w: T) -> T {
    let a = T::one() + z * z;
    a * a / w
}

/// Curvature of a graph x = X(y) given X' and |X''|.
#[inline]
fn graph_curvature<T: Real>(d1: T, d2_abs: T) -> T {
    d2_abs / (T::one() + d1 * d1).powf(lit(1.5))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SteinerComparison {
    pub a_before: f64,
    pub a_after: f64,
    pub f_before: f64,
    pub f_after: f64,
    pub area_drift_rel: f64,
    /// (F_before − F_after)/F_before.
    pub f_decrease_rel: f64,
    pub asymmetry: f64,
    /// Share of ℱ_before carried by the end strips outside the height window.
    pub clip_estimate: f64,
    /// max over heights of the symmetrized integrand minus the mean of the two branch integrands,
    /// relative to the latter; nonpositive by convexity of Φ.
    pub convexity_witness: f64,
    /// min over heights of H̃ / min(H_left, H_right) − 1; nonnegative.
    pub curvature_bound: f64,
}

/// Integrand of ℱ in u for a pair, before (branch sum) and after symmetrization.
fn integrands<T: Real>(pair: &GraphPair<T>, floor: T) -> Result<(Vec<T>, Vec<T>)> {
    let n = pair.len();
    let mut before = Vec::with_capacity(n);
    let mut after = Vec::with_capacity(n);
    let (two, four) = (lit::<T>(2.0), lit::<T>(4.0));
    for i in 0..n {
        let (f, g) = (pair.f[i], pair.g[i]);
        if !(f[2] > floor) {
            return Err(Error::DegenerateCurvature { index: i, value: to_f64(f[2]) });
        }
        if !(-g[2] > floor) {
            return Err(Error::DegenerateCurvature { index: i, value: to_f64(g[2]) });
        }
        let j = pair.dy_du[i];
        before.push((phi(f[1], f[2]) + phi(-g[1], -g[2])) * j);
        let z = (f[1] - g[1]) / two;
        let a = T::one() + z * z;
        after.push(four * a * a / (f[2] - g[2]) * j);
    }
    Ok((before, after))
}

/// Area and ℱ before and after symmetrization on the pair's height window.
pub fn compare_functionals<T: Real>(pair: &GraphPair<T>, floor: T) -> Result<SteinerComparison> {
    let (before, after) = integrands(pair, floor)?;
    let width: Vec<T> = (0..pair.len()).map(|i| (pair.g[i][0] - pair.f[i][0]) * pair.dy_du[i]).collect();
    let sym = symmetrize(pair);
    let width_after: Vec<T> = (0..pair.len()).map(|i| (sym.g[i][0] - sym.f[i][0]) * sym.dy_du[i]).collect();
    let u = &pair.u;
    let a_before = area_with_ends(pair, simpson(u, &width));
    let a_after = area_with_ends(&sym, simpson(u, &width_after));
    // the u-integrands stay bounded at both ends; the clipped strips are added as rectangles
    let n = pair.len();
    let ud = u[0];
    let f_before = simpson(u, &before) + ud * (before[0] + before[n - 1]);
    let f_after = simpson(u, &after) + ud * (after[0] + after[n - 1]);
    let clip = ud * (before[0] + before[n - 1]) / f_before;
    let mut witness = T::neg_infinity();
    let mut bound = T::infinity();
    for i in 0..n {
        witness = witness.max((after[i] - before[i]) / before[i]);
        let (f, g, h) = (pair.f[i], pair.g[i], sym.g[i]);
        let hl = graph_curvature(f[1], f[2]);
        let hr = graph_curvature(g[1], -g[2]);
        let ht = graph_curvature(h[1], -h[2]);
        bound = bound.min(ht / hl.min(hr) - T::one());
    }
    Ok(SteinerComparison {
        a_before: to_f64(a_before),
        a_after: to_f64(a_after),
        f_before: to_f64(f_before),
        f_after: to_f64(f_after),
        area_drift_rel: to_f64((a_after - a_before).abs() / a_before),
        f_decrease_rel: to_f64((f_before - f_after) / f_before),
        asymmetry: to_f64(pair.asymmetry()),
        clip_estimate: to_f64(clip),
        convexity_witness: to_f64(witness),
        curvature_bound: to_f64(bound),
    })
}

/// Adds the clipped end strips of ∫(g − f) dy, where the width is continuous.
fn area_with_ends<T: Real>(pair: &GraphPair<T>, interior: T) -> T {
    let n = pair.len();
    let bottom = (pair.g0 - pair.f0 + pair.g[0][0] - pair.f[0][0]) / lit(2.0) * pair.y[0];
    let top = (pair.g[n - 1][0] - pair.f[n - 1][0]) / lit(2.0) * (pair.ybar - pair.y[n - 1]);
    interior + bottom + top
}

/// Closed curve through the pair's graphs, resampled uniformly in u with `m` points per branch.
pub fn reconstitute<T: Real>(pair: &GraphPair<T>, m: usize) -> Result<DiscreteCurve<T>> {
    let fv: Vec<T> = pair.f.iter().map(|v| v[0]).collect();
    let gv: Vec<T> = pair.g.iter().map(|v| v[0]).collect();
    let sf = CubicSpline::new(&pair.u, &fv)?;
    let sg = CubicSpline::new(&pair.u, &gv)?;
    let half_pi = T::FRAC_PI_2();
    let us = linspace(T::zero(), T::one(), m);
    let y = |u: T| {
        let sn = (half_pi * u).sin();
        pair.ybar * sn * sn
    };
    let mut pts = Vec::with_capacity(2 * m - 1);
    for (k, &u) in us.iter().enumerate() {
        let x = if k == 0 {
            pair.g0
        } else if k == m - 1 {
            pair.apex_x
        } else {
            sg.eval(u)[0]
        };
        pts.push([x, if k == 0 { T::zero() } else { y(u) }]);
    }
    for (k, &u) in us.iter().enumerate().rev().skip(1) {
        let x = if k == 0 { pair.f0 } else { sf.eval(u)[0] };
        pts.push([x, if k == 0 { T::zero() } else { y(u) }]);
    }
    DiscreteCurve::from_points(pts)
}

/// ∫(g − f) dy against the enclosed area of the reconstituted curve.
pub fn fubini_check<T: Real>(pair: &GraphPair<T>, m: usize) -> Result<(T, T)> {
    let width: Vec<T> = (0..pair.len()).map(|i| (pair.g[i][0] - pair.f[i][0]) * pair.dy_du[i]).collect();
    let fubini = area_with_ends(pair, simpson(&pair.u, &width));
    let curve = reconstitute(pair, m)?;
    Ok((fubini, enclosed_area(&curve)?))
}

/// Convex region f = m − w, g = m + w with w = x0 √(1 − (y/ȳ)²) and m = c·y + b·y².
///
/// |2b| < x0/ȳ² keeps f'' > 0 > g''; c = b = 0 gives a symmetric half-ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSpec {
    pub x0: f64,
    pub ybar: f64,
    pub shear: f64,
    pub bend: f64,
}

impl PairSpec {
    pub fn sheared_semicircle(shear: f64) -> Self {
        Self { x0: 1.0, ybar: 1.0, shear, bend: 0.0 }
    }

    pub fn is_symmetric(&self) -> bool {
        self.shear == 0.0 && self.bend == 0.0
    }

    pub fn to_pair<T: Real>(&self, n: usize, u_delta: T) -> GraphPair<T> {
        let (x0, yb, c, b): (T, T, T, T) = (lit(self.x0), lit(self.ybar), lit(self.shear), lit(self.bend));
        let two = lit::<T>(2.0);
        let mid = move |y: T| [c * y + b * y * y, c + two * b * y, two * b];
        let w = move |y: T, gap: T| {
            let q = gap / yb * (T::one() + y / yb);
            let r = q.sqrt();
            [x0 * r, -x0 * y / (yb * yb * r), -x0 / (yb * yb * q * r)]
        };
        GraphPair::from_fns(
            yb,
            n,
            u_delta,
            move |y, gap| {
                let (m, w) = (mid(y), w(y, gap));
                [m[0] - w[0], m[1] - w[1], m[2] - w[2]]
            },
            move |y, gap| {
                let (m, w) = (mid(y), w(y, gap));
                [m[0] + w[0], m[1] + w[1], m[2] + w[2]]
            },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Corpus {
    Sheared,
    Symmetric,
    Random,
    Mixed,
}

impl std::str::FromStr for Corpus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sheared" => Ok(Corpus::Sheared),
            "symmetric" => Ok(Corpus::Symmetric),
            "random" => Ok(Corpus::Random),
            "mixed" => Ok(Corpus::Mixed),
            _ => Err(Error::Parse(format!("unknown corpus {s:?}"))),
        }
    }
}

/// Asymmetric convex pairs with random size, shear and bend.
pub fn random_specs(seed: u64, count: usize) -> Vec<PairSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x0 = rng.gen_range(0.5..2.0);
            let ybar = rng.gen_range(0.5..3.0);
            let mut shear: f64 = rng.gen_range(-1.0..1.0);
            if shear.abs() < 0.05 {
                shear = 0.05f64.copysign(shear);
            }
            let bend = rng.gen_range(-0.45..0.45) * x0 / (ybar * ybar);
            PairSpec { x0, ybar, shear, bend }
        })
        .collect()
}

pub fn corpus_specs(kind: Corpus, seed: u64, count: usize) -> Vec<PairSpec> {
    match kind {
        Corpus::Sheared => (1..=count).map(|k| PairSpec::sheared_semicircle(0.05 * k as f64)).collect(),
        Corpus::Symmetric => (0..count)
            .map(|k| PairSpec { x0: 0.5 + 0.1 * k as f64, ybar: 0.5 + 0.07 * k as f64, shear: 0.0, bend: 0.0 })
            .collect(),
        Corpus::Random => random_specs(seed, count),
        Corpus::Mixed => {
            let n_sym = count / 10;
            let n_shear = count / 10;
            let mut v = corpus_specs(Corpus::Symmetric, seed, n_sym);
            v.extend(corpus_specs(Corpus::Sheared, seed, n_shear));
            v.extend(random_specs(seed, count - n_sym - n_shear));
            v
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorpusRow {
    pub index: usize,
    pub spec: PairSpec,
    pub symmetric: bool,
    pub comparison: SteinerComparison,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorpusSummary {
    pub count: usize,
    pub asymmetric: usize,
    pub max_area_drift_rel: f64,
    pub min_decrease_rel_asymmetric: f64,
    pub max_change_symmetric: f64,
    pub max_clip_estimate: f64,
    pub max_convexity_witness: f64,
    pub min_curvature_bound: f64,
    /// Every asymmetric pair decreased and every symmetric pair was unchanged.
    pub pass: bool,
}

/// Compares every pair of the corpus in parallel.
pub fn run_corpus(specs: &[PairSpec], n: usize, floor: f64) -> Result<(Vec<CorpusRow>, CorpusSummary)> {
    let rows: Vec<CorpusRow> = specs
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let pair = spec.to_pair::<f64>(n, DEFAULT_U_DELTA);
            let comparison = compare_functionals(&pair, floor)?;
            Ok(CorpusRow { index, spec: *spec, symmetric: spec.is_symmetric(), comparison })
        })
        .collect::<Result<_>>()?;
    let mut s = CorpusSummary {
        count: rows.len(),
        asymmetric: 0,
        max_area_drift_rel: 0.0,
        min_decrease_rel_asymmetric: f64::INFINITY,
        max_change_symmetric: 0.0,
        max_clip_estimate: 0.0,
        max_convexity_witness: f64::NEG_INFINITY,
        min_curvature_bound: f64::INFINITY,
        pass: true,
    };
    for r in &rows {
        let c = &r.comparison;
        s.max_area_drift_rel = s.max_area_drift_rel.max(c.area_drift_rel);
        s.max_clip_estimate = s.max_clip_estimate.max(c.clip_estimate);
        s.max_convexity_witness = s.max_convexity_witness.max(c.convexity_witness);
        s.min_curvature_bound = s.min_curvature_bound.min(c.curvature_bound);
        if r.symmetric {
            s.max_change_symmetric = s.max_change_symmetric.max((c.f_after - c.f_before).abs());
            s.pass &= c.f_after == c.f_before && c.a_after == c.a_before;
        } else {
            s.asymmetric += 1;
            s.min_decrease_rel_asymmetric = s.min_decrease_rel_asymmetric.min(c.f_decrease_rel);
            s.pass &= c.f_after < c.f_before;
        }
    }
    Ok((rows, s))
}

/// Height grid helper for callers that need the y nodes only.
pub fn window_heights<T: Real>(ybar: T, n: usize, u_delta: T) -> Vec<T> {
    height_grid(ybar, n, u_delta).into_iter().map(|h| h.1).collect()
}
