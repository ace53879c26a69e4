//! Log-uniform sampling of `(0, ∞)` and of the critical line.
//!
//! Nodes are `t_j = exp(u_min + j·h)`. Integrals over `t` become trapezoid
//! sums in `u = ln t` with weight `t_j·h`; the sliver `(0, t_0)` is added as
//! a one-point rectangle `t_0·|f(t_0)|²` so that functions which do not
//! vanish at the origin are integrated to `O(t_0²)`.

use crate::quad::lagrange_uniform;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

pub const MIN_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    u_min: f64,
    h: f64,
    n: usize,
}

impl RadialGrid {
    /// Log-uniform grid with `n` nodes spanning `[t_lo, t_hi]`.
    pub fn new(t_lo: f64, t_hi: f64, n: usize) -> Result<Self> {
        if !(t_lo > 0.0 && t_lo.is_finite() && t_hi.is_finite() && t_hi > t_lo) {
            return Err(Error::BadRange(format!(
                "need 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]"
            )));
        }
        if n < MIN_NODES {
            return Err(Error::BadRange(format!(
                "need at least {MIN_NODES} nodes, got {n}"
            )));
        }
        let u_min = t_lo.ln();
        let h = (t_hi.ln() - u_min) / (n - 1) as f64;
        Ok(RadialGrid { u_min, h, n })
    }

    /// Grid given directly in the log coordinate.
    pub fn from_log(u_min: f64, h: f64, n: usize) -> Result<Self> {
        if !(u_min.is_finite() && h.is_finite() && h > 0.0) {
            return Err(Error::BadRange(format!(
                "need finite u_min and h > 0, got u_min = {u_min}, h = {h}"
            )));
        }
        if n < MIN_NODES {
            return Err(Error::BadRange(format!(
                "need at least {MIN_NODES} nodes, got {n}"
            )));
        }
        Ok(RadialGrid { u_min, h, n })
    }

    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn u(&self, j: usize) -> f64 {
        self.u_min + j as f64 * self.h
    }

    /// `t_j`, evaluated from a double-length log coordinate so that the
    /// node ratio stays constant to a few ulps across the whole grid.
    pub fn t(&self, j: usize) -> f64 {
        let jf = j as f64;
        let p = jf * self.h;
        let p_err = jf.mul_add(self.h, -p);
        let s = self.u_min + p;
        let bb = s - self.u_min;
        let s_err = (self.u_min - (s - bb)) + (p - bb);
        s.exp() * (1.0 + (s_err + p_err))
    }

    pub fn t_lo(&self) -> f64 {
        self.t(0)
    }

    pub fn t_hi(&self) -> f64 {
        self.t(self.n - 1)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.t(j)).collect()
    }

    /// Quadrature weights for `∫₀^∞ F(t) dt`.
    pub fn weights(&self) -> Vec<f64> {
        let mut w: Vec<f64> = (0..self.n).map(|j| self.t(j) * self.h).collect();
        w[0] *= 0.5;
        w[self.n - 1] *= 0.5;
        w[0] += self.t(0);
        w
    }

    /// Fractional index of `t` in this grid.
    pub fn position(&self, t: f64) -> f64 {
        (t.ln() - self.u_min) / self.h
    }

    pub fn same_as(&self, other: &RadialGrid) -> bool {
        self.n == other.n
            && (self.u_min - other.u_min).abs() <= 1e-12 * self.u_min.abs().max(1.0)
            && (self.h - other.h).abs() <= 1e-12 * self.h
    }

    fn check_same(&self, other: &RadialGrid) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "(u_min {}, h {}, n {}) vs (u_min {}, h {}, n {})",
                self.u_min, self.h, self.n, other.u_min, other.h, other.n
            )))
        }
    }
}

/// Complex samples on a [`RadialGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: RadialGrid,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: RadialGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: RadialGrid) -> Self {
        GridFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn(grid: RadialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.t(j))).collect();
        GridFunction { grid, values }
    }

    pub fn from_real_fn(grid: RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |t| Complex64::new(f(t), 0.0))
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, alpha: Complex64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v * alpha).collect(),
        }
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<GridFunction> {
        self.grid.check_same(&other.grid)?;
        Ok(GridFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Pointwise interpolation at an arbitrary `t` inside the grid range.
    pub fn eval(&self, t: f64) -> Option<Complex64> {
        let pos = self.grid.position(t);
        let last = (self.grid.len() - 1) as f64;
        if !(pos >= -1e-9 && pos <= last + 1e-9) {
            return None;
        }
        Some(lagrange_uniform(&self.values, pos.clamp(0.0, last), 4))
    }
}

/// `(∫₀^∞ |f(t)|² dt)^{½}`.
pub fn l2_norm(f: &GridFunction) -> f64 {
    f.grid
        .weights()
        .iter()
        .zip(&f.values)
        .map(|(w, v)| w * v.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `∫₀^∞ conj(f(t)) g(t) dt`, with the same weights as [`l2_norm`].
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.grid.check_same(&g.grid)?;
    Ok(f.grid
        .weights()
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(w, (a, b))| a.conj() * b * w)
        .sum())
}

/// Cubic interpolation in the log coordinate onto `target`.
pub fn resample(f: &GridFunction, target: &RadialGrid) -> Result<GridFunction> {
    resample_order(f, target, 4)
}

pub(crate) fn resample_order(
    f: &GridFunction,
    target: &RadialGrid,
    order: usize,
) -> Result<GridFunction> {
    let src = &f.grid;
    let last = (src.len() - 1) as f64;
    let lo = (target.u_min - src.u_min) / src.h;
    let hi = (target.u(target.len() - 1) - src.u_min) / src.h;
    if lo < -1e-9 || hi > last + 1e-9 {
        return Err(Error::OutOfRange {
            lo: target.t_lo(),
            hi: target.t_hi(),
            src_lo: src.t_lo(),
            src_hi: src.t_hi(),
        });
    }
    let values = (0..target.len())
        .map(|j| {
            let pos = ((target.u(j) - src.u_min) / src.h).clamp(0.0, last);
            lagrange_uniform(&f.values, pos, order)
        })
        .collect();
    Ok(GridFunction {
        grid: *target,
        values,
    })
}

/// Samples `Φ(½ + iτ_k)`, `τ_k = (k - M/2)·tau_step`, `k = 0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalLineFunction {
    tau_step: f64,
    values: Vec<Complex64>,
}

impl CriticalLineFunction {
    pub fn new(tau_step: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(tau_step > 0.0 && tau_step.is_finite()) {
            return Err(Error::NonPositive {
                name: "tau_step",
                value: tau_step,
            });
        }
        if values.is_empty() || !values.len().is_multiple_of(2) {
            return Err(Error::BadRange(format!(
                "critical-line sample count must be even and positive, got {}",
                values.len()
            )));
        }
        Ok(CriticalLineFunction { tau_step, values })
    }

    pub fn from_fn(tau_step: f64, m: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let half = (m / 2) as f64;
        let values = (0..m).map(|k| f((k as f64 - half) * tau_step)).collect();
        Self::new(tau_step, values)
    }

    pub fn tau_step(&self) -> f64 {
        self.tau_step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tau(&self, k: usize) -> f64 {
        (k as f64 - (self.values.len() / 2) as f64) * self.tau_step
    }

    pub fn taus(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.tau(k)).collect()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Index of `-τ_k`; the most negative sample has no partner.
    pub fn mirror(&self, k: usize) -> Option<usize> {
        if k == 0 {
            None
        } else {
            Some(self.values.len() - k)
        }
    }

    /// `∫ |Φ|² dτ` by the rectangle rule.
    pub fn l2_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.tau_step
    }
}

#[derive(Serialize, Deserialize)]
struct GridSpec {
    t_lo: f64,
    t_hi: f64,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct GridFunctionDoc {
    grid: GridSpec,
    values: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CriticalLineDoc {
    tau_step: f64,
    m: usize,
    values: Vec<[f64; 2]>,
}

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [v.re, v.im]).collect()
}

fn unpairs(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

impl GridFunction {
    /// JSON document `{grid:{t_lo,t_hi,n,u_min,h}, values:[[re,im],...]}`.
    ///
    /// The log coordinates are carried alongside `t_lo`/`t_hi` so that the
    /// grid itself survives a round trip bit for bit.
    pub fn to_json(&self) -> Result<String> {
        let doc = GridFunctionDoc {
            grid: GridSpec {
                t_lo: self.grid.t_lo(),
                t_hi: self.grid.t_hi(),
                n: self.grid.len(),
                u_min: Some(self.grid.u_min),
                h: Some(self.grid.h),
            },
            values: pairs(&self.values),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GridFunctionDoc = serde_json::from_str(text)?;
        let grid = match (doc.grid.u_min, doc.grid.h) {
            (Some(u_min), Some(h)) => RadialGrid::from_log(u_min, h, doc.grid.n)?,
            _ => RadialGrid::new(doc.grid.t_lo, doc.grid.t_hi, doc.grid.n)?,
        };
        GridFunction::new(grid, unpairs(&doc.values))
            .map_err(|e| Error::Parse(e.to_string()))
    }

    /// CSV with header `t,re,im`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "re", "im"])?;
        for (j, v) in self.values.iter().enumerate() {
            w.write_record([
                self.grid.t(j).to_string(),
                v.re.to_string(),
                v.im.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads `t,re,im` rows; the `t` column must be log-uniform.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let rows = read_triples(input, "t")?;
        if rows.len() < MIN_NODES {
            return Err(Error::Parse(format!(
                "need at least {MIN_NODES} rows, got {}",
                rows.len()
            )));
        }
        let n = rows.len();
        if rows.iter().any(|r| !(r[0] > 0.0)) {
            return Err(Error::Parse("t column must be positive".into()));
        }
        let grid = RadialGrid::new(rows[0][0], rows[n - 1][0], n)
            .map_err(|e| Error::Parse(e.to_string()))?;
        for (j, r) in rows.iter().enumerate() {
            let expect = grid.u(j);
            if (r[0].ln() - expect).abs() > 1e-9 * expect.abs().max(1.0) {
                return Err(Error::Parse(format!(
                    "t column is not log-uniform at row {}",
                    j + 1
                )));
            }
        }
        let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
        GridFunction::new(grid, values)
    }

    /// Reads a file as JSON when its extension is `.json`, CSV otherwise.
    pub fn read_path(path: &Path) -> Result<Self> {
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            Self::from_json(&std::fs::read_to_string(path)?)
        } else {
            Self::read_csv(std::fs::File::open(path)?)
        }
    }
}

fn read_triples<R: Read>(input: R, first: &str) -> Result<Vec<[f64; 3]>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = rdr.headers()?.clone();
    let expected = [first, "re", "im"];
    if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
        return Err(Error::Parse(format!(
            "expected header `{}`, found `{}`",
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 3 {
            return Err(Error::Parse(format!("row {} has {} fields", i + 1, rec.len())));
        }
        let mut row = [0.0f64; 3];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: `{field}` is not a number", i + 1)))?;
            if !slot.is_finite() {
                return Err(Error::Parse(format!("row {}: non-finite value", i + 1)));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

impl CriticalLineFunction {
    pub fn to_json(&self) -> Result<String> {
        let doc = CriticalLineDoc {
            tau_step: self.tau_step,
            m: self.values.len(),
            values: pairs(&self.values),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CriticalLineDoc = serde_json::from_str(text)?;
        if doc.m != doc.values.len() {
            return Err(Error::Parse(format!(
                "m = {} but {} values",
                doc.m,
                doc.values.len()
            )));
        }
        CriticalLineFunction::new(doc.tau_step, unpairs(&doc.values))
    }

    /// CSV with header `tau,re,im`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let taus = self.taus();
        write_tau_csv(out, &taus, &self.values)
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let rows = read_triples(input, "tau")?;
        if rows.len() < 2 || rows.len() % 2 != 0 {
            return Err(Error::Parse("need an even number of tau rows".into()));
        }
        let step = rows[1][0] - rows[0][0];
        let f = CriticalLineFunction::new(
            step,
            rows.iter().map(|r| Complex64::new(r[1], r[2])).collect(),
        )?;
        for (k, r) in rows.iter().enumerate() {
            if (r[0] - f.tau(k)).abs() > 1e-9 * step.max(r[0].abs()) {
                return Err(Error::Parse(format!("tau column is not uniform at row {}", k + 1)));
            }
        }
        Ok(f)
    }
}

pub(crate) fn write_tau_csv<W: Write>(out: W, taus: &[f64], values: &[Complex64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tau", "re", "im"])?;
    for (tau, v) in taus.iter().zip(values) {
        w.write_record([tau.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn read_tau_csv<R: Read>(input: R) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let rows = read_triples(input, "tau")?;
    Ok((
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| Complex64::new(r[1], r[2])).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn step_from_range() {
        let g = RadialGrid::new(1e-3, 1e3, 4096).unwrap();
        assert!((g.h() - 1e6f64.ln() / 4095.0).abs() < 1e-18);
        assert!(RadialGrid::new(1.0, std::f64::consts::E, 2).is_err());
        assert!(RadialGrid::new(2.0, 1.0, 100).is_err());
        assert!(RadialGrid::new(0.0, 1.0, 100).is_err());
    }

    #[test]
    fn node_ratio_is_constant() {
        let g = RadialGrid::new(1e-4, 1e4, 8192).unwrap();
        let r0 = g.t(1) / g.t(0);
        let worst = (1..g.len() - 1)
            .map(|j| ((g.t(j + 1) / g.t(j)) / r0 - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-15, "{worst:e}");
        assert!((g.t_hi() / 1e4 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn norm_of_exponential() {
        let g = RadialGrid::new(1e-4, 50.0, 8192).unwrap();
        let f = GridFunction::from_real_fn(g, |t| (-t).exp());
        assert!((l2_norm(&f) - 0.5f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn norm_of_indicator() {
        // nodes hit 1 and e exactly; the jump nodes carry the mean value
        let g = RadialGrid::from_log(-3.0, 1.0 / 1024.0, 6 * 1024 + 1).unwrap();
        let values = (0..g.len())
            .map(|j| {
                let u = g.u(j);
                let v = if u == 0.0 || u == 1.0 {
                    0.5f64.sqrt()
                } else if u > 0.0 && u < 1.0 {
                    1.0
                } else {
                    0.0
                };
                c(v, 0.0)
            })
            .collect();
        let f = GridFunction::new(g, values).unwrap();
        let exact = (std::f64::consts::E - 1.0).sqrt();
        assert!((l2_norm(&f) - exact).abs() < 1e-6);
    }

    #[test]
    fn inner_product_rejects_mismatch() {
        let a = GridFunction::zeros(RadialGrid::new(1.0, 2.0, 16).unwrap());
        let b = GridFunction::zeros(RadialGrid::new(1.0, 3.0, 16).unwrap());
        assert!(matches!(inner_product(&a, &b), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn identity_resample_is_bitwise() {
        let g = RadialGrid::new(1e-3, 30.0, 512).unwrap();
        let f = GridFunction::from_fn(g, |t| c((-t).exp(), t.sin()));
        let r = resample(&f, &g).unwrap();
        assert_eq!(r.values(), f.values());
    }

    #[test]
    fn resample_to_refined_grid() {
        let g = RadialGrid::new(1e-3, 1e3, 4096).unwrap();
        let fine = RadialGrid::from_log(g.u_min(), g.h() / 2.0, 2 * 4096 - 1).unwrap();
        let f = GridFunction::from_real_fn(g, |t| (-t).exp());
        let r = resample(&f, &fine).unwrap();
        let err = (0..fine.len())
            .map(|j| (r.values()[j].re - (-fine.t(j)).exp()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err:e}");
        // every other node coincides with the source
        for j in 0..g.len() {
            assert_eq!(r.values()[2 * j], f.values()[j]);
        }
    }

    #[test]
    fn resample_outside_is_error() {
        let g = RadialGrid::new(1.0, 10.0, 64).unwrap();
        let f = GridFunction::zeros(g);
        let wide = RadialGrid::new(0.5, 10.0, 64).unwrap();
        assert!(matches!(resample(&f, &wide), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn json_round_trip_is_bitwise() {
        let g = RadialGrid::new(1e-3, 7.0, 100).unwrap();
        let f = GridFunction::from_fn(g, |t| c(t.ln() / 3.0, (t * 1.7).cos() / 7.0));
        let back = GridFunction::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn csv_round_trip() {
        let g = RadialGrid::new(1e-2, 5.0, 64).unwrap();
        let f = GridFunction::from_fn(g, |t| c((-t).exp(), -t / 3.0));
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = GridFunction::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.values(), f.values());
        assert!(back.grid().same_as(f.grid()));
    }

    #[test]
    fn malformed_csv_is_parse_error() {
        let text = "t,re,im\n1,2\n";
        assert!(GridFunction::read_csv(text.as_bytes()).is_err());
        let text = "x,y\n1,2\n";
        assert!(matches!(
            GridFunction::read_csv(text.as_bytes()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn critical_line_layout() {
        let f = CriticalLineFunction::from_fn(0.5, 8, |tau| c(tau, 0.0)).unwrap();
        assert_eq!(f.tau(0), -2.0);
        assert_eq!(f.tau(4), 0.0);
        assert_eq!(f.mirror(3), Some(5));
        assert_eq!(f.mirror(0), None);
        assert!(CriticalLineFunction::new(0.5, vec![c(0.0, 0.0); 3]).is_err());
        let back = CriticalLineFunction::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        assert_eq!(CriticalLineFunction::read_csv(buf.as_slice()).unwrap(), f);
    }

    fn sample() -> impl Strategy<Value = (Vec<(f64, f64)>, Vec<(f64, f64)>)> {
        let v = prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 32);
        (v.clone(), v)
    }

    fn build(v: &[(f64, f64)]) -> GridFunction {
        let g = RadialGrid::new(0.01, 10.0, 32).unwrap();
        GridFunction::new(g, v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn norm_is_absolutely_homogeneous((a, _) in sample(), re in -5.0f64..5.0, im in -5.0f64..5.0) {
            let f = build(&a);
            let alpha = c(re, im);
            let lhs = l2_norm(&f.scale(alpha));
            let rhs = alpha.norm() * l2_norm(&f);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.max(1e-300));
        }

        #[test]
        fn cauchy_schwarz_and_symmetry((a, b) in sample()) {
            let f = build(&a);
            let g = build(&b);
            let fg = inner_product(&f, &g).unwrap();
            let gf = inner_product(&g, &f).unwrap();
            prop_assert!(fg.norm() <= l2_norm(&f) * l2_norm(&g) + 1e-12);
            prop_assert!((fg - gf.conj()).norm() <= 1e-14 * fg.norm().max(1.0));
            let ff = inner_product(&f, &f).unwrap();
            let n2 = l2_norm(&f).powi(2);
            prop_assert!((ff.re - n2).abs() <= 1e-13 * n2.max(1e-300));
        }
    }
}
