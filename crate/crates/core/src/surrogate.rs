//! Affine surrogate mapping luminaire output scalings to working-plane
//! illuminance.
//!
//! For a fixed room, illuminance is (by superposition) affine in the vector
//! of per-luminaire output scalings `Q`, so a single least-squares fit
//! against a forward model replaces per-event ray tracing. This module
//! provides the layout description, a self-contained point-source forward
//! model (exactly affine by construction, so the fit recovers it to machine
//! precision), the least-squares trainer, and holdout validation. Users with
//! an external forward model can ingest training pairs through the same file
//! format instead (see `fileio`).

use crate::error::{Error, Result};
use crate::sobol;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// One luminaire: position, photometric type tag, and nominal intensity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Luminaire {
    pub id: usize,
    pub type_tag: String,
    pub x_m: f64,
    pub y_m: f64,
    pub z_m: f64,
    pub intensity_cd: f64,
}

/// Room layout: luminaires plus the working-plane calculation grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub luminaires: Vec<Luminaire>,
    /// (x, y) of each calculation point, at working-plane height.
    pub grid_points: Vec<(f64, f64)>,
    /// Working-plane height above the floor, meters.
    pub wp_height_m: f64,
    /// Constant ambient/interreflected contribution, lux.
    pub ambient_floor_lux: f64,
}

impl Layout {
    pub fn validate(&self) -> Result<()> {
        if self.luminaires.is_empty() || self.grid_points.is_empty() {
            return Err(Error::data("layout needs luminaires and grid points"));
        }
        for l in &self.luminaires {
            if l.z_m <= self.wp_height_m {
                return Err(Error::data(format!(
                    "luminaire {} is mounted at {} m, at or below the working plane ({} m)",
                    l.id, l.z_m, self.wp_height_m
                )));
            }
            if !(l.intensity_cd >= 0.0) {
                return Err(Error::data(format!(
                    "luminaire {} has negative intensity",
                    l.id
                )));
            }
        }
        if self.ambient_floor_lux < 0.0 {
            return Err(Error::data("ambient floor must be >= 0"));
        }
        Ok(())
    }

    pub fn luminaire_count(&self) -> usize {
        self.luminaires.len()
    }

    pub fn point_count(&self) -> usize {
        self.grid_points.len()
    }
}

/// Point-source forward model: each luminaire contributes
/// `Q_j * I_j * h_j / d_ij^3` at a grid point (inverse square with the
/// cosine of incidence on a horizontal plane), on top of the ambient floor.
/// Exactly affine in Q.
pub fn analytic_oracle(layout: &Layout, scaling: &[f64]) -> Result<Vec<f64>> {
    if scaling.len() != layout.luminaire_count() {
        return Err(Error::data(format!(
            "scaling vector has {} entries for {} luminaires",
            scaling.len(),
            layout.luminaire_count()
        )));
    }
    if scaling.iter().any(|q| !(0.0..=1.0).contains(q)) {
        return Err(Error::data("output scaling outside [0, 1]"));
    }
    let mut out = Vec::with_capacity(layout.point_count());
    for &(px, py) in &layout.grid_points {
        let mut e = layout.ambient_floor_lux;
        for (l, &q) in layout.luminaires.iter().zip(scaling) {
            let dx = l.x_m - px;
            let dy = l.y_m - py;
            let h = l.z_m - layout.wp_height_m;
            let d2 = dx * dx + dy * dy + h * h;
            e += q * l.intensity_cd * h / (d2 * d2.sqrt());
        }
        out.push(e);
    }
    Ok(out)
}

/// Trained affine illuminance model: `E = intercept + coefficients * Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateModel {
    intercept: Vec<f64>,
    /// Row-major N x J coefficient block.
    coef: Vec<f64>,
    points: usize,
    luminaires: usize,
}

impl SurrogateModel {
    /// Assemble a model from explicit parts (used by tests and file ingest).
    pub fn from_parts(intercept: Vec<f64>, coefficients: Vec<Vec<f64>>) -> Result<Self> {
        let points = intercept.len();
        if coefficients.len() != points || points == 0 {
            return Err(Error::data("intercept/coefficient shape mismatch"));
        }
        let luminaires = coefficients[0].len();
        if luminaires == 0 || coefficients.iter().any(|r| r.len() != luminaires) {
            return Err(Error::data("ragged coefficient matrix"));
        }
        let coef = coefficients.into_iter().flatten().collect();
        Ok(Self {
            intercept,
            coef,
            points,
            luminaires,
        })
    }

    pub fn luminaire_count(&self) -> usize {
        self.luminaires
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn intercept(&self) -> &[f64] {
        &self.intercept
    }

    /// Coefficient row for calculation point `i`.
    pub fn coefficients_row(&self, i: usize) -> &[f64] {
        &self.coef[i * self.luminaires..(i + 1) * self.luminaires]
    }

    /// Illuminance at every grid point for one output-scaling vector.
    /// `predict(0)` returns the intercept bit-for-bit.
    pub fn predict(&self, scaling: &[f64]) -> Result<Vec<f64>> {
        if scaling.len() != self.luminaires {
            return Err(Error::data(format!(
                "scaling vector has {} entries, model expects {}",
                scaling.len(),
                self.luminaires
            )));
        }
        let mut out = Vec::with_capacity(self.points);
        for i in 0..self.points {
            let row = self.coefficients_row(i);
            let mut e = self.intercept[i];
            for (c, q) in row.iter().zip(scaling) {
                e += c * q;
            }
            out.push(e);
        }
        Ok(out)
    }

    /// Stacked prediction for a K x J scaling matrix; row k equals
    /// `predict(row k)` exactly (same kernel, same summation order).
    pub fn predict_stacked(&self, scalings: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        scalings.iter().map(|row| self.predict(row)).collect()
    }
}

/// Ordinary least squares of illuminance columns on the design `[1, Q]`.
///
/// `states` is n x J, `illum` n x N, with n >= J + 1. Tiny negative
/// coefficients (fit noise below 1e-9 of the column magnitude) are clipped
/// to zero so predictions stay monotone in the scalings.
pub fn fit(states: &[Vec<f64>], illum: &[Vec<f64>]) -> Result<SurrogateModel> {
    let n = states.len();
    if n == 0 || illum.len() != n {
        return Err(Error::data(format!(
            "{} state rows vs {} illuminance rows",
            n,
            illum.len()
        )));
    }
    let j = states[0].len();
    let n_pts = illum[0].len();
    if j == 0 || n_pts == 0 {
        return Err(Error::data("empty design or output"));
    }
    if states.iter().any(|r| r.len() != j) || illum.iter().any(|r| r.len() != n_pts) {
        return Err(Error::data("ragged training matrices"));
    }
    if n < j + 1 {
        return Err(Error::data(format!(
            "need at least {} training rows for {} luminaires, got {n}",
            j + 1,
            j
        )));
    }
    if states
        .iter()
        .chain(illum.iter())
        .flatten()
        .any(|v| !v.is_finite())
    {
        return Err(Error::data("non-finite training value"));
    }

    let design = DMatrix::from_fn(n, j + 1, |r, c| if c == 0 { 1.0 } else { states[r][c - 1] });
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let tol = smax * (n.max(j + 1) as f64) * f64::EPSILON;
    let rank = svd.singular_values.iter().filter(|&&s| s > tol).count();
    if rank < j + 1 {
        let offending = dependent_columns(&design, tol);
        return Err(Error::numerical(format!(
            "rank-deficient design ({rank} of {}): dependent columns {:?} \
             (0 = intercept, k = luminaire k-1)",
            j + 1,
            offending
        )));
    }

    // Solve for all output columns at once through the SVD.
    let y = DMatrix::from_fn(n, n_pts, |r, c| illum[r][c]);
    let ut_y = svd.u.as_ref().expect("svd computed with u").transpose() * &y;
    let mut scaled = ut_y;
    for (i, mut row) in scaled.row_iter_mut().enumerate() {
        let s = svd.singular_values[i];
        row.scale_mut(1.0 / s);
    }
    let beta = svd.v_t.as_ref().expect("svd computed with v_t").transpose() * scaled;
    // beta is (J+1) x N: first row intercepts, rest coefficients.

    let mut intercept = Vec::with_capacity(n_pts);
    let mut coefficients = vec![vec![0.0; j]; n_pts];
    for p in 0..n_pts {
        intercept.push(beta[(0, p)]);
        for l in 0..j {
            coefficients[p][l] = beta[(l + 1, p)];
        }
    }
    // Clip tiny negative artifacts per luminaire column.
    for l in 0..j {
        let colmax = (0..n_pts)
            .map(|p| coefficients[p][l].abs())
            .fold(0.0f64, f64::max);
        let floor = -1e-9 * colmax;
        for row in coefficients.iter_mut() {
            if row[l] < 0.0 && row[l] >= floor {
                row[l] = 0.0;
            }
        }
    }
    SurrogateModel::from_parts(intercept, coefficients)
}

/// Greedy Gram-Schmidt scan naming columns that are (numerically) linear
/// combinations of earlier ones.
fn dependent_columns(design: &DMatrix<f64>, tol: f64) -> Vec<usize> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut offending = Vec::new();
    for c in 0..design.ncols() {
        let mut v = design.column(c).clone_owned();
        for b in &basis {
            let proj = b.dot(&v);
            v -= b * proj;
        }
        if v.norm() <= tol.max(1e-12) {
            offending.push(c);
        } else {
            let norm = v.norm();
            basis.push(v / norm);
        }
    }
    offending
}

/// Pooled coefficient of determination over a flattened holdout block:
/// `1 - SSE / SST` with SST about the grand mean.
pub fn validate(
    model: &SurrogateModel,
    holdout_states: &[Vec<f64>],
    holdout_illum: &[Vec<f64>],
) -> Result<f64> {
    if holdout_states.is_empty() || holdout_states.len() != holdout_illum.len() {
        return Err(Error::data("empty or mismatched holdout"));
    }
    let pred = model.predict_stacked(holdout_states)?;
    let total: usize = holdout_illum.iter().map(|r| r.len()).sum();
    let grand_mean: f64 = holdout_illum.iter().flatten().sum::<f64>() / total as f64;
    let mut sse = 0.0;
    let mut sst = 0.0;
    for (pr, or) in pred.iter().zip(holdout_illum) {
        if pr.len() != or.len() {
            return Err(Error::data("holdout shape mismatch"));
        }
        for (p, o) in pr.iter().zip(or) {
            sse += (p - o) * (p - o);
            sst += (o - grand_mean) * (o - grand_mean);
        }
    }
    if sst == 0.0 {
        return Ok(if sse == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(1.0 - sse / sst)
}

/// Training set generated from scrambled-Sobol scaling states pushed through
/// the analytic oracle.
pub struct TrainingSet {
    pub states: Vec<Vec<f64>>,
    pub illum: Vec<Vec<f64>>,
}

pub fn generate_training_set(layout: &Layout, n: usize, seed: u64) -> Result<TrainingSet> {
    layout.validate()?;
    let states = sobol::sobol_states(n, layout.luminaire_count(), seed)?;
    let illum: Result<Vec<Vec<f64>>> = states.iter().map(|q| analytic_oracle(layout, q)).collect();
    Ok(TrainingSet {
        states,
        illum: illum?,
    })
}

/// Split a training set into train/holdout parts; `train_fraction` of the
/// rows (rounded down, at least 1) go to training, the tail to holdout.
pub fn split_training(set: &TrainingSet, train_fraction: f64) -> (TrainingSet, TrainingSet) {
    let n = set.states.len();
    let n_train = ((n as f64 * train_fraction) as usize).clamp(1, n.saturating_sub(1).max(1));
    let (s_tr, s_ho) = set.states.split_at(n_train);
    let (i_tr, i_ho) = set.illum.split_at(n_train);
    (
        TrainingSet {
            states: s_tr.to_vec(),
            illum: i_tr.to_vec(),
        },
        TrainingSet {
            states: s_ho.to_vec(),
            illum: i_ho.to_vec(),
        },
    )
}

/// Geometry of the reference office zone used throughout the case study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneSpec {
    pub zone_length_m: f64,
    pub zone_width_m: f64,
    pub zone_height_m: f64,
    pub wp_length_m: f64,
    pub wp_width_m: f64,
    pub wp_height_m: f64,
    pub grid_spacing_m: f64,
    pub row_a_count: usize,
    pub row_b_count: usize,
    pub ambient_floor_lux: f64,
    /// Brand-new average illuminance the intensity calibration targets, lux.
    pub target_avg_lux: f64,
}

impl Default for ZoneSpec {
    fn default() -> Self {
        Self {
            zone_length_m: 65.38,
            zone_width_m: 6.80,
            zone_height_m: 3.55,
            wp_length_m: 57.73,
            wp_width_m: 4.80,
            wp_height_m: 0.80,
            grid_spacing_m: 1.0,
            row_a_count: 46,
            row_b_count: 30,
            ambient_floor_lux: 20.0,
            target_avg_lux: 600.0,
        }
    }
}

/// Build the two-row case-study layout and calibrate a single global
/// intensity scale by bisection so the brand-new system hits the target
/// average illuminance. The sparser row gets a proportionally higher nominal
/// intensity so both rows deliver similar linear luminous density.
pub fn generate_case_study_layout(spec: &ZoneSpec) -> Result<Layout> {
    if spec.grid_spacing_m <= 0.0 || spec.row_a_count == 0 || spec.row_b_count == 0 {
        return Err(Error::domain("invalid zone specification"));
    }
    let mut luminaires = Vec::with_capacity(spec.row_a_count + spec.row_b_count);
    let rows = [
        (spec.row_a_count, "B7", spec.zone_width_m / 3.0, 1.0),
        (
            spec.row_b_count,
            "D13",
            2.0 * spec.zone_width_m / 3.0,
            spec.row_a_count as f64 / spec.row_b_count as f64,
        ),
    ];
    let mut id = 0;
    for &(count, tag, y, rel_intensity) in &rows {
        let pitch = spec.zone_length_m / count as f64;
        for k in 0..count {
            luminaires.push(Luminaire {
                id,
                type_tag: tag.to_string(),
                x_m: (k as f64 + 0.5) * pitch,
                y_m: y,
                z_m: spec.zone_height_m,
                intensity_cd: rel_intensity,
            });
            id += 1;
        }
    }

    // Working plane centered in the zone; points centered within the plane.
    let x_off = (spec.zone_length_m - spec.wp_length_m) / 2.0;
    let y_off = (spec.zone_width_m - spec.wp_width_m) / 2.0;
    let mut grid_points = Vec::new();
    let nx = (spec.wp_length_m / spec.grid_spacing_m).floor() as usize + 1;
    let ny = (spec.wp_width_m / spec.grid_spacing_m).floor() as usize + 1;
    let mx = (spec.wp_length_m - (nx - 1) as f64 * spec.grid_spacing_m) / 2.0;
    let my = (spec.wp_width_m - (ny - 1) as f64 * spec.grid_spacing_m) / 2.0;
    for ix in 0..nx {
        for iy in 0..ny {
            grid_points.push((
                x_off + mx + ix as f64 * spec.grid_spacing_m,
                y_off + my + iy as f64 * spec.grid_spacing_m,
            ));
        }
    }

    let mut layout = Layout {
        luminaires,
        grid_points,
        wp_height_m: spec.wp_height_m,
        ambient_floor_lux: spec.ambient_floor_lux,
    };
    layout.validate()?;

    // Bisection on the global intensity scale for the brand-new average.
    let fresh = vec![1.0; layout.luminaire_count()];
    let avg_at = |layout: &Layout| -> Result<f64> {
        let e = analytic_oracle(layout, &fresh)?;
        crate::metrics::average_illuminance(&e)
    };
    let base = avg_at(&layout)? - spec.ambient_floor_lux;
    if base <= 0.0 {
        return Err(Error::numerical("layout delivers no light"));
    }
    let (mut lo, mut hi) = (1e-6, 1e9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let avg = spec.ambient_floor_lux + base * mid;
        if avg < spec.target_avg_lux {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-9 * hi {
            break;
        }
    }
    let scale = 0.5 * (lo + hi);
    for l in &mut layout.luminaires {
        l.intensity_cd *= scale;
    }
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{average_illuminance, uniformity};
    use approx::assert_relative_eq;

    fn small_layout() -> Layout {
        Layout {
            luminaires: vec![
                Luminaire {
                    id: 0,
                    type_tag: "A".into(),
                    x_m: 1.0,
                    y_m: 1.0,
                    z_m: 3.0,
                    intensity_cd: 500.0,
                },
                Luminaire {
                    id: 1,
                    type_tag: "A".into(),
                    x_m: 3.0,
                    y_m: 1.0,
                    z_m: 3.0,
                    intensity_cd: 700.0,
                },
                Luminaire {
                    id: 2,
                    type_tag: "B".into(),
                    x_m: 2.0,
                    y_m: 2.0,
                    z_m: 3.0,
                    intensity_cd: 600.0,
                },
            ],
            grid_points: vec![(1.0, 1.0), (2.0, 1.5), (3.0, 1.0), (2.5, 2.0)],
            wp_height_m: 0.8,
            ambient_floor_lux: 15.0,
        }
    }

    #[test]
    fn oracle_dark_system_is_ambient() {
        let layout = small_layout();
        let e = analytic_oracle(&layout, &[0.0, 0.0, 0.0]).unwrap();
        assert!(e.iter().all(|&v| v == 15.0));
    }

    #[test]
    fn oracle_single_luminaire_directly_above() {
        // One luminaire straight over a point: ambient + I / h^2.
        let layout = Layout {
            luminaires: vec![Luminaire {
                id: 0,
                type_tag: "A".into(),
                x_m: 2.0,
                y_m: 2.0,
                z_m: 3.0,
                intensity_cd: 880.0,
            }],
            grid_points: vec![(2.0, 2.0)],
            wp_height_m: 0.8,
            ambient_floor_lux: 5.0,
        };
        let e = analytic_oracle(&layout, &[1.0]).unwrap();
        let h = 2.2;
        assert_relative_eq!(e[0], 5.0 + 880.0 / (h * h), max_relative = 1e-14);
    }

    #[test]
    fn oracle_superposition() {
        let layout = small_layout();
        let q1 = [0.3, 0.1, 0.2];
        let q2 = [0.4, 0.5, 0.3];
        let zero = analytic_oracle(&layout, &[0.0; 3]).unwrap();
        let e1 = analytic_oracle(&layout, &q1).unwrap();
        let e2 = analytic_oracle(&layout, &q2).unwrap();
        let sum: Vec<f64> = q1.iter().zip(&q2).map(|(a, b)| a + b).collect();
        let es = analytic_oracle(&layout, &sum).unwrap();
        for i in 0..zero.len() {
            assert_relative_eq!(
                es[i] - zero[i],
                (e1[i] - zero[i]) + (e2[i] - zero[i]),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn fit_recovers_known_affine_map() {
        let layout = small_layout();
        let set = generate_training_set(&layout, 64, 5).unwrap();
        let model = fit(&set.states, &set.illum).unwrap();
        // Intercept = ambient floor; prediction matches oracle on new states.
        for b in model.intercept() {
            assert_relative_eq!(*b, 15.0, max_relative = 1e-8);
        }
        let fresh = sobol::sobol_states(100, 3, 77).unwrap();
        for q in &fresh {
            let predicted = model.predict(q).unwrap();
            let exact = analytic_oracle(&layout, q).unwrap();
            for (p, e) in predicted.iter().zip(&exact) {
                assert_relative_eq!(p, e, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn fit_minimal_square_system_interpolates() {
        // n = J + 1 independent rows: exact interpolation.
        let states = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ];
        let illum = vec![vec![10.0], vec![14.0], vec![17.0]];
        let model = fit(&states, &illum).unwrap();
        for (s, e) in states.iter().zip(&illum) {
            assert_relative_eq!(model.predict(s).unwrap()[0], e[0], max_relative = 1e-10);
        }
        assert_relative_eq!(model.intercept()[0], 10.0, max_relative = 1e-10);
    }

    #[test]
    fn fit_is_row_permutation_invariant() {
        let layout = small_layout();
        let set = generate_training_set(&layout, 32, 9).unwrap();
        let model = fit(&set.states, &set.illum).unwrap();
        let mut order: Vec<usize> = (0..32).collect();
        order.reverse();
        order.swap(3, 17);
        let s2: Vec<Vec<f64>> = order.iter().map(|&i| set.states[i].clone()).collect();
        let i2: Vec<Vec<f64>> = order.iter().map(|&i| set.illum[i].clone()).collect();
        let model2 = fit(&s2, &i2).unwrap();
        for p in 0..model.point_count() {
            assert_relative_eq!(
                model.intercept()[p],
                model2.intercept()[p],
                max_relative = 1e-12,
                epsilon = 1e-12
            );
            for l in 0..model.luminaire_count() {
                assert_relative_eq!(
                    model.coefficients_row(p)[l],
                    model2.coefficients_row(p)[l],
                    max_relative = 1e-12,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn fit_names_rank_deficient_columns() {
        // Luminaire 1 state duplicates luminaire 0: column 2 of the design
        // (= luminaire 1) depends on column 1.
        let states: Vec<Vec<f64>> = (0..16)
            .map(|i| {
                let v = i as f64 / 16.0;
                vec![v, v, (i * 7 % 16) as f64 / 16.0]
            })
            .collect();
        let illum: Vec<Vec<f64>> = states
            .iter()
            .map(|s| vec![1.0 + s[0] + 2.0 * s[1] + 3.0 * s[2]])
            .collect();
        let err = fit(&states, &illum).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rank-deficient"), "got: {msg}");
        assert!(msg.contains('2'), "expected offending column 2 in: {msg}");
    }

    #[test]
    fn predict_zero_is_intercept_and_stacked_matches() {
        let model = SurrogateModel::from_parts(
            vec![7.0, 8.5],
            vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]],
        )
        .unwrap();
        assert_eq!(model.predict(&[0.0, 0.0, 0.0]).unwrap(), vec![7.0, 8.5]);
        let qs = vec![
            vec![0.1, 0.9, 0.3],
            vec![0.0, 0.0, 0.0],
            vec![1.0, 1.0, 1.0],
        ];
        let stacked = model.predict_stacked(&qs).unwrap();
        for (row, q) in stacked.iter().zip(&qs) {
            assert_eq!(row, &model.predict(q).unwrap());
        }
    }

    #[test]
    fn affinity_of_predictions() {
        let layout = small_layout();
        let set = generate_training_set(&layout, 64, 3).unwrap();
        let model = fit(&set.states, &set.illum).unwrap();
        let q1 = vec![0.2, 0.8, 0.5];
        let q2 = vec![0.9, 0.1, 0.4];
        for &lam in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let mix: Vec<f64> = q1
                .iter()
                .zip(&q2)
                .map(|(a, b)| lam * a + (1.0 - lam) * b)
                .collect();
            let em = model.predict(&mix).unwrap();
            let e1 = model.predict(&q1).unwrap();
            let e2 = model.predict(&q2).unwrap();
            for i in 0..em.len() {
                let expect = lam * e1[i] + (1.0 - lam) * e2[i];
                assert_relative_eq!(em[i], expect, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn monotone_in_scalings() {
        let layout = small_layout();
        let set = generate_training_set(&layout, 64, 11).unwrap();
        let model = fit(&set.states, &set.illum).unwrap();
        let base = vec![0.4, 0.4, 0.4];
        let e0 = model.predict(&base).unwrap();
        for j in 0..3 {
            let mut up = base.clone();
            up[j] = 0.9;
            let e1 = model.predict(&up).unwrap();
            for i in 0..e0.len() {
                assert!(e1[i] >= e0[i] - 1e-12);
            }
        }
    }

    #[test]
    fn refit_on_own_predictions_is_idempotent() {
        let layout = small_layout();
        let set = generate_training_set(&layout, 64, 21).unwrap();
        let model = fit(&set.states, &set.illum).unwrap();
        let re_illum = model.predict_stacked(&set.states).unwrap();
        let refit = fit(&set.states, &re_illum).unwrap();
        for p in 0..model.point_count() {
            assert_relative_eq!(
                model.intercept()[p],
                refit.intercept()[p],
                max_relative = 1e-8,
                epsilon = 1e-10
            );
            for l in 0..model.luminaire_count() {
                assert_relative_eq!(
                    model.coefficients_row(p)[l],
                    refit.coefficients_row(p)[l],
                    max_relative = 1e-8,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn validate_perfect_and_constant() {
        let model = SurrogateModel::from_parts(vec![5.0], vec![vec![2.0]]).unwrap();
        let states = vec![vec![0.0], vec![0.5], vec![1.0]];
        let illum = vec![vec![5.0], vec![6.0], vec![7.0]];
        assert_relative_eq!(validate(&model, &states, &illum).unwrap(), 1.0);
        // Constant predictor at the holdout mean scores zero.
        let flat = SurrogateModel::from_parts(vec![6.0], vec![vec![0.0]]).unwrap();
        assert_relative_eq!(
            validate(&flat, &states, &illum).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn case_study_layout_meets_new_system_targets() {
        let spec = ZoneSpec::default();
        let layout = generate_case_study_layout(&spec).unwrap();
        assert_eq!(layout.luminaire_count(), 76);
        // 57.73 x 4.80 m plane at 1 m spacing: 58 x 5 points.
        assert_eq!(layout.point_count(), 290);
        let fresh = vec![1.0; 76];
        let e = analytic_oracle(&layout, &fresh).unwrap();
        let avg = average_illuminance(&e).unwrap();
        let u = uniformity(&e).unwrap();
        assert_relative_eq!(avg, 600.0, max_relative = 1e-6);
        assert!(u >= 0.7, "new-system uniformity {u} below 0.7");
    }
}
