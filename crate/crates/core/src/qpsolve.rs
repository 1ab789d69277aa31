//! Dense primal active-set solver for convex quadratic programs
//!
//! ```text
//! minimize 1/2 x' H x + g' x + c   subject to   A_e x = b_e,  A_i x >= b_i.
//! ```
//!
//! Equalities are eliminated through a null-space basis. A feasible start
//! comes from an LP over one shared slack; both phases use the same
//! active-set iteration, which also follows zero-curvature rays.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::constraints::LinearSystem;
use crate::error::{Error, Result};
use crate::objectives::Objective;

pub const STATIONARITY_TOL: f64 = 1e-7;
pub const PRIMAL_TOL: f64 = 1e-8;
pub const DUAL_TOL: f64 = 1e-8;
pub const COMPLEMENTARITY_TOL: f64 = 1e-8;
/// Relative (to `trace(H) / dim`) negative eigenvalue tolerated in `H`.
pub const PSD_TOL: f64 = 1e-8;

const RANK_TOL: f64 = 1e-10;
const ACTIVE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticProgram {
    pub h: DMatrix<f64>,
    pub g: DVector<f64>,
    pub c: f64,
    pub a_eq: DMatrix<f64>,
    pub b_eq: DVector<f64>,
    pub a_in: DMatrix<f64>,
    pub b_in: DVector<f64>,
    pub initial: Option<DVector<f64>>,
}

impl QuadraticProgram {
    /// Unconstrained program of dimension `n` with the given objective.
    pub fn new(h: DMatrix<f64>, g: DVector<f64>, c: f64) -> Self {
        let n = g.len();
        Self {
            h,
            g,
            c,
            a_eq: DMatrix::zeros(0, n),
            b_eq: DVector::zeros(0),
            a_in: DMatrix::zeros(0, n),
            b_in: DVector::zeros(0),
            initial: None,
        }
    }

    /// Program minimizing `objective` subject to `system`.
    pub fn from_parts(objective: &Objective, system: &LinearSystem<f64>) -> Self {
        let n = objective.g.len();
        let block = |rows: &[Vec<f64>]| DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
        Self::new(objective.h.clone(), objective.g.clone(), objective.c)
            .with_equalities(block(&system.eq_matrix), DVector::from_column_slice(&system.eq_rhs))
            .with_inequalities(block(&system.ineq_matrix), DVector::from_column_slice(&system.ineq_rhs))
    }

    pub fn with_equalities(mut self, a: DMatrix<f64>, b: DVector<f64>) -> Self {
        self.a_eq = a;
        self.b_eq = b;
        self
    }

    pub fn with_inequalities(mut self, a: DMatrix<f64>, b: DVector<f64>) -> Self {
        self.a_in = a;
        self.b_in = b;
        self
    }

    pub fn with_initial(mut self, x: DVector<f64>) -> Self {
        self.initial = Some(x);
        self
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn value(&self, x: &DVector<f64>) -> f64 {
        0.5 * x.dot(&(&self.h * x)) + self.g.dot(x) + self.c
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let ok = self.h.nrows() == n
            && self.h.ncols() == n
            && self.a_eq.ncols() == n
            && self.a_eq.nrows() == self.b_eq.len()
            && self.a_in.ncols() == n
            && self.a_in.nrows() == self.b_in.len()
            && self.initial.as_ref().is_none_or(|x| x.len() == n);
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension("quadratic program blocks have inconsistent sizes".into()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpStatus {
    Optimal,
    Infeasible,
    MaxIter,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QpSolution {
    pub rho: DVector<f64>,
    pub value: f64,
    /// Inequality rows in the final working set, ascending.
    pub active_set: Vec<usize>,
    pub status: QpStatus,
    pub iterations: usize,
    /// Smallest achievable shared slack from phase 1; zero when feasible.
    pub phase1_violation: f64,
    /// Objective value after each active-set iteration, starting at the
    /// feasible point from phase 1.
    pub trace: Vec<f64>,
}

/// Residuals of the KKT conditions at a point, with multipliers fitted by
/// least squares on the given working set.
#[derive(Clone, Debug, PartialEq)]
pub struct KktReport {
    pub stationarity: f64,
    pub stationarity_scale: f64,
    pub primal: f64,
    pub dual: f64,
    pub complementarity: f64,
    pub eq_multipliers: DVector<f64>,
    pub ineq_multipliers: DVector<f64>,
}

impl KktReport {
    pub fn holds(&self) -> bool {
        self.stationarity <= STATIONARITY_TOL * self.stationarity_scale
            && self.primal <= PRIMAL_TOL
            && self.dual >= -DUAL_TOL
            && self.complementarity <= COMPLEMENTARITY_TOL
    }
}

fn normalized_rows(a: &DMatrix<f64>, b: &DVector<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let mut a = a.clone();
    let mut b = b.clone();
    for i in 0..a.nrows() {
        let n = a.row(i).norm();
        if n > 0.0 {
            a.row_mut(i).scale_mut(1.0 / n);
            b[i] /= n;
        }
    }
    (a, b)
}

/// KKT residuals on row-normalized constraints. Multipliers belong to the
/// equalities and to the inequality rows in `active`; all others are zero.
pub fn kkt_report(qp: &QuadraticProgram, x: &DVector<f64>, active: &[usize]) -> KktReport {
    let (ae, be) = normalized_rows(&qp.a_eq, &qp.b_eq);
    let (ai, bi) = normalized_rows(&qp.a_in, &qp.b_in);
    let grad = &qp.h * x + &qp.g;
    let (me, mw) = (ae.nrows(), active.len());
    let mut jt = DMatrix::zeros(qp.dim(), me + mw);
    for i in 0..me {
        jt.set_column(i, &ae.row(i).transpose());
    }
    for (k, &i) in active.iter().enumerate() {
        jt.set_column(me + k, &ai.row(i).transpose());
    }
    let mult = if me + mw == 0 {
        DVector::zeros(0)
    } else {
        jt.clone().svd(true, true).solve(&grad, 1e-13).unwrap_or_else(|_| DVector::zeros(me + mw))
    };
    let stationarity = if me + mw == 0 { grad.amax() } else { (&grad - &jt * &mult).amax() };
    let eq_res = if me == 0 { 0.0 } else { (&ae * x - &be).amax() };
    let slack = &ai * x - &bi;
    let ineq_viol = slack.iter().fold(0.0f64, |m, s| m.max(-s));
    let mut ineq = DVector::zeros(ai.nrows());
    for (k, &i) in active.iter().enumerate() {
        ineq[i] = mult[me + k];
    }
    let dual = ineq.iter().copied().fold(0.0f64, f64::min);
    let complementarity = (0..ai.nrows()).map(|i| (ineq[i] * slack[i]).abs()).fold(0.0, f64::max);
    let scale = 1.0f64.max((&qp.h * x).amax()).max(qp.g.amax());
    KktReport {
        stationarity,
        stationarity_scale: scale,
        primal: eq_res.max(ineq_viol),
        dual,
        complementarity,
        eq_multipliers: mult.rows(0, me).into_owned(),
        ineq_multipliers: ineq,
    }
}

/// Orthonormal basis of the null space of `a` (columns) and the rank of `a`.
fn null_space(a: &DMatrix<f64>, n: usize) -> (DMatrix<f64>, usize) {
    if a.nrows() == 0 {
        return (DMatrix::identity(n, n), 0);
    }
    let mut padded = DMatrix::zeros(a.nrows().max(n), n);
    padded.rows_mut(0, a.nrows()).copy_from(a);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let top = svd.singular_values.max();
    let null: Vec<usize> = (0..n).filter(|&i| svd.singular_values[i] <= RANK_TOL * top.max(1.0)).collect();
    let mut z = DMatrix::zeros(n, null.len());
    for (k, &i) in null.iter().enumerate() {
        z.set_column(k, &vt.row(i).transpose());
    }
    (z, n - null.len())
}

/// Problem restricted to `x = x0 + Z y` with inequalities `C y >= d`.
struct Reduced {
    x0: DVector<f64>,
    z: DMatrix<f64>,
    h: DMatrix<f64>,
    g: DVector<f64>,
    c: DMatrix<f64>,
    d: DVector<f64>,
}

/// Scaled and projected form: `x = D (x0 + Z y)`.
struct Prepared {
    scale: DVector<f64>,
    red: Reduced,
}

fn clip_psd(h: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = h.nrows();
    if n == 0 {
        return Ok(h.clone());
    }
    let sym = (h + h.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let tr = eig.eigenvalues.iter().map(|v| v.abs()).sum::<f64>() / n as f64;
    let min = eig.eigenvalues.min();
    if min < -PSD_TOL * tr.max(f64::MIN_POSITIVE) {
        return Err(Error::Dimension(format!("Hessian is not positive semidefinite (eigenvalue {min:e})")));
    }
    let clipped = eig.eigenvalues.map(|v| v.max(0.0));
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&clipped) * eig.eigenvectors.transpose())
}

fn prepare(qp: &QuadraticProgram) -> Result<std::result::Result<Prepared, f64>> {
    qp.validate()?;
    let n = qp.dim();
    let h = clip_psd(&qp.h)?;
    let scale = DVector::from_fn(n, |j, _| {
        let hj = h[(j, j)].sqrt();
        let cj = qp.a_eq.column(j).norm().max(qp.a_in.column(j).norm());
        if hj > 0.0 {
            1.0 / hj
        } else if cj > 0.0 {
            1.0 / cj
        } else {
            1.0
        }
    });
    let dm = DMatrix::from_diagonal(&scale);
    let hs = &dm * &h * &dm;
    let gs = dm.transpose() * &qp.g;
    let (ae, be) = normalized_rows(&(&qp.a_eq * &dm), &qp.b_eq);
    let (ai, bi) = normalized_rows(&(&qp.a_in * &dm), &qp.b_in);

    let (z, rank) = null_space(&ae, n);
    let x0 = if ae.nrows() == 0 {
        DVector::zeros(n)
    } else {
        ae.clone().svd(true, true).solve(&be, RANK_TOL).map_err(|e| Error::Dimension(e.to_string()))?
    };
    let residual = if ae.nrows() == 0 { 0.0 } else { (&ae * &x0 - &be).amax() };
    let _ = rank;
    if residual > PRIMAL_TOL {
        return Ok(Err(residual));
    }
    let hr = z.transpose() * &hs * &z;
    let gr = z.transpose() * (&hs * &x0 + &gs);
    let c = &ai * &z;
    let d = &bi - &ai * &x0;
    Ok(Ok(Prepared { scale, red: Reduced { x0, z, h: hr, g: gr, c, d } }))
}

impl Prepared {
    fn to_original(&self, y: &DVector<f64>) -> DVector<f64> {
        (&self.red.x0 + &self.red.z * y).component_mul(&self.scale)
    }

    fn reduce(&self, x: &DVector<f64>) -> DVector<f64> {
        let xs = x.component_div(&self.scale);
        self.red.z.transpose() * (xs - &self.red.x0)
    }
}

/// Rows of `c` among `candidates` (in order) that are linearly independent
/// of `base` and of each other.
fn independent_rows(c: &DMatrix<f64>, base: &[usize], candidates: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut w = base.to_vec();
    for i in candidates {
        if w.contains(&i) {
            continue;
        }
        let mut trial = w.clone();
        trial.push(i);
        let m = c.select_rows(trial.iter());
        let sv = m.svd(false, false).singular_values;
        if sv.min() > 1e-9 * sv.max().max(1.0) && trial.len() <= c.ncols() {
            w = trial;
        }
    }
    w
}

enum Outcome {
    Optimal,
    Unbounded,
    MaxIter,
}

struct ActiveSetRun {
    y: DVector<f64>,
    working: Vec<usize>,
    outcome: Outcome,
    iterations: usize,
    trace: Vec<f64>,
}

/// Primal active-set iteration on `min 1/2 y'Hy + g'y, C y >= d` from a
/// feasible `y` with working set `working`.
fn active_set(h: &DMatrix<f64>, g: &DVector<f64>, c: &DMatrix<f64>, d: &DVector<f64>, mut y: DVector<f64>, mut working: Vec<usize>, max_iter: usize) -> ActiveSetRun {
    let m = y.len();
    let mut iterations = 0;
    let objective = |y: &DVector<f64>| 0.5 * y.dot(&(h * y)) + g.dot(y);
    let mut trace = vec![objective(&y)];
    loop {
        if iterations >= max_iter {
            return ActiveSetRun { y, working, outcome: Outcome::MaxIter, iterations, trace };
        }
        iterations += 1;
        let grad = h * &y + g;
        let gscale = grad.amax().max(1.0);
        let cw = c.select_rows(working.iter());
        let (zw, _) = null_space(&cw, m);
        let (p, ray) = subspace_step(h, &grad, &zw, gscale);
        let pnorm = p.amax();
        let fval = objective(&y);
        let decrease = if ray { f64::INFINITY } else { -(grad.dot(&p) + 0.5 * p.dot(&(h * &p))) };
        if pnorm <= 1e-13 * (1.0 + y.amax()) || decrease <= 1e-13 * (1.0 + fval.abs()) {
            if working.is_empty() {
                return ActiveSetRun { y, working, outcome: Outcome::Optimal, iterations, trace };
            }
            let mult = cw.transpose().svd(true, true).solve(&grad, 1e-13).unwrap_or_else(|_| DVector::zeros(working.len()));
            let mut drop: Option<(usize, f64)> = None;
            for (k, &i) in working.iter().enumerate() {
                let mu = mult[k];
                if mu < -DUAL_TOL * gscale {
                    let better = match drop {
                        None => true,
                        Some((kk, best)) => mu < best || (mu == best && i < working[kk]),
                    };
                    if better {
                        drop = Some((k, mu));
                    }
                }
            }
            match drop {
                None => return ActiveSetRun { y, working, outcome: Outcome::Optimal, iterations, trace },
                Some((k, _)) => {
                    working.remove(k);
                }
            }
            continue;
        }
        let curvature = p.dot(&(h * &p));
        let slope = grad.dot(&p);
        let mut alpha = if ray {
            if curvature > 1e-14 * p.norm_squared() {
                -slope / curvature
            } else {
                f64::INFINITY
            }
        } else {
            1.0
        };
        let mut blocking: Option<usize> = None;
        for i in 0..c.nrows() {
            if working.contains(&i) {
                continue;
            }
            let cp = c.row(i).dot(&p.transpose());
            if cp < -1e-14 * pnorm {
                let room = (d[i] - c.row(i).dot(&y.transpose())).min(0.0);
                let a = room / cp;
                if a < alpha {
                    alpha = a;
                    blocking = Some(i);
                }
            }
        }
        if alpha.is_infinite() {
            return ActiveSetRun { y, working, outcome: Outcome::Unbounded, iterations, trace };
        }
        y += p * alpha;
        trace.push(objective(&y));
        if let Some(i) = blocking {
            working.push(i);
        }
    }
}

/// Minimizer of the model along the null space `zw`, or a descent ray of
/// zero curvature when the reduced gradient has a component there.
fn subspace_step(h: &DMatrix<f64>, grad: &DVector<f64>, zw: &DMatrix<f64>, gscale: f64) -> (DVector<f64>, bool) {
    let m = grad.len();
    if zw.ncols() == 0 {
        return (DVector::zeros(m), false);
    }
    let k = zw.transpose() * h * zw;
    let r = zw.transpose() * grad;
    let eig = SymmetricEigen::new((&k + k.transpose()) * 0.5);
    let top = eig.eigenvalues.amax().max(1e-300);
    let tol = 1e-14 * top.max(1.0);
    let mut newton = DVector::zeros(k.nrows());
    let mut flat = DVector::zeros(k.nrows());
    for (j, lam) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(j);
        let coef = v.dot(&r);
        if *lam > tol {
            newton -= v * (coef / lam);
        } else {
            flat -= v * coef;
        }
    }
    if flat.amax() > 1e-10 * gscale {
        (zw * flat, true)
    } else {
        (zw * newton, false)
    }
}

/// Feasible point of the reduced problem from a start `y`, by minimizing a
/// shared slack `t` over `C y + t >= d`, `t >= 0`.
fn reduced_phase1(red: &Reduced, start: DVector<f64>, max_iter: usize) -> (DVector<f64>, f64) {
    let m = start.len();
    let rows = red.c.nrows();
    if rows == 0 {
        return (start, 0.0);
    }
    let viol = (0..rows).map(|i| red.d[i] - red.c.row(i).dot(&start.transpose())).fold(0.0f64, f64::max);
    if viol <= 0.0 {
        return (start, 0.0);
    }
    let mut c = DMatrix::zeros(rows + 1, m + 1);
    c.view_mut((0, 0), (rows, m)).copy_from(&red.c);
    for i in 0..=rows {
        c[(i, m)] = 1.0;
    }
    let mut d = DVector::zeros(rows + 1);
    d.rows_mut(0, rows).copy_from(&red.d);
    let mut y = DVector::zeros(m + 1);
    y.rows_mut(0, m).copy_from(&start);
    y[m] = viol;
    let active: Vec<usize> = (0..rows).filter(|&i| (c.row(i).dot(&y.transpose()) - d[i]).abs() <= ACTIVE_TOL * (1.0 + viol)).collect();
    let working = independent_rows(&c, &[], active.into_iter());
    let mut g = DVector::zeros(m + 1);
    g[m] = 1.0;
    let h = DMatrix::zeros(m + 1, m + 1);
    let run = active_set(&h, &g, &c, &d, y, working, max_iter);
    let t = run.y[m].max(0.0);
    (run.y.rows(0, m).into_owned(), t)
}

fn max_iterations(qp: &QuadraticProgram) -> usize {
    100 * (qp.dim() + qp.a_eq.nrows() + qp.a_in.nrows()).max(1)
}

fn start_point(prep: &Prepared, qp: &QuadraticProgram) -> DVector<f64> {
    match &qp.initial {
        Some(x) => prep.reduce(x),
        None => DVector::zeros(prep.red.z.ncols()),
    }
}

/// Feasible point of the constraint system. A feasible `initial` is returned
/// unchanged; otherwise the iteration starts from the projection of
/// `initial` (or the minimum-norm equality solution) onto the equalities.
pub fn phase1(qp: &QuadraticProgram) -> Result<DVector<f64>> {
    if let Some(x) = &qp.initial {
        qp.validate()?;
        if kkt_report(&QuadraticProgram::new(DMatrix::zeros(qp.dim(), qp.dim()), DVector::zeros(qp.dim()), 0.0).with_equalities(qp.a_eq.clone(), qp.b_eq.clone()).with_inequalities(qp.a_in.clone(), qp.b_in.clone()), x, &[]).primal <= PRIMAL_TOL {
            return Ok(x.clone());
        }
    }
    let prep = match prepare(qp)? {
        Ok(p) => p,
        Err(res) => return Err(Error::Infeasible(format!("equality constraints inconsistent (residual {res:e})"))),
    };
    if qp.a_in.nrows() == 0 && qp.initial.is_none() {
        if qp.a_eq.nrows() == 0 {
            return Ok(DVector::zeros(qp.dim()));
        }
        return qp.a_eq.clone().svd(true, true).solve(&qp.b_eq, RANK_TOL).map_err(|e| Error::Dimension(e.to_string()));
    }
    let (y, t) = reduced_phase1(&prep.red, start_point(&prep, qp), max_iterations(qp));
    if t > PRIMAL_TOL {
        return Err(Error::Infeasible(format!("minimal inequality violation {t:e}")));
    }
    Ok(prep.to_original(&y))
}

pub fn solve(qp: &QuadraticProgram) -> Result<QpSolution> {
    let n = qp.dim();
    let prep = match prepare(qp)? {
        Ok(p) => p,
        Err(res) => {
            let x = DVector::zeros(n);
            return Ok(QpSolution { value: qp.value(&x), rho: x, active_set: Vec::new(), status: QpStatus::Infeasible, iterations: 0, phase1_violation: res, trace: Vec::new() });
        }
    };
    let max_iter = max_iterations(qp);
    let start = start_point(&prep, qp);
    let (y, t) = reduced_phase1(&prep.red, start, max_iter);
    if t > PRIMAL_TOL {
        let x = prep.to_original(&y);
        return Ok(QpSolution { value: qp.value(&x), rho: x, active_set: Vec::new(), status: QpStatus::Infeasible, iterations: 0, phase1_violation: t, trace: Vec::new() });
    }
    let red = &prep.red;
    let active = (0..red.c.nrows()).filter(|&i| (red.c.row(i).dot(&y.transpose()) - red.d[i]).abs() <= ACTIVE_TOL);
    let working = independent_rows(&red.c, &[], active);
    let run = active_set(&red.h, &red.g, &red.c, &red.d, y, working, max_iter);
    let x = prep.to_original(&run.y);
    let mut active_set = run.working;
    active_set.sort_unstable();
    let status = match run.outcome {
        Outcome::Optimal => QpStatus::Optimal,
        Outcome::Unbounded => QpStatus::Unbounded,
        Outcome::MaxIter => QpStatus::MaxIter,
    };
    // The reduced objective differs from the original by a constant.
    let offset = qp.value(&prep.to_original(&DVector::zeros(red.z.ncols()))) ;
    let trace = run.trace.iter().map(|f| f + offset).collect();
    Ok(QpSolution { value: qp.value(&x), rho: x, active_set, status, iterations: run.iterations, phase1_violation: t, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_bound() {
        let qp = QuadraticProgram::new(DMatrix::from_element(1, 1, 2.0), DVector::zeros(1), 0.0)
            .with_inequalities(DMatrix::from_element(1, 1, 1.0), DVector::from_element(1, 1.0));
        let s = solve(&qp).unwrap();
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.rho[0] - 1.0).abs() < 1e-12);
        assert!((s.value - 1.0).abs() < 1e-12);
        assert_eq!(s.active_set, vec![0]);
    }

    #[test]
    fn symmetric_equality() {
        let qp = QuadraticProgram::new(DMatrix::identity(2, 2), DVector::zeros(2), 0.0)
            .with_equalities(DMatrix::from_row_slice(1, 2, &[1.0, 1.0]), DVector::from_element(1, 2.0))
            .with_inequalities(DMatrix::identity(2, 2), DVector::zeros(2));
        let s = solve(&qp).unwrap();
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.rho[0] - 1.0).abs() < 1e-12 && (s.rho[1] - 1.0).abs() < 1e-12);
        assert!(kkt_report(&qp, &s.rho, &s.active_set).holds());
    }

    #[test]
    fn linear_program_and_unbounded_ray() {
        let lp = QuadraticProgram::new(DMatrix::zeros(2, 2), DVector::from_vec(vec![1.0, 2.0]), 0.0)
            .with_inequalities(DMatrix::identity(2, 2), DVector::from_vec(vec![1.0, -1.0]));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.rho[0] - 1.0).abs() < 1e-12 && (s.rho[1] + 1.0).abs() < 1e-12);
        let open = QuadraticProgram::new(DMatrix::zeros(2, 2), DVector::from_vec(vec![1.0, -1.0]), 0.0)
            .with_inequalities(DMatrix::identity(2, 2), DVector::zeros(2));
        assert_eq!(solve(&open).unwrap().status, QpStatus::Unbounded);
    }

    #[test]
    fn infeasible_systems() {
        let eq = QuadraticProgram::new(DMatrix::identity(1, 1), DVector::zeros(1), 0.0)
            .with_equalities(DMatrix::from_column_slice(2, 1, &[1.0, 1.0]), DVector::from_vec(vec![0.0, 1.0]));
        assert_eq!(solve(&eq).unwrap().status, QpStatus::Infeasible);
        let ineq = QuadraticProgram::new(DMatrix::identity(1, 1), DVector::zeros(1), 0.0)
            .with_inequalities(DMatrix::from_column_slice(2, 1, &[1.0, -1.0]), DVector::from_vec(vec![1.0, 0.0]));
        let s = solve(&ineq).unwrap();
        assert_eq!(s.status, QpStatus::Infeasible);
        assert!((s.phase1_violation - 0.5).abs() < 1e-9);
        assert!(matches!(phase1(&ineq), Err(Error::Infeasible(_))));
    }

    #[test]
    fn rejects_indefinite_hessian() {
        let qp = QuadraticProgram::new(DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0])), DVector::zeros(2), 0.0);
        assert!(matches!(solve(&qp), Err(Error::Dimension(_))));
    }

    #[test]
    fn feasible_initial_is_kept() {
        let qp = QuadraticProgram::new(DMatrix::identity(2, 2), DVector::zeros(2), 0.0)
            .with_inequalities(DMatrix::identity(2, 2), DVector::zeros(2))
            .with_initial(DVector::from_vec(vec![3.0, 4.0]));
        assert_eq!(phase1(&qp).unwrap(), DVector::from_vec(vec![3.0, 4.0]));
    }
}
