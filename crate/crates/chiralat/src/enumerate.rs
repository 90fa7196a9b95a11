//! Exact enumeration of integer points in rational ellipsoids.
//!
//! Fincke–Pohst search on a positive definite rational Gram matrix with a
//! rational center, using an exact LDL^T decomposition so all coordinate
//! bounds are computed in integer/rational arithmetic.  Linear inequality
//! constraints are pruned at every search depth by a Cauchy–Schwarz bound in
//! the decomposed coordinates, which requires no square roots.

use crate::linalg::{self, Int, RMat, Rat};
use num_traits::{Signed, Zero};

/// Linear side condition `a . y <= bound` on the integer points.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub a: Vec<Rat>,
    pub bound: Rat,
}

/// Number of worker threads: `CHIRALAT_THREADS` if set, else the available
/// parallelism.
pub fn thread_count() -> usize {
    std::env::var("CHIRALAT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// LDL^T decomposition A = R^T D R with R unit upper triangular and D
/// positive diagonal.  Returns None if A is not positive definite.
fn ldl(a: &RMat) -> Option<(Vec<Rat>, RMat)> {
    let n = a.len();
    let mut m = a.clone();
    let mut r = vec![vec![Rat::zero(); n]; n];
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        let di = m[i][i].clone();
        if !di.is_positive() {
            return None;
        }
        r[i][i] = Rat::from(Int::from(1));
        for j in (i + 1)..n {
            r[i][j] = &m[i][j] / &di;
        }
        for k in (i + 1)..n {
            for l in k..n {
                let upd = &m[i][k] * &m[i][l] / &di;
                m[k][l] -= &upd;
                if l != k {
                    let v = m[k][l].clone();
                    m[l][k] = v;
                }
            }
        }
        d.push(di);
    }
    Some((d, r))
}

struct PreppedConstraint {
    /// b = R^{-T} a, so that a . (y - c) equals the dot product of b with the
    /// decomposed coordinates s.
    b: Vec<Rat>,
    /// bound - a . c.
    bound: Rat,
    /// w[i] = sum_{k<i} b_k^2 / d_k; the squared Cauchy–Schwarz norm of the
    /// still-free part of the constraint at depth i.
    w: Vec<Rat>,
}

struct Search {
    n: usize,
    d: Vec<Rat>,
    r: RMat,
    center: Vec<Rat>,
    cons: Vec<PreppedConstraint>,
}

struct State {
    y: Vec<Int>,
    u: Vec<Rat>,
    fixed: Vec<Rat>,
    out: Vec<Vec<Int>>,
}

impl Search {
    /// Largest integer interval [lo, hi] with d (m - t)^2 <= bound2.
    fn coord_range(t: &Rat, bound2: &Rat, d: &Rat) -> (Int, Int) {
        let s2 = bound2 / d;
        let g = linalg::rat_sqrt_floor(&s2);
        // hi = floor(t + sigma), lo = ceil(t - sigma); the range may be
        // empty when no integer lies in the interval.
        let mut hi: Int = t.floor().to_integer() + &g + 1;
        loop {
            let diff = Rat::from(hi.clone()) - t;
            if !diff.is_positive() || &diff * &diff <= s2 {
                break;
            }
            hi -= 1;
        }
        let mut lo: Int = t.ceil().to_integer() - &g - 1;
        loop {
            let diff = t - Rat::from(lo.clone());
            if !diff.is_positive() || &diff * &diff <= s2 {
                break;
            }
            lo += 1;
        }
        (lo, hi)
    }

    fn descend(&self, level: usize, budget: Rat, st: &mut State) {
        let i = level;
        let h: Rat = ((i + 1)..self.n).map(|j| &self.r[i][j] * &st.u[j]).sum();
        let t = &self.center[i] - &h;
        let (lo, hi) = Self::coord_range(&t, &budget, &self.d[i]);
        let mut m = lo;
        while m <= hi {
            self.visit(i, &m, &h, &budget, st);
            m += 1;
        }
    }

    fn visit(&self, i: usize, m: &Int, h: &Rat, budget: &Rat, st: &mut State) {
        let u = Rat::from(m.clone()) - &self.center[i];
        let s = &u + h;
        let next_budget = budget - &self.d[i] * &s * &s;
        debug_assert!(!next_budget.is_negative());
        let saved_fixed: Vec<Rat> = st.fixed.clone();
        for (k, c) in self.cons.iter().enumerate() {
            st.fixed[k] += &c.b[i] * &s;
            let slack = &st.fixed[k] - &c.bound;
            // Over the free coordinates, a . (y - c) can fall below the fixed
            // part by at most sqrt(w_i * remaining budget).
            if slack.is_positive() && &slack * &slack > &c.w[i] * &next_budget {
                st.fixed.clone_from(&saved_fixed);
                return;
            }
        }
        st.y[i] = m.clone();
        st.u[i] = u;
        if i == 0 {
            st.out.push(st.y.clone());
        } else {
            self.descend(i - 1, next_budget, st);
        }
        st.fixed = saved_fixed;
    }
}

/// All integer vectors y with (y - center)^T gram (y - center) <= radius2
/// satisfying every constraint, in lexicographic order.  `gram` must be
/// positive definite.  Panics if it is not.
///
/// Dispatches to an exact scaled-integer search when every scale factor and
/// worst-case magnitude fits comfortably in i128, falling back to the
/// arbitrary-precision rational search otherwise.  Both paths are exact.
pub fn enumerate_ellipsoid(
    gram: &RMat,
    center: &[Rat],
    radius2: &Rat,
    constraints: &[LinearConstraint],
) -> Vec<Vec<Int>> {
    if let Some(out) = int_search(gram, center, radius2, constraints) {
        return out;
    }
    enumerate_ellipsoid_rational(gram, center, radius2, constraints)
}

/// Arbitrary-precision reference implementation of the search.
pub fn enumerate_ellipsoid_rational(
    gram: &RMat,
    center: &[Rat],
    radius2: &Rat,
    constraints: &[LinearConstraint],
) -> Vec<Vec<Int>> {
    let n = gram.len();
    if radius2.is_negative() {
        return Vec::new();
    }
    if n == 0 {
        let feasible = constraints.iter().all(|c| !c.bound.is_negative());
        return if feasible { vec![Vec::new()] } else { Vec::new() };
    }
    let (d, r) = ldl(gram).expect("Gram matrix must be positive definite");
    let cons: Vec<PreppedConstraint> = constraints
        .iter()
        .map(|c| {
            assert_eq!(c.a.len(), n);
            // Solve R^T b = a (unit lower triangular back-substitution).
            let mut b = vec![Rat::zero(); n];
            for k in 0..n {
                let tail: Rat = (0..k).map(|j| &r[j][k] * &b[j]).sum();
                b[k] = &c.a[k] - &tail;
            }
            let mut w = vec![Rat::zero(); n + 1];
            for k in 0..n {
                let step = &b[k] * &b[k] / &d[k];
                w[k + 1] = &w[k] + &step;
            }
            let shift: Rat = (0..n).map(|j| &c.a[j] * &center[j]).sum();
            PreppedConstraint {
                b,
                bound: &c.bound - &shift,
                w,
            }
        })
        .collect();
    let search = Search {
        n,
        d,
        r,
        center: center.to_vec(),
        cons,
    };

    let top = n - 1;
    let t = search.center[top].clone();
    let (lo, hi) = Search::coord_range(&t, radius2, &search.d[top]);
    let mut values = Vec::new();
    let mut m = lo;
    while m <= hi {
        values.push(m.clone());
        m += 1;
    }

    let workers = thread_count().min(values.len().max(1));
    let run_chunk = |chunk: &[Int]| {
        let mut st = State {
            y: vec![Int::zero(); n],
            u: vec![Rat::zero(); n],
            fixed: vec![Rat::zero(); search.cons.len()],
            out: Vec::new(),
        };
        for m in chunk {
            search.visit(top, m, &Rat::zero(), radius2, &mut st);
        }
        st.out
    };

    let mut out = if workers <= 1 {
        run_chunk(&values)
    } else {
        let chunks: Vec<Vec<Int>> = (0..workers)
            .map(|w| {
                values
                    .iter()
                    .skip(w)
                    .step_by(workers)
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| scope.spawn(|| run_chunk(chunk)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker thread panicked"))
                .collect::<Vec<_>>()
        })
    };
    out.sort();
    out
}

/// Fixed-point scale (bits) for the conservative Cauchy–Schwarz pruning
/// coefficients in the integer path.
const W_BITS: u32 = 20;
/// Magnitude ceiling for every audited intermediate product.
fn magnitude_limit() -> Int {
    Int::from(1) << 105
}

/// Floor of the integer square root, computed with Newton iteration from a
/// bit-length seed; exact for all non-negative inputs.
fn isqrt_i128(x: i128) -> i128 {
    if x <= 0 {
        return 0;
    }
    let bits = 128 - x.leading_zeros();
    let mut r: i128 = 1 << (bits / 2 + 1);
    loop {
        let next = (r + x / r) / 2;
        if next >= r {
            break;
        }
        r = next;
    }
    while r * r > x {
        r -= 1;
    }
    r
}

struct IntCons {
    /// Integer constraint coefficients in the original coordinates, used for
    /// the exact feasibility check at the leaves.
    a: Vec<i128>,
    /// (bound - a . center) scaled by Dc.
    bound_dc: i128,
    /// Cauchy–Schwarz pruning data; None disables pruning for this
    /// constraint (exactness is unaffected).
    prune: Option<IntPrune>,
}

struct IntPrune {
    /// b_i * Dbk with b = R^{-T} a.
    bq: Vec<i128>,
    /// Dbk * ds: the scale of the tracked fixed part.
    sk: i128,
    /// (bound - a . center) * dk2.
    bound_num: i128,
    /// Denominator of the shifted bound.
    dk2: i128,
    /// ceil(w_i * 2^W_BITS): conservative upper bounds for the squared
    /// Cauchy–Schwarz norms of the still-free constraint part.
    w_hi: Vec<i128>,
    /// 2^W_BITS * db.
    cmp_l: i128,
    /// (sk * dk2)^2.
    cmp_r: i128,
}

struct IntSearch {
    n: usize,
    /// d_i * Dd.
    dq: Vec<i128>,
    /// r[i][j] * Dr.
    rq: Vec<Vec<i128>>,
    /// center_i * Dc.
    cq: Vec<i128>,
    dcq: i128,
    drq: i128,
    /// Dr * Dc: the scale of the decomposed coordinates s and of t.
    ds: i128,
    /// Dd * ds^2.
    k1: i128,
    /// Budget denominator: lcm(denom(radius2), k1).
    db: i128,
    /// db / k1.
    kb: i128,
    cons: Vec<IntCons>,
}

struct IntState {
    y: Vec<i128>,
    /// (y_j - c_j) * Dc for the already-fixed coordinates.
    ui: Vec<i128>,
    /// Fixed part of b . s per constraint, scaled by sk (0 for disabled).
    fb: Vec<i128>,
    out: Vec<Vec<i128>>,
}

impl IntSearch {
    fn descend(&self, i: usize, budget: i128, st: &mut IntState) {
        let h: i128 = ((i + 1)..self.n).map(|j| self.rq[i][j] * st.ui[j]).sum();
        let t = self.cq[i] * self.drq - h;
        // cond(m): dq_i (ds m - t)^2 db <= budget k1, i.e. (ds m - t)^2 <=
        // floor(budget k1 / (dq_i db)), i.e. |ds m - t| <= g.  budget * k1
        // is audited to fit i128.
        let f = budget * self.k1 / (self.dq[i] * self.db);
        let g = isqrt_i128(f);
        let lo = (t - g).div_euclid(self.ds)
            + if (t - g).rem_euclid(self.ds) != 0 { 1 } else { 0 };
        let hi = (t + g).div_euclid(self.ds);
        let mut m = lo;
        while m <= hi {
            self.visit(i, m, t, budget, st);
            m += 1;
        }
    }

    fn visit(&self, i: usize, m: i128, t: i128, budget: i128, st: &mut IntState) {
        let s_ds = self.ds * m - t;
        let next_budget = budget - self.dq[i] * s_ds * s_ds * self.kb;
        debug_assert!(next_budget >= 0);
        let ui = m * self.dcq - self.cq[i];
        for (k, c) in self.cons.iter().enumerate() {
            let Some(p) = &c.prune else { continue };
            let fb = st.fb[k] + p.bq[i] * s_ds;
            // slack = fb / sk - bound_num / dk2, cleared of denominators.
            let slack = fb * p.dk2 - p.bound_num * p.sk;
            // Over the free coordinates, b . s can fall below the fixed part
            // by at most sqrt(w_i * next_budget); w_hi rounds w_i up, so the
            // cut is conservative and never excludes a feasible point.  At
            // i = 0 the test is the exact feasibility check.
            if slack > 0 && slack * slack * p.cmp_l > p.w_hi[i] * next_budget * p.cmp_r {
                return;
            }
        }
        for (k, c) in self.cons.iter().enumerate() {
            if let Some(p) = &c.prune {
                st.fb[k] += p.bq[i] * s_ds;
            }
        }
        st.y[i] = m;
        st.ui[i] = ui;
        if i == 0 {
            // Exact leaf check for constraints without pruning data.
            let ok = self.cons.iter().all(|c| {
                c.prune.is_some()
                    || (0..self.n).map(|j| c.a[j] * st.ui[j]).sum::<i128>() <= c.bound_dc
            });
            if ok {
                st.out.push(st.y.clone());
            }
        } else {
            self.descend(i - 1, next_budget, st);
        }
        for (k, c) in self.cons.iter().enumerate() {
            if let Some(p) = &c.prune {
                st.fb[k] -= p.bq[i] * s_ds;
            }
        }
    }
}

fn to_i128(x: &Int) -> Option<i128> {
    i128::try_from(x).ok()
}

fn denom_lcm<'a>(vals: impl Iterator<Item = &'a Rat>) -> Int {
    vals.fold(Int::from(1), |acc, v| num_integer::lcm(acc, v.denom().clone()))
}

/// Build the scaled-integer search if every scale factor and worst-case
/// intermediate magnitude passes the audit; None means "use the rational
/// path".
#[allow(clippy::too_many_lines)]
fn int_search(
    gram: &RMat,
    center: &[Rat],
    radius2: &Rat,
    constraints: &[LinearConstraint],
) -> Option<Vec<Vec<Int>>> {
    let n = gram.len();
    if n == 0 || radius2.is_negative() {
        return None;
    }
    let (d, r) = ldl(gram).expect("Gram matrix must be positive definite");
    let big = |x: i128| Int::from(x);
    let limit = magnitude_limit();

    let dd = denom_lcm(d.iter());
    let dr = denom_lcm(r.iter().flatten());
    let dc = denom_lcm(center.iter());
    let ds_int = &dr * &dc;
    let k1_int = &dd * &ds_int * &ds_int;
    let db_int = num_integer::lcm(radius2.denom().clone(), k1_int.clone());
    let kb_int = &db_int / &k1_int;
    let b0_int = (radius2 * Rat::from(db_int.clone())).to_integer();

    let dcq = to_i128(&dc)?;
    let drq = to_i128(&dr)?;
    let ds = to_i128(&ds_int)?;
    let k1 = to_i128(&k1_int)?;
    let db = to_i128(&db_int)?;
    let kb = to_i128(&kb_int)?;
    let b0 = to_i128(&b0_int)?;

    let dq: Vec<i128> = d
        .iter()
        .map(|x| to_i128(&(x * Rat::from(dd.clone())).to_integer()))
        .collect::<Option<_>>()?;
    let rq: Vec<Vec<i128>> = r
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| to_i128(&(x * Rat::from(dr.clone())).to_integer()))
                .collect::<Option<_>>()
        })
        .collect::<Option<_>>()?;
    let cq: Vec<i128> = center
        .iter()
        .map(|x| to_i128(&(x * Rat::from(dc.clone())).to_integer()))
        .collect::<Option<_>>()?;

    // Coordinate spread bound: |y_j - c_j|^2 <= radius2 * (gram^{-1})_jj.
    let inv = linalg::rmat_inverse(gram)?;
    let mut umax: Vec<Int> = Vec::with_capacity(n);
    for j in 0..n {
        let bound = radius2 * &inv[j][j];
        if bound.is_negative() {
            return None;
        }
        umax.push(linalg::rat_sqrt_floor(&bound) + 1);
    }

    // Magnitude audit in arbitrary precision: reject outright if any core
    // search product could approach i128 range.
    let audit = |x: &Int| -> bool { x.abs() <= limit };
    if !audit(&(&big(b0) * &big(k1))) {
        return None;
    }
    let ui_max: Vec<Int> = (0..n)
        .map(|j| &dc * &umax[j] + big(cq[j]).abs() + &dc)
        .collect();
    // Per-depth bound on |ds m - t| inside the search, plus probe slop.
    let mut s_max_all = Int::zero();
    for i in 0..n {
        let h_max: Int = ((i + 1)..n)
            .map(|j| big(rq[i][j]).abs() * &ui_max[j] * &dr / &dc)
            .sum::<Int>();
        let g_bound = linalg::isqrt(&(&big(b0) * &big(k1) / (&big(dq[i]) * &big(db)))) + 1;
        let s_max = &g_bound + &ds_int + &ds_int;
        if !audit(&(&big(dq[i]) * &s_max * &s_max * &big(db)))
            || !audit(&(&big(dq[i]) * &s_max * &s_max * &big(kb)))
            || !audit(&(big(cq[i]).abs() * &dr + &h_max + &s_max))
        {
            return None;
        }
        s_max_all = s_max_all.max(s_max);
    }

    // Constraint data: coefficients must be integral in the original
    // coordinates; the shifted bound must clear Dc.  Pruning data is
    // per-constraint and silently dropped when its own scales do not fit.
    let w_scale = Int::from(1i64 << W_BITS);
    let mut cons: Vec<IntCons> = Vec::with_capacity(constraints.len());
    for c in constraints {
        if c.a.len() != n {
            return None;
        }
        let mut a = Vec::with_capacity(n);
        for x in &c.a {
            if !x.is_integer() {
                return None;
            }
            a.push(to_i128(&x.to_integer())?);
        }
        let shift: Rat = (0..n).map(|j| &c.a[j] * &center[j]).sum();
        let shifted = &c.bound - &shift;
        let shifted_dc = &shifted * Rat::from(dc.clone());
        if !shifted_dc.is_integer() {
            return None;
        }
        let bound_dc = to_i128(&shifted_dc.to_integer())?;
        if !audit(&((0..n)
            .map(|j| big(a[j]).abs() * &ui_max[j])
            .sum::<Int>()
            + big(bound_dc).abs()))
        {
            return None;
        }
        // b = R^{-T} a for the Cauchy–Schwarz split.
        let mut b = vec![Rat::zero(); n];
        for k in 0..n {
            let tail: Rat = (0..k).map(|j| &r[j][k] * &b[j]).sum();
            b[k] = &c.a[k] - &tail;
        }
        let prune = (|| -> Option<IntPrune> {
            let dbk = denom_lcm(b.iter());
            let sk_int = &dbk * &ds_int;
            let dk2_int = shifted.denom().clone();
            let bq: Vec<i128> = b
                .iter()
                .map(|x| to_i128(&(x * Rat::from(dbk.clone())).to_integer()))
                .collect::<Option<_>>()?;
            let sk = to_i128(&sk_int)?;
            let dk2 = to_i128(&dk2_int)?;
            let bound_num = to_i128(&(&shifted * Rat::from(dk2_int.clone())).to_integer())?;
            let mut w_hi = vec![0i128; n + 1];
            let mut w = Rat::zero();
            for k in 0..n {
                w += &b[k] * &b[k] / &d[k];
                w_hi[k + 1] = to_i128(&(&w * &w_scale).ceil().to_integer())?;
            }
            let cmp_l = to_i128(&(&w_scale * &big(db)))?;
            let cmp_r = to_i128(&(&sk_int * &dk2_int * &sk_int * &dk2_int))?;
            // Worst-case fixed part and comparison products.
            let fb_max: Int = bq.iter().map(|&x| big(x).abs()).sum::<Int>() * &s_max_all;
            let slack_max = &fb_max * &dk2_int + big(bound_num).abs() * &sk_int;
            if !audit(&(&slack_max * &slack_max * &big(cmp_l))) {
                return None;
            }
            let w_max = w_hi.iter().map(|&x| big(x)).max().unwrap_or_default();
            if !audit(&(&w_max * &big(b0) * &big(cmp_r))) {
                return None;
            }
            Some(IntPrune {
                bq,
                sk,
                bound_num,
                dk2,
                w_hi,
                cmp_l,
                cmp_r,
            })
        })();
        cons.push(IntCons { a, bound_dc, prune });
    }

    let search = IntSearch {
        n,
        dq,
        rq,
        cq,
        dcq,
        drq,
        ds,
        k1,
        db,
        kb,
        cons,
    };
    let mut st = IntState {
        y: vec![0; n],
        ui: vec![0; n],
        fb: vec![0; search.cons.len()],
        out: Vec::new(),
    };
    search.descend(n - 1, b0, &mut st);
    let mut out: Vec<Vec<Int>> = st
        .out
        .into_iter()
        .map(|y| y.into_iter().map(Int::from).collect())
        .collect();
    out.sort();
    Some(out)
}
