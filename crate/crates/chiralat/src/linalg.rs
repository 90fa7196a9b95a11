//! Exact linear algebra over the integers and rationals.
//!
//! Everything in this crate runs on arbitrary-precision arithmetic; no
//! floating point is used anywhere. Matrices are small (rank <= ~25), so
//! dense `Vec<Vec<_>>` storage and cubic algorithms are fine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Dense integer matrix, row-major.
pub type IMat = Vec<Vec<Int>>;
/// Dense rational matrix, row-major.
pub type RMat = Vec<Vec<Rat>>;

pub fn imat_zero(rows: usize, cols: usize) -> IMat {
    vec![vec![Int::zero(); cols]; rows]
}

pub fn imat_identity(n: usize) -> IMat {
    let mut m = imat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Int::one();
    }
    m
}

pub fn imat_to_rmat(m: &IMat) -> RMat {
    m.iter()
        .map(|r| r.iter().map(rat_int).collect())
        .collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = b.len();
    let p = if k == 0 { 0 } else { b[0].len() };
    let mut out = imat_zero(n, p);
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..p {
                let t = &a[i][l] * &brow[j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn imat_vec(a: &IMat, x: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}

pub fn imat_transpose(a: &IMat) -> IMat {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = imat_zero(cols, rows);
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rdot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// x^T M y for an integer symmetric matrix.
pub fn bilinear(m: &IMat, x: &[Int], y: &[Int]) -> Int {
    dot(x, &imat_vec(m, y))
}

pub fn rmat_mul(a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn rmat_vec(a: &RMat, x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| rdot(row, x)).collect()
}

/// Rational Gaussian elimination returning the rank.
pub fn rmat_rank(a: &RMat) -> usize {
    let mut m: RMat = a.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        for j in col..cols {
            let v = &m[rank][j] * &inv;
            m[rank][j] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..cols {
                    let t = &m[rank][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn imat_rank(a: &IMat) -> usize {
    rmat_rank(&imat_to_rmat(a))
}

/// Solve M x = b over the rationals. Returns None if inconsistent or M singular
/// (only square, invertible systems are accepted here).
pub fn solve_rational(m: &RMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    assert!(n > 0 && m[0].len() == n && b.len() == n);
    let mut a: RMat = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..=n {
            let v = &a[col][j] * &inv;
            a[col][j] = v;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Solve a possibly rectangular system `rows * x = rhs` over the rationals,
/// setting free variables to zero. Returns None if inconsistent.
pub fn solve_affine(rows: &RMat, rhs: &[Rat]) -> Option<Vec<Rat>> {
    let m = rows.len();
    assert_eq!(m, rhs.len());
    let n = if m == 0 { return Some(Vec::new()) } else { rows[0].len() };
    let mut a: RMat = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].recip();
        for j in col..=n {
            let v = &a[rank][j] * &inv;
            a[rank][j] = v;
        }
        for r in 0..m {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let t = &a[rank][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    if (rank..m).any(|r| !a[r][n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, col) in pivots {
        x[col] = a[row][n].clone();
    }
    Some(x)
}

/// Basis of the rational nullspace of a (possibly rectangular) matrix.
pub fn rmat_nullspace(a: &RMat) -> Vec<Vec<Rat>> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut red: RMat = a.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&r| !red[r][col].is_zero()) else {
            continue;
        };
        red.swap(rank, piv);
        let inv = red[rank][col].recip();
        for j in col..n {
            let v = &red[rank][j] * &inv;
            red[rank][j] = v;
        }
        for r in 0..m {
            if r != rank && !red[r][col].is_zero() {
                let f = red[r][col].clone();
                for j in col..n {
                    let t = &red[rank][j] * &f;
                    red[r][j] -= t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -red[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square rational matrix, None if singular.
pub fn rmat_inverse(m: &RMat) -> Option<RMat> {
    let n = m.len();
    let mut a: RMat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..2 * n {
            let v = &a[col][j] * &inv;
            a[col][j] = v;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..2 * n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn rmat_det(m: &RMat) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for j in col..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    det
}

pub fn imat_det(m: &IMat) -> Int {
    let d = rmat_det(&imat_to_rmat(m));
    assert!(d.is_integer());
    d.to_integer()
}

/// Exact inertia (n_plus, n_zero, n_minus) of a symmetric rational matrix, by
/// congruence reduction. Zero diagonal with a nonzero off-diagonal entry is
/// handled as a hyperbolic pair contributing (+1, -1).
pub fn inertia(m: &RMat) -> (usize, usize, usize) {
    let n = m.len();
    let mut a = m.to_vec();
    let mut live: Vec<usize> = (0..n).collect();
    let (mut pos, mut zero, mut neg) = (0usize, 0usize, 0usize);
    while !live.is_empty() {
        // prefer a nonzero diagonal pivot
        if let Some(&p) = live.iter().find(|&&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            live.retain(|&i| i != p);
            for &i in &live {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &d;
                for &j in &live {
                    let t = &a[p][j] * &f;
                    a[i][j] -= t;
                }
            }
            for &i in &live {
                a[i][p] = Rat::zero();
                a[p][i] = Rat::zero();
            }
            continue;
        }
        // all-zero diagonal: look for an off-diagonal entry
        let mut pair = None;
        'outer: for (ii, &i) in live.iter().enumerate() {
            for &j in &live[ii + 1..] {
                if !a[i][j].is_zero() {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else {
            zero += live.len();
            break;
        };
        // congruence: replace row/col i by i+j, giving a nonzero diagonal
        let cols: Vec<usize> = live.clone();
        for &k in &cols {
            let t = a[j][k].clone();
            a[i][k] += t;
        }
        for &k in &cols {
            let t = a[k][j].clone();
            a[k][i] += t;
        }
    }
    (pos, zero, neg)
}

pub fn inertia_int(m: &IMat) -> (usize, usize, usize) {
    match inertia_i128(m) {
        Some(r) => r,
        None => inertia(&imat_to_rmat(m)),
    }
}

/// Fraction-free symmetric elimination (Bareiss) in fixed-width integers.
/// Entries stay exact minors of the input, so pivot signs relative to the
/// previous pivot give the inertia directly.  Returns None and defers to the
/// arbitrary-precision path on overflow, oversized input, or the rare
/// all-zero-diagonal case with nonzero off-diagonal entries.
fn inertia_i128(m: &IMat) -> Option<(usize, usize, usize)> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(i128::try_from).collect::<Result<_, _>>().ok())
        .collect::<Option<_>>()?;
    let mut live: Vec<usize> = (0..n).collect();
    let mut prev: i128 = 1;
    let (mut pos, mut zero, mut neg) = (0usize, 0usize, 0usize);
    while !live.is_empty() {
        let Some(&p) = live.iter().find(|&&i| a[i][i] != 0) else {
            if live.iter().all(|&i| live.iter().all(|&j| a[i][j] == 0)) {
                zero += live.len();
                break;
            }
            return None;
        };
        let d = a[p][p];
        if (d > 0) == (prev > 0) {
            pos += 1;
        } else {
            neg += 1;
        }
        live.retain(|&i| i != p);
        for ii in 0..live.len() {
            let i = live[ii];
            for jj in 0..live.len() {
                let j = live[jj];
                let t = a[i][j]
                    .checked_mul(d)?
                    .checked_sub(a[i][p].checked_mul(a[p][j])?)?;
                debug_assert_eq!(t % prev, 0);
                a[i][j] = t / prev;
            }
        }
        for &i in &live {
            a[i][p] = 0;
            a[p][i] = 0;
        }
        prev = d;
    }
    Some((pos, zero, neg))
}

/// Smith normal form with transforms: returns (u, d, v) with u * a * v = d,
/// u and v unimodular, d diagonal with d[0] | d[1] | ... (non-negative).
pub fn smith_normal_form(a: &IMat) -> (IMat, IMat, IMat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.to_vec();
    let mut u = imat_identity(rows);
    let mut v = imat_identity(cols);
    let dim = rows.min(cols);

    for t in 0..dim {
        loop {
            // find pivot of minimal absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero() {
                        match &best {
                            Some((bi, bj)) if d[*bi][*bj].abs() <= d[i][j].abs() => {}
                            _ => best = Some((i, j)),
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finalize_snf(u, d, v, t);
            };
            if pi != t {
                d.swap(t, pi);
                u.swap(t, pi);
            }
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let mut clean = true;
            // clear column t
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = div_round(&d[i][t], &d[t][t]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let s = &q * &d[t][j];
                            d[i][j] -= s;
                        }
                        for j in 0..rows {
                            let s = &q * &u[t][j];
                            u[i][j] -= s;
                        }
                    }
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            // clear row t
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = div_round(&d[t][j], &d[t][t]);
                    if !q.is_zero() {
                        for i in 0..rows {
                            let s = &q * &d[i][t];
                            d[i][j] -= s;
                        }
                        for i in 0..cols {
                            let s = &q * &v[i][t];
                            v[i][j] -= s;
                        }
                    }
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // ensure divisibility of the rest of the block by the pivot
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = bad {
                // add row i to row t and continue reducing
                for j in 0..cols {
                    let s = d[i][j].clone();
                    d[t][j] += s;
                }
                for j in 0..rows {
                    let s = u[i][j].clone();
                    u[t][j] += s;
                }
                continue;
            }
            break;
        }
    }
    finalize_snf(u, d, v, dim)
}

fn finalize_snf(mut u: IMat, mut d: IMat, v: IMat, upto: usize) -> (IMat, IMat, IMat) {
    // sign normalization
    for t in 0..upto {
        if d[t][t].is_negative() {
            for j in 0..d[t].len() {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..u[t].len() {
                u[t][j] = -u[t][j].clone();
            }
        }
    }
    (u, d, v)
}

/// Round-to-nearest integer division (keeps SNF pivots shrinking).
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r): (Int, Int) = num_integer::Integer::div_rem(a, b);
    let two_r: Int = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Extended gcd over a slice: returns (g, c) with sum c[i]*x[i] = g >= 0.
pub fn ext_gcd_vec(x: &[Int]) -> (Int, Vec<Int>) {
    let n = x.len();
    let mut g = Int::zero();
    let mut c = vec![Int::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = xi.abs();
            c[i] = if xi.is_negative() { int(-1) } else { int(1) };
            continue;
        }
        let e = num_integer::Integer::extended_gcd(&g, xi);
        // e.gcd = e.x * g + e.y * xi
        for cj in c.iter_mut() {
            *cj *= &e.x;
        }
        c[i] = e.y.clone();
        g = e.gcd;
    }
    (g, c)
}

/// Integer kernel basis of a single functional q: columns k with q . k = 0,
/// spanning the full kernel lattice {x : q . x = 0}. Also returns a particular
/// solution scheme: a vector s with q . s = g = gcd(q) (when q != 0).
pub fn functional_kernel(q: &[Int]) -> (Int, Vec<Int>, Vec<Vec<Int>>) {
    let n = q.len();
    // Column-style gcd elimination: maintain unimodular column ops so that
    // q applied to the columns becomes (g, 0, ..., 0).
    let mut cols: Vec<Vec<Int>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let mut vals: Vec<Int> = q.to_vec();
    // Reduce vals to (g, 0, .., 0) by unimodular column ops.
    loop {
        // find two nonzero entries; reduce the larger by the smaller
        let nz: Vec<usize> = (0..n).filter(|&j| !vals[j].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        // pick smallest absolute value as pivot
        let &p = nz
            .iter()
            .min_by(|&&a, &&b| vals[a].abs().cmp(&vals[b].abs()))
            .unwrap();
        for &j in &nz {
            if j == p {
                continue;
            }
            let qout = div_round(&vals[j], &vals[p]);
            if !qout.is_zero() {
                let s = &qout * &vals[p];
                vals[j] -= s;
                for i in 0..n {
                    let s = &qout * &cols[p][i];
                    cols[j][i] -= s;
                }
            }
        }
    }
    let pivot = (0..n).find(|&j| !vals[j].is_zero());
    match pivot {
        None => (Int::zero(), vec![Int::zero(); n], cols),
        Some(p) => {
            let mut g = vals[p].clone();
            let mut sol = cols[p].clone();
            if g.is_negative() {
                g = -g;
                sol = sol.into_iter().map(|x| -x).collect();
            }
            let kernel: Vec<Vec<Int>> = (0..n).filter(|&j| j != p).map(|j| cols[j].clone()).collect();
            (g, sol, kernel)
        }
    }
}

/// Solve T y = rhs over F_3 (entries taken mod 3).  Returns a particular
/// solution with entries in {0, 1, 2} together with lifts of an F_3 kernel
/// basis, or None when the system is inconsistent.
pub fn mod3_solve(t: &IMat, rhs: &[Int]) -> Option<(Vec<Int>, Vec<Vec<Int>>)> {
    let three = Int::from(3);
    let red = |x: &Int| -> i64 {
        let r = x % &three;
        let r = i64::try_from(&r).unwrap();
        r.rem_euclid(3)
    };
    let rows = t.len();
    let cols = if rows == 0 { 0 } else { t[0].len() };
    let mut a: Vec<Vec<i64>> = t.iter().map(|row| row.iter().map(&red).collect()).collect();
    let mut b: Vec<i64> = rhs.iter().map(&red).collect();
    // Gaussian elimination over F_3 (inverses: 1 -> 1, 2 -> 2).
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        b.swap(row, pr);
        let inv = a[row][col]; // self-inverse mod 3
        for x in a[row].iter_mut() {
            *x = (*x * inv) % 3;
        }
        b[row] = (b[row] * inv) % 3;
        for r in 0..rows {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..cols {
                    a[r][c] = (a[r][c] + 3 - (f * a[row][c]) % 3) % 3;
                }
                b[r] = (b[r] + 3 - (f * b[row]) % 3) % 3;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if (row..rows).any(|r| b[r] != 0) {
        return None;
    }
    let mut y0 = vec![0i64; cols];
    for (r, &pc) in pivot_col_of_row.iter().enumerate() {
        y0[pc] = b[r];
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut kernel: Vec<Vec<Int>> = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut k = vec![0i64; cols];
        k[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            k[pc] = (3 - a[r][free] % 3) % 3;
        }
        kernel.push(k.into_iter().map(Int::from).collect());
    }
    Some((y0.into_iter().map(Int::from).collect(), kernel))
}

/// Row-style Hermite basis of the integer lattice generated by the given
/// rows.  Returns the nonzero echelon rows; when the generators span a
/// full-rank sublattice of Z^m this is a square basis.
pub fn hnf_row_basis(gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = gens.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut top = 0usize;
    for col in 0..cols {
        // Euclidean reduction within this column below `top`.
        loop {
            let nz: Vec<usize> = (top..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let &p = nz
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
                .unwrap();
            for &r in &nz {
                if r == p {
                    continue;
                }
                let q = div_round(&rows[r][col], &rows[p][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let s = &q * &rows[p][c];
                        rows[r][c] -= s;
                    }
                }
            }
        }
        if let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(top, p);
            if rows[top][col].is_negative() {
                for c in 0..cols {
                    rows[top][c] = -rows[top][c].clone();
                }
            }
            // Reduce the entries above the pivot into [0, pivot).
            for r in 0..top {
                let q = num_integer::Integer::div_floor(&rows[r][col], &rows[top][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let s = &q * &rows[top][c];
                        rows[r][c] -= s;
                    }
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

/// Integer square root floor for non-negative Int.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative());
    n.sqrt()
}

/// floor(sqrt(r)) for a non-negative rational r.
pub fn rat_sqrt_floor(r: &Rat) -> Int {
    assert!(!r.is_negative());
    // floor(sqrt(p/q)) = floor(sqrt(p*q)/q)
    let p = r.numer();
    let q = r.denom();
    isqrt(&(p * q)) / q
}
