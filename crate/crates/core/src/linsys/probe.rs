//! Randomized generic-fiber probe for the rational map given by a net of
//! forms: exact bivariate resultants plus squarefree root counting, with the
//! base-locus contribution removed via the common factor across targets.

use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::form::HomogeneousForm;
use super::LinsysError;

#[derive(Debug, Clone, Copy)]
pub struct ProbeConfig {
    pub trials: usize,
    pub seed: u64,
    /// resultant feasibility guard
    pub max_degree: u32,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            trials: 10,
            seed: 1,
            max_degree: 5,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ProbeReport {
    pub counts: Vec<usize>,
    pub modal_count: usize,
    /// all trials agreed
    pub stable: bool,
    /// number of distinct sheared base-locus values removed per trial
    pub base_values: usize,
}

// -------------------------------------------------------------------------
// dense univariate polynomials over Q
// -------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn constant(c: BigRational) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero")
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn add_assign_scaled(&mut self, other: &Poly, c: &BigRational) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigRational::zero());
        }
        for (i, x) in other.0.iter().enumerate() {
            self.0[i] += x * c;
        }
        self.trim();
    }

    fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for (i, c) in self.0.iter().enumerate().skip(1) {
            out.push(c * BigRational::from_integer(i.into()));
        }
        let mut p = Poly(out);
        p.trim();
        p
    }

    fn rem(&self, divisor: &Poly) -> Poly {
        let mut r = self.clone();
        let dl = divisor.lead().clone();
        while !r.is_zero() && r.degree() >= divisor.degree() {
            let shift = r.degree() - divisor.degree();
            let factor = -(r.lead() / &dl);
            let mut scaled = vec![BigRational::zero(); shift];
            scaled.extend(divisor.0.iter().map(|c| c * &factor));
            let scaled = Poly(scaled);
            r.add_assign_scaled(&scaled, &BigRational::one());
        }
        r
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let r = x.rem(&y).monic();
            x = y;
            y = r;
        }
        x
    }

    fn squarefree(&self) -> Poly {
        if self.is_zero() || self.degree() == 0 {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        // exact division self / g via repeated remainder-free steps
        let mut quotient = Vec::new();
        let mut r = self.clone();
        let dl = g.lead().clone();
        while !r.is_zero() && r.degree() >= g.degree() {
            let shift = r.degree() - g.degree();
            let factor = r.lead() / &dl;
            if quotient.len() < shift + 1 {
                quotient.resize(shift + 1, BigRational::zero());
            }
            quotient[shift] = factor.clone();
            let mut scaled = vec![BigRational::zero(); shift];
            scaled.extend(g.0.iter().map(|c| c * &factor));
            r.add_assign_scaled(&Poly(scaled), &-BigRational::one());
        }
        let mut q = Poly(quotient);
        q.trim();
        q.monic()
    }
}

// -------------------------------------------------------------------------
// bivariate polynomials as x-coefficients in Q[w]
// -------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct BiPoly {
    /// coeffs[i] is the Q[w]-coefficient of x^i
    coeffs: Vec<Poly>,
}

impl BiPoly {
    fn x_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|p| !p.is_zero())
    }

    fn w_degree_bound(&self) -> usize {
        self.coeffs.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    fn eval_w(&self, w: &BigRational) -> Vec<BigRational> {
        self.coeffs.iter().map(|p| p.eval(w)).collect()
    }
}

/// Dehomogenize at z = 1 and shear y = w + lambda x, producing a polynomial
/// in (x, w) whose solutions are in bijection with the affine solutions.
fn shear(form: &HomogeneousForm, lambda: &BigRational) -> BiPoly {
    let grid = form.dehomogenize();
    let d = grid.len() - 1;
    let mut coeffs = vec![Poly::zero(); 2 * d + 1];
    // binomial table
    let mut binom = vec![vec![BigRational::zero(); d + 1]; d + 1];
    for (n, row) in binom.iter_mut().enumerate() {
        row[0] = BigRational::one();
        for k in 1..=n {
            let prev_k = row[k - 1].clone();
            row[k] = prev_k * BigRational::from_integer((n - k + 1).into())
                / BigRational::from_integer(k.into());
        }
    }
    for (i, row) in grid.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // x^i (w + lambda x)^j
            let mut lam_pow = BigRational::one();
            for k in 0..=j {
                // term: C(j,k) lambda^k x^(i+k) w^(j-k)
                let coef = c * &binom[j][k] * &lam_pow;
                let slot = &mut coeffs[i + k];
                let wdeg = j - k;
                if slot.0.len() < wdeg + 1 {
                    slot.0.resize(wdeg + 1, BigRational::zero());
                }
                slot.0[wdeg] += coef;
                lam_pow *= lambda;
            }
        }
    }
    for p in coeffs.iter_mut() {
        p.trim();
    }
    BiPoly { coeffs }
}

/// Determinant by fraction Gaussian elimination; exact over Q.
#[allow(clippy::needless_range_loop)]
fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let t = &m[k][j] * &factor;
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Resultant in x of two sheared polynomials, by Sylvester-determinant
/// evaluation at enough points and Lagrange interpolation.
fn resultant_x(a: &BiPoly, b: &BiPoly) -> Poly {
    let (Some(da), Some(db)) = (a.x_degree(), b.x_degree()) else {
        return Poly::zero();
    };
    if da == 0 {
        // res(a0(w), b) = a0^db
        let mut acc = Poly::constant(BigRational::one());
        for _ in 0..db {
            acc = poly_mul(&acc, &a.coeffs[0]);
        }
        return acc;
    }
    if db == 0 {
        let mut acc = Poly::constant(BigRational::one());
        for _ in 0..da {
            acc = poly_mul(&acc, &b.coeffs[0]);
        }
        return acc;
    }
    let bound = db * a.w_degree_bound() + da * b.w_degree_bound() + 1;
    let mut points = Vec::with_capacity(bound);
    let mut values = Vec::with_capacity(bound);
    let mut next = 0i64;
    for _ in 0..bound {
        let w = BigRational::from_integer(next.into());
        next = if next > 0 { -next } else { -next + 1 };
        let av = a.eval_w(&w);
        let bv = b.eval_w(&w);
        let n = da + db;
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (r, row) in m.iter_mut().enumerate().take(db) {
            for (idx, c) in av.iter().take(da + 1).enumerate() {
                row[r + da - idx] = c.clone();
            }
        }
        for r in 0..da {
            for (idx, c) in bv.iter().take(db + 1).enumerate() {
                m[db + r][r + db - idx] = c.clone();
            }
        }
        points.push(w);
        values.push(determinant(m));
    }
    lagrange(&points, &values)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.0.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    let mut p = Poly(out);
    p.trim();
    p
}

fn lagrange(points: &[BigRational], values: &[BigRational]) -> Poly {
    // Newton form, then expand
    let n = points.len();
    let mut table: Vec<BigRational> = values.to_vec();
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(table[0].clone());
    for level in 1..n {
        for i in 0..n - level {
            let num = &table[i + 1] - &table[i];
            let den = &points[i + level] - &points[i];
            table[i] = num / den;
        }
        coeffs.push(table[0].clone());
    }
    // expand sum coeffs[k] * prod_{i<k} (w - points[i])
    let mut acc = Poly::zero();
    let mut basis = Poly::constant(BigRational::one());
    for (k, c) in coeffs.iter().enumerate() {
        acc.add_assign_scaled(&basis, c);
        if k + 1 < n {
            let linear = Poly(vec![-points[k].clone(), BigRational::one()]);
            basis = poly_mul(&basis, &linear);
        }
    }
    acc.trim();
    acc
}

// -------------------------------------------------------------------------
// the probe
// -------------------------------------------------------------------------

fn random_rational(rng: &mut ChaCha12Rng) -> BigRational {
    let v: i64 = rng.random_range(1..=97);
    let sign: bool = rng.random();
    BigRational::from_integer(if sign { v } else { -v }.into())
}

fn fiber_resultant(
    sheared: &[BiPoly; 3],
    target: &[BigRational; 3],
) -> Option<Poly> {
    let combine = |p: &BiPoly, cp: &BigRational, q: &BiPoly, cq: &BigRational| -> BiPoly {
        let len = p.coeffs.len().max(q.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let mut slot = Poly::zero();
            if let Some(x) = p.coeffs.get(i) {
                slot.add_assign_scaled(x, cp);
            }
            if let Some(y) = q.coeffs.get(i) {
                slot.add_assign_scaled(y, cq);
            }
            coeffs.push(slot);
        }
        BiPoly { coeffs }
    };
    // c1 F - c0 G and c2 F - c0 H
    let a = combine(&sheared[0], &target[1], &sheared[1], &(-target[0].clone()));
    let b = combine(&sheared[0], &target[2], &sheared[2], &(-target[0].clone()));
    let r = resultant_x(&a, &b);
    if r.is_zero() {
        None
    } else {
        Some(r)
    }
}

/// Estimate the generic fiber count of the rational map given by three
/// forms of equal degree. Exact per trial; randomized over targets.
pub fn map_degree_probe(
    net: &[HomogeneousForm; 3],
    cfg: ProbeConfig,
) -> Result<ProbeReport, LinsysError> {
    let d = net[0].degree();
    for f in net.iter() {
        if f.degree() != d {
            return Err(LinsysError::FormDegreeMismatch {
                left: d,
                right: f.degree(),
            });
        }
    }
    if d == 0 || d > cfg.max_degree {
        return Err(LinsysError::FormDegreeOutOfRange {
            got: d,
            max: cfg.max_degree,
        });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    const MAX_RESAMPLES: usize = 40;
    let mut resamples = 0;

    'lambda: for _ in 0..5 {
        let lambda = random_rational(&mut rng);
        let sheared = [
            shear(&net[0], &lambda),
            shear(&net[1], &lambda),
            shear(&net[2], &lambda),
        ];
        let draw = |rng: &mut ChaCha12Rng| -> [BigRational; 3] {
            [
                random_rational(rng),
                random_rational(rng),
                random_rational(rng),
            ]
        };

        // base locus factor: common roots across auxiliary targets
        let mut base: Option<Poly> = None;
        for _ in 0..3 {
            let r = match fiber_resultant(&sheared, &draw(&mut rng)) {
                Some(r) => r,
                None => {
                    // a vanishing resultant means an unlucky shear or
                    // target; restart with a fresh lambda
                    resamples += 1;
                    if resamples > MAX_RESAMPLES {
                        return Err(LinsysError::DegenerateTargets(resamples));
                    }
                    continue 'lambda;
                }
            };
            base = Some(match base {
                None => r,
                Some(b) => Poly::gcd(&b, &r),
            });
        }
        let base = base.expect("three aux targets").squarefree();
        let base_values = if base.degree() > 0 { base.degree() } else { 0 };

        let mut counts = Vec::with_capacity(cfg.trials);
        for _ in 0..cfg.trials {
            let r = match fiber_resultant(&sheared, &draw(&mut rng)) {
                Some(r) => r,
                None => {
                    // a vanishing resultant means an unlucky shear or
                    // target; restart with a fresh lambda
                    resamples += 1;
                    if resamples > MAX_RESAMPLES {
                        return Err(LinsysError::DegenerateTargets(resamples));
                    }
                    continue 'lambda;
                }
            };
            let sf = r.squarefree();
            let common = Poly::gcd(&sf, &base);
            let overlap = if common.degree() > 0 { common.degree() } else { 0 };
            counts.push(sf.degree() - overlap);
        }

        let mut sorted = counts.clone();
        sorted.sort_unstable();
        let mut modal = sorted[0];
        let mut best_run = 0;
        let mut i = 0;
        while i < sorted.len() {
            let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
            if j > best_run {
                best_run = j;
                modal = sorted[i];
            }
            i += j;
        }
        let stable = counts.iter().all(|&c| c == modal);
        return Ok(ProbeReport {
            counts,
            modal_count: modal,
            stable,
            base_values,
        });
    }
    Err(LinsysError::DegenerateTargets(resamples))
}
