//! Interpolating cubic splines through planar points, used to resample
//! user-supplied spines at uniform arclength.

use super::Vec2;

/// C² cubic spline parametrized by cumulative chord length.
#[derive(Debug, Clone)]
pub(crate) struct CubicSpline2 {
    knots: Vec<f64>,
    points: Vec<Vec2>,
    second: Vec<Vec2>,
}

impl CubicSpline2 {
    /// Natural spline (zero curvature at both ends). Needs at least 2 distinct points.
    pub fn natural(points: &[Vec2]) -> Self {
        let knots = chord_knots(points);
        let n = points.len();
        let mut second = vec![Vec2::ZERO; n];
        if n > 2 {
            let m = n - 2;
            let mut sub = vec![0.0; m];
            let mut diag = vec![0.0; m];
            let mut sup = vec![0.0; m];
            let mut rhs = vec![Vec2::ZERO; m];
            for i in 1..n - 1 {
                let h0 = knots[i] - knots[i - 1];
                let h1 = knots[i + 1] - knots[i];
                let k = i - 1;
                sub[k] = h0;
                diag[k] = 2.0 * (h0 + h1);
                sup[k] = h1;
                rhs[k] = ((points[i + 1] - points[i]) * (1.0 / h1)
                    - (points[i] - points[i - 1]) * (1.0 / h0))
                    * 6.0;
            }
            let sol = solve_tridiagonal(&sub, &diag, &sup, &rhs);
            second[1..n - 1].copy_from_slice(&sol);
        }
        Self {
            knots,
            points: points.to_vec(),
            second,
        }
    }

    /// Periodic spline through a closed loop given without the repeated first point.
    pub fn periodic(points: &[Vec2]) -> Self {
        let n = points.len();
        let mut closed = points.to_vec();
        closed.push(points[0]);
        let knots = chord_knots(&closed);
        let h = |i: usize| knots[i + 1] - knots[i];
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![Vec2::ZERO; n];
        for i in 0..n {
            let ip = (i + n - 1) % n;
            let h0 = h(ip);
            let h1 = h(i);
            sub[i] = h0;
            diag[i] = 2.0 * (h0 + h1);
            sup[i] = h1;
            let next = closed[i + 1];
            let prev = points[ip];
            rhs[i] = ((next - points[i]) * (1.0 / h1) - (points[i] - prev) * (1.0 / h0)) * 6.0;
        }
        let sol = solve_cyclic_tridiagonal(&sub, &diag, &sup, &rhs);
        let mut second = sol;
        second.push(second[0]);
        Self {
            knots,
            points: closed,
            second,
        }
    }

    #[cfg(test)]
    pub fn param_length(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    fn interval(&self, u: f64) -> usize {
        let n = self.knots.len();
        match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&u).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Position and first derivative at parameter `u`.
    pub fn eval(&self, u: f64) -> (Vec2, Vec2) {
        let i = self.interval(u);
        let h = self.knots[i + 1] - self.knots[i];
        let a = (self.knots[i + 1] - u) / h;
        let b = (u - self.knots[i]) / h;
        let (p0, p1) = (self.points[i], self.points[i + 1]);
        let (m0, m1) = (self.second[i], self.second[i + 1]);
        let pos = p0 * a + p1 * b + (m0 * (a * a * a - a) + m1 * (b * b * b - b)) * (h * h / 6.0);
        let der = (p1 - p0) * (1.0 / h) - m0 * ((3.0 * a * a - 1.0) * h / 6.0)
            + m1 * ((3.0 * b * b - 1.0) * h / 6.0);
        (pos, der)
    }
}

fn chord_knots(points: &[Vec2]) -> Vec<f64> {
    let mut knots = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    knots.push(0.0);
    for w in points.windows(2) {
        acc += w[0].distance(w[1]);
        knots.push(acc);
    }
    knots
}

fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[Vec2]) -> Vec<Vec2> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![Vec2::ZERO; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] * (1.0 / diag[0]);
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - d[i - 1] * sub[i]) * (1.0 / denom);
    }
    for i in (0..n - 1).rev() {
        d[i] = d[i] - d[i + 1] * c[i];
    }
    d
}

/// Sherman–Morrison on the cyclic system where `sub[0]` couples row 0 to the
/// last unknown and `sup[n-1]` couples the last row to the first.
fn solve_cyclic_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[Vec2]) -> Vec<Vec2> {
    let n = diag.len();
    if n == 1 {
        return vec![rhs[0] * (1.0 / (diag[0] + sub[0] + sup[0]))];
    }
    let alpha = sup[n - 1];
    let beta = sub[0];
    let gamma = -diag[0];
    let mut bb = diag.to_vec();
    bb[0] -= gamma;
    bb[n - 1] -= alpha * beta / gamma;
    let x = solve_tridiagonal(sub, &bb, sup, rhs);
    let mut u = vec![Vec2::ZERO; n];
    u[0] = Vec2::new(gamma, gamma);
    u[n - 1] = Vec2::new(alpha, alpha);
    // solve with a scalar right-hand side carried in both components
    let z = solve_tridiagonal(sub, &bb, sup, &u);
    let fx = (x[0].x + beta * x[n - 1].x / gamma) / (1.0 + z[0].x + beta * z[n - 1].x / gamma);
    let fy = (x[0].y + beta * x[n - 1].y / gamma) / (1.0 + z[0].y + beta * z[n - 1].y / gamma);
    x.iter()
        .zip(&z)
        .map(|(xi, zi)| Vec2::new(xi.x - fx * zi.x, xi.y - fy * zi.y))
        .collect()
}
