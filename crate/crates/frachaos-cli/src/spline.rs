//! Natural cubic spline through tabulated (x, y) points; used to expand
//! user-supplied functions given as a two-column CSV.

/// Natural cubic spline: zero second derivative at both ends, evaluation
/// clamped to the table's range.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub fn natural(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, String> {
        if xs.len() != ys.len() {
            return Err("x and y columns differ in length".into());
        }
        if xs.len() < 3 {
            return Err("need at least 3 points".into());
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err("x column must be strictly increasing".into());
        }
        let n = xs.len();
        // tridiagonal solve for the second derivatives, natural boundaries
        let mut second = vec![0.0; n];
        let mut gamma = vec![0.0; n];
        for i in 1..n - 1 {
            let h_lo = xs[i] - xs[i - 1];
            let h_hi = xs[i + 1] - xs[i];
            let sig = h_lo / (h_lo + h_hi);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let rhs = (ys[i + 1] - ys[i]) / h_hi - (ys[i] - ys[i - 1]) / h_lo;
            gamma[i] = (6.0 * rhs / (h_lo + h_hi) - sig * gamma[i - 1]) / p;
        }
        let mut out = vec![0.0; n];
        for i in (1..n - 1).rev() {
            out[i] = second[i] * out[i + 1] + gamma[i];
        }
        Ok(CubicSpline {
            xs,
            ys,
            second: out,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], *self.xs.last().unwrap());
        let i = match self.xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h
                / 6.0
    }
}

/// Parse a two-column CSV of (x, g(x)); a non-numeric first line is treated
/// as a header.
pub fn parse_xy_csv(text: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let sx = parts.next().unwrap_or("").trim();
        let sy = parts.next().unwrap_or("").trim();
        match (sx.parse::<f64>(), sy.parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ if lineno == 0 => continue, // header
            _ => return Err(format!("line {}: expected two numbers", lineno + 1)),
        }
    }
    if xs.is_empty() {
        return Err("no data rows".into());
    }
    Ok((xs, ys))
}
