//! Radial coefficient fields: constants, closed-form expressions in `r`, or tabulated samples.
//!
//! Expression grammar: numbers, `r`, `+ - * / ^`, parentheses and the functions
//! `exp log pow tanh` plus `sqrt abs min max sin cos sinh cosh`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::grid::RadialGrid;

#[derive(Clone)]
pub enum RadialField {
    Constant(f64),
    Expr { source: String, expr: meval::Expr },
    Samples { r: Vec<f64>, v: Vec<f64> },
    Custom { label: String, f: Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

fn context<'a>() -> meval::Context<'a> {
    let mut ctx = meval::Context::new();
    ctx.func("log", f64::ln);
    ctx.func2("pow", f64::powf);
    ctx
}

impl RadialField {
    pub fn constant(c: f64) -> Self {
        RadialField::Constant(c)
    }

    /// Parse an expression in `r`. Pure numbers become constants.
    pub fn parse(source: &str) -> Result<Self> {
        let expr: meval::Expr =
            source.parse().map_err(|e| invalid(format!("cannot parse expression `{source}`: {e}")))?;
        if let Ok(c) = expr.eval_with_context(context()) {
            return Ok(RadialField::Constant(c));
        }
        // bind checks that `r` is the only free variable
        let _ = expr
            .clone()
            .bind_with_context(context(), "r")
            .map_err(|e| invalid(format!("expression `{source}`: {e}")))?;
        Ok(RadialField::Expr { source: source.to_string(), expr })
    }

    pub fn custom(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RadialField::Custom { label: label.into(), f: Arc::new(f) }
    }

    /// Piecewise-linear samples, constant beyond the last abscissa.
    pub fn samples(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return Err(invalid("tabulated field needs at least two (r, value) rows"));
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("tabulated field abscissae must be strictly increasing"));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(invalid("tabulated field values must be finite"));
        }
        Ok(RadialField::Samples { r, v })
    }

    /// Two-column CSV with a header row.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let (r, v) = read_two_columns(path)?;
        Self::samples(r, v)
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self, RadialField::Constant(_) | RadialField::Expr { .. })
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            RadialField::Constant(c) => Some(*c),
            _ => None,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialField::Constant(c) => *c,
            RadialField::Expr { expr, .. } => {
                let mut ctx = context();
                ctx.var("r", r);
                expr.eval_with_context(ctx).unwrap_or(f64::NAN)
            }
            RadialField::Samples { r: rs, v } => interp(rs, v, r),
            RadialField::Custom { f, .. } => f(r),
        }
    }

    /// Values at the grid nodes.
    pub fn sample(&self, grid: &RadialGrid) -> Vec<f64> {
        self.sample_at(&grid.nodes())
    }

    pub fn sample_at(&self, rs: &[f64]) -> Vec<f64> {
        match self {
            RadialField::Expr { expr, .. } => match expr.clone().bind_with_context(context(), "r") {
                Ok(f) => rs.iter().map(|&r| f(r)).collect(),
                Err(_) => vec![f64::NAN; rs.len()],
            },
            _ => rs.iter().map(|&r| self.eval(r)).collect(),
        }
    }

    /// Sampled values, rejecting non-finite entries.
    pub fn sample_finite(&self, grid: &RadialGrid, name: &str) -> Result<Vec<f64>> {
        let v = self.sample(grid);
        if let Some(i) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::Invalid(format!("field {name} = {self} is not finite at r = {}", grid.r(i))));
        }
        Ok(v)
    }

    pub fn negate(&self) -> Self {
        match self {
            RadialField::Constant(c) => RadialField::Constant(-c),
            RadialField::Expr { source, .. } => {
                RadialField::parse(&format!("-({source})")).expect("negation of a valid expression")
            }
            RadialField::Samples { r, v } => RadialField::Samples { r: r.clone(), v: v.iter().map(|x| -x).collect() },
            RadialField::Custom { label, f } => {
                let f = f.clone();
                RadialField::Custom { label: format!("-({label})"), f: Arc::new(move |r| -f(r)) }
            }
        }
    }
}

fn interp(rs: &[f64], v: &[f64], r: f64) -> f64 {
    if r <= rs[0] {
        return v[0];
    }
    let last = rs.len() - 1;
    if r >= rs[last] {
        return v[last];
    }
    let j = rs.partition_point(|&x| x <= r);
    let (r0, r1) = (rs[j - 1], rs[j]);
    let w = (r - r0) / (r1 - r0);
    (1.0 - w) * v[j - 1] + w * v[j]
}

/// Reads a headed two-column numeric CSV.
pub fn read_two_columns(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        if rec.len() < 2 {
            return Err(invalid(format!("{}: row {} has fewer than two columns", path.display(), line + 2)));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| invalid(format!("{}: row {}: `{s}` is not a number", path.display(), line + 2)))
        };
        a.push(parse(&rec[0])?);
        b.push(parse(&rec[1])?);
    }
    if a.is_empty() {
        return Err(invalid(format!("{}: no data rows", path.display())));
    }
    Ok((a, b))
}

impl fmt::Display for RadialField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialField::Constant(c) => write!(f, "{c}"),
            RadialField::Expr { source, .. } => write!(f, "{source}"),
            RadialField::Samples { r, .. } => write!(f, "<{} samples>", r.len()),
            RadialField::Custom { label, .. } => write!(f, "{label}"),
        }
    }
}

impl fmt::Debug for RadialField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialField({self})")
    }
}

impl Serialize for RadialField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RadialField::Constant(c) => s.serialize_f64(*c),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let f = RadialField::parse("1/(1+r^2) + pow(r, 3) - log(exp(2)) + tanh(0)").unwrap();
        assert!((f.eval(2.0) - (0.2 + 8.0 - 2.0)).abs() < 1e-13);
        assert_eq!(RadialField::parse("1/4").unwrap().as_constant(), Some(0.25));
        let g = RadialField::parse("max(0, r - 0.25)").unwrap();
        assert_eq!(g.eval(0.1), 0.0);
        assert!((g.eval(1.0) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_symbols() {
        assert!(RadialField::parse("x + 1").is_err());
        assert!(RadialField::parse("r +").is_err());
    }

    #[test]
    fn samples_interpolate() {
        let f = RadialField::samples(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 2.0]).unwrap();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(7.0), 2.0);
        assert!(RadialField::samples(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn negation() {
        let f = RadialField::parse("r^2").unwrap().negate();
        assert_eq!(f.eval(3.0), -9.0);
    }
}
