use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jet::{parse_expr, FieldExpr};
use crate::quadrature::Domain;

/// Named closed-form test fields.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogEntry {
    /// `sin(k pi (x - a) / L)` on `(a, a + L)`.
    SineMode { k: u32, a: f64, length: f64 },
    /// `s^2 (1 - s)^2` with `s = (x - a) / L`.
    Bubble { a: f64, length: f64 },
    /// `exp(-((x - c) / w)^2)`.
    GaussBump { center: f64, width: f64 },
    /// `sum_k c_k x^k`.
    Poly(Vec<f64>),
    /// `f(x0) g(x1)`.
    Product2d(Box<CatalogEntry>, Box<CatalogEntry>),
}

impl CatalogEntry {
    /// The entry as a field in coordinate `axis`.
    fn build_on(&self, axis: usize) -> FieldExpr {
        let x = FieldExpr::coord(axis);
        match self {
            CatalogEntry::SineMode { k, a, length } => ((*k as f64 * PI / length) * (x - *a)).sin(),
            CatalogEntry::Bubble { a, length } => {
                let s = (x - *a) / *length;
                s.powi(2) * (1.0 - s).powi(2)
            }
            CatalogEntry::GaussBump { center, width } => (-((x - *center) / *width).powi(2)).exp(),
            CatalogEntry::Poly(coeffs) => {
                let mut terms =
                    coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0.0)
                        .map(|(k, &c)| {
                            if k == 0 {
                                FieldExpr::constant(c)
                            } else {
                                c * x.powi(k as i32)
                            }
                        });
                let first = terms.next().unwrap_or_else(|| FieldExpr::constant(0.0));
                terms.fold(first, |acc, t| acc + t)
            }
            CatalogEntry::Product2d(f, g) => f.build_on(0) * g.build_on(1),
        }
    }

    pub fn build(&self) -> FieldExpr {
        self.build_on(0)
    }

    /// Vanishes at both ends of its natural interval.
    pub fn vanishes_on_boundary(&self) -> bool {
        match self {
            CatalogEntry::SineMode { .. } | CatalogEntry::Bubble { .. } => true,
            CatalogEntry::Product2d(f, g) => f.vanishes_on_boundary() || g.vanishes_on_boundary(),
            _ => false,
        }
    }

    /// Satisfies `u = 0 = u''` at both ends of its natural interval.
    pub fn navier_admissible(&self) -> bool {
        match self {
            CatalogEntry::SineMode { .. } => true,
            CatalogEntry::Product2d(f, g) => f.navier_admissible() && g.navier_admissible(),
            _ => false,
        }
    }
}

fn bad_params(name: &str, reason: &str) -> Error {
    Error::CatalogParams {
        name: name.into(),
        reason: reason.into(),
    }
}

fn entry(name: &str, params: &[f64], axis: Option<(f64, f64)>) -> Result<CatalogEntry> {
    let (a, length) = axis.map_or((0.0, 1.0), |(a, b)| (a, b - a));
    Ok(match (name, params) {
        ("sine_mode", [k]) | ("sine_mode", [k, _]) | ("sine_mode", [k, _, _]) => {
            if *k < 1.0 || k.fract() != 0.0 {
                return Err(bad_params(name, "mode index must be a positive integer"));
            }
            let (a, length) = match params {
                [_, l] => (0.0, *l),
                [_, a, l] => (*a, *l),
                _ => (a, length),
            };
            if !(length > 0.0) {
                return Err(bad_params(name, "length must be positive"));
            }
            CatalogEntry::SineMode {
                k: *k as u32,
                a,
                length,
            }
        }
        ("bubble", []) | ("bubble", [_]) | ("bubble", [_, _]) => {
            let (a, length) = match params {
                [l] => (0.0, *l),
                [a, l] => (*a, *l),
                _ => (a, length),
            };
            if !(length > 0.0) {
                return Err(bad_params(name, "length must be positive"));
            }
            CatalogEntry::Bubble { a, length }
        }
        ("gauss_bump", []) => CatalogEntry::GaussBump {
            center: a + 0.5 * length,
            width: 0.25 * length,
        },
        ("gauss_bump", [center, width]) => {
            if !(*width > 0.0) {
                return Err(bad_params(name, "width must be positive"));
            }
            CatalogEntry::GaussBump {
                center: *center,
                width: *width,
            }
        }
        ("poly", coeffs) if !coeffs.is_empty() => CatalogEntry::Poly(coeffs.to_vec()),
        ("sine_mode" | "bubble" | "gauss_bump" | "poly", _) => {
            return Err(bad_params(name, "wrong number of parameters"));
        }
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    })
}

/// One-dimensional catalog entry by name, e.g. `catalog("sine_mode", &[1.0])`.
///
/// Parameters: `sine_mode k [L]` or `sine_mode k a L`; `bubble [L]` or
/// `bubble a L`; `gauss_bump c w`; `poly c0 c1 ...`.
pub fn catalog(name: &str, params: &[f64]) -> Result<FieldExpr> {
    Ok(entry(name, params, None)?.build())
}

/// `f(x0) g(x1)` for two one-dimensional fields.
pub fn product2d(f: &FieldExpr, g: &FieldExpr) -> Result<FieldExpr> {
    let g = g.compose(&FieldExpr::coord(1))?;
    Ok(f.with_dim(2)? * g)
}

fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                if depth > 0 {
                    cur.push(c);
                }
                depth += 1;
            }
            ')' => {
                depth = depth.saturating_sub(1);
                if depth > 0 {
                    cur.push(c);
                } else {
                    parts.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    parts.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        parts.push(cur);
    }
    parts
}

fn parse_entry(spec: &str, domain: &Domain) -> Result<CatalogEntry> {
    let parts = split_top_level(spec);
    let Some((name, rest)) = parts.split_first() else {
        return Err(Error::UnknownCatalogEntry(spec.to_string()));
    };
    if name == "product2d" {
        let [f, g] = rest else {
            return Err(bad_params(name, "expects two parenthesised entries"));
        };
        let axis = |i: usize| -> Result<Domain> {
            let (a, b) = if domain.dim() == 2 {
                domain.axis(i)
            } else {
                domain.axis(0)
            };
            Domain::interval(a, b)
        };
        return Ok(CatalogEntry::Product2d(
            Box::new(parse_entry(f, &axis(0)?)?),
            Box::new(parse_entry(g, &axis(1)?)?),
        ));
    }
    let params: Vec<f64> = rest
        .iter()
        .map(|w| {
            w.parse::<f64>()
                .map_err(|_| bad_params(name, &format!("bad number `{w}`")))
        })
        .collect::<Result<_>>()?;
    match domain.dim() {
        1 => entry(name, &params, Some(domain.axis(0))),
        _ if name == "poly" => entry(name, &params, None),
        _ => {
            let fx = entry(name, &params, Some(domain.axis(0)))?;
            let fy = entry(name, &params, Some(domain.axis(1)))?;
            Ok(CatalogEntry::Product2d(Box::new(fx), Box::new(fy)))
        }
    }
}

/// Resolves a field reference against a domain.
///
/// Text starting with `(` is an s-expression; anything else is a catalog
/// entry whose default interval is the domain's. On a rectangle a
/// one-dimensional entry becomes the product of its copies along both axes,
/// and `product2d (f) (g)` places `f` on `x0` and `g` on `x1`.
pub fn resolve_field(spec: &str, domain: &Domain) -> Result<FieldExpr> {
    let spec = spec.trim();
    let e = if spec.starts_with('(')
        || spec.parse::<f64>().is_ok()
        || matches!(spec, "x" | "x0" | "x1" | "pi" | "e")
    {
        parse_expr(spec)?
    } else {
        parse_entry(spec, domain)?.build()
    };
    e.with_dim(domain.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_values() {
        let s = catalog("sine_mode", &[1.0]).unwrap();
        assert!((s.eval(&[0.5]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            catalog("bubble", &[]).unwrap().eval(&[0.5]).unwrap(),
            1.0 / 16.0
        );
        assert_eq!(
            catalog("poly", &[0.0, 0.0, 1.0])
                .unwrap()
                .eval(&[3.0])
                .unwrap(),
            9.0
        );
        let g = catalog("gauss_bump", &[0.5, 0.2]).unwrap();
        assert_eq!(g.eval(&[0.5]).unwrap(), 1.0);
        assert!(matches!(
            catalog("nope", &[]),
            Err(Error::UnknownCatalogEntry(_))
        ));
        assert!(catalog("sine_mode", &[0.5]).is_err());
        assert!(catalog("poly", &[]).is_err());
    }

    #[test]
    fn navier_entries_vanish_with_second_derivative() {
        for (name, params) in [
            ("sine_mode", vec![1.0, 2.0]),
            ("sine_mode", vec![3.0, 1.0]),
            ("bubble", vec![2.0]),
        ] {
            let e = entry(name, &params, None).unwrap();
            let len = match e {
                CatalogEntry::SineMode { length, .. } | CatalogEntry::Bubble { length, .. } => {
                    length
                }
                _ => unreachable!(),
            };
            let f = e.build();
            for x in [0.0, len] {
                let j = f.jet(&[x]).unwrap();
                assert!(j.value().abs() <= 1e-12, "{name} at {x}");
                if e.navier_admissible() {
                    assert!(j.laplacian().abs() <= 1e-12, "{name} u'' at {x}");
                }
            }
        }
    }

    #[test]
    fn resolves_against_domains() {
        let d = Domain::interval(0.0, 2.0).unwrap();
        let s = resolve_field("sine_mode 1", &d).unwrap();
        assert!((s.eval(&[1.0]).unwrap() - 1.0).abs() < 1e-15);
        let r = Domain::rectangle(0.0, 1.0, 0.0, 2.0).unwrap();
        let s2 = resolve_field("sine_mode 1", &r).unwrap();
        assert_eq!(s2.dim(), 2);
        assert!((s2.eval(&[0.5, 1.0]).unwrap() - 1.0).abs() < 1e-15);
        let p = resolve_field("product2d (sine_mode 1) (bubble)", &r).unwrap();
        assert!((p.eval(&[0.5, 1.0]).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        let e = resolve_field("(* x0 x1)", &r).unwrap();
        assert_eq!(e.eval(&[2.0, 3.0]).unwrap(), 6.0);
        let c = resolve_field("1", &r).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(resolve_field("x1", &d).is_err());
    }

    #[test]
    fn product_of_fields() {
        let f = catalog("bubble", &[]).unwrap();
        let g = catalog("sine_mode", &[1.0]).unwrap();
        let p = product2d(&f, &g).unwrap();
        assert!((p.eval(&[0.5, 0.5]).unwrap() - 1.0 / 16.0).abs() < 1e-15);
    }
}
